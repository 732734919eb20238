//! Exact unit quaternions.
//!
//! Cyclic and binary dihedral groups live in angle form `j^ε·e(θ)`, where
//! `e(θ) = exp(2πiθ)`. The exceptional groups live in surd form with
//! coordinates in Q(√2, √5). The two forms are never multiplied together.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{GroupError, ParseError};
use crate::exact::{frac_part, parse_rational, rat, RealPart, Rational, SurdValue};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum UnitQuaternion {
    /// `j^(j as u8) · exp(2πi·theta)`, theta in `[0, 1)`.
    Angle { j: bool, theta: Rational },
    /// `w + x·i + y·j + z·k` with `w² + x² + y² + z² = 1`.
    Surd { w: SurdValue, x: SurdValue, y: SurdValue, z: SurdValue },
}

/// Which of the two exact representations an element uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    Angle,
    Surd,
}

impl UnitQuaternion {
    pub fn angle(j: bool, theta: Rational) -> Self {
        UnitQuaternion::Angle { j, theta: frac_part(theta) }
    }

    /// `exp(2πi·theta)`.
    pub fn e(theta: Rational) -> Self {
        Self::angle(false, theta)
    }

    /// `j·exp(2πi·theta)`.
    pub fn je(theta: Rational) -> Self {
        Self::angle(true, theta)
    }

    /// Surd-form quaternion; fails unless the norm is exactly one.
    pub fn surd(w: SurdValue, x: SurdValue, y: SurdValue, z: SurdValue) -> Result<Self, GroupError> {
        let n = w.mul(&w).add(&x.mul(&x)).add(&y.mul(&y)).add(&z.mul(&z));
        if n != SurdValue::one() {
            return Err(GroupError::Parameter(format!("quaternion norm {n} is not 1")));
        }
        Ok(UnitQuaternion::Surd { w, x, y, z })
    }

    /// Surd-form quaternion with rational coordinates.
    pub fn rational(w: Rational, x: Rational, y: Rational, z: Rational) -> Result<Self, GroupError> {
        Self::surd(
            SurdValue::from_rational(w),
            SurdValue::from_rational(x),
            SurdValue::from_rational(y),
            SurdValue::from_rational(z),
        )
    }

    pub fn identity(rep: Representation) -> Self {
        match rep {
            Representation::Angle => Self::e(Rational::zero()),
            Representation::Surd => UnitQuaternion::Surd {
                w: SurdValue::one(),
                x: SurdValue::zero(),
                y: SurdValue::zero(),
                z: SurdValue::zero(),
            },
        }
    }

    pub fn minus_one(rep: Representation) -> Self {
        match rep {
            Representation::Angle => Self::e(rat(1, 2)),
            Representation::Surd => UnitQuaternion::Surd {
                w: SurdValue::from_int(-1),
                x: SurdValue::zero(),
                y: SurdValue::zero(),
                z: SurdValue::zero(),
            },
        }
    }

    pub fn representation(&self) -> Representation {
        match self {
            UnitQuaternion::Angle { .. } => Representation::Angle,
            UnitQuaternion::Surd { .. } => Representation::Surd,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.representation())
    }

    pub fn neg(&self) -> Self {
        match *self {
            UnitQuaternion::Angle { j, theta } => Self::angle(j, theta + rat(1, 2)),
            UnitQuaternion::Surd { w, x, y, z } => UnitQuaternion::Surd { w: w.neg(), x: x.neg(), y: y.neg(), z: z.neg() },
        }
    }

    /// Product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self, GroupError> {
        match (*self, *other) {
            (UnitQuaternion::Angle { j: a, theta: t1 }, UnitQuaternion::Angle { j: b, theta: t2 }) => {
                let t1 = if b { -t1 } else { t1 };
                let mut theta = t2 + t1;
                if a && b {
                    theta += rat(1, 2);
                }
                Ok(Self::angle(a ^ b, theta))
            }
            (
                UnitQuaternion::Surd { w: w1, x: x1, y: y1, z: z1 },
                UnitQuaternion::Surd { w: w2, x: x2, y: y2, z: z2 },
            ) => {
                let w = w1.mul(&w2).sub(&x1.mul(&x2)).sub(&y1.mul(&y2)).sub(&z1.mul(&z2));
                let x = w1.mul(&x2).add(&x1.mul(&w2)).add(&y1.mul(&z2)).sub(&z1.mul(&y2));
                let y = w1.mul(&y2).sub(&x1.mul(&z2)).add(&y1.mul(&w2)).add(&z1.mul(&x2));
                let z = w1.mul(&z2).add(&x1.mul(&y2)).sub(&y1.mul(&x2)).add(&z1.mul(&w2));
                Ok(UnitQuaternion::Surd { w, x, y, z })
            }
            _ => Err(GroupError::Representation),
        }
    }

    pub fn inv(&self) -> Self {
        match *self {
            UnitQuaternion::Angle { j: false, theta } => Self::e(-theta),
            UnitQuaternion::Angle { j: true, theta } => Self::je(theta + rat(1, 2)),
            UnitQuaternion::Surd { w, x, y, z } => UnitQuaternion::Surd { w, x: x.neg(), y: y.neg(), z: z.neg() },
        }
    }

    /// Real part in canonical form.
    pub fn re(&self) -> RealPart {
        match *self {
            UnitQuaternion::Angle { j: false, theta } => RealPart::cos_turn(theta),
            UnitQuaternion::Angle { j: true, .. } => RealPart::Surd(SurdValue::zero()),
            UnitQuaternion::Surd { w, .. } => RealPart::Surd(w),
        }
    }

    /// Rewrites an angle-form element in surd form when its coordinates lie
    /// in Q(√2, √5), which happens exactly for turns with denominator dividing 8.
    pub fn to_surd(&self) -> Option<Self> {
        match *self {
            UnitQuaternion::Surd { .. } => Some(*self),
            UnitQuaternion::Angle { j, theta } => {
                let c = cos_eighth(theta)?;
                let s = cos_eighth(rat(1, 4) - theta)?;
                let zero = SurdValue::zero();
                Some(if j {
                    UnitQuaternion::Surd { w: zero, x: zero, y: c, z: s.neg() }
                } else {
                    UnitQuaternion::Surd { w: c, x: s, y: zero, z: zero }
                })
            }
        }
    }

    /// Rewrites a surd-form element as `j^ε·e(θ)` when it lies in the
    /// `span(1, i, j, k)` pattern `a + bi` or `cj + dk` with an eighth-turn angle.
    pub fn to_angle(&self) -> Option<Self> {
        if let UnitQuaternion::Angle { .. } = self {
            return Some(*self);
        }
        for n in 0..8 {
            for j in [false, true] {
                let cand = Self::angle(j, rat(n, 8));
                if cand.to_surd().as_ref() == Some(self) {
                    return Some(cand);
                }
            }
        }
        None
    }
}

/// Exact `cos(2πθ)` for θ with denominator dividing 8.
fn cos_eighth(theta: Rational) -> Option<SurdValue> {
    let t = frac_part(theta) * Rational::from_integer(8);
    if !t.is_integer() {
        return None;
    }
    let half_s2 = SurdValue::sqrt2().scale(rat(1, 2));
    Some(match t.to_integer() {
        0 => SurdValue::one(),
        1 | 7 => half_s2,
        2 | 6 => SurdValue::zero(),
        3 | 5 => half_s2.neg(),
        _ => SurdValue::from_int(-1),
    })
}

/// `a · b`, failing on mixed representations.
pub fn qmul(a: &UnitQuaternion, b: &UnitQuaternion) -> Result<UnitQuaternion, GroupError> {
    a.mul(b)
}

pub fn qinv(a: &UnitQuaternion) -> UnitQuaternion {
    a.inv()
}

pub fn qre(a: &UnitQuaternion) -> RealPart {
    a.re()
}

fn fmt_turn(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl fmt::Display for UnitQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitQuaternion::Angle { j: false, theta } => write!(f, "e({})", fmt_turn(theta)),
            UnitQuaternion::Angle { j: true, theta } => write!(f, "j*e({})", fmt_turn(theta)),
            UnitQuaternion::Surd { w, x, y, z } => write!(f, "q({w},{x},{y},{z})"),
        }
    }
}

impl fmt::Debug for UnitQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for UnitQuaternion {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let t = s.trim();
        let lead = s.len() - s.trim_start().len();
        if let Some(inner) = t.strip_prefix("j*e(").and_then(|r| r.strip_suffix(')')) {
            return Ok(Self::je(parse_rational(inner).map_err(|e| e.at(lead + 4))?));
        }
        if let Some(inner) = t.strip_prefix("e(").and_then(|r| r.strip_suffix(')')) {
            return Ok(Self::e(parse_rational(inner).map_err(|e| e.at(lead + 2))?));
        }
        if let Some(inner) = t.strip_prefix("q(").and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 4 {
                return Err(ParseError::new("q(...) needs four coordinates", lead + 2));
            }
            let mut coords = [SurdValue::zero(); 4];
            let mut offset = lead + 2;
            for (slot, part) in coords.iter_mut().zip(&parts) {
                *slot = part.parse().map_err(|e: ParseError| e.at(offset))?;
                offset += part.len() + 1;
            }
            return UnitQuaternion::surd(coords[0], coords[1], coords[2], coords[3])
                .map_err(|e| ParseError::new(e.to_string(), lead));
        }
        Err(ParseError::new(format!("unrecognized element '{t}'"), lead))
    }
}

/// The quaternion units `1, i, j, k` in surd form.
pub fn unit_basis() -> [UnitQuaternion; 4] {
    let o = Rational::one();
    let z = Rational::zero();
    [
        UnitQuaternion::rational(o, z, z, z).unwrap(),
        UnitQuaternion::rational(z, o, z, z).unwrap(),
        UnitQuaternion::rational(z, z, o, z).unwrap(),
        UnitQuaternion::rational(z, z, z, o).unwrap(),
    ]
}
