//! Exact arithmetic in Q and in the real quartic field Q(√2, √5), plus the
//! canonical real parts of unit quaternions and their equality decider.
//!
//! A real part is either `cos(2π·a)` for a rational turn `a`, or an element of
//! Q(√2, √5). The decider never evaluates floating point. For a rational turn
//! `a = k/q` in lowest terms, `cos(2πa)` has degree φ(q)/2 over Q and generates
//! the real cyclotomic subfield of level q. That subfield lies inside
//! Q(√2, √5) only for q ∈ {1, 2, 3, 4, 5, 6, 8, 10}, and for those levels the
//! cosines are exactly the candidate values listed in [`rational_cos_table`].
//! Any other surd therefore never equals a rational cosine.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// Reduced fraction with positive denominator.
pub type Rational = num_rational::Ratio<i64>;

/// Shorthand for building a reduced rational.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// Reduces a turn into `[0, 1)`.
pub fn frac_part(a: Rational) -> Rational {
    a - a.floor()
}

/// Error raised by field operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("inverse of zero")]
    ZeroInverse,
}

/// `c1 + c2·√2 + c5·√5 + c10·√10` with rational coefficients.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurdValue {
    pub c1: Rational,
    pub c2: Rational,
    pub c5: Rational,
    pub c10: Rational,
}

impl Default for SurdValue {
    fn default() -> Self {
        Self::zero()
    }
}

impl SurdValue {
    pub fn new(c1: Rational, c2: Rational, c5: Rational, c10: Rational) -> Self {
        Self { c1, c2, c5, c10 }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(c1: Rational) -> Self {
        let z = Rational::zero();
        Self::new(c1, z, z, z)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    /// `√2`.
    pub fn sqrt2() -> Self {
        let z = Rational::zero();
        Self::new(z, Rational::one(), z, z)
    }

    /// `√5`.
    pub fn sqrt5() -> Self {
        let z = Rational::zero();
        Self::new(z, z, Rational::one(), z)
    }

    /// `√10`.
    pub fn sqrt10() -> Self {
        let z = Rational::zero();
        Self::new(z, z, z, Rational::one())
    }

    /// Floating-point approximation.
    pub fn to_f64(&self) -> f64 {
        let f = |r: Rational| *r.numer() as f64 / *r.denom() as f64;
        f(self.c1) + f(self.c2) * 2f64.sqrt() + f(self.c5) * 5f64.sqrt() + f(self.c10) * 10f64.sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.c2.is_zero() && self.c5.is_zero() && self.c10.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.c2.is_zero() && self.c5.is_zero() && self.c10.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.c1 + o.c1, self.c2 + o.c2, self.c5 + o.c5, self.c10 + o.c10)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.c1, -self.c2, -self.c5, -self.c10)
    }

    pub fn scale(&self, r: Rational) -> Self {
        Self::new(self.c1 * r, self.c2 * r, self.c5 * r, self.c10 * r)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a1, a2, a5, a10) = (self.c1, self.c2, self.c5, self.c10);
        let (b1, b2, b5, b10) = (o.c1, o.c2, o.c5, o.c10);
        let two = Rational::from_integer(2);
        let five = Rational::from_integer(5);
        let ten = Rational::from_integer(10);
        Self::new(
            a1 * b1 + two * a2 * b2 + five * a5 * b5 + ten * a10 * b10,
            a1 * b2 + a2 * b1 + five * (a5 * b10 + a10 * b5),
            a1 * b5 + a5 * b1 + two * (a2 * b10 + a10 * b2),
            a1 * b10 + a10 * b1 + a2 * b5 + a5 * b2,
        )
    }

    /// Field automorphism `√5 ↦ −√5`.
    fn conj5(&self) -> Self {
        Self::new(self.c1, self.c2, -self.c5, -self.c10)
    }

    /// Field automorphism `√2 ↦ −√2`.
    fn conj2(&self) -> Self {
        Self::new(self.c1, -self.c2, self.c5, -self.c10)
    }

    pub fn inv(&self) -> Result<Self, DomainError> {
        if self.is_zero() {
            return Err(DomainError::ZeroInverse);
        }
        let s5 = self.conj5();
        let y = self.mul(&s5);
        let y2 = y.conj2();
        let norm = y.mul(&y2);
        debug_assert!(norm.is_rational());
        Ok(s5.mul(&y2).scale(norm.c1.recip()))
    }

    pub fn div(&self, o: &Self) -> Result<Self, DomainError> {
        Ok(self.mul(&o.inv()?))
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for SurdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [(self.c1, ""), (self.c2, "*s2"), (self.c5, "*s5"), (self.c10, "*s10")];
        let mut first = true;
        for (c, suffix) in terms {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}{}", fmt_rational(&c.abs()), suffix)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SurdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::new(format!("invalid rational '{s}'"), 0);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for SurdValue {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParseError::new("empty surd value", 0));
        }
        let mut out = SurdValue::zero();
        let bytes: Vec<char> = compact.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let start = i;
            let mut sign = Rational::one();
            if bytes[i] == '+' || bytes[i] == '-' {
                if bytes[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            let body_start = i;
            while i < bytes.len() && bytes[i] != '+' && bytes[i] != '-' {
                i += 1;
            }
            let body: String = bytes[body_start..i].iter().collect();
            if body.is_empty() {
                return Err(ParseError::new(format!("empty term in '{s}'"), start));
            }
            let (coef, unit) = match body.split_once('*') {
                Some((c, u)) => (parse_rational(c).map_err(|e| e.at(start))?, u.to_string()),
                None if body.starts_with('s') => (Rational::one(), body.clone()),
                None => (parse_rational(&body).map_err(|e| e.at(start))?, String::new()),
            };
            let coef = coef * sign;
            match unit.as_str() {
                "" => out.c1 += coef,
                "s2" => out.c2 += coef,
                "s5" => out.c5 += coef,
                "s10" => out.c10 += coef,
                other => {
                    return Err(ParseError::new(format!("unknown surd unit '{other}'"), start))
                }
            }
        }
        Ok(out)
    }
}

/// Arithmetic dispatcher over the four field operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurdOp {
    Add,
    Mul,
    Neg,
    Inv,
}

pub fn surd_arith(op: SurdOp, x: &SurdValue, y: Option<&SurdValue>) -> Result<SurdValue, DomainError> {
    let zero = SurdValue::zero();
    let y = y.unwrap_or(&zero);
    match op {
        SurdOp::Add => Ok(x.add(y)),
        SurdOp::Mul => Ok(x.mul(y)),
        SurdOp::Neg => Ok(x.neg()),
        SurdOp::Inv => x.inv(),
    }
}

/// Real part of a unit quaternion.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RealPart {
    /// `cos(2π·angle)`, angle in `[0, 1/2]`.
    RatCos(Rational),
    Surd(SurdValue),
}

/// Value of `cos(2πa)` when it is rational, for `a` already in `[0, 1/2]`.
fn rational_cos_value(a: Rational) -> Option<Rational> {
    let d = *a.denom();
    let n = *a.numer();
    match (n, d) {
        (0, 1) => Some(Rational::one()),
        (1, 2) => Some(-Rational::one()),
        (1, 4) => Some(Rational::zero()),
        (1, 6) => Some(rat(1, 2)),
        (1, 3) => Some(rat(-1, 2)),
        _ => None,
    }
}

/// Canonical turn in `[0, 1/2]` with the same cosine.
pub fn canonical_turn(a: Rational) -> Rational {
    let a = frac_part(a);
    if a > rat(1, 2) {
        Rational::one() - a
    } else {
        a
    }
}

impl RealPart {
    /// `cos(2π·a)` in canonical form.
    pub fn cos_turn(a: Rational) -> Self {
        let a = canonical_turn(a);
        match rational_cos_value(a) {
            Some(v) => RealPart::Surd(SurdValue::from_rational(v)),
            None => RealPart::RatCos(a),
        }
    }

    pub fn surd(v: SurdValue) -> Self {
        RealPart::Surd(v)
    }

    pub fn one() -> Self {
        RealPart::Surd(SurdValue::one())
    }

    /// Floating-point approximation.
    pub fn to_f64(&self) -> f64 {
        match self {
            RealPart::RatCos(a) => (2.0 * std::f64::consts::PI * (*a.numer() as f64) / (*a.denom() as f64)).cos(),
            RealPart::Surd(v) => v.to_f64(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, RealPart::Surd(v) if *v == SurdValue::one())
    }

    /// Fully canonical form: rational cosines that lie in Q(√2, √5) are
    /// rewritten as surds, so structural equality coincides with value equality.
    pub fn key(&self) -> RealPart {
        match self {
            RealPart::RatCos(a) => {
                let a = canonical_turn(*a);
                if let Some(v) = rational_cos_value(a) {
                    return RealPart::Surd(SurdValue::from_rational(v));
                }
                for (value, turns) in candidate_rows() {
                    if turns.iter().any(|t| canonical_turn(*t) == a) {
                        return RealPart::Surd(value);
                    }
                }
                RealPart::RatCos(a)
            }
            RealPart::Surd(_) => *self,
        }
    }
}

impl fmt::Display for RealPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealPart::RatCos(a) => write!(f, "cos({})", fmt_rational(a)),
            RealPart::Surd(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for RealPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for RealPart {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix("cos(").and_then(|r| r.strip_suffix(')')) {
            return Ok(RealPart::cos_turn(parse_rational(inner)?));
        }
        Ok(RealPart::Surd(t.parse()?))
    }
}

/// Decides whether two real parts denote the same real number.
pub fn realpart_equal(a: &RealPart, b: &RealPart) -> bool {
    match (a, b) {
        (RealPart::RatCos(x), RealPart::RatCos(y)) => canonical_turn(*x) == canonical_turn(*y),
        (RealPart::Surd(x), RealPart::Surd(y)) => x == y,
        (RealPart::RatCos(x), RealPart::Surd(v)) | (RealPart::Surd(v), RealPart::RatCos(x)) => {
            let x = canonical_turn(*x);
            match rational_cos_table(v) {
                Some(t) => t.residues.iter().any(|r| canonical_turn(*r) == x),
                None => false,
            }
        }
    }
}

/// Solutions of `cos(2πx/n) = b`: integer solutions exist iff `divisor | n`,
/// and then `x ≡ f·n (mod n)` for `f` in `residues`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosTable {
    pub divisor: i64,
    pub residues: Vec<Rational>,
}

fn candidate_rows() -> Vec<(SurdValue, Vec<Rational>)> {
    let q = |n, d| SurdValue::from_rational(rat(n, d));
    let s2 = |n, d| SurdValue::sqrt2().scale(rat(n, d));
    let g = |a: i64, b: i64| SurdValue::new(rat(a, 4), Rational::zero(), rat(b, 4), Rational::zero());
    vec![
        (q(-1, 1), vec![rat(1, 2)]),
        (s2(-1, 2), vec![rat(3, 8), rat(5, 8)]),
        (q(-1, 2), vec![rat(1, 3), rat(2, 3)]),
        (q(0, 1), vec![rat(1, 4), rat(3, 4)]),
        (q(1, 2), vec![rat(1, 6), rat(5, 6)]),
        (s2(1, 2), vec![rat(1, 8), rat(7, 8)]),
        (q(1, 1), vec![Rational::zero()]),
        (g(1, 1), vec![rat(1, 10), rat(9, 10)]),
        (g(-1, 1), vec![rat(1, 5), rat(4, 5)]),
        (g(1, -1), vec![rat(3, 10), rat(7, 10)]),
        (g(-1, -1), vec![rat(2, 5), rat(3, 5)]),
    ]
}

/// The finite list of values of Q(√2, √5) that are cosines of rational turns.
pub fn rational_cos_candidates() -> Vec<SurdValue> {
    candidate_rows().into_iter().map(|(v, _)| v).collect()
}

/// Divisibility condition and residues for `cos(2πx/n) = b`; `None` when
/// `b` is not the cosine of any rational turn.
pub fn rational_cos_table(b: &SurdValue) -> Option<CosTable> {
    candidate_rows().into_iter().find(|(v, _)| v == b).map(|(_, residues)| {
        let divisor = residues.iter().fold(1i64, |acc, r| acc.lcm(r.denom()));
        CosTable { divisor, residues }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relations() {
        assert_eq!(SurdValue::sqrt2().mul(&SurdValue::sqrt2()), SurdValue::from_int(2));
        assert_eq!(SurdValue::sqrt2().mul(&SurdValue::sqrt5()), SurdValue::sqrt10());
        assert_eq!(SurdValue::sqrt5().mul(&SurdValue::sqrt10()), SurdValue::sqrt2().scale(rat(5, 1)));
        assert_eq!(SurdValue::sqrt10().mul(&SurdValue::sqrt10()), SurdValue::from_int(10));
    }

    #[test]
    fn golden_product() {
        let a: SurdValue = "1/4 + 1/4*s5".parse().unwrap();
        let b: SurdValue = "-1/4 + 1/4*s5".parse().unwrap();
        assert_eq!(a.mul(&b), SurdValue::from_rational(rat(1, 4)));
    }

    #[test]
    fn inverse_and_zero() {
        let x: SurdValue = "1 + s2 - 3/2*s5 + 1/3*s10".parse().unwrap();
        assert_eq!(x.mul(&x.inv().unwrap()), SurdValue::one());
        assert_eq!(SurdValue::zero().inv(), Err(DomainError::ZeroInverse));
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "1/2", "-1/4 + 1/4*s5", "1/2*s2", "-1 - 2*s2 + 3/7*s5 - 1/10*s10"] {
            let v: SurdValue = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
    }

    #[test]
    fn cos_canonicalization() {
        assert_eq!(RealPart::cos_turn(rat(1, 3)), RealPart::Surd(SurdValue::from_rational(rat(-1, 2))));
        assert_eq!(RealPart::cos_turn(rat(7, 8)), RealPart::RatCos(rat(1, 8)));
        assert_eq!(RealPart::cos_turn(rat(0, 1)), RealPart::one());
        assert_eq!(RealPart::cos_turn(rat(-1, 5)), RealPart::RatCos(rat(1, 5)));
    }

    #[test]
    fn decider_examples() {
        let half = RealPart::Surd(SurdValue::from_rational(rat(1, 2)));
        assert!(realpart_equal(&RealPart::RatCos(rat(1, 6)), &half));
        let g: SurdValue = "-1/4 + 1/4*s5".parse().unwrap();
        assert!(realpart_equal(&RealPart::RatCos(rat(1, 5)), &RealPart::Surd(g)));
        let inv_2s2 = RealPart::Surd(SurdValue::sqrt2().scale(rat(1, 4)));
        for q in 1..=60 {
            for p in 0..=q {
                assert!(!realpart_equal(&RealPart::RatCos(rat(p, q)), &inv_2s2));
            }
        }
        assert!(realpart_equal(&RealPart::RatCos(Rational::zero()), &RealPart::one()));
    }

    #[test]
    fn cos_table_examples() {
        let t = rational_cos_table(&SurdValue::from_rational(rat(-1, 2))).unwrap();
        assert_eq!(t.divisor, 3);
        assert_eq!(t.residues, vec![rat(1, 3), rat(2, 3)]);
        let t = rational_cos_table(&"1/4 - 1/4*s5".parse().unwrap()).unwrap();
        assert_eq!(t.divisor, 10);
        assert_eq!(t.residues, vec![rat(3, 10), rat(7, 10)]);
        assert!(rational_cos_table(&SurdValue::sqrt2().scale(rat(1, 4))).is_none());
    }
}
