//! Group specifications: the infix grammar and structured documents.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use serde_json::Value;
use su2free::ade::{ade_group, embed_in, AdeKind};
use su2free::freeness::ProductGroup3;
use su2free::goursat::{build_goursat, GoursatQuintuple, ThetaSpec};
use su2free::quaternion::UnitQuaternion;
use su2free::{GroupError, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("parse error at {}: {}", .0.position, .0.message)]
    Parse(ParseError),
    #[error("{0}")]
    Group(#[from] GroupError),
    #[error("group has more than {0} elements")]
    TooLarge(u64),
}

impl From<ParseError> for SpecError {
    fn from(e: ParseError) -> Self {
        SpecError::Parse(e)
    }
}

/// A parsed specification.
pub enum GroupDoc {
    Product(ProductGroup3),
    Quintuple(GoursatQuintuple),
}

fn perr(msg: impl Into<String>, pos: usize) -> SpecError {
    SpecError::Parse(ParseError::new(msg, pos))
}

pub fn parse_spec(src: &str, budget: u64) -> Result<GroupDoc, SpecError> {
    let t = src.trim_start();
    let lead = src.len() - t.len();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| perr(format!("invalid document: {e}"), lead + e.column().saturating_sub(1)))?;
        return parse_document(&v, budget);
    }
    if let Some(body) = t.trim_end().strip_prefix("Simple(").and_then(|r| r.strip_suffix(')')) {
        let nums = body
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| perr(format!("invalid integer '{}'", x.trim()), lead + 7)))
            .collect::<Result<Vec<_>, _>>()?;
        let [p, r, s] = nums[..] else {
            return Err(perr("Simple takes three integers", lead));
        };
        return ProductGroup3::simple(p, r, s)
            .map(GroupDoc::Product)
            .map_err(|e| perr(e.to_string(), lead));
    }
    let kinds = parse_infix(src)?;
    Ok(GroupDoc::Product(ProductGroup3::Splittable([
        ade_group(kinds[0])?,
        ade_group(kinds[1])?,
        ade_group(kinds[2])?,
    ])))
}

/// `"A x B x C"` with ADE descriptors.
pub fn parse_infix(src: &str) -> Result<[AdeKind; 3], SpecError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in src.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' if depth == 0 => {
                parts.push((start, &src[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push((start, &src[start..]));
    if parts.len() != 3 {
        return Err(perr(format!("expected three factors, found {}", parts.len()), 0));
    }
    let mut out = [AdeKind::Cyclic(1); 3];
    for (i, (off, p)) in parts.into_iter().enumerate() {
        out[i] = p.parse::<AdeKind>().map_err(|e| e.at(off))?;
    }
    Ok(out)
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, SpecError> {
    v.get(key).ok_or_else(|| perr(format!("missing field '{key}'"), 0))
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str, SpecError> {
    field(v, key)?.as_str().ok_or_else(|| perr(format!("field '{key}' must be a string"), 0))
}

fn int_field(v: &Value, key: &str) -> Result<i64, SpecError> {
    field(v, key)?.as_i64().ok_or_else(|| perr(format!("field '{key}' must be an integer"), 0))
}

fn kind_field(v: &Value, key: &str) -> Result<AdeKind, SpecError> {
    Ok(str_field(v, key)?.parse::<AdeKind>()?)
}

/// `{"A", "A0", "B", "B0", "theta"}` with subgroup descriptors embedded in
/// the standard copies of `A` and `B`.
pub fn parse_quintuple(v: &Value) -> Result<GoursatQuintuple, SpecError> {
    let a = ade_group(kind_field(v, "A")?)?;
    let b = ade_group(kind_field(v, "B")?)?;
    let a0 = a.indices_of(&embed_in(kind_field(v, "A0")?, &a)?)?;
    let b0 = b.indices_of(&embed_in(kind_field(v, "B0")?, &b)?)?;
    let theta: ThetaSpec = match v.get("theta") {
        None => ThetaSpec::Canonical,
        Some(t) => t.as_str().ok_or_else(|| perr("field 'theta' must be a string", 0))?.parse()?,
    };
    Ok(GoursatQuintuple::with_spec(a, a0, b, b0, &theta)?)
}

fn parse_document(v: &Value, budget: u64) -> Result<GroupDoc, SpecError> {
    let Some(kind) = v.get("kind") else {
        return Ok(GroupDoc::Quintuple(parse_quintuple(v)?));
    };
    let kind = kind.as_str().ok_or_else(|| perr("field 'kind' must be a string", 0))?;
    let g = match kind {
        "splittable" => {
            let f = field(v, "factors")?.as_array().ok_or_else(|| perr("'factors' must be a list", 0))?;
            if f.len() != 3 {
                return Err(perr("'factors' must have three entries", 0));
            }
            let mut gs = Vec::new();
            for x in f {
                let s = x.as_str().ok_or_else(|| perr("factors must be strings", 0))?;
                gs.push(ade_group(s.parse::<AdeKind>()?)?);
            }
            ProductGroup3::Splittable([gs[0].clone(), gs[1].clone(), gs[2].clone()])
        }
        "simple" => ProductGroup3::simple(int_field(v, "p")?, int_field(v, "r")?, int_field(v, "s")?)
            .map_err(|e| perr(e.to_string(), 0))?,
        "semisplittable" => {
            let q = parse_quintuple(field(v, "pair")?)?;
            let single = ade_group(kind_field(v, "single")?)?;
            let position = match v.get("position") {
                None => 2,
                Some(p) => p.as_u64().filter(|&p| p < 3).ok_or_else(|| perr("'position' must be 0, 1 or 2", 0))?
                    as usize,
            };
            ProductGroup3::SemiSplittable { position, pair: Arc::new(build_goursat(&q)), single }
        }
        "goursat3" => {
            let gens = field(v, "generators")?.as_array().ok_or_else(|| perr("'generators' must be a list", 0))?;
            let mut triples = Vec::new();
            for g in gens {
                let t = g.as_array().filter(|t| t.len() == 3).ok_or_else(|| perr("generators are triples", 0))?;
                let mut q = [UnitQuaternion::e(0.into()); 3];
                for (i, x) in t.iter().enumerate() {
                    q[i] = x.as_str().ok_or_else(|| perr("elements must be strings", 0))?.parse()?;
                }
                triples.push(q);
            }
            generate_triples(&triples, budget)?
        }
        other => return Err(perr(format!("unknown kind '{other}'"), 0)),
    };
    Ok(GroupDoc::Product(g))
}

fn mul3(a: &[UnitQuaternion; 3], b: &[UnitQuaternion; 3]) -> Result<[UnitQuaternion; 3], GroupError> {
    Ok([a[0].mul(&b[0])?, a[1].mul(&b[1])?, a[2].mul(&b[2])?])
}

/// Closure of generator triples under multiplication.
fn generate_triples(gens: &[[UnitQuaternion; 3]], budget: u64) -> Result<ProductGroup3, SpecError> {
    if gens.is_empty() {
        return Err(perr("'generators' must not be empty", 0));
    }
    let id = gens[0].map(|q| UnitQuaternion::identity(q.representation()));
    let mut seen: HashSet<[UnitQuaternion; 3]> = HashSet::from([id]);
    let mut order = vec![id];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul3(&x, g)?;
            if seen.insert(y) {
                if seen.len() as u64 > budget {
                    return Err(SpecError::TooLarge(budget));
                }
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    Ok(ProductGroup3::Explicit(order))
}
