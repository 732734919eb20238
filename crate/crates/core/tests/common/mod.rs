//! Shared generators for integration tests.

#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use rand::Rng;
use su2free::ade::{ade_group, AdeKind};
use su2free::classify::{semi_families, Bounds, SemiFamily, TheoremId};
use su2free::exact::realpart_equal;
use su2free::freeness::ProductGroup3;
use su2free::quaternion::UnitQuaternion;

pub fn random_kind(rng: &mut impl Rng) -> AdeKind {
    match rng.gen_range(0..5) {
        0 => AdeKind::Cyclic(rng.gen_range(1..=12)),
        1 => AdeKind::BinaryDihedral(rng.gen_range(2..=8)),
        2 => AdeKind::BinaryTetrahedral,
        3 => AdeKind::BinaryOctahedral,
        _ => AdeKind::BinaryIcosahedral,
    }
}

/// Pair-subgroup families with small parameters, from every theorem.
pub fn small_families() -> &'static [SemiFamily] {
    static POOL: OnceLock<Vec<SemiFamily>> = OnceLock::new();
    POOL.get_or_init(|| {
        let b = |param| Bounds { param, third: 2 };
        let mut v = semi_families(TheoremId::TypeB, b(6));
        v.extend(semi_families(TheoremId::Type3, b(4)));
        v.extend(semi_families(TheoremId::QFinal, b(3)));
        v.extend(semi_families(TheoremId::QFinal2, b(3)));
        v
    })
}

const PRIMES: [i64; 11] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

pub fn random_spec(rng: &mut impl Rng) -> ProductGroup3 {
    match rng.gen_range(0..3) {
        0 => ProductGroup3::Splittable([0, 1, 2].map(|_| ade_group(random_kind(rng)).unwrap())),
        1 => {
            let pool = small_families();
            let family = pool[rng.gen_range(0..pool.len())];
            ProductGroup3::SemiSplittable {
                position: rng.gen_range(0..3),
                pair: Arc::new(family.pair().unwrap()),
                single: ade_group(random_kind(rng)).unwrap(),
            }
        }
        _ => {
            let p = PRIMES[rng.gen_range(0..PRIMES.len())];
            ProductGroup3::simple(p, rng.gen_range(1..p.max(2)), rng.gen_range(1..p.max(2))).unwrap()
        }
    }
}

/// The triple is a non-trivial element of `g` with three equal real parts.
pub fn witness_valid(g: &ProductGroup3, w: &[UnitQuaternion; 3]) -> bool {
    if w.iter().all(|q| q.is_identity()) {
        return false;
    }
    let (a, b, c) = (w[0].re(), w[1].re(), w[2].re());
    if !(realpart_equal(&a, &b) && realpart_equal(&a, &c)) {
        return false;
    }
    match g {
        ProductGroup3::Splittable(f) => (0..3).all(|i| f[i].contains(&w[i])),
        ProductGroup3::SemiSplittable { position, pair, single } => {
            let rest: Vec<usize> = (0..3).filter(|i| i != position).collect();
            let x = pair.left().index_of(&w[rest[0]]);
            let y = pair.right().index_of(&w[rest[1]]);
            single.contains(&w[*position]) && matches!((x, y), (Some(x), Some(y)) if pair.contains(x, y))
        }
        _ => g.triples().contains(w),
    }
}
