//! Values frozen from brute-force runs of the oracle.

use std::collections::BTreeSet;

use su2free::ade::{ade_group, conjugacy_classes, real_part_set, AdeKind, AutomorphismSpec};
use su2free::classify::{FamilySpec, SemiFamily, TypeIBase, TypeIIIPart, TypeIIRow};
use su2free::exact::RealPart;
use su2free::freeness::{coincidence_set, is_free, is_free_exhaustive, ProductGroup3, SemiSplitOracle, DEFAULT_BUDGET};
use su2free::goursat::graph_of;

use AdeKind::{BinaryDihedral as BD, BinaryIcosahedral as I2, BinaryOctahedral as O2, BinaryTetrahedral as T2, Cyclic as Z};

fn parts(list: &[&str]) -> BTreeSet<RealPart> {
    list.iter().map(|s| s.parse::<RealPart>().unwrap().key()).collect()
}

fn set_of(k: AdeKind) -> BTreeSet<RealPart> {
    real_part_set(&ade_group(k).unwrap()).into_iter().collect()
}

#[test]
fn exceptional_real_parts() {
    assert_eq!(set_of(T2), parts(&["-1", "-1/2", "0", "1/2", "1"]));
    assert_eq!(set_of(O2), parts(&["-1", "-1/2", "-1/2*s2", "0", "1/2*s2", "1/2", "1"]));
    assert_eq!(
        set_of(I2),
        parts(&["-1", "-1/2", "0", "1/2", "1", "1/4 + 1/4*s5", "1/4 - 1/4*s5", "-1/4 + 1/4*s5", "-1/4 - 1/4*s5"])
    );
}

#[test]
fn class_sizes() {
    let sizes = |k| {
        let mut v: Vec<usize> = conjugacy_classes(&ade_group(k).unwrap()).iter().map(|c| c.size).collect();
        v.sort_unstable();
        v
    };
    assert_eq!(sizes(O2), vec![1, 1, 6, 6, 6, 8, 8, 12]);
    assert_eq!(sizes(I2), vec![1, 1, 12, 12, 12, 12, 20, 20, 30]);
    assert_eq!(sizes(T2), vec![1, 1, 4, 4, 4, 4, 6]);
}

#[test]
fn outer_automorphism_coincidences() {
    for (k, spec) in [(I2, AutomorphismSpec::Outer2I), (O2, AutomorphismSpec::Outer2O)] {
        let c = graph_of(&spec, &ade_group(k).unwrap()).unwrap();
        assert_eq!(coincidence_set(&c), parts(&["-1", "-1/2", "0", "1/2", "1"]), "{k}");
    }
}

#[test]
fn outer_2i_with_cyclic_needs_odd_order() {
    let oracle = SemiSplitOracle::new(&SemiFamily::TypeI(TypeIBase::Outer2I).pair().unwrap());
    for n in 1..=60u32 {
        let free = oracle.verdict(2, &ade_group(Z(n)).unwrap()).free;
        assert_eq!(free, n % 2 == 1 && n % 3 != 0, "n = {n}");
    }
}

#[test]
fn cyclic_graph_rows_use_k2_in_the_second_branch() {
    let gcd = |a: i64, b: i64| num_integer::Integer::gcd(&a, &b);
    let i2 = ade_group(I2).unwrap();
    for n in 3..=40i64 {
        for r in (2..n - 1).filter(|&r| gcd(r, n) == 1) {
            let k2 = gcd(1 - r, n);
            if gcd(1 + r, n) > 1 || k2 == 1 {
                continue;
            }
            let fam = SemiFamily::TypeI(TypeIBase::Cyclic { n, r });
            let free = SemiSplitOracle::new(&fam.pair().unwrap()).verdict(2, &i2).free;
            assert_eq!(free, [2, 3, 5].iter().all(|p| k2 % p != 0), "n = {n}, r = {r}");
        }
    }
}

#[test]
fn cyclic_binary_dihedral_icosahedral_row_excludes_five() {
    let gcd = |a: i64, b: i64| num_integer::Integer::gcd(&a, &b);
    for n in 1..=15u32 {
        for m in 2..=15u32 {
            let g = ProductGroup3::Splittable([
                ade_group(Z(n)).unwrap(),
                ade_group(BD(m)).unwrap(),
                ade_group(I2).unwrap(),
            ]);
            let k = gcd(n as i64, 2 * m as i64);
            let expected = [2, 3, 5].iter().all(|p| k % p != 0);
            assert_eq!(is_free(&g, DEFAULT_BUDGET).unwrap().free, expected, "n = {n}, m = {m}");
        }
    }
}

#[test]
fn cyclic_by_dihedral_index_two_has_trivial_coincidences() {
    let fam = SemiFamily::TypeIII(TypeIIIPart::G { k: 1, p: 2 });
    assert_eq!(coincidence_set(&fam.pair().unwrap()), parts(&["1"]));
    for third in [Z(2), BD(3), I2] {
        let g = FamilySpec::Semi { family: fam, third }.materialize().unwrap();
        assert!(is_free_exhaustive(&g).free, "{third}");
    }
    let fam = SemiFamily::TypeIII(TypeIIIPart::G { k: 1, p: 3 });
    assert!(coincidence_set(&fam.pair().unwrap()).contains(&"-1/2".parse::<RealPart>().unwrap().key()));
}

#[test]
fn pruned_oracle_agrees_with_exhaustive_scan() {
    let families = [
        SemiFamily::TypeII(TypeIIRow::TetraZ3 { r: 2 }),
        SemiFamily::TypeII(TypeIIRow::CyclicQuotient { k: 3, l: 2, r: 1 }),
        SemiFamily::TypeII(TypeIIRow::DihedralQuotient { k: 1, l: 3, a: 5, b: 1, conj_j: true }),
        SemiFamily::TypeIII(TypeIIIPart::A { k: 2, l: 3, p: 3, r: 2 }),
        SemiFamily::TypeIII(TypeIIIPart::B { n: 2, r: 1 }),
        SemiFamily::TypeIII(TypeIIIPart::D { k: 1, p: 2, r: 3 }),
        SemiFamily::TypeIII(TypeIIIPart::F { k: 1 }),
    ];
    for family in families {
        for third in [Z(2), Z(3), Z(5), BD(2), BD(3), T2] {
            let g = FamilySpec::Semi { family, third }.materialize().unwrap();
            let fast = is_free(&g, DEFAULT_BUDGET).unwrap();
            assert_eq!(fast.free, is_free_exhaustive(&g).free, "{family:?} x {third}");
        }
    }
}

#[test]
fn family_pairs_have_goursat_orders() {
    let cases: [(SemiFamily, usize); 8] = [
        (SemiFamily::TypeII(TypeIIRow::DicyclicHalf { k: 3 }), 24),
        (SemiFamily::TypeII(TypeIIRow::OctaTetra), 48),
        (SemiFamily::TypeII(TypeIIRow::DicyclicCyclic { k: 4 }), 16),
        (SemiFamily::TypeIII(TypeIIIPart::C { k: 1, l: 3, p: 2, a: 1, b: 0, conj_j: false }), 36 * 5),
        (SemiFamily::TypeIII(TypeIIIPart::E { k: 1, p: 1, r: 1 }), 12 * 3),
        (SemiFamily::TypeIII(TypeIIIPart::G { k: 2, p: 3 }), 10 * 12),
        (SemiFamily::TypeIII(TypeIIIPart::OctaDihedral { k: 3, iso: 0 }), 36 * 8),
        (SemiFamily::TypeIII(TypeIIIPart::DihedralPair { k: 2, l: 3, p: 1, iso: 0 }), 24 * 2),
    ];
    for (f, n) in cases {
        let c = f.pair().unwrap();
        assert_eq!(c.order(), n, "{f:?}");
        assert!(c.is_closed(), "{f:?}");
    }
}
