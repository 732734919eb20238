//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use su2free::ade::{ade_group, conjugacy_classes, embed_in, real_part_set, AdeKind, AutomorphismSpec, FiniteSubgroup};
use su2free::classify::{
    compare_with_expected, crosscheck, expected_entries, families, Bounds, FamilySpec, TheoremId, VerificationReport,
};
use su2free::congruence::{
    cos_equality_lattice, neg_congruence, res_solvable, simple_system_trivial_only, solve_linear, HalfTarget,
};
use su2free::exact::{rat, realpart_equal, RealPart};
use su2free::freeness::{is_free, splittable_free_test, ProductGroup3, DEFAULT_BUDGET};
use su2free::goursat::{build_goursat, decompose, quintuple_data_equal, GoursatQuintuple, PairSubgroup, ThetaSpec};
use su2free::quaternion::UnitQuaternion;

use AdeKind::{BinaryDihedral as BD, BinaryIcosahedral as I2, BinaryOctahedral as O2, BinaryTetrahedral as T2, Cyclic as Z};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group(k: AdeKind) -> Arc<FiniteSubgroup> {
    ade_group(k).unwrap()
}

fn keys(list: &[&str]) -> BTreeSet<RealPart> {
    list.iter().map(|s| s.parse::<RealPart>().unwrap().key()).collect()
}

fn computed_parts(k: AdeKind) -> BTreeSet<RealPart> {
    real_part_set(&group(k)).into_iter().collect()
}

fn ade_catalog() -> Outcome {
    let kinds: Vec<AdeKind> =
        (1..=30).map(Z).chain((2..=15).map(BD)).chain([T2, O2, I2]).collect();
    for &k in &kinds {
        let g = group(k);
        let expected = match k {
            Z(n) => n as usize,
            BD(n) => 4 * n as usize,
            T2 => 24,
            O2 => 48,
            I2 => 120,
        };
        ensure(g.order() == expected, || format!("{k}: order {} != {expected}", g.order()))?;
        let els = g.elements();
        ensure(els.iter().collect::<BTreeSet<_>>().len() == els.len(), || format!("{k}: repeated elements"))?;
        ensure(els.iter().any(|e| e.is_identity()), || format!("{k}: no identity"))?;
        for a in els {
            ensure(g.contains(&a.inv()), || format!("{k}: inverse of {a} missing"))?;
            ensure(a.mul(&a.inv()).unwrap().is_identity(), || format!("{k}: {a}·{a}⁻¹ ≠ 1"))?;
            for b in els {
                let ab = a.mul(b).map_err(|e| e.to_string())?;
                ensure(g.contains(&ab), || format!("{k}: {a}·{b} escapes"))?;
            }
        }
    }
    Ok(format!("{} groups", kinds.len()))
}

fn real_part_tables() -> Outcome {
    for n in 1..=30u32 {
        let table: BTreeSet<RealPart> = (1..=n as i64).map(|x| RealPart::cos_turn(rat(x, n as i64)).key()).collect();
        ensure(computed_parts(Z(n)) == table, || format!("Z({n}) real parts"))?;
    }
    for n in 2..=15u32 {
        let mut table: BTreeSet<RealPart> =
            (1..=2 * n as i64).map(|x| RealPart::cos_turn(rat(x, 2 * n as i64)).key()).collect();
        table.insert(RealPart::cos_turn(rat(1, 4)).key());
        ensure(computed_parts(BD(n)) == table, || format!("BD({n}) real parts"))?;
    }
    let t = keys(&["0", "1", "-1", "1/2", "-1/2"]);
    ensure(computed_parts(T2) == t, || "2T real parts".into())?;
    let i = keys(&["0", "1", "-1", "1/2", "-1/2", "1/4 + 1/4*s5", "1/4 - 1/4*s5", "-1/4 + 1/4*s5", "-1/4 - 1/4*s5"]);
    ensure(computed_parts(I2) == i, || "2I real parts".into())?;
    let o_table = keys(&["0", "1", "-1", "1/2", "-1/2", "1/2*s2", "-1/2*s2", "1/4*s2", "-1/4*s2"]);
    let o = computed_parts(O2);
    ensure(o.is_subset(&o_table), || "2O has real parts outside the table".into())?;
    let absent: BTreeSet<RealPart> = o_table.difference(&o).copied().collect();
    ensure(absent == keys(&["1/4*s2", "-1/4*s2"]), || format!("2O table entries absent: {absent:?}"))?;
    ensure(expected_entries("tables").contains("2O-real-parts|+-1/(2*sqrt2)"), || "undocumented 2O entry".into())?;

    let mut values: BTreeSet<RealPart> = BTreeSet::new();
    for k in (1..=120).map(Z).chain((2..=120).map(BD)).chain([T2, O2, I2]) {
        values.extend(group(k).elements().iter().map(|e| e.re()));
    }
    let values: Vec<(RealPart, f64)> = values.into_iter().map(|v| (v, v.to_f64())).collect();
    let disagreements: usize = (0..values.len())
        .into_par_iter()
        .map(|i| {
            let (a, fa) = values[i];
            values[i..].iter().filter(|(b, fb)| realpart_equal(&a, b) != ((fa - fb).abs() < 1e-9)).count()
        })
        .sum();
    ensure(disagreements == 0, || format!("{disagreements} disagreements with numerics"))?;
    Ok(format!("{} distinct values, {} pairs", values.len(), values.len() * (values.len() + 1) / 2))
}

fn class_rows(k: AdeKind) -> BTreeMap<(usize, RealPart), usize> {
    let mut m = BTreeMap::new();
    for c in conjugacy_classes(&group(k)) {
        *m.entry((c.size, c.real_part.key())).or_insert(0) += 1;
    }
    m
}

fn table_rows(rows: &[(usize, &str)]) -> BTreeMap<(usize, RealPart), usize> {
    let mut m = BTreeMap::new();
    for (size, re) in rows {
        *m.entry((*size, re.parse::<RealPart>().unwrap().key())).or_insert(0) += 1;
    }
    m
}

fn conjugacy_tables() -> Outcome {
    let i_table = table_rows(&[
        (1, "1"),
        (1, "-1"),
        (12, "1/4 + 1/4*s5"),
        (12, "-1/4 + 1/4*s5"),
        (12, "1/4 - 1/4*s5"),
        (12, "-1/4 - 1/4*s5"),
        (20, "1/2"),
        (20, "-1/2"),
        (30, "0"),
    ]);
    ensure(class_rows(I2) == i_table, || "2I classes differ from the table".into())?;

    let o_rows = [(1, "1"), (1, "-1"), (8, "1/2"), (6, "1/2*s2"), (8, "-1/2"), (8, "0"), (6, "-1/2*s2"), (12, "0")];
    let o_table = table_rows(&o_rows);
    let o = class_rows(O2);
    let sizes: usize = conjugacy_classes(&group(O2)).iter().map(|c| c.size).sum();
    ensure(sizes == 48, || format!("2O class sizes sum to {sizes}"))?;
    let table_sum: usize = o_rows.iter().map(|r| r.0).sum();
    let only_table: Vec<_> = o_table.keys().filter(|k| !o.contains_key(k)).collect();
    let only_computed: Vec<_> = o.keys().filter(|k| !o_table.contains_key(k)).collect();
    let zero = "0".parse::<RealPart>().unwrap().key();
    ensure(only_table == [&(8, zero)] && only_computed == [&(6, zero)], || {
        format!("2O rows: table only {only_table:?}, computed only {only_computed:?}")
    })?;
    ensure(expected_entries("tables").contains("2O-classes|t^2 size 8"), || "undocumented 2O row".into())?;
    Ok(format!("2I exact, 2O differs only at t^2 (table sums to {table_sum}, computed 48)"))
}

/// `(A, A0, B, B0, θ)` with `A0`, `B0` standard subgroups of `A`, `B`.
fn quintuple(a: AdeKind, a0: AdeKind, b: AdeKind, b0: AdeKind, theta: ThetaSpec) -> Result<GoursatQuintuple, String> {
    let (ga, gb) = (group(a), group(b));
    let ia = ga.indices_of(&embed_in(a0, &ga).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let ib = gb.indices_of(&embed_in(b0, &gb).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    GoursatQuintuple::with_spec(ga, ia, gb, ib, &theta).map_err(|e| format!("{a}/{a0} → {b}/{b0}: {e}"))
}

fn pair_set(c: &PairSubgroup) -> BTreeSet<(UnitQuaternion, UnitQuaternion)> {
    c.element_pairs().collect()
}

fn goursat_library() -> Result<Vec<(&'static str, GoursatQuintuple)>, String> {
    let id = || ThetaSpec::Canonical;
    let pow = |r| ThetaSpec::Automorphism(AutomorphismSpec::Power(r));
    let inner = |s: &str| ThetaSpec::Automorphism(AutomorphismSpec::InnerBy(s.parse().unwrap()));
    let rows: Vec<(&str, AdeKind, AdeKind, AdeKind, AdeKind, ThetaSpec)> = vec![
        ("Zk<Zkl", Z(6), Z(2), Z(6), Z(2), id()),
        ("Zk<Zkl", Z(12), Z(3), Z(12), Z(3), pow(3)),
        ("Zk<Zkl", Z(5), Z(1), Z(10), Z(2), pow(2)),
        ("Zk<Zkl", Z(8), Z(4), BD(4), BD(2), id()),
        ("Z2k<BDkl", BD(3), Z(2), BD(3), Z(2), id()),
        ("Z2k<BDkl", BD(4), Z(4), BD(4), Z(4), inner("j*e(0)")),
        ("Z2k<BDkl", BD(6), Z(6), BD(2), Z(2), id()),
        ("Z2k<BDkl", BD(3), Z(2), O2, BD(2), id()),
        ("Z2k+1<BDl(2k+1)", BD(6), Z(3), BD(6), Z(3), id()),
        ("Z2k+1<BDl(2k+1)", BD(10), Z(5), BD(2), Z(1), id()),
        ("Z2k+1<BDl(2k+1)", BD(9), Z(3), BD(3), Z(1), inner("e(1/6)")),
        ("Z2k+1<BD2k+1", BD(3), Z(3), BD(3), Z(3), id()),
        ("Z2k+1<BD2k+1", BD(5), Z(5), Z(8), Z(2), pow(3)),
        ("BDk<BD2k", BD(4), BD(2), BD(4), BD(2), id()),
        ("BDk<BD2k", BD(6), BD(3), O2, T2, id()),
        ("BDk<BD2k", BD(8), BD(4), Z(2), Z(1), id()),
        ("Z2<2T", T2, Z(2), T2, Z(2), id()),
        ("Z2<2T", T2, Z(2), T2, Z(2), inner("q(1/2,1/2,1/2,1/2)")),
        ("BD2<2T", T2, BD(2), T2, BD(2), pow(2)),
        ("BD2<2T", T2, BD(2), Z(6), Z(2), id()),
        ("Z2<2O", O2, Z(2), O2, Z(2), id()),
        ("Z2<2O", O2, Z(2), O2, Z(2), ThetaSpec::Automorphism(AutomorphismSpec::Outer2O)),
        ("BD2<2O", O2, BD(2), O2, BD(2), id()),
        ("BD2<2O", O2, BD(2), BD(3), Z(2), id()),
        ("2T<2O", O2, T2, O2, T2, id()),
        ("2T<2O", O2, T2, Z(4), Z(2), id()),
        ("Z2<2I", I2, Z(2), I2, Z(2), id()),
        ("Z2<2I", I2, Z(2), I2, Z(2), ThetaSpec::Automorphism(AutomorphismSpec::Outer2I)),
    ];
    rows.into_iter().map(|(row, a, a0, b, b0, t)| Ok((row, quintuple(a, a0, b, b0, t)?))).collect()
}

fn goursat_roundtrip() -> Outcome {
    let lib = goursat_library()?;
    let covered: BTreeSet<&str> = lib.iter().map(|(r, _)| *r).collect();
    ensure(lib.len() >= 20 && covered.len() == 11, || format!("{} quintuples, {} rows", lib.len(), covered.len()))?;
    for (row, q) in &lib {
        let c = build_goursat(q);
        ensure(c.is_closed(), || format!("{row} {q:?}: not closed"))?;
        ensure(c.order() == q.a.order() * q.b0.len(), || format!("{row} {q:?}: order law"))?;
        let back = decompose(&c).map_err(|e| format!("{row} {q:?}: {e}"))?;
        ensure(quintuple_data_equal(q, &back, None, None), || format!("{row} {q:?}: decompose ∘ build"))?;
        ensure(pair_set(&build_goursat(&back)) == pair_set(&c), || format!("{row} {q:?}: build ∘ decompose"))?;
    }
    Ok(format!("{} quintuples over {} rows", lib.len(), covered.len()))
}

fn check_reports(t: TheoremId, reports: &[VerificationReport]) -> Result<usize, String> {
    let (unexpected, missing) = compare_with_expected(t, reports);
    ensure(unexpected.is_empty() && missing.is_empty(), || {
        format!("{t}: unexpected {unexpected:?}, missing {missing:?}")
    })?;
    Ok(reports.iter().filter(|r| r.is_mismatch()).count())
}

fn simple_groups() -> Outcome {
    let b = Bounds::default_for(TheoremId::Simple);
    let reports = crosscheck(TheoremId::Simple, b, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let mismatches = reports.iter().filter(|r| r.is_mismatch()).count();
    ensure(mismatches == 0, || format!("{mismatches} mismatches"))?;
    for p in [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        for r in 1..p {
            for s in 1..p {
                let oracle = is_free(&ProductGroup3::simple(p, r, s).unwrap(), DEFAULT_BUDGET).unwrap().free;
                ensure(simple_system_trivial_only(p, r, s).unwrap() == oracle, || format!("Simple({p},{r},{s})"))?;
            }
        }
    }
    Ok(format!("{} triples", reports.len()))
}

fn splittable_groups() -> Outcome {
    let t = TheoremId::Main;
    let b = Bounds::default_for(t);
    let reports = crosscheck(t, b, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let documented = check_reports(t, &reports)?;
    let specs = families(t, b);
    ensure(specs.len() == reports.len(), || "report count".into())?;
    for (spec, report) in specs.iter().zip(&reports) {
        let FamilySpec::Splittable { .. } = spec else { return Err(format!("{spec} is not splittable")) };
        let ProductGroup3::Splittable(f) = spec.materialize().map_err(|e| e.to_string())? else {
            return Err(format!("{spec} did not materialize as a product"));
        };
        ensure(splittable_free_test(&f[0], &f[1], &f[2]) == report.oracle, || format!("{spec}: fast test"))?;
    }
    Ok(format!("{} groups, {documented} documented mismatches", reports.len()))
}

fn semi_splittable_theorems() -> Outcome {
    let mut total = 0;
    let mut documented = 0;
    for t in [TheoremId::TypeB, TheoremId::Type3, TheoremId::QFinal, TheoremId::QFinal2] {
        let reports = crosscheck(t, Bounds::default_for(t), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        documented += check_reports(t, &reports)?;
        total += reports.len();
    }
    Ok(format!("{total} groups, {documented} documented mismatches"))
}

fn congruence_suites() -> Outcome {
    const W: i64 = 200;
    let cases: Vec<(i64, i64, i64)> = (-20..=20i64)
        .filter(|&a| a != 0)
        .flat_map(|a| (-20..=20i64).filter(|&b| b != 0).flat_map(move |b| (-40..=40).map(move |c| (a, b, c))))
        .collect();
    cases.par_iter().try_for_each(|&(a, b, c)| {
        let brute: BTreeSet<(i64, i64)> = (-W..=W)
            .filter(|x| (c - a * x) % b == 0)
            .map(|x| (x, (c - a * x) / b))
            .filter(|(_, y)| y.abs() <= W)
            .collect();
        let lattice = solve_linear(a, b, c).unwrap();
        let Some(l) = lattice else {
            return ensure(brute.is_empty(), || format!("solve_linear({a},{b},{c}) missed solutions"));
        };
        let (s, base) = (l.steps[0], l.base);
        let reach = 2 * W + base.0.abs() + base.1.abs();
        let listed: BTreeSet<(i64, i64)> = (-reach..=reach)
            .map(|t| (base.0 + t * s.0, base.1 + t * s.1))
            .filter(|(x, y)| x.abs() <= W && y.abs() <= W)
            .collect();
        ensure(listed == brute, || format!("solve_linear({a},{b},{c}): lattice differs in window"))?;
        for &(x, y) in &brute {
            ensure(l.contains(x, y) && !l.contains(x, y + 1), || format!("solve_linear({a},{b},{c}) contains"))?;
        }
        Ok(())
    })?;
    for n in 2..=200i64 {
        for r in (1..n).filter(|r| num_integer::Integer::gcd(r, &n) == 1) {
            let n1 = neg_congruence(n, r).unwrap();
            let ok = (0..n).all(|x| (x % n1 == 0) == ((1 + r) * x % n == 0));
            ensure(ok, || format!("neg_congruence({n},{r})"))?;
        }
    }
    (2..=48i64).into_par_iter().try_for_each(|n| {
        for m in 2..=48i64 {
            let l = cos_equality_lattice(n, m).unwrap();
            for x in 0..n {
                for y in 0..m {
                    let exact = realpart_equal(&RealPart::cos_turn(rat(x, n)), &RealPart::cos_turn(rat(y, m)));
                    ensure(l.contains(x, y) == exact, || format!("cos lattice ({n},{m}) at ({x},{y})"))?;
                }
            }
        }
        Ok::<(), String>(())
    })?;
    let half = |s: &str| s.parse::<RealPart>().unwrap().key();
    for n in 2..=300i64 {
        for residue in [1, 2] {
            for (target, value) in [(HalfTarget::PlusHalf, half("1/2")), (HalfTarget::MinusHalf, half("-1/2"))] {
                let found =
                    (0..3 * n).filter(|x| x % 3 == residue).any(|x| RealPart::cos_turn(rat(x, 3 * n)).key() == value);
                ensure(res_solvable(n, residue, target).unwrap() == found, || {
                    format!("res_solvable({n},{residue},{target:?})")
                })?;
            }
        }
    }
    Ok(format!("{} linear systems", cases.len()))
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn freeness_symmetry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut blocked = 0;
    for _ in 0..100 {
        let g = common::random_spec(&mut rng);
        let mut verdicts = Vec::new();
        for perm in PERMUTATIONS {
            let h = g.permuted(perm);
            let v = is_free(&h, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            if let Some(w) = &v.witness {
                ensure(common::witness_valid(&h, w), || format!("{h:?}: invalid witness {w:?}"))?;
            }
            ensure(v.free == v.witness.is_none(), || format!("{h:?}: witness presence"))?;
            verdicts.push(v.free);
        }
        ensure(verdicts.iter().all(|&v| v == verdicts[0]), || format!("{g:?}: verdict depends on order"))?;
        blocked += usize::from(!verdicts[0]);
    }
    Ok(format!("100 specs, {blocked} non-free"))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        ("ADE catalog", Duration::from_secs(5), ade_catalog),
        ("real-part tables", Duration::from_secs(30), real_part_tables),
        ("conjugacy tables", Duration::from_secs(1), conjugacy_tables),
        ("Goursat roundtrip", Duration::from_secs(5), goursat_roundtrip),
        ("simple groups", Duration::from_secs(10), simple_groups),
        ("splittable groups", Duration::from_secs(600), splittable_groups),
        ("type I/II/III groups", Duration::from_secs(1800), semi_splittable_theorems),
        ("congruence lemmas", Duration::from_secs(60), congruence_suites),
        ("freeness symmetry", Duration::from_secs(60), freeness_symmetry),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            ensure(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}")).map(|_| detail)
        });
        match outcome {
            Ok(detail) => println!("PASS {}: {name} ({detail}) [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
