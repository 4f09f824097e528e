//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use bll_core::borcherds::{
    eichler_minus2_orbits, tabulated_vector, tabulated_vectors, Convention, Objective, Pipeline, Representative,
};
use bll_core::enumerate::count_of_int_norm;
use bll_core::lattice::{discriminant, make_named, NamedLattice};
use bll_core::qseries::theta_over_delta;
use bll_core::rootsys::{expected_root_count, Component, Family, RootSystemType};
use bll_core::selftest::oracle_cases;

const R: [u64; 21] = [126, 84, 74, 56, 60, 46, 44, 42, 42, 32, 42, 32, 32, 30, 28, 26, 30, 24, 26, 24, 26];
const N: [i64; 21] = [56, 35, 30, 21, 23, 16, 15, 14, 14, 9, 14, 9, 9, 8, 7, 6, 8, 5, 6, 5, 6];

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

/// The 240 roots in doubled chart coordinates, built from the coordinate
/// description alone.
fn chart_roots() -> Vec<[i64; 8]> {
    let mut out = Vec::new();
    for i in 0..8 {
        for j in i + 1..8 {
            for (a, b) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                let mut v = [0; 8];
                v[i] = a;
                v[j] = b;
                out.push(v);
            }
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            let mut v = [1; 8];
            for (i, c) in v.iter_mut().enumerate() {
                if mask >> i & 1 == 1 {
                    *c = -1;
                }
            }
            out.push(v);
        }
    }
    out
}

fn doubled(coords: &[String]) -> [i64; 8] {
    let mut out = [0; 8];
    for (o, c) in out.iter_mut().zip(coords) {
        *o = match c.split_once('/') {
            Some((n, "2")) => n.parse().unwrap(),
            Some(_) => panic!("unexpected denominator in {c}"),
            None => 2 * c.parse::<i64>().unwrap(),
        };
    }
    out
}

fn dot(a: &[i64; 8], b: &[i64; 8]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn orthogonal_roots(g: i64) -> Vec<[i64; 8]> {
    let v = doubled(&tabulated_vector(g).unwrap().v);
    chart_roots().into_iter().filter(|r| dot(r, &v) == 0).collect()
}

// Root families in 1-based chart indices, doubled.
fn pm_pair(i: usize, j: usize) -> Vec<[i64; 8]> {
    [(2, 2), (2, -2), (-2, 2), (-2, -2)]
        .into_iter()
        .map(|(a, b)| {
            let mut v = [0; 8];
            v[i - 1] = a;
            v[j - 1] = b;
            v
        })
        .collect()
}

fn pm_pairs(idx: &[usize]) -> Vec<[i64; 8]> {
    let mut out = Vec::new();
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            out.extend(pm_pair(i, j));
        }
    }
    out
}

fn differences(idx: &[usize]) -> Vec<[i64; 8]> {
    let mut out = Vec::new();
    for &i in idx {
        for &j in idx {
            if i != j {
                let mut v = [0; 8];
                v[i - 1] = 2;
                v[j - 1] = -2;
                out.push(v);
            }
        }
    }
    out
}

/// `±δ'_S`: `1/2` on `S`, `−1/2` elsewhere.
fn half(s: &[usize]) -> Vec<[i64; 8]> {
    let mut v = [-1; 8];
    for &i in s {
        v[i - 1] = 1;
    }
    vec![v, v.map(|x| -x)]
}

fn shape_families(g: i64) -> Vec<(Vec<[i64; 8]>, usize)> {
    let r = |a: usize, b: usize| (a..=b).collect::<Vec<_>>();
    match g {
        6 => vec![(pm_pairs(&r(3, 8)), 60)],
        9 => vec![(differences(&r(2, 8)), 42)],
        10 => vec![(pm_pairs(&r(4, 8)), 40), (differences(&[2, 3]), 2)],
        12 => vec![
            (differences(&r(2, 7)), 30),
            ((2..=7).flat_map(|i| half(&[1, i])).collect(), 12),
        ],
        13 => vec![
            (pm_pair(7, 8), 4),
            (differences(&r(3, 6)), 12),
            ((3..=6).flat_map(|i| half(&[1, i])).collect(), 8),
            ((3..=6).flat_map(|i| half(&[1, i, 7, 8])).collect(), 8),
        ],
        20 => vec![
            (differences(&r(2, 4)), 6),
            (pm_pairs(&r(6, 8)), 12),
            (half(&[1, 5]), 2),
            (pm_index_pairs(&r(6, 8)).into_iter().flat_map(|(i, j)| half(&[1, 5, i, j])).collect(), 6),
        ],
        _ => Vec::new(),
    }
}

fn pm_index_pairs(idx: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            out.push((i, j));
        }
    }
    out
}

fn criterion_1(p: &Pipeline) -> Outcome {
    let t = Instant::now();
    let table = p.paper_table().map_err(|e| e.to_string())?;
    let secs = t.elapsed().as_secs_f64();
    let got: Vec<i64> = table.iter().map(|r| r.n).collect();
    if got != N {
        return Err(format!("n row {got:?}"));
    }
    if table.iter().zip(2..).any(|(r, g)| r.g != g) {
        return Err("rows out of order".into());
    }
    if secs >= 60.0 {
        return Err(format!("table took {secs:.1}s"));
    }
    Ok(format!("21/21 n(g) values, {secs:.2}s"))
}

fn criterion_2(p: &Pipeline) -> Outcome {
    for (i, g) in (2..=22).enumerate() {
        let oracle = orthogonal_roots(g).len() as u64;
        if oracle != R[i] {
            return Err(format!("g={g}: chart count {oracle}, expected {}", R[i]));
        }
        let v = tabulated_vector(g).unwrap().chart();
        let rep = p.quasi_pullback(g, &v).map_err(|e| e.to_string())?;
        if rep.r != R[i] {
            return Err(format!("g={g}: r={}", rep.r));
        }
        let parts = rep.component_root_counts();
        if parts.iter().sum::<u64>() != rep.r {
            return Err(format!("g={g}: components {parts:?} do not sum to {}", rep.r));
        }
    }
    for g in [6, 9, 10, 12, 13, 20] {
        let orth: BTreeSet<[i64; 8]> = orthogonal_roots(g).into_iter().collect();
        let mut seen = BTreeSet::new();
        for (family, expected) in shape_families(g) {
            let set: BTreeSet<[i64; 8]> = family.into_iter().collect();
            if set.len() != expected {
                return Err(format!("g={g}: family has {} members, expected {expected}", set.len()));
            }
            if !set.is_subset(&orth) {
                return Err(format!("g={g}: family of size {expected} is not orthogonal to v"));
            }
            if !seen.is_disjoint(&set) {
                return Err(format!("g={g}: families overlap"));
            }
            seen.extend(set);
        }
        if seen != orth {
            return Err(format!("g={g}: families cover {} of {} roots", seen.len(), orth.len()));
        }
    }
    Ok("21/21 r(g); shape splits for g=6,9,10,12,13,20 cover v⊥ exactly (g=13: 4+12+8+8)".into())
}

fn criterion_3(p: &Pipeline) -> Outcome {
    let expected = [
        (2, "E7"),
        (3, "D7"),
        (4, "A1+E6"),
        (5, "A7"),
        (6, "D6"),
        (7, "A2+D5"),
        (8, "A1+A6"),
        (9, "A6"),
        (10, "A1+D5"),
        (11, "A3+A4"),
        (16, "A1+A2+A4"),
    ];
    for (g, t) in expected {
        let want: RootSystemType = t.parse().map_err(|e| format!("{e}"))?;
        let rep = p.quasi_pullback(g, &tabulated_vector(g).unwrap().chart()).map_err(|e| e.to_string())?;
        if rep.root_type != want {
            return Err(format!("g={g}: {} instead of {t}", rep.root_type));
        }
    }
    Ok("11/11 types".into())
}

fn criterion_4() -> Outcome {
    let roots = chart_roots();
    let integral = roots.iter().filter(|r| r.iter().all(|c| c % 2 == 0)).count();
    if (integral, roots.len() - integral) != (112, 128) {
        return Err(format!("chart roots split {integral}+{}", roots.len() - integral));
    }
    let e8 = NamedLattice::E8.build().map_err(|e| e.to_string())?;
    let n = count_of_int_norm(&e8, -2).map_err(|e| e.to_string())?;
    if n != 240 {
        return Err(format!("E8 has {n} roots"));
    }
    let mut checked = 0;
    for n in 1..=8u64 {
        let c = count_of_int_norm(&make_named("A", Some(n as i64)).unwrap(), -2).unwrap();
        let f = Component::new(Family::A, n as usize).unwrap().root_count();
        if c != n * (n + 1) || f != c {
            return Err(format!("A{n}: lattice {c}, formula {f}"));
        }
        checked += 1;
    }
    for n in 2..=8u64 {
        let c = count_of_int_norm(&make_named("D", Some(n as i64)).unwrap(), -2).unwrap();
        if c != 2 * n * (n - 1) {
            return Err(format!("D{n}: lattice {c}"));
        }
        if n >= 4 && Component::new(Family::D, n as usize).unwrap().root_count() != c {
            return Err(format!("D{n}: formula disagrees"));
        }
        checked += 1;
    }
    for (name, rank, want) in [("E6", 6, 72), ("E7", 7, 126), ("E8", 8, 240)] {
        let c = count_of_int_norm(&make_named(name, None).unwrap(), -2).unwrap();
        let f = Component::new(Family::E, rank).unwrap().root_count();
        if c != want || f != want {
            return Err(format!("{name}: lattice {c}, formula {f}"));
        }
        checked += 1;
    }
    let sum: RootSystemType = "A1+A2+A4".parse().unwrap();
    if expected_root_count(&sum) != 2 + 6 + 20 {
        return Err("sum formula".into());
    }
    Ok(format!("240 = 112+128; {checked} ADE lattices match the formulas"))
}

fn criterion_5(p: &Pipeline) -> Outcome {
    for pv in tabulated_vectors() {
        let k = p.complement(pv.g, &pv.chart()).map_err(|e| e.to_string())?;
        let det = k.lattice().determinant();
        let order = discriminant(k.lattice()).map_err(|e| e.to_string())?.order();
        let want = 2 * pv.g - 2;
        if det.magnitude().to_string() != want.to_string() || order != want as u64 {
            return Err(format!("g={}: |det|={det}, |A|={order}, expected {want}", pv.g));
        }
    }
    Ok("21/21 |A_K| = 2g-2".into())
}

fn criterion_6(p: &Pipeline) -> Outcome {
    for (i, pv) in tabulated_vectors().iter().enumerate() {
        let k = p.complement(pv.g, &pv.chart()).map_err(|e| e.to_string())?;
        let s = theta_over_delta(&p.enumerator, k.lattice(), p.precision).map_err(|e| e.to_string())?;
        let q0 = s.coefficient(0).ok_or("no q^0 coefficient")?;
        let want = 24 + R[i];
        if q0.to_string() != want.to_string() {
            return Err(format!("g={}: q^0 = {q0}, expected {want}", pv.g));
        }
    }
    Ok("21/21 q^0 = 24 + r(g)".into())
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    for g in 2..=62 {
        let c = eichler_minus2_orbits(g).map_err(|e| e.to_string())?.count;
        let want = if g == 2 { 2 } else { 1 };
        if c != want {
            bad.push(format!("g={g}:{c}"));
        }
    }
    if bad.is_empty() {
        Ok("61/61 orbit counts".into())
    } else {
        Err(format!("{} of 61 differ from the stated dichotomy: {}", bad.len(), bad.join(" ")))
    }
}

fn criterion_8() -> Outcome {
    let cases = oracle_cases(200, 0x5eed_2026).map_err(|e| e.to_string())?;
    let grams: BTreeSet<&Vec<Vec<i64>>> = cases.iter().map(|c| &c.gram).collect();
    if grams.len() < 200 {
        return Err(format!("only {} distinct lattices", grams.len()));
    }
    for c in &cases {
        if c.gram.len() > 5 || c.gram.iter().flatten().any(|x| !(-6..=6).contains(x)) {
            return Err(format!("gram out of range: {:?}", c.gram));
        }
        if !c.agrees() {
            return Err(format!("gram {:?} norm {}: kernel {} oracle {}", c.gram, c.norm, c.kernel, c.oracle));
        }
    }
    let shifted = cases.iter().filter(|c| c.shift.is_some()).count();
    Ok(format!("{}/{} shells agree ({shifted} shifted) over 200 lattices", cases.len(), cases.len()))
}

fn criterion_9(p: &Pipeline) -> Outcome {
    for (i, pv) in tabulated_vectors().iter().enumerate() {
        let v = pv.chart();
        let k = p.complement(pv.g, &v).map_err(|e| e.to_string())?;
        let zero = vec![0; discriminant(k.lattice()).unwrap().invariant_factors().len()];
        let c0 = p
            .c_lambda(pv.g, &v, &zero, &(-num_one()))
            .map_err(|e| e.to_string())?;
        if c0 != R[i] {
            return Err(format!("g={}: c_0(-1) = {c0}", pv.g));
        }
        for conv in [Convention::Complement, Convention::Polarized] {
            let a = p.heegner_ledger_with(pv.g, &v, conv, Representative::Canonical);
            let b = p.heegner_ledger_with(pv.g, &v, conv, Representative::Negated);
            let (a, b) = (a.map_err(|e| e.to_string())?, b.map_err(|e| e.to_string())?);
            if a != b {
                return Err(format!("g={}: ledger changes under λ -> -λ", pv.g));
            }
            if a.entries.iter().any(|e| e.multiplicity == 0 || e.lambda.iter().all(|&x| x == 0)) {
                return Err(format!("g={}: malformed entry", pv.g));
            }
        }
    }
    let g2 = p
        .heegner_ledger(2, &tabulated_vector(2).unwrap().chart(), Convention::Complement)
        .map_err(|e| e.to_string())?;
    if !g2.entries.is_empty() {
        return Err(format!("g=2 ledger has {} entries", g2.entries.len()));
    }
    Ok("21/21 c_0(-1) = r(g); ±λ invariant; g=2 empty".into())
}

fn num_one() -> num_rational::BigRational {
    num_rational::BigRational::from_integer(1.into())
}

fn criterion_10(p: &Pipeline) -> Outcome {
    let pairs: Vec<(i64, u64, String)> = (2..=22)
        .map(|g| {
            let rep = p.quasi_pullback(g, &tabulated_vector(g).unwrap().chart()).unwrap();
            (g, rep.r, rep.root_type.to_string())
        })
        .collect();
    for (g, r, t) in &pairs {
        let s = p.search_v(*g, Objective::Maximize).map_err(|e| e.to_string())?;
        if !s.candidates.iter().any(|c| c.r == *r && c.root_type.to_string() == *t) {
            return Err(format!("g={g}: ({r}, {t}) not among {} candidates", s.candidates.len()));
        }
        if *g == 2 && (s.candidates.len() != 1 || s.candidates[0].r != 126) {
            return Err("g=2 does not collapse to (126, E7)".into());
        }
    }
    Ok("21/21 published (r, type) pairs found; g=2 is a single (126, E7) class".into())
}

fn main() -> ExitCode {
    let p = Pipeline::default();
    let criteria: Vec<Criterion> = vec![
        ("golden n(g) table", Box::new(|| criterion_1(&p))),
        ("root counts and decompositions", Box::new(|| criterion_2(&p))),
        ("type identifications", Box::new(|| criterion_3(&p))),
        ("E8 and ADE root counts", Box::new(criterion_4)),
        ("discriminant order 2g-2", Box::new(|| criterion_5(&p))),
        ("theta/Delta weight cross-check", Box::new(|| criterion_6(&p))),
        ("Eichler dichotomy for 2 <= g <= 62", Box::new(criterion_7)),
        ("kernel vs brute-force oracle", Box::new(criterion_8)),
        ("Heegner ledger consistency", Box::new(|| criterion_9(&p))),
        ("search_v recovery", Box::new(|| criterion_10(&p))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
