//! One line per acceptance criterion, each with its runtime limit. Runs
//! without the test harness so the lines are always printed:
//! `cargo test -p linkhom --test acceptance`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use linkhom::diagram::{make_split, Strand, Surface};
use linkhom::group::{coorientable, coorientable_bruteforce, pair_canonical, GroupElement};
use linkhom::invariants::{applicability, i2, lk1, lk1_via_path, Applicability, GuaranteeReason, ManifoldDescriptor};
use linkhom::linking::LinkingValue;
use linkhom::moves::{random_flip_paths, random_script, random_script_with, run_script, ApplyMode, FuzzConfig};
use linkhom::resolution::{complexity, config_distance, profiles, Configuration, SourcePoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn k(r: i64, s: i64) -> GroupElement {
    GroupElement::klein(r, s)
}

fn single(a: GroupElement, b: GroupElement, n: i64) -> LinkingValue {
    LinkingValue::singleton(&a, &b, n).unwrap()
}

fn run(n: u32, title: &str, limit_secs: u64, body: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| Err("panicked".into()));
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit_secs);
    let verdict = match (&outcome, elapsed <= limit) {
        (Ok(()), true) => "PASS".to_string(),
        (Ok(()), false) => "FAIL (over time limit)".to_string(),
        (Err(e), _) => format!("FAIL ({e})"),
    };
    println!("criterion {n} [{title}]: {verdict}; {:.2} s, limit {limit_secs} s", elapsed.as_secs_f64());
    outcome.is_ok() && elapsed <= limit
}

fn coorientability_table() -> Check {
    let expected = [((0, 0), (0, 0), false), ((0, 0), (1, 0), false), ((0, 0), (0, 1), true), ((1, 0), (0, 1), true)];
    for (a, b, want) in expected {
        let got = coorientable(&k(a.0, a.1), &k(b.0, b.1)).unwrap();
        ensure(got == want, || format!("{a:?},{b:?} gave {got}"))?;
    }
    for r1 in -4..=4 {
        for s1 in -4..=4 {
            for r2 in -4..=4 {
                for s2 in -4..=4 {
                    let (a, b) = (k(r1, s1), k(r2, s2));
                    let same = coorientable(&a, &b).unwrap() == coorientable_bruteforce(&a, &b, 10).unwrap();
                    ensure(same, || format!("grid disagreement at {a} {b}"))?;
                }
            }
        }
    }
    Ok(())
}

fn group_identities() -> Check {
    let (a, b) = (k(1, 0), k(0, 1));
    ensure(b.mul(&a).unwrap().mul(&b).unwrap() == a, || "a != bab".into())?;
    ensure(rewrite_normal_form(&parse_word("bab")) == a, || "rewriting bab".into())?;
    for r in -6..=6 {
        for s in -6..=6 {
            let c = k(r, s).commutes(&b).unwrap();
            ensure(c == (r % 2 == 0), || format!("centralizer wrong at ({r},{s})"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let letters = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];
    for _ in 0..2000 {
        let len = rng.gen_range(0..=12);
        let w: Word = (0..len).map(|_| letters[rng.gen_range(0..4)]).collect();
        let n = rewrite_normal_form(&w);
        ensure(n == letter_product(&w) && affine_of(&n) == eval_word_affine(&w), || format!("word {w:?}"))?;
    }
    Ok(())
}

fn degree_one_separations() -> Check {
    let about_b = lk1(&fixture_diagram("klein_loop_around_b")).unwrap();
    let unit_b = |n| single(k(0, 0), k(0, 1), n);
    ensure(about_b == unit_b(1) || about_b == unit_b(-1), || format!("loop around b: {about_b}"))?;
    let lower = lk1(&fixture_diagram("klein_ab_cross_b_over")).unwrap();
    let upper = lk1(&fixture_diagram("klein_ab_cross_a_over")).unwrap();
    let diff = upper.sub(&lower).unwrap();
    let unit_ab = |n| single(k(1, 0), k(0, 1), n);
    ensure(diff == unit_ab(1) || diff == unit_ab(-1), || format!("(a,b) pair difference: {diff}"))?;
    let about_a = lk1(&fixture_diagram("klein_loop_around_a")).unwrap();
    let class = pair_canonical(&k(0, 0), &k(1, 0)).unwrap();
    ensure(about_a.coefficient(&class) == 1 && about_a.terms().count() == 1, || format!("loop around a: {about_a}"))?;
    for r1 in -2..=2 {
        for s1 in -2..=2 {
            for (r2, s2) in [(0, 0), (1, 0), (0, 1), (1, -1), (2, 3)] {
                let d = make_split(Surface::Klein, &k(r1, s1), &k(r2, s2)).map_err(|e| e.to_string())?;
                ensure(lk1(&d).unwrap().is_zero(), || format!("split ({r1},{s1}) ({r2},{s2}) nonzero"))?;
            }
        }
    }
    Ok(())
}

fn invariance_fuzz() -> Check {
    let seeds = seed_diagrams(20);
    for (i, d) in seeds.iter().enumerate() {
        let start = lk1(d).unwrap();
        for j in 0..10 {
            let s = random_script(d, 10, (100 * i + j) as u64).map_err(|e| e.to_string())?;
            let (end, ev) = run_script(&s, ApplyMode::Checked).map_err(|e| e.to_string())?;
            ensure(ev.is_empty(), || "event in a non-discriminant script".into())?;
            ensure(lk1(&end).unwrap() == start, || format!("lk1 changed on seed {i} script {j}"))?;
        }
    }
    let config = FuzzConfig { events: true, ..FuzzConfig::default() };
    let mut bearing = 0;
    let mut seed = 5000u64;
    while bearing < 200 {
        let (i, d) = ((seed as usize) % seeds.len(), &seeds[(seed as usize) % seeds.len()]);
        let s = random_script_with(d, 10, seed, config).map_err(|e| e.to_string())?;
        seed += 1;
        ensure(seed < 5000 + 2000, || format!("only {bearing} event-bearing scripts"))?;
        let (end, ev) = run_script(&s, ApplyMode::Checked).map_err(|e| e.to_string())?;
        if ev.is_empty() {
            continue;
        }
        bearing += 1;
        let total = lk1(&end).unwrap().sub(&lk1(d).unwrap()).unwrap();
        ensure(lk1_via_path(&s).unwrap() == total, || format!("path sum differs on seed {i} script {seed}"))?;
    }
    Ok(())
}

fn degree_two_value() -> Check {
    let s = fixture_script("klein_contractible_pair_path");
    let v = i2(&s).map_err(|e| e.to_string())?;
    ensure(v.abs() == 1, || format!("contractible pair path gives {v}"))?;
    let mut empty = s.clone();
    empty.moves.clear();
    ensure(i2(&empty).unwrap() == 0, || "empty path nonzero".into())?;
    for seed in 0..100 {
        let (s1, s2) = random_flip_paths(Surface::Klein, seed).map_err(|e| e.to_string())?;
        let (f1, _) = run_script(&s1, ApplyMode::Checked).map_err(|e| e.to_string())?;
        let (f2, _) = run_script(&s2, ApplyMode::Checked).map_err(|e| e.to_string())?;
        ensure(f1 == f2, || format!("endpoints differ for seed {seed}"))?;
        let (a, b) = (i2(&s1).map_err(|e| e.to_string())?, i2(&s2).map_err(|e| e.to_string())?);
        ensure(a == b, || format!("seed {seed}: {a} vs {b}"))?;
    }
    Ok(())
}

fn applicability_checks() -> Check {
    let klein = ManifoldDescriptor::preset("klein").unwrap();
    let got = applicability(&klein, &k(1, 0), &k(0, 1)).unwrap();
    ensure(got == Applicability::Guaranteed { reason: GuaranteeReason::ThickenedSurface }, || format!("{got:?}"))?;
    let s2s1 = ManifoldDescriptor::preset("s2xs1").unwrap();
    let got = applicability(&s2s1, &GroupElement::Z { n: 0 }, &GroupElement::Z { n: 1 }).unwrap();
    ensure(matches!(got, Applicability::NotGuaranteed { .. }), || format!("{got:?}"))?;
    for x in [false, true] {
        for y in [false, true] {
            let (a, b) = (GroupElement::Z2 { bit: x }, GroupElement::Z2 { bit: y });
            ensure(!coorientable(&a, &b).unwrap(), || format!("Z2 pair ({x},{y}) coorientable"))?;
        }
    }
    Ok(())
}

fn random_configuration(rng: &mut ChaCha8Rng) -> Configuration {
    loop {
        let sets: Vec<Vec<SourcePoint>> = (0..rng.gen_range(1..=3))
            .map(|_| {
                (0..rng.gen_range(2..=4))
                    .map(|_| {
                        let circle = if rng.gen_bool(0.5) { Strand::One } else { Strand::Two };
                        SourcePoint::new(circle, linkhom::geometry::rat(rng.gen_range(0..8), 8))
                    })
                    .collect()
            })
            .collect();
        if let Ok(c) = Configuration::new(sets) {
            return c;
        }
    }
}

fn combinatorics() -> Check {
    ensure(complexity(&[2]) == Ok(1), || "<2>".into())?;
    ensure(complexity(&[2, 2]) == Ok(2) && complexity(&[3]) == Ok(2), || "<2,2> or <3>".into())?;
    ensure(profiles(2) == vec![vec![2], vec![2, 2], vec![3]], || format!("{:?}", profiles(2)))?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let zero = linkhom::geometry::int(0);
    let mut equal_pairs = 0;
    for _ in 0..1000 {
        let a = random_configuration(&mut rng);
        let b = if rng.gen_bool(0.1) { a.clone() } else { random_configuration(&mut rng) };
        let d = config_distance(&a, &b);
        ensure(d == config_distance(&b, &a), || "asymmetric".into())?;
        ensure((d == zero) == (a == b), || "identity of indiscernibles".into())?;
        equal_pairs += usize::from(a == b);
    }
    ensure(equal_pairs > 0, || "no equal pairs drawn".into())
}

fn module_relations() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut torsion = 0;
    for _ in 0..1000 {
        let mut g = || k(rng.gen_range(-6..=6), rng.gen_range(-6..=6));
        let (a, b, c) = (g(), g(), g());
        let n = rng.gen_range(-5..=5);
        let base = single(a, b, n);
        let moved = single(a.conjugate(&c).unwrap(), b.conjugate(&c).unwrap(), n * i64::from(c.orientation_character()));
        ensure(moved == base, || format!("twisted relation at {a} {b} {c}"))?;
        let mut brute = BruteValue::new();
        brute_add(&mut brute, &a, &b, n, 40);
        ensure(to_brute(&base) == brute, || format!("orbit oracle at {a} {b}"))?;
        if !coorientable(&a, &b).unwrap() {
            torsion += 1;
            ensure(base.add(&base).unwrap().is_zero() && base.neg() == base, || format!("torsion at {a} {b}"))?;
        }
    }
    ensure(torsion > 0, || "no torsion classes drawn".into())
}

fn main() {
    let results = [
        run(1, "coorientability table", 5, coorientability_table),
        run(2, "group identities", 5, group_identities),
        run(3, "degree-one separations", 10, degree_one_separations),
        run(4, "invariance fuzz", 60, invariance_fuzz),
        run(5, "degree-two value", 120, degree_two_value),
        run(6, "applicability", 1, applicability_checks),
        run(7, "combinatorics", 5, combinatorics),
        run(8, "module relations", 5, module_relations),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
