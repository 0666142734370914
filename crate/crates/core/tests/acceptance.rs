//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails the
//! target if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::f64::consts::{E, PI};
use std::time::{Duration, Instant};

use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_acyclic_weight, random_exact_triple, random_invertible, random_weight};
use cusptorsion::assembler::{anomaly_constant, anomaly_term, y_independence_check, CuspGeometry};
use cusptorsion::cusp::{compare_trace, semigroup_check, CuspModelParams};
use cusptorsion::kostant::{boundary_profile, compute_w1, kostant_data_closed_form, kostant_data_from_set};
use cusptorsion::nilcoh::{build_rep, kostant_prediction, nil_cohomology};
use cusptorsion::rational::{to_f64, Rational};
use cusptorsion::torsion::{cohomology_dims, multiplicativity_check, reidemeister_torsion};
use cusptorsion::weights::{build_root_system, weyl_dimension, HighestWeight, WeightContext};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn g(c: &[i64]) -> HighestWeight {
    HighestWeight::from_i64(c, WeightContext::G).unwrap()
}

fn within_budget(start: Instant, budget: Duration) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    ensure(elapsed < budget, || format!("took {elapsed:?}, budget {budget:?}"))?;
    Ok(elapsed)
}

/// Enumerated and closed-form Kostant data agree; `|W¹| = 2(n+1)` with
/// lengths `0, …, n, n, …, 2n`.
fn kostant_cross_check() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for n in 1..=5 {
        let w1 = compute_w1(n).map_err(|e| e.to_string())?;
        ensure(w1.len() == 2 * (n + 1), || format!("|W¹| = {} for n = {n}", w1.len()))?;
        let mut lengths: Vec<usize> = (0..=2 * n).collect();
        lengths.push(n);
        lengths.sort();
        for half in [false, true] {
            for _ in 0..25 {
                let w = random_weight(&mut rng, n + 1, half, 3);
                let mut a = kostant_data_from_set(&w, n, &w1).map_err(|e| e.to_string())?;
                let mut b = kostant_data_closed_form(&w, n).map_err(|e| e.to_string())?;
                a.sort();
                b.sort();
                ensure(a == b, || format!("n = {n}, Λ = {w}: enumeration and closed form differ"))?;
                let mut ls: Vec<usize> = a.iter().map(|d| d.length).collect();
                ls.sort();
                ensure(ls == lengths, || format!("n = {n}, Λ = {w}: lengths {ls:?}"))?;
                checked += 1;
            }
        }
    }
    let t = within_budget(start, Duration::from_secs(10))?;
    Ok(format!("{checked} weights, n = 1..5, {t:.2?}"))
}

/// Brute-force nilradical cohomology equals the Kostant prediction.
fn oracle_validation() -> Outcome {
    let start = Instant::now();
    let cases: Vec<(usize, Vec<i64>)> = vec![
        (3, vec![0, 0]),
        (3, vec![1, 0]),
        (3, vec![2, 0]),
        (3, vec![1, 1]),
        (3, vec![2, 1]),
        (5, vec![0, 0, 0]),
        (5, vec![1, 0, 0]),
    ];
    for (d, c) in &cases {
        let w = g(c);
        let n = (d - 1) / 2;
        let rep = build_rep(*d, &w).map_err(|e| e.to_string())?;
        let oracle = nil_cohomology(&rep).map_err(|e| e.to_string())?;
        let predicted = kostant_prediction(&w, n).map_err(|e| e.to_string())?;
        ensure(oracle == predicted, || {
            format!("d = {d}, Λ = {w}: oracle {oracle:?} vs Kostant {predicted:?}")
        })?;
        // Poincaré duality and vanishing Euler characteristic on the oracle side.
        let dims = oracle.dims();
        let mut rev = dims.clone();
        rev.reverse();
        ensure(dims == rev, || format!("d = {d}, Λ = {w}: dims {dims:?} not palindromic"))?;
    }
    let t = within_budget(start, Duration::from_secs(60))?;
    Ok(format!("{} representations, {t:.2?}", cases.len()))
}

/// Multiplicativity on random exact triples and the base-change rule.
fn torsion_multiplicativity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut nontrivial_les = 0;
    for i in 0..100 {
        let ses = random_exact_triple(&mut rng);
        let r = multiplicativity_check(&ses).map_err(|e| format!("triple {i}: {e}"))?;
        ensure(r.holds, || format!("triple {i}: τ(C) = {} but product = {}", r.tau_total, r.product))?;
        if r.tau_les != Rational::from_integer(1.into()) {
            nontrivial_les += 1;
        }
    }
    let mut rebased = 0;
    while rebased < 100 {
        let c = random_exact_triple(&mut rng).total;
        let dims = cohomology_dims(&c);
        let Some((i, &h)) = dims.iter().enumerate().find(|(_, &h)| h > 0) else {
            continue;
        };
        let q = c.first_degree() + i as i64;
        let a = random_invertible(&mut rng, h);
        let det = a.determinant().map_err(|e| e.to_string())?.abs();
        let tau = reidemeister_torsion(&c).map_err(|e| e.to_string())?;
        let tau2 = reidemeister_torsion(&c.rebase_cohomology(q, &a).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let expect = if q.rem_euclid(2) == 0 { &tau * &det } else { &tau / &det };
        ensure(tau2 == expect, || format!("base change in degree {q}: {tau2} vs {expect}"))?;
        rebased += 1;
    }
    Ok(format!(
        "100 triples ({nontrivial_les} with τ(LES) ≠ 1), {rebased} base changes, exact"
    ))
}

/// Truncated heat trace against the closed asymptotic, and the semigroup property.
fn heat_trace() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for d in [3usize, 5] {
        for t in [0.25, 1.0, 4.0] {
            for u in [1.0, 2.0] {
                let y = u * (10.0 * f64::sqrt(t)).exp();
                let p = CuspModelParams::new(d, u, t, y).map_err(|e| e.to_string())?;
                let c = compare_trace(&p).map_err(|e| e.to_string())?;
                let bound = 1e-6 * c.asymptotic.abs() + c.tail_bound;
                ensure(c.deviation.abs() < bound, || {
                    format!("d = {d}, t = {t}, u = {u}: deviation {:e} ≥ {bound:e}", c.deviation)
                })?;
                worst = worst.max(c.deviation.abs() / c.asymptotic.abs());
            }
        }
        let p = CuspModelParams::new(d, 1.0, 1.0, 10.0).map_err(|e| e.to_string())?;
        for (t1, t2, y, y2) in [(0.3, 0.7, 1.5, 2.5), (1.0, 1.0, 2.0, 2.0), (0.5, 2.0, 4.0, 1.2)] {
            let s = semigroup_check(&p, t1, t2, y, y2).map_err(|e| e.to_string())?;
            ensure(s.relative_error < 1e-6, || {
                format!("semigroup d = {d}, ({t1}, {t2}, {y}, {y2}): rel. error {:e}", s.relative_error)
            })?;
        }
    }
    let t = within_budget(start, Duration::from_secs(30))?;
    Ok(format!("12 grid points, worst relative deviation {worst:.1e}, semigroup ok, {t:.2?}"))
}

/// `¼ Σ (−1)^k log|λ_k| dim_k`, computed from the Kostant data directly.
fn quarter_sum(w: &HighestWeight, n: usize, kappa: u64) -> f64 {
    let rs = build_root_system(n as i64).unwrap();
    let mut dims = vec![0u64; 2 * n + 1];
    let mut lambdas: BTreeMap<usize, Rational> = BTreeMap::new();
    for datum in kostant_data_closed_form(w, n).unwrap() {
        dims[datum.length] += kappa * weyl_dimension(&rs, &datum.sigma).unwrap();
        lambdas.insert(datum.length, datum.lambda.abs());
    }
    (0..=2 * n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * to_f64(&lambdas[&k]).ln() * dims[k] as f64
        })
        .sum::<f64>()
        / 4.0
}

fn y_independence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let ys = vec![1.0, E, 10.0, 100.0];
    let mut checked = 0;
    for n in 1..=3 {
        for i in 0..20 {
            let w = random_acyclic_weight(&mut rng, n + 1, i % 4 == 3, 3);
            let kappa = rng.gen_range(1..=3u64);
            let geom = CuspGeometry::new(kappa, vec![1.0; kappa as usize], ys.clone()).map_err(|e| e.to_string())?;
            let r = y_independence_check(&w, n, &geom, 1e-9).map_err(|e| format!("Λ = {w}: {e}"))?;
            let oracle = quarter_sum(&w, n, kappa);
            for t in &r.per_y {
                ensure((t.combined - oracle).abs() < 1e-9 * oracle.abs().max(1.0), || {
                    format!("Λ = {w}, Y = {}: S = {} vs ¼Σ = {oracle}", t.y, t.combined)
                })?;
            }
            ensure(r.log2_identity_holds, || format!("Λ = {w}: log 2 identity fails"))?;
            checked += 1;
        }
    }
    let geom = CuspGeometry::new(1, vec![1.0], ys).map_err(|e| e.to_string())?;
    let worked = y_independence_check(&g(&[2, 1]), 1, &geom, 1e-9).map_err(|e| e.to_string())?;
    let half_log3 = 0.5 * 3f64.ln();
    for t in &worked.per_y {
        ensure((t.combined - half_log3).abs() < 1e-12, || format!("worked case S({}) = {}", t.y, t.combined))?;
    }
    Ok(format!("{checked} weights × 4 heights; worked case S = {:.4}", worked.cohomology_correction))
}

fn anomaly() -> Outcome {
    let c1 = anomaly_constant(1).map_err(|e| e.to_string())?;
    ensure((c1 + 1.0 / (8.0 * PI)).abs() < 1e-15, || format!("c(1) = {c1}"))?;
    let w = g(&[2, 1]);
    let one = CuspGeometry::new(1, vec![1.0], vec![]).map_err(|e| e.to_string())?;
    let base = anomaly_term(1, &w, &one).map_err(|e| e.to_string())?;
    ensure((base + 1.0 / PI).abs() < 1e-15, || format!("anomaly term {base}, expected -1/π"))?;
    for kappa in 1..=4u64 {
        for scale in [0.5, 1.0, 3.0] {
            let geom = CuspGeometry::new(kappa, vec![scale; kappa as usize], vec![]).map_err(|e| e.to_string())?;
            let v = anomaly_term(1, &w, &geom).map_err(|e| e.to_string())?;
            let expect = base * kappa as f64 * scale;
            ensure((v - expect).abs() < 1e-14 * expect.abs(), || {
                format!("κ = {kappa}, vol = {scale}: {v} vs {expect}")
            })?;
        }
    }
    Ok(format!("c(1) = {c1:.16}, linear in κ and volumes"))
}

fn profile_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for n in 1..=5 {
        for i in 0..30 {
            let w = random_weight(&mut rng, n + 1, i % 3 == 2, 3);
            let kappa = rng.gen_range(1..=3u64);
            let p = boundary_profile(&w, n, kappa).map_err(|e| e.to_string())?;
            let top = 2 * n;
            let mut chi: i128 = 0;
            for k in 0..=top {
                ensure(p.dim(k) == p.dim(top - k), || format!("Λ = {w}: dim_{k} ≠ dim_{}", top - k))?;
                if k != n {
                    ensure(*p.lambda(k) == -p.lambda(top - k).clone(), || {
                        format!("Λ = {w}: λ_{k} ≠ −λ_{}", top - k)
                    })?;
                }
                chi += if k % 2 == 0 { p.dim(k) as i128 } else { -(p.dim(k) as i128) };
            }
            ensure(p.middle.lambda_plus == -p.middle.lambda_minus.clone(), || {
                format!("Λ = {w}: λ_n^± not opposite")
            })?;
            ensure(chi == 0, || format!("Λ = {w}: Euler characteristic {chi}"))?;
            ensure(p.is_strongly_acyclic() == !w.last().is_zero(), || {
                format!("Λ = {w}: acyclicity flag disagrees with the last coordinate")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} profiles"))
}

fn main() {
    // `cargo test` passes harness flags; a name filter other than ours skips the suite.
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !args.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        return;
    }
    let criteria: [Criterion; 7] = [
        ("1 Kostant cross-check", kostant_cross_check),
        ("2 nilradical cohomology oracle", oracle_validation),
        ("3 torsion multiplicativity and base change", torsion_multiplicativity),
        ("4 heat-trace asymptotics", heat_trace),
        ("5 truncation independence", y_independence),
        ("6 anomaly constant", anomaly),
        ("7 profile invariants", profile_invariants),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("{} of 7 criteria passed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
