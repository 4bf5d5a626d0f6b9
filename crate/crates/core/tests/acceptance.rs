// SPDX-License-Identifier: MIT OR Apache-2.0

//! Acceptance suite. Prints one PASS/FAIL line per criterion with its
//! wall time and budget, and exits nonzero if any criterion fails.
//!
//! Usage:
//!   cargo test --release --test acceptance

mod common;

use std::time::{Duration, Instant};

use common::*;
use cpgeom::cli::{execute, Command, RunConfig};
use cpgeom::data::{Order, StimulusSet, TrialRecord};
use cpgeom::fitting::{fit_sigmoid, hierarchical_regression, logistic, top_principal_component};
use cpgeom::geometry::{compute_centroids, CentroidSet, Metric, Rdm};
use cpgeom::paradigms::{precision_profile, run_h4, run_identification, run_rsa, specificity_ratio, RsaOptions};
use cpgeom::stats::{bh_fdr, mann_whitney_u, mantel_test, spearman_rho};
use cpgeom::synth::{generate, ArcSpacing, SynthSpec};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

// ── tolerances ──

const ORACLE_TOL: f64 = 1e-8;
const ORACLE_CASES: usize = 100;
const MANTEL_DRAWS: usize = 500;
const MANTEL_BAND: (f64, f64) = (0.031, 0.072);
const PRECISION_BAND: (f64, f64) = (1.8, 2.2);
const CONTROL_BAND: (f64, f64) = (0.9, 1.1);
const SIGMOID_X0_TOL: f64 = 0.05;
const SIGMOID_K_REL_TOL: f64 = 0.05;
const SPECIFICITY_TOL: f64 = 0.1;
const CONTROL_DELTA_R2: f64 = 0.01;
const H4_P: f64 = 1e-3;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn normal(r: &mut impl Rng) -> f64 {
    Distribution::<f64>::sample(&StandardNormal, r)
}

// ── 1. oracle equivalence ──

fn oracle_equivalence() -> Outcome {
    let mut r = rng(101);
    let mut worst = [0.0f64; 4];
    let mut counts = [0usize; 4];

    while counts[0] < ORACLE_CASES {
        let n = r.random_range(3..25);
        let x: Vec<f64> = (0..n).map(|_| f64::from(r.random_range(0..8u8))).collect();
        let y: Vec<f64> = (0..n).map(|_| r.random_range(-1.0..1.0)).collect();
        if let Ok(rho) = spearman_rho(&x, &y) {
            worst[0] = worst[0].max((rho - spearman_nested(&x, &y)).abs());
            counts[0] += 1;
        }
    }

    while counts[1] < ORACLE_CASES {
        let n = r.random_range(8..50);
        let x: Vec<f64> = (0..n).map(|_| r.random_range(0.0..3.0)).collect();
        let mut c: Vec<bool> = (0..n).map(|_| r.random_bool(0.4)).collect();
        c[0] = true;
        c[1] = false;
        let y: Vec<f64> = (0..n)
            .map(|i| 0.2 + 0.7 * x[i] + if c[i] { 0.4 } else { 0.0 } + 0.2 * normal(&mut r))
            .collect();
        let got = hierarchical_regression(&y, &x, &c).map_err(|e| e.to_string())?;
        let rows: Vec<Vec<f64>> = (0..n).map(|i| vec![1.0, x[i], f64::from(u8::from(c[i]))]).collect();
        let (beta, _) = ols_normal_equations(&rows, &y);
        let err = [got.intercept - beta[0], got.coef_logdist - beta[1], got.coef_boundary - beta[2]]
            .iter()
            .map(|d| d.abs())
            .fold(0.0, f64::max);
        worst[1] = worst[1].max(err);
        counts[1] += 1;
    }

    while counts[2] < ORACLE_CASES {
        let na = r.random_range(1..7);
        let nb = r.random_range(1..=(12 - na));
        let a: Vec<f64> = (0..na).map(|_| f64::from(r.random_range(0..8u8))).collect();
        let b: Vec<f64> = (0..nb).map(|_| f64::from(r.random_range(0..8u8))).collect();
        if let Ok(got) = mann_whitney_u(&a, &b) {
            let (u, p) = mann_whitney_enumerate(&a, &b);
            worst[2] = worst[2].max((got.u - u).abs()).max((got.p_two_sided - p).abs());
            counts[2] += 1;
        }
    }

    while counts[3] < ORACLE_CASES {
        let d = r.random_range(2..7);
        let m = r.random_range(3..12);
        let points: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..d).map(|j| 3.0 / (1.0 + j as f64) * normal(&mut r)).collect())
            .collect();
        let got = top_principal_component(&points).map_err(|e| e.to_string())?;
        let want = pc1_power_iteration(&points);
        worst[3] = worst[3].max(got.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
        counts[3] += 1;
    }

    check(
        worst.iter().all(|&w| w <= ORACLE_TOL),
        format!(
            "{ORACLE_CASES} cases each; max |err| spearman {:.1e}, regression {:.1e}, mann-whitney {:.1e}, pca {:.1e}",
            worst[0], worst[1], worst[2], worst[3]
        ),
    )
}

// ── 2. mantel exactness and calibration ──

fn mantel_calibration() -> Outcome {
    let mut r = rng(202);
    let mut exact_err = 0.0f64;
    for _ in 0..30 {
        let a = random_full_rdm(4, &mut r);
        let b = random_full_rdm(4, &mut r);
        let (_, p) = mantel_brute_force(&a, &b);
        let got = mantel_test(
            &Rdm::new(4, condense(&a), "a").map_err(|e| e.to_string())?,
            &Rdm::new(4, condense(&b), "b").map_err(|e| e.to_string())?,
            10_000,
            42,
        )
        .map_err(|e| e.to_string())?;
        if !got.exhaustive || got.n_permutations != 24 {
            return Err("n=4 test was not exhaustive over 24 relabellings".into());
        }
        exact_err = exact_err.max((got.p_value - p).abs());
    }

    let rejections: usize = (0..MANTEL_DRAWS as u64)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(10_000 + i);
            let a = Rdm::new(17, condense(&random_full_rdm(17, &mut r)), "a").unwrap();
            let b = Rdm::new(17, condense(&random_full_rdm(17, &mut r)), "b").unwrap();
            usize::from(mantel_test(&a, &b, 1000, i).unwrap().p_value <= 0.05)
        })
        .sum();
    let rate = rejections as f64 / MANTEL_DRAWS as f64;
    check(
        exact_err <= ORACLE_TOL && (MANTEL_BAND.0..=MANTEL_BAND.1).contains(&rate),
        format!(
            "n=4 max |Δp| {exact_err:.1e}; null rejection rate {rate:.3} ({rejections}/{MANTEL_DRAWS}), band [{}, {}]",
            MANTEL_BAND.0, MANTEL_BAND.1
        ),
    )
}

// ── 3. planted-geometry recovery ──

fn planted_recovery() -> Outcome {
    let stimuli = StimulusSet::decade_10();
    let spec = SynthSpec::new(stimuli.clone()).layers(33).sentences(4).dim(64).seed(42);
    let layers: Vec<usize> = (0..33).collect();
    let opts = RsaOptions::standard(&stimuli, layers.clone());
    let err = |e: cpgeom::Error| e.to_string();

    let planted = generate(&spec.clone().lambda(1.0).sigma(0.1)).map_err(err)?;
    let rsa = run_rsa(&planted, &opts).map_err(err)?;
    let h4 = run_h4(&planted, Metric::Cosine, &layers).map_err(err)?;
    let h4_sig = h4
        .iter()
        .filter(|l| l.regression.delta_r2 > 0.0 && l.regression.p_value < H4_P)
        .count();

    let noisy_control = generate(&spec.clone().lambda(0.0).sigma(0.1)).map_err(err)?;
    let control_rsa = run_rsa(&noisy_control, &opts).map_err(err)?;
    let noisy_h4 = run_h4(&noisy_control, Metric::Cosine, &layers).map_err(err)?;
    let noisy_max = noisy_h4.iter().map(|l| l.regression.delta_r2).fold(0.0, f64::max);

    let clean_control = generate(&spec.lambda(0.0).sigma(0.0)).map_err(err)?;
    let clean_h4 = run_h4(&clean_control, Metric::Cosine, &layers).map_err(err)?;
    let clean_max = clean_h4.iter().map(|l| l.regression.delta_r2).fold(0.0, f64::max);

    let n = layers.len();
    check(
        rsa.cp_wins == n && h4_sig == n && control_rsa.mean_cp_advantage <= 0.0 && clean_max < CONTROL_DELTA_R2,
        format!(
            "λ=1: CP>Cont {}/{n}, H4 sig {h4_sig}/{n}; λ=0: mean Δρ {:+.4}, max ΔR² {clean_max:.4} (σ=0), {noisy_max:.4} (σ=0.1, informational)",
            rsa.cp_wins, control_rsa.mean_cp_advantage
        ),
    )
}

// ── 4. precision gradient ──

fn precision_recovery() -> Outcome {
    let err = |e: cpgeom::Error| e.to_string();
    let mut ratios = Vec::new();
    for stimuli in [StimulusSet::decade_10(), StimulusSet::control_15()] {
        let base = SynthSpec::new(stimuli.clone())
            .layers(9)
            .sigma(0.001)
            .spacing(ArcSpacing::Linear);
        let boost = base.boost_for_step_ratio(2.0).map_err(err)?;
        let bundle = generate(&base.lambda(boost)).map_err(err)?;
        let mut layer_ratios = Vec::new();
        for layer in 1..9 {
            let c: CentroidSet = compute_centroids(&bundle, layer).map_err(err)?;
            layer_ratios.push(precision_profile(&c, &stimuli, Metric::Euclidean).map_err(err)?.boundary_ratio);
        }
        ratios.push(layer_ratios);
    }
    let span = |v: &[f64]| (v.iter().copied().fold(f64::INFINITY, f64::min), v.iter().copied().fold(0.0, f64::max));
    let (plo, phi) = span(&ratios[0]);
    let (clo, chi) = span(&ratios[1]);
    check(
        plo >= PRECISION_BAND.0 && phi <= PRECISION_BAND.1 && clo >= CONTROL_BAND.0 && chi <= CONTROL_BAND.1,
        format!("planted 2x ratio {plo:.3}..{phi:.3}; control ratio {clo:.3}..{chi:.3}"),
    )
}

// ── 5. sigmoid recovery ──

fn sigmoid_recovery() -> Outcome {
    let x: Vec<f64> = (4..=20).map(f64::from).collect();
    let p: Vec<f64> = x.iter().map(|&v| logistic(v, 10.0, 6.3)).collect();
    let fit = fit_sigmoid(&x, &p).map_err(|e| e.to_string())?;
    let dx = (fit.crossover - 10.0).abs();
    let dk = (fit.slope - 6.3).abs() / 6.3;

    let stimuli = StimulusSet::decade_10();
    let mut flat = Vec::new();
    for &v in stimuli.values() {
        for order in [Order::AB, Order::BA] {
            flat.push(TrialRecord::new(&stimuli, v, v, order, 0.0, 0.0).map_err(|e| e.to_string())?);
        }
    }
    let flat = run_identification(&flat, &stimuli).map_err(|e| e.to_string())?;
    let no_cross = flat.framings.iter().all(|f| f.crossover.is_none());
    check(
        dx <= SIGMOID_X0_TOL && dk <= SIGMOID_K_REL_TOL && no_cross,
        format!(
            "x0 {:.4} (|Δ| {dx:.1e}), k {:.4} (rel {dk:.1e}); flat curve crossover: {}",
            fit.crossover,
            fit.slope,
            if no_cross { "none" } else { "reported" }
        ),
    )
}

// ── 6. specificity ──

fn specificity() -> Outcome {
    // ten controls averaging 0.00886 in magnitude
    let controls: Vec<f64> = (0..10).map(|k| if k % 2 == 0 { 0.00786 } else { -0.00986 }).collect();
    let s = specificity_ratio(0.621, &controls).map_err(|e| e.to_string())?;
    check((s - 70.1).abs() <= SPECIFICITY_TOL, format!("specificity {s:.4}, target 70.1 ± {SPECIFICITY_TOL}"))
}

// ── 7. determinism ──

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bundle = dir.path().join("planted.cpb");
    let doc = dir.path().join("doc.json");
    let mut synth = RunConfig::new(Command::Synth);
    synth.n_layers = 9;
    synth.out = Some(bundle.clone());

    let mut bundles = Vec::new();
    let mut docs = Vec::new();
    for workers in [1, 4, 4, 4] {
        synth.workers = Some(workers);
        execute(&synth).map_err(|e| e.to_string())?;
        bundles.push(std::fs::read(&bundle).map_err(|e| e.to_string())?);
        for command in [Command::Rsa, Command::H4, Command::Precision] {
            let mut cfg = RunConfig::new(command);
            cfg.inputs = vec![bundle.clone()];
            cfg.out = Some(doc.clone());
            cfg.workers = Some(workers);
            execute(&cfg).map_err(|e| e.to_string())?;
            docs.push(std::fs::read(&doc).map_err(|e| e.to_string())?);
        }
    }
    let same_bundles = bundles.windows(2).all(|w| w[0] == w[1]);
    let same_docs = (3..docs.len()).all(|i| docs[i] == docs[i % 3]);
    check(
        same_bundles && same_docs,
        format!(
            "synth + rsa/h4/precision, workers 1,4,4,4: bundles {}, documents {}",
            if same_bundles { "identical" } else { "differ" },
            if same_docs { "identical" } else { "differ" }
        ),
    )
}

// ── 8. BH-FDR ──

fn bh_exactness() -> Outcome {
    let hand = bh_fdr(&[0.01, 0.02, 0.04], 0.05).map_err(|e| e.to_string())?;
    let hand_ok = hand.rejected == [true, true, true];
    let mut r = rng(808);
    let mut mismatches = 0;
    for _ in 0..50 {
        let m = r.random_range(1..40);
        let p: Vec<f64> = (0..m).map(|_| (r.random_range(0.0..0.2f64).powi(2) * 25.0).min(1.0)).collect();
        if bh_fdr(&p, 0.05).map_err(|e| e.to_string())?.rejected != bh_quadratic(&p, 0.05) {
            mismatches += 1;
        }
    }
    check(
        hand_ok && mismatches == 0,
        format!("hand example {}; random cases 50, mismatches {mismatches}", if hand_ok { "ok" } else { "wrong" }),
    )
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().expect("thread pool");
    let criteria: [Criterion; 8] = [
        ("oracle equivalence", oracle_equivalence, Some(Duration::from_secs(10))),
        ("mantel exactness and calibration", mantel_calibration, Some(Duration::from_secs(60))),
        ("planted-geometry recovery", planted_recovery, Some(Duration::from_secs(60))),
        ("precision-gradient recovery", precision_recovery, Some(Duration::from_secs(5))),
        ("sigmoid recovery", sigmoid_recovery, Some(Duration::from_secs(1))),
        ("specificity arithmetic", specificity, None),
        ("determinism", determinism, None),
        ("bh-fdr exactness", bh_exactness, None),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = pool.install(run);
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed <= b);
        let budget_text = budget.map_or("no budget".into(), |b| format!("budget {}s", b.as_secs()));
        let (ok, detail) = match outcome {
            Ok(d) => (in_time, d),
            Err(d) => (false, d),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {name}: {detail} [{:.2}s, {budget_text}]",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
