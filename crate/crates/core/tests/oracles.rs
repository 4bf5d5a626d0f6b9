// SPDX-License-Identifier: MIT OR Apache-2.0

//! Core statistics against the brute-force references in `common`.

mod common;

use common::*;
use cpgeom::fitting::{hierarchical_regression, top_principal_component};
use cpgeom::geometry::Rdm;
use cpgeom::stats::{bh_fdr, mann_whitney_u, mantel_test, spearman_rho};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

const TOL: f64 = 1e-8;

#[test]
fn spearman_matches_nested_ranks() {
    let mut r = rng(1);
    for case in 0..200 {
        let n = r.random_range(3..30);
        // Integer draws on a small range force ties in about half the cases.
        let draw = |r: &mut rand_chacha::ChaCha8Rng| -> f64 {
            if case % 2 == 0 {
                f64::from(r.random_range(0..6u8))
            } else {
                r.random_range(-1.0..1.0)
            }
        };
        let x: Vec<f64> = (0..n).map(|_| draw(&mut r)).collect();
        let y: Vec<f64> = (0..n).map(|_| draw(&mut r)).collect();
        match spearman_rho(&x, &y) {
            Ok(rho) => assert!((rho - spearman_nested(&x, &y)).abs() <= TOL, "case {case}"),
            Err(_) => assert!(x.iter().all(|&v| v == x[0]) || y.iter().all(|&v| v == y[0])),
        }
    }
}

#[test]
fn spearman_hand_example() {
    assert!((spearman_rho(&[1.0, 2.0, 3.0], &[3.0, 1.0, 2.0]).unwrap() + 0.5).abs() < 1e-15);
}

#[test]
fn hierarchical_regression_matches_normal_equations() {
    let mut r = rng(2);
    for case in 0..150 {
        let n = r.random_range(8..60);
        let x: Vec<f64> = (0..n).map(|_| r.random_range(0.0..3.0)).collect();
        let mut c: Vec<bool> = (0..n).map(|_| r.random_bool(0.4)).collect();
        c[0] = true;
        c[1] = false;
        let y: Vec<f64> = (0..n)
            .map(|i| 0.3 + 0.8 * x[i] + if c[i] { 0.5 } else { 0.0 } + 0.2 * Distribution::<f64>::sample(&StandardNormal, &mut r))
            .collect();
        let got = hierarchical_regression(&y, &x, &c).unwrap();
        let step1: Vec<Vec<f64>> = x.iter().map(|&v| vec![1.0, v]).collect();
        let step2: Vec<Vec<f64>> = (0..n).map(|i| vec![1.0, x[i], f64::from(u8::from(c[i]))]).collect();
        let (_, r2_1) = ols_normal_equations(&step1, &y);
        let (beta, r2_2) = ols_normal_equations(&step2, &y);
        let f = (r2_2 - r2_1) * (n as f64 - 3.0) / (1.0 - r2_2);
        for (a, b, what) in [
            (got.intercept, beta[0], "intercept"),
            (got.coef_logdist, beta[1], "log coefficient"),
            (got.coef_boundary, beta[2], "boundary coefficient"),
            (got.r2_step1, r2_1, "R² step 1"),
            (got.r2_step2, r2_2, "R² step 2"),
        ] {
            assert!((a - b).abs() <= TOL, "case {case}: {what} {a} vs {b}");
        }
        assert!((got.f_stat - f).abs() <= 1e-6 * f.max(1.0), "case {case}: F");
    }
}

#[test]
fn mann_whitney_matches_enumeration() {
    let mut r = rng(3);
    for case in 0..150 {
        let na = r.random_range(1..7);
        let nb = r.random_range(1..=(12 - na));
        let draw = |r: &mut rand_chacha::ChaCha8Rng| f64::from(r.random_range(0..8u8));
        let a: Vec<f64> = (0..na).map(|_| draw(&mut r)).collect();
        let b: Vec<f64> = (0..nb).map(|_| draw(&mut r)).collect();
        let Ok(got) = mann_whitney_u(&a, &b) else {
            continue;
        };
        let (u, p) = mann_whitney_enumerate(&a, &b);
        assert!(got.exact);
        assert!((got.u - u).abs() <= TOL, "case {case}: U");
        assert!((got.p_two_sided - p).abs() <= TOL, "case {case}: p {} vs {p}", got.p_two_sided);
    }
}

#[test]
fn pca_matches_power_iteration() {
    let mut r = rng(4);
    for case in 0..120 {
        let d = r.random_range(2..7);
        let m = r.random_range(3..12);
        let scales: Vec<f64> = (0..d).map(|j| 3.0 / (1.0 + j as f64)).collect();
        let points: Vec<Vec<f64>> = (0..m)
            .map(|_| scales.iter().map(|s| s * Distribution::<f64>::sample(&StandardNormal, &mut r)).collect::<Vec<f64>>())
            .collect();
        let got = top_principal_component(&points).unwrap();
        let want = pc1_power_iteration(&points);
        let err = got.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(err <= TOL, "case {case}: max error {err}");
    }
}

#[test]
fn bh_matches_quadratic_reference() {
    let mut r = rng(5);
    for _ in 0..200 {
        let m = r.random_range(1..40);
        let p: Vec<f64> = (0..m).map(|_| r.random_range(0.0..0.2f64).powi(2) * 25.0).map(|x: f64| x.min(1.0)).collect();
        assert_eq!(bh_fdr(&p, 0.05).unwrap().rejected, bh_quadratic(&p, 0.05));
    }
}

#[test]
fn mantel_exhaustive_matches_brute_force() {
    let mut r = rng(6);
    for _ in 0..30 {
        let a = random_full_rdm(4, &mut r);
        let b = random_full_rdm(4, &mut r);
        let (rho, p) = mantel_brute_force(&a, &b);
        let ra = Rdm::new(4, condense(&a), "a").unwrap();
        let rb = Rdm::new(4, condense(&b), "b").unwrap();
        let got = mantel_test(&ra, &rb, 10_000, 42).unwrap();
        assert!(got.exhaustive);
        assert_eq!(got.n_permutations, 24);
        assert!((got.rho_observed - rho).abs() <= TOL);
        assert!((got.p_value - p).abs() <= TOL);
        // identical matrices: k of 24 relabellings reach ρ = 1
        let same = mantel_test(&ra, &ra, 24, 0).unwrap();
        assert!(same.p_value >= 1.0 / 24.0);
        assert_eq!(same.p_value, mantel_brute_force(&a, &a).1);
    }
}
