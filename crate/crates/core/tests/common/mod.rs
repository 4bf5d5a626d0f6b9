// SPDX-License-Identifier: MIT OR Apache-2.0

//! Brute-force reference implementations. Deliberately naive: they share no
//! code with the crate and trade speed for obviousness.

#![allow(dead_code, clippy::needless_range_loop)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Average ranks by counting: 1 + #smaller + (#equal - 1) / 2.
pub fn ranks_nested(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|&xi| {
            let smaller = x.iter().filter(|&&xj| xj < xi).count() as f64;
            let equal = x.iter().filter(|&&xj| xj == xi).count() as f64;
            1.0 + smaller + (equal - 1.0) / 2.0
        })
        .collect()
}

pub fn pearson_naive(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for i in 0..x.len() {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    sxy / (sxx * syy).sqrt()
}

pub fn spearman_nested(x: &[f64], y: &[f64]) -> f64 {
    pearson_naive(&ranks_nested(x), &ranks_nested(y))
}

/// Solve `a x = b` by Gauss-Jordan elimination with partial pivoting.
pub fn gauss_jordan(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col];
        for k in 0..n {
            a[col][k] /= p;
        }
        b[col] /= p;
        for row in 0..n {
            if row != col {
                let f = a[row][col];
                for k in 0..n {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
    }
    b
}

/// OLS through the normal equations; returns (coefficients, R²).
pub fn ols_normal_equations(rows: &[Vec<f64>], y: &[f64]) -> (Vec<f64>, f64) {
    let p = rows[0].len();
    let mut xtx = vec![vec![0.0; p]; p];
    let mut xty = vec![0.0; p];
    for (r, &yi) in rows.iter().zip(y) {
        for i in 0..p {
            xty[i] += r[i] * yi;
            for j in 0..p {
                xtx[i][j] += r[i] * r[j];
            }
        }
    }
    let beta = gauss_jordan(xtx, xty);
    let my = y.iter().sum::<f64>() / y.len() as f64;
    let mut sse = 0.0;
    let mut sst = 0.0;
    for (r, &yi) in rows.iter().zip(y) {
        let fit: f64 = r.iter().zip(&beta).map(|(a, b)| a * b).sum();
        sse += (yi - fit) * (yi - fit);
        sst += (yi - my) * (yi - my);
    }
    (beta, 1.0 - sse / sst)
}

/// Exact two-sided Mann-Whitney p by enumerating every labelling of the
/// pooled sample as a bitmask. Returns (U, p).
pub fn mann_whitney_enumerate(a: &[f64], b: &[f64]) -> (f64, f64) {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = ranks_nested(&pooled);
    let (na, n) = (a.len(), pooled.len());
    let u_of = |mask: u32| -> f64 {
        let r: f64 = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| ranks[i]).sum();
        r - (na * (na + 1)) as f64 / 2.0
    };
    let observed = u_of((1u32 << na) - 1);
    let mu = (na * (n - na)) as f64 / 2.0;
    let (mut hits, mut total) = (0u64, 0u64);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == na {
            total += 1;
            if (u_of(mask) - mu).abs() >= (observed - mu).abs() - 1e-9 {
                hits += 1;
            }
        }
    }
    (observed, hits as f64 / total as f64)
}

/// Leading covariance eigenvector by power iteration, sign-fixed so the
/// largest-magnitude entry is positive.
pub fn pc1_power_iteration(points: &[Vec<f64>]) -> Vec<f64> {
    let (m, d) = (points.len(), points[0].len());
    let mean: Vec<f64> = (0..d).map(|j| points.iter().map(|p| p[j]).sum::<f64>() / m as f64).collect();
    let mut cov = vec![vec![0.0; d]; d];
    for p in points {
        for i in 0..d {
            for j in 0..d {
                cov[i][j] += (p[i] - mean[i]) * (p[j] - mean[j]);
            }
        }
    }
    let mut v: Vec<f64> = (0..d).map(|i| 1.0 + 0.1 * i as f64).collect();
    for _ in 0..20_000 {
        let mut w: Vec<f64> = (0..d).map(|i| (0..d).map(|j| cov[i][j] * v[j]).sum()).collect();
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        w.iter_mut().for_each(|x| *x /= norm);
        let delta: f64 = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).sum();
        v = w;
        if delta < 1e-15 {
            break;
        }
    }
    let pivot = v.iter().copied().fold(0.0f64, |acc, x| if x.abs() > acc.abs() { x } else { acc });
    if pivot < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

/// BH rejection set without sorting: the largest k with at least k
/// p-values at or below k·α/m sets the threshold.
pub fn bh_quadratic(p: &[f64], alpha: f64) -> Vec<bool> {
    let m = p.len();
    let mut k_star = 0;
    for k in 1..=m {
        let t = k as f64 * alpha / m as f64;
        if p.iter().filter(|&&x| x <= t).count() >= k {
            k_star = k;
        }
    }
    let t = k_star as f64 * alpha / m as f64;
    p.iter().map(|&x| k_star > 0 && x <= t).collect()
}

/// Condensed upper-triangle entry list of a full symmetric matrix.
pub fn condense(full: &[Vec<f64>]) -> Vec<f64> {
    let n = full.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(full[i][j]);
        }
    }
    out
}

fn permutations(items: Vec<usize>) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.clone();
        let head = rest.remove(i);
        for mut tail in permutations(rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// One-sided Mantel p over every relabelling of `b`'s items.
pub fn mantel_brute_force(a: &[Vec<f64>], b: &[Vec<f64>]) -> (f64, f64) {
    let n = a.len();
    let ca = condense(a);
    let observed = spearman_nested(&ca, &condense(b));
    let perms = permutations((0..n).collect());
    let hits = perms
        .iter()
        .filter(|perm| {
            let relabelled: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| b[perm[i]][perm[j]]).collect()).collect();
            spearman_nested(&ca, &condense(&relabelled)) >= observed - 1e-12
        })
        .count();
    (observed, hits as f64 / perms.len() as f64)
}

/// Random symmetric dissimilarity matrix with zero diagonal.
pub fn random_full_rdm(n: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v: f64 = rng.random_range(0.0..1.0);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}
