//! Independent reference implementations used by the integration tests.
//! Written from the definitions, sharing no code with the library.

#![allow(dead_code)]

use rand::Rng;

pub fn normalize(objs: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = objs[0].len();
    let lo: Vec<f64> = (0..m)
        .map(|j| objs.iter().map(|r| r[j]).fold(f64::INFINITY, f64::min))
        .collect();
    let hi: Vec<f64> = (0..m)
        .map(|j| objs.iter().map(|r| r[j]).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    objs.iter()
        .map(|r| {
            (0..m)
                .map(|j| {
                    if hi[j] > lo[j] {
                        (r[j] - lo[j]) / (hi[j] - lo[j])
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect()
}

/// Constrained shifted-distance fitness by direct double loop: a peer counts
/// when it has lower violation, or equal violation and lower objective sum.
pub fn brute_fitness(objs: &[Vec<f64>], cv: &[f64]) -> Vec<f64> {
    let norm = normalize(objs);
    let sob: Vec<f64> = norm.iter().map(|r| r.iter().sum()).collect();
    let n = objs.len();
    let mut out = vec![0.0; n];
    for i in 0..n {
        let mut best: Option<f64> = None;
        for j in 0..n {
            let better = cv[j] < cv[i] || (cv[j] == cv[i] && sob[j] < sob[i]);
            if !better {
                continue;
            }
            let d = norm[i]
                .iter()
                .zip(&norm[j])
                .map(|(x, y)| {
                    let shifted = if y < x { *x } else { *y };
                    (shifted - x).powi(2)
                })
                .sum::<f64>()
                .sqrt();
            best = Some(best.map_or(d, |b: f64| b.min(d)));
        }
        out[i] = best.map_or(1.0, |d| d.min(1.0));
    }
    out
}

/// Random population with objectives on a coarse grid (so ties occur) or
/// continuous, and a mix of feasible and infeasible members.
pub fn random_population<R: Rng>(rng: &mut R, n: usize, m: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let coarse = rng.random_bool(0.3);
    let objs = (0..n)
        .map(|_| {
            (0..m)
                .map(|_| {
                    if coarse {
                        rng.random_range(0..5) as f64
                    } else {
                        rng.random_range(-5.0..5.0)
                    }
                })
                .collect()
        })
        .collect();
    let p_feasible = rng.random_range(0.0..=1.0);
    let cv = (0..n)
        .map(|_| {
            if rng.random_bool(p_feasible) {
                0.0
            } else if coarse {
                rng.random_range(1..4) as f64
            } else {
                rng.random_range(0.0..3.0)
            }
        })
        .collect();
    (objs, cv)
}

/// Two-sided exact signed-rank p-value by enumerating every sign pattern.
/// Assumes distinct, non-zero absolute differences.
pub fn enumerated_signed_rank_p(a: &[f64], b: &[f64]) -> (f64, f64) {
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let n = d.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| d[i].abs().total_cmp(&d[j].abs()));
    let mut rank = vec![0.0; n];
    for (r, &i) in idx.iter().enumerate() {
        rank[i] = (r + 1) as f64;
    }
    let w_obs: f64 = (0..n).filter(|&i| d[i] > 0.0).map(|i| rank[i]).sum();
    let centre = (n * (n + 1)) as f64 / 4.0;
    let dev = (w_obs - centre).abs();
    let total = 1u64 << n;
    let mut extreme = 0u64;
    for mask in 0..total {
        let w: f64 = (0..n).filter(|&k| mask >> k & 1 == 1).map(|k| (k + 1) as f64).sum();
        if (w - centre).abs() >= dev - 1e-9 {
            extreme += 1;
        }
    }
    (w_obs, extreme as f64 / total as f64)
}

pub fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let k = s.len();
    if k % 2 == 1 {
        s[k / 2]
    } else {
        0.5 * (s[k / 2 - 1] + s[k / 2])
    }
}
