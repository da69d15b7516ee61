//! Helpers for sampling constrained Pareto fronts.

use crate::pareto::nondominated_unique;

/// `k` evenly spaced values covering `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    match k {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..k).map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64).collect(),
    }
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

/// Das-Dennis lattice on the unit simplex with the largest number of
/// divisions whose point count does not exceed `k` (at least one division).
pub fn simplex_lattice(k: usize, m: usize) -> Vec<Vec<f64>> {
    assert!(m >= 1);
    if m == 1 {
        return vec![vec![1.0]];
    }
    let mut h = 1;
    while binomial(h + 1 + m - 1, m - 1) <= k {
        h += 1;
    }
    let mut out = Vec::with_capacity(binomial(h + m - 1, m - 1));
    let mut cur = vec![0usize; m];
    fn rec(pos: usize, left: usize, m: usize, h: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
        if pos == m - 1 {
            cur[pos] = left;
            out.push(cur.iter().map(|&c| c as f64 / h as f64).collect());
            return;
        }
        for c in 0..=left {
            cur[pos] = c;
            rec(pos + 1, left - c, m, h, cur, out);
        }
    }
    rec(0, h, m, h, &mut cur, &mut out);
    out
}

/// Lattice points projected radially onto the unit sphere (positive orthant).
pub fn sphere_lattice(k: usize, m: usize) -> Vec<Vec<f64>> {
    simplex_lattice(k, m)
        .into_iter()
        .map(|w| {
            let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
            w.into_iter().map(|v| v / norm).collect()
        })
        .collect()
}

/// Walks `point(s)` for increasing `s` from `s0` until `feasible` holds, then
/// refines the boundary by bisection. Returns `None` if nothing feasible is
/// found before `s_max`.
pub fn first_feasible(
    point: impl Fn(f64) -> Vec<f64>,
    feasible: impl Fn(&[f64]) -> bool,
    s0: f64,
    step: f64,
    s_max: f64,
) -> Option<Vec<f64>> {
    let p = point(s0);
    if feasible(&p) {
        return Some(p);
    }
    let mut lo = s0;
    let mut s = s0 + step;
    while s <= s_max {
        if feasible(&point(s)) {
            let mut hi = s;
            for _ in 0..40 {
                let mid = 0.5 * (lo + hi);
                if feasible(&point(mid)) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Some(point(hi));
        }
        lo = s;
        s += step;
    }
    None
}

/// Non-dominated, deduplicated, lexicographically sorted front.
pub fn finish(points: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    nondominated_unique(points.into_iter().filter(|p| p.iter().all(|v| v.is_finite())).collect())
}
