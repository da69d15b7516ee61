//! Variation operators: SBX, polynomial mutation and DE/rand/1 with binomial
//! crossover. Every output is clamped into the box.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    Ga,
    De,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OperatorConfig {
    pub kind: OperatorKind,
    pub pc: f64,
    pub eta_c: f64,
    /// Per-variable mutation probability; `None` means `1/n`.
    pub pm: Option<f64>,
    pub eta_m: f64,
    #[serde(rename = "f")]
    pub scale: f64,
    pub cr: f64,
}

impl Default for OperatorConfig {
    fn default() -> Self {
        Self::ga()
    }
}

impl OperatorConfig {
    pub fn ga() -> Self {
        Self {
            kind: OperatorKind::Ga,
            pc: 1.0,
            eta_c: 20.0,
            pm: None,
            eta_m: 20.0,
            scale: 0.5,
            cr: 1.0,
        }
    }

    pub fn de() -> Self {
        Self {
            kind: OperatorKind::De,
            ..Self::ga()
        }
    }

    pub fn mutation_rate(&self, n: usize) -> f64 {
        self.pm.unwrap_or(1.0 / n.max(1) as f64)
    }

    pub fn validate(&self) -> Result<()> {
        let prob = |v: f64| (0.0..=1.0).contains(&v);
        if !prob(self.pc) || !prob(self.cr) || !self.pm.map_or(true, prob) {
            return Err(Error::Config("operator probabilities must lie in [0, 1]".into()));
        }
        if !(self.eta_c > 0.0 && self.eta_m > 0.0) {
            return Err(Error::Config("distribution indices must be positive".into()));
        }
        if !(self.scale > 0.0 && self.scale <= 2.0) {
            return Err(Error::Config("DE scale factor must lie in (0, 2]".into()));
        }
        Ok(())
    }
}

fn clamp_into(x: &mut [f64], lower: &[f64], upper: &[f64]) {
    for ((v, &l), &u) in x.iter_mut().zip(lower).zip(upper) {
        *v = v.clamp(l, u);
    }
}

/// Simulated binary crossover producing two children.
pub fn sbx<R: Rng + ?Sized>(
    p1: &[f64],
    p2: &[f64],
    lower: &[f64],
    upper: &[f64],
    cfg: &OperatorConfig,
    rng: &mut R,
) -> (Vec<f64>, Vec<f64>) {
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    if !rng.random_bool(cfg.pc) {
        return (c1, c2);
    }
    let e = 1.0 / (cfg.eta_c + 1.0);
    for j in 0..p1.len() {
        let mu: f64 = rng.random();
        let mut beta = if mu <= 0.5 {
            (2.0 * mu).powf(e)
        } else {
            (2.0 - 2.0 * mu).powf(-e)
        };
        if rng.random_bool(0.5) {
            beta = -beta;
        }
        if rng.random_bool(0.5) {
            beta = 1.0;
        }
        let mid = 0.5 * (p1[j] + p2[j]);
        let half = 0.5 * (p1[j] - p2[j]);
        c1[j] = mid + beta * half;
        c2[j] = mid - beta * half;
    }
    clamp_into(&mut c1, lower, upper);
    clamp_into(&mut c2, lower, upper);
    (c1, c2)
}

/// Bounds-aware polynomial mutation, applied in place.
pub fn polynomial_mutation<R: Rng + ?Sized>(
    x: &mut [f64],
    lower: &[f64],
    upper: &[f64],
    cfg: &OperatorConfig,
    rng: &mut R,
) {
    let pm = cfg.mutation_rate(x.len());
    let eta = cfg.eta_m;
    let e = 1.0 / (eta + 1.0);
    clamp_into(x, lower, upper);
    for j in 0..x.len() {
        if pm <= 0.0 || !rng.random_bool(pm) {
            continue;
        }
        let (l, u) = (lower[j], upper[j]);
        let span = u - l;
        if span <= 0.0 {
            continue;
        }
        let mu: f64 = rng.random();
        let v = x[j];
        let delta = if mu <= 0.5 {
            let d1 = (v - l) / span;
            (2.0 * mu + (1.0 - 2.0 * mu) * (1.0 - d1).powf(eta + 1.0)).powf(e) - 1.0
        } else {
            let d2 = (u - v) / span;
            1.0 - (2.0 * (1.0 - mu) + 2.0 * (mu - 0.5) * (1.0 - d2).powf(eta + 1.0)).powf(e)
        };
        x[j] = (v + delta * span).clamp(l, u);
    }
}

/// DE/rand/1 trial vector with binomial crossover (one index always taken
/// from the mutant).
pub fn de_rand_1<R: Rng + ?Sized>(
    base: &[f64],
    r1: &[f64],
    r2: &[f64],
    lower: &[f64],
    upper: &[f64],
    cfg: &OperatorConfig,
    rng: &mut R,
) -> Vec<f64> {
    let n = base.len();
    let forced = rng.random_range(0..n.max(1));
    let mut trial = base.to_vec();
    for j in 0..n {
        if j == forced || rng.random_bool(cfg.cr) {
            trial[j] = base[j] + cfg.scale * (r1[j] - r2[j]);
        }
    }
    clamp_into(&mut trial, lower, upper);
    trial
}

/// Exactly `pool.len()` offspring decision vectors from a mating pool.
///
/// GA: members are paired (0,1), (2,3), ... and both SBX children kept; an
/// odd tail pairs with the first member and keeps one child. DE: one trial
/// per slot with the slot as base and two other random pool members as the
/// difference pair. Every child is then polynomially mutated.
pub fn variation<R: Rng + ?Sized>(
    pool: &[&[f64]],
    lower: &[f64],
    upper: &[f64],
    cfg: &OperatorConfig,
    rng: &mut R,
) -> Vec<Vec<f64>> {
    let n = pool.len();
    let mut out = Vec::with_capacity(n);
    match cfg.kind {
        OperatorKind::Ga => {
            let mut i = 0;
            while out.len() < n {
                let a = pool[i % n];
                let b = pool[(i + 1) % n];
                let (c1, c2) = sbx(a, b, lower, upper, cfg, rng);
                out.push(c1);
                if out.len() < n {
                    out.push(c2);
                }
                i += 2;
            }
        }
        OperatorKind::De => {
            for i in 0..n {
                let (r1, r2) = distinct_pair(n, i, rng);
                out.push(de_rand_1(pool[i], pool[r1], pool[r2], lower, upper, cfg, rng));
            }
        }
    }
    for child in &mut out {
        polynomial_mutation(child, lower, upper, cfg, rng);
    }
    out
}

/// Two indices in `0..n`, distinct from each other and from `i` when the
/// pool is large enough.
fn distinct_pair<R: Rng + ?Sized>(n: usize, i: usize, rng: &mut R) -> (usize, usize) {
    if n < 3 {
        return (rng.random_range(0..n), rng.random_range(0..n));
    }
    let mut r1 = rng.random_range(0..n);
    while r1 == i {
        r1 = rng.random_range(0..n);
    }
    let mut r2 = rng.random_range(0..n);
    while r2 == i || r2 == r1 {
        r2 = rng.random_range(0..n);
    }
    (r1, r2)
}
