//! Constrained DTLZ variants (three objectives).

use std::f64::consts::PI;

use super::pf;
use crate::domain::{ObjectiveVector, Problem, RawEvaluation};

const M: usize = 3;

pub(super) fn dimension(index: usize) -> usize {
    match index {
        1 | 4 => 7,
        _ => 12,
    }
}

pub(super) fn constraint_count(index: usize) -> usize {
    if index >= 4 {
        M
    } else {
        1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Base {
    Dtlz1,
    Dtlz2,
    Dtlz3,
    Dtlz4,
}

#[derive(Debug, Clone)]
pub struct CDtlz {
    index: usize,
    base: Base,
}

impl CDtlz {
    /// `index` follows `CDTLZ_IDS`: 1 = C1-DTLZ1, 2 = C1-DTLZ3, 3 = C2-DTLZ2,
    /// 4 = C3-DTLZ1, 5 = C3-DTLZ4.
    pub fn new(index: usize) -> Self {
        let base = match index {
            1 | 4 => Base::Dtlz1,
            2 => Base::Dtlz3,
            3 => Base::Dtlz2,
            _ => Base::Dtlz4,
        };
        Self { index, base }
    }

    fn objectives(&self, x: &[f64]) -> Vec<f64> {
        let tail = &x[M - 1..];
        let k = tail.len() as f64;
        let rastrigin = || {
            100.0
                * (k + tail
                    .iter()
                    .map(|&v| (v - 0.5).powi(2) - (20.0 * PI * (v - 0.5)).cos())
                    .sum::<f64>())
        };
        match self.base {
            Base::Dtlz1 => {
                let g = rastrigin();
                let s = 0.5 * (1.0 + g);
                vec![s * x[0] * x[1], s * x[0] * (1.0 - x[1]), s * (1.0 - x[0])]
            }
            _ => {
                let g = if self.base == Base::Dtlz3 {
                    rastrigin()
                } else {
                    tail.iter().map(|&v| (v - 0.5).powi(2)).sum()
                };
                let (a, b) = if self.base == Base::Dtlz4 {
                    (x[0].powi(100), x[1].powi(100))
                } else {
                    (x[0], x[1])
                };
                let r = 1.0 + g;
                let (a, b) = (0.5 * PI * a, 0.5 * PI * b);
                vec![r * a.cos() * b.cos(), r * a.cos() * b.sin(), r * a.sin()]
            }
        }
    }

    fn constraints(&self, f: &[f64]) -> Vec<f64> {
        match self.index {
            1 => vec![f[M - 1] / 0.6 + f[..M - 1].iter().map(|v| v / 0.5).sum::<f64>() - 1.0],
            2 => {
                let s: f64 = f.iter().map(|v| v * v).sum();
                vec![-((s - 16.0) * (s - 81.0))]
            }
            3 => {
                let r2 = 0.4f64 * 0.4;
                let s: f64 = f.iter().map(|v| v * v).sum();
                let corner = (0..M)
                    .map(|i| (f[i] - 1.0).powi(2) + s - f[i] * f[i] - r2)
                    .fold(f64::INFINITY, f64::min);
                let centre = f.iter().map(|v| (v - 1.0 / (M as f64).sqrt()).powi(2)).sum::<f64>() - r2;
                vec![corner.min(centre)]
            }
            4 => {
                let s: f64 = f.iter().sum();
                (0..M).map(|j| 1.0 - (s - f[j] + f[j] / 0.5)).collect()
            }
            _ => {
                let s: f64 = f.iter().map(|v| v * v).sum();
                (0..M).map(|j| 1.0 - (s - f[j] * f[j] + f[j] * f[j] / 4.0)).collect()
            }
        }
    }
}

impl Problem for CDtlz {
    fn evaluate(&self, x: &[f64]) -> RawEvaluation {
        let f = self.objectives(x);
        let g = self.constraints(&f);
        RawEvaluation { f, g, h: Vec::new() }
    }

    fn pareto_front(&self, k: usize) -> Vec<ObjectiveVector> {
        let w = pf::simplex_lattice(k, M);
        let pts: Vec<Vec<f64>> = match self.index {
            1 => w.into_iter().map(|p| p.into_iter().map(|v| v / 2.0).collect()).collect(),
            2 => pf::sphere_lattice(k, M),
            3 => pf::sphere_lattice(k, M)
                .into_iter()
                .filter(|f| self.constraints(f)[0] <= 0.0)
                .collect(),
            4 => w
                .into_iter()
                .map(|p| {
                    let lo = p.iter().cloned().fold(f64::INFINITY, f64::min);
                    p.iter().map(|v| v / (1.0 + lo)).collect()
                })
                .collect(),
            _ => w
                .into_iter()
                .map(|p| {
                    let s: f64 = p.iter().map(|v| v * v).sum();
                    let hi = p.iter().cloned().fold(0.0, f64::max);
                    let t = 1.0 / (s - 0.75 * hi * hi).sqrt();
                    p.iter().map(|v| v * t).collect()
                })
                .collect(),
        };
        pf::finish(pts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fronts_are_feasible() {
        for idx in 1..=5 {
            let p = CDtlz::new(idx);
            let front = p.pareto_front(1000);
            assert!(!front.is_empty());
            for f in &front {
                let g = p.constraints(f);
                assert!(g.iter().all(|&c| c <= 1e-9), "index {idx}: {f:?} -> {g:?}");
            }
        }
    }

    #[test]
    fn dtlz2_optimum_on_sphere() {
        let p = CDtlz::new(3);
        let mut x = vec![0.5; 12];
        x[0] = 0.3;
        x[1] = 0.6;
        let f = p.evaluate(&x).f;
        assert!((f.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
