//! MW suite. Distance functions come in three families; objectives are
//! either vertically shifted (MW1-3) or radially scaled by the distance.

use std::f64::consts::{PI, SQRT_2};

use super::pf;
use crate::domain::{ObjectiveVector, Problem, RawEvaluation};

pub(super) fn objectives(index: usize) -> usize {
    match index {
        4 | 8 | 14 => 3,
        _ => 2,
    }
}

pub(super) fn constraint_count(index: usize) -> usize {
    match index {
        3 | 7 | 12 | 13 => 2,
        5 | 10 => 3,
        11 => 4,
        _ => 1,
    }
}

#[derive(Debug, Clone)]
pub struct Mw {
    index: usize,
    n: usize,
    m: usize,
}

impl Mw {
    pub fn new(index: usize, n: usize) -> Self {
        Self {
            index,
            n,
            m: objectives(index),
        }
    }

    pub fn bounds(&self) -> Vec<(f64, f64)> {
        let mut b = vec![(0.0, 1.0); self.n];
        match self.index {
            6 => b[0].1 = 1.1,
            11 => b[0].1 = SQRT_2,
            13 => b[0].1 = 1.5,
            14 => {
                for v in b.iter_mut().take(self.m - 1) {
                    v.1 = 1.5;
                }
            }
            _ => {}
        }
        b
    }

    /// Distance function value; 1 at the optimum (0 for the 3-objective
    /// instances, which multiply by `1 + g`).
    fn distance(&self, x: &[f64]) -> f64 {
        let (d, m) = (self.n as f64, self.m);
        let offset = if self.m == 3 { 0.0 } else { 1.0 };
        let family = match self.index {
            1 | 4 | 5 | 9 | 12 => 1,
            2 | 6 | 8 | 10 | 13 => 2,
            _ => 3,
        };
        let mut g = 0.0;
        for i in m..=self.n {
            let xi = x[i - 1];
            let fi = i as f64;
            g += match family {
                1 => {
                    let t = xi.powf(d - m as f64) - 0.5 - (fi - 1.0) / (2.0 * d);
                    1.0 - (-10.0 * t * t).exp()
                }
                2 => {
                    let t = xi - (fi - 1.0) / d;
                    let z = 1.0 - (-10.0 * t * t).exp();
                    1.5 + (0.1 / d) * z * z - 1.5 * (2.0 * PI * z).cos()
                }
                _ => {
                    let t = xi + (x[i - 2] - 0.5).powi(2) - 1.0;
                    2.0 * t * t
                }
            };
        }
        offset + g
    }

    /// Objectives at a given distance value and position parameters.
    fn objectives_at(&self, pos: &[f64], g: f64) -> Vec<f64> {
        let x = pos[0];
        match self.index {
            1 => vec![x, g - 0.85 * x],
            2 | 3 => vec![x, g - x],
            5 | 7 => vec![g * x, g * (1.0 - x * x).max(0.0).sqrt()],
            6 => vec![g * x, g * (1.21 - x * x).max(0.0).sqrt()],
            9 => vec![g * x, g * (1.0 - x.powf(0.6))],
            10 => {
                let t = x.powf(self.n as f64);
                vec![g * t, g * (1.0 - t * t)]
            }
            11 => vec![g * x, g * (2.0 - x * x).max(0.0).sqrt()],
            12 => vec![
                g * x,
                g * (0.85 - 0.8 * x - 0.08 * (3.2 * PI * x).sin().abs()),
            ],
            13 => vec![g * x, g * (5.0 - x.exp() - 0.5 * (3.0 * PI * x).sin().abs())],
            4 => {
                let s = 1.0 + g;
                vec![s * pos[0] * pos[1], s * pos[0] * (1.0 - pos[1]), s * (1.0 - pos[0])]
            }
            8 => {
                let s = 1.0 + g;
                let (a, b) = (0.5 * PI * pos[0], 0.5 * PI * pos[1]);
                vec![s * a.cos() * b.cos(), s * a.cos() * b.sin(), s * a.sin()]
            }
            14 => {
                let h: f64 = pos[..2]
                    .iter()
                    .map(|&f| 6.0 - f.exp() - 1.5 * (1.1 * PI * f * f).sin())
                    .sum();
                vec![pos[0], pos[1], (1.0 + g) * h / 2.0]
            }
            _ => unreachable!("MW index checked on construction"),
        }
    }

    /// Constraint values (`<= 0` feasible) as functions of the objectives.
    fn constraints(&self, f: &[f64]) -> Vec<f64> {
        match self.index {
            1 => {
                let l = SQRT_2 * f[1] - SQRT_2 * f[0];
                vec![f[0] + f[1] - 1.0 - 0.5 * (2.0 * PI * l).sin().powi(8)]
            }
            2 => {
                let l = SQRT_2 * f[1] - SQRT_2 * f[0];
                vec![f[0] + f[1] - 1.0 - 0.5 * (3.0 * PI * l).sin().powi(8)]
            }
            3 => {
                let l = SQRT_2 * f[1] - SQRT_2 * f[0];
                vec![
                    f[0] + f[1] - 1.05 - 0.45 * (0.75 * PI * l).sin().powi(6),
                    0.85 - f[0] - f[1] + 0.3 * (0.75 * PI * l).sin().powi(2),
                ]
            }
            4 => {
                let l = f[2] - f[0] - f[1];
                vec![f.iter().sum::<f64>() - (1.0 + 0.4 * (2.5 * PI * l).sin().powi(8))]
            }
            5 => {
                let l1 = f[1].atan2(f[0]);
                let l2 = 0.5 * PI - 2.0 * (l1 - 0.25 * PI).abs();
                let r2 = f[0] * f[0] + f[1] * f[1];
                vec![
                    r2 - (1.7 - 0.2 * (2.0 * l1).sin()).powi(2),
                    (1.0 + 0.5 * (6.0 * l2.powi(3)).sin()).powi(2) - r2,
                    (1.0 - 0.45 * (6.0 * l2.powi(3)).sin()).powi(2) - r2,
                ]
            }
            6 => {
                let l = (6.0 * f[1].atan2(f[0]).powi(4)).cos().powi(10);
                vec![(f[0] / (1.0 + 0.15 * l)).powi(2) + (f[1] / (1.0 + 0.75 * l)).powi(2) - 1.0]
            }
            7 => {
                let l = f[1].atan2(f[0]);
                let r2 = f[0] * f[0] + f[1] * f[1];
                vec![
                    r2 - (1.2 + 0.4 * (4.0 * l).sin().powi(16)).powi(2),
                    (1.15 - 0.2 * (4.0 * l).sin().powi(8)).powi(2) - r2,
                ]
            }
            8 => {
                let r2: f64 = f.iter().map(|v| v * v).sum();
                let l = (f[2] / r2.sqrt()).clamp(-1.0, 1.0).asin();
                vec![r2 - (1.25 - 0.5 * (6.0 * l).sin().powi(2)).powi(2)]
            }
            9 => {
                let t1 = (1.0 - 0.64 * f[0] * f[0] - f[1]) * (1.0 - 0.36 * f[0] * f[0] - f[1]);
                let t2 = 1.35f64.powi(2) - (f[0] + 0.35).powi(2) - f[1];
                let t3 = 1.15f64.powi(2) - (f[0] + 0.15).powi(2) - f[1];
                vec![t1.min(t2 * t3)]
            }
            10 => {
                let (a, b) = (f[0] * f[0], f[1]);
                vec![
                    -(2.0 - 4.0 * a - b) * (2.0 - 8.0 * a - b),
                    (2.0 - 2.0 * a - b) * (2.0 - 16.0 * a - b),
                    (1.0 - a - b) * (1.2 - 1.2 * a - b),
                ]
            }
            11 => {
                let (a, b) = (f[0] * f[0], f[1]);
                vec![
                    -(3.0 - a - b) * (3.0 - 2.0 * a - b),
                    (3.0 - 0.625 * a - b) * (3.0 - 7.0 * a - b),
                    -(1.62 - 0.18 * a - b) * (1.125 - 0.125 * a - b),
                    (2.07 - 0.23 * a - b) * (0.63 - 0.07 * a - b),
                ]
            }
            12 => {
                let (a, b) = (f[0], f[1]);
                let s = |v: f64| (2.0 * PI * v).sin();
                vec![
                    (1.0 - 0.8 * a - b + 0.08 * s(b - a / 1.5))
                        * (1.8 - 1.125 * a - b + 0.08 * s(b / 1.8 - a / 1.6)),
                    -(1.0 - 0.625 * a - b + 0.08 * s(b - a / 1.6))
                        * (1.4 - 0.875 * a - b + 0.08 * s(b / 1.4 - a / 1.6)),
                ]
            }
            13 => {
                let (a, b) = (f[0], f[1]);
                let w = 0.5 * (3.0 * PI * a).sin();
                vec![
                    (5.0 - a.exp() - w - b) * (5.0 - (1.0 + 0.4 * a) - w - b),
                    -(5.0 - (1.0 + a + 0.5 * a * a) - w - b) * (5.0 - (1.0 + 0.7 * a) - w - b),
                ]
            }
            14 => {
                let h: f64 = f[..2]
                    .iter()
                    .map(|&v| 6.1 - (1.0 + v + 0.5 * v * v + 1.5 * (1.1 * PI * v * v).sin()))
                    .sum();
                vec![f[2] - h / 2.0]
            }
            _ => unreachable!("MW index checked on construction"),
        }
    }

    fn feasible(&self, f: &[f64]) -> bool {
        self.constraints(f).iter().all(|&c| c <= 0.0)
    }
}

impl Problem for Mw {
    fn evaluate(&self, x: &[f64]) -> RawEvaluation {
        let g = self.distance(x);
        let f = self.objectives_at(&x[..self.m - 1], g);
        let c = self.constraints(&f);
        RawEvaluation { f, g: c, h: Vec::new() }
    }

    fn pareto_front(&self, k: usize) -> Vec<ObjectiveVector> {
        let g0 = if self.m == 3 { 0.0 } else { 1.0 };
        let upper: Vec<f64> = self.bounds().iter().map(|b| b.1).collect();
        let params: Vec<Vec<f64>> = if self.index == 10 {
            // f1 = x^n; sample evenly in f1 rather than in x
            let e = 1.0 / self.n as f64;
            pf::linspace(0.0, 1.0, k).into_iter().map(|t| vec![t.powf(e)]).collect()
        } else if self.m == 2 {
            pf::linspace(0.0, upper[0], k).into_iter().map(|t| vec![t]).collect()
        } else {
            let side = (k as f64).sqrt().ceil() as usize;
            let mut p = Vec::with_capacity(side * side);
            for a in pf::linspace(0.0, upper[0], side) {
                for b in pf::linspace(0.0, upper[1], side) {
                    p.push(vec![a, b]);
                }
            }
            p
        };
        let pts = params
            .into_iter()
            .filter_map(|pos| {
                pf::first_feasible(
                    |s| self.objectives_at(&pos, g0 + s),
                    |f| self.feasible(f),
                    0.0,
                    1e-3,
                    3.0,
                )
            })
            .collect();
        pf::finish(pts)
    }
}
