//! LIRCMOP suite: large infeasible regions built from distance-function
//! bands (1-4), rotated ellipses (5-8), ellipses plus a rotated sine wave
//! (9-12) and spherical shells (13-14).

use std::f64::consts::PI;

use super::pf;
use crate::domain::{ObjectiveVector, Problem, RawEvaluation};

pub(super) fn objectives(index: usize) -> usize {
    if index >= 13 {
        3
    } else {
        2
    }
}

pub(super) fn constraint_count(index: usize) -> usize {
    match index {
        3 | 4 | 7 | 8 | 14 => 3,
        _ => 2,
    }
}

const SHIFT: f64 = 0.7057;
const SCALE: f64 = 1.7057;

#[derive(Debug, Clone)]
pub struct Lircmop {
    index: usize,
    n: usize,
}

struct Ellipse {
    p: f64,
    q: f64,
    a: f64,
    b: f64,
}

/// `>= r` outside the rotated ellipse.
fn ellipse_value(f: &[f64], e: &Ellipse, theta: f64) -> f64 {
    let (dx, dy) = (f[0] - e.p, f[1] - e.q);
    let u = dx * theta.cos() - dy * theta.sin();
    let v = dx * theta.sin() + dy * theta.cos();
    u * u / (e.a * e.a) + v * v / (e.b * e.b)
}

impl Lircmop {
    pub fn new(index: usize, n: usize) -> Self {
        Self { index, n }
    }

    /// Odd-indexed (from the third variable) and even-indexed distance sums.
    fn distances(&self, x: &[f64]) -> (f64, f64) {
        let n = self.n as f64;
        let (mut g1, mut g2) = (0.0, 0.0);
        for i in 2..=self.n {
            let arg = 0.5 * i as f64 * PI * x[0] / n;
            if i % 2 == 1 {
                g1 += (x[i - 1] - arg.sin()).powi(2);
            } else {
                g2 += (x[i - 1] - arg.cos()).powi(2);
            }
        }
        (g1, g2)
    }

    fn concave(&self) -> bool {
        matches!(self.index, 1 | 3 | 6 | 8 | 9 | 12)
    }

    fn shape(&self, x: f64) -> f64 {
        if self.concave() {
            1.0 - x * x
        } else {
            1.0 - x.sqrt()
        }
    }

    fn objectives_at(&self, x: &[f64], g1: f64, g2: f64) -> Vec<f64> {
        let h = self.shape(x[0]);
        match self.index {
            1..=4 => vec![x[0] + g1, h + g2],
            5..=8 => vec![x[0] + 10.0 * g1 + SHIFT, h + 10.0 * g2 + SHIFT],
            9..=12 => vec![SCALE * x[0] * (10.0 * g1 + 1.0), SCALE * h * (10.0 * g2 + 1.0)],
            _ => {
                let r = SCALE + g1;
                let (a, b) = (0.5 * PI * x[0], 0.5 * PI * x[1]);
                vec![r * a.cos() * b.cos(), r * a.cos() * b.sin(), r * a.sin()]
            }
        }
    }

    fn ellipses(&self) -> Vec<Ellipse> {
        let e = |p: f64, q: f64, a: f64, b: f64| Ellipse { p, q, a, b };
        match self.index {
            5 => vec![e(1.6, 1.6, 2.0, 4.0), e(2.5, 2.5, 2.5, 8.0)],
            6 => vec![e(1.8, 1.8, 2.0, 8.0), e(2.8, 2.8, 2.5, 8.0)],
            7 | 8 => vec![
                e(1.2, 1.2, 2.0, 6.0),
                e(2.25, 2.25, 2.5, 12.0),
                e(3.5, 3.5, 2.5, 10.0),
            ],
            9 => vec![e(1.4, 1.4, 1.5, 6.0)],
            10 => vec![e(1.1, 1.2, 2.0, 4.0)],
            11 => vec![e(1.2, 1.2, 1.5, 5.0)],
            12 => vec![e(1.6, 1.6, 1.5, 6.0)],
            _ => Vec::new(),
        }
    }

    /// Constraints in `<= 0` form from objectives and the raw distance sums.
    fn constraints(&self, x0: f64, f: &[f64], g1: f64, g2: f64) -> Vec<f64> {
        const A: f64 = 0.51;
        const B: f64 = 0.5;
        match self.index {
            1..=4 => {
                let mut c = vec![-((A - g1) * (g1 - B)), -((A - g2) * (g2 - B))];
                if self.index >= 3 {
                    c.push(0.5 - (20.0 * PI * x0).sin());
                }
                c
            }
            5..=8 => self
                .ellipses()
                .iter()
                .map(|e| 0.1 - ellipse_value(f, e, -0.25 * PI))
                .collect(),
            9..=12 => {
                let e = &self.ellipses()[0];
                let alpha = 0.25 * PI;
                let offset = match self.index {
                    9 => 2.0,
                    10 => 1.0,
                    11 => 2.1,
                    _ => 2.5,
                };
                let wave = f[0] * alpha.sin() + f[1] * alpha.cos()
                    - (4.0 * PI * (f[0] * alpha.cos() - f[1] * alpha.sin())).sin()
                    - offset;
                vec![0.1 - ellipse_value(f, e, -0.25 * PI), -wave]
            }
            _ => {
                let s: f64 = f.iter().map(|v| v * v).sum();
                let mut c = vec![-((s - 9.0) * (s - 4.0)), -((s - 3.61) * (s - 3.24))];
                if self.index == 14 {
                    c.push(-((s - 3.0625) * (s - 2.75)));
                }
                c
            }
        }
    }
}

impl Problem for Lircmop {
    fn evaluate(&self, x: &[f64]) -> RawEvaluation {
        let (mut g1, g2) = self.distances(x);
        if self.index >= 13 {
            g1 = (3..=self.n).map(|i| 10.0 * (x[i - 1] - 0.5).powi(2)).sum();
        }
        let f = self.objectives_at(x, g1, g2);
        let c = self.constraints(x[0], &f, g1, g2);
        RawEvaluation { f, g: c, h: Vec::new() }
    }

    fn pareto_front(&self, k: usize) -> Vec<ObjectiveVector> {
        let ok = |x0: f64, f: &[f64], g1: f64, g2: f64| {
            self.constraints(x0, f, g1, g2).iter().all(|&c| c <= 0.0)
        };
        let pts: Vec<Vec<f64>> = match self.index {
            1..=4 => pf::linspace(0.0, 1.0, k)
                .into_iter()
                .map(|t| (t, self.objectives_at(&[t], 0.5, 0.5)))
                .filter(|(t, f)| ok(*t, f, 0.5, 0.5))
                .map(|(_, f)| f)
                .collect(),
            5..=8 => pf::linspace(0.0, 1.0, k)
                .into_iter()
                .filter_map(|t| {
                    pf::first_feasible(
                        |s| self.objectives_at(&[t], s / 10.0, s / 10.0),
                        |f| ok(t, f, 0.0, 0.0),
                        0.0,
                        1e-3,
                        3.0,
                    )
                })
                .collect(),
            9..=12 => pf::linspace(0.0, 1.0, k)
                .into_iter()
                .filter_map(|t| {
                    pf::first_feasible(
                        |s| self.objectives_at(&[t], s / 10.0, s / 10.0),
                        |f| ok(t, f, 0.0, 0.0),
                        0.0,
                        1e-3,
                        3.0,
                    )
                })
                .collect(),
            _ => {
                let r = if self.index == 14 { 1.75 } else { SCALE };
                pf::sphere_lattice(k, 3)
                    .into_iter()
                    .map(|w| w.into_iter().map(|v| v * r).collect())
                    .collect()
            }
        };
        pf::finish(pts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lircmop5_front_is_shifted_convex_curve() {
        let front = Lircmop::new(5, 30).pareto_front(1000);
        assert!(front.len() >= 900);
        for f in &front {
            let x = f[0] - SHIFT;
            assert!((f[1] - (1.0 - x.sqrt() + SHIFT)).abs() < 1e-6);
        }
    }

    #[test]
    fn lircmop5_optimal_solution_is_feasible() {
        let p = Lircmop::new(5, 30);
        let x0 = 0.25;
        let x: Vec<f64> = (1..=30)
            .map(|i| {
                if i == 1 {
                    x0
                } else {
                    let arg = 0.5 * i as f64 * PI * x0 / 30.0;
                    if i % 2 == 1 {
                        arg.sin()
                    } else {
                        arg.cos()
                    }
                }
            })
            .collect();
        let r = p.evaluate(&x);
        assert!((r.f[0] - (x0 + SHIFT)).abs() < 1e-12);
        assert!(r.g.iter().all(|&c| c <= 1e-9));
    }
}
