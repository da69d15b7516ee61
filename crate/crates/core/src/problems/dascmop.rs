//! DASCMOP suite with tunable difficulty.
//!
//! Three constraint types act together: a sine constraint on the first
//! variable that cuts the front into pieces (controlled by `eta`), a band on
//! the distance function that makes convergence harder (`zeta`), and a set
//! of infeasible ellipses or spheres placed over the objective space
//! (`gamma`).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::pf;
use crate::domain::{ObjectiveVector, Problem, RawEvaluation};

pub(super) fn objectives(index: usize) -> usize {
    if index >= 7 {
        3
    } else {
        2
    }
}

pub(super) fn constraint_count(index: usize) -> usize {
    if index >= 7 {
        2 + SPHERE_CENTRES.len()
    } else {
        2 + ELLIPSE_P.len()
    }
}

/// Difficulty triplet; each component lies in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Difficulty {
    pub eta: f64,
    pub zeta: f64,
    pub gamma: f64,
}

impl Difficulty {
    pub fn new(eta: f64, zeta: f64, gamma: f64) -> Self {
        Self { eta, zeta, gamma }
    }

    pub fn default_for(_index: usize) -> Self {
        Self::new(0.25, 0.5, 0.5)
    }
}

const ELLIPSE_P: [f64; 9] = [0.0, 1.0, 0.0, 1.0, 2.0, 0.0, 1.0, 2.0, 3.0];
const ELLIPSE_Q: [f64; 9] = [1.5, 0.5, 2.5, 1.5, 0.5, 3.5, 2.5, 1.5, 0.5];
const ELLIPSE_A2: f64 = 0.3;
const ELLIPSE_B2: f64 = 1.2;

/// Sphere centres for the three-objective instances, relative to the
/// unshifted front.
const SPHERE_CENTRES: [[f64; 3]; 7] = [
    [1.0, 0.0, 0.0],
    [0.0, 1.0, 0.0],
    [0.0, 0.0, 1.0],
    [0.5, 0.5, 0.0],
    [0.5, 0.0, 0.5],
    [0.0, 0.5, 0.5],
    [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
];

const D: f64 = 0.5;

#[derive(Debug, Clone)]
pub struct Dascmop {
    index: usize,
    n: usize,
    difficulty: Difficulty,
}

impl Dascmop {
    pub fn new(index: usize, n: usize, difficulty: Difficulty) -> Self {
        Self { index, n, difficulty }
    }

    fn m(&self) -> usize {
        objectives(self.index)
    }

    fn distance(&self, x: &[f64]) -> f64 {
        let m = self.m();
        match self.index {
            1..=3 => x[1..]
                .iter()
                .map(|&v| (v - (0.5 * PI * x[0]).sin()).powi(2))
                .sum(),
            9 => (m..=self.n)
                .map(|i| {
                    let t = (0.25 * PI * i as f64 / self.n as f64 * (x[0] + x[1])).cos();
                    (x[i - 1] - t).powi(2)
                })
                .sum(),
            _ => x[m - 1..]
                .iter()
                .map(|&v| {
                    let y = v - 0.5;
                    y * y - (20.0 * PI * y).cos() + 1.0
                })
                .sum(),
        }
    }

    fn objectives_at(&self, pos: &[f64], g: f64) -> Vec<f64> {
        let x = pos[0];
        match self.index {
            1 | 4 => vec![x + g, 1.0 - x * x + g],
            2 | 5 => vec![x + g, 1.0 - x.sqrt() + g],
            3 | 6 => vec![x + g, 1.0 - x.sqrt() + 0.5 * (5.0 * PI * x).sin().abs() + g],
            7 => vec![x * pos[1] + g, pos[1] * (1.0 - x) + g, 1.0 - pos[1] + g],
            _ => {
                let (a, b) = (0.5 * PI * x, 0.5 * PI * pos[1]);
                vec![a.cos() * b.cos() + g, a.cos() * b.sin() + g, a.sin() + g]
            }
        }
    }

    fn upper_band(&self) -> f64 {
        let z = self.difficulty.zeta;
        if z <= 0.0 {
            1e30
        } else {
            D - z.ln()
        }
    }

    /// Constraints in `<= 0` form.
    fn constraints(&self, x0: f64, f: &[f64], g: f64) -> Vec<f64> {
        let b = 2.0 * self.difficulty.eta - 1.0;
        let e = self.upper_band();
        let mut c = vec![b - (20.0 * PI * x0).sin(), -((e - g) * (g - D))];
        if self.m() == 2 {
            let r = 0.5 * self.difficulty.gamma;
            let th = -0.25 * PI;
            for (p, q) in ELLIPSE_P.iter().zip(ELLIPSE_Q) {
                let (dx, dy) = (f[0] - p, f[1] - q);
                let u = dx * th.cos() - dy * th.sin();
                let v = dx * th.sin() + dy * th.cos();
                c.push(r - (u * u / ELLIPSE_A2 + v * v / ELLIPSE_B2));
            }
        } else {
            let r = 0.25 * self.difficulty.gamma;
            for ctr in SPHERE_CENTRES {
                let centre: Vec<f64> = if self.index == 7 {
                    ctr.iter().map(|v| v + D).collect()
                } else {
                    let norm = ctr.iter().map(|v| v * v).sum::<f64>().sqrt();
                    ctr.iter().map(|v| v / norm + D).collect()
                };
                let d2: f64 = f.iter().zip(&centre).map(|(a, b)| (a - b).powi(2)).sum();
                c.push(r * r - d2);
            }
        }
        c
    }
}

impl Problem for Dascmop {
    fn evaluate(&self, x: &[f64]) -> RawEvaluation {
        let g = self.distance(x);
        let f = self.objectives_at(x, g);
        let c = self.constraints(x[0], &f, g);
        RawEvaluation { f, g: c, h: Vec::new() }
    }

    fn pareto_front(&self, k: usize) -> Vec<ObjectiveVector> {
        let params: Vec<Vec<f64>> = if self.m() == 2 {
            pf::linspace(0.0, 1.0, k).into_iter().map(|t| vec![t]).collect()
        } else {
            let side = (k as f64).sqrt().ceil() as usize;
            let mut p = Vec::with_capacity(side * side);
            for a in pf::linspace(0.0, 1.0, side) {
                for b in pf::linspace(0.0, 1.0, side) {
                    p.push(vec![a, b]);
                }
            }
            p
        };
        let pts = params
            .into_iter()
            .map(|pos| (pos[0], self.objectives_at(&pos, D)))
            .filter(|(x0, f)| self.constraints(*x0, f, D).iter().all(|&c| c <= 0.0))
            .map(|(_, f)| f)
            .collect();
        pf::finish(pts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dascmop3_front_hv_region() {
        let p = Dascmop::new(3, 30, Difficulty::default_for(3));
        let front = p.pareto_front(2000);
        assert!(front.len() > 50);
        assert!(front.iter().all(|f| f[0] >= 0.5 && f[1] >= 0.5 - 1e-12));
    }

    #[test]
    fn band_constraint_rejects_unconverged() {
        let p = Dascmop::new(1, 30, Difficulty::default_for(1));
        let c = p.constraints(0.025, &[10.0, 10.0], 0.0);
        assert!(c[1] > 0.0, "g below the band is infeasible");
        let c = p.constraints(0.025, &[10.0, 10.0], 0.5);
        assert!(c[1] <= 0.0);
    }
}
