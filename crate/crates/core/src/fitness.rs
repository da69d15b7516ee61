//! Fitness assignment: sum of objectives, the SDE shift, and the shifted
//! distance fitness restricted to better-ranked peers.
//!
//! All functions operate on objectives normalized over the population they
//! are given (see [`crate::domain::normalize_rows`]).

use std::cmp::Ordering;

use crate::domain::{normalize_objectives, normalize_rows, Solution};
use crate::error::{contract, Result};

/// Sum of normalized objectives.
pub fn sob(norm: &[f64]) -> f64 {
    norm.iter().sum()
}

/// Position of `y` after shifting it towards `x`: every component where `y`
/// is better than `x` is moved onto `x`.
pub fn shift(x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    if x.len() != y.len() {
        return Err(contract("shift: vectors of unequal length"));
    }
    Ok(x.iter().zip(y).map(|(&a, &b)| if b < a { a } else { b }).collect())
}

/// Euclidean distance between `x` and `shift(x, y)`, without allocating.
#[inline]
pub fn shifted_distance(x: &[f64], y: &[f64]) -> f64 {
    let mut s = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        let d = b - a;
        if d > 0.0 {
            s += d * d;
        }
    }
    s.sqrt()
}

/// Unrestricted SDE: for every member, the minimum shifted distance to all
/// other members.
pub fn isde_fitness<R: AsRef<[f64]>>(norm: &[R]) -> Result<Vec<f64>> {
    if norm.len() < 2 {
        return Err(contract("isde_fitness needs at least two members"));
    }
    Ok((0..norm.len())
        .map(|i| {
            let x = norm[i].as_ref();
            (0..norm.len())
                .filter(|&j| j != i)
                .map(|j| shifted_distance(x, norm[j].as_ref()))
                .fold(f64::INFINITY, f64::min)
        })
        .collect())
}

/// Members sorted by (cv, sob), stable on ties.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedIndex {
    /// `order[0]` is the best ranked member.
    pub order: Vec<usize>,
    pub cv: Vec<f64>,
    pub sob: Vec<f64>,
}

impl RankedIndex {
    fn key_cmp(&self, a: usize, b: usize) -> Ordering {
        self.cv[a]
            .total_cmp(&self.cv[b])
            .then(self.sob[a].total_cmp(&self.sob[b]))
    }

    /// Number of leading entries of `order` that form the strictly-better set
    /// of the member at rank position `pos`. Members sharing the exact key of
    /// that member are excluded.
    pub fn better_prefix(&self, pos: usize) -> usize {
        let x = self.order[pos];
        let mut s = pos;
        while s > 0 && self.key_cmp(self.order[s - 1], x) == Ordering::Equal {
            s -= 1;
        }
        s
    }

    /// Rank position of each member (0 = best).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (p, &i) in self.order.iter().enumerate() {
            pos[i] = p;
        }
        pos
    }
}

/// Rank from precomputed per-member violations and normalized objectives.
pub fn rank_keys<R: AsRef<[f64]>>(cv: &[f64], norm: &[R]) -> RankedIndex {
    let sob: Vec<f64> = norm.iter().map(|r| sob(r.as_ref())).collect();
    let mut r = RankedIndex {
        order: (0..cv.len()).collect(),
        cv: cv.to_vec(),
        sob,
    };
    let mut order = std::mem::take(&mut r.order);
    order.sort_by(|&a, &b| r.key_cmp(a, b));
    r.order = order;
    r
}

/// Lexicographic (cv, sob) ranking of a population.
pub fn rank_cv_sob<R: AsRef<[f64]>>(pop: &[Solution], norm: &[R]) -> RankedIndex {
    let cv: Vec<f64> = pop.iter().map(|s| s.cv).collect();
    rank_keys(&cv, norm)
}

/// Fitness from explicit keys. The best-ranked member and any member with no
/// strictly better peer get 1.0; everyone else gets the minimum shifted
/// distance to strictly better ranked peers, clamped to [0, 1].
pub fn fitness_from_keys<R: AsRef<[f64]>>(cv: &[f64], norm: &[R]) -> Result<Vec<f64>> {
    if cv.len() != norm.len() {
        return Err(contract("cv and objective rows differ in length"));
    }
    if cv.is_empty() {
        return Err(contract("fitness of an empty population"));
    }
    let ranked = rank_keys(cv, norm);
    let mut fit = vec![0.0; cv.len()];
    for pos in 0..ranked.order.len() {
        let i = ranked.order[pos];
        let prefix = ranked.better_prefix(pos);
        if prefix == 0 {
            fit[i] = 1.0;
            continue;
        }
        let x = norm[i].as_ref();
        let mut best = f64::INFINITY;
        for &j in &ranked.order[..prefix] {
            let d = shifted_distance(x, norm[j].as_ref());
            if d < best {
                best = d;
                if best == 0.0 {
                    break;
                }
            }
        }
        fit[i] = best.clamp(0.0, 1.0);
    }
    Ok(fit)
}

fn check_evaluated(pop: &[Solution]) -> Result<()> {
    if pop.is_empty() {
        return Err(contract("fitness of an empty population"));
    }
    let m = pop[0].f.len();
    if m == 0 || pop.iter().any(|s| s.f.len() != m || !s.cv.is_finite() || s.cv < 0.0) {
        return Err(contract("population contains unevaluated members"));
    }
    Ok(())
}

/// Constrained fitness: peers are those ranked strictly ahead under (cv, sob).
pub fn icsde_fitness(pop: &[Solution]) -> Result<Vec<f64>> {
    check_evaluated(pop)?;
    let norm = normalize_objectives(pop)?;
    let cv: Vec<f64> = pop.iter().map(|s| s.cv).collect();
    fitness_from_keys(&cv, &norm)
}

/// Unconstrained variant: same computation with every violation treated as zero.
pub fn isde_plus_fitness(pop: &[Solution]) -> Result<Vec<f64>> {
    check_evaluated(pop)?;
    let norm = normalize_objectives(pop)?;
    isde_plus_from_norm(&norm)
}

pub fn isde_plus_from_norm<R: AsRef<[f64]>>(norm: &[R]) -> Result<Vec<f64>> {
    fitness_from_keys(&vec![0.0; norm.len()], norm)
}

/// Convenience: constrained fitness straight from raw objective rows and violations.
pub fn icsde_from_raw<R: AsRef<[f64]>>(objs: &[R], cv: &[f64]) -> Result<Vec<f64>> {
    let norm = normalize_rows(objs)?;
    fitness_from_keys(cv, &norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sol(f: &[f64], cv: f64) -> Solution {
        Solution {
            x: vec![],
            f: f.to_vec(),
            g: vec![],
            cv,
            fitness: None,
        }
    }

    #[test]
    fn sob_and_shift_examples() {
        assert_eq!(sob(&[0.0, 1.0]), 1.0);
        assert_eq!(sob(&[0.0, 0.0, 0.0]), 0.0);
        assert_eq!(sob(&[0.5, 0.5]), 1.0);
        assert_eq!(shift(&[1.0, 2.0], &[2.0, 1.0]).unwrap(), vec![2.0, 2.0]);
        assert_eq!(shift(&[1.0, 1.0], &[0.0, 0.0]).unwrap(), vec![1.0, 1.0]);
        assert_eq!(shift(&[1.0, 2.0], &[3.0, 4.0]).unwrap(), vec![3.0, 4.0]);
        assert!(shift(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn isde_examples() {
        assert_eq!(isde_fitness(&[[0.0, 1.0], [1.0, 0.0]]).unwrap(), vec![1.0, 1.0]);
        let f = isde_fitness(&[[0.0, 0.0], [1.0, 1.0]]).unwrap();
        assert!((f[0] - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(f[1], 0.0);
        assert_eq!(isde_fitness(&[[0.5, 0.5], [0.5, 0.5]]).unwrap(), vec![0.0, 0.0]);
        assert!(isde_fitness(&[[0.5, 0.5]]).is_err());
    }

    #[test]
    fn ranking_examples() {
        let r = rank_keys(&[0.0, 1.0, 0.0], &[[2.0], [0.0], [1.0]]);
        assert_eq!(r.order, vec![2, 0, 1]);
        let r = rank_keys(&[0.0; 3], &[[1.0], [1.0], [2.0]]);
        assert_eq!(r.order, vec![0, 1, 2]);
        let r = rank_keys(&[3.0, 2.0, 2.0, 0.0], &[[0.0], [5.0], [1.0], [9.0]]);
        assert_eq!(r.order[0], 3);
    }

    #[test]
    fn hand_fixtures() {
        let pop = [sol(&[0.0, 0.0], 0.0), sol(&[2.0, 2.0], 0.0), sol(&[1.0, 1.0], 1.0)];
        assert_eq!(icsde_fitness(&pop).unwrap(), vec![1.0, 0.0, 0.0]);
        let pop = [sol(&[0.0, 3.0], 0.0), sol(&[3.0, 0.0], 0.0), sol(&[2.0, 2.0], 0.0)];
        let f = icsde_fitness(&pop).unwrap();
        assert_eq!(&f[..2], &[1.0, 1.0]);
        assert!((f[2] - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn exact_ties_do_not_zero_each_other() {
        let pop = [sol(&[0.0, 1.0], 0.0), sol(&[1.0, 0.0], 0.0), sol(&[1.0, 0.0], 0.0)];
        assert_eq!(icsde_fitness(&pop).unwrap(), vec![1.0, 1.0, 1.0]);
        let pop = [sol(&[0.5, 0.5], 1.0), sol(&[0.5, 0.5], 1.0)];
        assert_eq!(icsde_fitness(&pop).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn unevaluated_rejected() {
        assert!(icsde_fitness(&[sol(&[], 0.0)]).is_err());
        assert!(icsde_fitness(&[]).is_err());
    }
}
