//! Baseline: NSGA-II style sorting under the constrained-domination principle.

use rand::Rng;

use crate::domain::Solution;
use crate::pareto::{crowding_distance, dominates, front_numbers};

/// Feasible beats infeasible, lower violation beats higher, and two feasible
/// solutions compare by Pareto dominance.
pub fn cdp_dominates(a: &Solution, b: &Solution) -> bool {
    match (a.cv == 0.0, b.cv == 0.0) {
        (true, false) => true,
        (false, true) => false,
        (false, false) => a.cv < b.cv,
        (true, true) => dominates(&a.f, &b.f),
    }
}

/// Front number and crowding distance for every member.
pub fn rank_and_crowding(pop: &[Solution]) -> (Vec<usize>, Vec<f64>) {
    let fronts = front_numbers(pop.len(), |a, b| cdp_dominates(&pop[a], &pop[b]));
    let objs: Vec<&[f64]> = pop.iter().map(|s| s.f.as_slice()).collect();
    let mut crowd = vec![0.0; pop.len()];
    let max_front = fronts.iter().copied().max().unwrap_or(0);
    for k in 0..=max_front {
        let members: Vec<usize> = (0..pop.len()).filter(|&i| fronts[i] == k).collect();
        for (i, d) in members.iter().zip(crowding_distance(&objs, &members)) {
            crowd[*i] = d;
        }
    }
    (fronts, crowd)
}

fn better(fronts: &[usize], crowd: &[f64], a: usize, b: usize) -> bool {
    fronts[a] < fronts[b] || (fronts[a] == fronts[b] && crowd[a] > crowd[b])
}

/// Binary tournaments on (front, -crowding).
pub fn mating_selection<R: Rng + ?Sized>(
    fronts: &[usize],
    crowd: &[f64],
    n: usize,
    rng: &mut R,
) -> Vec<usize> {
    let size = fronts.len();
    (0..n)
        .map(|_| {
            let i = rng.random_range(0..size);
            let j = rng.random_range(0..size);
            if better(fronts, crowd, i, j) {
                i
            } else {
                j
            }
        })
        .collect()
}

/// Fill by whole fronts, then by descending crowding distance on the last
/// front. Returns ascending indices.
pub fn environmental_selection(pop: &[Solution], n: usize) -> Vec<usize> {
    let (fronts, crowd) = rank_and_crowding(pop);
    let mut order: Vec<usize> = (0..pop.len()).collect();
    order.sort_by(|&a, &b| {
        fronts[a]
            .cmp(&fronts[b])
            .then(crowd[b].total_cmp(&crowd[a]))
            .then(a.cmp(&b))
    });
    let mut keep: Vec<usize> = order.into_iter().take(n).collect();
    keep.sort_unstable();
    keep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(f: &[f64], cv: f64) -> Solution {
        Solution {
            x: vec![],
            f: f.to_vec(),
            g: vec![],
            cv,
            fitness: None,
        }
    }

    #[test]
    fn constrained_domination() {
        assert!(cdp_dominates(&s(&[9.0, 9.0], 0.0), &s(&[0.0, 0.0], 0.1)));
        assert!(cdp_dominates(&s(&[9.0, 9.0], 0.1), &s(&[0.0, 0.0], 0.2)));
        assert!(!cdp_dominates(&s(&[0.0, 1.0], 0.0), &s(&[1.0, 0.0], 0.0)));
    }

    #[test]
    fn survival_prefers_feasible_and_spread() {
        let pop = [
            s(&[0.0, 1.0], 0.0),
            s(&[0.5, 0.5], 0.0),
            s(&[1.0, 0.0], 0.0),
            s(&[0.0, 0.0], 1.0),
        ];
        assert_eq!(environmental_selection(&pop, 2), vec![0, 2]);
        assert_eq!(environmental_selection(&pop, 3), vec![0, 1, 2]);
    }
}
