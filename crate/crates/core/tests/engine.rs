use std::sync::Arc;

use icsde_core::domain::{normalize_rows, ProblemSpec, DEFAULT_EPSILON_EQ};
use icsde_core::engine::{environmental_selection, run, run_with_hv, AlgorithmConfig, Variant};
use icsde_core::fitness::{icsde_from_raw, rank_keys};
use icsde_core::indicators::HvConfig;
use icsde_core::pareto::dominates;
use icsde_core::problems::{self, all_ids};
use icsde_core::{OperatorConfig, Problem, RandomStream, RawEvaluation};
use rand::Rng;

/// Unconstrained two-objective test function with a convex front.
struct Zdt1;

impl Problem for Zdt1 {
    fn evaluate(&self, x: &[f64]) -> RawEvaluation {
        let g = 1.0 + 9.0 * x[1..].iter().sum::<f64>() / (x.len() - 1) as f64;
        RawEvaluation {
            f: vec![x[0], g * (1.0 - (x[0] / g).sqrt())],
            g: Vec::new(),
            h: Vec::new(),
        }
    }

    fn pareto_front(&self, k: usize) -> Vec<Vec<f64>> {
        (0..k)
            .map(|i| {
                let t = i as f64 / (k - 1) as f64;
                vec![t, 1.0 - t.sqrt()]
            })
            .collect()
    }
}

fn zdt1() -> ProblemSpec {
    ProblemSpec {
        name: "zdt1".into(),
        n: 10,
        m: 2,
        q_ineq: 0,
        q_eq: 0,
        bounds: vec![(0.0, 1.0); 10],
        epsilon_eq: DEFAULT_EPSILON_EQ,
        problem: Arc::new(Zdt1),
    }
}

fn cfg(variant: Variant, n: usize, fes: usize, op: OperatorConfig) -> AlgorithmConfig {
    AlgorithmConfig {
        population_size: n,
        max_fes: fes,
        operator: op,
        variant,
    }
}

#[test]
fn fe_accounting_and_population_size() {
    let spec = problems::problem("lircmop2").unwrap();
    for (n, fes) in [(10, 10), (10, 11), (10, 99), (12, 120), (7, 1000)] {
        for variant in [Variant::Icsde, Variant::IsdePlus, Variant::CdpBaseline] {
            let r = run(&spec, &cfg(variant, n, fes, OperatorConfig::de()), 5).unwrap();
            assert!(r.error.is_none(), "{:?}", r.error);
            assert_eq!(r.fes_used, fes);
            assert_eq!(r.final_population.len(), n);
            let generations = (fes - n).div_ceil(n);
            assert_eq!(r.hv_trajectory.len(), generations + 1);
            assert_eq!(r.hv_trajectory.last().unwrap().fes, fes);
        }
    }
}

#[test]
fn runs_are_deterministic() {
    let spec = problems::problem("c2_dtlz2").unwrap();
    let c = cfg(Variant::Icsde, 16, 500, OperatorConfig::ga());
    let a = run(&spec, &c, 42).unwrap();
    let b = run(&spec, &c, 42).unwrap();
    let other = run(&spec, &c, 43).unwrap();
    assert_eq!(a.final_population, b.final_population);
    assert_eq!(a.hv_trajectory, b.hv_trajectory);
    assert_ne!(a.final_population, other.final_population);
}

#[test]
fn unconstrained_variants_coincide() {
    let spec = zdt1();
    let hv = HvConfig::new(spec.pareto_front(200)).unwrap();
    for op in [OperatorConfig::ga(), OperatorConfig::de()] {
        let a = run_with_hv(&spec, &cfg(Variant::Icsde, 20, 2000, op), 3, &hv).unwrap();
        let b = run_with_hv(&spec, &cfg(Variant::IsdePlus, 20, 2000, op), 3, &hv).unwrap();
        assert_eq!(a.final_population, b.final_population);
        assert_eq!(a.hv_trajectory, b.hv_trajectory);
        assert!(a.final_hv() > 0.3, "zdt1 should make progress: {}", a.final_hv());
    }
}

#[test]
fn hv_trajectory_is_bounded() {
    let spec = problems::problem("mw3").unwrap();
    let r = run(&spec, &cfg(Variant::Icsde, 20, 2000, OperatorConfig::ga()), 1).unwrap();
    assert!(r.hv_trajectory.iter().all(|s| (0.0..=1.0).contains(&s.hv)));
    assert!(r.hv_trajectory.windows(2).all(|w| w[0].fes < w[1].fes));
}

#[test]
fn best_ranked_member_survives_truncation() {
    let mut rng = RandomStream::new(8);
    let mut checked = 0;
    for _ in 0..500 {
        let n = rng.random_range(2..20);
        let objs: Vec<Vec<f64>> = (0..2 * n)
            .map(|_| (0..2).map(|_| rng.random_range(0.0..1.0)).collect())
            .collect();
        let cv: Vec<f64> = (0..2 * n)
            .map(|_| if rng.random_bool(0.5) { 0.0 } else { rng.random_range(0.0..1.0) })
            .collect();
        let fit = icsde_from_raw(&objs, &cv).unwrap();
        // the random tie-break at the cut can only drop it when more than n
        // members share the maximal fitness
        if fit.iter().filter(|&&f| f == 1.0).count() > n {
            continue;
        }
        let best = rank_keys(&cv, &normalize_rows(&objs).unwrap()).order[0];
        let keep = environmental_selection(&fit, n, &mut rng).unwrap();
        assert_eq!(keep.len(), n);
        assert!(keep.contains(&best));
        checked += 1;
    }
    assert!(checked > 400);
}

#[test]
fn evaluators_are_finite_and_deterministic() {
    let mut rng = RandomStream::new(1);
    for id in all_ids() {
        let spec = problems::problem(&id).unwrap();
        for _ in 0..100_000 {
            let x: Vec<f64> = spec.bounds.iter().map(|&(l, u)| rng.random_range(l..=u)).collect();
            let a = spec.problem.evaluate(&x);
            assert_eq!(a.f.len(), spec.m, "{id}");
            assert_eq!(a.g.len(), spec.q_ineq, "{id}");
            assert!(a.f.iter().chain(&a.g).all(|v| v.is_finite()), "{id} at {x:?}");
        }
        let x = spec.lower();
        assert_eq!(spec.problem.evaluate(&x), spec.problem.evaluate(&x));
        // corners of the box
        for corner in [spec.lower(), spec.upper()] {
            let a = spec.problem.evaluate(&corner);
            assert!(a.f.iter().chain(&a.g).all(|v| v.is_finite()), "{id} corner");
        }
    }
}

#[test]
fn pareto_fronts_are_nondominated() {
    for id in all_ids() {
        let front = problems::problem(&id).unwrap().pareto_front(400);
        assert!(!front.is_empty(), "{id}");
        for a in &front {
            for b in &front {
                assert!(!dominates(a, b), "{id}: {a:?} dominates {b:?}");
            }
        }
        if front[0].len() == 2 {
            for w in front.windows(2) {
                assert!(w[0][0] < w[1][0] && w[0][1] > w[1][1], "{id}");
            }
        }
    }
}

#[test]
fn cdtlz_optima_are_feasible() {
    // position variables free, distance variables at 0.5
    let mut rng = RandomStream::new(4);
    for id in ["c1_dtlz1", "c1_dtlz3", "c3_dtlz1", "c3_dtlz4"] {
        let spec = problems::problem(id).unwrap();
        let mut x = vec![0.5; spec.n];
        for _ in 0..200 {
            x[0] = rng.random_range(0.0..1.0);
            x[1] = rng.random_range(0.0..1.0);
            let r = spec.problem.evaluate(&x);
            let cv: f64 = r.g.iter().map(|v| v.max(0.0)).sum();
            if id.starts_with("c1") {
                assert!(cv <= 1e-9, "{id} {x:?} -> {:?}", r.g);
            } else if r.f.iter().all(|&v| v < 0.45) {
                // the unconstrained optimum lies inside the C3 infeasible region
                assert!(cv > 0.0, "{id} {:?}", r.f);
            }
        }
    }
}
