//! Solutions, populations, the problem contract and constraint handling.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};

pub type DecisionVector = Vec<f64>;
pub type ObjectiveVector = Vec<f64>;
/// Inequality-form constraint values; `g_i <= 0` means satisfied.
pub type ConstraintVector = Vec<f64>;

/// Default relaxation used when turning `h(x) = 0` into `|h(x)| - eps <= 0`.
pub const DEFAULT_EPSILON_EQ: f64 = 1e-6;

/// Raw evaluator output, before the equality transform.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawEvaluation {
    pub f: ObjectiveVector,
    /// Inequality constraints, `g <= 0` feasible.
    pub g: Vec<f64>,
    /// Equality constraints, `h == 0` feasible.
    pub h: Vec<f64>,
}

/// A benchmark or user problem. Implementations must be deterministic.
pub trait Problem: Send + Sync {
    fn evaluate(&self, x: &[f64]) -> RawEvaluation;

    /// About `k` mutually non-dominated points on the constrained Pareto front.
    fn pareto_front(&self, k: usize) -> Vec<ObjectiveVector>;
}

#[derive(Clone)]
pub struct ProblemSpec {
    pub name: String,
    pub n: usize,
    pub m: usize,
    /// Number of inequality constraints reported by the evaluator.
    pub q_ineq: usize,
    /// Number of equality constraints reported by the evaluator.
    pub q_eq: usize,
    pub bounds: Vec<(f64, f64)>,
    pub epsilon_eq: f64,
    pub problem: Arc<dyn Problem>,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("m", &self.m)
            .field("q", &self.q())
            .field("epsilon_eq", &self.epsilon_eq)
            .finish_non_exhaustive()
    }
}

impl ProblemSpec {
    /// Constraint count after the equality transform.
    pub fn q(&self) -> usize {
        self.q_ineq + self.q_eq
    }

    pub fn lower(&self) -> Vec<f64> {
        self.bounds.iter().map(|b| b.0).collect()
    }

    pub fn upper(&self) -> Vec<f64> {
        self.bounds.iter().map(|b| b.1).collect()
    }

    pub fn pareto_front(&self, k: usize) -> Vec<ObjectiveVector> {
        self.problem.pareto_front(k)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon_eq > 0.0) {
            return Err(contract("epsilon_eq must be positive"));
        }
        if self.bounds.len() != self.n {
            return Err(contract(format!(
                "expected {} bounds, got {}",
                self.n,
                self.bounds.len()
            )));
        }
        if self.bounds.iter().any(|&(l, u)| !(l <= u) || !l.is_finite() || !u.is_finite()) {
            return Err(contract("bounds must be finite with lower <= upper"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub x: DecisionVector,
    pub f: ObjectiveVector,
    pub g: ConstraintVector,
    pub cv: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fitness: Option<f64>,
}

impl Solution {
    pub fn is_feasible(&self) -> bool {
        self.cv == 0.0
    }
}

/// Ordered multiset of solutions. Order is meaningful: it is the stable
/// tie-break used by ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub members: Vec<Solution>,
    pub capacity: usize,
}

impl Population {
    pub fn new(capacity: usize) -> Self {
        Self {
            members: Vec::with_capacity(2 * capacity),
            capacity,
        }
    }

    pub fn from_members(members: Vec<Solution>, capacity: usize) -> Self {
        Self { members, capacity }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn objectives(&self) -> Vec<&[f64]> {
        self.members.iter().map(|s| s.f.as_slice()).collect()
    }

    pub fn cvs(&self) -> Vec<f64> {
        self.members.iter().map(|s| s.cv).collect()
    }

    pub fn feasible(&self) -> impl Iterator<Item = &Solution> {
        self.members.iter().filter(|s| s.is_feasible())
    }
}

/// Function-evaluation counter with a hard limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub used: usize,
    pub limit: usize,
}

impl Budget {
    pub fn new(limit: usize) -> Self {
        Self { used: 0, limit }
    }

    pub fn remaining(&self) -> usize {
        self.limit.saturating_sub(self.used)
    }

    pub fn is_exhausted(&self) -> bool {
        self.used >= self.limit
    }

    pub fn consume(&mut self) -> Result<()> {
        if self.is_exhausted() {
            return Err(Error::BudgetExhausted { used: self.used });
        }
        self.used += 1;
        Ok(())
    }
}

/// `|h| - epsilon`, non-positive exactly when `|h| <= epsilon`.
pub fn transform_equality(h: f64, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(contract("epsilon must be positive"));
    }
    if !h.is_finite() {
        return Err(Error::Evaluation(format!("non-finite equality value {h}")));
    }
    Ok(h.abs() - epsilon)
}

/// Sum of positive constraint values.
pub fn constraint_violation(g: &[f64]) -> Result<f64> {
    let mut cv = 0.0;
    for &v in g {
        if !v.is_finite() {
            return Err(Error::Evaluation(format!("non-finite constraint value {v}")));
        }
        cv += v.max(0.0);
    }
    Ok(cv)
}

/// Min/max normalize each objective over all rows. A constant column maps to zeros.
pub fn normalize_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Vec<Vec<f64>>> {
    let first = rows
        .first()
        .ok_or_else(|| contract("cannot normalize an empty population"))?;
    let m = first.as_ref().len();
    let mut lo = vec![f64::INFINITY; m];
    let mut hi = vec![f64::NEG_INFINITY; m];
    for r in rows {
        let r = r.as_ref();
        if r.len() != m {
            return Err(contract("objective vectors of unequal length"));
        }
        for j in 0..m {
            if !r[j].is_finite() {
                return Err(contract("non-finite objective value"));
            }
            lo[j] = lo[j].min(r[j]);
            hi[j] = hi[j].max(r[j]);
        }
    }
    Ok(rows
        .iter()
        .map(|r| {
            r.as_ref()
                .iter()
                .enumerate()
                .map(|(j, &v)| {
                    let span = hi[j] - lo[j];
                    if span > 0.0 {
                        (v - lo[j]) / span
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect())
}

pub fn normalize_objectives(members: &[Solution]) -> Result<Vec<Vec<f64>>> {
    let rows: Vec<&[f64]> = members.iter().map(|s| s.f.as_slice()).collect();
    normalize_rows(&rows)
}

/// Evaluate `x` on `spec`, charging one evaluation to `budget`.
pub fn evaluate(spec: &ProblemSpec, x: &[f64], budget: &mut Budget) -> Result<Solution> {
    if x.len() != spec.n {
        return Err(contract(format!("expected {} variables, got {}", spec.n, x.len())));
    }
    for (j, (&v, &(l, u))) in x.iter().zip(&spec.bounds).enumerate() {
        if !(v >= l && v <= u) {
            return Err(contract(format!("x[{j}] = {v} outside [{l}, {u}]")));
        }
    }
    budget.consume()?;
    let raw = spec.problem.evaluate(x);
    if raw.f.len() != spec.m {
        return Err(contract(format!(
            "{}: evaluator returned {} objectives, expected {}",
            spec.name,
            raw.f.len(),
            spec.m
        )));
    }
    if let Some(v) = raw.f.iter().find(|v| !v.is_finite()) {
        return Err(Error::Evaluation(format!("{}: non-finite objective {v}", spec.name)));
    }
    let mut g = raw.g;
    g.reserve(raw.h.len());
    for h in raw.h {
        g.push(transform_equality(h, spec.epsilon_eq)?);
    }
    let cv = constraint_violation(&g)?;
    Ok(Solution {
        x: x.to_vec(),
        f: raw.f,
        g,
        cv,
        fitness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Toy;

    impl Problem for Toy {
        fn evaluate(&self, x: &[f64]) -> RawEvaluation {
            RawEvaluation {
                f: vec![x[0], 1.0 - x[0]],
                g: vec![x[0] - 0.5],
                h: vec![x[1]],
            }
        }

        fn pareto_front(&self, _k: usize) -> Vec<ObjectiveVector> {
            vec![vec![0.0, 1.0]]
        }
    }

    fn toy() -> ProblemSpec {
        ProblemSpec {
            name: "toy".into(),
            n: 2,
            m: 2,
            q_ineq: 1,
            q_eq: 1,
            bounds: vec![(0.0, 1.0); 2],
            epsilon_eq: DEFAULT_EPSILON_EQ,
            problem: Arc::new(Toy),
        }
    }

    #[test]
    fn equality_transform() {
        assert_eq!(transform_equality(0.0, 1e-6).unwrap(), -1e-6);
        assert!((transform_equality(2e-6, 1e-6).unwrap() - 1e-6).abs() < 1e-18);
        assert!((transform_equality(-5e-7, 1e-6).unwrap() + 5e-7).abs() < 1e-18);
        assert!(matches!(transform_equality(f64::NAN, 1e-6), Err(Error::Evaluation(_))));
    }

    #[test]
    fn violation_sums_positive_parts() {
        assert_eq!(constraint_violation(&[-1.0, 0.5, 0.0]).unwrap(), 0.5);
        assert_eq!(constraint_violation(&[-0.3, -2.0]).unwrap(), 0.0);
        assert!((constraint_violation(&[0.1, 0.2, 0.3]).unwrap() - 0.6).abs() < 1e-15);
        assert!(constraint_violation(&[f64::INFINITY]).is_err());
    }

    #[test]
    fn normalization_examples() {
        let n = normalize_rows(&[[0.0, 2.0], [1.0, 1.0], [2.0, 0.0]]).unwrap();
        assert_eq!(n, vec![vec![0.0, 1.0], vec![0.5, 0.5], vec![1.0, 0.0]]);
        assert_eq!(normalize_rows(&[[3.0, 7.0]]).unwrap(), vec![vec![0.0, 0.0]]);
        let n = normalize_rows(&[[1.0, 5.0], [1.0, 9.0]]).unwrap();
        assert_eq!(n, vec![vec![0.0, 0.0], vec![0.0, 1.0]]);
        let empty: [[f64; 2]; 0] = [];
        assert!(normalize_rows(&empty).is_err());
    }

    #[test]
    fn evaluate_counts_and_checks() {
        let spec = toy();
        let mut b = Budget::new(2);
        let s = evaluate(&spec, &[0.5, 0.0], &mut b).unwrap();
        assert_eq!(s.cv, 0.0, "boundary g = 0 is feasible");
        assert_eq!(b.used, 1);
        let s = evaluate(&spec, &[0.75, 0.0], &mut b).unwrap();
        assert_eq!(s.cv, 0.25);
        assert!(matches!(
            evaluate(&spec, &[0.1, 0.0], &mut b),
            Err(Error::BudgetExhausted { used: 2 })
        ));
        let mut b = Budget::new(5);
        assert!(matches!(
            evaluate(&spec, &[1.5, 0.0], &mut b),
            Err(Error::ContractViolation(_))
        ));
        assert_eq!(b.used, 0);
    }
}
