//! The generational loop: tournament mating, variation, fitness on the
//! parent-offspring union and truncation survival.

pub mod cdp;
pub mod selection;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::domain::{evaluate, Budget, Population, ProblemSpec, Solution};
use crate::error::{contract, Error, Result};
use crate::fitness::{icsde_fitness, isde_plus_fitness};
use crate::indicators::{hv, HvConfig};
use crate::operators::{variation, OperatorConfig};
use crate::pareto::nondominated_indices;
use crate::problems::DEFAULT_PF_POINTS;
use crate::rng::RandomStream;

pub use selection::{environmental_selection, mating_selection, tournament};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Constraint-aware ranking by (cv, sob) with shifted-distance fitness.
    Icsde,
    /// Same fitness with constraint violations ignored.
    IsdePlus,
    /// Constrained-domination non-dominated sorting with crowding distance.
    CdpBaseline,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Icsde => "icsde",
            Variant::IsdePlus => "isdeplus",
            Variant::CdpBaseline => "cdp-baseline",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "icsde" => Ok(Variant::Icsde),
            "isdeplus" => Ok(Variant::IsdePlus),
            "cdp-baseline" => Ok(Variant::CdpBaseline),
            _ => Err(Error::Config(format!("unknown variant '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmConfig {
    pub population_size: usize,
    pub max_fes: usize,
    pub operator: OperatorConfig,
    pub variant: Variant,
}

impl AlgorithmConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::Config("population size must be at least 2".into()));
        }
        if self.max_fes < self.population_size {
            return Err(Error::Config("max_fes must be at least the population size".into()));
        }
        self.operator.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HvSample {
    pub generation: usize,
    pub fes: usize,
    pub hv: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemberRecord {
    pub x: Vec<f64>,
    pub f: Vec<f64>,
    pub cv: f64,
}

/// Outcome of one run, serialized as one JSON line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub problem: String,
    pub variant: String,
    pub seed: u64,
    #[serde(rename = "N")]
    pub n: usize,
    pub fes_used: usize,
    pub wall_time_ms: f64,
    pub hv_trajectory: Vec<HvSample>,
    pub final_population: Vec<MemberRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunRecord {
    pub fn final_hv(&self) -> f64 {
        self.hv_trajectory.last().map_or(0.0, |s| s.hv)
    }

    pub fn feasible_count(&self) -> usize {
        self.final_population.iter().filter(|m| m.cv == 0.0).count()
    }
}

/// Hypervolume of the feasible non-dominated members.
pub fn feasible_hv(members: &[Solution], cfg: &HvConfig) -> Result<f64> {
    let feasible: Vec<&[f64]> = members
        .iter()
        .filter(|s| s.is_feasible())
        .map(|s| s.f.as_slice())
        .collect();
    if feasible.is_empty() {
        return Ok(0.0);
    }
    let nd: Vec<&[f64]> = nondominated_indices(&feasible).into_iter().map(|i| feasible[i]).collect();
    hv(&nd, cfg)
}

/// `n` uniform samples in the box, evaluated.
pub fn initialize(
    spec: &ProblemSpec,
    n: usize,
    budget: &mut Budget,
    rng: &mut RandomStream,
) -> Result<Population> {
    if budget.remaining() < n {
        return Err(Error::BudgetExhausted { used: budget.used });
    }
    let mut pop = Population::new(n);
    for _ in 0..n {
        let x: Vec<f64> = spec
            .bounds
            .iter()
            .map(|&(l, u)| if u > l { rng.random_range(l..=u) } else { l })
            .collect();
        pop.members.push(evaluate(spec, &x, budget)?);
    }
    Ok(pop)
}

fn assign(variant: Variant, members: &[Solution]) -> Result<Vec<f64>> {
    match variant {
        Variant::Icsde => icsde_fitness(members),
        Variant::IsdePlus => isde_plus_fitness(members),
        Variant::CdpBaseline => Err(contract("the CDP baseline has no scalar fitness")),
    }
}

/// Run one optimization, building the hypervolume reference from the
/// problem's front sampler.
pub fn run(spec: &ProblemSpec, cfg: &AlgorithmConfig, seed: u64) -> Result<RunRecord> {
    let hv_cfg = HvConfig::new(spec.pareto_front(DEFAULT_PF_POINTS))?;
    run_with_hv(spec, cfg, seed, &hv_cfg)
}

/// Run one optimization. Configuration errors are returned as `Err`;
/// failures during the run are reported inside the record.
pub fn run_with_hv(
    spec: &ProblemSpec,
    cfg: &AlgorithmConfig,
    seed: u64,
    hv_cfg: &HvConfig,
) -> Result<RunRecord> {
    cfg.validate()?;
    spec.validate()?;
    let start = Instant::now();
    let mut rng = RandomStream::new(seed);
    let mut budget = Budget::new(cfg.max_fes);
    let mut record = RunRecord {
        problem: spec.name.clone(),
        variant: cfg.variant.name().to_string(),
        seed,
        n: cfg.population_size,
        fes_used: 0,
        wall_time_ms: 0.0,
        hv_trajectory: Vec::new(),
        final_population: Vec::new(),
        error: None,
    };
    let mut pop = Population::new(cfg.population_size);
    if let Err(e) = evolve(spec, cfg, hv_cfg, &mut rng, &mut budget, &mut pop, &mut record) {
        record.error = Some(e.to_string());
    }
    record.fes_used = budget.used;
    record.final_population = pop
        .members
        .iter()
        .map(|s| MemberRecord {
            x: s.x.clone(),
            f: s.f.clone(),
            cv: s.cv,
        })
        .collect();
    record.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(record)
}

fn evolve(
    spec: &ProblemSpec,
    cfg: &AlgorithmConfig,
    hv_cfg: &HvConfig,
    rng: &mut RandomStream,
    budget: &mut Budget,
    pop: &mut Population,
    record: &mut RunRecord,
) -> Result<()> {
    let n = cfg.population_size;
    let (lower, upper) = (spec.lower(), spec.upper());
    *pop = initialize(spec, n, budget, rng)?;
    let mut fit = match cfg.variant {
        Variant::CdpBaseline => Vec::new(),
        v => assign(v, &pop.members)?,
    };
    let mut generation = 0;
    record.hv_trajectory.push(HvSample {
        generation,
        fes: budget.used,
        hv: feasible_hv(&pop.members, hv_cfg)?,
    });
    while !budget.is_exhausted() {
        generation += 1;
        let pool_idx = match cfg.variant {
            Variant::CdpBaseline => {
                let (fronts, crowd) = cdp::rank_and_crowding(&pop.members);
                cdp::mating_selection(&fronts, &crowd, n, rng)
            }
            _ => mating_selection(&fit, n, rng),
        };
        let pool: Vec<&[f64]> = pool_idx.iter().map(|&i| pop.members[i].x.as_slice()).collect();
        let children = variation(&pool, &lower, &upper, &cfg.operator, rng);
        let take = children.len().min(budget.remaining());
        let mut union = std::mem::take(&mut pop.members);
        for x in &children[..take] {
            union.push(evaluate(spec, x, budget)?);
        }
        let survivors = match cfg.variant {
            Variant::CdpBaseline => {
                fit.clear();
                cdp::environmental_selection(&union, n)
            }
            v => {
                let union_fit = assign(v, &union)?;
                let keep = environmental_selection(&union_fit, n, rng)?;
                fit = keep.iter().map(|&i| union_fit[i]).collect();
                keep
            }
        };
        let mut slots: Vec<Option<Solution>> = union.into_iter().map(Some).collect();
        pop.members = survivors
            .iter()
            .map(|&i| slots[i].take().expect("survivor indices are unique"))
            .collect();
        for (s, &f) in pop.members.iter_mut().zip(&fit) {
            s.fitness = Some(f);
        }
        record.hv_trajectory.push(HvSample {
            generation,
            fes: budget.used,
            hv: feasible_hv(&pop.members, hv_cfg)?,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems;

    fn cfg(variant: Variant, n: usize, fes: usize) -> AlgorithmConfig {
        AlgorithmConfig {
            population_size: n,
            max_fes: fes,
            operator: OperatorConfig::ga(),
            variant,
        }
    }

    #[test]
    fn budget_equal_to_n_returns_initial_population() {
        let spec = problems::problem("mw1").unwrap();
        let r = run(&spec, &cfg(Variant::Icsde, 10, 10), 3).unwrap();
        assert_eq!(r.fes_used, 10);
        assert_eq!(r.final_population.len(), 10);
        assert_eq!(r.hv_trajectory.len(), 1);
    }

    #[test]
    fn exact_fe_accounting_with_truncated_last_generation() {
        let spec = problems::problem("mw1").unwrap();
        for variant in [Variant::Icsde, Variant::IsdePlus, Variant::CdpBaseline] {
            let r = run(&spec, &cfg(variant, 10, 55), 1).unwrap();
            assert!(r.error.is_none());
            assert_eq!(r.fes_used, 55);
            assert_eq!(r.final_population.len(), 10);
            assert_eq!(r.hv_trajectory.len(), 6);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let spec = problems::problem("mw1").unwrap();
        let c = cfg(Variant::Icsde, 20, 400);
        let a = run(&spec, &c, 9).unwrap();
        let b = run(&spec, &c, 9).unwrap();
        assert_eq!(a.final_population, b.final_population);
        assert_eq!(a.hv_trajectory, b.hv_trajectory);
    }

    #[test]
    fn invalid_config_rejected() {
        let spec = problems::problem("mw1").unwrap();
        assert!(run(&spec, &cfg(Variant::Icsde, 1, 10), 0).is_err());
        assert!(run(&spec, &cfg(Variant::Icsde, 10, 5), 0).is_err());
    }
}
