//! Experiment orchestration behind the `icsde` binary.
//!
//! An experiment is a TOML file:
//!
//! ```toml
//! problems = ["mw1", "lircmop*"]
//! variants = ["icsde-ga", "cdp-baseline"]
//! runs = 10
//! base_seed = 0
//! parallelism = 4
//! output_dir = "results"
//! budget_override = 0.1            # scale every FE budget, or
//! # budget_override = { n = 50, fes = 5000 }
//!
//! [de]                               # optional operator overrides
//! f = 0.7
//! ```
//!
//! `ICSDE_OUTPUT_DIR` overrides `output_dir`.

pub mod report;

use std::collections::{BTreeMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::engine::{run_with_hv, AlgorithmConfig, RunRecord, Variant};
use crate::error::{Error, Result};
use crate::indicators::HvConfig;
use crate::operators::{OperatorConfig, OperatorKind};
use crate::problems::{self, default_budget, make_problem, Suite, SuiteInstance, DEFAULT_PF_POINTS};

pub use report::{cmd_report, ReportSummary};

pub const OUTPUT_DIR_ENV: &str = "ICSDE_OUTPUT_DIR";
pub const RUNS_FILE: &str = "runs.jsonl";

/// Built-in variant presets.
pub const PRESETS: [&str; 5] = ["icsde", "icsde-ga", "icsde-de", "isdeplus", "cdp-baseline"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BudgetOverride {
    /// Multiply each instance's FE budget; population size is kept.
    Scale(f64),
    /// Fixed population size and FE budget for every instance.
    Fixed { n: usize, fes: usize },
}

fn default_runs() -> usize {
    1
}

fn default_parallelism() -> usize {
    1
}

fn default_output() -> PathBuf {
    PathBuf::from("results")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problems: Vec<String>,
    pub variants: Vec<String>,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_parallelism")]
    pub parallelism: usize,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_override: Option<BudgetOverride>,
    /// Overrides for the GA operator settings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ga: Option<OperatorConfig>,
    /// Overrides for the DE operator settings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub de: Option<OperatorConfig>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::from_toml(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        if self.parallelism == 0 {
            return Err(Error::Config("parallelism must be at least 1".into()));
        }
        if self.variants.is_empty() {
            return Err(Error::Config("at least one variant is required".into()));
        }
        for v in &self.variants {
            if !PRESETS.contains(&v.as_str()) {
                return Err(Error::Config(format!(
                    "unknown variant '{v}' (expected one of {})",
                    PRESETS.join(", ")
                )));
            }
        }
        match self.budget_override {
            Some(BudgetOverride::Scale(s)) if !(s > 0.0) => {
                return Err(Error::Config("budget_override scale must be positive".into()))
            }
            Some(BudgetOverride::Fixed { n, fes }) if n < 2 || fes < n => {
                return Err(Error::Config("budget_override needs n >= 2 and fes >= n".into()))
            }
            _ => {}
        }
        for op in self.ga.iter().chain(&self.de) {
            op.validate()?;
        }
        problems::resolve_ids(&self.problems)?;
        Ok(())
    }

    /// `output_dir`, unless the environment overrides it.
    pub fn effective_output_dir(&self) -> PathBuf {
        std::env::var_os(OUTPUT_DIR_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .unwrap_or_else(|| self.output_dir.clone())
    }

    pub fn seed(&self, run_index: usize) -> u64 {
        self.base_seed.wrapping_add(run_index as u64)
    }

    fn operator(&self, kind: OperatorKind) -> OperatorConfig {
        let base = match kind {
            OperatorKind::Ga => self.ga,
            OperatorKind::De => self.de,
        };
        OperatorConfig {
            kind,
            ..base.unwrap_or_else(|| match kind {
                OperatorKind::Ga => OperatorConfig::ga(),
                OperatorKind::De => OperatorConfig::de(),
            })
        }
    }

    /// Algorithm settings for `preset` on `inst`.
    pub fn algorithm(&self, preset: &str, inst: &SuiteInstance) -> Result<AlgorithmConfig> {
        let (variant, kind) = preset_parts(preset, inst.suite)?;
        let (mut n, mut fes) = default_budget(inst);
        match self.budget_override {
            Some(BudgetOverride::Scale(s)) => fes = ((fes as f64 * s).round() as usize).max(n),
            Some(BudgetOverride::Fixed { n: bn, fes: bf }) => {
                n = bn;
                fes = bf;
            }
            None => {}
        }
        Ok(AlgorithmConfig {
            population_size: n,
            max_fes: fes,
            operator: self.operator(kind),
            variant,
        })
    }
}

/// Operator family used by default on each suite.
pub fn suite_operator(suite: Suite) -> OperatorKind {
    match suite {
        Suite::Mw | Suite::Cdtlz => OperatorKind::Ga,
        Suite::Lircmop | Suite::Dascmop => OperatorKind::De,
    }
}

pub fn preset_parts(preset: &str, suite: Suite) -> Result<(Variant, OperatorKind)> {
    Ok(match preset {
        "icsde" => (Variant::Icsde, suite_operator(suite)),
        "icsde-ga" => (Variant::Icsde, OperatorKind::Ga),
        "icsde-de" => (Variant::Icsde, OperatorKind::De),
        "isdeplus" => (Variant::IsdePlus, suite_operator(suite)),
        "cdp-baseline" => (Variant::CdpBaseline, suite_operator(suite)),
        _ => return Err(Error::Config(format!("unknown variant '{preset}'"))),
    })
}

/// One scheduled run.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Task {
    pub problem: String,
    pub variant: String,
    pub seed: u64,
}

/// All runs of the experiment in deterministic order.
pub fn tasks(cfg: &ExperimentConfig) -> Result<Vec<Task>> {
    let ids = problems::resolve_ids(&cfg.problems)?;
    let mut out = Vec::new();
    for id in &ids {
        for v in &cfg.variants {
            for r in 0..cfg.runs {
                out.push(Task {
                    problem: id.clone(),
                    variant: v.clone(),
                    seed: cfg.seed(r),
                });
            }
        }
    }
    Ok(out)
}

/// Records already present in a runs file; unreadable lines are skipped.
pub fn read_records(path: &Path) -> Result<Vec<RunRecord>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (lineno, line) in BufReader::new(File::open(path)?).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<RunRecord>(&line) {
            Ok(r) => out.push(r),
            Err(e) => eprintln!("{}:{}: skipping unreadable record: {e}", path.display(), lineno + 1),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunSummary {
    pub executed: usize,
    pub skipped: usize,
    pub failed: usize,
}

struct Prepared {
    inst: SuiteInstance,
    spec: crate::domain::ProblemSpec,
    hv: HvConfig,
}

fn prepare(id: &str) -> Result<Prepared> {
    let inst: SuiteInstance = id.parse()?;
    let spec = make_problem(&inst)?;
    let hv = HvConfig::new(spec.pareto_front(DEFAULT_PF_POINTS))?;
    Ok(Prepared { inst, spec, hv })
}

fn execute(cfg: &ExperimentConfig, prepared: &Prepared, task: &Task) -> RunRecord {
    let attempt = cfg
        .algorithm(&task.variant, &prepared.inst)
        .and_then(|alg| run_with_hv(&prepared.spec, &alg, task.seed, &prepared.hv));
    match attempt {
        Ok(mut r) => {
            r.variant = task.variant.clone();
            r
        }
        Err(e) => RunRecord {
            problem: task.problem.clone(),
            variant: task.variant.clone(),
            seed: task.seed,
            n: 0,
            fes_used: 0,
            wall_time_ms: 0.0,
            hv_trajectory: Vec::new(),
            final_population: Vec::new(),
            error: Some(e.to_string()),
        },
    }
}

/// Execute every missing run, appending records to `<output_dir>/runs.jsonl`
/// in task order.
pub fn cmd_run(cfg: &ExperimentConfig) -> Result<RunSummary> {
    cfg.validate()?;
    let dir = cfg.effective_output_dir();
    fs::create_dir_all(&dir)?;
    let runs_path = dir.join(RUNS_FILE);
    let done: HashSet<(String, String, u64)> = read_records(&runs_path)?
        .into_iter()
        .map(|r| (r.problem, r.variant, r.seed))
        .collect();
    let all = tasks(cfg)?;
    let todo: Vec<Task> = all
        .iter()
        .filter(|t| !done.contains(&(t.problem.clone(), t.variant.clone(), t.seed)))
        .cloned()
        .collect();
    let mut summary = RunSummary {
        skipped: all.len() - todo.len(),
        ..Default::default()
    };
    if todo.is_empty() {
        return Ok(summary);
    }

    let mut prepared: BTreeMap<String, Prepared> = BTreeMap::new();
    for t in &todo {
        if !prepared.contains_key(&t.problem) {
            prepared.insert(t.problem.clone(), prepare(&t.problem)?);
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let mut out = OpenOptions::new().create(true).append(true).open(&runs_path)?;
    for chunk in todo.chunks(cfg.parallelism.max(1) * 2) {
        let records: Vec<RunRecord> = pool.install(|| {
            use rayon::prelude::*;
            chunk
                .par_iter()
                .map(|t| execute(cfg, &prepared[&t.problem], t))
                .collect()
        });
        for r in records {
            if let Some(err) = &r.error {
                eprintln!("{} {} seed {}: {err}", r.problem, r.variant, r.seed);
                summary.failed += 1;
            }
            serde_json::to_writer(&mut out, &r)?;
            out.write_all(b"\n")?;
            summary.executed += 1;
        }
        out.flush()?;
    }
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    pub wall_time_ms: f64,
    pub fes: usize,
    pub final_hv: f64,
    pub record: RunRecord,
}

impl BenchResult {
    pub fn fes_per_second(&self) -> f64 {
        if self.wall_time_ms > 0.0 {
            self.fes as f64 / (self.wall_time_ms / 1e3)
        } else {
            f64::INFINITY
        }
    }
}

/// Time a single run with the instance's default budget (optionally scaled).
pub fn cmd_bench(id: &str, preset: &str, seed: u64, scale: Option<f64>) -> Result<BenchResult> {
    let prepared = prepare(id)?;
    let cfg = ExperimentConfig {
        problems: vec![id.to_string()],
        variants: vec![preset.to_string()],
        runs: 1,
        base_seed: seed,
        parallelism: 1,
        output_dir: default_output(),
        budget_override: scale.map(BudgetOverride::Scale),
        ga: None,
        de: None,
    };
    cfg.validate()?;
    let task = Task {
        problem: id.to_string(),
        variant: preset.to_string(),
        seed,
    };
    let record = execute(&cfg, &prepared, &task);
    if let Some(e) = &record.error {
        return Err(Error::Evaluation(e.clone()));
    }
    Ok(BenchResult {
        wall_time_ms: record.wall_time_ms,
        fes: record.fes_used,
        final_hv: record.final_hv(),
        record,
    })
}

/// One line per instance: id, suite, n, m, q, N, FEs.
pub fn list_problems() -> Vec<String> {
    problems::all_ids()
        .into_iter()
        .map(|id| {
            let inst: SuiteInstance = id.parse().expect("built-in ids parse");
            let (n, fes) = default_budget(&inst);
            format!(
                "{id:<10} {:<8} n={:<3} m={} q={:<3} N={:<4} FEs={fes}",
                inst.suite.name(),
                inst.n,
                inst.m,
                inst.q,
                n
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip() {
        let text = r#"
            problems = ["mw1", "c3_dtlz4"]
            variants = ["icsde-ga"]
            runs = 3
            budget_override = 0.1
            [de]
            f = 0.7
        "#;
        let cfg = ExperimentConfig::from_toml(text).unwrap();
        assert_eq!(cfg.runs, 3);
        let again = ExperimentConfig::from_toml(&cfg.to_toml().unwrap()).unwrap();
        assert_eq!(cfg, again);
        let alg = cfg.algorithm("icsde-ga", &"mw1".parse().unwrap()).unwrap();
        assert_eq!((alg.population_size, alg.max_fes), (100, 6000));
        let alg = cfg.algorithm("icsde-de", &"mw1".parse().unwrap()).unwrap();
        assert_eq!(alg.operator.kind, OperatorKind::De);
        assert_eq!(alg.operator.scale, 0.7);
    }

    #[test]
    fn config_errors_name_the_line() {
        let err = ExperimentConfig::from_toml("problems = [\"mw1\"]\nvariants = [\"x\"]\n").unwrap_err();
        assert!(err.to_string().contains("unknown variant"));
        let err = ExperimentConfig::from_toml("problems = [\"mw1\"]\nvariants = [\"icsde\"]\nrunz = 2\n")
            .unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        assert!(ExperimentConfig::from_toml("problems = [\"mw99\"]\nvariants = [\"icsde\"]").is_err());
    }

    #[test]
    fn presets_follow_suite_protocol() {
        assert_eq!(preset_parts("cdp-baseline", Suite::Mw).unwrap().1, OperatorKind::Ga);
        assert_eq!(preset_parts("isdeplus", Suite::Lircmop).unwrap().1, OperatorKind::De);
        assert_eq!(preset_parts("icsde", Suite::Dascmop).unwrap(), (Variant::Icsde, OperatorKind::De));
    }

    #[test]
    fn listing_covers_every_instance() {
        assert_eq!(list_problems().len(), 42);
    }
}
