//! Comparison tables built from a runs file.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::engine::RunRecord;
use crate::error::{Error, Result};
use crate::problems::{all_ids, SuiteInstance};
use crate::stats::{friedman_ranks, mean, std_dev, wilcoxon_signed_rank, Mark};

pub const ALPHA: f64 = 0.05;

/// Result cell for one instance and variant.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub mean: f64,
    pub std: f64,
    pub runs: usize,
    /// `None` for the reference column or when pairing was impossible.
    pub mark: Option<Mark>,
    /// Set when a mark was expected but the paired test could not run.
    pub unpaired: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportSummary {
    pub instances: Vec<String>,
    /// Reference variant first, the rest in lexical order.
    pub variants: Vec<String>,
    pub cells: BTreeMap<(String, String), Cell>,
    /// (suite, variant) -> average rank within the suite.
    pub suite_ranks: Vec<(String, String, f64)>,
    /// Mean of the per-suite averages.
    pub overall_ranks: Vec<(String, f64)>,
}

impl ReportSummary {
    /// `(+, -, =)` counts for a variant.
    pub fn tally(&self, variant: &str) -> (usize, usize, usize) {
        let mut t = (0, 0, 0);
        for inst in &self.instances {
            match self.cells.get(&(inst.clone(), variant.to_string())).and_then(|c| c.mark) {
                Some(Mark::Plus) => t.0 += 1,
                Some(Mark::Minus) => t.1 += 1,
                Some(Mark::Equal) => t.2 += 1,
                None => {}
            }
        }
        t
    }
}

fn instance_order(id: &str) -> usize {
    all_ids().iter().position(|x| x == id).unwrap_or(usize::MAX)
}

/// Build the comparison from records. Failed runs count with their last
/// recorded HV (0 when none).
pub fn summarize(records: &[RunRecord], reference: &str) -> Result<ReportSummary> {
    let mut hv: BTreeMap<(String, String), BTreeMap<u64, f64>> = BTreeMap::new();
    for r in records {
        hv.entry((r.problem.clone(), r.variant.clone()))
            .or_default()
            .insert(r.seed, r.final_hv());
    }
    let mut instances: Vec<String> = hv.keys().map(|k| k.0.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    instances.sort_by_key(|id| (instance_order(id), id.clone()));
    let mut variants: Vec<String> = hv.keys().map(|k| k.1.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    if !variants.iter().any(|v| v == reference) {
        if variants.len() > 1 {
            return Err(Error::Config(format!("reference variant '{reference}' has no runs")));
        }
    } else {
        variants.retain(|v| v != reference);
        variants.insert(0, reference.to_string());
    }

    let mut cells = BTreeMap::new();
    for inst in &instances {
        let reference_runs = hv.get(&(inst.clone(), reference.to_string()));
        for v in &variants {
            let Some(runs) = hv.get(&(inst.clone(), v.clone())) else { continue };
            let values: Vec<f64> = runs.values().copied().collect();
            let mut cell = Cell {
                mean: mean(&values),
                std: std_dev(&values),
                runs: values.len(),
                mark: None,
                unpaired: false,
            };
            if v != reference && variants.len() > 1 {
                let paired: Option<(Vec<f64>, Vec<f64>)> = reference_runs.and_then(|base| {
                    if base.len() != runs.len() || base.keys().ne(runs.keys()) {
                        return None;
                    }
                    Some((values.clone(), base.values().copied().collect()))
                });
                match paired {
                    Some((a, b)) if a.len() >= 5 => cell.mark = Some(wilcoxon_signed_rank(&a, &b, ALPHA)?),
                    _ => cell.unpaired = true,
                }
            }
            cells.insert((inst.clone(), v.clone()), cell);
        }
    }

    // Friedman ranks per suite over instances where every variant has results.
    let mut suite_ranks = Vec::new();
    let mut overall: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    if variants.len() >= 2 {
        let mut by_suite: BTreeMap<String, Vec<Vec<f64>>> = BTreeMap::new();
        for inst in &instances {
            let row: Option<Vec<f64>> = variants
                .iter()
                .map(|v| cells.get(&(inst.clone(), v.clone())).map(|c| c.mean))
                .collect();
            let Some(row) = row else { continue };
            let suite = inst
                .parse::<SuiteInstance>()
                .map(|s| s.suite.name().to_string())
                .unwrap_or_else(|_| "other".into());
            by_suite.entry(suite).or_default().push(row);
        }
        for (suite, table) in &by_suite {
            let ranks = friedman_ranks(table)?;
            for (v, r) in variants.iter().zip(ranks) {
                suite_ranks.push((suite.clone(), v.clone(), r));
                overall.entry(v.clone()).or_default().push(r);
            }
        }
    }
    let overall_ranks = variants
        .iter()
        .filter_map(|v| overall.get(v).map(|rs| (v.clone(), mean(rs))))
        .collect();

    Ok(ReportSummary {
        instances,
        variants,
        cells,
        suite_ranks,
        overall_ranks,
    })
}

fn mark_str(c: &Cell) -> &'static str {
    match c.mark {
        Some(m) => m.symbol(),
        None if c.unpaired => "?",
        None => "",
    }
}

pub fn report_csv(s: &ReportSummary) -> String {
    let mut out = String::from("instance,variant,mean,std,mark\n");
    for inst in &s.instances {
        for v in &s.variants {
            if let Some(c) = s.cells.get(&(inst.clone(), v.clone())) {
                let _ = writeln!(out, "{inst},{v},{:.6e},{:.6e},{}", c.mean, c.std, mark_str(c));
            }
        }
    }
    out
}

pub fn report_md(s: &ReportSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "| Problem | {} |", s.variants.join(" | "));
    let _ = writeln!(out, "|---|{}", "---|".repeat(s.variants.len()));
    for inst in &s.instances {
        let best = s
            .variants
            .iter()
            .filter_map(|v| s.cells.get(&(inst.clone(), v.clone())).map(|c| c.mean))
            .fold(f64::NEG_INFINITY, f64::max);
        let cols: Vec<String> = s
            .variants
            .iter()
            .map(|v| match s.cells.get(&(inst.clone(), v.clone())) {
                None => "n/a".to_string(),
                Some(c) => {
                    let body = format!("{:.4e} ({:.2e})", c.mean, c.std);
                    let body = if c.mean == best { format!("**{body}**") } else { body };
                    let m = mark_str(c);
                    if m.is_empty() {
                        body
                    } else {
                        format!("{body} {m}")
                    }
                }
            })
            .collect();
        let _ = writeln!(out, "| {} | {} |", inst.to_uppercase(), cols.join(" | "));
    }
    if s.variants.len() > 1 {
        let tallies: Vec<String> = s
            .variants
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if i == 0 {
                    String::new()
                } else {
                    let (p, m, e) = s.tally(v);
                    format!("{p}/{m}/{e}")
                }
            })
            .collect();
        let _ = writeln!(out, "| +/-/= | {} |", tallies.join(" | "));
    }
    out
}

pub fn friedman_csv(s: &ReportSummary) -> String {
    let mut out = String::from("suite,variant,avg_rank\n");
    for (suite, v, r) in &s.suite_ranks {
        let _ = writeln!(out, "{suite},{v},{r:.4}");
    }
    for (v, r) in &s.overall_ranks {
        let _ = writeln!(out, "overall,{v},{r:.4}");
    }
    out
}

pub fn radar_csv(s: &ReportSummary) -> String {
    let mut out = String::from("suite,variant,avg_rank_within_suite\n");
    for (suite, v, r) in &s.suite_ranks {
        let _ = writeln!(out, "{suite},{v},{r:.4}");
    }
    out
}

/// Read `runs_path`, write report.csv, report.md, friedman.csv and radar.csv
/// into `out_dir`.
pub fn cmd_report(runs_path: &Path, reference: &str, out_dir: &Path) -> Result<ReportSummary> {
    let records = super::read_records(runs_path)?;
    if records.is_empty() {
        return Err(Error::Config(format!("{} contains no runs", runs_path.display())));
    }
    let summary = summarize(&records, reference)?;
    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join("report.csv"), report_csv(&summary))?;
    fs::write(out_dir.join("report.md"), report_md(&summary))?;
    fs::write(out_dir.join("friedman.csv"), friedman_csv(&summary))?;
    fs::write(out_dir.join("radar.csv"), radar_csv(&summary))?;
    Ok(summary)
}
