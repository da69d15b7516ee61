//! Benchmark suites: MW, LIRCMOP, C-DTLZ and DASCMOP.
//!
//! Every evaluator reports constraints in `g <= 0` form. Instances are
//! addressed by lowercase ids such as `mw1`, `lircmop13`, `c3_dtlz4`,
//! `dascmop3`.

mod cdtlz;
mod dascmop;
mod lircmop;
mod mw;
pub mod pf;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::domain::{Problem, ProblemSpec, DEFAULT_EPSILON_EQ};
use crate::error::{Error, Result};

pub use cdtlz::CDtlz;
pub use dascmop::{Dascmop, Difficulty};
pub use lircmop::Lircmop;
pub use mw::Mw;

/// Default number of reference points requested from front samplers.
pub const DEFAULT_PF_POINTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Suite {
    #[serde(rename = "MW")]
    Mw,
    #[serde(rename = "LIRCMOP")]
    Lircmop,
    #[serde(rename = "CDTLZ")]
    Cdtlz,
    #[serde(rename = "DASCMOP")]
    Dascmop,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Mw => "MW",
            Suite::Lircmop => "LIRCMOP",
            Suite::Cdtlz => "CDTLZ",
            Suite::Dascmop => "DASCMOP",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// C-DTLZ instances, in the order they are numbered here.
pub const CDTLZ_IDS: [&str; 5] = ["c1_dtlz1", "c1_dtlz3", "c2_dtlz2", "c3_dtlz1", "c3_dtlz4"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteInstance {
    pub suite: Suite,
    /// 1-based problem number; for C-DTLZ an index into [`CDTLZ_IDS`].
    pub index: usize,
    pub n: usize,
    pub m: usize,
    pub q: usize,
    pub difficulty: Option<Difficulty>,
}

impl SuiteInstance {
    pub fn new(suite: Suite, index: usize) -> Result<Self> {
        let bad = || Error::Config(format!("unknown {suite} problem index {index}"));
        let (n, m, q, difficulty) = match suite {
            Suite::Mw => {
                if !(1..=14).contains(&index) {
                    return Err(bad());
                }
                (15, mw::objectives(index), mw::constraint_count(index), None)
            }
            Suite::Lircmop => {
                if !(1..=14).contains(&index) {
                    return Err(bad());
                }
                (30, lircmop::objectives(index), lircmop::constraint_count(index), None)
            }
            Suite::Cdtlz => {
                if !(1..=5).contains(&index) {
                    return Err(bad());
                }
                (cdtlz::dimension(index), 3, cdtlz::constraint_count(index), None)
            }
            Suite::Dascmop => {
                if !(1..=9).contains(&index) {
                    return Err(bad());
                }
                (
                    30,
                    dascmop::objectives(index),
                    dascmop::constraint_count(index),
                    Some(Difficulty::default_for(index)),
                )
            }
        };
        Ok(Self {
            suite,
            index,
            n,
            m,
            q,
            difficulty,
        })
    }

    pub fn id(&self) -> String {
        match self.suite {
            Suite::Mw => format!("mw{}", self.index),
            Suite::Lircmop => format!("lircmop{}", self.index),
            Suite::Cdtlz => CDTLZ_IDS[self.index - 1].to_string(),
            Suite::Dascmop => format!("dascmop{}", self.index),
        }
    }
}

impl FromStr for SuiteInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let id = s.trim().to_ascii_lowercase();
        if let Some(pos) = CDTLZ_IDS.iter().position(|c| *c == id) {
            return SuiteInstance::new(Suite::Cdtlz, pos + 1);
        }
        let split = id.find(|c: char| c.is_ascii_digit()).unwrap_or(id.len());
        let (prefix, num) = id.split_at(split);
        let suite = match prefix {
            "mw" => Suite::Mw,
            "lircmop" => Suite::Lircmop,
            "dascmop" => Suite::Dascmop,
            _ => return Err(Error::Config(format!("unknown problem id '{s}'"))),
        };
        let index: usize = num
            .parse()
            .map_err(|_| Error::Config(format!("unknown problem id '{s}'")))?;
        SuiteInstance::new(suite, index)
    }
}

/// All instance ids, suite by suite.
pub fn all_ids() -> Vec<String> {
    let mut ids: Vec<String> = (1..=14).map(|i| format!("mw{i}")).collect();
    ids.extend((1..=14).map(|i| format!("lircmop{i}")));
    ids.extend(CDTLZ_IDS.iter().map(|s| s.to_string()));
    ids.extend((1..=9).map(|i| format!("dascmop{i}")));
    ids
}

/// Expand ids and `*`-suffixed prefixes (`"mw*"`, `"c*dtlz*"`) into instance ids.
pub fn resolve_ids(patterns: &[String]) -> Result<Vec<String>> {
    let all = all_ids();
    let mut out = Vec::new();
    for p in patterns {
        let p = p.trim().to_ascii_lowercase();
        if p.contains('*') {
            let hits: Vec<&String> = all.iter().filter(|id| glob_match(&p, id)).collect();
            if hits.is_empty() {
                return Err(Error::Config(format!("pattern '{p}' matches no problem")));
            }
            out.extend(hits.into_iter().cloned());
        } else {
            SuiteInstance::from_str(&p)?;
            out.push(p);
        }
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|id| seen.insert(id.clone()));
    Ok(out)
}

fn glob_match(pattern: &str, text: &str) -> bool {
    let parts: Vec<&str> = pattern.split('*').collect();
    let mut rest = text;
    for (i, part) in parts.iter().enumerate() {
        if i == 0 {
            match rest.strip_prefix(part) {
                Some(r) => rest = r,
                None => return false,
            }
        } else if i == parts.len() - 1 {
            return rest.ends_with(part);
        } else if let Some(pos) = rest.find(part) {
            rest = &rest[pos + part.len()..];
        } else {
            return false;
        }
    }
    rest.is_empty()
}

pub fn make_problem(inst: &SuiteInstance) -> Result<ProblemSpec> {
    let (problem, bounds): (Arc<dyn Problem>, Vec<(f64, f64)>) = match inst.suite {
        Suite::Mw => {
            let p = Mw::new(inst.index, inst.n);
            let b = p.bounds();
            (Arc::new(p), b)
        }
        Suite::Lircmop => {
            let p = Lircmop::new(inst.index, inst.n);
            (Arc::new(p), vec![(0.0, 1.0); inst.n])
        }
        Suite::Cdtlz => {
            let p = CDtlz::new(inst.index);
            (Arc::new(p), vec![(0.0, 1.0); inst.n])
        }
        Suite::Dascmop => {
            let d = inst.difficulty.unwrap_or_else(|| Difficulty::default_for(inst.index));
            let p = Dascmop::new(inst.index, inst.n, d);
            (Arc::new(p), vec![(0.0, 1.0); inst.n])
        }
    };
    let spec = ProblemSpec {
        name: inst.id(),
        n: inst.n,
        m: inst.m,
        q_ineq: inst.q,
        q_eq: 0,
        bounds,
        epsilon_eq: DEFAULT_EPSILON_EQ,
        problem,
    };
    spec.validate()?;
    Ok(spec)
}

/// Build a problem straight from its id.
pub fn problem(id: &str) -> Result<ProblemSpec> {
    make_problem(&id.parse()?)
}

/// Population size and evaluation budget used for each instance.
pub fn default_budget(inst: &SuiteInstance) -> (usize, usize) {
    match inst.suite {
        Suite::Mw => (100, 60_000),
        Suite::Lircmop | Suite::Dascmop => (300, 300_000),
        Suite::Cdtlz => match inst.index {
            1 => (92, 46_000),
            2 => (92, 92_000),
            3 => (92, 23_000),
            _ => (92, 69_000),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_budgets() {
        let mw1: SuiteInstance = "mw1".parse().unwrap();
        assert_eq!((mw1.n, mw1.m, mw1.q), (15, 2, 1));
        let l13: SuiteInstance = "lircmop13".parse().unwrap();
        assert_eq!((l13.n, l13.m), (30, 3));
        let c: SuiteInstance = "c1_dtlz1".parse().unwrap();
        assert_eq!((c.n, c.m), (7, 3));
        assert_eq!(default_budget(&"mw4".parse().unwrap()), (100, 60_000));
        assert_eq!(default_budget(&"c2_dtlz2".parse().unwrap()), (92, 23_000));
        assert_eq!(default_budget(&"dascmop7".parse().unwrap()), (300, 300_000));
        assert!("mw15".parse::<SuiteInstance>().is_err());
        assert!("zdt1".parse::<SuiteInstance>().is_err());
    }

    #[test]
    fn globbing() {
        assert_eq!(resolve_ids(&["mw*".into()]).unwrap().len(), 14);
        assert_eq!(resolve_ids(&["c*dtlz*".into()]).unwrap().len(), 5);
        assert_eq!(resolve_ids(&["mw1".into(), "mw1".into()]).unwrap(), vec!["mw1"]);
        assert!(resolve_ids(&["xyz*".into()]).is_err());
        assert_eq!(all_ids().len(), 42);
    }

    #[test]
    fn every_instance_builds() {
        for id in all_ids() {
            let spec = problem(&id).unwrap();
            let x: Vec<f64> = spec.bounds.iter().map(|(l, u)| 0.5 * (l + u)).collect();
            let r = spec.problem.evaluate(&x);
            assert_eq!(r.f.len(), spec.m, "{id}");
            assert_eq!(r.g.len(), spec.q(), "{id}");
        }
    }
}
