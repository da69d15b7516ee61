//! Constrained multi-objective evolutionary optimization built around a
//! lexicographic (constraint violation, sum of objectives) ranking combined
//! with shift-based density estimation.
//!
//! The crate is organised bottom-up:
//!
//! - [`domain`]: solutions, populations, problem contract, constraint violation
//! - [`fitness`]: SOB, SDE shift and the fitness assignments built from them
//! - [`operators`]: SBX, polynomial mutation, DE/rand/1
//! - [`engine`]: the generational loop and its selection steps
//! - [`problems`]: MW, LIRCMOP, C-DTLZ and DASCMOP suites
//! - [`indicators`]: exact hypervolume
//! - [`stats`]: Wilcoxon signed-rank marks and Friedman ranks
//! - [`cli`]: experiment configuration, scheduling and reporting

pub mod cli;
pub mod domain;
pub mod engine;
pub mod error;
pub mod fitness;
pub mod indicators;
pub mod operators;
pub mod pareto;
pub mod problems;
pub mod rng;
pub mod stats;

pub use domain::{Budget, Population, Problem, ProblemSpec, RawEvaluation, Solution};
pub use engine::{AlgorithmConfig, RunRecord, Variant};
pub use error::{Error, Result};
pub use indicators::{HvConfig, HvNormalization};
pub use operators::{OperatorConfig, OperatorKind};
pub use rng::RandomStream;
