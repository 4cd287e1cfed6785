//! End-to-end constructions: validate the input, alternate type realizing
//! and duplicator steps level by level, then certify the result.

mod digraph;
mod family;
mod graph;

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::duplicator::{DuplicatorError, DuplicatorOptions, FactAudit};
use crate::structures::{PartialPermorphism, ValidationReport, Violation};
use crate::typerealize::{ColorScope, RealizeOptions, TypeError};
use crate::verify::CertificateReport;

pub use digraph::extend_digraph;
pub use family::{enumerate_tournaments, reduce_family, FamilySpec, MAX_ENUMERATION};
pub use graph::{extend_colored, extend_graph};

/// Limits and switches shared by all levels.
#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub cap_group: usize,
    pub cap_structure: usize,
    /// Guard on `|Γ| · (|U| + |C|)` for the group tables.
    pub max_table_entries: usize,
    pub color_scope: ColorScope,
    /// Enforce uniform palette cardinalities and pair coverage of the maps.
    pub strict_ledger: bool,
    pub homomorphism_samples: usize,
    pub seed: u64,
    /// Certify every intermediate level, not just the final result.
    pub verify_levels: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            cap_group: 100_000,
            cap_structure: 100_000,
            max_table_entries: 60_000_000,
            color_scope: ColorScope::Orbit,
            strict_ledger: false,
            homomorphism_samples: 100,
            seed: 0x5eed,
            verify_levels: false,
        }
    }
}

impl PipelineConfig {
    fn realize(&self, level: usize) -> RealizeOptions {
        RealizeOptions {
            level,
            cap_structure: self.cap_structure,
        }
    }

    fn duplicate(&self, level: usize) -> DuplicatorOptions {
        DuplicatorOptions {
            level,
            cap_group: self.cap_group,
            cap_structure: self.cap_structure,
            max_table_entries: self.max_table_entries,
            homomorphism_samples: self.homomorphism_samples,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum PipelineError {
    #[error("input is not free: {0}")]
    NotFree(ValidationReport),
    #[error("invalid input: {0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Types(#[from] TypeError),
    #[error(transparent)]
    Duplicator(#[from] DuplicatorError),
    #[error("strict ledger: {0}")]
    Ledger(String),
    #[error("level {level}: intermediate certificate failed: {report}")]
    LevelCertificate { level: usize, report: CertificateReport },
    #[error("internal consistency check failed at level {level}: {report}")]
    Bookkeeping { level: usize, report: ValidationReport },
    #[error("tournament enumeration is limited to {max} vertices, asked for {n}")]
    EnumerationBound { n: usize, max: usize },
}

impl PipelineError {
    /// Aborts caused by a configured cap rather than by the input.
    pub fn is_cap_abort(&self) -> bool {
        matches!(
            self,
            PipelineError::Types(TypeError::StructureTooLarge { .. } | TypeError::ScopeTooLarge { .. })
                | PipelineError::Duplicator(DuplicatorError::GroupTooLarge { .. } | DuplicatorError::StructureTooLarge { .. })
        )
    }
}

fn classify(report: ValidationReport) -> Result<(), PipelineError> {
    if report.is_admissible() {
        Ok(())
    } else if report.violations.iter().all(|v| matches!(v, Violation::NotFree { .. })) {
        Err(PipelineError::NotFree(report))
    } else {
        Err(PipelineError::Invalid(report))
    }
}

/// Whether a level added colours and recursed, or ran the duplicator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelKind {
    Inductive,
    Base,
}

/// What happened at one level of the recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelStats {
    pub level: usize,
    pub kind: LevelKind,
    /// Clique size excluded at this level, or the largest forbidden
    /// tournament.
    pub bound: usize,
    pub base_len: usize,
    pub color_count: usize,
    pub scope_len: usize,
    pub carrier_len: usize,
    pub constants: Vec<usize>,
    pub classes_checked: usize,
    /// Colours added for the next level (inductive levels).
    pub new_colors: usize,
    pub group_order: Option<usize>,
    pub quotient_len: Option<usize>,
    pub facts: Option<FactAudit>,
}

/// The extension `B` with total maps `f_i`, its certificate and statistics.
#[derive(Clone, Debug)]
pub struct ExtensionResult<S> {
    pub structure: S,
    pub automorphisms: Vec<PartialPermorphism>,
    pub certificate: CertificateReport,
    pub stats: Vec<LevelStats>,
}

impl<S> ExtensionResult<S> {
    /// Order of the largest group built by a duplicator step.
    pub fn group_order(&self) -> Option<usize> {
        self.stats.iter().filter_map(|s| s.group_order).max()
    }
}

/// Total maps on `B` built from class tables, keeping the colour parts.
fn total_maps(tables: Vec<Vec<usize>>, maps: &[PartialPermorphism]) -> Vec<PartialPermorphism> {
    tables
        .into_iter()
        .zip(maps)
        .map(|(f, p)| {
            let len = f.len();
            PartialPermorphism::new(len, f.into_iter().enumerate(), p.chi().clone()).expect("class maps are bijections")
        })
        .collect()
}

/// Names for a block of new colours, avoiding existing ones.
fn fresh_color_names(existing: &[String], prefix: &str, labels: impl Iterator<Item = String>) -> Vec<String> {
    let taken: alloc::collections::BTreeSet<&str> = existing.iter().map(String::as_str).collect();
    labels
        .map(|l| {
            let mut name = alloc::format!("{prefix}{l}");
            while taken.contains(name.as_str()) {
                name.insert(0, '~');
            }
            name
        })
        .collect()
}
