use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::VertexId;
use crate::report::ExtractionReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why an end oracle could not produce a good region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExhaustReason {
    /// The generator certifies that no region of the requested kind exists
    /// for this end, so the extraction premise fails.
    PremiseFails,
    /// The scanned prefix of the defining sequences held no qualifying region.
    BudgetTooSmall,
}

impl fmt::Display for ExhaustReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExhaustReason::PremiseFails => f.write_str("premise fails (certified by generator)"),
            ExhaustReason::BudgetTooSmall => f.write_str("no qualifying region within budget"),
        }
    }
}

/// Why `cover_ends` gave up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverFailure {
    /// Family regions avoiding the base vertex exist but none passes the mode.
    RegionsFailMode { region: String },
    /// Regions passing the mode exist but the residual stays infinite in this
    /// direction: the family prefix is not a basis within budget.
    NotABasis { direction: VertexId },
    /// The family produced no region avoiding the base vertex at all.
    NoRegions,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed address {address:?} for family {family}")]
    Address { address: String, family: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("descriptor error: {0}")]
    Descriptor(String),

    #[error("oracle budget exhausted after {spent} queries")]
    Budget { spent: u64 },

    #[error("membership undecided within budget for {} vertices", undecided.len())]
    Indeterminate { undecided: Vec<VertexId> },

    #[error("oracle exhausted for end {end}: {reason}")]
    OracleExhausted { end: String, reason: ExhaustReason },

    #[error("cover search failed: {0:?}")]
    Cover(CoverFailure),

    #[error("family is not nested: {0}")]
    NotNested(String),

    #[error("window has {size} vertices, limit is {limit}")]
    Size { size: usize, limit: usize },

    #[error("iteration budget exceeded after {} steps", .0.history.len())]
    IterationBudget(Box<ExtractionReport>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn address(address: impl Into<String>, family: impl Into<String>) -> Self {
        Error::Address {
            address: address.into(),
            family: family.into(),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by running out of query or iteration budget.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::Budget { .. }
                | Error::Indeterminate { .. }
                | Error::IterationBudget(_)
                | Error::Cover(_)
                | Error::OracleExhausted {
                    reason: ExhaustReason::BudgetTooSmall,
                    ..
                }
        )
    }

    /// True when a generator certified that the theorem's premise fails.
    pub fn is_premise_failure(&self) -> bool {
        matches!(
            self,
            Error::OracleExhausted {
                reason: ExhaustReason::PremiseFails,
                ..
            }
        )
    }
}
