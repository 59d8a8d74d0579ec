//! Serializable extraction reports.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ends::EndId;
use crate::family::FamilySpec;
use crate::graph::{rational_str, Rational, VertexId};
use crate::regions::Region;
use crate::window::Window;

pub const SCHEMA_VERSION: u32 = 1;

/// What the extracted subgraph must satisfy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `δ(H) ≥ k`, from regions with `δ⁺ ≥ k`.
    MinDegree { k: u32 },
    /// `d(H) > q`, from regions with `d⁺ > q`, starting from `s0`.
    AvgDegree {
        #[serde(with = "rational_str")]
        q: Rational,
        s0: Vec<VertexId>,
    },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::MinDegree { k } => write!(f, "min degree >= {k}"),
            Mode::AvgDegree { q, .. } => write!(f, "average degree > {q}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Procedure {
    /// Grow a connected separator until every component is good; `H` is
    /// the separator with its neighborhood.
    Separator,
    /// Cover the ends by disjoint good regions from a nested family; `H` is
    /// the residual with the regions' boundaries.
    Cover,
}

/// `H` as recorded in a report. Degrees are degrees inside `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgraph {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
    pub degrees: Vec<usize>,
}

impl Subgraph {
    pub fn from_window(w: &Window) -> Self {
        Subgraph {
            vertices: w.vertices().to_vec(),
            edges: w.edges(),
            degrees: (0..w.len()).map(|i| w.degree(i)).collect(),
        }
    }

    pub fn empty() -> Self {
        Subgraph {
            vertices: Vec::new(),
            edges: Vec::new(),
            degrees: Vec::new(),
        }
    }
}

/// One processed end of the separator procedure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    pub end: EndId,
    /// `S_n` after the step.
    pub separator: Vec<VertexId>,
    /// The good component of `G - S_n` the end lives in.
    pub region: Region,
    /// Whether a new region was taken from the end oracle.
    pub adopted: bool,
    /// Vertices added to the separator in this step.
    pub added: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    /// The end living in the region, when known.
    pub end: Option<EndId>,
    pub region: Region,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Usage {
    pub oracle_queries: u64,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionReport {
    pub schema_version: u32,
    pub procedure: Procedure,
    pub graph: String,
    pub family: Option<FamilySpec>,
    pub mode: Mode,
    /// Initial separator `S_0` (separator procedure).
    pub initial_separator: Vec<VertexId>,
    /// Final separator (separator procedure).
    pub separator: Vec<VertexId>,
    /// Base vertex and residual `X` (cover procedure).
    pub base: Option<VertexId>,
    pub residual: Vec<VertexId>,
    /// Regions covering the ends: per end for the separator procedure, the
    /// disjoint cover for the cover procedure.
    pub regions: Vec<Assignment>,
    pub h: Subgraph,
    pub min_degree: Option<usize>,
    #[serde(with = "crate::regions::opt_rational")]
    pub avg_degree: Option<Rational>,
    pub history: Vec<StepRecord>,
    pub usage: Usage,
    /// False for partial reports cut off by a budget.
    pub complete: bool,
}

impl ExtractionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
