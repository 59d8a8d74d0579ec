//! Ends named by generators, their canonical rays and defining sequences.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ExhaustReason, Result};
use crate::graph::{GraphHandle, Rational, VertexId, VertexSet};
use crate::regions::{self, Budget, Goodness, OutDegree, Region, RegionView, Tri};

/// A family-specific end name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EndId(String);

impl EndId {
    pub fn new(s: impl Into<String>) -> Self {
        EndId(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EndId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A lazy stream of strictly decreasing regions.
pub type RegionStream = Box<dyn Iterator<Item = Region> + Send>;

/// Generator contract for ends.
pub trait EndOracle: Send + Sync {
    fn graph(&self) -> &GraphHandle;

    /// Enumeration of ends; lazy and possibly infinite.
    fn ends(&self) -> Box<dyn Iterator<Item = EndId> + Send + '_>;

    /// All ends, when there are finitely many.
    fn finite_ends(&self) -> Option<Vec<EndId>>;

    /// Validates and canonicalizes an end name.
    fn parse_end(&self, s: &str) -> Result<EndId>;

    /// The first `n` vertices of the end's canonical ray.
    fn ray(&self, end: &EndId, n: usize) -> Result<Vec<VertexId>>;

    /// An index `i` such that the ray from `ray[i]` on lies in a connected
    /// subgraph avoiding `sep`, hence in one component of `G - sep`.
    fn tail_start(&self, end: &EndId, sep: &VertexSet) -> Result<usize>;

    /// The family's defining sequences for `end`, in preference order.
    fn defining_sequences(&self, end: &EndId) -> Result<Vec<RegionStream>>;

    /// True when the family proves that no region with this goodness holds
    /// a tail of `end`.
    fn certifies_no_good_region(&self, _end: &EndId, _mode: &Goodness) -> bool {
        false
    }
}

/// First vertex of the end's ray past `tail_start`: its component of
/// `G - sep` is the one the end lives in.
pub fn tail_vertex(oracle: &dyn EndOracle, end: &EndId, sep: &VertexSet) -> Result<VertexId> {
    let i = oracle.tail_start(end, sep)?;
    Ok(oracle.ray(end, i + 1)?.pop().expect("ray prefix is nonempty"))
}

/// Whether `end` lives in `region`. The ray walk up to the certified tail
/// costs one query per vertex.
pub fn lives_in(oracle: &dyn EndOracle, end: &EndId, region: &Region, budget: &Budget) -> Result<Tri> {
    let i = oracle.tail_start(end, &region.separator_set())?;
    if !budget.charge(i as u64 + 1) {
        return Ok(Tri::Unknown);
    }
    let v = oracle.ray(end, i + 1)?.pop().expect("ray prefix is nonempty");
    regions::contains(oracle.graph(), region, &v, budget)
}

/// Whether the region meets `avoid`.
pub fn meets(g: &GraphHandle, region: &Region, avoid: &VertexSet, budget: &Budget) -> Result<Tri> {
    let view = RegionView::new(g, region, budget)?;
    let mut unknown = false;
    for v in avoid {
        match view.contains(v, budget)? {
            Tri::Yes => return Ok(Tri::Yes),
            Tri::No => {}
            Tri::Unknown => unknown = true,
        }
    }
    Ok(if unknown { Tri::Unknown } else { Tri::No })
}

/// Scans up to `scan` regions of each defining sequence of `end` for one
/// that avoids `avoid` and passes `mode`, recomputing goodness itself.
pub fn good_region_for(
    oracle: &dyn EndOracle,
    end: &EndId,
    avoid: &VertexSet,
    mode: &Goodness,
    scan: usize,
    budget: &Budget,
) -> Result<Region> {
    let g = oracle.graph();
    for seq in oracle.defining_sequences(end)? {
        for region in seq.take(scan) {
            if meets(g, &region, avoid, budget)? != Tri::No {
                continue;
            }
            if regions::goodness_of(g, &region, mode, budget)? == Tri::Yes {
                return Ok(region);
            }
        }
    }
    let reason = if oracle.certifies_no_good_region(end, mode) {
        ExhaustReason::PremiseFails
    } else {
        ExhaustReason::BudgetTooSmall
    };
    Err(Error::OracleExhausted {
        end: end.to_string(),
        reason,
    })
}

/// `(δ⁺, d⁺)` for the first `depth` regions of a sequence.
pub fn limit_degree_profile(
    g: &GraphHandle,
    sequence: impl Iterator<Item = Region>,
    depth: usize,
    budget: &Budget,
) -> Result<Vec<(OutDegree, Option<Rational>)>> {
    sequence
        .take(depth)
        .map(|r| regions::out_stats(g, &r, budget).map(|s| (s.min, s.avg)))
        .collect()
}

/// Checks a finite prefix of a defining sequence: consecutive regions
/// strictly decrease, and the last one misses the ball of radius `radius`
/// around the root.
pub fn check_sequence_prefix(g: &GraphHandle, prefix: &[Region], radius: usize, budget: &Budget) -> Result<bool> {
    for pair in prefix.windows(2) {
        if regions::nestedness(g, &pair[1], &pair[0], budget)? != regions::Nestedness::Subset {
            return Ok(false);
        }
    }
    let Some(last) = prefix.last() else {
        return Ok(true);
    };
    let ball = g.ball(&g.root(), radius)?;
    let avoid: VertexSet = ball.vertices().iter().cloned().collect();
    Ok(meets(g, last, &avoid, budget)? == Tri::No)
}
