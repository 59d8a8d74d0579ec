//! Built-in families with exact separation oracles, end oracles and
//! nested region families.

pub mod branching_tree;
pub mod clique_ray;
mod cone;
mod finite;
pub mod leveled_cycles;
mod levels;
pub mod theorem3;
mod token_ends;
pub mod tokens;

use crate::ends::{EndOracle, RegionStream};
use crate::error::Result;
use crate::family::{FamilyKind, FamilySpec};
use crate::graph::{GraphHandle, VertexId};
use crate::window::Window;

use branching_tree::{BranchingTree, TreeEnds};
use clique_ray::{CliqueRay, CliqueRayEnds};
use leveled_cycles::{LeveledEnds, LeveledTreeCycles};
use theorem3::{Theorem3, Theorem3Ends};

pub fn make_graph(spec: &FamilySpec) -> Result<GraphHandle> {
    spec.validate()?;
    let family: Box<dyn crate::graph::Family> = match spec.family {
        FamilyKind::BranchingTree => Box::new(BranchingTree::new(spec.k)),
        FamilyKind::LeveledTreeCycles => Box::new(LeveledTreeCycles::new(spec.k)),
        FamilyKind::Theorem3 => Box::new(Theorem3::new(spec.k)),
        FamilyKind::CliqueRay => Box::new(CliqueRay::new(spec.k, spec.rays, spec.bridge)),
    };
    Ok(GraphHandle::new(spec.family.as_str(), Some(spec.clone()), family))
}

/// A finite graph backed by `window` (true degrees are ignored).
pub fn window_graph(name: &str, window: Window, root: VertexId) -> GraphHandle {
    GraphHandle::new(name, None, Box::new(finite::WindowFamily::new(window, root)))
}

pub fn canonical_end_oracle(spec: &FamilySpec) -> Result<Box<dyn EndOracle>> {
    let g = make_graph(spec)?;
    Ok(match spec.family {
        FamilyKind::BranchingTree => Box::new(TreeEnds::new(g, spec.k)),
        FamilyKind::LeveledTreeCycles => Box::new(LeveledEnds::new(g, spec.k)),
        FamilyKind::Theorem3 => Box::new(Theorem3Ends::new(g, spec.k)),
        FamilyKind::CliqueRay => Box::new(CliqueRayEnds::new(
            g,
            CliqueRay::new(spec.k, spec.rays, spec.bridge),
        )),
    })
}

/// The family's nested regions: single-vertex up-closures in the
/// construction tree for the tree-like families, tails for the leveled
/// ones. Nestedness follows from the tree or level structure.
pub fn canonical_nested_family(spec: &FamilySpec) -> Result<RegionStream> {
    spec.validate()?;
    Ok(match spec.family {
        FamilyKind::BranchingTree => branching_tree::cone_family(spec.k),
        FamilyKind::Theorem3 => theorem3::cone_family(make_graph(spec)?, spec.k),
        FamilyKind::LeveledTreeCycles => {
            let f = LeveledTreeCycles::new(spec.k);
            Box::new((0usize..).map(move |n| leveled_cycles::level_tail(&f, n)))
        }
        FamilyKind::CliqueRay => {
            clique_ray::tail_family(CliqueRay::new(spec.k, spec.rays, spec.bridge))
        }
    })
}
