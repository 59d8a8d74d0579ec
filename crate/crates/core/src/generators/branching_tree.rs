//! The rooted tree `T_k` in which every vertex has `k` successors.
//!
//! Addresses: `r` is the root, `r.i` its successors (`0 <= i < k`), `r.i.j`
//! theirs, and so on. Ends are eventually periodic successor sequences,
//! written `prefix(period)`, e.g. `.1(.0)`.

use crate::ends::{EndId, EndOracle, RegionStream};
use crate::error::{Error, Result};
use crate::graph::{Family, GraphHandle, Partition, Rational, SeparationOracle, VertexId, VertexSet};
use crate::regions::{Goodness, OracleKind, Region, Threshold};

use super::cone::{self, ConeTree};
use super::token_ends::{TokenEnd, TokenEndIter};
use super::tokens::{self, Token};

const NAME: &str = "branching_tree";

#[derive(Clone, Debug)]
pub struct BranchingTree {
    k: u32,
}

impl BranchingTree {
    pub fn new(k: u32) -> Self {
        BranchingTree { k }
    }

    fn parse(&self, v: &VertexId) -> Result<Vec<Token>> {
        let t = tokens::parse_address(v, NAME)?;
        if t.iter().all(|t| matches!(t, Token::Up(m) if *m < self.k)) {
            Ok(t)
        } else {
            Err(Error::address(v.as_str(), NAME))
        }
    }
}

impl ConeTree for BranchingTree {
    fn tree_children(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        self.parse(v)?;
        Ok((0..self.k).map(|m| tokens::child(v, Token::Up(m))).collect())
    }

    fn graph_neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        self.neighbors(v)
    }
}

impl SeparationOracle for BranchingTree {
    fn partition<'a>(&'a self, separator: &VertexSet) -> Result<Box<dyn Partition + 'a>> {
        cone::partition(self, separator)
    }
}

impl Family for BranchingTree {
    fn root(&self) -> VertexId {
        tokens::address(&[])
    }

    fn neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        self.parse(v)?;
        let mut out = self.tree_children(v)?;
        out.extend(tokens::parent(v));
        out.sort();
        Ok(out)
    }

    fn separation(&self) -> Option<&dyn SeparationOracle> {
        Some(self)
    }
}

/// Ends of `T_k` with two sequences each: `U(t) ∪ {t⁻}` for ray vertices
/// `t` whose predecessor is not the root (`δ⁺ = d⁺ = k`, and `G - C` has
/// `k` components), and the cones `U(t)` (`δ⁺ = 1`, connected complement).
pub struct TreeEnds {
    g: GraphHandle,
    k: u32,
}

impl TreeEnds {
    pub fn new(g: GraphHandle, k: u32) -> Self {
        TreeEnds { g, k }
    }

    fn end(&self, end: &EndId) -> Result<TokenEnd> {
        let k = self.k;
        TokenEnd::parse(end.as_str(), NAME, |t| matches!(t, Token::Up(m) if m < k))
    }
}

/// `U(t) ∪ {t⁻}` for `t` at depth at least 2.
pub fn parent_pair_region(k: u32, t: &VertexId) -> Region {
    let parent = tokens::parent(t).expect("t is not the root");
    let grand = tokens::parent(&parent).expect("t has depth at least 2");
    let mut sep = vec![grand];
    for m in 0..k {
        let c = tokens::child(&parent, Token::Up(m));
        if &c != t {
            sep.push(c);
        }
    }
    Region::new(sep, t.clone(), OracleKind::Exact).expect("t is not a separator vertex")
}

/// The cone `U(t)` of a non-root vertex.
pub fn cone_region(t: &VertexId) -> Region {
    let parent = tokens::parent(t).expect("t is not the root");
    Region::new([parent], t.clone(), OracleKind::Exact).expect("t is not its parent")
}

impl EndOracle for TreeEnds {
    fn graph(&self) -> &GraphHandle {
        &self.g
    }

    fn ends(&self) -> Box<dyn Iterator<Item = EndId> + Send + '_> {
        Box::new(TokenEndIter::new((0..self.k).map(Token::Up).collect()))
    }

    fn finite_ends(&self) -> Option<Vec<EndId>> {
        (self.k == 1).then(|| vec![EndId::new("(.0)")])
    }

    fn parse_end(&self, s: &str) -> Result<EndId> {
        Ok(self.end(&EndId::new(s))?.id())
    }

    fn ray(&self, end: &EndId, n: usize) -> Result<Vec<VertexId>> {
        Ok(self.end(end)?.ray(n, false).into_iter().map(|(v, _)| v).collect())
    }

    fn tail_start(&self, end: &EndId, sep: &VertexSet) -> Result<usize> {
        Ok(self.end(end)?.tail_start(sep, false))
    }

    fn defining_sequences(&self, end: &EndId) -> Result<Vec<RegionStream>> {
        let e = self.end(end)?;
        let k = self.k;
        let pairs = {
            let e = e.clone();
            (2usize..).map(move |n| parent_pair_region(k, &tokens::address(&e.tokens(n))))
        };
        let cones = (1usize..).map(move |n| cone_region(&tokens::address(&e.tokens(n))));
        Ok(vec![Box::new(pairs), Box::new(cones)])
    }

    /// In a tree, a region with connected complement is joined to it by a
    /// single edge, so its one boundary vertex has out-degree 1.
    fn certifies_no_good_region(&self, _end: &EndId, mode: &Goodness) -> bool {
        mode.connected_complement
            && match mode.threshold {
                Threshold::MinDegree(k) => k >= 2,
                Threshold::AvgDegree(q) => q >= Rational::from_integer(1),
            }
    }
}

/// Up-closures `U(x)` of all non-root vertices, breadth-first.
pub fn cone_family(k: u32) -> RegionStream {
    let mut queue = std::collections::VecDeque::from([tokens::address(&[])]);
    Box::new(std::iter::from_fn(move || {
        let v = queue.pop_front()?;
        for m in 0..k {
            queue.push_back(tokens::child(&v, Token::Up(m)));
        }
        Some(v)
    })
    .filter(|v| v.as_str() != "r")
    .map(|v| cone_region(&v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{FamilyKind, FamilySpec};
    use crate::generators::make_graph;
    use crate::regions::{complement_component_count, out_stats, Budget, OutDegree};

    #[test]
    fn degrees() {
        let g = make_graph(&FamilySpec::new(FamilyKind::BranchingTree, 3)).unwrap();
        assert_eq!(g.degree(&g.root()).unwrap(), 3);
        assert_eq!(g.degree(&VertexId::new("r.2.0")).unwrap(), 4);
        assert!(g.neighbors(&VertexId::new("r.3")).is_err());
        assert!(g.neighbors(&VertexId::new("r*0-1")).is_err());
    }

    #[test]
    fn canonical_pair_sequence() {
        let g = make_graph(&FamilySpec::new(FamilyKind::BranchingTree, 3)).unwrap();
        let ends = TreeEnds::new(g.clone(), 3);
        let e = ends.parse_end(".2(.1)").unwrap();
        let b = Budget::unlimited();
        let seq = ends.defining_sequences(&e).unwrap().remove(0);
        for r in seq.take(5) {
            let s = out_stats(&g, &r, &b).unwrap();
            assert_eq!(s.min, OutDegree::Finite(3));
            assert_eq!(s.boundary.len(), 1);
            assert_eq!(complement_component_count(&g, &r, &b).unwrap(), Some(3));
        }
    }

    #[test]
    fn cone_family_skips_root() {
        let first: Vec<String> = cone_family(2).take(3).map(|r| r.seed().to_string()).collect();
        assert_eq!(first, ["r.0", "r.1", "r.0.0"]);
    }
}
