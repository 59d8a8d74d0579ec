//! The `k`-regular tree drawn in the plane with every level closed into a
//! cycle: planar, one end, all degrees at least `k`.
//!
//! Addresses as in the branching tree: the root has successors `r.0` to
//! `r.(k-1)`, every other vertex `k - 1` successors. Level `n` is ordered
//! lexicographically by successor indices and closed cyclically; a level of
//! two vertices gets a single edge. The one end is named `top`.

use crate::ends::{EndId, EndOracle, RegionStream};
use crate::error::{Error, Result};
use crate::graph::{Family, GraphHandle, Partition, SeparationOracle, VertexId, VertexSet};
use crate::regions::{OracleKind, Region};

use super::levels::{self, Leveled};
use super::tokens::{self, Token};

const NAME: &str = "leveled_tree_cycles";

#[derive(Clone, Debug)]
pub struct LeveledTreeCycles {
    k: u32,
}

impl LeveledTreeCycles {
    pub fn new(k: u32) -> Self {
        LeveledTreeCycles { k }
    }

    fn radix(&self, position: usize) -> u64 {
        if position == 0 {
            self.k as u64
        } else {
            self.k as u64 - 1
        }
    }

    fn parse(&self, v: &VertexId) -> Result<Vec<u32>> {
        let t = tokens::parse_address(v, NAME)?;
        t.iter()
            .enumerate()
            .map(|(p, t)| match *t {
                Token::Up(m) if (m as u64) < self.radix(p) => Ok(m),
                _ => Err(Error::address(v.as_str(), NAME)),
            })
            .collect()
    }

    fn level_size(&self, n: usize) -> u64 {
        (0..n).map(|p| self.radix(p)).product()
    }

    fn index(&self, digits: &[u32]) -> u64 {
        digits
            .iter()
            .enumerate()
            .fold(0, |acc, (p, &d)| acc * self.radix(p) + d as u64)
    }

    fn from_index(&self, n: usize, mut idx: u64) -> VertexId {
        let mut digits = vec![0u32; n];
        for p in (0..n).rev() {
            let r = self.radix(p);
            digits[p] = (idx % r) as u32;
            idx /= r;
        }
        let t: Vec<Token> = digits.into_iter().map(Token::Up).collect();
        tokens::address(&t)
    }
}

impl Family for LeveledTreeCycles {
    fn root(&self) -> VertexId {
        tokens::address(&[])
    }

    fn neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        let digits = self.parse(v)?;
        let n = digits.len();
        let mut out: Vec<VertexId> = (0..self.radix(n))
            .map(|m| tokens::child(v, Token::Up(m as u32)))
            .collect();
        out.extend(tokens::parent(v));
        let size = self.level_size(n);
        if size >= 2 {
            let i = self.index(&digits);
            out.push(self.from_index(n, (i + 1) % size));
            out.push(self.from_index(n, (i + size - 1) % size));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    fn separation(&self) -> Option<&dyn SeparationOracle> {
        Some(self)
    }
}

impl Leveled for LeveledTreeCycles {
    fn level(&self, v: &VertexId) -> Result<usize> {
        Ok(self.parse(v)?.len())
    }

    fn level_vertices(&self, n: usize) -> Vec<VertexId> {
        (0..self.level_size(n)).map(|i| self.from_index(n, i)).collect()
    }

    fn tail_count(&self, _above: usize) -> usize {
        1
    }

    fn tail_of(&self, _v: &VertexId, _above: usize) -> Result<usize> {
        Ok(0)
    }

    fn graph_neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        self.neighbors(v)
    }
}

impl SeparationOracle for LeveledTreeCycles {
    fn partition<'a>(&'a self, separator: &VertexSet) -> Result<Box<dyn Partition + 'a>> {
        levels::partition(self, separator)
    }
}

/// The part above level `n`, cut off by level `n`.
pub fn level_tail(f: &LeveledTreeCycles, n: usize) -> Region {
    Region::new(f.level_vertices(n), f.from_index(n + 1, 0), OracleKind::Exact)
        .expect("seed lies above the separator")
}

pub struct LeveledEnds {
    g: GraphHandle,
    f: LeveledTreeCycles,
}

impl LeveledEnds {
    pub fn new(g: GraphHandle, k: u32) -> Self {
        LeveledEnds {
            g,
            f: LeveledTreeCycles::new(k),
        }
    }

    fn check(&self, end: &EndId) -> Result<()> {
        if end.as_str() == "top" {
            Ok(())
        } else {
            Err(Error::Parse(format!("unknown end {end} for family {NAME}")))
        }
    }
}

impl EndOracle for LeveledEnds {
    fn graph(&self) -> &GraphHandle {
        &self.g
    }

    fn ends(&self) -> Box<dyn Iterator<Item = EndId> + Send + '_> {
        Box::new(std::iter::repeat(EndId::new("top")))
    }

    fn finite_ends(&self) -> Option<Vec<EndId>> {
        Some(vec![EndId::new("top")])
    }

    fn parse_end(&self, s: &str) -> Result<EndId> {
        let e = EndId::new(s);
        self.check(&e)?;
        Ok(e)
    }

    fn ray(&self, end: &EndId, n: usize) -> Result<Vec<VertexId>> {
        self.check(end)?;
        Ok((0..n).map(|i| self.f.from_index(i, 0)).collect())
    }

    fn tail_start(&self, end: &EndId, sep: &VertexSet) -> Result<usize> {
        self.check(end)?;
        let mut top = None;
        for s in sep {
            let l = self.f.level(s)?;
            top = Some(top.map_or(l, |t: usize| t.max(l)));
        }
        Ok(top.map_or(0, |t| t + 1))
    }

    fn defining_sequences(&self, end: &EndId) -> Result<Vec<RegionStream>> {
        self.check(end)?;
        let f = self.f.clone();
        Ok(vec![Box::new((0usize..).map(move |n| level_tail(&f, n)))])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{FamilyKind, FamilySpec};
    use crate::generators::make_graph;
    use crate::regions::{components, Budget};

    #[test]
    fn degrees_and_cycles() {
        let g = make_graph(&FamilySpec::new(FamilyKind::LeveledTreeCycles, 4)).unwrap();
        assert_eq!(g.degree(&g.root()).unwrap(), 4);
        // Level 1 is a 4-cycle; r.0 has the root, 3 successors, 2 cycle neighbors.
        let n: Vec<String> = g.neighbors(&VertexId::new("r.0")).unwrap().iter().map(|v| v.to_string()).collect();
        assert_eq!(n, ["r", "r.0.0", "r.0.1", "r.0.2", "r.1", "r.3"]);
        // The last vertex of level 2 wraps to the first.
        let last = VertexId::new("r.3.2");
        assert!(g.neighbors(&last).unwrap().contains(&VertexId::new("r.0.0")));
        let ball = g.ball(&g.root(), 4).unwrap();
        for i in 0..ball.len() {
            assert!(ball.true_degree(i) >= 4);
        }
    }

    #[test]
    fn removing_a_level_leaves_inside_and_outside() {
        let g = make_graph(&FamilySpec::new(FamilyKind::LeveledTreeCycles, 3)).unwrap();
        let f = LeveledTreeCycles::new(3);
        let sep: VertexSet = f.level_vertices(2).into_iter().collect();
        let comps = components(&g, &sep, &Budget::unlimited()).unwrap();
        assert_eq!(comps.len(), 2);
        let finite: Vec<_> = comps.iter().filter_map(|c| c.finite.clone()).collect();
        assert_eq!(finite.len(), 1);
        assert_eq!(finite[0].len(), 4);
    }

    #[test]
    fn ladder_for_k2() {
        let g = make_graph(&FamilySpec::new(FamilyKind::LeveledTreeCycles, 2)).unwrap();
        assert_eq!(g.degree(&VertexId::new("r.1.0.0")).unwrap(), 3);
    }
}
