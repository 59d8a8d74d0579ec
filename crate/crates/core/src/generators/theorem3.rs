//! The self-similar graph in which every tree-vertex has `k + 1`
//! successors, each successor set forms a `K_{k+1}` with every edge
//! subdivided once, and every subdividing vertex is the root of a fresh
//! copy of the same structure, iterated without bound.
//!
//! Addresses: `r` is the root; `A.m` (`0 <= m <= k`) is successor `m` of
//! `A`; `A*i-j` (`i < j <= k`) subdivides the edge between `A.i` and `A.j`
//! and is itself the root of a copy, so its successors are `A*i-j.m`.
//! Heights count tokens: a subdividing vertex sits at the height of the
//! two tree-vertices it joins, its successors one level higher.
//!
//! Degrees: the base root has `k + 1`, other tree-vertices `2k + 2`,
//! subdividing vertices `k + 3`.

use std::collections::VecDeque;

use crate::ends::{EndId, EndOracle, RegionStream};
use crate::error::{Error, Result};
use crate::graph::{Family, GraphHandle, Partition, SeparationOracle, VertexId, VertexSet};
use crate::regions::{OracleKind, Region};

use super::cone::{self, ConeTree};
use super::token_ends::{TokenEnd, TokenEndIter};
use super::tokens::{self, Token};

const NAME: &str = "theorem3";

#[derive(Clone, Debug)]
pub struct Theorem3 {
    k: u32,
}

impl Theorem3 {
    pub fn new(k: u32) -> Self {
        Theorem3 { k }
    }

    fn valid(&self, t: Token) -> bool {
        match t {
            Token::Up(m) => m <= self.k,
            Token::Sub(i, j) => i < j && j <= self.k,
        }
    }

    fn parse(&self, v: &VertexId) -> Result<Vec<Token>> {
        let t = tokens::parse_address(v, NAME)?;
        if t.iter().all(|&t| self.valid(t)) {
            Ok(t)
        } else {
            Err(Error::address(v.as_str(), NAME))
        }
    }

    fn alphabet(&self) -> Vec<Token> {
        let mut a: Vec<Token> = (0..=self.k).map(Token::Up).collect();
        for i in 0..=self.k {
            for j in i + 1..=self.k {
                a.push(Token::Sub(i, j));
            }
        }
        a
    }
}

impl ConeTree for Theorem3 {
    fn tree_children(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        self.parse(v)?;
        Ok(self.alphabet().into_iter().map(|t| tokens::child(v, t)).collect())
    }

    fn graph_neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        self.neighbors(v)
    }
}

impl SeparationOracle for Theorem3 {
    fn partition<'a>(&'a self, separator: &VertexSet) -> Result<Box<dyn Partition + 'a>> {
        cone::partition(self, separator)
    }
}

impl Family for Theorem3 {
    fn root(&self) -> VertexId {
        tokens::address(&[])
    }

    fn neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        let t = self.parse(v)?;
        let mut out: Vec<VertexId> = (0..=self.k).map(|m| tokens::child(v, Token::Up(m))).collect();
        if let Some(&last) = t.last() {
            let b = tokens::address(&t[..t.len() - 1]);
            match last {
                Token::Up(i) => {
                    out.push(b.clone());
                    for j in (0..=self.k).filter(|&j| j != i) {
                        out.push(tokens::child(&b, Token::sub(i, j)));
                    }
                }
                Token::Sub(i, j) => {
                    out.push(tokens::child(&b, Token::Up(i)));
                    out.push(tokens::child(&b, Token::Up(j)));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    fn separation(&self) -> Option<&dyn SeparationOracle> {
        Some(self)
    }

    fn height(&self, v: &VertexId) -> Option<usize> {
        self.parse(v).ok().map(|t| t.len())
    }
}

/// `C_s` for `s = B*i-j`: the up-closure of `{B.i, s, B.j}`. Its neighbors
/// are `B` and the other subdividing vertices at `B.i` and `B.j`.
pub fn c_s(k: u32, s: &VertexId) -> Result<Region> {
    let t = Theorem3::new(k).parse(s)?;
    let Some(&Token::Sub(i, j)) = t.last() else {
        return Err(Error::domain(format!("{s} is not a subdividing vertex")));
    };
    let b = tokens::address(&t[..t.len() - 1]);
    let mut sep = vec![b.clone()];
    for m in (0..=k).filter(|&m| m != i && m != j) {
        sep.push(tokens::child(&b, Token::sub(i, m)));
        sep.push(tokens::child(&b, Token::sub(j, m)));
    }
    Region::new(sep, s.clone(), OracleKind::Exact)
}

/// The two tree-vertices joined by a subdividing vertex.
pub fn subdivided_pair(s: &VertexId) -> Option<(VertexId, VertexId)> {
    let t = tokens::parse_tokens(s.as_str().strip_prefix('r')?)?;
    let Some(&Token::Sub(i, j)) = t.last() else {
        return None;
    };
    let b = tokens::address(&t[..t.len() - 1]);
    Some((tokens::child(&b, Token::Up(i)), tokens::child(&b, Token::Up(j))))
}

/// The cone `U(x)` of a non-root vertex: its neighbors outside the cone.
pub fn cone_region(g: &GraphHandle, x: &VertexId) -> Result<Region> {
    let sep: Vec<VertexId> = g
        .neighbors(x)?
        .iter()
        .filter(|w| !tokens::is_prefix(x.as_str(), w.as_str()))
        .cloned()
        .collect();
    Region::new(sep, x.clone(), OracleKind::Exact)
}

/// Ends along rays whose vertical edges all go up. Each end has one
/// defining sequence of `C_s` regions: `C_x` at a subdividing ray vertex
/// `x`, and at a non-root tree-vertex `t` the `C_s` for the subdividing
/// vertex the ray moves to next, or for the first one at `t` when the ray
/// goes straight up.
pub struct Theorem3Ends {
    g: GraphHandle,
    k: u32,
}

impl Theorem3Ends {
    pub fn new(g: GraphHandle, k: u32) -> Self {
        Theorem3Ends { g, k }
    }

    fn end(&self, end: &EndId) -> Result<TokenEnd> {
        let f = Theorem3::new(self.k);
        TokenEnd::parse(end.as_str(), NAME, |t| f.valid(t))
    }
}

struct CsSequence {
    k: u32,
    end: TokenEnd,
    /// Ray vertices generated so far, with the index of the next to read.
    ray: Vec<(VertexId, bool)>,
    pos: usize,
    last: Option<VertexId>,
}

impl CsSequence {
    fn vertex(&mut self, i: usize) -> VertexId {
        if i >= self.ray.len() {
            self.ray = self.end.ray(2 * i + 8, true);
        }
        self.ray[i].0.clone()
    }
}

impl Iterator for CsSequence {
    type Item = Region;

    fn next(&mut self) -> Option<Region> {
        loop {
            let x = self.vertex(self.pos);
            let next = self.vertex(self.pos + 1);
            self.pos += 1;
            let t = tokens::parse_tokens(&x.as_str()[1..]).expect("ray vertices are valid");
            let s = match t.last() {
                None => continue,
                Some(Token::Sub(..)) => x,
                Some(&Token::Up(i)) => {
                    let parent = tokens::parent(&x).expect("non-root");
                    if tokens::parent(&next).as_ref() == Some(&parent) {
                        next
                    } else {
                        let j = if i == 0 { 1 } else { 0 };
                        tokens::child(&parent, Token::sub(i, j))
                    }
                }
            };
            if self.last.as_ref() == Some(&s) {
                continue;
            }
            self.last = Some(s.clone());
            return Some(c_s(self.k, &s).expect("s is a subdividing vertex"));
        }
    }
}

impl EndOracle for Theorem3Ends {
    fn graph(&self) -> &GraphHandle {
        &self.g
    }

    fn ends(&self) -> Box<dyn Iterator<Item = EndId> + Send + '_> {
        Box::new(TokenEndIter::new(Theorem3::new(self.k).alphabet()))
    }

    fn finite_ends(&self) -> Option<Vec<EndId>> {
        None
    }

    fn parse_end(&self, s: &str) -> Result<EndId> {
        Ok(self.end(&EndId::new(s))?.id())
    }

    fn ray(&self, end: &EndId, n: usize) -> Result<Vec<VertexId>> {
        Ok(self.end(end)?.ray(n, true).into_iter().map(|(v, _)| v).collect())
    }

    fn tail_start(&self, end: &EndId, sep: &VertexSet) -> Result<usize> {
        Ok(self.end(end)?.tail_start(sep, true))
    }

    fn defining_sequences(&self, end: &EndId) -> Result<Vec<RegionStream>> {
        Ok(vec![Box::new(CsSequence {
            k: self.k,
            end: self.end(end)?,
            ray: Vec::new(),
            pos: 0,
            last: None,
        })])
    }
}

/// Single-vertex up-closures `U(x)`, breadth-first over the address tree.
/// The `C_s` regions are not offered as a nested family: they cross.
pub fn cone_family(g: GraphHandle, k: u32) -> RegionStream {
    let f = Theorem3::new(k);
    let mut queue = VecDeque::from([tokens::address(&[])]);
    Box::new(
        std::iter::from_fn(move || {
            let v = queue.pop_front()?;
            queue.extend(f.tree_children(&v).expect("generated addresses are valid"));
            Some(v)
        })
        .skip(1)
        .map(move |v| cone_region(&g, &v).expect("generated addresses are valid")),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{FamilyKind, FamilySpec};
    use crate::generators::make_graph;
    use crate::regions::{complement_connected, out_stats, Budget, OutDegree, Tri};

    fn graph(k: u32) -> GraphHandle {
        make_graph(&FamilySpec::new(FamilyKind::Theorem3, k)).unwrap()
    }

    fn v(s: &str) -> VertexId {
        VertexId::new(s)
    }

    #[test]
    fn local_structure() {
        let g = graph(3);
        assert_eq!(g.degree(&g.root()).unwrap(), 4);
        assert_eq!(g.degree(&v("r.1")).unwrap(), 8);
        let n: Vec<String> = g.neighbors(&v("r.0*1-2")).unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(
            n,
            ["r.0*1-2.0", "r.0*1-2.1", "r.0*1-2.2", "r.0*1-2.3", "r.0.1", "r.0.2"]
        );
        assert!(g.neighbors(&v("r*2-1")).is_err());
        assert!(g.neighbors(&v("r.4")).is_err());
        assert_eq!(g.height(&v("r.0*1-2.3")), Some(3));
    }

    #[test]
    fn c_s_statistics() {
        let g = graph(3);
        let b = Budget::unlimited();
        let r = c_s(3, &v("r.2*0-3")).unwrap();
        assert_eq!(r.separator().len(), 5);
        let s = out_stats(&g, &r, &b).unwrap();
        assert_eq!(s.boundary, vec![v("r.2.0"), v("r.2.3")]);
        assert_eq!(s.min, OutDegree::Finite(3));
        assert_eq!(complement_connected(&g, &r, &b).unwrap(), Tri::Yes);
        assert!(c_s(3, &v("r.2")).is_err());
    }

    #[test]
    fn sequence_follows_the_ray() {
        let g = graph(2);
        let ends = Theorem3Ends::new(g, 2);
        let e = ends.parse_end(".1(*0-2.0)").unwrap();
        let seq = ends.defining_sequences(&e).unwrap().remove(0);
        let seeds: Vec<String> = seq.take(4).map(|r| r.seed().to_string()).collect();
        assert_eq!(seeds, ["r*0-1", "r.1*0-2", "r.1*0-2*0-1", "r.1*0-2.0*0-2"]);
    }
}
