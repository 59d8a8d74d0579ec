//! Rays of `k`-cliques: a shared clique `Q_0`, and for each ray `ρ` cliques
//! `Q^ρ_1, Q^ρ_2, …`, with consecutive cliques completely joined. Every
//! ray is one end. With `bridge = b > 0`, vertex 0 of `Q^ρ_b` is also
//! joined to vertex 0 of `Q^{ρ+1}_b`.
//!
//! Addresses: `q0.p` for `Q_0`, `q<i><ρ>.p` for `Q^ρ_i`, with the ray as a
//! letter (`a`, `b`, …) and `0 <= p < k`. The root is `q0.0`; ends are
//! `ray:a`, `ray:b`, ….
//!
//! The tail `T^ρ_i = ⋃_{j≥i} Q^ρ_j` (`i ≥ 1`) is cut off by `Q^ρ_{i-1}`
//! plus, when `i ≤ b`, the bridge partners of its bridge vertex. Each
//! vertex of `Q^ρ_i` has `k` neighbors in `Q^ρ_{i-1}` and `k - 1` in
//! `Q^ρ_i`, so a tail past the bridge level has `δ⁺ = d⁺ = 2k - 1`, and its
//! complement is connected. Interior vertices have degree `3k - 1`.

use crate::ends::{EndId, EndOracle, RegionStream};
use crate::error::{Error, Result};
use crate::graph::{Family, GraphHandle, Partition, SeparationOracle, VertexId, VertexSet};
use crate::regions::{OracleKind, Region};

use super::levels::{self, Leveled};

const NAME: &str = "clique_ray";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    level: usize,
    ray: u32,
    p: u32,
}

#[derive(Clone, Debug)]
pub struct CliqueRay {
    k: u32,
    rays: u32,
    bridge: usize,
}

fn letter(ray: u32) -> char {
    (b'a' + ray as u8) as char
}

impl CliqueRay {
    pub fn new(k: u32, rays: u32, bridge: u32) -> Self {
        CliqueRay {
            k,
            rays,
            bridge: bridge as usize,
        }
    }

    fn id(&self, pos: Pos) -> VertexId {
        if pos.level == 0 {
            VertexId::from(format!("q0.{}", pos.p))
        } else {
            VertexId::from(format!("q{}{}.{}", pos.level, letter(pos.ray), pos.p))
        }
    }

    fn parse(&self, v: &VertexId) -> Result<Pos> {
        let bad = || Error::address(v.as_str(), NAME);
        let s = v.as_str().strip_prefix('q').ok_or_else(bad)?;
        let (head, p) = s.split_once('.').ok_or_else(bad)?;
        let digits_end = head.find(|c: char| !c.is_ascii_digit()).unwrap_or(head.len());
        let (lvl, ray) = head.split_at(digits_end);
        let canonical = |x: &str| !x.is_empty() && (x == "0" || !x.starts_with('0'));
        if !canonical(lvl) || !canonical(p) || !p.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let level: usize = lvl.parse().map_err(|_| bad())?;
        let p: u32 = p.parse().map_err(|_| bad())?;
        let ray = match (level, ray.as_bytes()) {
            (0, []) => 0,
            (l, [c]) if l > 0 && c.is_ascii_lowercase() => (c - b'a') as u32,
            _ => return Err(bad()),
        };
        if p >= self.k || ray >= self.rays {
            return Err(bad());
        }
        Ok(Pos { level, ray, p })
    }

    fn clique(&self, level: usize, ray: u32) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.k).map(move |p| self.id(Pos { level, ray, p }))
    }

    fn bridge_partners(&self, level: usize, ray: u32) -> Vec<VertexId> {
        let mut out = Vec::new();
        if self.bridge > 0 && level == self.bridge {
            if ray > 0 {
                out.push(self.id(Pos { level, ray: ray - 1, p: 0 }));
            }
            if ray + 1 < self.rays {
                out.push(self.id(Pos { level, ray: ray + 1, p: 0 }));
            }
        }
        out
    }

    /// `T^ρ_i` for `i ≥ 1`.
    pub fn tail(&self, ray: u32, i: usize) -> Region {
        assert!(i >= 1 && ray < self.rays);
        let mut sep: Vec<VertexId> = self.clique(i - 1, ray).collect();
        if i <= self.bridge {
            sep.extend(self.bridge_partners(self.bridge, ray));
        }
        Region::new(sep, self.id(Pos { level: i, ray, p: 0 }), OracleKind::Exact)
            .expect("seed lies above the separator")
    }

    pub fn end_name(ray: u32) -> EndId {
        EndId::new(format!("ray:{}", letter(ray)))
    }

    fn end_ray(&self, end: &EndId) -> Result<u32> {
        let bad = || Error::Parse(format!("unknown end {end} for family {NAME}"));
        match end.as_str().strip_prefix("ray:").map(str::as_bytes) {
            Some([c]) if c.is_ascii_lowercase() && ((c - b'a') as u32) < self.rays => Ok((c - b'a') as u32),
            _ => Err(bad()),
        }
    }
}

impl Family for CliqueRay {
    fn root(&self) -> VertexId {
        self.id(Pos { level: 0, ray: 0, p: 0 })
    }

    fn neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        let pos = self.parse(v)?;
        let mut out: Vec<VertexId> = self.clique(pos.level, pos.ray).filter(|w| w != v).collect();
        if pos.level == 0 {
            for ray in 0..self.rays {
                out.extend(self.clique(1, ray));
            }
        } else {
            out.extend(self.clique(pos.level - 1, pos.ray));
            out.extend(self.clique(pos.level + 1, pos.ray));
            if pos.p == 0 {
                out.extend(self.bridge_partners(pos.level, pos.ray));
            }
        }
        out.sort();
        Ok(out)
    }

    fn separation(&self) -> Option<&dyn SeparationOracle> {
        Some(self)
    }
}

impl Leveled for CliqueRay {
    fn level(&self, v: &VertexId) -> Result<usize> {
        Ok(self.parse(v)?.level)
    }

    fn level_vertices(&self, n: usize) -> Vec<VertexId> {
        if n == 0 {
            return self.clique(0, 0).collect();
        }
        (0..self.rays).flat_map(|ray| self.clique(n, ray)).collect()
    }

    fn tail_count(&self, above: usize) -> usize {
        if above < self.bridge {
            1
        } else {
            self.rays as usize
        }
    }

    fn tail_of(&self, v: &VertexId, above: usize) -> Result<usize> {
        let pos = self.parse(v)?;
        Ok(if above < self.bridge { 0 } else { pos.ray as usize })
    }

    fn graph_neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        self.neighbors(v)
    }
}

impl SeparationOracle for CliqueRay {
    fn partition<'a>(&'a self, separator: &VertexSet) -> Result<Box<dyn Partition + 'a>> {
        levels::partition(self, separator)
    }
}

pub struct CliqueRayEnds {
    g: GraphHandle,
    f: CliqueRay,
}

impl CliqueRayEnds {
    pub fn new(g: GraphHandle, f: CliqueRay) -> Self {
        CliqueRayEnds { g, f }
    }
}

impl EndOracle for CliqueRayEnds {
    fn graph(&self) -> &GraphHandle {
        &self.g
    }

    fn ends(&self) -> Box<dyn Iterator<Item = EndId> + Send + '_> {
        let rays = self.f.rays;
        Box::new((0..rays).cycle().map(CliqueRay::end_name))
    }

    fn finite_ends(&self) -> Option<Vec<EndId>> {
        Some((0..self.f.rays).map(CliqueRay::end_name).collect())
    }

    fn parse_end(&self, s: &str) -> Result<EndId> {
        let e = EndId::new(s);
        self.f.end_ray(&e)?;
        Ok(e)
    }

    fn ray(&self, end: &EndId, n: usize) -> Result<Vec<VertexId>> {
        let ray = self.f.end_ray(end)?;
        Ok((0..n).map(|level| self.f.id(Pos { level, ray, p: 0 })).collect())
    }

    fn tail_start(&self, end: &EndId, sep: &VertexSet) -> Result<usize> {
        self.f.end_ray(end)?;
        let mut top = None;
        for s in sep {
            let l = self.f.level(s)?;
            top = Some(top.map_or(l, |t: usize| t.max(l)));
        }
        Ok(top.map_or(0, |t| t + 1))
    }

    fn defining_sequences(&self, end: &EndId) -> Result<Vec<RegionStream>> {
        let ray = self.f.end_ray(end)?;
        let f = self.f.clone();
        Ok(vec![Box::new((1usize..).map(move |i| f.tail(ray, i)))])
    }
}

/// All tails, level by level and ray by ray within a level. Nested: tails
/// of one ray form a chain and tails of different rays are disjoint.
pub fn tail_family(f: CliqueRay) -> RegionStream {
    let rays = f.rays;
    Box::new((1usize..).flat_map(move |i| {
        let f = f.clone();
        (0..rays).map(move |ray| f.tail(ray, i))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{FamilyKind, FamilySpec};
    use crate::generators::make_graph;
    use crate::regions::{complement_connected, out_stats, Budget, OutDegree, Tri};

    fn v(s: &str) -> VertexId {
        VertexId::new(s)
    }

    #[test]
    fn addresses() {
        let f = CliqueRay::new(3, 2, 0);
        assert_eq!(f.parse(&v("q12b.2")).unwrap(), Pos { level: 12, ray: 1, p: 2 });
        for bad in ["q0a.0", "q1.0", "q1c.0", "q1a.3", "q01a.0", "q1a.01", "x1a.0", "q1A.0"] {
            assert!(f.parse(&v(bad)).is_err(), "{bad}");
        }
    }

    #[test]
    fn degrees() {
        let g = make_graph(&FamilySpec::new(FamilyKind::CliqueRay, 4)).unwrap();
        assert_eq!(g.degree(&v("q0.1")).unwrap(), 3 + 4);
        assert_eq!(g.degree(&v("q5a.1")).unwrap(), 11);
    }

    #[test]
    fn tails_are_good() {
        let g = make_graph(&FamilySpec::new(FamilyKind::CliqueRay, 3)).unwrap();
        let f = CliqueRay::new(3, 1, 0);
        let b = Budget::unlimited();
        for i in 1..6 {
            let r = f.tail(0, i);
            let s = out_stats(&g, &r, &b).unwrap();
            assert_eq!(s.boundary.len(), 3);
            assert_eq!(s.min, OutDegree::Finite(5));
            assert_eq!(complement_connected(&g, &r, &b).unwrap(), Tri::Yes);
        }
    }

    #[test]
    fn bridged_tails_are_separate_components() {
        let spec = FamilySpec::new(FamilyKind::CliqueRay, 2).with_rays(2).with_bridge(2);
        let g = make_graph(&spec).unwrap();
        let f = CliqueRay::new(2, 2, 2);
        let b = Budget::unlimited();
        let ta = f.tail(0, 1);
        let tb = f.tail(1, 1);
        assert_eq!(
            crate::regions::nestedness(&g, &ta, &tb, &b).unwrap(),
            crate::regions::Nestedness::Disjoint
        );
        let s = out_stats(&g, &ta, &b).unwrap();
        assert_eq!(s.boundary, vec![v("q1a.0"), v("q1a.1"), v("q2a.0")]);
        assert!(g.neighbors(&v("q2a.0")).unwrap().contains(&v("q2b.0")));
    }
}
