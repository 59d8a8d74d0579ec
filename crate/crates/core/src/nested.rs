//! Extraction over a nested family of regions: cover the ends by finitely
//! many disjoint good regions, keep what is left over, and add the
//! regions' boundaries. Also builds nested families from per-end defining
//! sequences.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::ends::{self, EndId, EndOracle};
use crate::error::{CoverFailure, Error, Result};
use crate::extract2::{absorb_finite_components, goodness_for};
use crate::family::FamilySpec;
use crate::generators;
use crate::graph::{GraphHandle, VertexId, VertexSet};
use crate::regions::{self, Budget, Nestedness, Region, RegionView, Tri};
use crate::report::{Assignment, ExtractionReport, Mode, Procedure, Subgraph, Usage, SCHEMA_VERSION};
use crate::window::Window;

/// Where the nestedness of a family comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Guaranteed by the generator's construction.
    Generator,
    /// Built by the avoid-the-neighborhoods construction.
    Corollary5,
    /// Every pair was checked.
    Checked,
}

/// A finite prefix of a nested family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestedFamily {
    pub provenance: Provenance,
    pub regions: Vec<Region>,
    /// The end each region was chosen for, when known.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ends: Vec<EndId>,
}

impl NestedFamily {
    /// The first `n` regions of a built-in family's nested family.
    pub fn generator(spec: &FamilySpec, n: usize) -> Result<Self> {
        Ok(NestedFamily {
            provenance: Provenance::Generator,
            regions: generators::canonical_nested_family(spec)?.take(n).collect(),
            ends: Vec::new(),
        })
    }

    /// Checks every pair and marks the family as checked.
    pub fn checked(g: &GraphHandle, regions: Vec<Region>, budget: &Budget) -> Result<Self> {
        if let Some((i, j, rel)) = first_unnested_pair(g, &regions, budget)? {
            return Err(Error::NotNested(format!(
                "regions {i} and {j}: {rel:?} ({} vs {})",
                regions[i], regions[j]
            )));
        }
        Ok(NestedFamily {
            provenance: Provenance::Checked,
            regions,
            ends: Vec::new(),
        })
    }
}

/// The first pair `(i, j)`, `i < j`, that is crossing or undecided.
pub fn first_unnested_pair(
    g: &GraphHandle,
    regions: &[Region],
    budget: &Budget,
) -> Result<Option<(usize, usize, Nestedness)>> {
    for j in 0..regions.len() {
        for i in 0..j {
            let rel = regions::nestedness(g, &regions[i], &regions[j], budget)?;
            if !rel.is_nested() {
                return Ok(Some((i, j, rel)));
            }
        }
    }
    Ok(None)
}

/// Keeps the maximal regions of a nested list, first copy of equal ones,
/// in input order. The result is pairwise disjoint.
pub fn disjointify(g: &GraphHandle, regions: &[Region], budget: &Budget) -> Result<Vec<Region>> {
    let mut dropped = vec![false; regions.len()];
    for i in 0..regions.len() {
        for j in i + 1..regions.len() {
            if dropped[i] || dropped[j] {
                continue;
            }
            match regions::nestedness(g, &regions[i], &regions[j], budget)? {
                Nestedness::Disjoint => {}
                Nestedness::Subset => dropped[i] = true,
                Nestedness::Superset | Nestedness::Equal => dropped[j] = true,
                rel @ (Nestedness::Crossing { .. } | Nestedness::Unknown) => {
                    return Err(Error::NotNested(format!("{} and {}: {rel:?}", regions[i], regions[j])))
                }
            }
        }
    }
    Ok(regions
        .iter()
        .zip(dropped)
        .filter(|(_, d)| !d)
        .map(|(r, _)| r.clone())
        .collect())
}

fn tri(t: Tri, budget: &Budget) -> Result<bool> {
    match t {
        Tri::Yes => Ok(true),
        Tri::No => Ok(false),
        Tri::Unknown => Err(Error::Budget { spent: budget.spent() }),
    }
}

/// Frontier search from `v` for finitely many disjoint family regions
/// passing `mode` whose complement is finite. The explored set starts at
/// `{v}`; each round, a frontier component of `G - X` that coincides with
/// a family region passing the mode is closed, and `X` grows by its
/// neighborhood inside the open components. Components are handled in
/// order of their least boundary neighbor.
pub fn cover_ends(
    g: &GraphHandle,
    family: &[Region],
    v: &VertexId,
    mode: &Mode,
    rounds: usize,
    budget: &Budget,
) -> Result<Vec<Region>> {
    let goodness = goodness_for(mode);
    let usable: Vec<&Region> = {
        let mut out = Vec::new();
        for r in family {
            if !tri(regions::contains(g, r, v, budget)?, budget)? {
                out.push(r);
            }
        }
        out
    };
    if usable.is_empty() {
        return Err(Error::Cover(CoverFailure::NoRegions));
    }
    let mut x = VertexSet::from([v.clone()]);
    absorb_finite_components(g, &mut x, budget)?;
    let mut closed: Vec<Region> = Vec::new();
    let mut failed: Option<Region> = None;
    for _ in 0..=rounds {
        let mut open: Vec<Region> = Vec::new();
        for c in regions::components(g, &x, budget)? {
            let frontier = c.region;
            if closed.iter().any(|r| r.seed() == frontier.seed()) {
                continue;
            }
            let view = RegionView::new(g, &frontier, budget)?;
            let mut matched = None;
            for r in &usable {
                if !tri(view.contains(r.seed(), budget)?, budget)? {
                    continue;
                }
                if regions::nestedness(g, &frontier, r, budget)? == Nestedness::Equal {
                    matched = Some((*r).clone());
                    break;
                }
            }
            match matched {
                Some(r) if regions::goodness_of(g, &r, &goodness, budget)? == Tri::Yes => {
                    closed.push(Region::in_graph(g, x.iter().cloned(), frontier.seed().clone())?);
                }
                Some(r) => {
                    failed.get_or_insert(r);
                    open.push(frontier);
                }
                None => open.push(frontier),
            }
        }
        if open.is_empty() {
            // Report the family's own regions, which are the closed
            // components as vertex sets.
            let mut out = Vec::with_capacity(closed.len());
            for c in &closed {
                let view = RegionView::new(g, c, budget)?;
                for r in &usable {
                    if tri(view.contains(r.seed(), budget)?, budget)?
                        && regions::nestedness(g, c, r, budget)? == Nestedness::Equal
                    {
                        out.push((*r).clone());
                        break;
                    }
                }
            }
            return disjointify(g, &out, budget);
        }
        let mut grow = VertexSet::new();
        for frontier in &open {
            let view = RegionView::new(g, frontier, budget)?;
            grow.extend(view.boundary(budget)?);
        }
        x.extend(grow);
        absorb_finite_components(g, &mut x, budget)?;
        // Closed regions are recorded with the explored set they were cut
        // off by; they stay components since only open ones grow.
        closed = closed
            .into_iter()
            .map(|c| Region::in_graph(g, x.iter().cloned(), c.seed().clone()))
            .collect::<Result<_>>()?;
    }
    Err(Error::Cover(match failed {
        Some(r) => CoverFailure::RegionsFailMode { region: r.to_string() },
        None => {
            let direction = regions::components(g, &x, budget)?
                .into_iter()
                .map(|c| c.region.seed().clone())
                .next()
                .unwrap_or_else(|| v.clone());
            CoverFailure::NotABasis { direction }
        }
    }))
}

/// `X`: the vertices in none of the regions, found by search from `v` and
/// the regions' neighborhoods. Fails with a budget error if `X` turns out
/// larger than `limit` vertices.
pub fn residual(g: &GraphHandle, cover: &[Region], v: &VertexId, limit: usize, budget: &Budget) -> Result<Window> {
    let views: Vec<RegionView> = cover
        .iter()
        .map(|r| RegionView::new(g, r, budget))
        .collect::<Result<_>>()?;
    let in_cover = |w: &VertexId| -> Result<bool> {
        for view in &views {
            if tri(view.contains(w, budget)?, budget)? {
                return Ok(true);
            }
        }
        Ok(false)
    };
    if in_cover(v)? {
        return Err(Error::domain(format!("base vertex {v} lies in a chosen region")));
    }
    let mut seen = BTreeSet::from([v.clone()]);
    // With edges between regions, N(C) can meet another region.
    for view in &views {
        for w in view.neighborhood(budget)? {
            if !in_cover(&w)? {
                seen.insert(w);
            }
        }
    }
    let mut queue: VecDeque<VertexId> = seen.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        if seen.len() > limit {
            return Err(Error::Budget { spent: budget.spent() });
        }
        for w in g.neighbors(&x)?.iter() {
            if !seen.contains(w) && !in_cover(w)? {
                seen.insert(w.clone());
                queue.push_back(w.clone());
            }
        }
    }
    g.induced_window(&seen)
}

/// `H`: the residual together with the regions' vertex boundaries, with
/// all edges of `G` among them.
pub fn assemble_h(g: &GraphHandle, x: &Window, cover: &[Region], budget: &Budget) -> Result<Window> {
    let mut all: VertexSet = x.vertices().iter().cloned().collect();
    for r in cover {
        all.extend(regions::vertex_boundary(g, r, budget)?);
    }
    g.induced_window(&all)
}

/// Cover procedure with a given cover: residual, `H`, and the end each
/// region holds when the generator lists its ends.
pub fn extract_with_cover(
    oracle: &dyn EndOracle,
    cover: Vec<Region>,
    v: &VertexId,
    mode: &Mode,
    limit: usize,
    budget: &Budget,
) -> Result<ExtractionReport> {
    let g = oracle.graph();
    let x = residual(g, &cover, v, limit, budget)?;
    let h = assemble_h(g, &x, &cover, budget)?;
    let known = oracle.finite_ends().unwrap_or_default();
    let mut assignments = Vec::with_capacity(cover.len());
    for r in cover {
        let mut end = None;
        for e in &known {
            if ends::lives_in(oracle, e, &r, budget)? == Tri::Yes {
                end = Some(e.clone());
                break;
            }
        }
        assignments.push(Assignment { end, region: r });
    }
    Ok(ExtractionReport {
        schema_version: SCHEMA_VERSION,
        procedure: Procedure::Cover,
        graph: g.name().to_string(),
        family: g.spec().cloned(),
        mode: mode.clone(),
        initial_separator: Vec::new(),
        separator: Vec::new(),
        base: Some(v.clone()),
        residual: x.vertices().to_vec(),
        regions: assignments,
        min_degree: h.min_degree(),
        avg_degree: h.avg_degree(),
        h: Subgraph::from_window(&h),
        history: Vec::new(),
        usage: Usage {
            oracle_queries: budget.spent(),
            iterations: 0,
        },
        complete: true,
    })
}

/// Cover procedure over a nested family: `cover_ends`, then residual and
/// `H`.
pub fn extract4(
    oracle: &dyn EndOracle,
    family: &NestedFamily,
    v: &VertexId,
    mode: &Mode,
    rounds: usize,
    budget: &Budget,
) -> Result<ExtractionReport> {
    let cover = cover_ends(oracle.graph(), &family.regions, v, mode, rounds, budget)?;
    extract_with_cover(oracle, cover, v, mode, usize::MAX, budget)
}

/// Order in which ends are fed to [`corollary5_nest`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndSchedule {
    /// Cycle through the generator's finite list of ends.
    RoundRobin,
    /// `ω₁; ω₁ ω₂; ω₁ ω₂ ω₃; …` over the enumeration, so every end recurs.
    Triangular,
}

/// An end stream in which every end occurs infinitely often.
pub fn end_stream<'a>(oracle: &'a dyn EndOracle, schedule: EndSchedule) -> Result<Box<dyn Iterator<Item = EndId> + 'a>> {
    match schedule {
        EndSchedule::RoundRobin => {
            let all = oracle
                .finite_ends()
                .ok_or_else(|| Error::domain("round-robin needs a finite list of ends"))?;
            if all.is_empty() {
                return Err(Error::domain("the family lists no ends"));
            }
            Ok(Box::new(all.into_iter().cycle()))
        }
        EndSchedule::Triangular => {
            let mut seen: Vec<EndId> = Vec::new();
            let mut src = oracle.ends();
            let mut block = 0usize;
            let mut pos = 0usize;
            Ok(Box::new(std::iter::from_fn(move || {
                if pos == block {
                    block += 1;
                    pos = 0;
                    while seen.len() < block {
                        let e = src.next()?;
                        if !seen.contains(&e) {
                            seen.push(e);
                        }
                    }
                }
                pos += 1;
                Some(seen[pos - 1].clone())
            })))
        }
    }
}

/// Builds `count` regions: for each end from the stream, the first region
/// of its first defining sequence that was not chosen before and misses
/// `N(C₁) ∪ … ∪ N(Cₙ₋₁)`. Any two such regions are disjoint or nested,
/// since a connected region missing `N(Cᵢ)` lies inside `Cᵢ` or outside it.
pub fn corollary5_nest(
    oracle: &dyn EndOracle,
    schedule: EndSchedule,
    count: usize,
    scan: usize,
    budget: &Budget,
) -> Result<NestedFamily> {
    let g = oracle.graph();
    let mut avoid = VertexSet::new();
    let mut chosen: Vec<Region> = Vec::new();
    let mut chosen_ends: Vec<EndId> = Vec::new();
    let mut stream = end_stream(oracle, schedule)?;
    while chosen.len() < count {
        let end = stream.next().expect("end streams are infinite");
        let seq = oracle
            .defining_sequences(&end)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::domain(format!("no defining sequence for {end}")))?;
        let mut pick = None;
        for r in seq.take(scan) {
            if chosen.contains(&r) {
                continue;
            }
            match ends::meets(g, &r, &avoid, budget)? {
                Tri::No => {
                    pick = Some(r);
                    break;
                }
                Tri::Yes => {}
                Tri::Unknown => return Err(Error::Budget { spent: budget.spent() }),
            }
        }
        let Some(r) = pick else {
            return Err(Error::OracleExhausted {
                end: end.to_string(),
                reason: crate::error::ExhaustReason::BudgetTooSmall,
            });
        };
        avoid.extend(regions::exact_neighborhood(g, &r, budget)?);
        chosen.push(r);
        chosen_ends.push(end);
    }
    Ok(NestedFamily {
        provenance: Provenance::Corollary5,
        regions: chosen,
        ends: chosen_ends,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilyKind;
    use crate::generators::{canonical_end_oracle, clique_ray::CliqueRay, make_graph, window_graph};

    fn v(s: &str) -> VertexId {
        VertexId::new(s)
    }

    fn glued(k: u32) -> FamilySpec {
        FamilySpec::new(FamilyKind::CliqueRay, k).with_rays(2)
    }

    #[test]
    fn disjointify_keeps_maximal_regions() {
        let g = make_graph(&FamilySpec::new(FamilyKind::CliqueRay, 2)).unwrap();
        let f = CliqueRay::new(2, 1, 0);
        let b = Budget::unlimited();
        let chain = vec![f.tail(0, 1), f.tail(0, 2), f.tail(0, 3)];
        assert_eq!(disjointify(&g, &chain, &b).unwrap(), vec![f.tail(0, 1)]);
        let rev: Vec<Region> = chain.iter().rev().cloned().collect();
        assert_eq!(disjointify(&g, &rev, &b).unwrap(), vec![f.tail(0, 1)]);

        let g2 = make_graph(&glued(2)).unwrap();
        let f2 = CliqueRay::new(2, 2, 0);
        let apart = vec![f2.tail(0, 2), f2.tail(1, 1)];
        assert_eq!(disjointify(&g2, &apart, &b).unwrap(), apart);
        let mixed = vec![f2.tail(0, 3), f2.tail(1, 2), f2.tail(0, 1), f2.tail(1, 4)];
        assert_eq!(disjointify(&g2, &mixed, &b).unwrap(), vec![f2.tail(1, 2), f2.tail(0, 1)]);
    }

    #[test]
    fn single_ray_cover() {
        let spec = FamilySpec::new(FamilyKind::CliqueRay, 3);
        let g = make_graph(&spec).unwrap();
        let fam = NestedFamily::generator(&spec, 20).unwrap();
        let b = Budget::unlimited();
        let cover = cover_ends(&g, &fam.regions, &v("q0.1"), &Mode::MinDegree { k: 3 }, 10, &b).unwrap();
        assert_eq!(cover.len(), 1);
        let x = residual(&g, &cover, &v("q0.1"), 1000, &b).unwrap();
        let i: usize = cover[0].seed().as_str()[1..2].parse().unwrap();
        assert_eq!(x.len(), 3 * i);
        let h = assemble_h(&g, &x, &cover, &b).unwrap();
        assert_eq!(h.len(), 3 * (i + 1));
        assert!(h.min_degree().unwrap() >= 3);
    }

    #[test]
    fn glued_rays_give_two_disjoint_regions() {
        let spec = glued(2);
        let oracle = canonical_end_oracle(&spec).unwrap();
        let fam = NestedFamily::generator(&spec, 20).unwrap();
        let b = Budget::unlimited();
        let r = extract4(oracle.as_ref(), &fam, &v("q0.0"), &Mode::MinDegree { k: 2 }, 10, &b).unwrap();
        assert_eq!(r.regions.len(), 2);
        let ends: Vec<_> = r.regions.iter().map(|a| a.end.clone().unwrap().to_string()).collect();
        assert_eq!(ends, ["ray:a", "ray:b"]);
        assert!(r.min_degree.unwrap() >= 2);
    }

    #[test]
    fn residual_avoids_regions_joined_by_edges() {
        let spec = glued(3).with_bridge(2);
        let g = make_graph(&spec).unwrap();
        let f = CliqueRay::new(3, 2, 2);
        let b = Budget::unlimited();
        let cover = [f.tail(0, 1), f.tail(1, 1)];
        let x = residual(&g, &cover, &v("q0.0"), 1000, &b).unwrap();
        assert_eq!(x.len(), 3);
        let h = assemble_h(&g, &x, &cover, &b).unwrap();
        assert!(h.edges().contains(&(v("q2a.0"), v("q2b.0"))));
        assert!(h.min_degree().unwrap() >= 3);
    }

    #[test]
    fn tree_cones_fail_the_mode() {
        let spec = FamilySpec::new(FamilyKind::BranchingTree, 2);
        let g = make_graph(&spec).unwrap();
        let fam = NestedFamily::generator(&spec, 30).unwrap();
        let err = cover_ends(&g, &fam.regions, &g.root(), &Mode::MinDegree { k: 2 }, 3, &Budget::unlimited())
            .unwrap_err();
        assert!(matches!(err, Error::Cover(CoverFailure::RegionsFailMode { .. })), "{err}");
    }

    #[test]
    fn empty_cover_on_a_finite_graph_is_everything() {
        let w = Window::from_edges(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        let g = window_graph("path", w, v("a"));
        let x = residual(&g, &[], &v("a"), 10, &Budget::unlimited()).unwrap();
        assert_eq!(x.len(), 3);
    }

    #[test]
    fn corollary5_alternates_between_rays() {
        let oracle = canonical_end_oracle(&glued(2)).unwrap();
        let b = Budget::unlimited();
        let fam = corollary5_nest(oracle.as_ref(), EndSchedule::RoundRobin, 10, 64, &b).unwrap();
        let ends: Vec<&str> = fam.ends.iter().map(|e| e.as_str()).collect();
        assert_eq!(&ends[..4], ["ray:a", "ray:b", "ray:a", "ray:b"]);
        assert_eq!(first_unnested_pair(oracle.graph(), &fam.regions, &b).unwrap(), None);
    }

    #[test]
    fn triangular_schedule() {
        let oracle = canonical_end_oracle(&FamilySpec::new(FamilyKind::BranchingTree, 2)).unwrap();
        let firsts: Vec<EndId> = oracle.ends().take(3).collect();
        let s: Vec<EndId> = end_stream(oracle.as_ref(), EndSchedule::Triangular).unwrap().take(6).collect();
        let idx: Vec<usize> = s.iter().map(|e| firsts.iter().position(|f| f == e).unwrap()).collect();
        assert_eq!(idx, [0, 0, 1, 0, 1, 2]);
    }
}
