//! Finite subgraphs of large minimum or average degree from good regions
//! around ends, by growing a connected separator until every component of
//! its complement is good; and the plain compactness search that either
//! finds such a separator or descends through bad components.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::ends::{self, EndId, EndOracle};
use crate::error::{Error, Result};
use crate::graph::{GraphHandle, VertexId, VertexSet};
use crate::regions::{self, Budget, Goodness, OutDegree, Region, RegionView, Tri};
use crate::report::{Assignment, ExtractionReport, Mode, Procedure, StepRecord, Subgraph, Usage, SCHEMA_VERSION};
use crate::window::Window;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Oracle queries for the whole run.
    pub oracle: u64,
    /// Ends processed before giving up.
    pub iterations: usize,
    /// Regions scanned per defining sequence when asking for a good region.
    pub scan: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            oracle: 5_000_000,
            iterations: 50,
            scan: 64,
        }
    }
}

/// Goodness of regions for `mode`: the threshold plus a connected complement.
pub fn goodness_for(mode: &Mode) -> Goodness {
    match mode {
        Mode::MinDegree { k } => Goodness::min_degree(*k, true),
        Mode::AvgDegree { q, .. } => Goodness::avg_degree(*q, true),
    }
}

fn budget_error(budget: &Budget) -> Error {
    Error::Budget {
        spent: budget.spent(),
    }
}

fn tri_to_bool(t: Tri, budget: &Budget) -> Result<bool> {
    match t {
        Tri::Yes => Ok(true),
        Tri::No => Ok(false),
        Tri::Unknown => Err(budget_error(budget)),
    }
}

/// Adds shortest paths through `allowed` vertices until `G[a]` is
/// connected. Paths grow from the part holding the least vertex, in
/// breadth-first order over sorted neighbor lists.
pub fn connectify(
    g: &GraphHandle,
    a: &VertexSet,
    mut allowed: impl FnMut(&VertexId) -> Result<bool>,
    budget: &Budget,
) -> Result<VertexSet> {
    let mut set = a.clone();
    loop {
        let Some(start) = set.iter().next().cloned() else {
            return Ok(set);
        };
        let mut grown = VertexSet::from([start.clone()]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for w in g.neighbors(&x)?.iter() {
                if set.contains(w) && grown.insert(w.clone()) {
                    stack.push(w.clone());
                }
            }
        }
        if grown.len() == set.len() {
            return Ok(set);
        }
        let mut parent: HashMap<VertexId, VertexId> = HashMap::new();
        let mut queue: VecDeque<VertexId> = grown.iter().cloned().collect();
        let mut seen = grown.clone();
        let target = 'search: loop {
            let Some(x) = queue.pop_front() else {
                return Err(Error::domain("no connecting path through the allowed vertices"));
            };
            if !budget.charge(1) {
                return Err(budget_error(budget));
            }
            for w in g.neighbors(&x)?.iter() {
                if seen.contains(w) {
                    continue;
                }
                if set.contains(w) {
                    parent.insert(w.clone(), x.clone());
                    break 'search w.clone();
                }
                if allowed(w)? {
                    seen.insert(w.clone());
                    parent.insert(w.clone(), x.clone());
                    queue.push_back(w.clone());
                }
            }
        };
        let mut cur = parent[&target].clone();
        while !grown.contains(&cur) {
            set.insert(cur.clone());
            cur = parent[&cur].clone();
        }
    }
}

/// Adds every finite component of `G - s` to `s`; returns what was added.
pub fn absorb_finite_components(g: &GraphHandle, s: &mut VertexSet, budget: &Budget) -> Result<Vec<VertexId>> {
    let exact = g.separation().is_some();
    let mut added = Vec::new();
    for c in regions::components(g, s, budget)? {
        match c.finite {
            Some(members) => added.extend(members),
            None if exact => {}
            None => return Err(budget_error(budget)),
        }
    }
    s.extend(added.iter().cloned());
    added.sort();
    Ok(added)
}

/// `S_0`: the given set (or the root), joined up by shortest paths, plus
/// all finite components of its complement.
pub fn init_s0(g: &GraphHandle, mode: &Mode, budget: &Budget) -> Result<VertexSet> {
    let start: VertexSet = match mode {
        Mode::MinDegree { .. } => VertexSet::from([g.root()]),
        Mode::AvgDegree { s0, .. } => {
            if s0.is_empty() {
                return Err(Error::domain("average-degree mode needs a nonempty S0"));
            }
            s0.iter().cloned().collect()
        }
    };
    for v in &start {
        g.neighbors(v)?;
    }
    let mut s = connectify(g, &start, |_| Ok(true), budget)?;
    absorb_finite_components(g, &mut s, budget)?;
    Ok(s)
}

/// Run state of the separator procedure.
#[derive(Clone, Debug)]
pub struct ExtractState {
    pub initial: VertexSet,
    pub separator: VertexSet,
    /// The good component each processed end lives in.
    pub assigned: BTreeMap<EndId, Region>,
    pub history: Vec<StepRecord>,
}

impl ExtractState {
    pub fn new(initial: VertexSet) -> Self {
        ExtractState {
            separator: initial.clone(),
            initial,
            assigned: BTreeMap::new(),
            history: Vec::new(),
        }
    }
}

/// Processes one end. If its component of `G - S_n` is good, nothing
/// changes. Otherwise a good region `C'` inside it is taken from the end
/// oracle, `S_n ∪ N(C')` is joined up by paths in `G[S_n ∪ C] - C'`, and
/// the finite components left over are absorbed.
pub fn step(
    oracle: &dyn EndOracle,
    state: &mut ExtractState,
    end: &EndId,
    mode: &Goodness,
    scan: usize,
    budget: &Budget,
) -> Result<()> {
    let g = oracle.graph();
    let sep = state.separator.clone();
    let v = ends::tail_vertex(oracle, end, &sep)?;
    let current = Region::in_graph(g, sep.iter().cloned(), v)?;
    let n = state.history.len() + 1;
    if tri_to_bool(regions::goodness_of(g, &current, mode, budget)?, budget)? {
        state.assigned.insert(end.clone(), current.clone());
        state.history.push(StepRecord {
            step: n,
            end: end.clone(),
            separator: sep.into_iter().collect(),
            region: current,
            adopted: false,
            added: Vec::new(),
        });
        return Ok(());
    }
    let chosen = ends::good_region_for(oracle, end, &sep, mode, scan, budget)?;
    let c_view = RegionView::new(g, &current, budget)?;
    let new_view = RegionView::new(g, &chosen, budget)?;
    let neighborhood = new_view.neighborhood(budget)?;
    let mut a = sep.clone();
    a.extend(neighborhood);
    let mut s = connectify(
        g,
        &a,
        |w| {
            if sep.contains(w) {
                return Ok(true);
            }
            let in_c = tri_to_bool(c_view.contains(w, budget)?, budget)?;
            let in_new = tri_to_bool(new_view.contains(w, budget)?, budget)?;
            Ok(in_c && !in_new)
        },
        budget,
    )?;
    absorb_finite_components(g, &mut s, budget)?;
    let added: Vec<VertexId> = s.difference(&sep).cloned().collect();
    let region = Region::in_graph(g, s.iter().cloned(), chosen.seed().clone())?;
    state.assigned.insert(end.clone(), region.clone());
    state.separator = s.clone();
    state.history.push(StepRecord {
        step: n,
        end: end.clone(),
        separator: s.into_iter().collect(),
        region,
        adopted: true,
        added,
    });
    Ok(())
}

/// Whether every component of `G - sep` is good.
pub fn is_stationary(g: &GraphHandle, sep: &VertexSet, mode: &Goodness, budget: &Budget) -> Result<bool> {
    for c in regions::components(g, sep, budget)? {
        if !tri_to_bool(regions::goodness_of(g, &c.region, mode, budget)?, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn h_of(g: &GraphHandle, sep: &VertexSet) -> Result<Window> {
    let mut all = sep.clone();
    all.extend(g.neighborhood(sep)?);
    g.induced_window(&all)
}

fn report(
    oracle: &dyn EndOracle,
    mode: &Mode,
    state: &ExtractState,
    h: Option<&Window>,
    budget: &Budget,
    complete: bool,
) -> Result<ExtractionReport> {
    let g = oracle.graph();
    let mut regions_out = Vec::new();
    if complete {
        let mut ends: Vec<EndId> = state.assigned.keys().cloned().collect();
        if let Some(all) = oracle.finite_ends() {
            ends.extend(all);
        }
        ends.sort();
        ends.dedup();
        for end in ends {
            let v = ends::tail_vertex(oracle, &end, &state.separator)?;
            let seed = match state.assigned.get(&end) {
                Some(r) => r.seed().clone(),
                None => v,
            };
            regions_out.push(Assignment {
                end: Some(end),
                region: Region::in_graph(g, state.separator.iter().cloned(), seed)?,
            });
        }
    }
    Ok(ExtractionReport {
        schema_version: SCHEMA_VERSION,
        procedure: Procedure::Separator,
        graph: g.name().to_string(),
        family: g.spec().cloned(),
        mode: mode.clone(),
        initial_separator: state.initial.iter().cloned().collect(),
        separator: state.separator.iter().cloned().collect(),
        base: None,
        residual: Vec::new(),
        regions: regions_out,
        h: h.map_or_else(Subgraph::empty, Subgraph::from_window),
        min_degree: h.and_then(Window::min_degree),
        avg_degree: h.and_then(Window::avg_degree),
        history: state.history.clone(),
        usage: Usage {
            oracle_queries: budget.spent(),
            iterations: state.history.len(),
        },
        complete,
    })
}

/// Processes ends in enumeration order until every component of `G - S_n`
/// is good, then returns `H = G[S_n ∪ N(S_n)]`.
pub fn extract(oracle: &dyn EndOracle, mode: &Mode, budgets: &Budgets) -> Result<ExtractionReport> {
    let g = oracle.graph();
    let budget = Budget::new(budgets.oracle);
    let goodness = goodness_for(mode);
    let mut state = ExtractState::new(init_s0(g, mode, &budget)?);
    let mut stream = oracle.ends();
    for _ in 0..budgets.iterations {
        let Some(end) = stream.next() else { break };
        step(oracle, &mut state, &end, &goodness, budgets.scan, &budget)?;
        if is_stationary(g, &state.separator, &goodness, &budget)? {
            let h = h_of(g, &state.separator)?;
            return report(oracle, mode, &state, Some(&h), &budget, true);
        }
    }
    Err(Error::IterationBudget(Box::new(report(
        oracle, mode, &state, None, &budget, false,
    )?)))
}

/// Re-verifies conditions (1)–(4) along a report's history from the
/// oracle, and for a complete report the degree bound on `H`, returning a
/// description of every violation.
pub fn check_conditions(oracle: &dyn EndOracle, report: &ExtractionReport, budget: &Budget) -> Result<Vec<String>> {
    let g = oracle.graph();
    let goodness = goodness_for(&report.mode);
    let mut problems = Vec::new();
    let initial: VertexSet = report.initial_separator.iter().cloned().collect();
    let check_set = |s: &VertexSet, label: &str, problems: &mut Vec<String>| -> Result<()> {
        if !g.is_connected_set(s)? {
            problems.push(format!("{label}: G[S] is not connected"));
        }
        for c in regions::components(g, s, budget)? {
            if c.finite.is_some() {
                problems.push(format!("{label}: finite component at {}", c.region.seed()));
            }
        }
        Ok(())
    };
    check_set(&initial, "S0", &mut problems)?;
    let mut prev = initial;
    for rec in &report.history {
        let label = format!("step {}", rec.step);
        let s: VertexSet = rec.separator.iter().cloned().collect();
        if !prev.is_subset(&s) {
            problems.push(format!("{label}: separator shrank"));
        }
        check_set(&s, &label, &mut problems)?;
        if rec.region.separator_set() != s {
            problems.push(format!("{label}: region not a component of G - S_n"));
        }
        if ends::lives_in(oracle, &rec.end, &rec.region, budget)? != Tri::Yes {
            problems.push(format!("{label}: end {} does not live in its region", rec.end));
        }
        if regions::goodness_of(g, &rec.region, &goodness, budget)? != Tri::Yes {
            problems.push(format!("{label}: region of {} is not good", rec.end));
        }
        let added: Vec<&VertexId> = s.difference(&prev).collect();
        for c in regions::components(g, &prev, budget)? {
            if regions::goodness_of(g, &c.region, &goodness, budget)? != Tri::Yes {
                continue;
            }
            let view = RegionView::new(g, &c.region, budget)?;
            for v in &added {
                if view.contains(v, budget)? != Tri::No {
                    problems.push(format!(
                        "{label}: good component at {} lost vertex {v}",
                        c.region.seed()
                    ));
                }
            }
        }
        prev = s;
    }
    if report.complete {
        // The degree bound on H is recomputed from the separator rather
        // than argued. For average degree this check is our own.
        let h = h_of(g, &report.separator.iter().cloned().collect())?;
        match &report.mode {
            Mode::MinDegree { k } => {
                if h.min_degree().unwrap_or(0) < *k as usize {
                    problems.push(format!("H: minimum degree {:?} below {k}", h.min_degree()));
                }
            }
            Mode::AvgDegree { q, .. } => {
                if h.avg_degree().is_none_or(|d| d <= *q) {
                    problems.push(format!("H: average degree {:?} not above {q}", h.avg_degree()));
                }
            }
        }
    }
    Ok(problems)
}

/// One bad component in a descent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub region: Region,
    /// A boundary vertex with out-degree below the threshold.
    pub witness: VertexId,
    pub out_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntroOutcome {
    /// Every component of `G - S` is good and `H = G[S ∪ N(S)]`.
    AllGood {
        separator: Vec<VertexId>,
        h: Subgraph,
        expansions: usize,
    },
    /// A strictly decreasing chain of bad components, cut at the budget.
    /// `restarts` counts descents abandoned because the chain died out.
    BadChain { chain: Vec<ChainStep>, restarts: usize },
}

/// The compactness search: starting from the root, look for a bad
/// component of `G - S` (one with a boundary vertex of out-degree `< k`),
/// follow it, and add its boundary to `S`. Stops when every component is
/// good or after `max_expansions` expansions.
pub fn intro_search(g: &GraphHandle, k: u32, max_expansions: usize, budget: &Budget) -> Result<IntroOutcome> {
    let mut s = VertexSet::from([g.root()]);
    absorb_finite_components(g, &mut s, budget)?;
    let mut chain: Vec<ChainStep> = Vec::new();
    let mut restarts = 0;
    for expansion in 0..=max_expansions {
        let mut bad: Vec<ChainStep> = Vec::new();
        for c in regions::components(g, &s, budget)? {
            let stats = regions::out_stats(g, &c.region, budget)?;
            if let OutDegree::Finite(d) = stats.min {
                if d < k as usize {
                    let i = stats.out_degrees.iter().position(|&x| x == d).expect("min attained");
                    bad.push(ChainStep {
                        region: c.region,
                        witness: stats.boundary[i].clone(),
                        out_degree: d,
                    });
                }
            }
        }
        if bad.is_empty() {
            let h = h_of(g, &s)?;
            return Ok(IntroOutcome::AllGood {
                separator: s.into_iter().collect(),
                h: Subgraph::from_window(&h),
                expansions: expansion,
            });
        }
        if expansion == max_expansions {
            break;
        }
        let next = match chain.last() {
            None => bad.swap_remove(0),
            Some(last) => {
                let view = RegionView::new(g, &last.region, budget)?;
                let mut inside = None;
                for (i, b) in bad.iter().enumerate() {
                    if tri_to_bool(view.contains(b.region.seed(), budget)?, budget)? {
                        inside = Some(i);
                        break;
                    }
                }
                match inside {
                    Some(i) => bad.swap_remove(i),
                    None => {
                        restarts += 1;
                        chain.clear();
                        bad.swap_remove(0)
                    }
                }
            }
        };
        let boundary = regions::vertex_boundary(g, &next.region, budget)?;
        s.extend(boundary);
        absorb_finite_components(g, &mut s, budget)?;
        chain.push(next);
    }
    Ok(IntroOutcome::BadChain { chain, restarts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{FamilyKind, FamilySpec};
    use crate::generators::{canonical_end_oracle, make_graph, window_graph};
    use crate::graph::Rational;

    fn v(s: &str) -> VertexId {
        VertexId::new(s)
    }

    #[test]
    fn connectify_uses_shortest_paths() {
        // Two routes from a to d: a-b-d and a-c-e-d.
        let w = Window::from_edges(
            ["a", "b", "c", "d", "e"],
            [("a", "b"), ("b", "d"), ("a", "c"), ("c", "e"), ("e", "d")],
        )
        .unwrap();
        let g = window_graph("two-routes", w, v("a"));
        let s = connectify(&g, &VertexSet::from([v("a"), v("d")]), |_| Ok(true), &Budget::unlimited()).unwrap();
        assert_eq!(s, VertexSet::from([v("a"), v("b"), v("d")]));
        let s = connectify(&g, &VertexSet::from([v("a"), v("d")]), |w| Ok(w.as_str() != "b"), &Budget::unlimited()).unwrap();
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn s0_of_a_tree_is_the_root() {
        let g = make_graph(&FamilySpec::new(FamilyKind::BranchingTree, 3)).unwrap();
        let s = init_s0(&g, &Mode::MinDegree { k: 3 }, &Budget::unlimited()).unwrap();
        assert_eq!(s, VertexSet::from([g.root()]));
    }

    #[test]
    fn s0_absorbs_finite_components() {
        let g = make_graph(&FamilySpec::new(FamilyKind::CliqueRay, 2).with_rays(2)).unwrap();
        // Removing Q_1 of both rays strands the rest of Q_0.
        let mode = Mode::AvgDegree {
            q: Rational::from_integer(1),
            s0: vec![v("q1a.0"), v("q1a.1"), v("q1b.0"), v("q1b.1")],
        };
        let s = init_s0(&g, &mode, &Budget::unlimited()).unwrap();
        assert!(s.contains(&v("q0.0")) && s.contains(&v("q0.1")));
    }

    #[test]
    fn clique_ray_is_stationary_at_once() {
        let oracle = canonical_end_oracle(&FamilySpec::new(FamilyKind::CliqueRay, 3)).unwrap();
        let r = extract(oracle.as_ref(), &Mode::MinDegree { k: 3 }, &Budgets::default()).unwrap();
        assert!(r.complete);
        assert_eq!(r.history.len(), 1);
        assert!(!r.history[0].adopted);
        assert!(r.min_degree.unwrap() >= 3);
        assert!(check_conditions(oracle.as_ref(), &r, &Budget::unlimited()).unwrap().is_empty());
    }

    #[test]
    fn tree_premise_fails() {
        let oracle = canonical_end_oracle(&FamilySpec::new(FamilyKind::BranchingTree, 2)).unwrap();
        let err = extract(oracle.as_ref(), &Mode::MinDegree { k: 2 }, &Budgets::default()).unwrap_err();
        assert!(err.is_premise_failure(), "{err}");
    }

    #[test]
    fn theorem3_adopts_regions_and_runs_out_of_iterations() {
        let oracle = canonical_end_oracle(&FamilySpec::new(FamilyKind::Theorem3, 3)).unwrap();
        let budgets = Budgets {
            iterations: 4,
            ..Budgets::default()
        };
        let Err(Error::IterationBudget(partial)) = extract(oracle.as_ref(), &Mode::MinDegree { k: 3 }, &budgets) else {
            panic!("expected an iteration budget error");
        };
        assert!(!partial.complete);
        assert_eq!(partial.history.len(), 4);
        assert!(partial.history.iter().any(|s| s.adopted));
        assert!(check_conditions(oracle.as_ref(), &partial, &Budget::unlimited()).unwrap().is_empty());
    }

    #[test]
    fn intro_search_outcomes() {
        let b = Budget::unlimited();
        let cr = make_graph(&FamilySpec::new(FamilyKind::CliqueRay, 3)).unwrap();
        assert!(matches!(intro_search(&cr, 3, 5, &b).unwrap(), IntroOutcome::AllGood { .. }));
        let t = make_graph(&FamilySpec::new(FamilyKind::BranchingTree, 2)).unwrap();
        let IntroOutcome::BadChain { chain, .. } = intro_search(&t, 2, 6, &b).unwrap() else {
            panic!("trees have no good separator");
        };
        assert_eq!(chain.len(), 6);
        assert!(chain.iter().all(|c| c.out_degree == 1));
    }
}
