//! Regions as separator plus seed; boundaries, out-degrees, nestedness.

use std::cell::{Cell, RefCell};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{rational_str, ComponentKey, GraphHandle, Partition, Rational, VertexId, VertexSet};
use crate::window::Window;

/// Counts oracle queries. Per call, never shared across threads.
#[derive(Debug)]
pub struct Budget {
    limit: Option<u64>,
    spent: Cell<u64>,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit: Some(limit),
            spent: Cell::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Budget {
            limit: None,
            spent: Cell::new(0),
        }
    }

    /// Spends `n` queries; false when that would pass the limit.
    pub fn charge(&self, n: u64) -> bool {
        let next = self.spent.get() + n;
        if self.limit.is_some_and(|l| next > l) {
            return false;
        }
        self.spent.set(next);
        true
    }

    pub fn spent(&self) -> u64 {
        self.spent.get()
    }

    pub fn limit(&self) -> Option<u64> {
        self.limit
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentAnswer {
    Same,
    Different,
    Unknown { spent: u64 },
}

/// Which membership oracle decides a region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleKind {
    /// The generator's exact separation oracle.
    Exact,
    /// Breadth-first search under a query budget.
    Budgeted,
}

/// The component of `G - separator` containing `seed`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Region {
    separator: Vec<VertexId>,
    seed: VertexId,
    oracle: OracleKind,
}

impl Region {
    pub fn new(
        separator: impl IntoIterator<Item = VertexId>,
        seed: VertexId,
        oracle: OracleKind,
    ) -> Result<Self> {
        let sep: VertexSet = separator.into_iter().collect();
        if sep.contains(&seed) {
            return Err(Error::domain(format!("seed {seed} lies in the separator")));
        }
        Ok(Region {
            separator: sep.into_iter().collect(),
            seed,
            oracle,
        })
    }

    /// Picks the exact oracle whenever the graph's family supplies one.
    pub fn in_graph(
        g: &GraphHandle,
        separator: impl IntoIterator<Item = VertexId>,
        seed: VertexId,
    ) -> Result<Self> {
        let oracle = if g.separation().is_some() {
            OracleKind::Exact
        } else {
            OracleKind::Budgeted
        };
        Region::new(separator, seed, oracle)
    }

    pub fn separator(&self) -> &[VertexId] {
        &self.separator
    }

    pub fn separator_set(&self) -> VertexSet {
        self.separator.iter().cloned().collect()
    }

    pub fn seed(&self) -> &VertexId {
        &self.seed
    }

    pub fn oracle(&self) -> OracleKind {
        self.oracle
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({}; {{", self.seed)?;
        for (i, s) in self.separator.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("})")
    }
}

/// Where a vertex sits relative to a separator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Place {
    Separator,
    Component(ComponentKey),
    Unknown,
}

enum Engine<'g> {
    Exact(Box<dyn Partition + 'g>),
    /// Representatives of the components discovered so far.
    Search(RefCell<Vec<VertexId>>),
}

/// Component structure of `G - S`, answered exactly when the family has a
/// separation oracle and by budgeted search otherwise.
pub struct Components<'g> {
    g: &'g GraphHandle,
    sep: VertexSet,
    engine: Engine<'g>,
}

impl<'g> Components<'g> {
    pub fn new(g: &'g GraphHandle, sep: VertexSet, oracle: OracleKind) -> Result<Self> {
        let engine = match (oracle, g.separation()) {
            (OracleKind::Exact, Some(o)) => Engine::Exact(o.partition(&sep)?),
            (OracleKind::Exact, None) => {
                return Err(Error::domain(format!(
                    "family {} has no exact separation oracle",
                    g.name()
                )))
            }
            (OracleKind::Budgeted, _) => Engine::Search(RefCell::new(Vec::new())),
        };
        Ok(Components { g, sep, engine })
    }

    /// Exact when available, budgeted otherwise.
    pub fn best(g: &'g GraphHandle, sep: VertexSet) -> Result<Self> {
        let kind = if g.separation().is_some() {
            OracleKind::Exact
        } else {
            OracleKind::Budgeted
        };
        Components::new(g, sep, kind)
    }

    pub fn for_region(g: &'g GraphHandle, r: &Region) -> Result<Self> {
        Components::new(g, r.separator_set(), r.oracle)
    }

    pub fn separator(&self) -> &VertexSet {
        &self.sep
    }

    pub fn place(&self, v: &VertexId, budget: &Budget) -> Result<Place> {
        if self.sep.contains(v) {
            return Ok(Place::Separator);
        }
        match &self.engine {
            Engine::Exact(p) => {
                if !budget.charge(1) {
                    return Ok(Place::Unknown);
                }
                Ok(match p.key(v)? {
                    Some(k) => Place::Component(k),
                    None => Place::Separator,
                })
            }
            Engine::Search(reps) => {
                let n = reps.borrow().len();
                for i in 0..n {
                    let rep = reps.borrow()[i].clone();
                    match bfs_same(self.g, &self.sep, &rep, v, budget)? {
                        ComponentAnswer::Same => return Ok(Place::Component(i)),
                        ComponentAnswer::Different => {}
                        ComponentAnswer::Unknown { .. } => return Ok(Place::Unknown),
                    }
                }
                reps.borrow_mut().push(v.clone());
                Ok(Place::Component(n))
            }
        }
    }

    /// Members of the component when it is certified finite.
    pub fn finite_members(&self, key: ComponentKey, budget: &Budget) -> Result<Option<Vec<VertexId>>> {
        match &self.engine {
            Engine::Exact(p) => {
                if !budget.charge(1) {
                    return Ok(None);
                }
                Ok(p.finite_members(key))
            }
            Engine::Search(reps) => {
                let rep = reps.borrow()[key].clone();
                exhaust(self.g, &self.sep, &rep, budget)
            }
        }
    }

    pub fn same(&self, u: &VertexId, v: &VertexId, budget: &Budget) -> Result<ComponentAnswer> {
        if u == v {
            return Ok(ComponentAnswer::Same);
        }
        match &self.engine {
            Engine::Exact(_) => {
                let a = self.place(u, budget)?;
                let b = self.place(v, budget)?;
                Ok(match (a, b) {
                    (Place::Component(x), Place::Component(y)) => {
                        if x == y {
                            ComponentAnswer::Same
                        } else {
                            ComponentAnswer::Different
                        }
                    }
                    (Place::Separator, _) | (_, Place::Separator) => ComponentAnswer::Different,
                    _ => ComponentAnswer::Unknown {
                        spent: budget.spent(),
                    },
                })
            }
            Engine::Search(_) => bfs_same(self.g, &self.sep, u, v, budget),
        }
    }
}

/// Path search from `u` to `v` avoiding `sep`. Different only when the
/// component of `u` is exhausted.
fn bfs_same(
    g: &GraphHandle,
    sep: &VertexSet,
    u: &VertexId,
    v: &VertexId,
    budget: &Budget,
) -> Result<ComponentAnswer> {
    if u == v {
        return Ok(ComponentAnswer::Same);
    }
    let mut seen = BTreeSet::from([u.clone()]);
    let mut queue = VecDeque::from([u.clone()]);
    while let Some(x) = queue.pop_front() {
        if !budget.charge(1) {
            return Ok(ComponentAnswer::Unknown {
                spent: budget.spent(),
            });
        }
        for w in g.neighbors(&x)?.iter() {
            if sep.contains(w) {
                continue;
            }
            if w == v {
                return Ok(ComponentAnswer::Same);
            }
            if seen.insert(w.clone()) {
                queue.push_back(w.clone());
            }
        }
    }
    Ok(ComponentAnswer::Different)
}

fn exhaust(g: &GraphHandle, sep: &VertexSet, start: &VertexId, budget: &Budget) -> Result<Option<Vec<VertexId>>> {
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(x) = queue.pop_front() {
        if !budget.charge(1) {
            return Ok(None);
        }
        for w in g.neighbors(&x)?.iter() {
            if !sep.contains(w) && seen.insert(w.clone()) {
                queue.push_back(w.clone());
            }
        }
    }
    Ok(Some(seen.into_iter().collect()))
}

/// One component of `G - S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentInfo {
    pub region: Region,
    /// Members when the component is certified finite.
    pub finite: Option<Vec<VertexId>>,
}

/// The components of `G - S` that touch `S`, each seeded by its least
/// neighbor of `S`, in seed order. `S = ∅` yields the whole graph.
pub fn components(g: &GraphHandle, sep: &VertexSet, budget: &Budget) -> Result<Vec<ComponentInfo>> {
    let comps = Components::best(g, sep.clone())?;
    let oracle = match comps.engine {
        Engine::Exact(_) => OracleKind::Exact,
        Engine::Search(_) => OracleKind::Budgeted,
    };
    if sep.is_empty() {
        let root = g.root();
        let key = expect_component(&comps, &root, budget)?;
        return Ok(vec![ComponentInfo {
            region: Region::new([], root, oracle)?,
            finite: comps.finite_members(key, budget)?,
        }]);
    }
    let mut by_key: BTreeMap<ComponentKey, VertexId> = BTreeMap::new();
    for w in g.neighborhood(sep)? {
        let key = expect_component(&comps, &w, budget)?;
        by_key.entry(key).or_insert(w);
    }
    let mut out = Vec::with_capacity(by_key.len());
    for (key, seed) in by_key {
        out.push(ComponentInfo {
            region: Region::new(sep.iter().cloned(), seed, oracle)?,
            finite: comps.finite_members(key, budget)?,
        });
    }
    out.sort_by(|a, b| a.region.seed.cmp(&b.region.seed));
    Ok(out)
}

fn expect_component(comps: &Components, v: &VertexId, budget: &Budget) -> Result<ComponentKey> {
    match comps.place(v, budget)? {
        Place::Component(k) => Ok(k),
        Place::Separator => Err(Error::domain(format!("{v} lies in the separator"))),
        Place::Unknown => Err(Error::Budget {
            spent: budget.spent(),
        }),
    }
}

pub fn same_component(
    g: &GraphHandle,
    sep: &VertexSet,
    u: &VertexId,
    v: &VertexId,
    budget: &Budget,
) -> Result<ComponentAnswer> {
    if sep.contains(u) || sep.contains(v) {
        return Err(Error::domain("same_component on a separator vertex"));
    }
    Components::best(g, sep.clone())?.same(u, v, budget)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiniteCheck {
    Finite(Vec<VertexId>),
    InfiniteOrUnknown,
}

pub fn finite_component_check(
    g: &GraphHandle,
    sep: &VertexSet,
    seed: &VertexId,
    budget: &Budget,
) -> Result<FiniteCheck> {
    let comps = Components::best(g, sep.clone())?;
    let key = match comps.place(seed, budget)? {
        Place::Component(k) => k,
        Place::Separator => return Err(Error::domain(format!("{seed} lies in the separator"))),
        Place::Unknown => return Ok(FiniteCheck::InfiniteOrUnknown),
    };
    Ok(match comps.finite_members(key, budget)? {
        Some(m) => FiniteCheck::Finite(m),
        None => FiniteCheck::InfiniteOrUnknown,
    })
}

/// Answers membership questions for one region.
pub struct RegionView<'g> {
    comps: Components<'g>,
    seed_key: ComponentKey,
}

impl<'g> RegionView<'g> {
    pub fn new(g: &'g GraphHandle, r: &Region, budget: &Budget) -> Result<Self> {
        let comps = Components::for_region(g, r)?;
        let seed_key = match comps.place(&r.seed, budget)? {
            Place::Component(k) => k,
            Place::Separator => return Err(Error::domain("seed in separator")),
            Place::Unknown => {
                return Err(Error::Budget {
                    spent: budget.spent(),
                })
            }
        };
        Ok(RegionView { comps, seed_key })
    }

    pub fn contains(&self, v: &VertexId, budget: &Budget) -> Result<Tri> {
        Ok(match self.comps.place(v, budget)? {
            Place::Separator => Tri::No,
            Place::Component(k) => Tri::from_bool(k == self.seed_key),
            Place::Unknown => Tri::Unknown,
        })
    }

    fn graph(&self) -> &'g GraphHandle {
        self.comps.g
    }

    /// `V⁺(C) = N(S) ∩ C`.
    pub fn boundary(&self, budget: &Budget) -> Result<VertexSet> {
        let mut out = VertexSet::new();
        let mut undecided = Vec::new();
        for w in self.graph().neighborhood(&self.comps.sep)? {
            match self.contains(&w, budget)? {
                Tri::Yes => {
                    out.insert(w);
                }
                Tri::No => {}
                Tri::Unknown => undecided.push(w),
            }
        }
        if !undecided.is_empty() {
            return Err(Error::Indeterminate { undecided });
        }
        Ok(out)
    }

    /// `N(C)`: separator vertices with a neighbor in C.
    pub fn neighborhood(&self, budget: &Budget) -> Result<VertexSet> {
        let boundary = self.boundary(budget)?;
        let mut out = VertexSet::new();
        for s in &self.comps.sep {
            if self.graph().neighbors(s)?.iter().any(|w| boundary.contains(w)) {
                out.insert(s.clone());
            }
        }
        Ok(out)
    }

    /// Components of `G - C`, or `None` when membership is undecided.
    pub fn complement_components(&self, budget: &Budget) -> Result<Option<usize>> {
        let sep: Vec<&VertexId> = self.comps.sep.iter().collect();
        if sep.is_empty() {
            return Ok(Some(0));
        }
        let sep_index: HashMap<&VertexId, usize> = sep.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut uf = UnionFind::new(sep.len());
        let mut comp_node: HashMap<ComponentKey, usize> = HashMap::new();
        for (i, s) in sep.iter().enumerate() {
            for w in self.graph().neighbors(s)?.iter() {
                if let Some(&j) = sep_index.get(w) {
                    uf.union(i, j);
                    continue;
                }
                match self.comps.place(w, budget)? {
                    Place::Component(k) if k == self.seed_key => {}
                    Place::Component(k) => {
                        let node = *comp_node.entry(k).or_insert_with(|| uf.push());
                        uf.union(i, node);
                    }
                    Place::Separator => {}
                    Place::Unknown => return Ok(None),
                }
            }
        }
        Ok(Some(uf.classes()))
    }
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn push(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
        }
    }

    pub(crate) fn classes(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

pub fn contains(g: &GraphHandle, r: &Region, v: &VertexId, budget: &Budget) -> Result<Tri> {
    RegionView::new(g, r, budget)?.contains(v, budget)
}

pub fn vertex_boundary(g: &GraphHandle, r: &Region, budget: &Budget) -> Result<VertexSet> {
    RegionView::new(g, r, budget)?.boundary(budget)
}

pub fn exact_neighborhood(g: &GraphHandle, r: &Region, budget: &Budget) -> Result<VertexSet> {
    RegionView::new(g, r, budget)?.neighborhood(budget)
}

/// `G[S, C] = G[S ∪ V⁺(C)]`.
pub fn out_graph(g: &GraphHandle, r: &Region, budget: &Budget) -> Result<Window> {
    let boundary = vertex_boundary(g, r, budget)?;
    g.induced_window(r.separator.iter().chain(boundary.iter()))
}

/// `δ⁺` value; `Infinite` when the boundary is empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum OutDegree {
    Finite(usize),
    Infinite,
}

impl OutDegree {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            OutDegree::Finite(d) => d >= k,
            OutDegree::Infinite => true,
        }
    }
}

impl fmt::Display for OutDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutDegree::Finite(d) => write!(f, "{d}"),
            OutDegree::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for OutDegree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            OutDegree::Finite(d) => s.serialize_u64(*d as u64),
            OutDegree::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for OutDegree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(OutDegree::Finite(n as usize)),
            Raw::S(s) if s == "inf" => Ok(OutDegree::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad out-degree {s:?}"))),
        }
    }
}

/// Boundary and out-degree statistics of a region, recomputed from the oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutStats {
    pub boundary: Vec<VertexId>,
    /// Degree of each boundary vertex in `G[S, C]`, aligned with `boundary`.
    pub out_degrees: Vec<usize>,
    pub min: OutDegree,
    /// `None` when the boundary is empty.
    #[serde(with = "opt_rational")]
    pub avg: Option<Rational>,
}

pub(crate) mod opt_rational {
    use crate::graph::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

pub fn out_stats(g: &GraphHandle, r: &Region, budget: &Budget) -> Result<OutStats> {
    let boundary = vertex_boundary(g, r, budget)?;
    let w = g.induced_window(r.separator.iter().chain(boundary.iter()))?;
    let out_degrees: Vec<usize> = boundary
        .iter()
        .map(|v| w.degree_of(v).expect("boundary vertex in out-graph"))
        .collect();
    let min = out_degrees
        .iter()
        .min()
        .map_or(OutDegree::Infinite, |&d| OutDegree::Finite(d));
    let avg = (!out_degrees.is_empty()).then(|| {
        Rational::new(
            out_degrees.iter().sum::<usize>() as i64,
            out_degrees.len() as i64,
        )
    });
    Ok(OutStats {
        boundary: boundary.into_iter().collect(),
        out_degrees,
        min,
        avg,
    })
}

/// `δ⁺_G(C)`.
pub fn min_out_degree(g: &GraphHandle, r: &Region, budget: &Budget) -> Result<OutDegree> {
    Ok(out_stats(g, r, budget)?.min)
}

/// `d⁺_G(C)`; a domain error when the boundary is empty.
pub fn avg_out_degree(g: &GraphHandle, r: &Region, budget: &Budget) -> Result<Rational> {
    out_stats(g, r, budget)?
        .avg
        .ok_or_else(|| Error::domain("average out-degree of a region with empty boundary"))
}

pub fn complement_connected(g: &GraphHandle, r: &Region, budget: &Budget) -> Result<Tri> {
    Ok(match RegionView::new(g, r, budget)?.complement_components(budget)? {
        Some(n) => Tri::from_bool(n <= 1),
        None => Tri::Unknown,
    })
}

/// Number of components of `G - C` (0 when `C = G`).
pub fn complement_component_count(g: &GraphHandle, r: &Region, budget: &Budget) -> Result<Option<usize>> {
    RegionView::new(g, r, budget)?.complement_components(budget)
}

/// Threshold of a goodness test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Threshold {
    /// `δ⁺ ≥ k`.
    MinDegree(u32),
    /// `d⁺ > q`.
    AvgDegree(#[serde(with = "rational_str")] Rational),
}

/// What makes a region good.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Goodness {
    pub threshold: Threshold,
    pub connected_complement: bool,
}

impl Goodness {
    pub fn min_degree(k: u32, connected_complement: bool) -> Self {
        Goodness {
            threshold: Threshold::MinDegree(k),
            connected_complement,
        }
    }

    pub fn avg_degree(q: Rational, connected_complement: bool) -> Self {
        Goodness {
            threshold: Threshold::AvgDegree(q),
            connected_complement,
        }
    }

    /// Whether the statistics pass the threshold. A region without
    /// boundary passes vacuously.
    pub fn passes(&self, stats: &OutStats) -> bool {
        match self.threshold {
            Threshold::MinDegree(k) => stats.min.at_least(k as usize),
            Threshold::AvgDegree(q) => stats.avg.is_none_or(|a| a > q),
        }
    }
}

impl fmt::Display for Goodness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.threshold {
            Threshold::MinDegree(k) => write!(f, "min out-degree >= {k}")?,
            Threshold::AvgDegree(q) => write!(f, "average out-degree > {q}")?,
        }
        if self.connected_complement {
            f.write_str(" with connected complement")?;
        }
        Ok(())
    }
}

/// Recomputes the goodness of `r`. `Unknown` only from the complement test.
pub fn goodness_of(g: &GraphHandle, r: &Region, mode: &Goodness, budget: &Budget) -> Result<Tri> {
    let stats = out_stats(g, r, budget)?;
    if !mode.passes(&stats) {
        return Ok(Tri::No);
    }
    if mode.connected_complement {
        return complement_connected(g, r, budget);
    }
    Ok(Tri::Yes)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Nestedness {
    Disjoint,
    Subset,
    Superset,
    Equal,
    Crossing {
        in_both: VertexId,
        only_first: VertexId,
        only_second: VertexId,
    },
    Unknown,
}

impl Nestedness {
    pub fn is_nested(&self) -> bool {
        !matches!(self, Nestedness::Crossing { .. } | Nestedness::Unknown)
    }

    pub fn swapped(self) -> Nestedness {
        match self {
            Nestedness::Subset => Nestedness::Superset,
            Nestedness::Superset => Nestedness::Subset,
            Nestedness::Crossing {
                in_both,
                only_first,
                only_second,
            } => Nestedness::Crossing {
                in_both,
                only_first: only_second,
                only_second: only_first,
            },
            other => other,
        }
    }
}

/// First vertex of `candidates` lying in the region, or the undecided state.
fn first_inside<'a>(
    view: &RegionView,
    candidates: impl IntoIterator<Item = &'a VertexId>,
    budget: &Budget,
) -> Result<Result<Option<VertexId>, ()>> {
    for v in candidates {
        match view.contains(v, budget)? {
            Tri::Yes => return Ok(Ok(Some(v.clone()))),
            Tri::No => {}
            Tri::Unknown => return Ok(Err(())),
        }
    }
    Ok(Ok(None))
}

/// Relation of `C₁` to `C₂`. Regions are connected, so `C₁` misses `S₂`
/// exactly when it sits inside one component of `G - S₂`, which the seed
/// of `C₁` identifies.
pub fn nestedness(g: &GraphHandle, r1: &Region, r2: &Region, budget: &Budget) -> Result<Nestedness> {
    let v1 = RegionView::new(g, r1, budget)?;
    let v2 = RegionView::new(g, r2, budget)?;
    let s1 = r1.separator_set();
    let s2 = r2.separator_set();
    let Ok(c1_meets_s2) = first_inside(&v1, s2.difference(&s1), budget)? else {
        return Ok(Nestedness::Unknown);
    };
    let Ok(c2_meets_s1) = first_inside(&v2, s1.difference(&s2), budget)? else {
        return Ok(Nestedness::Unknown);
    };
    let in_c2 = |v: &VertexId| v2.contains(v, budget);
    let in_c1 = |v: &VertexId| v1.contains(v, budget);
    match (&c1_meets_s2, &c2_meets_s1) {
        (None, _) => {
            let seed1_in_c2 = in_c2(&r1.seed)?;
            match seed1_in_c2 {
                Tri::Unknown => Ok(Nestedness::Unknown),
                Tri::No => Ok(Nestedness::Disjoint),
                Tri::Yes => {
                    if c2_meets_s1.is_none() {
                        match in_c1(&r2.seed)? {
                            Tri::Yes => return Ok(Nestedness::Equal),
                            Tri::Unknown => return Ok(Nestedness::Unknown),
                            Tri::No => {}
                        }
                    }
                    Ok(Nestedness::Subset)
                }
            }
        }
        (Some(_), None) => match in_c1(&r2.seed)? {
            Tri::Unknown => Ok(Nestedness::Unknown),
            Tri::No => Ok(Nestedness::Disjoint),
            Tri::Yes => Ok(Nestedness::Superset),
        },
        (Some(a), Some(b)) => {
            // Neither contains the other. Every component of C₁ ∩ C₂ touches
            // S₁ ∪ S₂, so a common vertex shows up next to the separators.
            let union: VertexSet = s1.union(&s2).cloned().collect();
            for w in g.neighborhood(&union)? {
                match (in_c1(&w)?, in_c2(&w)?) {
                    (Tri::Yes, Tri::Yes) => {
                        return Ok(Nestedness::Crossing {
                            in_both: w,
                            only_first: a.clone(),
                            only_second: b.clone(),
                        })
                    }
                    (Tri::Unknown, _) | (_, Tri::Unknown) => return Ok(Nestedness::Unknown),
                    _ => {}
                }
            }
            Ok(Nestedness::Disjoint)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{FamilyKind, FamilySpec};
    use crate::generators::{make_graph, window_graph};

    fn tree(k: u32) -> GraphHandle {
        make_graph(&FamilySpec::new(FamilyKind::BranchingTree, k)).unwrap()
    }

    fn v(s: &str) -> VertexId {
        VertexId::new(s)
    }

    /// Up-closure of `t` together with its parent `t⁻`.
    fn parent_pair(k: u32, t: &str) -> Region {
        let (parent, last) = t.rsplit_once('.').unwrap();
        let (grand, _) = parent.rsplit_once('.').unwrap();
        let mut sep = vec![v(grand)];
        for i in 0..k {
            if i.to_string() != last {
                sep.push(v(&format!("{parent}.{i}")));
            }
        }
        Region::new(sep, v(t), OracleKind::Exact).unwrap()
    }

    #[test]
    fn parent_pair_region_in_tree() {
        let g = tree(3);
        let r = parent_pair(3, "r.1.2");
        let b = Budget::unlimited();
        assert_eq!(vertex_boundary(&g, &r, &b).unwrap(), VertexSet::from([v("r.1")]));
        let stats = out_stats(&g, &r, &b).unwrap();
        assert_eq!(stats.min, OutDegree::Finite(3));
        assert_eq!(stats.avg, Some(Rational::from_integer(3)));
        assert_eq!(complement_connected(&g, &r, &b).unwrap(), Tri::No);
        assert_eq!(complement_component_count(&g, &r, &b).unwrap(), Some(3));
    }

    #[test]
    fn single_cone_has_one_out_edge() {
        let g = tree(4);
        let r = Region::new([v("r.3")], v("r.3.0"), OracleKind::Exact).unwrap();
        let b = Budget::unlimited();
        assert_eq!(min_out_degree(&g, &r, &b).unwrap(), OutDegree::Finite(1));
        assert_eq!(complement_connected(&g, &r, &b).unwrap(), Tri::Yes);
    }

    #[test]
    fn empty_separator_is_the_whole_graph() {
        let g = tree(2);
        let r = Region::new([], g.root(), OracleKind::Exact).unwrap();
        let b = Budget::unlimited();
        assert!(vertex_boundary(&g, &r, &b).unwrap().is_empty());
        assert_eq!(min_out_degree(&g, &r, &b).unwrap(), OutDegree::Infinite);
        assert!(matches!(avg_out_degree(&g, &r, &b), Err(Error::Domain(_))));
        assert_eq!(complement_connected(&g, &r, &b).unwrap(), Tri::Yes);
    }

    #[test]
    fn seed_in_separator_is_rejected() {
        assert!(Region::new([v("r")], v("r"), OracleKind::Exact).is_err());
    }

    #[test]
    fn tree_siblings_are_separated() {
        let g = tree(3);
        let sep = VertexSet::from([g.root()]);
        let b = Budget::unlimited();
        assert_eq!(
            same_component(&g, &sep, &v("r.0"), &v("r.1"), &b).unwrap(),
            ComponentAnswer::Different
        );
        assert_eq!(
            same_component(&g, &sep, &v("r.0.1"), &v("r.0.2.2"), &b).unwrap(),
            ComponentAnswer::Same
        );
        assert_eq!(
            same_component(&g, &sep, &v("r.0"), &v("r.0"), &Budget::new(0)).unwrap(),
            ComponentAnswer::Same
        );
        assert!(matches!(
            same_component(&g, &sep, &v("r.0"), &v("r.1"), &Budget::new(0)).unwrap(),
            ComponentAnswer::Unknown { .. }
        ));
        assert_eq!(
            finite_component_check(&g, &sep, &v("r.2"), &b).unwrap(),
            FiniteCheck::InfiniteOrUnknown
        );
    }

    #[test]
    fn budgeted_search_on_a_finite_graph() {
        // A path a - b - c - d with a pendant e on c.
        let w = Window::from_edges(
            ["a", "b", "c", "d", "e"],
            [("a", "b"), ("b", "c"), ("c", "d"), ("c", "e")],
        )
        .unwrap();
        let g = window_graph("path", w, v("a"));
        let b = Budget::new(1000);
        let sep = VertexSet::from([v("c")]);
        assert_eq!(
            same_component(&g, &sep, &v("a"), &v("d"), &b).unwrap(),
            ComponentAnswer::Different
        );
        assert_eq!(
            finite_component_check(&g, &sep, &v("d"), &b).unwrap(),
            FiniteCheck::Finite(vec![v("d")])
        );
        let comps = components(&g, &sep, &b).unwrap();
        let seeds: Vec<&str> = comps.iter().map(|c| c.region.seed().as_str()).collect();
        assert_eq!(seeds, ["b", "d", "e"]);
        let r = Region::new([v("c")], v("a"), OracleKind::Budgeted).unwrap();
        assert_eq!(vertex_boundary(&g, &r, &b).unwrap(), VertexSet::from([v("b")]));
        assert_eq!(complement_component_count(&g, &r, &b).unwrap(), Some(1));
    }

    #[test]
    fn nestedness_in_tree() {
        let g = tree(3);
        let b = Budget::unlimited();
        let big = Region::new([v("r")], v("r.1"), OracleKind::Exact).unwrap();
        let small = Region::new([v("r.1")], v("r.1.0"), OracleKind::Exact).unwrap();
        let other = Region::new([v("r")], v("r.2"), OracleKind::Exact).unwrap();
        assert_eq!(nestedness(&g, &big, &big, &b).unwrap(), Nestedness::Equal);
        assert_eq!(nestedness(&g, &small, &big, &b).unwrap(), Nestedness::Subset);
        assert_eq!(nestedness(&g, &big, &small, &b).unwrap(), Nestedness::Superset);
        assert_eq!(nestedness(&g, &big, &other, &b).unwrap(), Nestedness::Disjoint);
        // Same component described by two separators.
        let alt = Region::new([v("r"), v("r.0")], v("r.1.2"), OracleKind::Exact).unwrap();
        assert_eq!(nestedness(&g, &big, &alt, &b).unwrap(), Nestedness::Equal);
    }
}
