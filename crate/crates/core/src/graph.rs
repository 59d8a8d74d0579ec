//! Lazy locally finite graphs given by a neighbor oracle.

use std::borrow::Borrow;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::window::Window;

pub type Rational = Ratio<i64>;

/// A vertex address. Ordering is the byte order of the encoding.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(Arc<str>);

pub type VertexSet = BTreeSet<VertexId>;

impl VertexId {
    pub fn new(s: impl AsRef<str>) -> Self {
        VertexId(Arc::from(s.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId::new(s)
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(Arc::from(s))
    }
}

impl Serialize for VertexId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d).map(VertexId::from)
    }
}

/// Parses `"a/b"` or an integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            Ok(Rational::new(a, b))
        }
        None => s.parse::<i64>().map(Rational::from_integer).map_err(|_| bad()),
    }
}

/// Serde adapter writing rationals as `"a/b"` strings (integers as `"a"`).
pub mod rational_str {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Identifies a component of `G - S` within one [`Partition`].
pub type ComponentKey = usize;

/// Exact component structure of `G - S` for a fixed finite `S`.
pub trait Partition {
    /// Component of `v`, or `None` when `v` lies in the separator.
    fn key(&self, v: &VertexId) -> Result<Option<ComponentKey>>;
    /// Vertices of the component when it is finite, `None` when it is infinite.
    fn finite_members(&self, key: ComponentKey) -> Option<Vec<VertexId>>;
}

/// Generator-supplied exact separation oracle.
pub trait SeparationOracle: Send + Sync {
    fn partition<'a>(&'a self, separator: &VertexSet) -> Result<Box<dyn Partition + 'a>>;
}

/// A graph family: a root and a pure neighbor function.
pub trait Family: Send + Sync {
    fn root(&self) -> VertexId;

    /// Neighbors of `v` in increasing order.
    fn neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>>;

    fn separation(&self) -> Option<&dyn SeparationOracle> {
        None
    }

    /// Level in the construction tree, for families that have one.
    fn height(&self, _v: &VertexId) -> Option<usize> {
        None
    }
}

struct Inner {
    name: String,
    spec: Option<FamilySpec>,
    family: Box<dyn Family>,
    cache: RwLock<HashMap<VertexId, Arc<[VertexId]>>>,
}

/// Shared handle to an immutable graph. Neighbor lists are memoized.
#[derive(Clone)]
pub struct GraphHandle {
    inner: Arc<Inner>,
}

impl fmt::Debug for GraphHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GraphHandle")
            .field("name", &self.inner.name)
            .field("root", &self.root())
            .finish()
    }
}

impl GraphHandle {
    pub fn new(name: impl Into<String>, spec: Option<FamilySpec>, family: Box<dyn Family>) -> Self {
        GraphHandle {
            inner: Arc::new(Inner {
                name: name.into(),
                spec,
                family,
                cache: RwLock::new(HashMap::new()),
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn spec(&self) -> Option<&FamilySpec> {
        self.inner.spec.as_ref()
    }

    pub fn root(&self) -> VertexId {
        self.inner.family.root()
    }

    pub fn separation(&self) -> Option<&dyn SeparationOracle> {
        self.inner.family.separation()
    }

    pub fn height(&self, v: &VertexId) -> Option<usize> {
        self.inner.family.height(v)
    }

    pub fn neighbors(&self, v: &VertexId) -> Result<Arc<[VertexId]>> {
        if let Some(n) = self.inner.cache.read().unwrap().get(v) {
            return Ok(n.clone());
        }
        let list: Arc<[VertexId]> = self.inner.family.neighbors(v)?.into();
        self.inner
            .cache
            .write()
            .unwrap()
            .insert(v.clone(), list.clone());
        Ok(list)
    }

    pub fn degree(&self, v: &VertexId) -> Result<usize> {
        Ok(self.neighbors(v)?.len())
    }

    /// All vertices within distance `r` of `v`.
    pub fn ball(&self, v: &VertexId, r: usize) -> Result<Window> {
        self.neighbors(v)?;
        let mut seen: VertexSet = BTreeSet::new();
        seen.insert(v.clone());
        let mut queue = VecDeque::from([(v.clone(), 0usize)]);
        while let Some((u, d)) = queue.pop_front() {
            if d == r {
                continue;
            }
            for w in self.neighbors(&u)?.iter() {
                if seen.insert(w.clone()) {
                    queue.push_back((w.clone(), d + 1));
                }
            }
        }
        self.induced_window(&seen)
    }

    /// Induced subgraph on `vertices`, annotated with true degrees in G.
    pub fn induced_window<'a, I>(&self, vertices: I) -> Result<Window>
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        let mut vs: Vec<VertexId> = vertices.into_iter().cloned().collect();
        vs.sort();
        vs.dedup();
        let mut lists = Vec::with_capacity(vs.len());
        for v in &vs {
            lists.push(self.neighbors(v)?);
        }
        Ok(Window::from_neighbor_lists(vs, &lists))
    }

    /// `d_G(U)`: the mean of G-degrees over `u`.
    pub fn avg_set_degree<'a, I>(&self, u: I) -> Result<Rational>
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        let set: VertexSet = u.into_iter().cloned().collect();
        if set.is_empty() {
            return Err(Error::domain("average degree of the empty set"));
        }
        let mut total = 0i64;
        for v in &set {
            total += self.degree(v)? as i64;
        }
        Ok(Rational::new(total, set.len() as i64))
    }

    /// `N(U)`: vertices outside `u` with a neighbor in `u`.
    pub fn neighborhood(&self, u: &VertexSet) -> Result<VertexSet> {
        let mut out = VertexSet::new();
        for v in u {
            for w in self.neighbors(v)?.iter() {
                if !u.contains(w) {
                    out.insert(w.clone());
                }
            }
        }
        Ok(out)
    }

    /// Whether `G[u]` is connected (the empty set counts as connected).
    pub fn is_connected_set(&self, u: &VertexSet) -> Result<bool> {
        let Some(start) = u.iter().next() else {
            return Ok(true);
        };
        let mut seen = BTreeSet::from([start.clone()]);
        let mut stack = vec![start.clone()];
        while let Some(x) = stack.pop() {
            for w in self.neighbors(&x)?.iter() {
                if u.contains(w) && seen.insert(w.clone()) {
                    stack.push(w.clone());
                }
            }
        }
        Ok(seen.len() == u.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilyKind;
    use crate::generators::make_graph;

    fn tree(k: u32) -> GraphHandle {
        make_graph(&FamilySpec::new(FamilyKind::BranchingTree, k)).unwrap()
    }

    #[test]
    fn ball_sizes_in_binary_tree() {
        let g = tree(2);
        let r = g.root();
        let b0 = g.ball(&r, 0).unwrap();
        assert_eq!(b0.len(), 1);
        assert_eq!(b0.true_degree(0), 2);
        let b1 = g.ball(&r, 1).unwrap();
        assert_eq!((b1.len(), b1.edge_count()), (3, 2));
        assert_eq!(tree(3).ball(&r, 2).unwrap().len(), 13);
    }

    #[test]
    fn induced_window_of_ball_is_the_ball() {
        let g = tree(3);
        let b = g.ball(&g.root(), 3).unwrap();
        let again = g.induced_window(b.vertices()).unwrap();
        assert_eq!(b, again);
    }

    #[test]
    fn average_set_degree() {
        let g = tree(3);
        let r = g.root();
        let c = g.neighbors(&r).unwrap()[0].clone();
        assert_eq!(g.avg_set_degree([&r, &c]).unwrap(), Rational::new(7, 2));
        assert!(matches!(
            g.avg_set_degree(std::iter::empty()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn memoized_answers_are_stable() {
        let g = tree(4);
        let v = VertexId::new("r.2.3");
        let a = g.neighbors(&v).unwrap();
        let b = g.neighbors(&v).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
    }
}
