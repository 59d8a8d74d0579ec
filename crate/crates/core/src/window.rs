//! Finite induced snapshots of a graph, with true degrees attached.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Rational, VertexId};

/// A finite induced subgraph. Vertices are stored sorted; indices follow
/// vertex order, so index comparisons agree with address comparisons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    vertices: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    adj: Vec<Vec<usize>>,
    true_degree: Vec<usize>,
}

/// Serialized form of a [`Window`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowData {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
    pub true_degree: Vec<usize>,
}

impl Window {
    /// Builds the window on `vertices` (sorted, distinct) from full neighbor
    /// lists in G; the true degree is the list length.
    pub fn from_neighbor_lists<L: AsRef<[VertexId]>>(vertices: Vec<VertexId>, lists: &[L]) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let index: HashMap<VertexId, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut adj = Vec::with_capacity(vertices.len());
        let mut true_degree = Vec::with_capacity(vertices.len());
        for list in lists {
            let list = list.as_ref();
            true_degree.push(list.len());
            let mut row: Vec<usize> = list.iter().filter_map(|w| index.get(w).copied()).collect();
            row.sort_unstable();
            row.dedup();
            adj.push(row);
        }
        Window {
            vertices,
            index,
            adj,
            true_degree,
        }
    }

    /// A closed finite graph: every true degree equals the window degree.
    pub fn from_edges<V: Into<VertexId> + Clone>(
        vertices: impl IntoIterator<Item = V>,
        edges: impl IntoIterator<Item = (V, V)>,
    ) -> Result<Self> {
        let vs: BTreeSet<VertexId> = vertices.into_iter().map(Into::into).collect();
        let vertices: Vec<VertexId> = vs.into_iter().collect();
        let index: HashMap<VertexId, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        for (a, b) in edges {
            let (a, b): (VertexId, VertexId) = (a.into(), b.into());
            let (Some(&i), Some(&j)) = (index.get(&a), index.get(&b)) else {
                return Err(Error::Parse(format!("edge {a} -- {b} has an unknown endpoint")));
            };
            if i == j {
                return Err(Error::Parse(format!("loop at {a}")));
            }
            adj[i].push(j);
            adj[j].push(i);
        }
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
        }
        let true_degree = adj.iter().map(Vec::len).collect();
        Ok(Window {
            vertices,
            index,
            adj,
            true_degree,
        })
    }

    pub fn empty() -> Self {
        Window {
            vertices: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
            true_degree: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &VertexId {
        &self.vertices[i]
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.index.contains_key(v)
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn degree_of(&self, v: &VertexId) -> Option<usize> {
        self.index_of(v).map(|i| self.degree(i))
    }

    pub fn true_degree(&self, i: usize) -> usize {
        self.true_degree[i]
    }

    /// The vertex has a neighbor in G outside the window.
    pub fn is_boundary(&self, i: usize) -> bool {
        self.true_degree[i] > self.adj[i].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edge_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.edge_indices()
            .map(|(i, j)| (self.vertices[i].clone(), self.vertices[j].clone()))
            .collect()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    /// `2|E|/|V|`; `None` for the empty window.
    pub fn avg_degree(&self) -> Option<Rational> {
        if self.is_empty() {
            return None;
        }
        Some(Rational::new(2 * self.edge_count() as i64, self.len() as i64))
    }

    /// Sub-window on the given indices. True degrees are carried over.
    pub fn induced(&self, keep: &[usize]) -> Window {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut remap = vec![usize::MAX; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let vertices: Vec<VertexId> = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        let index = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let adj = keep
            .iter()
            .map(|&i| {
                self.adj[i]
                    .iter()
                    .filter_map(|&j| (remap[j] != usize::MAX).then_some(remap[j]))
                    .collect()
            })
            .collect();
        let true_degree = keep.iter().map(|&i| self.true_degree[i]).collect();
        Window {
            vertices,
            index,
            adj,
            true_degree,
        }
    }

    pub fn induced_by_ids<'a>(&self, ids: impl IntoIterator<Item = &'a VertexId>) -> Window {
        let keep: Vec<usize> = ids.into_iter().filter_map(|v| self.index_of(v)).collect();
        self.induced(&keep)
    }

    pub fn to_data(&self) -> WindowData {
        WindowData {
            vertices: self.vertices.clone(),
            edges: self.edges(),
            true_degree: self.true_degree.clone(),
        }
    }

    pub fn from_data(data: &WindowData) -> Result<Self> {
        let mut w = Window::from_edges(data.vertices.iter().cloned(), data.edges.iter().cloned())?;
        if data.true_degree.len() != w.len() {
            return Err(Error::Parse("true_degree length mismatch".into()));
        }
        w.true_degree = data.true_degree.clone();
        Ok(w)
    }

    /// DOT export; each vertex carries its true degree and boundary flag.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph {name} {{");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(
                s,
                "  \"{}\" [true_degree={}, boundary={}];",
                v,
                self.true_degree[i],
                self.is_boundary(i)
            );
        }
        for (i, j) in self.edge_indices() {
            let _ = writeln!(s, "  \"{}\" -- \"{}\";", self.vertices[i], self.vertices[j]);
        }
        s.push_str("}\n");
        s
    }

    /// Reads the DOT subset written by [`Window::to_dot`]: quoted or bare
    /// identifiers, `a -- b` edges, optional `true_degree=` attributes.
    pub fn from_dot(text: &str) -> Result<Self> {
        let mut vertices = BTreeSet::new();
        let mut edges = Vec::new();
        let mut declared: HashMap<VertexId, usize> = HashMap::new();
        for raw in text.lines() {
            let line = raw.trim().trim_end_matches(';').trim();
            if line.is_empty()
                || line.starts_with("//")
                || line.starts_with('#')
                || line.ends_with('{')
                || line == "}"
            {
                continue;
            }
            let (body, attrs) = match line.find('[') {
                Some(p) => (line[..p].trim(), Some(&line[p..])),
                None => (line, None),
            };
            if let Some((a, b)) = body.split_once("--") {
                let a = VertexId::new(unquote(a));
                let b = VertexId::new(unquote(b));
                vertices.insert(a.clone());
                vertices.insert(b.clone());
                edges.push((a, b));
            } else {
                let v = VertexId::new(unquote(body));
                if let Some(attrs) = attrs {
                    if let Some(p) = attrs.find("true_degree=") {
                        let digits: String = attrs[p + 12..]
                            .chars()
                            .take_while(char::is_ascii_digit)
                            .collect();
                        let d = digits
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad true_degree in {raw:?}")))?;
                        declared.insert(v.clone(), d);
                    }
                }
                vertices.insert(v);
            }
        }
        let mut w = Window::from_edges(vertices, edges)?;
        for (v, d) in declared {
            let i = w.index[&v];
            if d < w.adj[i].len() {
                return Err(Error::Parse(format!("true degree of {v} below window degree")));
            }
            w.true_degree[i] = d;
        }
        Ok(w)
    }
}

fn unquote(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('"')
        .and_then(|s| s.strip_suffix('"'))
        .unwrap_or(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Window {
        let vs: Vec<String> = (0..n).map(|i| format!("v{i:02}")).collect();
        let es = (0..n).map(|i| (vs[i].clone(), vs[(i + 1) % n].clone()));
        Window::from_edges(vs.clone(), es).unwrap()
    }

    #[test]
    fn closed_windows_have_no_boundary() {
        let w = cycle(6);
        assert_eq!(w.edge_count(), 6);
        assert!((0..6).all(|i| !w.is_boundary(i)));
        assert_eq!(w.avg_degree(), Some(Rational::from_integer(2)));
    }

    #[test]
    fn induced_keeps_true_degrees() {
        let w = cycle(6);
        let sub = w.induced(&[0, 1, 2]);
        assert_eq!(sub.edge_count(), 2);
        assert!(sub.is_boundary(0));
        assert!(!sub.is_boundary(1));
        assert_eq!(sub.true_degree(0), 2);
    }

    #[test]
    fn dot_round_trip() {
        let w = cycle(5).induced(&[0, 1, 2, 3]);
        let back = Window::from_dot(&w.to_dot("g")).unwrap();
        assert_eq!(w, back);
    }

    #[test]
    fn data_round_trip() {
        let w = cycle(7).induced(&[1, 2, 5]);
        assert_eq!(Window::from_data(&w.to_data()).unwrap(), w);
    }

    #[test]
    fn unknown_edge_endpoint_is_rejected() {
        assert!(Window::from_edges(["a"], [("a", "b")]).is_err());
    }
}
