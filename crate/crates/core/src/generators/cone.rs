//! Exact separation for graphs built on a rooted address tree in which
//! every cone `U(x)` (the addresses extending `x`) is infinite, induces a
//! connected subgraph, and is left only by edges at `x`.
//!
//! For a finite `S`, let `D` be the prefix closure of `S`. Every vertex
//! outside `D` lies in the cone of a unique anchor: an address not in `D`
//! whose parent is in `D`. Such a cone avoids `S`, so the components of
//! `G - S` are the classes of the finite graph on `(D \ S) ∪ anchors`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::graph::{ComponentKey, Partition, VertexId, VertexSet};
use crate::regions::UnionFind;

use super::tokens::parent_str;

pub(crate) trait ConeTree: Send + Sync {
    /// Children in the address tree (not necessarily graph neighbors).
    fn tree_children(&self, v: &VertexId) -> Result<Vec<VertexId>>;
    fn graph_neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>>;
}

pub(crate) fn prefix_closure(sep: &VertexSet) -> BTreeSet<String> {
    let mut d = BTreeSet::new();
    for s in sep {
        let mut cur = Some(s.as_str());
        while let Some(x) = cur {
            if !d.insert(x.to_string()) {
                break;
            }
            cur = parent_str(x);
        }
    }
    d
}

/// The vertex of `(D \ S) ∪ anchors` whose cone holds `v`.
fn node_of<'v>(d: &BTreeSet<String>, v: &'v str) -> &'v str {
    let mut cur = v;
    loop {
        if d.contains(cur) {
            return cur;
        }
        match parent_str(cur) {
            Some(p) if d.contains(p) => return cur,
            Some(p) => cur = p,
            None => return cur,
        }
    }
}

struct ConePartition {
    sep: VertexSet,
    d: BTreeSet<String>,
    class: BTreeMap<String, ComponentKey>,
    finite: Vec<Option<Vec<VertexId>>>,
}

impl Partition for ConePartition {
    fn key(&self, v: &VertexId) -> Result<Option<ComponentKey>> {
        if self.sep.contains(v) {
            return Ok(None);
        }
        if self.d.is_empty() {
            return Ok(Some(0));
        }
        Ok(Some(self.class[node_of(&self.d, v.as_str())]))
    }

    fn finite_members(&self, key: ComponentKey) -> Option<Vec<VertexId>> {
        self.finite.get(key).cloned().flatten()
    }
}

pub(crate) fn partition<'a, T: ConeTree>(tree: &'a T, sep: &VertexSet) -> Result<Box<dyn Partition + 'a>> {
    let d = prefix_closure(sep);
    if d.is_empty() {
        return Ok(Box::new(ConePartition {
            sep: sep.clone(),
            d,
            class: BTreeMap::new(),
            finite: vec![None],
        }));
    }
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut is_anchor = Vec::new();
    for x in &d {
        if !sep.contains(x.as_str()) {
            index.insert(x.clone(), is_anchor.len());
            is_anchor.push(false);
        }
        for c in tree.tree_children(&VertexId::new(x))? {
            if !d.contains(c.as_str()) {
                index.insert(c.as_str().to_string(), is_anchor.len());
                is_anchor.push(true);
            }
        }
    }
    let mut uf = UnionFind::new(is_anchor.len());
    for (x, &i) in &index {
        for w in tree.graph_neighbors(&VertexId::new(x))? {
            if sep.contains(&w) {
                continue;
            }
            let n = node_of(&d, w.as_str());
            let j = *index
                .get(n)
                .expect("neighbors of D and of anchors map to known nodes");
            uf.union(i, j);
        }
    }
    let mut root_class: BTreeMap<usize, ComponentKey> = BTreeMap::new();
    let mut class = BTreeMap::new();
    let mut members: Vec<Vec<VertexId>> = Vec::new();
    let mut infinite: Vec<bool> = Vec::new();
    for (x, &i) in &index {
        let r = uf.find(i);
        let key = *root_class.entry(r).or_insert_with(|| {
            members.push(Vec::new());
            infinite.push(false);
            members.len() - 1
        });
        class.insert(x.clone(), key);
        if is_anchor[i] {
            infinite[key] = true;
        } else {
            members[key].push(VertexId::new(x));
        }
    }
    let finite = members
        .into_iter()
        .zip(infinite)
        .map(|(m, inf)| (!inf).then_some(m))
        .collect();
    Ok(Box::new(ConePartition {
        sep: sep.clone(),
        d,
        class,
        finite,
    }))
}
