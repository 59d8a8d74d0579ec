//! Exact separation for graphs whose vertices sit on finite levels, with
//! edges spanning at most one level. Above any level `L` the graph splits
//! into finitely many infinite connected tails, which the family names.
//! Removing a finite `S` with top level `L` leaves the finite part below
//! `L` plus those tails, so a union-find on that finite graph decides all
//! components.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::graph::{ComponentKey, Partition, VertexId, VertexSet};
use crate::regions::UnionFind;

pub(crate) trait Leveled: Send + Sync {
    fn level(&self, v: &VertexId) -> Result<usize>;
    fn level_vertices(&self, n: usize) -> Vec<VertexId>;
    /// Number of components of the subgraph on levels `> above`.
    fn tail_count(&self, above: usize) -> usize;
    /// Which of those components holds `v` (`level(v) > above`).
    fn tail_of(&self, v: &VertexId, above: usize) -> Result<usize>;
    fn graph_neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>>;
}

struct LevelPartition<'a, T: Leveled> {
    family: &'a T,
    sep: VertexSet,
    top: usize,
    low: BTreeMap<VertexId, ComponentKey>,
    tails: Vec<ComponentKey>,
    finite: Vec<Option<Vec<VertexId>>>,
}

impl<T: Leveled> Partition for LevelPartition<'_, T> {
    fn key(&self, v: &VertexId) -> Result<Option<ComponentKey>> {
        if self.sep.contains(v) {
            return Ok(None);
        }
        if self.family.level(v)? > self.top {
            return Ok(Some(self.tails[self.family.tail_of(v, self.top)?]));
        }
        Ok(self.low.get(v).copied())
    }

    fn finite_members(&self, key: ComponentKey) -> Option<Vec<VertexId>> {
        self.finite.get(key).cloned().flatten()
    }
}

pub(crate) fn partition<'a, T: Leveled>(family: &'a T, sep: &VertexSet) -> Result<Box<dyn Partition + 'a>> {
    let mut top = 0;
    for s in sep {
        top = top.max(family.level(s)?);
    }
    if sep.is_empty() {
        // One infinite component: every level-0 vertex and every tail map to 0.
        let n = family.tail_count(0);
        let mut low = BTreeMap::new();
        for v in family.level_vertices(0) {
            low.insert(v, 0);
        }
        return Ok(Box::new(LevelPartition {
            family,
            sep: sep.clone(),
            top: 0,
            low,
            tails: vec![0; n],
            finite: vec![None],
        }));
    }
    let mut low_index: BTreeMap<VertexId, usize> = BTreeMap::new();
    for n in 0..=top {
        for v in family.level_vertices(n) {
            if !sep.contains(&v) {
                let i = low_index.len();
                low_index.insert(v, i);
            }
        }
    }
    let low_count = low_index.len();
    let tail_count = family.tail_count(top);
    let mut uf = UnionFind::new(low_count + tail_count);
    for (v, &i) in &low_index {
        for w in family.graph_neighbors(v)? {
            if sep.contains(&w) {
                continue;
            }
            let j = match low_index.get(&w) {
                Some(&j) => j,
                None => low_count + family.tail_of(&w, top)?,
            };
            uf.union(i, j);
        }
    }
    let mut root_key: BTreeMap<usize, ComponentKey> = BTreeMap::new();
    let mut members: Vec<Vec<VertexId>> = Vec::new();
    let mut infinite: Vec<bool> = Vec::new();
    let mut key_of = |uf: &mut UnionFind, i: usize| {
        let r = uf.find(i);
        *root_key.entry(r).or_insert_with(|| {
            members.push(Vec::new());
            infinite.push(false);
            members.len() - 1
        })
    };
    let mut tails = Vec::with_capacity(tail_count);
    for t in 0..tail_count {
        tails.push(key_of(&mut uf, low_count + t));
    }
    let mut low = BTreeMap::new();
    for (v, &i) in &low_index {
        let key = key_of(&mut uf, i);
        low.insert(v.clone(), key);
    }
    for &t in &tails {
        infinite[t] = true;
    }
    for (v, &key) in &low {
        members[key].push(v.clone());
    }
    let finite = members
        .into_iter()
        .zip(infinite)
        .map(|(m, inf)| (!inf).then_some(m))
        .collect();
    Ok(Box::new(LevelPartition {
        family,
        sep: sep.clone(),
        top,
        low,
        tails,
        finite,
    }))
}
