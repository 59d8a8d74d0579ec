use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Rational;
use crate::window::Window;

pub const DENSEST_LIMIT: usize = 2000;

#[derive(Clone, Debug)]
pub struct Densest {
    pub window: Window,
    /// `2|E|/|V|` of `window`.
    pub avg_degree: Rational,
}

struct Flow {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<i64>,
    next: Vec<usize>,
    level: Vec<u32>,
    iter: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl Flow {
    fn new(n: usize) -> Self {
        Flow {
            head: vec![NIL; n],
            to: Vec::new(),
            cap: Vec::new(),
            next: Vec::new(),
            level: vec![0; n],
            iter: vec![0; n],
        }
    }

    fn add(&mut self, a: usize, b: usize, c: i64) {
        for (x, y, c) in [(a, b, c), (b, a, 0)] {
            self.to.push(y);
            self.cap.push(c);
            self.next.push(self.head[x]);
            self.head[x] = self.to.len() - 1;
        }
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(u32::MAX);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            let mut e = self.head[x];
            while e != NIL {
                let y = self.to[e];
                if self.cap[e] > 0 && self.level[y] == u32::MAX {
                    self.level[y] = self.level[x] + 1;
                    q.push_back(y);
                }
                e = self.next[e];
            }
        }
        self.level[t] != u32::MAX
    }

    fn dfs(&mut self, x: usize, t: usize, f: i64) -> i64 {
        if x == t {
            return f;
        }
        while self.iter[x] != NIL {
            let e = self.iter[x];
            let y = self.to[e];
            if self.cap[e] > 0 && self.level[y] == self.level[x] + 1 {
                let d = self.dfs(y, t, f.min(self.cap[e]));
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            self.iter[x] = self.next[e];
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.iter.clone_from(&self.head);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }
}

/// Vertex set maximizing `b|E(U)| - a|U|`, with that value. Edge nodes
/// hang off the source with capacity `b`, point to both endpoints with
/// infinite capacity, and vertices drain to the sink with capacity `a`;
/// the source side of a minimum cut is an optimal closure.
fn best_closure(w: &Window, edges: &[(usize, usize)], a: i64, b: i64) -> (i64, Vec<usize>) {
    let n = w.len();
    let m = edges.len();
    let (s, t) = (n + m, n + m + 1);
    let mut fl = Flow::new(n + m + 2);
    let inf = b * m as i64 + 1;
    for (e, &(i, j)) in edges.iter().enumerate() {
        fl.add(s, n + e, b);
        fl.add(n + e, i, inf);
        fl.add(n + e, j, inf);
    }
    for i in 0..n {
        fl.add(i, t, a);
    }
    let cut = fl.max_flow(s, t);
    fl.bfs(s, t);
    let side: Vec<usize> = (0..n).filter(|&i| fl.level[i] != u32::MAX).collect();
    (b * m as i64 - cut, side)
}

/// Sub-window of largest average degree, exactly: Dinkelbach iteration on
/// the density `|E(U)|/|U|`, each round a minimum cut.
pub fn densest_subgraph(w: &Window) -> Result<Densest> {
    if w.is_empty() {
        return Err(Error::domain("densest subgraph of an empty window"));
    }
    if w.len() > DENSEST_LIMIT {
        return Err(Error::Size {
            size: w.len(),
            limit: DENSEST_LIMIT,
        });
    }
    let edges: Vec<(usize, usize)> = w.edge_indices().collect();
    let mut best: Vec<usize> = (0..w.len()).collect();
    let mut density = Rational::new(edges.len() as i64, w.len() as i64);
    loop {
        let (value, side) = best_closure(w, &edges, *density.numer(), *density.denom());
        if value <= 0 || side.is_empty() {
            break;
        }
        let sub = w.induced(&side);
        density = Rational::new(sub.edge_count() as i64, sub.len() as i64);
        best = side;
    }
    let window = w.induced(&best);
    Ok(Densest {
        avg_degree: density * 2,
        window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_and_star() {
        let k4 = Window::from_edges(
            ["a", "b", "c", "d"],
            [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")],
        )
        .unwrap();
        assert_eq!(densest_subgraph(&k4).unwrap().avg_degree, Rational::from_integer(3));
        let star = Window::from_edges(
            ["c", "l1", "l2", "l3", "l4", "l5"],
            [("c", "l1"), ("c", "l2"), ("c", "l3"), ("c", "l4"), ("c", "l5")],
        )
        .unwrap();
        let d = densest_subgraph(&star).unwrap();
        assert_eq!(d.avg_degree, Rational::new(5, 3));
        assert_eq!(d.window.len(), 6);
    }

    #[test]
    fn finds_the_dense_part() {
        // K4 with a long tail attached.
        let mut edges = vec![("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d"), ("d", "e")];
        edges.extend([("e", "f"), ("f", "g"), ("g", "h")]);
        let w = Window::from_edges(["a", "b", "c", "d", "e", "f", "g", "h"], edges).unwrap();
        let d = densest_subgraph(&w).unwrap();
        assert_eq!(d.avg_degree, Rational::from_integer(3));
        assert_eq!(d.window.len(), 4);
    }

    #[test]
    fn edgeless_window() {
        let w = Window::from_edges(["a", "b"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(densest_subgraph(&w).unwrap().avg_degree, Rational::from_integer(0));
    }
}
