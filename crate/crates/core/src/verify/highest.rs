use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GraphHandle, VertexId};
use crate::window::Window;

use super::kcore::k_core_trace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HighestCheck {
    pub checked: usize,
    /// Vertex sets with no highest vertex of degree at most 2.
    pub failures: Vec<Vec<VertexId>>,
}

impl HighestCheck {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn heights(g: &GraphHandle, w: &Window) -> Result<Vec<usize>> {
    w.vertices()
        .iter()
        .map(|v| {
            g.height(v)
                .ok_or_else(|| Error::domain(format!("{} has no construction height for {v}", g.name())))
        })
        .collect()
}

fn ok_on(w: &Window, height: &[usize], keep: &[bool]) -> bool {
    let Some(top) = (0..w.len()).filter(|&i| keep[i]).map(|i| height[i]).max() else {
        return true;
    };
    (0..w.len())
        .filter(|&i| keep[i] && height[i] == top)
        .any(|i| w.neighbors(i).iter().filter(|&&j| keep[j]).count() <= 2)
}

/// Whether some highest vertex of `w` has degree at most 2 in `w`.
pub fn highest_vertex_ok(g: &GraphHandle, w: &Window) -> Result<bool> {
    let height = heights(g, w)?;
    Ok(ok_on(w, &height, &vec![true; w.len()]))
}

/// Checks the highest-vertex property on the whole window, on every
/// stage of its 3-core peeling, and on `samples` random vertex subsets
/// (half uniform, half grown connected from a random start).
pub fn highest_vertex_check(g: &GraphHandle, w: &Window, samples: usize, seed: u64) -> Result<HighestCheck> {
    let height = heights(g, w)?;
    let n = w.len();
    let mut sets: Vec<Vec<bool>> = Vec::new();
    let mut keep = vec![true; n];
    sets.push(keep.clone());
    for i in k_core_trace(w, 3).removed {
        keep[i] = false;
        sets.push(keep.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..samples {
        if n == 0 {
            break;
        }
        if s % 2 == 0 {
            sets.push((0..n).map(|_| rng.gen_bool(0.5)).collect());
        } else {
            let target = rng.gen_range(1..=n);
            let mut keep = vec![false; n];
            let mut frontier = vec![rng.gen_range(0..n)];
            keep[frontier[0]] = true;
            let mut size = 1;
            while size < target && !frontier.is_empty() {
                let x = frontier[rng.gen_range(0..frontier.len())];
                let fresh: Vec<usize> = w.neighbors(x).iter().copied().filter(|&j| !keep[j]).collect();
                if fresh.is_empty() {
                    frontier.retain(|&y| y != x);
                    continue;
                }
                let y = fresh[rng.gen_range(0..fresh.len())];
                keep[y] = true;
                frontier.push(y);
                size += 1;
            }
            sets.push(keep);
        }
    }
    let failures: Vec<Vec<VertexId>> = sets
        .par_iter()
        .filter(|keep| !ok_on(w, &height, keep))
        .map(|keep| (0..n).filter(|&i| keep[i]).map(|i| w.vertex(i).clone()).collect())
        .collect();
    Ok(HighestCheck {
        checked: sets.len(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{FamilyKind, FamilySpec};
    use crate::generators::{make_graph, window_graph};

    #[test]
    fn holds_on_theorem3_balls() {
        let g = make_graph(&FamilySpec::new(FamilyKind::Theorem3, 3)).unwrap();
        let w = g.ball(&g.root(), 4).unwrap();
        let c = highest_vertex_check(&g, &w, 200, 7).unwrap();
        assert!(c.ok());
        assert!(c.checked > 200);
        let single = w.induced(&[0]);
        assert!(highest_vertex_ok(&g, &single).unwrap());
    }

    #[test]
    fn needs_heights() {
        let w = Window::from_edges(["a", "b"], [("a", "b")]).unwrap();
        let g = window_graph("edge", w.clone(), VertexId::new("a"));
        assert!(matches!(highest_vertex_ok(&g, &w), Err(Error::Domain(_))));
    }
}
