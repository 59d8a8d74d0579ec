use std::collections::BTreeSet;

use crate::window::Window;

/// Peeling run: the core and the removal order (window indices).
#[derive(Clone, Debug)]
pub struct CoreTrace {
    pub core: Window,
    pub removed: Vec<usize>,
}

/// Repeatedly removes a vertex of least degree below `k`, ties broken by
/// vertex order. What remains is the largest sub-window of minimum
/// degree `>= k`.
pub fn k_core_trace(w: &Window, k: usize) -> CoreTrace {
    let n = w.len();
    let mut deg: Vec<usize> = (0..n).map(|i| w.degree(i)).collect();
    let mut alive = vec![true; n];
    let mut queue: BTreeSet<(usize, usize)> = (0..n).filter(|&i| deg[i] < k).map(|i| (deg[i], i)).collect();
    let mut removed = Vec::new();
    while let Some((_, i)) = queue.pop_first() {
        alive[i] = false;
        removed.push(i);
        for &j in w.neighbors(i) {
            if !alive[j] {
                continue;
            }
            if deg[j] < k {
                queue.remove(&(deg[j], j));
            }
            deg[j] -= 1;
            if deg[j] < k {
                queue.insert((deg[j], j));
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    CoreTrace {
        core: w.induced(&keep),
        removed,
    }
}

pub fn k_core(w: &Window, k: usize) -> Window {
    k_core_trace(w, k).core
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Window {
        let names: Vec<String> = (0..n).map(|i| format!("v{i:02}")).collect();
        let edges: Vec<(String, String)> = (0..n).map(|i| (names[i].clone(), names[(i + 1) % n].clone())).collect();
        Window::from_edges(names, edges).unwrap()
    }

    fn path(n: usize) -> Window {
        let names: Vec<String> = (0..n).map(|i| format!("v{i:02}")).collect();
        let edges: Vec<(String, String)> = (1..n).map(|i| (names[i - 1].clone(), names[i].clone())).collect();
        Window::from_edges(names, edges).unwrap()
    }

    #[test]
    fn cycles_and_paths() {
        assert_eq!(k_core(&cycle(10), 2).len(), 10);
        assert!(k_core(&cycle(10), 3).is_empty());
        assert!(k_core(&path(10), 2).is_empty());
        assert_eq!(k_core(&path(10), 1).len(), 10);
    }

    #[test]
    fn pendant_path_is_peeled() {
        let w = Window::from_edges(
            ["a", "b", "c", "d", "e"],
            [("a", "b"), ("b", "c"), ("c", "a"), ("c", "d"), ("d", "e")],
        )
        .unwrap();
        let t = k_core_trace(&w, 2);
        assert_eq!(t.core.vertices().iter().map(|v| v.as_str()).collect::<Vec<_>>(), ["a", "b", "c"]);
        assert_eq!(t.removed, [4, 3]);
        assert_eq!(k_core(&t.core, 2), t.core);
    }
}
