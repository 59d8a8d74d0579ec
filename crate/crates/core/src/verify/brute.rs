use crate::error::{Error, Result};
use crate::graph::Rational;
use crate::window::Window;

pub const BRUTE_LIMIT: usize = 12;
pub const BRUTE_DENSEST_LIMIT: usize = 16;

fn masks(w: &Window, limit: usize) -> Result<Vec<u32>> {
    if w.len() > limit {
        return Err(Error::Size {
            size: w.len(),
            limit,
        });
    }
    Ok((0..w.len())
        .map(|i| w.neighbors(i).iter().fold(0u32, |m, &j| m | 1 << j))
        .collect())
}

/// Whether some nonempty vertex subset induces minimum degree `>= k`, by
/// trying all of them.
pub fn brute_min_degree(w: &Window, k: usize) -> Result<bool> {
    let adj = masks(w, BRUTE_LIMIT)?;
    let n = w.len();
    Ok((1u32..1 << n).any(|set| {
        (0..n)
            .filter(|&i| set >> i & 1 == 1)
            .all(|i| (adj[i] & set).count_ones() as usize >= k)
    }))
}

/// Largest average degree `2|E(U)|/|U|` over all nonempty subsets `U`.
pub fn brute_densest(w: &Window) -> Result<Rational> {
    let adj = masks(w, BRUTE_DENSEST_LIMIT)?;
    let n = w.len();
    if n == 0 {
        return Err(Error::domain("densest subgraph of an empty window"));
    }
    let mut best = Rational::from_integer(0);
    for set in 1u32..1 << n {
        let twice_edges: u32 = (0..n).filter(|&i| set >> i & 1 == 1).map(|i| (adj[i] & set).count_ones()).sum();
        let d = Rational::new(twice_edges as i64, set.count_ones() as i64);
        if d > best {
            best = d;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let c5 = Window::from_edges(
            ["a", "b", "c", "d", "e"],
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")],
        )
        .unwrap();
        assert!(brute_min_degree(&c5, 2).unwrap());
        assert!(!brute_min_degree(&c5, 3).unwrap());
        let tree = Window::from_edges(["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("c", "d")]).unwrap();
        assert!(!brute_min_degree(&tree, 2).unwrap());
        assert_eq!(brute_densest(&c5).unwrap(), Rational::from_integer(2));
    }
}
