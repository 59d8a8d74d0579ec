use proptest::prelude::*;

use endgraph::generators::tokens::{address, format_tokens, parse_tokens, Token};
use endgraph::generators::{branching_tree, canonical_end_oracle, clique_ray::CliqueRay, make_graph, theorem3};
use endgraph::regions::{nestedness, out_stats, Region};
use endgraph::verify::{brute_densest, brute_min_degree, densest_subgraph, k_core};
use endgraph::window::Window;
use endgraph::{Budget, FamilyKind, FamilySpec};

fn graph_from_bits(n: usize, bits: &[bool]) -> Window {
    let names: Vec<String> = (0..n).map(|i| format!("v{i:02}")).collect();
    let mut edges = Vec::new();
    let mut b = bits.iter();
    for i in 0..n {
        for j in i + 1..n {
            if *b.next().unwrap_or(&false) {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    Window::from_edges(names, edges).unwrap()
}

fn small_graph(max: usize) -> impl Strategy<Value = Window> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn token() -> impl Strategy<Value = Token> {
    prop_oneof![
        (0u32..5).prop_map(Token::Up),
        (0u32..5, 0u32..5).prop_filter("distinct", |(i, j)| i != j).prop_map(|(i, j)| Token::sub(i, j)),
    ]
}

proptest! {
    #[test]
    fn k_core_matches_brute_force(w in small_graph(10), k in 1usize..5) {
        let core = k_core(&w, k);
        prop_assert_eq!(!core.is_empty(), brute_min_degree(&w, k).unwrap());
        if let Some(d) = core.min_degree() {
            prop_assert!(d >= k);
        }
        prop_assert_eq!(k_core(&core, k), core.clone());
        let next = k_core(&w, k + 1);
        prop_assert!(next.vertices().iter().all(|v| core.contains(v)));
    }

    #[test]
    fn densest_matches_brute_force(w in small_graph(9)) {
        let d = densest_subgraph(&w).unwrap();
        prop_assert_eq!(d.avg_degree, brute_densest(&w).unwrap());
        prop_assert_eq!(d.window.avg_degree().unwrap(), d.avg_degree);
    }

    #[test]
    fn addresses_round_trip(tokens in proptest::collection::vec(token(), 0..8)) {
        let s = format_tokens(&tokens);
        prop_assert_eq!(parse_tokens(&s), Some(tokens.clone()));
        let v = address(&tokens);
        prop_assert_eq!(v.as_str(), format!("r{s}"));
    }

    #[test]
    fn dot_round_trip(w in small_graph(8)) {
        prop_assert_eq!(Window::from_dot(&w.to_dot("g")).unwrap(), w);
    }

    #[test]
    fn tree_nestedness_is_symmetric_and_cones_nest(a in proptest::collection::vec(0u32..3, 2..6), b in proptest::collection::vec(0u32..3, 2..6)) {
        let g = make_graph(&FamilySpec::new(FamilyKind::BranchingTree, 3)).unwrap();
        let t = |p: &[u32]| address(&p.iter().map(|&m| Token::Up(m)).collect::<Vec<_>>());
        let budget = Budget::unlimited();
        let regions = [
            branching_tree::cone_region(&t(&a)),
            branching_tree::parent_pair_region(3, &t(&a)),
            branching_tree::cone_region(&t(&b)),
            branching_tree::parent_pair_region(3, &t(&b)),
        ];
        for x in &regions {
            for y in &regions {
                let xy = nestedness(&g, x, y, &budget).unwrap();
                prop_assert_eq!(nestedness(&g, y, x, &budget).unwrap(), xy.swapped());
            }
        }
        // Cones are nested; parent pair regions of siblings share the parent.
        prop_assert!(nestedness(&g, &regions[0], &regions[2], &budget).unwrap().is_nested());
    }

    #[test]
    fn clique_tails_are_nested(rays in 1u32..4, k in 1u32..4, picks in proptest::collection::vec((0u32..3, 1usize..6), 2..6)) {
        let spec = FamilySpec::new(FamilyKind::CliqueRay, k).with_rays(rays);
        let g = make_graph(&spec).unwrap();
        let f = CliqueRay::new(k, rays, 0);
        let budget = Budget::unlimited();
        let regions: Vec<Region> = picks.iter().map(|&(r, i)| f.tail(r % rays, i)).collect();
        for x in &regions {
            for y in &regions {
                prop_assert!(nestedness(&g, x, y, &budget).unwrap().is_nested());
            }
        }
    }

    #[test]
    fn theorem3_regions_have_two_boundary_vertices(k in 2u32..6, path in proptest::collection::vec(0u32..6, 0..4), i in 0u32..6, j in 0u32..6) {
        let (i, j) = (i % (k + 1), j % (k + 1));
        prop_assume!(i != j);
        let mut t: Vec<Token> = path.iter().map(|&m| Token::Up(m % (k + 1))).collect();
        t.push(Token::sub(i, j));
        let s = address(&t);
        let g = make_graph(&FamilySpec::new(FamilyKind::Theorem3, k)).unwrap();
        let r = theorem3::c_s(k, &s).unwrap();
        let stats = out_stats(&g, &r, &Budget::unlimited()).unwrap();
        prop_assert_eq!(stats.boundary.len(), 2);
        prop_assert_eq!(stats.out_degrees, vec![k as usize, k as usize]);
    }

    #[test]
    fn end_names_are_canonical(n in 0usize..200) {
        let oracle = canonical_end_oracle(&FamilySpec::new(FamilyKind::Theorem3, 2)).unwrap();
        let e = oracle.ends().nth(n).unwrap();
        prop_assert_eq!(oracle.parse_end(e.as_str()).unwrap(), e.clone());
        let ray = oracle.ray(&e, 6).unwrap();
        let g = oracle.graph();
        for pair in ray.windows(2) {
            prop_assert!(g.neighbors(&pair[0]).unwrap().contains(&pair[1]));
        }
    }
}

#[test]
fn rays_stay_in_their_regions() {
    let oracle = canonical_end_oracle(&FamilySpec::new(FamilyKind::Theorem3, 3)).unwrap();
    let g = oracle.graph();
    let budget = Budget::unlimited();
    for e in oracle.ends().take(20) {
        let seq = oracle.defining_sequences(&e).unwrap().remove(0);
        for r in seq.take(4) {
            let start = oracle.tail_start(&e, &r.separator_set()).unwrap();
            let ray = oracle.ray(&e, start + 6).unwrap();
            for v in &ray[start..] {
                assert_eq!(
                    endgraph::regions::contains(g, &r, v, &budget).unwrap(),
                    endgraph::Tri::Yes,
                    "{e}: {v} outside {r}"
                );
            }
        }
    }
}
