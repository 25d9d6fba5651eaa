use drwalk::graph::{
    cartesian_product, connected_component, edge_boundary, induced_subgraph, random_connected_graph, FiniteGraph,
    VertexSubset,
};
use drwalk::rng::substream;
use proptest::prelude::*;

fn graph(seed: u64, n: usize, p: f64) -> FiniteGraph {
    random_connected_graph(&mut substream(seed, 0), n, p).unwrap()
}

/// Disjoint union of two random graphs, so components are nontrivial.
fn two_pieces(seed: u64, a: usize, b: usize) -> FiniteGraph {
    let (g, h) = (graph(seed, a, 0.3), graph(seed ^ 1, b, 0.3));
    let edges = g.edges().iter().copied().chain(h.edges().iter().map(|&(u, v)| (u + a, v + a)));
    FiniteGraph::new(a + b, edges).unwrap()
}

proptest! {
    #[test]
    fn handshake(seed in any::<u64>(), n in 1usize..30, p in 0.0f64..1.0) {
        let g = graph(seed, n, p);
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        prop_assert!(g.is_connected());
    }

    #[test]
    fn product_degrees_add(seed in any::<u64>(), a in 1usize..8, b in 1usize..8) {
        let (g, h) = (graph(seed, a, 0.4), graph(seed ^ 7, b, 0.4));
        let gh = cartesian_product(&g, &h);
        let hg = cartesian_product(&h, &g);
        prop_assert_eq!(gh.n(), a * b);
        prop_assert_eq!(gh.edge_count(), hg.edge_count());
        prop_assert_eq!(gh.max_degree(), g.max_degree() + h.max_degree());
        for x in 0..a {
            for v in 0..b {
                let d = g.degree(x) + h.degree(v);
                prop_assert_eq!(gh.degree(x * b + v), d);
                prop_assert_eq!(hg.degree(v * a + x), d);
            }
        }
    }

    #[test]
    fn component_is_idempotent(seed in any::<u64>(), a in 1usize..12, b in 1usize..12, root in 0usize..24) {
        let g = two_pieces(seed, a, b);
        let root = root % g.n();
        let c = connected_component(&g, root).unwrap();
        prop_assert_eq!(c.len(), if root < a { a } else { b });
        prop_assert_eq!(edge_boundary(&g, &c).unwrap(), 0);
        let sub = induced_subgraph(&g, &c).unwrap();
        prop_assert!(sub.graph.is_connected());
        let again = connected_component(&sub.graph, sub.old_to_new(root).unwrap()).unwrap();
        prop_assert_eq!(again.len(), sub.graph.n());
    }

    #[test]
    fn boundary_matches_complement(seed in any::<u64>(), n in 2usize..20, mask in any::<u32>()) {
        let g = graph(seed, n, 0.3);
        let a = VertexSubset::new(&g, (0..n).filter(|&v| mask >> v & 1 == 1)).unwrap();
        let b = edge_boundary(&g, &a).unwrap();
        prop_assert_eq!(b, edge_boundary(&g, &a.complement()).unwrap());
        let direct = g.edges().iter().filter(|&&(u, v)| a.contains(u) != a.contains(v)).count();
        prop_assert_eq!(b, direct);
    }

    #[test]
    fn text_roundtrip(seed in any::<u64>(), n in 1usize..20) {
        let g = graph(seed, n, 0.3);
        prop_assert_eq!(FiniteGraph::from_text(&g.to_text()).unwrap(), g);
    }
}
