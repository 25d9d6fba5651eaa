//! Breadth-first cluster exploration from the root.
//!
//! Edge states are drawn lazily, once each, from the sample's own stream.
//! Exploration stops when the frontier empties or when a new vertex would push
//! the cluster past `size_cap`; the sample is then flagged as censored.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::graph::FiniteGraph;
use crate::rng::{substream, StreamRng};

use super::model::{Family, PercolationModel};

#[derive(Debug, Clone)]
pub struct ClusterSample {
    pub graph: FiniteGraph,
    pub root: usize,
    pub size: usize,
    pub censored: bool,
    /// Lattice position of each vertex (square lattice only).
    pub coordinates: Option<Vec<(i32, i32)>>,
}

impl ClusterSample {
    /// Graph dump followed by one `x y` line per vertex when coordinates exist.
    pub fn to_text(&self) -> String {
        let mut out = self.graph.to_text();
        if let Some(coords) = &self.coordinates {
            for (x, y) in coords {
                out.push_str(&format!("{x} {y}\n"));
            }
        }
        out
    }
}

/// Explores the root cluster of sample `stream_index`.
pub fn sample_cluster(model: &PercolationModel, stream_index: u64) -> ClusterSample {
    let mut rng = substream(model.seed, stream_index);
    match model.family {
        Family::SquareLattice => explore_lattice(model, &mut rng),
        Family::HomogeneousTree => explore_tree(model, &mut rng),
    }
}

/// Size and censoring flag of sample `stream_index`, identical to
/// `sample_cluster(model, stream_index)` but without building the graph.
pub fn sample_cluster_size(model: &PercolationModel, stream_index: u64) -> (usize, bool) {
    let mut rng = substream(model.seed, stream_index);
    match model.family {
        Family::SquareLattice => {
            let c = explore_lattice(model, &mut rng);
            (c.size, c.censored)
        }
        Family::HomogeneousTree => tree_size(model, &mut rng),
    }
}

const STEPS: [(i32, i32); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// Canonical key of the lattice edge between `a` and its neighbour `a + step`:
/// the lower-left endpoint plus an axis flag.
fn edge_key(a: (i32, i32), step: (i32, i32)) -> (i32, i32, bool) {
    match step {
        (1, 0) => (a.0, a.1, true),
        (-1, 0) => (a.0 - 1, a.1, true),
        (0, 1) => (a.0, a.1, false),
        _ => (a.0, a.1 - 1, false),
    }
}

fn explore_lattice(model: &PercolationModel, rng: &mut StreamRng) -> ClusterSample {
    let cap = model.size_cap;
    let mut coords = vec![(0i32, 0i32)];
    let mut index: HashMap<(i32, i32), usize> = HashMap::from([((0, 0), 0)]);
    let mut state: HashMap<(i32, i32, bool), bool> = HashMap::new();
    let mut open: Vec<(usize, (i32, i32))> = Vec::new();
    let mut censored = false;
    let mut head = 0;
    'bfs: while head < coords.len() {
        let v = coords[head];
        for step in STEPS {
            let key = edge_key(v, step);
            if state.contains_key(&key) {
                continue;
            }
            let is_open = rng.random_bool(model.p);
            state.insert(key, is_open);
            if !is_open {
                continue;
            }
            let w = (v.0 + step.0, v.1 + step.1);
            if let Entry::Vacant(slot) = index.entry(w) {
                if coords.len() == cap {
                    censored = true;
                    break 'bfs;
                }
                slot.insert(coords.len());
                coords.push(w);
            }
            open.push((head, w));
        }
        head += 1;
    }
    let edges: Vec<(usize, usize)> = open.into_iter().filter_map(|(a, w)| index.get(&w).map(|&b| (a, b))).collect();
    let graph = FiniteGraph::new(coords.len(), edges).expect("lattice exploration yields a simple graph");
    ClusterSample { size: coords.len(), graph, root: 0, censored, coordinates: Some(coords) }
}

fn offspring(model: &PercolationModel, is_root: bool) -> Binomial {
    let slots = if is_root { model.delta } else { model.delta - 1 };
    Binomial::new(slots as u64, model.p).expect("p validated in [0, 1]")
}

fn explore_tree(model: &PercolationModel, rng: &mut StreamRng) -> ClusterSample {
    let cap = model.size_cap;
    let (root_dist, child_dist) = (offspring(model, true), offspring(model, false));
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    let mut size = 1usize;
    let mut censored = false;
    while let Some(v) = queue.pop_front() {
        let dist = if v == 0 { &root_dist } else { &child_dist };
        let k = dist.sample(rng) as usize;
        if size + k > cap {
            censored = true;
            for c in size..cap {
                edges.push((v, c));
            }
            size = cap;
            break;
        }
        for c in size..size + k {
            edges.push((v, c));
            queue.push_back(c);
        }
        size += k;
    }
    let graph = FiniteGraph::new(size, edges).expect("tree exploration yields a simple graph");
    ClusterSample { graph, root: 0, size, censored, coordinates: None }
}

fn tree_size(model: &PercolationModel, rng: &mut StreamRng) -> (usize, bool) {
    let cap = model.size_cap;
    let (root_dist, child_dist) = (offspring(model, true), offspring(model, false));
    let mut size = 1usize;
    let mut processed = 0usize;
    while processed < size {
        let dist = if processed == 0 { &root_dist } else { &child_dist };
        let k = dist.sample(rng) as usize;
        if size + k > cap {
            return (cap, true);
        }
        size += k;
        processed += 1;
    }
    (size, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_zero_is_single_vertex() {
        for m in [PercolationModel::square_lattice(0.0).unwrap(), PercolationModel::tree(3, 0.0).unwrap()] {
            let c = sample_cluster(&m, 0);
            assert_eq!((c.size, c.censored, c.graph.edge_count()), (1, false, 0));
        }
    }

    #[test]
    fn p_one_tree_is_censored_at_cap() {
        let m = PercolationModel::tree(3, 1.0).unwrap().with_size_cap(100);
        let c = sample_cluster(&m, 0);
        assert_eq!((c.size, c.censored), (100, true));
        assert!(c.graph.is_connected());
        assert_eq!(sample_cluster_size(&m, 0), (100, true));
        let m = PercolationModel::square_lattice(1.0).unwrap().with_size_cap(50);
        let c = sample_cluster(&m, 3);
        assert_eq!((c.size, c.censored), (50, true));
        assert!(c.graph.is_connected());
    }

    #[test]
    fn size_only_path_agrees() {
        for m in [
            PercolationModel::tree_critical(3).unwrap().with_size_cap(300).with_seed(9),
            PercolationModel::tree(4, 0.4).unwrap().with_size_cap(500).with_seed(2),
            PercolationModel::square_lattice(0.5).unwrap().with_size_cap(400).with_seed(4),
        ] {
            for i in 0..200 {
                let c = sample_cluster(&m, i);
                assert_eq!(sample_cluster_size(&m, i), (c.size, c.censored));
            }
        }
    }

    #[test]
    fn lattice_clusters_are_complete_components() {
        let m = PercolationModel::square_lattice(0.45).unwrap().with_seed(17);
        for i in 0..100 {
            let c = sample_cluster(&m, i);
            assert!(c.graph.is_connected());
            assert!(c.graph.max_degree() <= 4);
            let coords = c.coordinates.as_ref().unwrap();
            assert_eq!(coords[c.root], (0, 0));
            for &(u, v) in c.graph.edges() {
                let (a, b) = (coords[u], coords[v]);
                assert_eq!((a.0 - b.0).abs() + (a.1 - b.1).abs(), 1);
            }
            if !c.censored {
                // every lattice neighbour pair inside the cluster that is joined
                // appears at most once and the graph is simple by construction
                assert_eq!(c.size, c.graph.n());
            }
        }
    }

    #[test]
    fn deterministic_per_stream() {
        let m = PercolationModel::square_lattice(0.5).unwrap().with_seed(1).with_size_cap(1000);
        let a = sample_cluster(&m, 12);
        let b = sample_cluster(&m, 12);
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.coordinates, b.coordinates);
    }

    #[test]
    fn tree_singleton_frequency() {
        // P[size = 1] = (1 - p)^δ = 1/8 for δ = 3, p = 1/2
        let m = PercolationModel::tree_critical(3).unwrap().with_seed(3).with_size_cap(10_000);
        let n = 40_000u64;
        let ones = (0..n).filter(|&i| sample_cluster_size(&m, i).0 == 1).count() as f64;
        let freq = ones / n as f64;
        let se = (0.125f64 * 0.875 / n as f64).sqrt();
        assert!((freq - 0.125).abs() < 4.0 * se, "freq {freq}");
    }

    #[test]
    fn dump_has_coordinates() {
        let m = PercolationModel::square_lattice(0.5).unwrap().with_seed(5);
        let c = sample_cluster(&m, 0);
        let text = c.to_text();
        assert_eq!(text.lines().count(), 1 + c.graph.edge_count() + c.size);
    }
}
