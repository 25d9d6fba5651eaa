//! Finite simple graphs with dense vertex ids.
//!
//! A [`FiniteGraph`] is immutable once built. It keeps both the canonical
//! edge list (`u < v`, sorted) and sorted neighbour lists, so iteration order
//! never depends on construction order.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::Rng;

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl FiniteGraph {
    /// Builds a simple graph, rejecting loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(invalid("graph needs at least one vertex"));
        }
        let mut canon: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(invalid(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(invalid(format!("self-loop at {u}")));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(invalid(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Self::from_canonical(n, canon))
    }

    /// `edges` must already be canonical, sorted and duplicate free.
    fn from_canonical(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        FiniteGraph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        connected_component(self, 0).map(|c| c.len() == self.n).unwrap_or(false)
    }

    /// Plain-text dump: `n m` on the first line, then one `u v` per edge.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.n, self.edges.len()).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty graph dump".into()))?;
        let (n, m) = parse_pair(header)?;
        let edges = lines.take(m).map(parse_pair).collect::<Result<Vec<_>>>()?;
        if edges.len() != m {
            return Err(Error::Parse(format!("expected {m} edges, found {}", edges.len())));
        }
        Self::new(n, edges)
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::Parse(format!("bad line {line:?}"))),
    }
}

/// Sorted, duplicate-free set of vertices of a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSubset {
    members: Vec<usize>,
    host_n: usize,
}

impl VertexSubset {
    pub fn new(host: &FiniteGraph, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&v| v >= host.n) {
            return Err(invalid(format!("vertex {bad} not in host of size {}", host.n)));
        }
        Ok(VertexSubset { members, host_n: host.n })
    }

    pub fn full(host: &FiniteGraph) -> Self {
        VertexSubset { members: (0..host.n).collect(), host_n: host.n }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn complement(&self) -> VertexSubset {
        let members = (0..self.host_n).filter(|v| !self.contains(*v)).collect();
        VertexSubset { members, host_n: self.host_n }
    }

    fn check_host(&self, g: &FiniteGraph) -> Result<()> {
        if self.host_n != g.n {
            return Err(invalid("vertex subset belongs to a different graph"));
        }
        Ok(())
    }
}

/// Result of [`induced_subgraph`]: the relabelled graph and the map from new
/// ids back to host ids.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: FiniteGraph,
    pub new_to_old: Vec<usize>,
}

impl InducedSubgraph {
    pub fn old_to_new(&self, old: usize) -> Option<usize> {
        self.new_to_old.binary_search(&old).ok()
    }
}

/// The cycle C_m.
pub fn cycle_graph(m: usize) -> Result<FiniteGraph> {
    if m < 3 {
        return Err(invalid(format!("cycle needs at least 3 vertices, got {m}")));
    }
    FiniteGraph::new(m, (0..m).map(|i| (i, (i + 1) % m)))
}

/// Path on `n` vertices (`n - 1` edges).
pub fn path_graph(n: usize) -> Result<FiniteGraph> {
    FiniteGraph::new(n, (1..n).map(|i| (i - 1, i)))
}

pub fn complete_graph(n: usize) -> Result<FiniteGraph> {
    FiniteGraph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// Cartesian product; vertex `(x, v)` gets id `x * h.n() + v`.
pub fn cartesian_product(g: &FiniteGraph, h: &FiniteGraph) -> FiniteGraph {
    let (ng, nh) = (g.n, h.n);
    let mut edges = Vec::with_capacity(ng * h.edge_count() + nh * g.edge_count());
    for x in 0..ng {
        for &(v, w) in &h.edges {
            edges.push((x * nh + v, x * nh + w));
        }
    }
    for &(x, y) in &g.edges {
        for v in 0..nh {
            edges.push((x * nh + v, y * nh + v));
        }
    }
    edges.sort_unstable();
    FiniteGraph::from_canonical(ng * nh, edges)
}

pub fn induced_subgraph(g: &FiniteGraph, s: &VertexSubset) -> Result<InducedSubgraph> {
    s.check_host(g)?;
    if s.is_empty() {
        return Err(invalid("induced subgraph of an empty vertex set"));
    }
    let new_to_old = s.members.clone();
    let mut old_to_new = vec![usize::MAX; g.n];
    for (new, &old) in new_to_old.iter().enumerate() {
        old_to_new[old] = new;
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges
        .iter()
        .filter_map(|&(u, v)| {
            let (a, b) = (old_to_new[u], old_to_new[v]);
            (a != usize::MAX && b != usize::MAX).then(|| (a.min(b), a.max(b)))
        })
        .collect();
    edges.sort_unstable();
    Ok(InducedSubgraph { graph: FiniteGraph::from_canonical(new_to_old.len(), edges), new_to_old })
}

/// Vertices reachable from `root` (breadth-first).
pub fn connected_component(g: &FiniteGraph, root: usize) -> Result<VertexSubset> {
    if root >= g.n {
        return Err(invalid(format!("root {root} out of range for n={}", g.n)));
    }
    let mut seen = vec![false; g.n];
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    let mut members = vec![root];
    while let Some(v) = queue.pop_front() {
        for &w in &g.adj[v] {
            if !seen[w] {
                seen[w] = true;
                members.push(w);
                queue.push_back(w);
            }
        }
    }
    members.sort_unstable();
    Ok(VertexSubset { members, host_n: g.n })
}

/// Number of edges with exactly one endpoint in `a`.
pub fn edge_boundary(g: &FiniteGraph, a: &VertexSubset) -> Result<usize> {
    a.check_host(g)?;
    let mut inside = vec![false; g.n];
    for &v in &a.members {
        inside[v] = true;
    }
    Ok(g.edges.iter().filter(|&&(u, v)| inside[u] != inside[v]).count())
}

/// Random connected graph on `n` vertices: a uniform random recursive tree
/// plus each remaining pair independently with probability `extra_edge_prob`.
pub fn random_connected_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, extra_edge_prob: f64) -> Result<FiniteGraph> {
    if n == 0 {
        return Err(invalid("random graph needs n >= 1"));
    }
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.random_bool(extra_edge_prob) {
                edges.push((u, v));
            }
        }
    }
    FiniteGraph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> FiniteGraph {
        FiniteGraph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap()
    }

    fn is_bipartite(g: &FiniteGraph) -> bool {
        let mut color = vec![None; g.n()];
        for s in 0..g.n() {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let c = color[v].unwrap();
                for &w in g.neighbors(v) {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    #[test]
    fn rejects_non_simple_input() {
        assert!(FiniteGraph::new(3, [(0, 0)]).is_err());
        assert!(FiniteGraph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(FiniteGraph::new(3, [(0, 3)]).is_err());
        assert!(FiniteGraph::new(0, []).is_err());
    }

    #[test]
    fn cycles() {
        assert!(cycle_graph(2).is_err());
        let c3 = cycle_graph(3).unwrap();
        assert_eq!(c3.edge_count(), 3);
        assert!(c3.degrees().iter().all(|&d| d == 2));
        let c4 = cycle_graph(4).unwrap();
        assert_eq!(c4.edges(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
        let c6 = cycle_graph(6).unwrap();
        assert_eq!(c6.edge_count(), 6);
        assert!(c6.is_connected());
        assert!(is_bipartite(&c6));
        assert!(!is_bipartite(&c3));
    }

    #[test]
    fn products() {
        let k2 = complete_graph(2).unwrap();
        let sq = cartesian_product(&k2, &k2);
        assert_eq!((sq.n(), sq.edge_count()), (4, 4));
        assert!(sq.degrees().iter().all(|&d| d == 2));
        assert!(sq.is_connected());

        let c3 = cycle_graph(3).unwrap();
        let k1 = FiniteGraph::empty(1).unwrap();
        assert_eq!(cartesian_product(&c3, &k1), c3);

        let p3 = path_graph(3).unwrap();
        let ladder = cartesian_product(&p3, &k2);
        assert_eq!((ladder.n(), ladder.edge_count()), (6, 3 + 2 * 2));
    }

    #[test]
    fn induced() {
        let c4 = cycle_graph(4).unwrap();
        let s = VertexSubset::new(&c4, [0, 1]).unwrap();
        let sub = induced_subgraph(&c4, &s).unwrap();
        assert_eq!(sub.graph, complete_graph(2).unwrap());

        let s = VertexSubset::new(&c4, [0, 2]).unwrap();
        assert_eq!(induced_subgraph(&c4, &s).unwrap().graph.edge_count(), 0);

        let c6 = cycle_graph(6).unwrap();
        let s = VertexSubset::new(&c6, [0, 1, 2]).unwrap();
        let sub = induced_subgraph(&c6, &s).unwrap();
        assert_eq!(sub.graph, path_graph(3).unwrap());
        assert_eq!(sub.old_to_new(2), Some(2));
        assert_eq!(sub.old_to_new(4), None);

        let empty = VertexSubset::new(&c6, []).unwrap();
        assert!(induced_subgraph(&c6, &empty).is_err());
    }

    #[test]
    fn components() {
        let c5 = cycle_graph(5).unwrap();
        assert_eq!(connected_component(&c5, 2).unwrap().len(), 5);
        let e = FiniteGraph::empty(4).unwrap();
        assert_eq!(connected_component(&e, 3).unwrap().members(), &[3]);
        let g = two_triangles();
        assert_eq!(connected_component(&g, 4).unwrap().members(), &[3, 4, 5]);
        assert!(!g.is_connected());
        assert!(connected_component(&g, 6).is_err());
    }

    #[test]
    fn boundaries() {
        let c4 = cycle_graph(4).unwrap();
        assert_eq!(edge_boundary(&c4, &VertexSubset::full(&c4)).unwrap(), 0);
        assert_eq!(edge_boundary(&c4, &VertexSubset::new(&c4, [0]).unwrap()).unwrap(), 2);
        assert_eq!(edge_boundary(&c4, &VertexSubset::new(&c4, [0, 2]).unwrap()).unwrap(), 4);
    }

    #[test]
    fn text_dump_roundtrip() {
        let g = two_triangles();
        let text = g.to_text();
        assert!(text.starts_with("6 6\n"));
        assert_eq!(FiniteGraph::from_text(&text).unwrap(), g);
        assert!(FiniteGraph::from_text("3 2\n0 1\n").is_err());
    }
}
