//! Full bond configurations on the box `{-L+1..L}²` with free boundary.

use rand::Rng;

use crate::error::{invalid, Result};
use crate::graph::FiniteGraph;
use crate::rng::StreamRng;

#[derive(Debug, Clone)]
pub struct BoxConfiguration {
    side: usize,
    /// Edge `(x, y)-(x+1, y)` at `y * side + x`.
    horizontal: Vec<bool>,
    /// Edge `(x, y)-(x, y+1)` at `y * side + x`.
    vertical: Vec<bool>,
}

impl BoxConfiguration {
    /// Draws every edge of the box of half-width `half_width` in row-major
    /// order, horizontal before vertical at each site.
    pub fn sample(half_width: usize, p: f64, rng: &mut StreamRng) -> Result<Self> {
        if half_width == 0 {
            return Err(invalid("box half-width must be >= 1"));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(invalid(format!("p must lie in [0, 1], got {p}")));
        }
        let side = 2 * half_width;
        let mut horizontal = vec![false; side * side];
        let mut vertical = vec![false; side * side];
        for y in 0..side {
            for x in 0..side {
                let i = y * side + x;
                if x + 1 < side {
                    horizontal[i] = rng.random_bool(p);
                }
                if y + 1 < side {
                    vertical[i] = rng.random_bool(p);
                }
            }
        }
        Ok(BoxConfiguration { side, horizontal, vertical })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn sites(&self) -> usize {
        self.side * self.side
    }

    pub fn open_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let s = self.side;
        (0..s * s).flat_map(move |i| {
            let h = self.horizontal[i].then_some((i, i + 1));
            let v = self.vertical[i].then_some((i, i + s));
            h.into_iter().chain(v)
        })
    }

    fn union_find(&self) -> UnionFind {
        let mut uf = UnionFind::new(self.sites());
        for (a, b) in self.open_edges() {
            uf.union(a, b);
        }
        uf
    }

    /// Number of open clusters, isolated sites included.
    pub fn component_count(&self) -> usize {
        self.union_find().sets
    }

    /// Every open cluster as a relabeled graph. Vertex order inside a cluster
    /// follows site order, so output is deterministic.
    pub fn components(&self) -> Vec<FiniteGraph> {
        let mut uf = self.union_find();
        let n = self.sites();
        let mut comp_of = vec![usize::MAX; n];
        let mut local = vec![0usize; n];
        let mut sizes: Vec<usize> = Vec::new();
        for v in 0..n {
            let r = uf.find(v);
            if comp_of[r] == usize::MAX {
                comp_of[r] = sizes.len();
                sizes.push(0);
            }
            let c = comp_of[r];
            comp_of[v] = c;
            local[v] = sizes[c];
            sizes[c] += 1;
        }
        let mut edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); sizes.len()];
        for (a, b) in self.open_edges() {
            edges[comp_of[a]].push((local[a], local[b]));
        }
        sizes
            .into_iter()
            .zip(edges)
            .map(|(k, e)| FiniteGraph::new(k, e).expect("box clusters are simple graphs"))
            .collect()
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    sets: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n], sets: n }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        self.sets -= 1;
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;

    #[test]
    fn extremes() {
        let mut rng = substream(0, 0);
        let b = BoxConfiguration::sample(4, 0.0, &mut rng).unwrap();
        assert_eq!(b.component_count(), 64);
        let b = BoxConfiguration::sample(4, 1.0, &mut rng).unwrap();
        assert_eq!(b.component_count(), 1);
        assert_eq!(b.open_edges().count(), 2 * 8 * 7);
        assert!(BoxConfiguration::sample(0, 0.5, &mut rng).is_err());
    }

    #[test]
    fn components_partition_the_box() {
        let mut rng = substream(3, 1);
        let b = BoxConfiguration::sample(6, 0.5, &mut rng).unwrap();
        let comps = b.components();
        assert_eq!(comps.len(), b.component_count());
        assert_eq!(comps.iter().map(FiniteGraph::n).sum::<usize>(), b.sites());
        assert_eq!(comps.iter().map(FiniteGraph::edge_count).sum::<usize>(), b.open_edges().count());
        assert!(comps.iter().all(FiniteGraph::is_connected));
    }
}
