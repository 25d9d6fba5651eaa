use crate::error::{invalid, Result};
use crate::graph::{cartesian_product, FiniteGraph};

use super::operator::SymOperator;

/// Transition kernel of the delayed random walk: jump across each incident
/// edge with probability `1/delta`, stay with probability `1 - deg/delta`.
///
/// `delta` is supplied by the caller. Standalone finite-graph checks use the
/// maximum degree; percolation clusters use the ambient lattice or tree degree.
#[derive(Debug, Clone)]
pub struct DrwKernel {
    graph: FiniteGraph,
    delta: usize,
    op: SymOperator,
}

impl DrwKernel {
    pub fn new(graph: FiniteGraph, delta: usize) -> Result<Self> {
        if delta == 0 {
            return Err(invalid("delta must be at least 1"));
        }
        if delta < graph.max_degree() {
            return Err(invalid(format!("delta {delta} below max degree {}", graph.max_degree())));
        }
        let d = delta as f64;
        let diag = (0..graph.n()).map(|v| 1.0 - graph.degree(v) as f64 / d).collect();
        let op = SymOperator::from_graph(&graph, diag, |_, _| 1.0 / d);
        Ok(DrwKernel { graph, delta, op })
    }

    /// Kernel with `delta` equal to the maximum degree (at least 1).
    pub fn with_max_degree(graph: FiniteGraph) -> Self {
        let delta = graph.max_degree().max(1);
        Self::new(graph, delta).expect("max degree is always admissible")
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn operator(&self) -> &SymOperator {
        &self.op
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }
}

pub fn drw_kernel(g: &FiniteGraph, delta: usize) -> Result<DrwKernel> {
    DrwKernel::new(g.clone(), delta)
}

/// Kernel `(P_X ⊗ I + I ⊗ P_Y) / 2` on the Cartesian product of the two
/// underlying graphs, with the vertex numbering of [`cartesian_product`].
pub fn product_kernel(kx: &DrwKernel, ky: &DrwKernel) -> SymOperator {
    let (gx, gy) = (kx.graph(), ky.graph());
    let ny = gy.n();
    let prod = cartesian_product(gx, gy);
    let (dx, dy) = (kx.delta() as f64, ky.delta() as f64);
    let diag = (0..prod.n())
        .map(|id| {
            let (x, y) = (id / ny, id % ny);
            0.5 * (1.0 - gx.degree(x) as f64 / dx) + 0.5 * (1.0 - gy.degree(y) as f64 / dy)
        })
        .collect();
    SymOperator::from_graph(&prod, diag, |u, v| if u / ny == v / ny { 0.5 / dy } else { 0.5 / dx })
}
