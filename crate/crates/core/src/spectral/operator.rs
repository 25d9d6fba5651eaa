use faer::Mat;

use crate::graph::FiniteGraph;

/// Sparse symmetric operator: explicit diagonal plus off-diagonal entries in
/// compressed rows. Both triangles are stored.
#[derive(Debug, Clone)]
pub struct SymOperator {
    diag: Vec<f64>,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl SymOperator {
    /// Builds from a graph with one weight per canonical edge (same order as
    /// `g.edges()`).
    pub fn from_graph(g: &FiniteGraph, diag: Vec<f64>, edge_weight: impl Fn(usize, usize) -> f64) -> Self {
        assert_eq!(diag.len(), g.n());
        let mut row_ptr = Vec::with_capacity(g.n() + 1);
        let mut cols = Vec::with_capacity(2 * g.edge_count());
        let mut vals = Vec::with_capacity(2 * g.edge_count());
        row_ptr.push(0);
        for v in 0..g.n() {
            for &w in g.neighbors(v) {
                cols.push(w);
                vals.push(edge_weight(v.min(w), v.max(w)));
            }
            row_ptr.push(cols.len());
        }
        SymOperator { diag, row_ptr, cols, vals }
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    /// `y = A x`
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for v in 0..self.n() {
            let mut acc = self.diag[v] * x[v];
            for idx in self.row_ptr[v]..self.row_ptr[v + 1] {
                acc += self.vals[idx] * x[self.cols[idx]];
            }
            y[v] = acc;
        }
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n())
            .map(|v| self.diag[v] + self.vals[self.row_ptr[v]..self.row_ptr[v + 1]].iter().sum::<f64>())
            .collect()
    }

    pub fn entry(&self, v: usize, w: usize) -> f64 {
        if v == w {
            return self.diag[v];
        }
        let row = &self.cols[self.row_ptr[v]..self.row_ptr[v + 1]];
        row.binary_search(&w).map(|i| self.vals[self.row_ptr[v] + i]).unwrap_or(0.0)
    }

    pub fn to_dense(&self) -> Mat<f64> {
        let n = self.n();
        let mut m = Mat::<f64>::zeros(n, n);
        for v in 0..n {
            m[(v, v)] = self.diag[v];
            for idx in self.row_ptr[v]..self.row_ptr[v + 1] {
                m[(v, self.cols[idx])] = self.vals[idx];
            }
        }
        m
    }
}
