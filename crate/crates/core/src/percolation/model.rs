use crate::error::{invalid, Result};

/// Default exploration cap; larger clusters are censored.
pub const DEFAULT_SIZE_CAP: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Bond percolation on Z², ambient degree 4.
    SquareLattice,
    /// Bond percolation on the homogeneous tree of degree δ.
    HomogeneousTree,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::SquareLattice => "square_lattice_2d",
            Family::HomogeneousTree => "homogeneous_tree",
        }
    }

    pub fn is_planar(self) -> bool {
        matches!(self, Family::SquareLattice)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PercolationModel {
    pub family: Family,
    pub delta: usize,
    pub p: f64,
    pub size_cap: usize,
    pub seed: u64,
}

impl PercolationModel {
    pub fn square_lattice(p: f64) -> Result<Self> {
        Self::new(Family::SquareLattice, 4, p)
    }

    pub fn tree(delta: usize, p: f64) -> Result<Self> {
        Self::new(Family::HomogeneousTree, delta, p)
    }

    pub fn new(family: Family, delta: usize, p: f64) -> Result<Self> {
        let m = PercolationModel { family, delta, p, size_cap: DEFAULT_SIZE_CAP, seed: 0 };
        m.validate()?;
        Ok(m)
    }

    /// Critical bond percolation on Z², `p_c = 1/2`.
    pub fn z2_critical() -> Self {
        Self::square_lattice(0.5).expect("valid preset")
    }

    /// Critical bond percolation on the δ-regular tree, `p_c = 1/(δ-1)`.
    pub fn tree_critical(delta: usize) -> Result<Self> {
        if delta < 3 {
            return Err(invalid(format!("tree needs delta >= 3, got {delta}")));
        }
        Self::tree(delta, 1.0 / (delta as f64 - 1.0))
    }

    pub fn critical_p(family: Family, delta: usize) -> f64 {
        match family {
            Family::SquareLattice => 0.5,
            Family::HomogeneousTree => 1.0 / (delta as f64 - 1.0),
        }
    }

    pub fn with_size_cap(mut self, size_cap: usize) -> Self {
        self.size_cap = size_cap;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn is_critical(&self) -> bool {
        (self.p - Self::critical_p(self.family, self.delta)).abs() < 1e-12
    }

    pub fn is_subcritical(&self) -> bool {
        self.p < Self::critical_p(self.family, self.delta) - 1e-12
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(invalid(format!("p must lie in [0, 1], got {}", self.p)));
        }
        if self.size_cap == 0 {
            return Err(invalid("size_cap must be >= 1"));
        }
        match self.family {
            Family::SquareLattice if self.delta != 4 => {
                Err(invalid(format!("square lattice has degree 4, got {}", self.delta)))
            }
            Family::HomogeneousTree if self.delta < 3 => {
                Err(invalid(format!("tree needs delta >= 3, got {}", self.delta)))
            }
            _ => Ok(()),
        }
    }
}
