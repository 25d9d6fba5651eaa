use crate::error::{invalid, Error, Result};
use crate::graph::FiniteGraph;

use super::theorem1::{planar_constant, PLANAR_MIN_VERTICES};

/// Default vertex cap for brute-force isoperimetric numbers.
pub const CHEEGER_CAP: usize = 22;

/// Exact isoperimetric number `min |∂A|/|A|` over nonempty `A` with
/// `|A| <= n/2`, by enumerating subsets in Gray-code order so each step
/// updates the boundary in O(1).
pub fn cheeger_constant(g: &FiniteGraph) -> Result<f64> {
    cheeger_constant_capped(g, CHEEGER_CAP)
}

pub fn cheeger_constant_capped(g: &FiniteGraph, cap: usize) -> Result<f64> {
    let n = g.n();
    if n > cap || n > 30 {
        return Err(Error::SizeExceeded { n, cap: cap.min(30) });
    }
    if n < 2 {
        return Err(invalid("isoperimetric number needs at least two vertices"));
    }
    if !g.is_connected() {
        return Err(invalid("isoperimetric number requires a connected graph"));
    }
    let nbr_mask: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w))).collect();
    let half = n / 2;
    let (mut set, mut size, mut boundary) = (0u32, 0usize, 0i64);
    let mut best = f64::INFINITY;
    for step in 1u64..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        let inside_nbrs = (nbr_mask[v] & set).count_ones() as i64;
        let deg = g.degree(v) as i64;
        if set & (1 << v) == 0 {
            set |= 1 << v;
            size += 1;
            boundary += deg - 2 * inside_nbrs;
        } else {
            set &= !(1 << v);
            size -= 1;
            boundary -= deg - 2 * inside_nbrs;
        }
        if size >= 1 && size <= half {
            best = best.min(boundary as f64 / size as f64);
        }
    }
    Ok(best)
}

/// Isoperimetric upper bound for planar graphs, `12√2·δ/√N`, with a flag for
/// whether `N` is large enough for the bound to be claimed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoshierBound {
    pub value: f64,
    pub valid: bool,
}

pub fn boshier_bound(n: usize, delta: f64) -> BoshierBound {
    BoshierBound { value: planar_constant(delta) / (n as f64).sqrt(), valid: n >= PLANAR_MIN_VERTICES }
}
