//! Graded pieces of the quadratic supercommutative algebra `𝒜_Q`.
//!
//! Generators are `e_{i,k}` for a vertex `i` and `k ≥ 0`, of degree
//! `(α_i, −2k − m_ii)` and parity `m_ii mod 2`. For every pair `i, j` the
//! generating series `e_i(z) = Σ_k e_{i,k} z^k` satisfy
//! `e_i(z) · d^p e_j(z)/dz^p = 0` for `p < m_ij`.
//!
//! A component is indexed by a multidegree `d` and `s = Σ k`; the
//! homological degree is then `h = −2s − Σ_i m_ii d_i`.

mod checks;
mod component;
mod differential;
mod monomial;

pub use checks::{
    dimension_table, functional_dimension, functional_dimension_s, gr_linking_check, oracle_check, poincare_check,
    poincare_series, vanishing_degree, DimensionRow,
};
pub use component::{build_component, Algebra, AlgebraComponent, RelationSystem};
pub use differential::{homology_check, unlink_differential, DifferentialBlock, UnlinkComplex};
pub use monomial::{component_basis, Generator, SuperMonomial};

use crate::multidegree::Multidegree;
use crate::quiver::Quiver;

/// `Σ_i m_ii d_i`.
pub fn loop_weight(q: &Quiver, d: &Multidegree) -> i64 {
    d.entries().iter().enumerate().map(|(i, &n)| q.loops(i) as i64 * n as i64).sum()
}

/// Homological degree of the component `(d, s)`.
pub fn h_of(q: &Quiver, d: &Multidegree, s: u32) -> i64 {
    -2 * s as i64 - loop_weight(q, d)
}

/// `s` for the component `(d, h)`, if `h` is attainable at all.
pub fn s_of(q: &Quiver, d: &Multidegree, h: i64) -> Option<u32> {
    let twice = -h - loop_weight(q, d);
    (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as u32)
}
