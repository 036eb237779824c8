//! Exact computer algebra for symmetric quivers.
//!
//! The crate is layered bottom-up:
//!
//! - [`laurent`] and [`series`]: windowed Laurent series in `t = q^{1/2}` and
//!   truncated multivariate power series over them, with plethystic
//!   exponential and logarithm.
//! - [`quiver`], [`motivic`], [`identities`], [`diagonal`]: the quiver model,
//!   motivic generating series, linking/unlinking identities and iterated
//!   diagonalization.
//! - [`dt`]: DT invariants by plethystic logarithm.
//! - [`algebra`]: graded pieces of the quadratic supercommutative algebra of
//!   a quiver, its unlinking differential and the dimension checks tying it
//!   back to the series.
//!
//! Everything is exact; nothing here uses floating point.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod diagonal;
pub mod dt;
pub mod error;
pub mod identities;
pub mod laurent;
pub mod linalg;
pub mod motivic;
pub mod multidegree;
pub mod quiver;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use laurent::{pochhammer_inv, Rational, TruncatedLaurent, Window};
pub use multidegree::{Multidegree, VertexMonomial};
pub use quiver::Quiver;
pub use report::{Conventions, Mismatch, VerificationReport};
pub use series::MultiSeries;

/// Default `t`-exponent window for order `n`:
/// `[−2·n·m − 8, 4·n·m + 8]` with `m` the largest arrow count.
pub fn default_window(q: &Quiver, order: u32) -> Window {
    default_window_for(&[q], order)
}

/// [`default_window`] for a check that involves several quivers, e.g. a
/// quiver and its linked form.
pub fn default_window_for(quivers: &[&Quiver], order: u32) -> Window {
    let m = quivers.iter().map(|q| q.max_entry()).max().unwrap_or(0);
    let span = order as i64 * m as i64;
    Window { lo: -2 * span - 8, hi: 4 * span + 8 }
}
