//! Three-tangle of three-qubit states.
//!
//! Pure states are handled through Cayley's hyperdeterminant. Mixed states of
//! the rank-3 family
//!
//! ```text
//! rho(p, q) = p |GHZ><GHZ| + q |W><W| + (1 - p - q) |W~><W~|,   q = (1 - p) / n
//! ```
//!
//! are handled by piecewise convex-roof formulas whose region boundaries come
//! from one-dimensional root solves. Every closed form can be cross-checked
//! against [`roof`], a numerical search over pure-state decompositions that
//! upper-bounds the convex roof of an arbitrary low-rank density matrix.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use threetangle_core::analytic::{mixed_three_tangle, Region, Thresholds};
//!
//! let th = Thresholds::compute(2.0).unwrap();
//! assert!((th.p0 - 0.75).abs() < 1e-9);
//! let t = mixed_three_tangle(0.5, 2.0, &th).unwrap();
//! assert_eq!(t.region, Region::Zero);
//! ```

#![no_std]
#![forbid(unsafe_code)]
// `!(x <= tol)` rejects NaN along with large values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analytic;
pub mod bloch;
pub mod error;
pub mod family;
pub mod linalg;
pub mod measures;
pub mod roof;
pub mod roots;
pub mod simplex;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{CMatrix, C64};
pub use states::{DensityMatrix, Ensemble, PureState3, Qubit, QubitPair};
