//! Numerical convex-roof machinery, independent of the closed forms.
//!
//! * [`characteristic_curve`]: minimum of the Z-state tangle over phases.
//! * [`lower_convex_envelope`]: greatest convex minorant of sampled points.
//! * [`hjw_ensemble`] and [`min_avg_tangle`]: decompositions of a density
//!   matrix generated from isometries, and a derivative-free search over them
//!   that upper-bounds the convex roof.

mod curve;
mod envelope;
mod hjw;
mod nelder_mead;
mod search;

pub use curve::{characteristic_curve, characteristic_curve_with, CharCurve, CharPoint, CurveOptions};
pub use envelope::{lower_convex_envelope, roof_envelope, Envelope};
pub use hjw::{hjw_ensemble, isometry_from_ensemble, EigenEnsemble, RANK_TOL};
pub use nelder_mead::{minimize, NelderMeadOptions, NelderMeadResult};
pub use search::{derive_seed, min_avg_tangle, min_avg_tangle_auto, min_avg_tangle_with, DecompositionSearchResult, SearchOptions};
