//! Solving `x^n - p x + q = 0` with the envelope of the line family
//! `Q_x(p) = x p - x^n`.
//!
//! A point `(p, q)` lies on `Q_x` exactly when `x` is a root, so the real
//! roots are the slopes of the tangents from `(p, q)` to the envelope
//! `e(p) = (n-1) (p/n)^(n/(n-1))`. The crate exposes the envelope itself,
//! the geometric root-count classification, a bracketed solver driven by
//! it, point–line duality, and the Legendre-transform view of `e`.

mod error;

pub mod duality;
pub mod envelope;
pub mod legendre;
pub mod numeric;
pub mod oracle;
pub mod solver;

pub use duality::{dual_of_line, dual_of_point, vieta_from_roots};
pub use envelope::{
    envelope_slope, envelope_touch_point, envelope_value, family_line, intersect_family_lines,
    numeric_envelope, numeric_intersection, Branch, EnvelopeSpec, FnFamily, Line, LineFamily,
    MonomialFamily, NumericEnvelope, PlanePoint,
};
pub use error::{Error, Result};
pub use legendre::{
    discrete_legendre, involution_check, legendre_monomial, tangent_intercept_transform, Conjugate,
    SampledFunction, SlopeDomain,
};
pub use oracle::brute_force_count;
pub use solver::{
    classify, depress_cubic, discriminant, solve, solve_with, tangent_lines_through,
    Classification, CubicGeneral, DepressedCubic, EquationParams, Regime, Root, RootReport,
};
