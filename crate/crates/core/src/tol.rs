//! Shared numeric tolerances.
//!
//! Every threshold used by the library is defined here rather than inlined
//! at call sites, so the provenance of each number is auditable.

/// Absolute tolerance for algebraic membership tests: unit-sphere membership
/// (`u^2 = -1`), real-point detection, basis orthonormality.
///
/// Double precision leaves ~1e-16 of noise per operation; 1e-10 gives several
/// orders of headroom for short chains of products.
pub const TAU_ALG: f64 = 1e-10;

/// Default evaluation tolerance for identity residuals and grid-based
/// "identically zero" tests. Configurable per call; this is the default.
pub const TAU_EVAL: f64 = 1e-9;

/// Residual tolerance for polynomial root finding: iteration stops once
/// `|p(z)|` falls below this times the coefficient scale.
pub const TAU_ROOT: f64 = 1e-9;

/// Relative radius used when grouping root approximations into multiple
/// roots. Clusters of an m-fold root spread like `eps^(1/m)`, so this is a
/// starting radius; the grouping is verified by reconstruction and widened
/// if the reconstruction fails.
pub const TAU_CLUSTER: f64 = 1e-6;

/// Hard cap on the number of *-powers summed by the truncated series
/// evaluators. Exceeding it is reported as an error rather than silently
/// returning an uncertified value.
pub const SERIES_TERM_CAP: u32 = 200;

/// Default number of grid samples per axis for the deterministic sample
/// grids used by "identically zero" surrogates and sup-norm estimates.
pub const DEFAULT_GRID_SAMPLES: usize = 21;

/// Default half-width of the bounding rectangle substituted for unbounded
/// domains when a compact sample grid is needed.
pub const DEFAULT_BOX_HALF_WIDTH: f64 = 2.0;
