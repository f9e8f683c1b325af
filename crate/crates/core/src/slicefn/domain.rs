//! Conjugation-symmetric planar domains.
//!
//! A domain is a subset of the (alpha, beta) half-plane description of C,
//! closed under conjugation. Three base kinds exist (whole plane, symmetric
//! rectangle, plane minus the real axis); intersections of those are also
//! representable, which is what combined functions produce.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol::DEFAULT_BOX_HALF_WIDTH;

/// Bounds of a conjugation-symmetric rectangle: `alpha` in
/// `[alpha_min, alpha_max]`, `beta` in `[-beta_max, beta_max]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub beta_max: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarDomain {
    bounds: Option<Rect>,
    include_real: bool,
}

impl PlanarDomain {
    pub fn whole_plane() -> PlanarDomain {
        PlanarDomain {
            bounds: None,
            include_real: true,
        }
    }

    pub fn plane_minus_real_axis() -> PlanarDomain {
        PlanarDomain {
            bounds: None,
            include_real: false,
        }
    }

    pub fn rectangle(alpha_min: f64, alpha_max: f64, beta_max: f64) -> PlanarDomain {
        assert!(
            alpha_min <= alpha_max && beta_max > 0.0,
            "degenerate rectangle"
        );
        PlanarDomain {
            bounds: Some(Rect {
                alpha_min,
                alpha_max,
                beta_max,
            }),
            include_real: true,
        }
    }

    pub fn contains_real(&self) -> bool {
        self.include_real
    }

    pub fn bounds(&self) -> Option<Rect> {
        self.bounds
    }

    /// Membership test; symmetric in the sign of `beta`.
    pub fn contains(&self, alpha: f64, beta: f64) -> bool {
        if !self.include_real && beta == 0.0 {
            return false;
        }
        match self.bounds {
            None => true,
            Some(r) => alpha >= r.alpha_min && alpha <= r.alpha_max && beta.abs() <= r.beta_max,
        }
    }

    pub fn intersect(&self, other: &PlanarDomain) -> Result<PlanarDomain> {
        let bounds = match (self.bounds, other.bounds) {
            (None, b) | (b, None) => b,
            (Some(a), Some(b)) => {
                let r = Rect {
                    alpha_min: a.alpha_min.max(b.alpha_min),
                    alpha_max: a.alpha_max.min(b.alpha_max),
                    beta_max: a.beta_max.min(b.beta_max),
                };
                if r.alpha_min > r.alpha_max || r.beta_max <= 0.0 {
                    return Err(Error::EmptyDomain);
                }
                Some(r)
            }
        };
        Ok(PlanarDomain {
            bounds,
            include_real: self.include_real && other.include_real,
        })
    }

    /// Compact rectangle substituted for the domain when a sample grid is
    /// needed. Unbounded domains get the default box.
    pub fn bounding_box(&self) -> Rect {
        self.bounds.unwrap_or(Rect {
            alpha_min: -DEFAULT_BOX_HALF_WIDTH,
            alpha_max: DEFAULT_BOX_HALF_WIDTH,
            beta_max: DEFAULT_BOX_HALF_WIDTH,
        })
    }
}

impl Default for PlanarDomain {
    fn default() -> Self {
        PlanarDomain::whole_plane()
    }
}
