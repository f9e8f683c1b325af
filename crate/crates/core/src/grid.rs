//! Deterministic sample grids and grid-wide reductions.
//!
//! Identity residuals are measured as exact suprema over the circularization
//! of a finite (alpha, beta) grid: per grid point the sphere extrema come in
//! closed form from the stem value, so no imaginary units are sampled.
//!
//! Grid reductions are data-parallel. With the `parallel` feature (default)
//! they run on rayon; without it the same code runs sequentially. The `_seq`
//! variants always run sequentially and exist for benchmarking the two paths
//! against each other.

use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;
use crate::slicefn::{PlanarDomain, Rect, SliceFunction, StemValue};
use crate::tol::{DEFAULT_GRID_SAMPLES, TAU_EVAL};

/// A rectangular (alpha, beta) sample grid.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Grid {
    rect: Rect,
    n_alpha: usize,
    n_beta: usize,
    avoid_real: bool,
    #[serde(skip)]
    points: Vec<(f64, f64)>,
}

impl Grid {
    /// Evenly spaced samples over `rect`. With `avoid_real`, any sample that
    /// would land on the real axis is nudged half a step off it.
    pub fn over_rect(rect: Rect, n_alpha: usize, n_beta: usize, avoid_real: bool) -> Grid {
        assert!(
            n_alpha >= 2 && n_beta >= 2,
            "grid needs at least 2x2 samples"
        );
        let alphas = linspace(rect.alpha_min, rect.alpha_max, n_alpha);
        let mut betas = linspace(-rect.beta_max, rect.beta_max, n_beta);
        if avoid_real {
            let step = 2.0 * rect.beta_max / (n_beta - 1) as f64;
            for b in betas.iter_mut() {
                if b.abs() < 1e-12 {
                    *b = step / 2.0;
                }
            }
        }
        let mut points = Vec::with_capacity(n_alpha * n_beta);
        for &a in &alphas {
            for &b in &betas {
                points.push((a, b));
            }
        }
        Grid {
            rect,
            n_alpha,
            n_beta,
            avoid_real,
            points,
        }
    }

    /// Grid over the bounding box of `domain`, skipping the real axis when
    /// the domain excludes it.
    pub fn for_domain(domain: &PlanarDomain, n_alpha: usize, n_beta: usize) -> Grid {
        Grid::over_rect(
            domain.bounding_box(),
            n_alpha,
            n_beta,
            !domain.contains_real(),
        )
    }

    /// The default 21x21 grid for `domain`.
    pub fn default_for(domain: &PlanarDomain) -> Grid {
        Grid::for_domain(domain, DEFAULT_GRID_SAMPLES, DEFAULT_GRID_SAMPLES)
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn rect(&self) -> Rect {
        self.rect
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_alpha, self.n_beta)
    }

    pub fn avoids_real(&self) -> bool {
        self.avoid_real
    }

    /// Rebuilds the sample points; needed after deserialization, which only
    /// carries the grid description.
    pub fn rehydrate(&mut self) {
        *self = Grid::over_rect(self.rect, self.n_alpha, self.n_beta, self.avoid_real);
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| lo + step * i as f64).collect()
}

fn map_points<U, F>(grid: &Grid, f: F) -> Result<Vec<U>>
where
    U: Send,
    F: Fn(f64, f64) -> Result<U> + Sync,
{
    #[cfg(feature = "parallel")]
    {
        grid.points().par_iter().map(|&(a, b)| f(a, b)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        grid.points().iter().map(|&(a, b)| f(a, b)).collect()
    }
}

fn map_points_seq<U, F>(grid: &Grid, f: F) -> Result<Vec<U>>
where
    F: Fn(f64, f64) -> Result<U>,
{
    grid.points().iter().map(|&(a, b)| f(a, b)).collect()
}

/// Stem values of `f` at every grid point.
pub fn stem_table(f: &SliceFunction, grid: &Grid) -> Result<Vec<StemValue>> {
    map_points(grid, |a, b| f.stem_at(a, b))
}

/// Sequential twin of [`stem_table`].
pub fn stem_table_seq(f: &SliceFunction, grid: &Grid) -> Result<Vec<StemValue>> {
    map_points_seq(grid, |a, b| f.stem_at(a, b))
}

/// `sup |f|` over the circularization of the grid (exact per sphere).
pub fn sup_norm(f: &SliceFunction, grid: &Grid) -> Result<f64> {
    let sups = map_points(grid, |a, b| Ok(f.stem_at(a, b)?.sphere_sup()))?;
    Ok(sups.into_iter().fold(0.0, f64::max))
}

/// Sequential twin of [`sup_norm`].
pub fn sup_norm_seq(f: &SliceFunction, grid: &Grid) -> Result<f64> {
    let sups = map_points_seq(grid, |a, b| Ok(f.stem_at(a, b)?.sphere_sup()))?;
    Ok(sups.into_iter().fold(0.0, f64::max))
}

/// `sup |f - g|` over the circularization of the grid.
pub fn sup_distance(f: &SliceFunction, g: &SliceFunction, grid: &Grid) -> Result<f64> {
    let sups = map_points(grid, |a, b| {
        Ok((f.stem_at(a, b)? - g.stem_at(a, b)?).sphere_sup())
    })?;
    Ok(sups.into_iter().fold(0.0, f64::max))
}

/// Sequential twin of [`sup_distance`].
pub fn sup_distance_seq(f: &SliceFunction, g: &SliceFunction, grid: &Grid) -> Result<f64> {
    let sups = map_points_seq(grid, |a, b| {
        Ok((f.stem_at(a, b)? - g.stem_at(a, b)?).sphere_sup())
    })?;
    Ok(sups.into_iter().fold(0.0, f64::max))
}

/// `inf |f|` over the circularization of the grid.
pub fn inf_norm(f: &SliceFunction, grid: &Grid) -> Result<f64> {
    let infs = map_points(grid, |a, b| Ok(f.stem_at(a, b)?.sphere_inf()))?;
    Ok(infs.into_iter().fold(f64::INFINITY, f64::min))
}

/// Settings shared by the identity, classification and sum-rule drivers.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub grid: Grid,
    /// Residual tolerance for identity checks and "identically zero"
    /// surrogates.
    pub tol: f64,
    /// Target for the truncated-series remainder bound.
    pub series_tol: f64,
}

impl CheckConfig {
    pub fn default_for(domain: &PlanarDomain) -> CheckConfig {
        CheckConfig {
            grid: Grid::default_for(domain),
            tol: TAU_EVAL,
            series_tol: 1e-12,
        }
    }

    pub fn with_grid(mut self, grid: Grid) -> CheckConfig {
        self.grid = grid;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> CheckConfig {
        self.tol = tol;
        self
    }
}
