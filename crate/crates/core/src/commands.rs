//! Report-producing computations behind the `bound-resolvent` and
//! `bound-spectral` subcommands.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    departure_from_schur, departure_upper, hausdorff_distance, resolvent_bound, spectral_distance_bound,
    DepartureEstimate,
};
use crate::error::{Error, Result};
use crate::linalg::{
    complex_schur, eigenvalues, eps_lin, operator_norm, resolvent_norm_with, ComplexMatrix, SchurOrdering, Spectrum,
};
use crate::report::{Status, DEFAULT_ABS_TOL, DEFAULT_REL_TOL};
use crate::sequence::ClassParams;

/// Exclusion radius around the spectrum, in units of `ε_lin`.
pub const EXCLUSION_FACTOR: f64 = 10.0;
/// Inflation of the spectral bounding box.
pub const BOX_INFLATION: f64 = 1.5;
pub const DEFAULT_GRID: (usize, usize) = (40, 40);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridBox {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl GridBox {
    /// `[−r, r] × [−r, r]`.
    pub fn centered(r: f64) -> Self {
        Self { re_min: -r, re_max: r, im_min: -r, im_max: r }
    }

    /// Bounding box of `σ` inflated by 50%. A flat box takes the larger
    /// extent on both axes; a single point gets half-extent `‖A‖` (1 if `A = 0`).
    pub fn around(spectrum: &Spectrum, norm_a: f64) -> Self {
        let ev = spectrum.eigenvalues();
        let fold = |f: fn(&Complex64) -> f64, init: f64, pick: fn(f64, f64) -> f64| ev.iter().map(f).fold(init, pick);
        let (x0, x1) = (fold(|z| z.re, f64::INFINITY, f64::min), fold(|z| z.re, f64::NEG_INFINITY, f64::max));
        let (y0, y1) = (fold(|z| z.im, f64::INFINITY, f64::min), fold(|z| z.im, f64::NEG_INFINITY, f64::max));
        let (cx, cy) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
        let widest = (x1 - x0).max(y1 - y0);
        let half = |w: f64| {
            let h = 0.5 * BOX_INFLATION * if w > 0.0 { w } else { widest };
            if h > 0.0 {
                h
            } else if norm_a > 0.0 {
                norm_a
            } else {
                1.0
            }
        };
        let (hx, hy) = (half(x1 - x0), half(y1 - y0));
        Self { re_min: cx - hx, re_max: cx + hx, im_min: cy - hy, im_max: cy + hy }
    }

    /// `nx × ny` points including the corners, row-major in the imaginary part.
    pub fn points(&self, nx: usize, ny: usize) -> Vec<Complex64> {
        let lin = |lo: f64, hi: f64, n: usize, i: usize| {
            if n <= 1 {
                0.5 * (lo + hi)
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        };
        (0..ny)
            .flat_map(|j| (0..nx).map(move |i| (i, j)))
            .map(|(i, j)| Complex64::new(lin(self.re_min, self.re_max, nx, i), lin(self.im_min, self.im_max, ny, j)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointStatus {
    Pass,
    Fail,
    /// Within the exclusion radius of the spectrum.
    Excluded,
    /// `σ_min(zI − A)` at or below `ε_lin`.
    BlowUp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub z: [f64; 2],
    pub distance: f64,
    #[serde(with = "crate::io::lossless_f64")]
    pub true_norm: f64,
    #[serde(with = "crate::io::lossless_f64")]
    pub bound: f64,
    #[serde(with = "crate::io::lossless_f64")]
    pub ratio: f64,
    pub status: PointStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolventReport {
    pub params: ClassParams,
    pub dim: usize,
    pub norm: f64,
    pub departure: DepartureEstimate,
    pub grid: GridBox,
    pub exclusion_radius: f64,
    pub tolerance: f64,
    pub tolerance_abs: f64,
    pub points: Vec<GridPoint>,
    /// Largest `true_norm / bound` over the evaluated points.
    pub max_ratio: f64,
    pub evaluated: usize,
    pub failed: usize,
    pub status: Status,
}

/// Compares `‖(zI − A)⁻¹‖` with the resolvent bound on an `nx × ny` grid
/// over [`GridBox::around`] the spectrum.
pub fn bound_resolvent(a: &ComplexMatrix, p: ClassParams, nx: usize, ny: usize) -> Result<ResolventReport> {
    a.require_square()?;
    let grid = GridBox::around(&eigenvalues(a)?, operator_norm(a)?);
    bound_resolvent_in(a, p, grid, nx, ny)
}

/// As [`bound_resolvent`] over a caller-chosen box.
pub fn bound_resolvent_in(
    a: &ComplexMatrix,
    p: ClassParams,
    grid: GridBox,
    nx: usize,
    ny: usize,
) -> Result<ResolventReport> {
    let dim = a.require_square()?;
    if nx == 0 || ny == 0 {
        return Err(Error::param("grid must have at least one point per axis"));
    }
    if !(grid.re_min <= grid.re_max && grid.im_min <= grid.im_max) {
        return Err(Error::param("grid box is empty"));
    }
    let split = complex_schur(a, SchurOrdering::ByModulusDesc)?;
    let spectrum = eigenvalues(a)?;
    let norm = operator_norm(a)?;
    let departure = departure_from_schur(a, &split, p)?;
    let exclusion_radius = EXCLUSION_FACTOR * eps_lin(dim, norm);

    let mut points = Vec::with_capacity(nx * ny);
    for z in grid.points(nx, ny) {
        let distance = spectrum.distance_to(z);
        let blank = |status| GridPoint {
            z: [z.re, z.im],
            distance,
            true_norm: f64::NAN,
            bound: f64::NAN,
            ratio: f64::NAN,
            status,
        };
        if distance <= exclusion_radius {
            points.push(blank(PointStatus::Excluded));
            continue;
        }
        let true_norm = match resolvent_norm_with(a, z, dim, norm) {
            Ok(v) => v,
            Err(Error::ResolventBlowUp { .. }) => {
                points.push(blank(PointStatus::BlowUp));
                continue;
            }
            Err(e) => return Err(e),
        };
        let bound = resolvent_bound(distance, &departure)?;
        let pass = true_norm <= bound * (1.0 + DEFAULT_REL_TOL) + DEFAULT_ABS_TOL;
        points.push(GridPoint {
            z: [z.re, z.im],
            distance,
            true_norm,
            bound,
            ratio: true_norm / bound,
            status: if pass { PointStatus::Pass } else { PointStatus::Fail },
        });
    }
    let evaluated: Vec<&GridPoint> =
        points.iter().filter(|q| matches!(q.status, PointStatus::Pass | PointStatus::Fail)).collect();
    let max_ratio = evaluated.iter().map(|q| q.ratio).fold(0.0, f64::max);
    let failed = evaluated.iter().filter(|q| q.status == PointStatus::Fail).count();
    Ok(ResolventReport {
        params: p,
        dim,
        norm,
        departure,
        grid,
        exclusion_radius,
        tolerance: DEFAULT_REL_TOL,
        tolerance_abs: DEFAULT_ABS_TOL,
        evaluated: evaluated.len(),
        points,
        max_ratio,
        failed,
        status: if failed == 0 { Status::Pass } else { Status::Fail },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub params: ClassParams,
    #[serde(rename = "normE")]
    pub norm_e: f64,
    pub m: f64,
    pub departure_a: DepartureEstimate,
    pub departure_b: DepartureEstimate,
    pub bound: f64,
    pub exact_hdist: f64,
    /// `bound − exact_hdist`.
    pub slack: f64,
    pub status: Status,
}

/// Compares the Hausdorff distance of `σ(A)`, `σ(B)` with the spectral-distance bound.
pub fn bound_spectral(a: &ComplexMatrix, b: &ComplexMatrix, p: ClassParams) -> Result<SpectralReport> {
    let n = a.require_square()?;
    if b.require_square()? != n {
        return Err(Error::DimensionMismatch(format!("{n}x{n} against {}x{}", b.rows(), b.cols())));
    }
    let departure_a = departure_upper(a, p)?;
    let departure_b = departure_upper(b, p)?;
    let norm_e = operator_norm(&(a - b))?;
    let bound = spectral_distance_bound(norm_e, &departure_a, &departure_b)?;
    let exact_hdist = hausdorff_distance(&eigenvalues(a)?, &eigenvalues(b)?)?;
    let pass = exact_hdist <= bound * (1.0 + DEFAULT_REL_TOL) + DEFAULT_ABS_TOL;
    Ok(SpectralReport {
        params: p,
        norm_e,
        m: departure_a.upper.max(departure_b.upper),
        departure_a,
        departure_b,
        bound,
        exact_hdist,
        slack: bound - exact_hdist,
        status: if pass { Status::Pass } else { Status::Fail },
    })
}
