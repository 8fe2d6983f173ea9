//! Resolvent and spectral perturbation bounds for operators in an exponential class.

mod functions;
mod special;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use functions::{
    f_eval, f_upper_closed_form, g_eval, g_invert, h_eval, ln_g_invert, ln_h, log_f_asymptotic, log_f_enclosure,
    log_f_enclosure_ln, log_f_upper_closed_form, log_f_upper_closed_form_ln, log_h_asymptotic, CertifiedValue,
    LogEnclosure,
};
pub use special::{incomplete_gamma, ln_gamma, ln_upper_gamma};

use crate::class::{operator_gauge, OperatorGauge};
use crate::error::{Error, Result};
use crate::linalg::{complex_schur, singular_values, ComplexMatrix, SchurOrdering, SchurSplit, Spectrum};
use crate::sequence::{gauge_of_values, ClassParams};
use functions::INTERNAL_TOL;

/// Accuracy for the inversion inside `h` when forming spectral bounds.
const H_TOL: f64 = 1e-13;

/// `b = a(1 + (1+α)^{1/α})^{−α}`.
pub fn departure_rate(p: ClassParams) -> ClassParams {
    let alpha = p.alpha();
    let b = p.a() * (1.0 + (1.0 + alpha).powf(1.0 / alpha)).powf(-alpha);
    ClassParams::new(b, alpha).expect("departure rate is positive")
}

/// Upper bound for the departure from normality `ν_{b,α}(A)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DepartureEstimate {
    /// `(b, α)`.
    pub params: ClassParams,
    pub upper: f64,
    /// `|N|_{b,α}` for the modulus-descending Schur split.
    pub schur_value: Option<f64>,
    /// `2|A|_{a,α}`.
    pub gauge_bound: f64,
}

impl DepartureEstimate {
    /// An estimate with known `ν = 0`.
    pub fn normal(params: ClassParams) -> Self {
        Self { params, upper: 0.0, schur_value: Some(0.0), gauge_bound: 0.0 }
    }
}

/// `min(2|A|_{a,α}, |N|_{b,α})` with `b` from [`departure_rate`].
pub fn departure_upper(a: &ComplexMatrix, p: ClassParams) -> Result<DepartureEstimate> {
    let split = complex_schur(a, SchurOrdering::ByModulusDesc)?;
    departure_from_schur(a, &split, p)
}

/// As [`departure_upper`] with a precomputed Schur split of `a`.
pub fn departure_from_schur(a: &ComplexMatrix, split: &SchurSplit, p: ClassParams) -> Result<DepartureEstimate> {
    let params = departure_rate(p);
    let gauge_bound = 2.0 * operator_gauge(a, p)?.gauge;
    let schur_value = gauge_of_values(&singular_values(&split.n)?, params);
    Ok(DepartureEstimate { params, upper: gauge_bound.min(schur_value), schur_value: Some(schur_value), gauge_bound })
}

fn check_nonneg(x: f64, what: &str) -> Result<()> {
    if !(x >= 0.0) || x.is_infinite() {
        return Err(Error::param(format!("{what} must be finite and nonnegative, got {x}")));
    }
    Ok(())
}

/// `log[(1/d) f_{b,α}(ν/d)]` using the upper end of the certified enclosure.
pub fn ln_resolvent_bound(d: f64, dep: &DepartureEstimate) -> Result<f64> {
    if !(d > 0.0) || d.is_infinite() {
        return Err(Error::param(format!("distance to the spectrum must be positive, got {d}")));
    }
    check_nonneg(dep.upper, "departure")?;
    if dep.upper == 0.0 {
        return Ok(-d.ln());
    }
    let ln_r = dep.upper.ln() - d.ln();
    Ok(-d.ln() + log_f_enclosure_ln(dep.params, ln_r, INTERNAL_TOL)?.hi)
}

/// `‖(z − A)⁻¹‖ ≤ (1/d) f_{b,α}(ν/d)` with `d = d(z, σ(A))`; may be `+∞`.
pub fn resolvent_bound(d: f64, dep: &DepartureEstimate) -> Result<f64> {
    if dep.upper == 0.0 && d > 0.0 {
        return Ok(1.0 / d);
    }
    Ok(ln_resolvent_bound(d, dep)?.exp())
}

/// `ν·h(‖E‖/ν)`, continued by `‖E‖` at `ν = 0`.
fn scaled_h(norm_e: f64, nu: f64, p: ClassParams) -> Result<f64> {
    check_nonneg(norm_e, "perturbation norm")?;
    check_nonneg(nu, "departure")?;
    if norm_e == 0.0 {
        return Ok(0.0);
    }
    let ratio = norm_e / nu;
    if nu == 0.0 || !ratio.is_finite() {
        return Ok(norm_e);
    }
    let v = (nu.ln() + ln_h(p, ratio, H_TOL)?).exp();
    Ok(v.max(norm_e))
}

/// Bound on `sup_{μ ∈ σ(B)} d(μ, σ(A))` for `‖A − B‖ = normE`.
pub fn spectral_variation_bound(norm_e: f64, dep: &DepartureEstimate) -> Result<f64> {
    scaled_h(norm_e, dep.upper, dep.params)
}

/// Bound on the Hausdorff distance of `σ(A)` and `σ(B)` with `m = max(ν(A), ν(B))`.
pub fn spectral_distance_bound(norm_e: f64, dep_a: &DepartureEstimate, dep_b: &DepartureEstimate) -> Result<f64> {
    if dep_a.params != dep_b.params {
        return Err(Error::param("departure estimates must share (b, alpha)"));
    }
    scaled_h(norm_e, dep_a.upper.max(dep_b.upper), dep_a.params)
}

/// `sup_{x ∈ s1} d(x, s2)`.
pub fn directed_distance(s1: &Spectrum, s2: &Spectrum) -> f64 {
    s1.eigenvalues().iter().map(|&x| s2.distance_to(x)).fold(0.0, f64::max)
}

/// Exact Hausdorff distance of two finite sets.
pub fn hausdorff_distance(s1: &Spectrum, s2: &Spectrum) -> Result<f64> {
    if s1.is_empty() || s2.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(directed_distance(s1, s2).max(directed_distance(s2, s1)))
}

/// `|z|^{−1} f_{a,α}(|z|^{−1}|A|_{a,α})` for quasi-nilpotent `A`; may be `+∞`.
pub fn quasinilpotent_resolvent_bound(g: &OperatorGauge, z: Complex64) -> Result<f64> {
    let m = z.norm();
    if !(m > 0.0) || m.is_infinite() {
        return Err(Error::param("z must be nonzero and finite"));
    }
    check_nonneg(g.gauge, "gauge")?;
    let ln_r = g.gauge.ln() - m.ln();
    Ok((-m.ln() + log_f_enclosure_ln(g.params, ln_r, INTERNAL_TOL)?.hi).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(a: f64, alpha: f64) -> ClassParams {
        ClassParams::new(a, alpha).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn rate_for_alpha_one() {
        let b = departure_rate(cp(1.5, 1.0));
        assert!((b.a() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn departure_of_two_by_two() {
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 5.0], vec![0.0, 2.0]]).unwrap();
        let dep = departure_upper(&a, cp(1.0, 1.0)).unwrap();
        let expect = 5.0 * (1.0f64 / 3.0).exp();
        assert!((dep.schur_value.unwrap() - expect).abs() < 1e-12 * expect);
        assert!(dep.upper <= dep.schur_value.unwrap());
        assert!(dep.upper <= dep.gauge_bound);
    }

    #[test]
    fn departure_of_normal_matrix() {
        let a = ComplexMatrix::from_real_diag(&[0.5, -0.2, 0.1]);
        let dep = departure_upper(&a, cp(1.0, 1.0)).unwrap();
        assert_eq!(dep.upper, 0.0);
    }

    #[test]
    fn resolvent_bound_examples() {
        let p = cp(1.0, 1.0);
        let dep = DepartureEstimate::normal(departure_rate(p));
        assert_eq!(resolvent_bound(1.0, &dep).unwrap(), 1.0);
        assert!(resolvent_bound(0.0, &dep).is_err());
        let dep = DepartureEstimate { upper: 0.4, ..dep };
        let f1 = f_eval(dep.params, 1.0, 1e-14).unwrap();
        let b = resolvent_bound(0.4, &dep).unwrap();
        assert!((b - f1.value / 0.4).abs() < 1e-12 * b);
        assert!(b >= f1.upper() / 0.4 * (1.0 - 1e-15));
    }

    #[test]
    fn spectral_bounds_examples() {
        let params = departure_rate(cp(1.0, 1.0));
        let normal = DepartureEstimate::normal(params);
        assert_eq!(spectral_variation_bound(0.3, &normal).unwrap(), 0.3);
        assert_eq!(spectral_distance_bound(0.3, &normal, &normal).unwrap(), 0.3);
        let dep = DepartureEstimate { upper: 0.2, ..normal };
        assert_eq!(spectral_variation_bound(0.0, &dep).unwrap(), 0.0);
        let v = spectral_variation_bound(0.3, &dep).unwrap();
        assert!(v >= 0.3);
        assert_eq!(spectral_distance_bound(0.3, &dep, &normal).unwrap(), v);
        let other = DepartureEstimate::normal(cp(0.9, 1.0));
        assert!(spectral_distance_bound(0.3, &dep, &other).is_err());
    }

    #[test]
    fn hausdorff_examples() {
        let s = |v: &[f64]| Spectrum::new(v.iter().map(|&x| c(x)).collect());
        assert_eq!(hausdorff_distance(&s(&[0.0, 1.0]), &s(&[0.0])).unwrap(), 1.0);
        assert_eq!(hausdorff_distance(&s(&[1.0, -1.0]), &s(&[1.0])).unwrap(), 2.0);
        assert_eq!(hausdorff_distance(&s(&[0.3, 0.7]), &s(&[0.7, 0.3])).unwrap(), 0.0);
        assert!(hausdorff_distance(&s(&[]), &s(&[1.0])).is_err());
    }

    #[test]
    fn quasinilpotent_examples() {
        let g = OperatorGauge { params: cp(1.0, 1.0), gauge: 0.8 };
        let at_one = quasinilpotent_resolvent_bound(&g, c(1.0)).unwrap();
        let f = f_eval(g.params, 0.8, 1e-14).unwrap();
        assert!((at_one - f.value).abs() < 1e-12 * f.value);
        assert!(quasinilpotent_resolvent_bound(&g, c(1e12)).unwrap() < 1.1e-12);
        assert!(quasinilpotent_resolvent_bound(&g, c(0.0)).is_err());
    }
}
