//! Dense complex linear algebra at desk scale: SVD, eigenvalues, complex
//! Schur triangularization, operator and resolvent norms.

mod matrix;
mod schur;
mod svd;

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use matrix::ComplexMatrix;
pub use svd::{singular_values, svd, SvdResult};

use crate::error::{Error, Result};

/// Uniform linear-algebra tolerance factor: `EPS_LIN_FACTOR · dim · ‖A‖`.
pub const EPS_LIN_FACTOR: f64 = 1e-10;

/// `ε_lin = 1e-10 · dim · scale`.
pub fn eps_lin(dim: usize, scale: f64) -> f64 {
    EPS_LIN_FACTOR * dim.max(1) as f64 * scale
}

/// Orders complex numbers by decreasing modulus, then increasing argument.
pub fn spectral_order(x: &Complex64, y: &Complex64) -> Ordering {
    y.norm().total_cmp(&x.norm()).then_with(|| x.arg().total_cmp(&y.arg()))
}

/// Eigenvalues sorted by `(−modulus, argument)`, repeated by multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    eigenvalues: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(mut eigenvalues: Vec<Complex64>) -> Self {
        eigenvalues.sort_by(spectral_order);
        Self { eigenvalues }
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|z| z.norm()).collect()
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.first().map_or(0.0, |z| z.norm())
    }

    /// `d(z, σ)`.
    pub fn distance_to(&self, z: Complex64) -> f64 {
        self.eigenvalues.iter().map(|&l| (z - l).norm()).fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchurOrdering {
    #[default]
    ByModulusDesc,
    None,
}

/// `A = Q T Q*` with `T = D + N`, `D` the diagonal and `N` the strictly upper part.
#[derive(Debug, Clone)]
pub struct SchurSplit {
    pub q: ComplexMatrix,
    pub t: ComplexMatrix,
    pub d: ComplexMatrix,
    pub n: ComplexMatrix,
}

impl SchurSplit {
    fn from_qt(q: ComplexMatrix, t: ComplexMatrix) -> Self {
        let d = ComplexMatrix::from_diag(&t.diagonal());
        let n = t.strict_upper();
        Self { q, t, d, n }
    }

    pub fn spectrum(&self) -> Spectrum {
        Spectrum::new(self.t.diagonal())
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        &(&self.q * &self.t) * &self.q.adjoint()
    }
}

/// Computes the complex Schur form, optionally reordering the diagonal by
/// decreasing modulus (ties by argument) through unitary swaps.
pub fn complex_schur(a: &ComplexMatrix, ordering: SchurOrdering) -> Result<SchurSplit> {
    let n = a.require_square()?;
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let mut q = ComplexMatrix::identity(n);
    let mut t = a.clone();
    if !a.is_upper_triangular() {
        schur::hessenberg(&mut t, Some(&mut q));
        schur::hessenberg_qr(&mut t, Some(&mut q))?;
    }
    if ordering == SchurOrdering::ByModulusDesc {
        // Bubble sort with adjacent unitary swaps.
        for pass in 0..n {
            let mut swapped = false;
            for k in 0..n - 1 - pass.min(n - 1) {
                if spectral_order(&t[(k, k)], &t[(k + 1, k + 1)]) == Ordering::Greater {
                    schur::swap_adjacent(&mut t, &mut q, k);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
    }
    Ok(SchurSplit::from_qt(q, t))
}

/// Eigenvalues via balancing, Hessenberg reduction and shifted QR.
/// Triangular inputs are read off the diagonal.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Spectrum> {
    let n = a.require_square()?;
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if a.is_upper_triangular() || a.is_lower_triangular() {
        return Ok(Spectrum::new(a.diagonal()));
    }
    let mut h = a.clone();
    schur::balance(&mut h);
    schur::hessenberg(&mut h, None);
    schur::hessenberg_qr(&mut h, None)?;
    Ok(Spectrum::new(h.diagonal()))
}

/// Largest singular value.
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(a)?[0])
}

/// `‖(zI − A)⁻¹‖ = 1/σ_min(zI − A)`; errors when `σ_min ≤ ε_lin·(|z| + ‖A‖)`.
pub fn resolvent_norm(a: &ComplexMatrix, z: Complex64) -> Result<f64> {
    let n = a.require_square()?;
    let norm_a = operator_norm(a)?;
    resolvent_norm_with(a, z, n, norm_a)
}

/// As [`resolvent_norm`] with a precomputed `‖A‖`.
pub fn resolvent_norm_with(a: &ComplexMatrix, z: Complex64, n: usize, norm_a: f64) -> Result<f64> {
    let s = singular_values(&a.shifted(z))?;
    let sigma_min = *s.last().expect("nonempty");
    let threshold = eps_lin(n, z.norm() + norm_a);
    if sigma_min <= threshold {
        return Err(Error::ResolventBlowUp { sigma_min, threshold });
    }
    Ok(1.0 / sigma_min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_eigenvalues_sorted() {
        let a = ComplexMatrix::from_real_diag(&[1.0, 2.0, 3.0]);
        let s = eigenvalues(&a).unwrap();
        assert_eq!(s.eigenvalues(), &[c(3.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn non_square_rejected() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(matches!(eigenvalues(&a), Err(Error::NotSquare { rows: 2, cols: 3 })));
        assert!(complex_schur(&a, SchurOrdering::None).is_err());
    }

    #[test]
    fn triangular_input_unordered_is_untouched() {
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 5.0], vec![0.0, 2.0]]).unwrap();
        let s = complex_schur(&a, SchurOrdering::None).unwrap();
        assert_eq!(s.q, ComplexMatrix::identity(2));
        assert_eq!(s.t, a);
        assert_eq!(s.d, ComplexMatrix::from_real_diag(&[1.0, 2.0]));
        assert_eq!(s.n, ComplexMatrix::from_real_rows(&[vec![0.0, 5.0], vec![0.0, 0.0]]).unwrap());
    }

    #[test]
    fn ordering_swaps_diagonal() {
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 5.0], vec![0.0, 2.0]]).unwrap();
        let s = complex_schur(&a, SchurOrdering::ByModulusDesc).unwrap();
        assert!((s.t[(0, 0)] - c(2.0, 0.0)).norm() < 1e-14);
        assert!((s.t[(1, 1)] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((s.t[(0, 1)].norm() - 5.0).abs() < 1e-13);
        assert!((&s.reconstruct() - &a).frobenius_norm() < 1e-13);
    }

    #[test]
    fn resolvent_of_scalar() {
        let a = ComplexMatrix::zeros(1, 1);
        assert!((resolvent_norm(&a, c(2.0, 0.0)).unwrap() - 0.5).abs() < 1e-16);
        assert!(matches!(resolvent_norm(&a, c(0.0, 0.0)), Err(Error::ResolventBlowUp { .. })));
    }

    #[test]
    fn resolvent_of_two_by_two_nilpotent() {
        // (I − A)⁻¹ = [[1, τ], [0, 1]]; its norm is the larger root of
        // s² − (2 + τ²) s + 1 = 0, taken as a square root.
        let tau = 3.0;
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, tau], vec![0.0, 0.0]]).unwrap();
        let r = resolvent_norm(&a, c(1.0, 0.0)).unwrap();
        let tr = 2.0 + tau * tau;
        let expected = ((tr + (tr * tr - 4.0f64).sqrt()) / 2.0).sqrt();
        assert!((r - expected).abs() < 1e-13 * expected);
    }

    #[test]
    fn rotation_of_roots_of_unity() {
        // Cyclic permutation: eigenvalues are the 4th roots of unity.
        let mut p = ComplexMatrix::zeros(4, 4);
        for i in 0..3 {
            p[(i, i + 1)] = c(1.0, 0.0);
        }
        p[(3, 0)] = c(1.0, 0.0);
        let s = eigenvalues(&p).unwrap();
        for z in s.eigenvalues() {
            assert!((z.norm() - 1.0).abs() < 1e-13);
            assert!((z.powu(4) - c(1.0, 0.0)).norm() < 1e-12);
        }
    }
}
