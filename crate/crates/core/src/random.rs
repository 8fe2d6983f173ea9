//! Random test matrices: Gaussian entries, unitaries and matrices with
//! prescribed singular values.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::ComplexMatrix;

pub fn gaussian_scalar<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Entries i.i.d. standard complex Gaussian.
pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian_scalar(rng))
}

/// Unitary from twice-orthogonalized Gram–Schmidt of a Gaussian matrix.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n, n);
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| g[(i, j)]).collect()).collect();
    for j in 0..n {
        for _ in 0..2 {
            for k in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let proj: Complex64 = done[k].iter().zip(&rest[0]).map(|(q, v)| q.conj() * v).sum();
                for (v, q) in rest[0].iter_mut().zip(&done[k]) {
                    *v -= proj * q;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for v in &mut cols[j] {
            *v /= norm;
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// `U diag(s) V*` with random unitaries.
pub fn with_singular_values<R: Rng + ?Sized>(rng: &mut R, s: &[f64]) -> ComplexMatrix {
    let n = s.len();
    let u = unitary(rng, n);
    let v = unitary(rng, n);
    &(&u * &ComplexMatrix::from_real_diag(s)) * &v.adjoint()
}

/// `U D U*` with a random unitary.
pub fn normal_with_eigenvalues<R: Rng + ?Sized>(rng: &mut R, eigenvalues: &[Complex64]) -> ComplexMatrix {
    let u = unitary(rng, eigenvalues.len());
    &(&u * &ComplexMatrix::from_diag(eigenvalues)) * &u.adjoint()
}

/// Rescales `m` to the given operator norm.
pub fn with_norm(m: &ComplexMatrix, norm: f64) -> ComplexMatrix {
    let current = crate::linalg::operator_norm(m).expect("nonempty matrix");
    if current == 0.0 {
        return m.clone();
    }
    m.scale(Complex64::new(norm / current, 0.0))
}
