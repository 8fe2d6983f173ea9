//! One-sided (Hestenes) Jacobi SVD for dense complex matrices.
//!
//! Columns of a working copy are rotated pairwise until mutually orthogonal;
//! the column norms are then the singular values. Jacobi is slower than
//! bidiagonalization but attains high relative accuracy on graded matrices,
//! which matters for the rapidly decaying singular values handled here.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// Thin SVD `A = U·diag(s)·V*` with `k = min(rows, cols)` columns in `U` and `V`.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub u: ComplexMatrix,
    pub v: ComplexMatrix,
    pub singular_values: Vec<f64>,
}

impl SvdResult {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let k = self.singular_values.len();
        let us = ComplexMatrix::from_fn(self.u.rows(), k, |i, j| self.u[(i, j)] * self.singular_values[j]);
        &us * &self.v.adjoint()
    }
}

/// Column-major scratch matrix.
struct Columns {
    len: usize,
    data: Vec<Complex64>,
}

impl Columns {
    fn from_matrix(a: &ComplexMatrix, adjoint: bool) -> Self {
        let (len, ncols) = if adjoint { (a.cols(), a.rows()) } else { (a.rows(), a.cols()) };
        let mut data = Vec::with_capacity(len * ncols);
        for j in 0..ncols {
            for i in 0..len {
                data.push(if adjoint { a[(j, i)].conj() } else { a[(i, j)] });
            }
        }
        Self { len, data }
    }

    fn identity(n: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        Self { len: n, data }
    }

    fn ncols(&self) -> usize {
        self.data.len().checked_div(self.len).unwrap_or(0)
    }

    fn col(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.len..(j + 1) * self.len]
    }

    fn pair_mut(&mut self, p: usize, q: usize) -> (&mut [Complex64], &mut [Complex64]) {
        debug_assert!(p < q);
        let (head, tail) = self.data.split_at_mut(q * self.len);
        (&mut head[p * self.len..(p + 1) * self.len], &mut tail[..self.len])
    }
}

fn norm_sqr(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

fn dot_h(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// Applies the rotation that orthogonalizes the column pair.
#[inline]
fn rotate(xp: &mut [Complex64], xq: &mut [Complex64], c: f64, s: f64, phase: Complex64) {
    for (a, b) in xp.iter_mut().zip(xq.iter_mut()) {
        let bq = *b * phase;
        let ap = *a;
        *a = ap * c - bq * s;
        *b = ap * s + bq * c;
    }
}

/// Runs Jacobi sweeps in place. Returns the number of sweeps used.
fn jacobi(work: &mut Columns, mut v: Option<&mut Columns>) -> Result<usize> {
    let n = work.ncols();
    let tol = f64::EPSILON * (work.len.max(1) as f64);
    let mut norms: Vec<f64> = (0..n).map(|j| norm_sqr(work.col(j))).collect();
    for sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = norms[p];
                let beta = norms[q];
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma = dot_h(work.col(p), work.col(q));
                let g = gamma.norm();
                if g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (xp, xq) = work.pair_mut(p, q);
                rotate(xp, xq, c, s, phase);
                norms[p] = norm_sqr(xp);
                norms[q] = norm_sqr(xq);
                if let Some(v) = v.as_deref_mut() {
                    let (vp, vq) = v.pair_mut(p, q);
                    rotate(vp, vq, c, s, phase);
                }
            }
        }
        if !rotated {
            return Ok(sweep + 1);
        }
    }
    Err(Error::SvdFailed(MAX_SWEEPS))
}

fn check_input(a: &ComplexMatrix) -> Result<()> {
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(())
}

/// Singular values only, nonincreasing.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    check_input(a)?;
    let mut work = Columns::from_matrix(a, a.cols() > a.rows());
    jacobi(&mut work, None)?;
    let mut s: Vec<f64> = (0..work.ncols()).map(|j| norm_sqr(work.col(j)).sqrt()).collect();
    s.sort_by(|x, y| y.total_cmp(x));
    Ok(s)
}

/// Full thin SVD.
pub fn svd(a: &ComplexMatrix) -> Result<SvdResult> {
    check_input(a)?;
    let adjoint = a.cols() > a.rows();
    let mut work = Columns::from_matrix(a, adjoint);
    let n = work.ncols();
    let m = work.len;
    let mut v = Columns::identity(n);
    jacobi(&mut work, Some(&mut v))?;

    let mut s: Vec<f64> = (0..n).map(|j| norm_sqr(work.col(j)).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| s[y].total_cmp(&s[x]).then(x.cmp(&y)));

    // Left vectors: normalized columns; zero columns are completed to an
    // orthonormal set afterwards.
    let scale_max = s.iter().cloned().fold(0.0, f64::max);
    let mut u_cols: Vec<Option<Vec<Complex64>>> = order
        .iter()
        .map(|&j| {
            let sj = s[j];
            if sj > scale_max * f64::EPSILON * 1e-3 && sj > 0.0 {
                Some(work.col(j).iter().map(|z| z / sj).collect())
            } else {
                None
            }
        })
        .collect();
    complete_orthonormal(&mut u_cols, m);

    let k = n; // == min(rows, cols)
    let sorted_s: Vec<f64> = order.iter().map(|&j| s[j]).collect();
    let u_mat = ComplexMatrix::from_fn(m, k, |i, j| u_cols[j].as_ref().unwrap()[i]);
    let v_mat = ComplexMatrix::from_fn(n, k, |i, j| v.col(order[j])[i]);
    s = sorted_s;

    let (u, v) = if adjoint { (v_mat, u_mat) } else { (u_mat, v_mat) };
    Ok(SvdResult { u, v, singular_values: s })
}

/// Fills `None` slots with unit vectors orthogonal to all others (modified
/// Gram–Schmidt against the canonical basis).
fn complete_orthonormal(cols: &mut [Option<Vec<Complex64>>], m: usize) {
    let mut basis_idx = 0;
    for slot in 0..cols.len() {
        if cols[slot].is_some() {
            continue;
        }
        while basis_idx < m {
            let mut e = vec![Complex64::new(0.0, 0.0); m];
            e[basis_idx] = Complex64::new(1.0, 0.0);
            basis_idx += 1;
            for _ in 0..2 {
                for other in cols.iter().flatten() {
                    let proj = dot_h(other, &e);
                    for (x, o) in e.iter_mut().zip(other) {
                        *x -= proj * o;
                    }
                }
            }
            let nrm = norm_sqr(&e).sqrt();
            if nrm > 1e-8 {
                e.iter_mut().for_each(|x| *x /= nrm);
                cols[slot] = Some(e);
                break;
            }
        }
    }
}
