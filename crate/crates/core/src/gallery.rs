//! Finite truncations of the extremal operators: weighted shift, cyclic
//! matrices, the Weyl-sharpness block operator, interleaved sums and a
//! Fourier-decay diagonal. Each comes with its known singular values and
//! eigenvalue moduli.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::sequence::ClassParams;

/// Largest dimension accepted by [`make_weyl_sharpness`].
pub const MAX_WEYL_DIM: usize = 500;

/// Block ends `N_1 < N_2 < …` with `N_0 = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct BlockSchedule {
    block_ends: Vec<usize>,
}

impl TryFrom<Vec<usize>> for BlockSchedule {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<BlockSchedule> for Vec<usize> {
    fn from(s: BlockSchedule) -> Self {
        s.block_ends
    }
}

impl BlockSchedule {
    pub fn new(block_ends: Vec<usize>) -> Result<Self> {
        if block_ends.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut prev = 0;
        for &n in &block_ends {
            if n <= prev {
                return Err(Error::param("block ends must be strictly increasing and positive"));
            }
            prev = n;
        }
        Ok(Self { block_ends })
    }

    /// `N_n = round(exp(n²))` for every `n` with `N_n ≤ max_dim`.
    pub fn super_exponential(max_dim: usize) -> Result<Self> {
        let ends: Vec<usize> = (1..)
            .map(|n: u32| (f64::from(n * n)).exp().round())
            .take_while(|&x| x <= max_dim as f64)
            .map(|x| x as usize)
            .collect();
        Self::new(ends)
    }

    pub fn block_ends(&self) -> &[usize] {
        &self.block_ends
    }

    pub fn dim(&self) -> usize {
        *self.block_ends.last().expect("nonempty")
    }

    /// `(N_{n−1}, N_n)` pairs.
    pub fn ranges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        std::iter::once(0).chain(self.block_ends.iter().copied()).zip(self.block_ends.iter().copied())
    }

    /// `d_n = N_n − N_{n−1}`.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.ranges().map(|(lo, hi)| hi - lo).collect()
    }

    /// `p_n = (1/d_n) Σ_{l=N_{n−1}+1}^{N_n} l^α`.
    pub fn mean_powers(&self, alpha: f64) -> Vec<f64> {
        self.ranges()
            .map(|(lo, hi)| (lo + 1..=hi).map(|l| (l as f64).powf(alpha)).sum::<f64>() / (hi - lo) as f64)
            .collect()
    }
}

/// Subdiagonal weighted shift with weights `e^{−a n^α}`, `n = 1..dim−1`.
pub fn make_shift(p: ClassParams, dim: usize) -> Result<ComplexMatrix> {
    if dim < 2 {
        return Err(Error::param("shift requires dim >= 2"));
    }
    let mut m = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim - 1 {
        m[(i + 1, i)] = Complex64::new(p.weight(i + 1), 0.0);
    }
    Ok(m)
}

/// Singular values of [`make_shift`]: the weights and one zero.
pub fn shift_singular_values(p: ClassParams, dim: usize) -> Vec<f64> {
    (1..dim).map(|n| p.weight(n)).chain(std::iter::once(0.0)).collect()
}

/// `(I − zB)⁻¹ = Σ_k z^k B^k` for the shift `B`, built by forward
/// substitution so no cancellation occurs for real positive `z`.
pub fn shift_neumann_inverse(p: ClassParams, dim: usize, z: Complex64) -> Result<ComplexMatrix> {
    if dim < 2 {
        return Err(Error::param("shift requires dim >= 2"));
    }
    let mut r = ComplexMatrix::identity(dim);
    for i in 1..dim {
        let step = z * p.weight(i);
        for j in 0..i {
            r[(i, j)] = step * r[(i - 1, j)];
        }
    }
    Ok(r)
}

fn check_taus(taus: &[f64], min_len: usize) -> Result<()> {
    if taus.len() < min_len {
        return Err(Error::TooFewPoints { needed: min_len, got: taus.len() });
    }
    if taus.iter().any(|&t| !(t >= 0.0) || !t.is_finite()) {
        return Err(Error::param("cyclic weights must be finite and nonnegative"));
    }
    if taus.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::param("cyclic weights must be nonincreasing"));
    }
    Ok(())
}

fn cyclic_unchecked(taus: &[f64]) -> ComplexMatrix {
    let n = taus.len();
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n - 1 {
        m[(i, i + 1)] = Complex64::new(taus[i], 0.0);
    }
    m[(n - 1, 0)] += Complex64::new(taus[n - 1], 0.0);
    m
}

/// `C(τ_1, …, τ_N)`: `τ_1..τ_{N−1}` on the superdiagonal, `τ_N` in the bottom-left corner.
pub fn make_cyclic(taus: &[f64]) -> Result<ComplexMatrix> {
    check_taus(taus, 2)?;
    Ok(cyclic_unchecked(taus))
}

/// Common eigenvalue modulus `(τ_1⋯τ_N)^{1/N}` of a cyclic matrix.
pub fn cyclic_eigenvalue_modulus(taus: &[f64]) -> f64 {
    if taus.contains(&0.0) {
        return 0.0;
    }
    (taus.iter().map(|t| t.ln()).sum::<f64>() / taus.len() as f64).exp()
}

/// Block-diagonal `⊕ C(e^{−a(N_{n−1}+1)^α}, …, e^{−a N_n^α})`.
pub fn make_weyl_sharpness(p: ClassParams, schedule: &BlockSchedule) -> Result<ComplexMatrix> {
    let dim = schedule.dim();
    if dim > MAX_WEYL_DIM {
        return Err(Error::param(format!("weyl matrix dimension {dim} exceeds {MAX_WEYL_DIM}")));
    }
    let blocks: Vec<ComplexMatrix> = schedule
        .ranges()
        .map(|(lo, hi)| {
            let taus: Vec<f64> = (lo + 1..=hi).map(|l| p.weight(l)).collect();
            cyclic_unchecked(&taus)
        })
        .collect();
    Ok(ComplexMatrix::block_diagonal(&blocks))
}

/// Eigenvalue moduli `e^{−a p_n}` of [`make_weyl_sharpness`], each repeated `d_n` times.
pub fn weyl_eigenvalue_moduli(p: ClassParams, schedule: &BlockSchedule) -> Vec<f64> {
    schedule
        .mean_powers(p.alpha())
        .iter()
        .zip(schedule.block_sizes())
        .flat_map(|(&pn, d)| std::iter::repeat_n((-p.a() * pn).exp(), d))
        .collect()
}

/// Diagonal summands `A_k` with `s_m(A_k) = e^{−a_k m^α}` placed on the
/// 1-based indices `K m − (k−1)`, and their sum.
pub fn make_interleaved_sum(rates: &[f64], alpha: f64, dim: usize) -> Result<(Vec<ComplexMatrix>, ComplexMatrix)> {
    let k_count = rates.len();
    if k_count == 0 {
        return Err(Error::EmptyInput);
    }
    if dim == 0 || !dim.is_multiple_of(k_count) {
        return Err(Error::param(format!("dim {dim} must be a positive multiple of K = {k_count}")));
    }
    let params: Vec<ClassParams> = rates.iter().map(|&a| ClassParams::new(a, alpha)).collect::<Result<_>>()?;
    let summands: Vec<ComplexMatrix> = params
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let mut diag = vec![0.0; dim];
            for m in 1..=dim / k_count {
                diag[k_count * m - k - 1] = p.weight(m);
            }
            ComplexMatrix::from_real_diag(&diag)
        })
        .collect();
    let mut sum = ComplexMatrix::zeros(dim, dim);
    for s in &summands {
        sum = &sum + s;
    }
    Ok((summands, sum))
}

/// `|m|` for the enumeration `m = 0, −1, 1, −2, 2, …` at 0-based position `j`.
fn interleaved_abs_index(j: usize) -> usize {
    j.div_ceil(2)
}

/// Diagonal with entries `e^{−a|m|}`, `m = 0, −1, 1, −2, 2, …`.
pub fn make_convolution_diagonal(a: f64, dim: usize) -> Result<ComplexMatrix> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::param(format!("rate a must be positive, got {a}")));
    }
    if dim == 0 {
        return Err(Error::EmptyInput);
    }
    let diag: Vec<f64> = (0..dim).map(|j| (-a * interleaved_abs_index(j) as f64).exp()).collect();
    Ok(ComplexMatrix::from_real_diag(&diag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigenvalues, singular_values};

    fn cp(a: f64, alpha: f64) -> ClassParams {
        ClassParams::new(a, alpha).unwrap()
    }

    fn close(x: &[f64], y: &[f64], tol: f64) -> bool {
        x.len() == y.len() && x.iter().zip(y).all(|(a, b)| (a - b).abs() <= tol)
    }

    #[test]
    fn shift_example() {
        let p = cp(1.0, 1.0);
        let b = make_shift(p, 3).unwrap();
        let s = singular_values(&b).unwrap();
        assert!(close(&s, &[(-1f64).exp(), (-2f64).exp(), 0.0], 1e-15));
        assert_eq!(b.pow(3), ComplexMatrix::zeros(3, 3));
        assert!(eigenvalues(&b).unwrap().eigenvalues().iter().all(|z| z.norm() == 0.0));
        assert!(make_shift(p, 1).is_err());
    }

    #[test]
    fn neumann_inverse_inverts() {
        let p = cp(1.0, 1.0);
        let z = Complex64::new(3.0, -1.0);
        let b = make_shift(p, 8).unwrap();
        let m = &ComplexMatrix::identity(8) - &b.scale(z);
        let r = shift_neumann_inverse(p, 8, z).unwrap();
        assert!((&(&m * &r) - &ComplexMatrix::identity(8)).frobenius_norm() < 1e-13);
    }

    #[test]
    fn cyclic_examples() {
        let c = make_cyclic(&[1.0, 0.25]).unwrap();
        assert!(close(&singular_values(&c).unwrap(), &[1.0, 0.25], 1e-15));
        assert!(close(&eigenvalues(&c).unwrap().moduli(), &[0.5, 0.5], 1e-14));
        assert_eq!(cyclic_eigenvalue_modulus(&[1.0, 0.25]), 0.5);

        let u = make_cyclic(&[1.0; 5]).unwrap();
        for z in eigenvalues(&u).unwrap().eigenvalues() {
            assert!((z.powu(5) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
        let nil = make_cyclic(&[0.9, 0.5, 0.0]).unwrap();
        assert!(eigenvalues(&nil).unwrap().moduli().iter().all(|&m| m < 1e-12));

        assert!(make_cyclic(&[0.25, 1.0]).is_err());
        assert!(make_cyclic(&[1.0, -0.5]).is_err());
        assert!(make_cyclic(&[1.0]).is_err());
    }

    #[test]
    fn weyl_schedule_one_three() {
        let p = cp(0.7, 1.3);
        let sched = BlockSchedule::new(vec![1, 3]).unwrap();
        assert_eq!(sched.block_sizes(), vec![1, 2]);
        let a = make_weyl_sharpness(p, &sched).unwrap();
        let s = singular_values(&a).unwrap();
        assert!(close(&s, &[p.weight(1), p.weight(2), p.weight(3)], 1e-15));
        let moduli = eigenvalues(&a).unwrap().moduli();
        assert!(close(&moduli, &weyl_eigenvalue_moduli(p, &sched), 1e-14));
        for (k, m) in moduli.iter().enumerate() {
            assert!(*m <= (-p.exponent(k + 1) / (1.0 + p.alpha())).exp());
        }
    }

    #[test]
    fn default_schedule() {
        let s = BlockSchedule::super_exponential(MAX_WEYL_DIM).unwrap();
        assert_eq!(s.block_ends(), &[3, 55]);
        assert!(BlockSchedule::new(vec![3, 3]).is_err());
        assert!(BlockSchedule::new(vec![0, 3]).is_err());
        let p = cp(1.0, 1.0);
        let a = make_weyl_sharpness(p, &s).unwrap();
        let computed = eigenvalues(&a).unwrap().moduli();
        for (c, e) in computed.iter().zip(weyl_eigenvalue_moduli(p, &s)) {
            assert!((c - e).abs() <= 1e-10 * e, "{c} vs {e}");
        }
        let big = BlockSchedule::new(vec![501]).unwrap();
        assert!(make_weyl_sharpness(cp(1.0, 1.0), &big).is_err());
    }

    #[test]
    fn interleaved_examples() {
        let (summands, sum) = make_interleaved_sum(&[1.3], 0.8, 4).unwrap();
        assert_eq!(summands[0], sum);
        let (_, sum) = make_interleaved_sum(&[1.0, 1.0], 1.0, 6).unwrap();
        let e = |k: f64| (-k).exp();
        let s = singular_values(&sum).unwrap();
        assert!(close(&s, &[e(1.0), e(1.0), e(2.0), e(2.0), e(3.0), e(3.0)], 1e-15));
        assert!(make_interleaved_sum(&[1.0, 1.0], 1.0, 5).is_err());
    }

    #[test]
    fn convolution_diagonal_entries() {
        let d = make_convolution_diagonal(0.5, 5).unwrap();
        let expect: Vec<f64> = [0.0, 1.0, 1.0, 2.0, 2.0].iter().map(|m: &f64| (-0.5 * m).exp()).collect();
        assert!(close(&d.diagonal().iter().map(|z| z.re).collect::<Vec<_>>(), &expect, 0.0));
    }
}
