//! Exponential-class membership and gauge propagation for operators:
//! inclusion ordering, product and sum closure, eigenvalue decay.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{singular_values, ComplexMatrix};
use crate::sequence::{combined_exponent, gauge_of_values, ClassParams};

/// `|A|_{a,α} = sup_n s_n(A)·exp(a n^α)` over the available singular values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorGauge {
    pub params: ClassParams,
    pub gauge: f64,
}

impl OperatorGauge {
    /// Gauge of a nonincreasing singular-value list. Zero values contribute 0.
    pub fn from_singular_values(singular_values: &[f64], params: ClassParams) -> Self {
        Self { params, gauge: gauge_of_values(singular_values, params) }
    }
}

pub fn operator_gauge(a: &ComplexMatrix, p: ClassParams) -> Result<OperatorGauge> {
    let s = singular_values(a)?;
    Ok(OperatorGauge::from_singular_values(&s, p))
}

/// Reverse-lexicographic order: `(a, α) ≺ (a', α')` iff `α < α'`, or
/// `α = α'` and `a < a'`. When it holds, `E(a', α') ⊊ E(a, α)`.
pub fn class_precedes(p: ClassParams, q: ClassParams) -> bool {
    p.alpha() < q.alpha() || (p.alpha() == q.alpha() && p.a() < q.a())
}

/// `‖A‖·|B|_{a,α}·‖C‖ ≥ |ABC|_{a,α}`.
pub fn product_gauge_bound(norm_a: f64, gauge_b: &OperatorGauge, norm_c: f64) -> Result<f64> {
    if !(norm_a >= 0.0 && norm_c >= 0.0) {
        return Err(Error::param("operator norms must be nonnegative"));
    }
    Ok(norm_a * gauge_b.gauge * norm_c)
}

/// Rate `a' = (Σ a_k^{−1/α})^{−α}` of the class containing `Σ E(a_k, α)`.
pub fn sum_class(rates: &[f64], alpha: f64) -> Result<f64> {
    combined_exponent(rates, alpha)
}

/// `|Σ A_k|_{a',α} ≤ K·max_k |A_k|_{a_k,α}`.
pub fn sum_gauge_bound(gauges: &[OperatorGauge]) -> Result<OperatorGauge> {
    let first = gauges.first().ok_or(Error::EmptyInput)?;
    let alpha = first.params.alpha();
    if gauges.iter().any(|g| g.params.alpha() != alpha) {
        return Err(Error::param("sum_gauge_bound requires a common alpha"));
    }
    let rates: Vec<f64> = gauges.iter().map(|g| g.params.a()).collect();
    let a_prime = sum_class(&rates, alpha)?;
    let max_gauge = gauges.iter().map(|g| g.gauge).fold(0.0, f64::max);
    Ok(OperatorGauge { params: ClassParams::new(a_prime, alpha)?, gauge: gauges.len() as f64 * max_gauge })
}

/// Class `(a/(1+α), α)` that contains the eigenvalue sequence.
pub fn eigenvalue_class(p: ClassParams) -> ClassParams {
    ClassParams::new(p.a() / (1.0 + p.alpha()), p.alpha()).expect("derived rate is positive")
}

/// `|λ_k| ≤ |A|_{a,α}·exp(−a k^α/(1+α))` for `k ≥ 1`.
pub fn weyl_bound(g: &OperatorGauge, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::param("eigenvalue index k starts at 1"));
    }
    let p = g.params;
    Ok(g.gauge * (-p.exponent(k) / (1.0 + p.alpha())).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;

    fn cp(a: f64, alpha: f64) -> ClassParams {
        ClassParams::new(a, alpha).unwrap()
    }

    #[test]
    fn ordering_examples() {
        assert!(class_precedes(cp(1.0, 1.0), cp(0.5, 2.0)));
        assert!(class_precedes(cp(1.0, 1.0), cp(2.0, 1.0)));
        assert!(!class_precedes(cp(1.0, 1.0), cp(1.0, 1.0)));
        assert!(!class_precedes(cp(0.5, 2.0), cp(1.0, 1.0)));
    }

    #[test]
    fn identity_gauge_dominated_by_last_index() {
        let g = operator_gauge(&ComplexMatrix::identity(3), cp(1.0, 1.0)).unwrap();
        assert!((g.gauge - 3f64.exp()).abs() < 1e-13);
        let z = operator_gauge(&ComplexMatrix::zeros(3, 3), cp(1.0, 1.0)).unwrap();
        assert_eq!(z.gauge, 0.0);
    }

    #[test]
    fn product_and_sum_examples() {
        let g = OperatorGauge { params: cp(1.0, 1.0), gauge: 0.7 };
        assert_eq!(product_gauge_bound(1.0, &g, 1.0).unwrap(), 0.7);
        let g1 = OperatorGauge { params: cp(1.0, 1.0), gauge: 1.0 };
        assert_eq!(product_gauge_bound(2.0, &g1, 3.0).unwrap(), 6.0);
        assert!(product_gauge_bound(-1.0, &g1, 1.0).is_err());

        let s = sum_gauge_bound(&[g, g]).unwrap();
        assert_eq!(s.params, cp(0.5, 1.0));
        assert_eq!(s.gauge, 1.4);
        assert_eq!(sum_gauge_bound(&[g]).unwrap(), g);
        let mixed = OperatorGauge { params: cp(1.0, 2.0), gauge: 1.0 };
        assert!(sum_gauge_bound(&[g, mixed]).is_err());
    }

    #[test]
    fn sum_class_examples() {
        let a = 1.7;
        for alpha in [0.5, 1.0, 2.0] {
            let ap = sum_class(&[a, a], alpha).unwrap();
            assert!((ap - 2f64.powf(-alpha) * a).abs() < 1e-14);
        }
        assert_eq!(sum_class(&[2.5], 0.3).unwrap(), 2.5);
        assert!((sum_class(&[1.0, 4.0], 1.0).unwrap() - 0.8).abs() < 1e-15);
        assert!(sum_class(&[1.0, -1.0], 1.0).is_err());
    }

    #[test]
    fn weyl_examples() {
        let g = OperatorGauge { params: cp(1.0, 1.0), gauge: 1.0 };
        assert!((weyl_bound(&g, 2).unwrap() - (-1f64).exp()).abs() < 1e-16);
        assert!((weyl_bound(&g, 1).unwrap() - (-0.5f64).exp()).abs() < 1e-16);
        assert!(weyl_bound(&g, 0).is_err());
    }
}
