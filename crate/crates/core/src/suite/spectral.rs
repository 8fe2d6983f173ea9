use num_complex::Complex64;
use rand::Rng;

use super::standard_gallery;
use crate::commands::bound_spectral;
use crate::error::Result;
use crate::linalg::{operator_norm, ComplexMatrix};
use crate::random;
use crate::report::CheckResult;

/// Largest `‖E‖` relative to `‖A‖`.
const MAX_RELATIVE_PERTURBATION: f64 = 0.1;
const NORMAL_EQUALITY_TOL: f64 = 1e-8;

/// Hausdorff distance of `σ(A)`, `σ(A+E)` against the spectral-distance bound,
/// cycling through the gallery. Normal cases alternate between diagonal `E`
/// (both sides normal) and dense `E`.
pub fn spectral_distance_checks<R: Rng + ?Sized>(rng: &mut R, pairs: usize) -> Result<Vec<CheckResult>> {
    let gallery = standard_gallery()?;
    let norms: Vec<f64> = gallery.iter().map(|c| operator_norm(&c.matrix)).collect::<Result<_>>()?;
    let mut checks = Vec::with_capacity(pairs * 2);
    for i in 0..pairs {
        let case = &gallery[i % gallery.len()];
        let dim = case.matrix.rows();
        let target = rng.gen_range(0.05..=1.0) * MAX_RELATIVE_PERTURBATION * norms[i % gallery.len()];
        let both_normal = case.normal && (i / gallery.len()) % 2 == 0;
        let e = if both_normal {
            let d: Vec<Complex64> = (0..dim).map(|_| random::gaussian_scalar(rng)).collect();
            ComplexMatrix::from_diag(&d)
        } else {
            random::gaussian_matrix(rng, dim, dim)
        };
        let e = random::with_norm(&e, target);
        let report = bound_spectral(&case.matrix, &(&case.matrix + &e), case.params)?;
        let name = case.name;
        checks.push(
            CheckResult::bound(format!("spectral_distance.hausdorff[{i}:{name}]"), report.exact_hdist, report.bound)
                .with_params(report.departure_a.params),
        );
        if both_normal {
            checks.push(CheckResult::exact_le(
                format!("spectral_distance.normal_equals_norm[{i}:{name}]"),
                (report.bound - report.norm_e).abs(),
                NORMAL_EQUALITY_TOL * report.norm_e,
            ));
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite::family_rng;

    #[test]
    fn small_run_passes() {
        let checks = spectral_distance_checks(&mut family_rng(5, 6), 10).unwrap();
        assert!(checks.iter().any(|c| c.name.starts_with("spectral_distance.normal_equals_norm")));
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }
}
