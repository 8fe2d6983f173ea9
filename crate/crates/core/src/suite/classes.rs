use rand::Rng;

use super::standard_gallery;
use crate::class::{class_precedes, operator_gauge, product_gauge_bound, sum_gauge_bound, weyl_bound, OperatorGauge};
use crate::error::Result;
use crate::gallery::make_shift;
use crate::linalg::{complex_schur, eigenvalues, operator_norm, singular_values, ComplexMatrix, SchurOrdering};
use crate::random;
use crate::report::CheckResult;
use crate::sequence::ClassParams;

/// Relative tolerance for the sum and Weyl inequalities.
const CLASS_TOL: f64 = 1e-8;
/// Largest `a·dim^α` for random decay profiles, keeping the smallest
/// prescribed singular value well above rounding noise.
const SUM_EXPONENT_CAP: f64 = 12.0;
const WEYL_EXPONENT_CAP: f64 = 25.0;

/// `B·exp(−a n^α)·u_n` with `u_n ∈ (0.5, 1]`, sorted nonincreasing.
fn decay_profile<R: Rng + ?Sized>(rng: &mut R, p: ClassParams, amp: f64, dim: usize) -> Vec<f64> {
    let mut s: Vec<f64> = (1..=dim).map(|n| amp * p.weight(n) * rng.gen_range(0.5..=1.0)).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Worst index of `lhs_n ≤ rhs_n` by relative excess.
fn worst_relative(name: String, pairs: impl Iterator<Item = (f64, f64)>, tol: f64) -> CheckResult {
    let excess = |(l, r): &(f64, f64)| {
        if *r > 0.0 {
            l / r
        } else if *l > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    };
    match pairs.max_by(|x, y| excess(x).total_cmp(&excess(y))) {
        Some((l, r)) => CheckResult::le(name, l, r, tol, 0.0),
        None => CheckResult::le(name, 0.0, 0.0, tol, 0.0),
    }
}

/// `s_n(Σ A_k) ≤ K σ_n` and `|Σ A_k|_{a',α} ≤ K max |A_k|_{a_k,α}` on random sums.
pub fn sum_bound_checks<R: Rng + ?Sized>(rng: &mut R, instances: usize) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::with_capacity(2 * instances);
    for i in 0..instances {
        let k = rng.gen_range(1..=4usize);
        let dim = rng.gen_range(2..=100usize);
        let alpha = rng.gen_range(0.5..1.5);
        let scale = SUM_EXPONENT_CAP / (dim as f64).powf(alpha);
        let mut sum = ComplexMatrix::zeros(dim, dim);
        let mut merged = Vec::with_capacity(k * dim);
        let mut gauges = Vec::with_capacity(k);
        for _ in 0..k {
            let p = ClassParams::new(scale * rng.gen_range(0.2..=1.0), alpha)?;
            let amp = rng.gen_range(0.5..2.0);
            let profile = decay_profile(rng, p, amp, dim);
            let a = random::with_singular_values(rng, &profile);
            let s = singular_values(&a)?;
            gauges.push(OperatorGauge::from_singular_values(&s, p));
            merged.extend(s);
            sum = &sum + &a;
        }
        merged.sort_by(|a, b| b.total_cmp(a));
        let s_sum = singular_values(&sum)?;
        let kf = k as f64;
        checks.push(worst_relative(
            format!("classes.sum_singular_values[{i}]"),
            s_sum.iter().zip(&merged).map(|(&s, &sigma)| (s, kf * sigma)),
            CLASS_TOL,
        ));
        let bound = sum_gauge_bound(&gauges)?;
        let actual = OperatorGauge::from_singular_values(&s_sum, bound.params);
        checks.push(
            CheckResult::le(format!("classes.sum_gauge[{i}]"), actual.gauge, bound.gauge, CLASS_TOL, 0.0)
                .with_params(bound.params),
        );
    }
    Ok(checks)
}

/// `|λ_k| ≤ |A|_{a,α} exp(−a k^α/(1+α))` against computed eigenvalues.
fn weyl_check(name: String, moduli: &[f64], g: &OperatorGauge) -> Result<CheckResult> {
    let mut pairs = Vec::with_capacity(moduli.len());
    for (k, &m) in moduli.iter().enumerate() {
        pairs.push((m, weyl_bound(g, k + 1)?));
    }
    Ok(worst_relative(name, pairs.into_iter(), CLASS_TOL).with_params(g.params))
}

/// Weyl bound on the non-normal gallery matrices and on random upper
/// triangular matrices with prescribed singular-value decay.
pub fn weyl_checks<R: Rng + ?Sized>(rng: &mut R, triangular_instances: usize) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    for case in standard_gallery()? {
        if case.name == "convolution" {
            continue;
        }
        let g = operator_gauge(&case.matrix, case.params)?;
        let moduli = eigenvalues(&case.matrix)?.moduli();
        checks.push(weyl_check(format!("classes.weyl[{}]", case.name), &moduli, &g)?);
    }
    for i in 0..triangular_instances {
        let dim = rng.gen_range(2..=60usize);
        let alpha = rng.gen_range(0.5..1.5);
        let p = ClassParams::new(WEYL_EXPONENT_CAP / (dim as f64).powf(alpha) * rng.gen_range(0.2..=1.0), alpha)?;
        let amp = rng.gen_range(0.5..2.0);
        let profile = decay_profile(rng, p, amp, dim);
        let m = random::with_singular_values(rng, &profile);
        let t = complex_schur(&m, SchurOrdering::ByModulusDesc)?.t;
        let mut moduli: Vec<f64> = t.diagonal().iter().map(|z| z.norm()).collect();
        moduli.sort_by(|a, b| b.total_cmp(a));
        let g = operator_gauge(&t, p)?;
        checks.push(weyl_check(format!("classes.weyl_triangular[{i}]"), &moduli, &g)?);
    }
    Ok(checks)
}

/// Product bound, unitary invariance of the gauge, and the class order.
pub fn class_misc_checks<R: Rng + ?Sized>(rng: &mut R) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    let unit = ClassParams::new(1.0, 1.0)?;
    for i in 0..10 {
        let dim = rng.gen_range(4..=20usize);
        let b = make_shift(unit, dim)?;
        let a = random::gaussian_matrix(rng, dim, dim);
        let c = random::gaussian_matrix(rng, dim, dim);
        let gb = operator_gauge(&b, unit)?;
        let bound = product_gauge_bound(operator_norm(&a)?, &gb, operator_norm(&c)?)?;
        let actual = operator_gauge(&(&(&a * &b) * &c), unit)?.gauge;
        let eps = crate::linalg::eps_lin(dim, 1.0);
        checks.push(CheckResult::le(format!("classes.product_gauge[{i}]"), actual, bound, eps, 0.0).with_params(unit));

        let u = random::unitary(rng, dim);
        let v = random::unitary(rng, dim);
        let rotated = operator_gauge(&(&(&u * &b) * &v), unit)?.gauge;
        checks.push(
            CheckResult::le(
                format!("classes.gauge_unitary_invariance[{i}]"),
                (rotated - gb.gauge).abs(),
                eps * gb.gauge,
                0.0,
                0.0,
            )
            .with_params(unit),
        );
    }

    // Strict total order on distinct pairs, transitive on triples.
    let draw = |rng: &mut R| -> Result<ClassParams> {
        // Coarse lattice so equal components occur.
        ClassParams::new(f64::from(rng.gen_range(1..5u8)) * 0.5, f64::from(rng.gen_range(1..4u8)) * 0.5)
    };
    let mut bad = 0;
    for _ in 0..200 {
        let (p, q, r) = (draw(rng)?, draw(rng)?, draw(rng)?);
        let forward = class_precedes(p, q);
        let backward = class_precedes(q, p);
        let trichotomy = usize::from(forward) + usize::from(backward) + usize::from(p == q);
        if trichotomy != 1 {
            bad += 1;
        }
        if class_precedes(p, q) && class_precedes(q, r) && !class_precedes(p, r) {
            bad += 1;
        }
    }
    checks.push(CheckResult::zero_count("classes.order", bad));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite::family_rng;

    fn assert_all_pass(checks: &[CheckResult]) {
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }

    #[test]
    fn small_runs_pass() {
        assert_all_pass(&sum_bound_checks(&mut family_rng(1, 2), 6).unwrap());
        assert_all_pass(&weyl_checks(&mut family_rng(1, 3), 6).unwrap());
        assert_all_pass(&class_misc_checks(&mut family_rng(1, 4)).unwrap());
    }
}
