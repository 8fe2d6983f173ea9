use super::standard_gallery;
use crate::bounds::departure_upper;
use crate::class::operator_gauge;
use crate::error::Result;
use crate::gallery::{make_cyclic, make_interleaved_sum, make_shift, make_weyl_sharpness, BlockSchedule, MAX_WEYL_DIM};
use crate::linalg::{eigenvalues, eps_lin, operator_norm, singular_values};
use crate::report::CheckResult;
use crate::sequence::{combined_exponent, ClassParams};

fn max_abs_diff(x: &[f64], y: &[f64]) -> f64 {
    if x.len() != y.len() {
        return f64::INFINITY;
    }
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// `|λ_{N_n}| e^{b N_n^α}` for consecutive blocks, `b = 1.5a/(1+α)`, must
/// increase strictly. One check per consecutive pair.
pub fn weyl_witness(p: ClassParams, schedule: &BlockSchedule) -> Result<Vec<CheckResult>> {
    let m = make_weyl_sharpness(p, schedule)?;
    let mut moduli = eigenvalues(&m)?.moduli();
    moduli.sort_by(|a, b| b.total_cmp(a));
    let b = 1.5 * p.a() / (1.0 + p.alpha());
    let w: Vec<f64> =
        schedule.block_ends().iter().map(|&end| moduli[end - 1] * (b * (end as f64).powf(p.alpha())).exp()).collect();
    Ok(w.windows(2)
        .enumerate()
        .map(|(n, pair)| {
            // Negative relative tolerance makes the comparison strict.
            CheckResult::le(format!("gallery.weyl_witness[{}]", n + 1), pair[0], pair[1], -1e-9, 0.0).with_params(p)
        })
        .collect())
}

/// Advertised spectra, the Weyl witness, the interleaved lower bound,
/// the convolution gauge, normality of normal cases, and nilpotency.
pub fn gallery_checks() -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    for case in standard_gallery()? {
        let dim = case.matrix.rows();
        let eps = eps_lin(dim, operator_norm(&case.matrix)?);
        let name = case.name;
        let s = singular_values(&case.matrix)?;
        checks.push(CheckResult::exact_le(
            format!("gallery.singular_values[{name}]"),
            max_abs_diff(&s, &case.singular_values),
            eps,
        ));
        let mut moduli = eigenvalues(&case.matrix)?.moduli();
        moduli.sort_by(|a, b| b.total_cmp(a));
        checks.push(CheckResult::exact_le(
            format!("gallery.eigenvalue_moduli[{name}]"),
            max_abs_diff(&moduli, &case.eigenvalue_moduli),
            eps,
        ));
        if case.normal {
            let nu = departure_upper(&case.matrix, case.params)?.schur_value.unwrap_or(f64::INFINITY);
            checks.push(
                CheckResult::exact_le(format!("gallery.normal_departure[{name}]"), nu, eps).with_params(case.params),
            );
        }
    }

    let unit = ClassParams::new(1.0, 1.0)?;
    checks.extend(weyl_witness(unit, &BlockSchedule::super_exponential(MAX_WEYL_DIM)?)?);

    // Interleaved sum: s_n ≥ e^{−a'(n+K)^α} where truncation leaves s_n unchanged.
    let rates = [1.0, 2.0];
    let dim = 40;
    let (_, sum) = make_interleaved_sum(&rates, 1.0, dim)?;
    let a_prime = combined_exponent(&rates, 1.0)?;
    let per = dim / rates.len();
    let floor = rates.iter().map(|&a| (-a * (per + 1) as f64).exp()).fold(0.0, f64::max);
    let s = singular_values(&sum)?;
    let worst = s
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > floor)
        .map(|(j, &v)| ((-a_prime * (j + 1 + rates.len()) as f64).exp(), v))
        .min_by(|x, y| (x.1 / x.0).total_cmp(&(y.1 / y.0)))
        .unwrap_or((0.0, 0.0));
    checks.push(CheckResult::exact_le("gallery.interleave_lower_bound", worst.0, worst.1));

    let a = 1.0;
    let conv = crate::gallery::make_convolution_diagonal(a, 41)?;
    let half = ClassParams::new(a / 2.0, 1.0)?;
    let g = operator_gauge(&conv, half)?.gauge;
    checks.push(CheckResult::le("gallery.convolution_gauge", g, (a / 2.0).exp(), 1e-12, 0.0).with_params(half));

    let shift_dim = 12;
    let power = make_shift(unit, shift_dim)?.pow(shift_dim as u32);
    checks.push(CheckResult::exact_le("gallery.shift_nilpotent", power.max_abs(), 0.0));
    let zero_tail = make_cyclic(&[1.0, 0.5, 0.25, 0.0])?;
    checks.push(CheckResult::exact_le("gallery.cyclic_zero_tail", eigenvalues(&zero_tail)?.spectral_radius(), 0.0));
    Ok(checks)
}
