//! Gamma and upper incomplete gamma functions.

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const MAX_ITER: usize = 10_000;

/// `ln Γ(x)` for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection keeps the approximation in its accurate range.
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

fn check_domain(beta: f64, s: f64) -> Result<()> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::param(format!("incomplete gamma requires beta > 0, got {beta}")));
    }
    if !(s >= 0.0) {
        return Err(Error::param(format!("incomplete gamma requires s >= 0, got {s}")));
    }
    Ok(())
}

/// `ln γ(β, s)` by the power series, valid for `s < β + 1`.
fn ln_lower_series(beta: f64, s: f64) -> Result<f64> {
    let mut term = 1.0 / beta;
    let mut sum = term;
    let mut ap = beta;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        term *= s / ap;
        sum += term;
        if term.abs() < sum.abs() * 1e-17 {
            return Ok(-s + beta * s.ln() + sum.ln());
        }
    }
    Err(Error::Convergence("incomplete gamma series"))
}

/// `ln Γ(β, s)` by the modified Lentz continued fraction, for `s ≥ β + 1`.
fn ln_upper_cf(beta: f64, s: f64) -> Result<f64> {
    let tiny = 1e-300;
    let mut b = s + 1.0 - beta;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - beta);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            return Ok(-s + beta * s.ln() + h.ln());
        }
    }
    Err(Error::Convergence("incomplete gamma continued fraction"))
}

/// `ln Γ(β, s)` where `Γ(β, s) = ∫_s^∞ e^{−t} t^{β−1} dt`.
pub fn ln_upper_gamma(beta: f64, s: f64) -> Result<f64> {
    check_domain(beta, s)?;
    if s == f64::INFINITY {
        return Ok(f64::NEG_INFINITY);
    }
    let ln_full = ln_gamma(beta);
    if s == 0.0 {
        return Ok(ln_full);
    }
    if s < beta + 1.0 {
        let ln_lower = ln_lower_series(beta, s)?;
        // Γ(β, s) = Γ(β)·(1 − γ(β, s)/Γ(β)).
        let ratio = (ln_lower - ln_full).exp();
        Ok(ln_full + (-ratio).ln_1p())
    } else {
        ln_upper_cf(beta, s)
    }
}

/// Upper incomplete gamma `Γ(β, s)` for `β > 0`, `s ≥ 0`.
pub fn incomplete_gamma(beta: f64, s: f64) -> Result<f64> {
    Ok(ln_upper_gamma(beta, s)?.exp())
}
