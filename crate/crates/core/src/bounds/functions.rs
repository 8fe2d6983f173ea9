//! The entire functions `f_{a,α}(r) = Π_n (1 + r e^{−a n^α})`, `g(r) = r f(r)`
//! and `h(r) = 1/g̃(1/r)`, evaluated in log space with rigorous truncation.

use serde::{Deserialize, Serialize};

use super::special::ln_upper_gamma;
use crate::error::{Error, Result};
use crate::sequence::ClassParams;

/// Largest log that still exponentiates to a finite f64.
const LN_MAX: f64 = 709.78;
const INITIAL_TERMS: usize = 16;
const MAX_TERMS: usize = 1 << 26;
/// Accuracy used for internal evaluations (inversion, bounds).
pub(crate) const INTERNAL_TOL: f64 = 1e-15;
const MAX_BISECTIONS: usize = 200;
const LOWER_PROBE_TERMS: usize = 1 << 16;

/// Midpoint and half-width of an enclosure of the true value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedValue {
    pub value: f64,
    pub error_radius: f64,
}

impl CertifiedValue {
    pub fn exact(value: f64) -> Self {
        Self { value, error_radius: 0.0 }
    }

    fn from_bounds(lo: f64, hi: f64) -> Self {
        Self { value: 0.5 * (lo + hi), error_radius: 0.5 * (hi - lo) }
    }

    pub fn lower(&self) -> f64 {
        self.value - self.error_radius
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error_radius
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower() <= x && x <= self.upper()
    }
}

/// Enclosure `[lo, hi]` of `log f(r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogEnclosure {
    pub lo: f64,
    pub hi: f64,
    pub terms: usize,
}

/// `ln(1 + e^t)` without overflow.
fn ln1p_exp(t: f64) -> f64 {
    if t > 36.0 {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    }
}

/// `ln Σ_{n>N} e^{−a n^α}` upper bound: `ln[(1/α) a^{−1/α} Γ(1/α, a N^α)]`.
fn ln_tail_bound(p: ClassParams, n: usize) -> Result<f64> {
    let inv = 1.0 / p.alpha();
    Ok(-p.alpha().ln() - inv * p.a().ln() + ln_upper_gamma(inv, p.exponent(n))?)
}

/// Compensated (Neumaier) running sum.
#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

fn check_tol(rel_tol: f64) -> Result<()> {
    if !(rel_tol > 0.0 && rel_tol.is_finite()) {
        return Err(Error::param(format!("rel_tol must be positive, got {rel_tol}")));
    }
    Ok(())
}

/// Certified enclosure of `log f_{a,α}(e^{ln_r})`. The tail factor satisfies
/// `log(tail) ≤ r·Σ_{n>N} e^{−a n^α} < rel_tol/2`.
pub fn log_f_enclosure_ln(p: ClassParams, ln_r: f64, rel_tol: f64) -> Result<LogEnclosure> {
    check_tol(rel_tol)?;
    if ln_r.is_nan() || ln_r == f64::INFINITY {
        return Err(Error::param("f requires a finite argument"));
    }
    if ln_r == f64::NEG_INFINITY {
        return Ok(LogEnclosure { lo: 0.0, hi: 0.0, terms: 0 });
    }
    let target = (0.5 * rel_tol).ln();
    let mut acc = Neumaier::default();
    // Rounding of a n^α and of each log term, propagated through d/dt ln(1+e^t) ≤ 1.
    let mut round = 0.0;
    let mut done = 0usize;
    let mut n_terms = INITIAL_TERMS;
    loop {
        for n in done + 1..=n_terms {
            let e = p.exponent(n);
            let t = ln_r - e;
            let term = ln1p_exp(t);
            let slope = if t > 0.0 { 1.0 } else { t.exp() };
            round += 4.0 * f64::EPSILON * (slope * (ln_r.abs() + e) + term);
            acc.add(term);
        }
        done = n_terms;
        let ln_tail = ln_r + ln_tail_bound(p, n_terms)?;
        if ln_tail < target {
            let s = acc.total();
            let margin = round + 4.0 * f64::EPSILON * s;
            return Ok(LogEnclosure { lo: (s - margin).max(0.0), hi: s + ln_tail.exp() + margin, terms: n_terms });
        }
        if n_terms >= MAX_TERMS {
            return Err(Error::Convergence("f tail did not fall below tolerance"));
        }
        n_terms *= 2;
    }
}

/// As [`log_f_enclosure_ln`] for `r ≥ 0` given directly.
pub fn log_f_enclosure(p: ClassParams, r: f64, rel_tol: f64) -> Result<LogEnclosure> {
    if !(r >= 0.0) {
        return Err(Error::param(format!("f requires r >= 0, got {r}")));
    }
    log_f_enclosure_ln(p, r.ln(), rel_tol)
}

/// Certified `f_{a,α}(r)`; errors with overflow when `f(r)` exceeds f64 range.
pub fn f_eval(p: ClassParams, r: f64, rel_tol: f64) -> Result<CertifiedValue> {
    let e = log_f_enclosure(p, r, rel_tol)?;
    if e.terms == 0 {
        return Ok(CertifiedValue::exact(1.0));
    }
    if e.hi > LN_MAX {
        return Err(Error::Overflow("f exceeds the f64 range"));
    }
    Ok(CertifiedValue::from_bounds(e.lo.exp(), e.hi.exp()))
}

/// `a^{−1/α}((α/(1+α))(log₊r)^{1+1/α} + r Γ(1+1/α, log₊r))`, an upper bound for `log f(r)`.
pub fn log_f_upper_closed_form(p: ClassParams, r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    log_f_upper_closed_form_ln(p, r.ln())
}

/// [`log_f_upper_closed_form`] with the argument given as `log r`.
pub fn log_f_upper_closed_form_ln(p: ClassParams, ln_r: f64) -> f64 {
    if ln_r == f64::NEG_INFINITY {
        return 0.0;
    }
    let (a, alpha) = (p.a(), p.alpha());
    let lp = ln_r.max(0.0);
    let inv = 1.0 / alpha;
    let gamma = ln_upper_gamma(1.0 + inv, lp).expect("valid incomplete gamma domain");
    a.powf(-inv) * (alpha / (1.0 + alpha) * lp.powf(1.0 + inv) + (ln_r + gamma).exp())
}

/// Closed-form upper bound for `f(r)`; may be `+∞`.
pub fn f_upper_closed_form(p: ClassParams, r: f64) -> f64 {
    log_f_upper_closed_form(p, r).exp()
}

/// `a^{−1/α}(α/(1+α))(log r)^{1+1/α}`, the leading asymptotic of `log f(r)`.
pub fn log_f_asymptotic(p: ClassParams, r: f64) -> f64 {
    let alpha = p.alpha();
    p.a().powf(-1.0 / alpha) * alpha / (1.0 + alpha) * r.ln().powf(1.0 + 1.0 / alpha)
}

/// Certified `g(r) = r f(r)`.
pub fn g_eval(p: ClassParams, r: f64, rel_tol: f64) -> Result<CertifiedValue> {
    let f = f_eval(p, r, rel_tol)?;
    Ok(CertifiedValue { value: r * f.value, error_radius: r * f.error_radius })
}

/// `log g(e^t)` to internal accuracy.
fn ln_g(p: ClassParams, t: f64) -> Result<f64> {
    let e = log_f_enclosure_ln(p, t, INTERNAL_TOL)?;
    Ok(t + 0.5 * (e.lo + e.hi))
}

/// True when a partial sum already certifies `log g(e^t) > bound`. Partial
/// sums of `log f` are lower bounds, so this avoids the full enclosure far
/// from the root, where it may need too many terms.
fn ln_g_exceeds(p: ClassParams, t: f64, bound: f64) -> bool {
    let mut sum = 0.0;
    for n in 1..=LOWER_PROBE_TERMS {
        let term = ln1p_exp(t - p.exponent(n));
        sum += term;
        if (t + sum) * (1.0 - 1e-12) - 1e-300 > bound {
            return true;
        }
        if term <= f64::EPSILON * sum {
            break;
        }
    }
    false
}

/// Solves `log g(x) = ln_y` for `log x`, to `|log g(x) − ln_y| ≤ rel_tol/2`.
/// Bisects on `log x` inside `[ln_y − F, ln_y]` with `F` the closed-form bound on `log f(y)`,
/// valid since `x ≤ g(x) ≤ x f(y)` for `x ≤ y`.
pub fn ln_g_invert(p: ClassParams, ln_y: f64, rel_tol: f64) -> Result<f64> {
    check_tol(rel_tol)?;
    if ln_y.is_nan() || ln_y == f64::INFINITY {
        return Err(Error::InversionOutOfRange);
    }
    if ln_y == f64::NEG_INFINITY {
        return Ok(f64::NEG_INFINITY);
    }
    let mut hi = ln_y;
    let mut lo = ln_y - log_f_upper_closed_form_ln(p, ln_y) * (1.0 + 1e-12);
    let goal = 0.5 * rel_tol;
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if ln_g_exceeds(p, mid, ln_y + goal) {
            hi = mid;
            continue;
        }
        let phi = ln_g(p, mid)? - ln_y;
        if phi.abs() <= goal {
            return Ok(mid);
        }
        if phi < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi.abs().max(lo.abs()) {
            return Ok(mid);
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `g̃(y)`, the inverse of `g` on `[0, ∞)`.
pub fn g_invert(p: ClassParams, y: f64, rel_tol: f64) -> Result<f64> {
    if y.is_nan() || y < 0.0 {
        return Err(Error::param(format!("g_invert requires y >= 0, got {y}")));
    }
    if y.is_infinite() {
        return Err(Error::InversionOutOfRange);
    }
    Ok(ln_g_invert(p, y.ln(), rel_tol)?.exp())
}

/// `log h(r) = −log g̃(1/r)`.
pub fn ln_h(p: ClassParams, r: f64, rel_tol: f64) -> Result<f64> {
    if r.is_nan() || r < 0.0 {
        return Err(Error::param(format!("h requires r >= 0, got {r}")));
    }
    if r == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(-ln_g_invert(p, -r.ln(), rel_tol)?)
}

/// `h(r) = 1/g̃(1/r)` with `h(0) = 0`.
pub fn h_eval(p: ClassParams, r: f64) -> Result<f64> {
    Ok(ln_h(p, r, INTERNAL_TOL * 1e3)?.exp())
}

/// `−b^{1/(1+α)}((1+α)/α)^{α/(1+α)}|log r|^{α/(1+α)}`, the small-`r` asymptotic of `log h(r)`.
pub fn log_h_asymptotic(p: ClassParams, r: f64) -> f64 {
    let alpha = p.alpha();
    let e = alpha / (1.0 + alpha);
    -p.a().powf(1.0 / (1.0 + alpha)) * ((1.0 + alpha) / alpha).powf(e) * r.ln().abs().powf(e)
}
