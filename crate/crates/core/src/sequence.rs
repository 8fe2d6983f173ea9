//! Real decaying sequences, their `(a, α)`-gauges, monotone arrangements of
//! several sequences, counting functions and the arrangement bounds.
//!
//! Every sequence here is a finite prefix of an infinite one. Gauges
//! computed on a prefix are lower bounds for the supremum over the full
//! sequence.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The pair `(a, α)` indexing an exponential class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct ClassParams {
    a: f64,
    alpha: f64,
}

#[derive(Deserialize)]
struct RawParams {
    a: f64,
    alpha: f64,
}

impl TryFrom<RawParams> for ClassParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        ClassParams::new(raw.a, raw.alpha)
    }
}

impl ClassParams {
    pub fn new(a: f64, alpha: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::param(format!("decay rate a must be positive and finite, got {a}")));
        }
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::param(format!("exponent alpha must be positive and finite, got {alpha}")));
        }
        Ok(Self { a, alpha })
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `a·n^α`.
    #[inline]
    pub fn exponent(&self, n: usize) -> f64 {
        self.a * (n as f64).powf(self.alpha)
    }

    /// `exp(−a·n^α)`.
    #[inline]
    pub fn weight(&self, n: usize) -> f64 {
        (-self.exponent(n)).exp()
    }

    /// Same class exponent, different rate.
    pub fn with_rate(&self, a: f64) -> Result<Self> {
        Self::new(a, self.alpha)
    }
}

/// Finite prefix `x_1, …, x_L` of a real sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct DecaySequence {
    values: Vec<f64>,
}

impl TryFrom<Vec<f64>> for DecaySequence {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        DecaySequence::new(values)
    }
}

impl From<DecaySequence> for Vec<f64> {
    fn from(s: DecaySequence) -> Self {
        s.values
    }
}

impl AsRef<[f64]> for DecaySequence {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

impl DecaySequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::param(format!("sequence entry {i} is not finite")));
        }
        Ok(Self { values })
    }

    /// `x_n = f(n)` for `n = 1..=len`.
    pub fn from_fn(len: usize, f: impl Fn(usize) -> f64) -> Result<Self> {
        Self::new((1..=len).map(f).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn declared_length(&self) -> usize {
        self.values.len()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `max_n |x_n|·exp(a n^α)` over the given prefix (1-based `n`). Zero
/// entries contribute 0; the result may be `+∞` when the weight overflows.
pub fn gauge_of_values(values: &[f64], p: ClassParams) -> f64 {
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0.0)
        .map(|(i, v)| (v.abs().ln() + p.exponent(i + 1)).exp())
        .fold(0.0, f64::max)
}

/// `(a, α)`-gauge of a sequence prefix, a lower bound for the true supremum.
pub fn gauge_of_sequence(x: &DecaySequence, p: ClassParams) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(gauge_of_values(&x.values, p))
}

/// Least-squares fit of `log x_n ≈ log C − a·n^α` at fixed `α`.
struct LinearFit {
    intercept: f64,
    slope: f64,
    ssr: f64,
}

fn fit_at(logs: &[f64], alpha: f64) -> LinearFit {
    let t: Vec<f64> = (1..=logs.len()).map(|n| (n as f64).powf(alpha)).collect();
    let m = logs.len() as f64;
    let t_mean = t.iter().sum::<f64>() / m;
    let y_mean = logs.iter().sum::<f64>() / m;
    let stt: f64 = t.iter().map(|ti| (ti - t_mean).powi(2)).sum();
    let sty: f64 = t.iter().zip(logs).map(|(ti, yi)| (ti - t_mean) * (yi - y_mean)).sum();
    let slope = sty / stt;
    let intercept = y_mean - slope * t_mean;
    let ssr = t.iter().zip(logs).map(|(ti, yi)| (yi - intercept - slope * ti).powi(2)).sum();
    LinearFit { intercept, slope, ssr }
}

/// `d ssr / dα` at the optimal linear coefficients.
fn ssr_derivative(logs: &[f64], alpha: f64) -> f64 {
    let fit = fit_at(logs, alpha);
    logs.iter()
        .enumerate()
        .map(|(i, y)| {
            let n = (i + 1) as f64;
            let tn = n.powf(alpha);
            let r = y - fit.intercept - fit.slope * tn;
            -2.0 * r * fit.slope * tn * n.ln()
        })
        .sum()
}

/// Coarse α grid `{0.1, 0.2, …, 3.0}` used by [`fit_class_params`].
pub const FIT_ALPHA_GRID: std::ops::RangeInclusive<u32> = 1..=30;

/// Fits `(a, α)` to strictly positive decay data by least squares of
/// `log x_n` against `−a n^α`, then returns the gauge at the fitted class.
///
/// The coarse grid is followed by golden-section refinement and a final
/// bisection on the derivative of the residual; the procedure is
/// deterministic.
pub fn fit_class_params(x: &DecaySequence) -> Result<(ClassParams, f64)> {
    if x.len() < 4 {
        return Err(Error::TooFewPoints { needed: 4, got: x.len() });
    }
    if x.values.iter().any(|&v| v <= 0.0) {
        return Err(Error::NonPositiveData);
    }
    let logs: Vec<f64> = x.values.iter().map(|v| v.ln()).collect();

    let (mut best_alpha, mut best_ssr) = (0.1, f64::INFINITY);
    for i in FIT_ALPHA_GRID {
        let alpha = f64::from(i) * 0.1;
        let ssr = fit_at(&logs, alpha).ssr;
        if ssr < best_ssr {
            best_ssr = ssr;
            best_alpha = alpha;
        }
    }

    // Golden section on the neighbouring grid cells.
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut lo = (best_alpha - 0.1).max(1e-3);
    let mut hi = best_alpha + 0.1;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = fit_at(&logs, x1).ssr;
    let mut f2 = fit_at(&logs, x2).ssr;
    for _ in 0..200 {
        if hi - lo < 1e-10 {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = fit_at(&logs, x1).ssr;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = fit_at(&logs, x2).ssr;
        }
    }
    let mut alpha = 0.5 * (lo + hi);

    // Polish: the residual is flat near its minimum, its derivative is not.
    let (mut blo, mut bhi) = ((alpha - 1e-4).max(1e-3), alpha + 1e-4);
    if ssr_derivative(&logs, blo) < 0.0 && ssr_derivative(&logs, bhi) > 0.0 {
        for _ in 0..100 {
            let mid = 0.5 * (blo + bhi);
            if mid <= blo || mid >= bhi {
                break;
            }
            if ssr_derivative(&logs, mid) < 0.0 {
                blo = mid;
            } else {
                bhi = mid;
            }
        }
        alpha = 0.5 * (blo + bhi);
    }

    let fit = fit_at(&logs, alpha);
    let a = -fit.slope;
    if !(a > 0.0) {
        return Err(Error::param("fitted decay rate is not positive; data does not decay"));
    }
    let params = ClassParams::new(a, alpha)?;
    let gauge = gauge_of_sequence(x, params)?;
    Ok((params, gauge))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Monotone arrangement of one or more sequences. `source_sequence[i]` and
/// `source_position[i]` are 0-based indices recovering each entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrangementResult {
    pub values: Vec<f64>,
    pub source_sequence: Vec<usize>,
    pub source_position: Vec<usize>,
}

/// Merges all entries into the requested monotone order. Ties are broken by
/// `(sequence index, position)` ascending.
pub fn monotone_arrangement(seqs: &[DecaySequence], direction: Direction) -> Result<ArrangementResult> {
    if seqs.is_empty() || seqs.iter().any(DecaySequence::is_empty) {
        return Err(Error::EmptyInput);
    }
    let mut entries: Vec<(f64, usize, usize)> =
        seqs.iter().enumerate().flat_map(|(k, s)| s.values.iter().enumerate().map(move |(n, &v)| (v, k, n))).collect();
    entries.sort_by(|x, y| {
        let by_value = match direction {
            Direction::Increasing => x.0.total_cmp(&y.0),
            Direction::Decreasing => y.0.total_cmp(&x.0),
        };
        by_value.then((x.1, x.2).cmp(&(y.1, y.2)))
    });
    Ok(ArrangementResult {
        values: entries.iter().map(|e| e.0).collect(),
        source_sequence: entries.iter().map(|e| e.1).collect(),
        source_position: entries.iter().map(|e| e.2).collect(),
    })
}

/// `μ(r) = #{n : x_n ≤ r}` within the prefix.
pub fn counting_function(x: impl AsRef<[f64]>, r: f64) -> usize {
    x.as_ref().iter().filter(|&&v| v <= r).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    Upper,
}

/// `c = (Σ_k a_k^{−1/α})^{−α}`. A single rate is returned unchanged.
pub fn combined_exponent(rates: &[f64], alpha: f64) -> Result<f64> {
    if rates.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::param(format!("alpha must be positive, got {alpha}")));
    }
    if let Some(a) = rates.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
        return Err(Error::param(format!("rates must be positive, got {a}")));
    }
    if rates.len() == 1 {
        return Ok(rates[0]);
    }
    let s: f64 = rates.iter().map(|a| a.powf(-1.0 / alpha)).sum();
    Ok(s.powf(-alpha))
}

/// Bound on the increasing arrangement of `K` sequences with
/// `a_n^{(k)} ≷ a_k n^α + A_k`: `c·(n + offset)^α + additive`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArrangementBound {
    pub c: f64,
    pub alpha: f64,
    /// 0 for the lower bound, `K` for the upper bound.
    pub offset_shift: usize,
    /// `min A_k` (lower) or `max A_k` (upper).
    pub additive_constant: f64,
}

impl ArrangementBound {
    pub fn new(params: &[(f64, f64)], alpha: f64, side: Side) -> Result<Self> {
        let rates: Vec<f64> = params.iter().map(|p| p.0).collect();
        let c = combined_exponent(&rates, alpha)?;
        let shifts = params.iter().map(|p| p.1);
        let (offset_shift, additive_constant) = match side {
            Side::Lower => (0, shifts.fold(f64::INFINITY, f64::min)),
            Side::Upper => (params.len(), shifts.fold(f64::NEG_INFINITY, f64::max)),
        };
        Ok(Self { c, alpha, offset_shift, additive_constant })
    }

    /// Bound value at 1-based index `n`.
    pub fn eval(&self, n: usize) -> f64 {
        self.c * ((n + self.offset_shift) as f64).powf(self.alpha) + self.additive_constant
    }
}

/// `c·n^α + min A_k` (lower) or `c·(n+K)^α + max A_k` (upper) at index `n ≥ 1`.
pub fn arrangement_bound(params: &[(f64, f64)], alpha: f64, n: usize, side: Side) -> Result<f64> {
    if n == 0 {
        return Err(Error::param("index n must be at least 1"));
    }
    Ok(ArrangementBound::new(params, alpha, side)?.eval(n))
}

/// Bound on the decreasing arrangement of sequences with
/// `b_n^{(k)} ≷ B_k exp(−a_k n^α)`: `max B_k·exp(−c n^α)` (upper) or
/// `min B_k·exp(−c (n+K)^α)` (lower).
pub fn decay_arrangement_bound(params: &[(f64, f64)], alpha: f64, n: usize, side: Side) -> Result<f64> {
    if n == 0 {
        return Err(Error::param("index n must be at least 1"));
    }
    if let Some(b) = params.iter().map(|p| p.1).find(|b| !(b.is_finite() && *b > 0.0)) {
        return Err(Error::param(format!("amplitudes must be positive, got {b}")));
    }
    let rates: Vec<f64> = params.iter().map(|p| p.0).collect();
    let c = combined_exponent(&rates, alpha)?;
    let amps = params.iter().map(|p| p.1);
    Ok(match side {
        Side::Upper => amps.fold(0.0, f64::max) * (-c * (n as f64).powf(alpha)).exp(),
        Side::Lower => amps.fold(f64::INFINITY, f64::min) * (-c * ((n + params.len()) as f64).powf(alpha)).exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[f64]) -> DecaySequence {
        DecaySequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ClassParams::new(0.0, 1.0).is_err());
        assert!(ClassParams::new(1.0, -1.0).is_err());
        assert!(ClassParams::new(f64::NAN, 1.0).is_err());
        let p: std::result::Result<ClassParams, _> = serde_json::from_str(r#"{"a":-1,"alpha":1}"#);
        assert!(p.is_err());
    }

    #[test]
    fn gauge_examples() {
        let p = ClassParams::new(0.7, 1.3).unwrap();
        let x = DecaySequence::from_fn(20, |n| p.weight(n)).unwrap();
        assert!((gauge_of_sequence(&x, p).unwrap() - 1.0).abs() < 1e-12);

        let p11 = ClassParams::new(1.0, 1.0).unwrap();
        let x = DecaySequence::from_fn(10, |n| 2.0 * (-(n as f64)).exp()).unwrap();
        assert!((gauge_of_sequence(&x, p11).unwrap() - 2.0).abs() < 1e-14);

        // max(0.5 e, 0.1 e^2): the first term dominates at (1, 1).
        let g = gauge_of_sequence(&seq(&[0.5, 0.1]), p11).unwrap();
        assert!((g - 0.5 * 1f64.exp()).abs() < 1e-15);
        assert!((g - 1.359_140_914_229_522_6).abs() < 1e-12);
        // With α = 2 the second index weighs e^4 and dominates.
        let p12 = ClassParams::new(1.0, 2.0).unwrap();
        let g = gauge_of_sequence(&seq(&[0.5, 0.1]), p12).unwrap();
        assert!((g - 5.459_815_003_314_424).abs() < 1e-12);

        assert!(matches!(gauge_of_sequence(&seq(&[]), p11), Err(Error::EmptyInput)));
    }

    #[test]
    fn fit_recovers_exact_classes() {
        let x = DecaySequence::from_fn(12, |n| (-2.0 * n as f64).exp()).unwrap();
        let (p, g) = fit_class_params(&x).unwrap();
        assert!((p.a() - 2.0).abs() < 1e-8 && (p.alpha() - 1.0).abs() < 1e-8, "{p:?}");
        assert!((g - 1.0).abs() < 1e-6);

        let x = DecaySequence::from_fn(30, |n| (-(n as f64).sqrt()).exp()).unwrap();
        let (p, _) = fit_class_params(&x).unwrap();
        assert!((p.alpha() - 0.5).abs() < 1e-6 && (p.a() - 1.0).abs() < 1e-6, "{p:?}");

        let x = DecaySequence::from_fn(10, |n| 3.0 * (-0.7 * (n * n) as f64).exp()).unwrap();
        let (p, g) = fit_class_params(&x).unwrap();
        assert!((p.a() - 0.7).abs() < 1e-6 && (p.alpha() - 2.0).abs() < 1e-6, "{p:?}");
        assert!((g - 3.0).abs() < 1e-6, "gauge {g}");
    }

    #[test]
    fn fit_errors() {
        assert!(matches!(fit_class_params(&seq(&[1.0, 0.5, 0.25])), Err(Error::TooFewPoints { .. })));
        assert!(matches!(fit_class_params(&seq(&[1.0, 0.5, 0.0, 0.1])), Err(Error::NonPositiveData)));
        assert!(matches!(fit_class_params(&seq(&[1.0, -0.5, 0.2, 0.1])), Err(Error::NonPositiveData)));
    }

    #[test]
    fn arrangement_examples() {
        let odd = DecaySequence::from_fn(5, |n| (2 * n - 1) as f64).unwrap();
        let even = DecaySequence::from_fn(5, |n| (2 * n) as f64).unwrap();
        let r = monotone_arrangement(&[odd, even], Direction::Increasing).unwrap();
        assert_eq!(r.values, (1..=10).map(f64::from).collect::<Vec<_>>());
        assert_eq!(r.source_sequence[..4], [0, 1, 0, 1]);
        assert_eq!(r.source_position[..4], [0, 0, 1, 1]);

        let halves = DecaySequence::from_fn(5, |n| 0.5f64.powi(n as i32)).unwrap();
        let thirds = DecaySequence::from_fn(5, |n| (1.0 / 3.0f64).powi(n as i32)).unwrap();
        let r = monotone_arrangement(&[halves, thirds], Direction::Decreasing).unwrap();
        let expected = [1.0 / 2.0, 1.0 / 3.0, 1.0 / 4.0, 1.0 / 8.0, 1.0 / 9.0, 1.0 / 16.0, 1.0 / 27.0];
        for (v, e) in r.values.iter().zip(expected) {
            assert!((v - e).abs() < 1e-16);
        }

        let dec = seq(&[5.0, 4.0, 4.0, 1.0]);
        let r = monotone_arrangement(std::slice::from_ref(&dec), Direction::Decreasing).unwrap();
        assert_eq!(r.values, dec.values());
        assert_eq!(r.source_position, vec![0, 1, 2, 3]);

        assert!(monotone_arrangement(&[], Direction::Increasing).is_err());
    }

    #[test]
    fn ties_break_by_origin() {
        let r = monotone_arrangement(&[seq(&[1.0, 2.0]), seq(&[1.0])], Direction::Decreasing).unwrap();
        assert_eq!(r.values, vec![2.0, 1.0, 1.0]);
        assert_eq!(r.source_sequence, vec![0, 0, 1]);
    }

    #[test]
    fn counting_examples() {
        assert_eq!(counting_function(seq(&[1.0, 2.0, 3.0]), 2.5), 2);
        assert_eq!(counting_function(seq(&[1.0, 2.0, 3.0]), 0.0), 0);
        assert_eq!(counting_function(seq(&[1.0, 2.0, 3.0]), 3.0), 3);
    }

    #[test]
    fn arrangement_bound_examples() {
        let two = [(1.0, 0.0), (1.0, 0.0)];
        assert_eq!(arrangement_bound(&two, 1.0, 4, Side::Lower).unwrap(), 2.0);
        assert_eq!(arrangement_bound(&two, 1.0, 4, Side::Upper).unwrap(), 3.0);
        assert_eq!(arrangement_bound(&[(1.0, 0.0)], 1.0, 7, Side::Lower).unwrap(), 7.0);
        assert!(arrangement_bound(&[(0.0, 0.0)], 1.0, 1, Side::Lower).is_err());
        assert!(arrangement_bound(&two, 0.0, 1, Side::Lower).is_err());
        assert!(arrangement_bound(&two, 1.0, 0, Side::Lower).is_err());
    }

    #[test]
    fn decay_bound_examples() {
        let two = [(1.0, 1.0), (1.0, 1.0)];
        let v = decay_arrangement_bound(&two, 1.0, 2, Side::Upper).unwrap();
        assert!((v - (-1f64).exp()).abs() < 1e-16);

        let single = decay_arrangement_bound(&[(1.3, 2.0)], 0.7, 5, Side::Upper).unwrap();
        assert!((single - 2.0 * (-1.3 * 5f64.powf(0.7)).exp()).abs() < 1e-15);

        assert!((combined_exponent(&[1.0, 4.0], 1.0).unwrap() - 0.8).abs() < 1e-15);
        assert!(decay_arrangement_bound(&[(1.0, 0.0)], 1.0, 1, Side::Upper).is_err());
    }

    #[test]
    fn sequence_json_is_plain_array() {
        let s: DecaySequence = serde_json::from_str("[1.0, 0.5, 0.25]").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1.0,0.5,0.25]");
    }
}
