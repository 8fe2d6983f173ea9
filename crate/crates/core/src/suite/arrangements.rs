use rand::Rng;

use crate::error::Result;
use crate::report::CheckResult;
use crate::sequence::{
    counting_function, decay_arrangement_bound, monotone_arrangement, ArrangementBound, ArrangementResult,
    DecaySequence, Direction, Side,
};

const MAX_K: usize = 5;
const MAX_LEN: usize = 200;
/// Keeps synthetic decreasing sequences above the subnormal range.
const MAX_DECAY_EXPONENT: f64 = 600.0;

fn random_raw<R: Rng + ?Sized>(rng: &mut R) -> Result<DecaySequence> {
    let len = rng.gen_range(1..=MAX_LEN);
    // Half the sequences draw from a coarse lattice so ties are frequent.
    let tied = rng.gen_bool(0.5);
    let values = (0..len)
        .map(|_| if tied { f64::from(rng.gen_range(0..20u8)) * 0.25 } else { rng.gen_range(-10.0..10.0) })
        .collect();
    DecaySequence::new(values)
}

/// Violations of: sorted order, multiset equality with the concatenated
/// inputs, provenance, and the `(sequence, position)` tie rule.
fn merge_violations(seqs: &[DecaySequence], res: &ArrangementResult, direction: Direction) -> usize {
    let mut oracle: Vec<f64> = seqs.iter().flat_map(|s| s.values().iter().copied()).collect();
    oracle.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    if direction == Direction::Decreasing {
        oracle.reverse();
    }
    let mut bad = 0;
    if oracle.len() != res.values.len() {
        return oracle.len().abs_diff(res.values.len()).max(1);
    }
    bad += oracle.iter().zip(&res.values).filter(|(a, b)| a != b).count();
    let mut seen: Vec<Vec<bool>> = seqs.iter().map(|s| vec![false; s.len()]).collect();
    for i in 0..res.values.len() {
        let (k, n) = (res.source_sequence[i], res.source_position[i]);
        match seqs.get(k).and_then(|s| s.values().get(n)) {
            Some(&v) if v == res.values[i] && !seen[k][n] => seen[k][n] = true,
            _ => bad += 1,
        }
        if i > 0
            && res.values[i] == res.values[i - 1]
            && (res.source_sequence[i - 1], res.source_position[i - 1]) > (k, n)
        {
            bad += 1;
        }
    }
    bad
}

/// `μ(r) = Σ_k μ_k(r)`, `a_{μ(r)} ≤ r` and `μ(a_n) ≥ n` for the increasing arrangement.
fn counting_violations(seqs: &[DecaySequence], increasing: &[f64]) -> usize {
    let mut probes: Vec<f64> = increasing.to_vec();
    probes.extend(increasing.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    probes.push(increasing[0] - 1.0);
    probes.push(increasing[increasing.len() - 1] + 1.0);
    let mut bad = 0;
    for &r in &probes {
        let mu = counting_function(increasing, r);
        if mu != seqs.iter().map(|s| counting_function(s, r)).sum::<usize>() {
            bad += 1;
        }
        if mu >= 1 && increasing[mu - 1] > r {
            bad += 1;
        }
    }
    for (i, &v) in increasing.iter().enumerate() {
        if counting_function(increasing, v) < i + 1 {
            bad += 1;
        }
    }
    bad
}

struct Synthetic {
    alpha: f64,
    rates: Vec<f64>,
    shifts: Vec<f64>,
    amplitudes: Vec<f64>,
    lens: Vec<usize>,
}

impl Synthetic {
    fn draw<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Self {
        let alpha = rng.gen_range(0.3..2.5);
        let rates: Vec<f64> = (0..k).map(|_| rng.gen_range(0.2..3.0)).collect();
        let lens = rates
            .iter()
            .map(|&a| {
                let cap = ((MAX_DECAY_EXPONENT / a).powf(1.0 / alpha).floor() as usize).max(1);
                rng.gen_range(1..=MAX_LEN).min(cap)
            })
            .collect();
        Self {
            alpha,
            shifts: (0..k).map(|_| rng.gen_range(-2.0..2.0)).collect(),
            amplitudes: (0..k).map(|_| rng.gen_range(0.5..2.0)).collect(),
            rates,
            lens,
        }
    }

    fn additive_params(&self) -> Vec<(f64, f64)> {
        self.rates.iter().copied().zip(self.shifts.iter().copied()).collect()
    }

    fn decay_params(&self) -> Vec<(f64, f64)> {
        self.rates.iter().copied().zip(self.amplitudes.iter().copied()).collect()
    }

    /// `a_k (n + sign·θ)^α + A_k` with `θ ∈ [0, 1)` per entry.
    fn additive<R: Rng + ?Sized>(&self, rng: &mut R, sign: f64) -> Result<Vec<DecaySequence>> {
        (0..self.rates.len())
            .map(|k| {
                let v = (1..=self.lens[k])
                    .map(|n| {
                        let x = n as f64 + sign * rng.gen_range(0.0..1.0);
                        self.rates[k] * x.powf(self.alpha) + self.shifts[k]
                    })
                    .collect();
                DecaySequence::new(v)
            })
            .collect()
    }

    /// `B_k exp(−a_k (n + sign·θ)^α)`.
    fn decaying<R: Rng + ?Sized>(&self, rng: &mut R, sign: f64) -> Result<Vec<DecaySequence>> {
        (0..self.rates.len())
            .map(|k| {
                let v = (1..=self.lens[k])
                    .map(|n| {
                        let x = n as f64 + sign * rng.gen_range(0.0..1.0);
                        self.amplitudes[k] * (-self.rates[k] * x.powf(self.alpha)).exp()
                    })
                    .collect();
                DecaySequence::new(v)
            })
            .collect()
    }
}

/// Smallest-margin pair for `lhs_n ≤ rhs_n`, reported with zero tolerance.
fn worst(name: String, pairs: impl Iterator<Item = (f64, f64)>) -> CheckResult {
    match pairs.min_by(|x, y| (x.1 - x.0).total_cmp(&(y.1 - y.0))) {
        Some((lhs, rhs)) => CheckResult::exact_le(name, lhs, rhs),
        None => CheckResult::exact_le(name, 0.0, 0.0),
    }
}

/// Merge, counting identities and the lower/upper arrangement bounds on
/// `instances` random multi-sequence inputs.
pub fn arrangement_checks<R: Rng + ?Sized>(rng: &mut R, instances: usize) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::with_capacity(instances * 7);
    for i in 0..instances {
        let k = rng.gen_range(1..=MAX_K);
        let raw: Vec<DecaySequence> = (0..k).map(|_| random_raw(rng)).collect::<Result<_>>()?;
        let inc = monotone_arrangement(&raw, Direction::Increasing)?;
        let dec = monotone_arrangement(&raw, Direction::Decreasing)?;
        let merge_bad =
            merge_violations(&raw, &inc, Direction::Increasing) + merge_violations(&raw, &dec, Direction::Decreasing);
        checks.push(CheckResult::zero_count(format!("arrangements.merge[{i}]"), merge_bad));
        checks.push(CheckResult::zero_count(
            format!("arrangements.counting[{i}]"),
            counting_violations(&raw, &inc.values),
        ));

        let syn = Synthetic::draw(rng, k);
        let alpha = syn.alpha;
        let additive = syn.additive_params();

        // Lower bound: entries dominate a_k n^α + A_k; every index is valid.
        let seqs = syn.additive(rng, 1.0)?;
        let arr = monotone_arrangement(&seqs, Direction::Increasing)?;
        let lower = ArrangementBound::new(&additive, alpha, Side::Lower)?;
        checks.push(worst(
            format!("arrangements.increasing_lower[{i}]"),
            arr.values.iter().enumerate().map(|(j, &v)| (lower.eval(j + 1), v)),
        ));

        // Upper bound: entries are dominated; indices where no truncated
        // entry could fall below the bound value.
        let seqs = syn.additive(rng, -1.0)?;
        let arr = monotone_arrangement(&seqs, Direction::Increasing)?;
        let upper = ArrangementBound::new(&additive, alpha, Side::Upper)?;
        let horizon = (0..k)
            .map(|j| syn.rates[j] * (syn.lens[j] as f64).powf(alpha) + syn.shifts[j])
            .fold(f64::INFINITY, f64::min);
        checks.push(worst(
            format!("arrangements.increasing_upper[{i}]"),
            arr.values
                .iter()
                .enumerate()
                .filter(|(j, _)| upper.eval(j + 1) < horizon)
                .map(|(j, &v)| (v, upper.eval(j + 1))),
        ));

        let decay = syn.decay_params();
        let seqs = syn.decaying(rng, 1.0)?;
        let arr = monotone_arrangement(&seqs, Direction::Decreasing)?;
        let mut pairs = Vec::with_capacity(arr.values.len());
        for (j, &v) in arr.values.iter().enumerate() {
            pairs.push((v, decay_arrangement_bound(&decay, alpha, j + 1, Side::Upper)?));
        }
        checks.push(worst(format!("arrangements.decreasing_upper[{i}]"), pairs.into_iter()));

        let seqs = syn.decaying(rng, -1.0)?;
        let arr = monotone_arrangement(&seqs, Direction::Decreasing)?;
        let floor = (0..k)
            .map(|j| syn.amplitudes[j] * (-syn.rates[j] * (syn.lens[j] as f64).powf(alpha)).exp())
            .fold(0.0, f64::max);
        let mut pairs = Vec::with_capacity(arr.values.len());
        for (j, &v) in arr.values.iter().enumerate() {
            let b = decay_arrangement_bound(&decay, alpha, j + 1, Side::Lower)?;
            if b > floor {
                pairs.push((b, v));
            }
        }
        checks.push(worst(format!("arrangements.decreasing_lower[{i}]"), pairs.into_iter()));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite::family_rng;

    #[test]
    fn small_run_passes() {
        let checks = arrangement_checks(&mut family_rng(42, 1), 40).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }

    #[test]
    fn worst_picks_smallest_margin() {
        let c = worst("w".into(), [(1.0, 5.0), (2.0, 2.5), (0.0, 9.0)].into_iter());
        assert_eq!((c.lhs, c.rhs), (2.0, 2.5));
        let c = worst("w".into(), [(1.0, 5.0), (3.0, 2.0)].into_iter());
        assert!(!c.passed());
        assert!(worst("w".into(), std::iter::empty()).passed());
    }
}
