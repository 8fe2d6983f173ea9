//! Frozen reference values from an independent 40-digit evaluation, plus
//! cross-checks against `statrs`.

#![allow(clippy::excessive_precision)]

use expclass::bounds::{
    departure_rate, f_eval, h_eval, incomplete_gamma, ln_gamma, log_f_enclosure, resolvent_bound,
    spectral_distance_bound, DepartureEstimate,
};
use expclass::class::{operator_gauge, weyl_bound};
use expclass::gallery::{make_cyclic, make_interleaved_sum, make_weyl_sharpness, BlockSchedule};
use expclass::linalg::{eigenvalues, singular_values};
use expclass::sequence::ClassParams;

fn cp(a: f64, alpha: f64) -> ClassParams {
    ClassParams::new(a, alpha).unwrap()
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}

#[test]
fn log_f_matches_reference() {
    let cases = [
        (1.0, 1.0, 1.0, 0.517_560_107_135_519_235_54),
        (1.0, 1.0, 10.0, 3.075_181_636_418_132_644_8),
        (1.0, 1.0, 1000.0, 22.131_349_854_567_933_406),
        (0.5, 2.0, 5.0, 1.966_989_878_504_756_545_6),
        (2.0, 0.5, 100.0, 10.033_469_118_442_594_291),
    ];
    for (a, alpha, r, want) in cases {
        let e = log_f_enclosure(cp(a, alpha), r, 1e-13).unwrap();
        assert!(e.lo <= want * (1.0 + 1e-14) && want <= e.hi * (1.0 + 1e-14), "{a} {alpha} {r}: {e:?}");
        assert!(e.hi - e.lo <= 1e-12 * want);
    }
    let f = f_eval(cp(1.0, 1.0), 1.0, 1e-12).unwrap();
    assert!(f.contains(0.517_560_107_135_519_235_54f64.exp()));
}

#[test]
fn h_matches_reference() {
    for (a, alpha, r, want) in [
        (1.0, 1.0, 0.1, 0.351_188_546_876_403_939_28),
        (1.0, 1.0, 1e-6, 0.011_727_133_423_848_248_749),
        (1.0, 2.0, 0.5, 0.760_023_652_990_543_050_29),
    ] {
        let h = h_eval(cp(a, alpha), r).unwrap();
        assert!(rel(h, want) < 1e-10, "{a} {alpha} {r}: {h} vs {want}");
    }
}

#[test]
fn incomplete_gamma_matches_reference_and_statrs() {
    for (beta, s, want) in [
        (2.0, 1.0, 0.735_758_882_342_884_643_19),
        (0.5, 3.0, 0.025_356_509_323_463_443_19),
        (3.0, 0.1, 1.999_690_693_859_470_656_6),
        (1.5, 50.0, 1.377_337_934_543_816_183_5e-21),
    ] {
        assert!(rel(incomplete_gamma(beta, s).unwrap(), want) < 1e-12, "{beta} {s}");
    }
    for beta in [0.3, 0.5, 1.0, 1.7, 2.5, 4.0, 11.0] {
        assert!((ln_gamma(beta) - statrs::function::gamma::ln_gamma(beta)).abs() < 1e-12);
        for s in [0.01, 0.5, 1.0, 3.0, 10.0, 30.0] {
            let oracle = statrs::function::gamma::gamma_ur(beta, s) * statrs::function::gamma::gamma(beta);
            let ours = incomplete_gamma(beta, s).unwrap();
            assert!(rel(ours, oracle) < 1e-9, "beta {beta} s {s}: {ours} vs {oracle}");
        }
    }
}

#[test]
fn departure_rates() {
    assert!(rel(departure_rate(cp(1.0, 1.0)).a(), 1.0 / 3.0) < 1e-15);
    assert!(rel(departure_rate(cp(1.0, 2.0)).a(), 0.133_974_596_215_561_353_24) < 1e-14);
    assert_eq!(departure_rate(cp(1.0, 2.0)).alpha(), 2.0);
}

#[test]
fn normal_limits() {
    let dep = DepartureEstimate::normal(cp(1.0 / 3.0, 1.0));
    assert_eq!(resolvent_bound(0.25, &dep).unwrap(), 4.0);
    assert_eq!(spectral_distance_bound(0.3, &dep, &dep).unwrap(), 0.3);
    assert_eq!(spectral_distance_bound(0.0, &dep, &dep).unwrap(), 0.0);
}

#[test]
fn cyclic_example() {
    let c = make_cyclic(&[1.0, 0.25]).unwrap();
    let s = singular_values(&c).unwrap();
    assert!((s[0] - 1.0).abs() < 1e-15 && (s[1] - 0.25).abs() < 1e-15);
    for m in eigenvalues(&c).unwrap().moduli() {
        assert!((m - 0.5).abs() < 1e-15);
    }
}

#[test]
fn weyl_schedule_example() {
    let p = cp(1.0, 1.0);
    let m = make_weyl_sharpness(p, &BlockSchedule::new(vec![1, 3]).unwrap()).unwrap();
    let s = singular_values(&m).unwrap();
    for (k, sk) in s.iter().enumerate() {
        assert!(rel(*sk, (-((k + 1) as f64)).exp()) < 1e-14);
    }
    let g = operator_gauge(&m, p).unwrap();
    for (k, lam) in eigenvalues(&m).unwrap().moduli().iter().enumerate() {
        assert!(*lam <= weyl_bound(&g, k + 1).unwrap() * (1.0 + 1e-12));
    }
}

#[test]
fn interleaved_example() {
    let (summands, sum) = make_interleaved_sum(&[1.0, 1.0], 1.0, 6).unwrap();
    assert_eq!(summands.len(), 2);
    let s = singular_values(&sum).unwrap();
    let want = [1.0, 1.0, 2.0, 2.0, 3.0, 3.0].map(|x: f64| (-x).exp());
    for (x, y) in s.iter().zip(want) {
        assert!(rel(*x, y) < 1e-14);
    }
}
