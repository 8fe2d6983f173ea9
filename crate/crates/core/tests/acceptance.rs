//! Acceptance criteria 1–8. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use expclass::gallery::{BlockSchedule, MAX_WEYL_DIM};
use expclass::report::CheckResult;
use expclass::sequence::ClassParams;
use expclass::suite::{
    arrangement_checks, family_rng, fgh_checks, resolvent_theorem_checks, shift_sharpness, spectral_distance_checks,
    standard_gallery, sum_bound_checks, weyl_checks, weyl_witness,
};

const SEED: u64 = 7;

struct Outcome {
    checks: Vec<CheckResult>,
    extra_failures: Vec<String>,
}

impl Outcome {
    fn from_checks(checks: Vec<CheckResult>) -> Self {
        Self { checks, extra_failures: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.extra_failures.push(what.into());
        }
    }
}

fn criterion(id: u32, title: &str, limit: Option<Duration>, run: impl FnOnce() -> expclass::Result<Outcome>) -> bool {
    let start = Instant::now();
    let result = run();
    let elapsed = start.elapsed();
    let (ok, detail) = match result {
        Err(e) => (false, format!("error: {e}")),
        Ok(mut out) => {
            if let Some(limit) = limit {
                out.require(
                    elapsed <= limit,
                    format!("runtime {:.1}s exceeds {:.0}s", elapsed.as_secs_f64(), limit.as_secs_f64()),
                );
            }
            let failed: Vec<&CheckResult> = out.checks.iter().filter(|c| !c.passed()).collect();
            let mut detail = format!("{}/{} checks", out.checks.len() - failed.len(), out.checks.len());
            for c in failed.iter().take(3) {
                detail.push_str(&format!("; {} lhs={:e} rhs={:e}", c.name, c.lhs, c.rhs));
            }
            for f in &out.extra_failures {
                detail.push_str(&format!("; {f}"));
            }
            (failed.is_empty() && out.extra_failures.is_empty(), detail)
        }
    };
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("criterion {id} [{tag}] {title} ({detail}; {:.2}s)", elapsed.as_secs_f64());
    ok
}

fn count_prefix(checks: &[CheckResult], prefix: &str) -> usize {
    checks.iter().filter(|c| c.name.starts_with(prefix)).count()
}

fn main() -> ExitCode {
    let mut all_ok = true;

    all_ok &= criterion(1, "arrangements: 500 instances", Some(Duration::from_secs(10)), || {
        let checks = arrangement_checks(&mut family_rng(SEED, 1), 500)?;
        let mut out = Outcome::from_checks(checks);
        let n = count_prefix(&out.checks, "arrangements.merge");
        out.require(n == 500, format!("{n} merge checks"));
        Ok(out)
    });

    all_ok &= criterion(2, "sum bound: 200 instances", Some(Duration::from_secs(60)), || {
        let checks = sum_bound_checks(&mut family_rng(SEED, 2), 200)?;
        let mut out = Outcome::from_checks(checks);
        let n = count_prefix(&out.checks, "classes.sum_singular_values");
        out.require(n == 200, format!("{n} sum checks"));
        out.require(out.checks.iter().all(|c| c.tolerance <= 1e-8), "tolerance above 1e-8");
        Ok(out)
    });

    all_ok &= criterion(3, "Weyl bound and sharpness witness", None, || {
        let mut checks = weyl_checks(&mut family_rng(SEED, 3), 100)?;
        let unit = ClassParams::new(1.0, 1.0)?;
        let schedule = BlockSchedule::super_exponential(MAX_WEYL_DIM)?;
        let witness = weyl_witness(unit, &schedule)?;
        let mut out = Outcome::from_checks(Vec::new());
        out.require(witness.len() + 1 == schedule.block_ends().len(), "witness does not cover all blocks");
        out.require(witness.iter().all(|c| c.lhs < c.rhs), "witness not strictly increasing");
        let gallery = count_prefix(&checks, "classes.weyl[");
        out.require(gallery == 4, format!("{gallery} gallery matrices"));
        let tri = count_prefix(&checks, "classes.weyl_triangular");
        out.require(tri == 100, format!("{tri} triangular matrices"));
        checks.extend(witness);
        out.checks = checks;
        Ok(out)
    });

    all_ok &= criterion(4, "f, g, h certified values and asymptotics", Some(Duration::from_secs(30)), || {
        let checks = fgh_checks()?;
        let mut out = Outcome::from_checks(checks);
        let brute = count_prefix(&out.checks, "fgh.enclosure_contains_brute") / 2;
        out.require(brute == 20, format!("{brute} brute-force points"));
        Ok(out)
    });

    all_ok &= criterion(5, "resolvent theorem on 40x40 grids", Some(Duration::from_secs(300)), || {
        let mut out = Outcome::from_checks(resolvent_theorem_checks(40)?);
        let gallery = standard_gallery()?;
        out.require(gallery.iter().all(|c| c.matrix.rows() <= 200), "gallery dimension above 200");
        let normal = gallery.iter().filter(|c| c.normal).count();
        let ratio_checks = count_prefix(&out.checks, "resolvent.normal_ratio_is_one");
        out.require(ratio_checks == normal, "missing normal ratio checks");
        Ok(out)
    });

    all_ok &= criterion(6, "shift sharpness at |z| = 1e6", Some(Duration::from_secs(5)), || {
        Ok(Outcome::from_checks(shift_sharpness()?))
    });

    all_ok &= criterion(7, "spectral distance: 100 pairs", Some(Duration::from_secs(120)), || {
        let checks = spectral_distance_checks(&mut family_rng(SEED, 6), 100)?;
        let mut out = Outcome::from_checks(checks);
        let n = count_prefix(&out.checks, "spectral_distance.hausdorff");
        out.require(n == 100, format!("{n} pairs"));
        out.require(count_prefix(&out.checks, "spectral_distance.normal_equals_norm") > 0, "no normal pairs");
        Ok(out)
    });

    all_ok &= criterion(8, "verify --suite all --seed 7 is byte-identical across runs", None, || {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_expclass"))
                .args(["verify", "--suite", "all", "--seed", "7", "--quiet"])
                .output()
                .expect("binary runs")
        };
        let (first, second) = (run(), run());
        let mut out = Outcome::from_checks(Vec::new());
        out.require(!first.stdout.is_empty(), "empty report");
        out.require(first.stdout == second.stdout, "reports differ");
        out.require(first.status.success() && second.status.success(), "verify exited nonzero");
        Ok(out)
    });

    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
