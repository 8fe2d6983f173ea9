//! Self-validating property suites. Each check compares a computed quantity
//! with an independent oracle; a suite run is a deterministic function of
//! `(name, seed, budget)`.

mod arrangements;
mod classes;
mod gallery_checks;
mod resolvent;
mod spectral;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use arrangements::arrangement_checks;
pub use classes::{class_misc_checks, sum_bound_checks, weyl_checks};
pub use gallery_checks::{gallery_checks, weyl_witness};
pub use resolvent::{
    departure_characterization_checks, fgh_checks, quasinilpotent_checks, resolvent_theorem_checks, shift_sharpness,
};
pub use spectral::spectral_distance_checks;

use crate::error::{Error, Result};
use crate::gallery::{
    cyclic_eigenvalue_modulus, make_convolution_diagonal, make_cyclic, make_interleaved_sum, make_shift,
    make_weyl_sharpness, shift_singular_values, weyl_eigenvalue_moduli, BlockSchedule, MAX_WEYL_DIM,
};
use crate::linalg::ComplexMatrix;
use crate::report::{CheckResult, VerificationReport};
use crate::sequence::{combined_exponent, ClassParams};

pub const SUITE_NAMES: [&str; 6] = ["arrangements", "classes", "resolvent", "spectral_distance", "gallery", "all"];
pub const DEFAULT_BUDGET: usize = 100;

/// Instance counts for the randomized families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteSizes {
    pub arrangement_instances: usize,
    pub sum_instances: usize,
    pub triangular_instances: usize,
    pub grid_side: usize,
    pub spectral_pairs: usize,
    pub characterization_instances: usize,
}

impl SuiteSizes {
    /// Every family scales with the budget; the grid side reaches 40 at budget 100.
    pub fn from_budget(budget: usize) -> Self {
        let b = budget.max(1);
        Self {
            arrangement_instances: b,
            sum_instances: b,
            triangular_instances: b,
            grid_side: (2 * b / 5).clamp(4, 40),
            spectral_pairs: b,
            characterization_instances: (b / 2).max(4),
        }
    }
}

/// Independent generator per family, so families do not perturb each other.
pub fn family_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

const STREAM_ARRANGEMENTS: u64 = 1;
const STREAM_SUMS: u64 = 2;
const STREAM_WEYL: u64 = 3;
const STREAM_CLASSES: u64 = 4;
const STREAM_CHARACTERIZATION: u64 = 5;
const STREAM_SPECTRAL: u64 = 6;

/// A gallery matrix with its class parameters and analytic spectral data.
#[derive(Debug, Clone)]
pub struct GalleryCase {
    pub name: &'static str,
    pub matrix: ComplexMatrix,
    pub params: ClassParams,
    pub normal: bool,
    /// Nonincreasing.
    pub singular_values: Vec<f64>,
    /// Nonincreasing.
    pub eigenvalue_moduli: Vec<f64>,
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Shift, cyclic, Weyl-sharpness, interleaved sum and convolution diagonal.
pub fn standard_gallery() -> Result<Vec<GalleryCase>> {
    let unit = ClassParams::new(1.0, 1.0)?;

    let shift_dim = 60;
    let shift = GalleryCase {
        name: "shift",
        matrix: make_shift(unit, shift_dim)?,
        params: unit,
        normal: false,
        singular_values: shift_singular_values(unit, shift_dim),
        eigenvalue_moduli: vec![0.0; shift_dim],
    };

    let half = ClassParams::new(0.5, 1.0)?;
    let taus: Vec<f64> = (1..=40).map(|n| half.weight(n)).collect();
    let cyclic = GalleryCase {
        name: "cyclic",
        matrix: make_cyclic(&taus)?,
        params: half,
        normal: false,
        eigenvalue_moduli: vec![cyclic_eigenvalue_modulus(&taus); taus.len()],
        singular_values: taus,
    };

    let schedule = BlockSchedule::super_exponential(MAX_WEYL_DIM)?;
    let weyl_dim = schedule.dim();
    let weyl = GalleryCase {
        name: "weyl",
        matrix: make_weyl_sharpness(unit, &schedule)?,
        params: unit,
        normal: false,
        singular_values: (1..=weyl_dim).map(|k| unit.weight(k)).collect(),
        eigenvalue_moduli: sorted_desc(weyl_eigenvalue_moduli(unit, &schedule)),
    };

    let rates = [1.0, 2.0];
    let (_, sum) = make_interleaved_sum(&rates, 1.0, 40)?;
    let diag = sorted_desc(sum.diagonal().iter().map(|z| z.norm()).collect());
    let interleave = GalleryCase {
        name: "interleave",
        matrix: sum,
        params: ClassParams::new(combined_exponent(&rates, 1.0)?, 1.0)?,
        normal: true,
        singular_values: diag.clone(),
        eigenvalue_moduli: diag,
    };

    let conv = make_convolution_diagonal(1.0, 41)?;
    let diag = sorted_desc(conv.diagonal().iter().map(|z| z.norm()).collect());
    let convolution = GalleryCase {
        name: "convolution",
        matrix: conv,
        params: half,
        normal: true,
        singular_values: diag.clone(),
        eigenvalue_moduli: diag,
    };

    Ok(vec![shift, cyclic, weyl, interleave, convolution])
}

fn suite_checks(name: &str, seed: u64, sizes: SuiteSizes) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    match name {
        "arrangements" => {
            checks.extend(arrangement_checks(&mut family_rng(seed, STREAM_ARRANGEMENTS), sizes.arrangement_instances)?);
        }
        "classes" => {
            checks.extend(sum_bound_checks(&mut family_rng(seed, STREAM_SUMS), sizes.sum_instances)?);
            checks.extend(weyl_checks(&mut family_rng(seed, STREAM_WEYL), sizes.triangular_instances)?);
            checks.extend(class_misc_checks(&mut family_rng(seed, STREAM_CLASSES))?);
        }
        "resolvent" => {
            checks.extend(fgh_checks()?);
            checks.extend(resolvent_theorem_checks(sizes.grid_side)?);
            checks.extend(shift_sharpness()?);
            checks.extend(quasinilpotent_checks()?);
            checks.extend(departure_characterization_checks(
                &mut family_rng(seed, STREAM_CHARACTERIZATION),
                sizes.characterization_instances,
            )?);
        }
        "spectral_distance" => {
            checks.extend(spectral_distance_checks(&mut family_rng(seed, STREAM_SPECTRAL), sizes.spectral_pairs)?);
        }
        "gallery" => checks.extend(gallery_checks()?),
        "all" => {
            for sub in &SUITE_NAMES[..SUITE_NAMES.len() - 1] {
                checks.extend(suite_checks(sub, seed, sizes)?);
            }
        }
        _ => {
            return Err(Error::UnknownSuite { name: name.to_string(), valid: SUITE_NAMES.join(", ") });
        }
    }
    Ok(checks)
}

/// Runs a named suite.
pub fn run_suite(name: &str, seed: u64, budget: usize) -> Result<VerificationReport> {
    let checks = suite_checks(name, seed, SuiteSizes::from_budget(budget))?;
    Ok(VerificationReport::new(name, seed, budget, checks))
}
