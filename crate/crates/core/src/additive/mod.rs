//! Sumsets, representation counting, Pollard and Cauchy-Davenport checks,
//! Freiman structure theorems, discrete Fourier analysis, rectification,
//! and the two-carry characterization.

mod fourier;
mod freiman;
mod pollard;
mod rectify;
mod sets;

pub use fourier::{
    arc_concentration, coefficient, fourier_profile, half_circle_arc, large_coefficient_check,
    max_nonzero_fourier, ArcOutcome, FourierBound, FourierProfile,
};
pub use freiman::{
    freiman_24_check, freiman_3k3_check, freiman_iso_check, ApInt, ApMod, Freiman24, Freiman3k3,
    NotApplicable,
};
pub use pollard::{
    cauchy_davenport_check, centered_interval, coprime_differences, max_rep_check, pollard_check,
    pollard_s, solution_count, CdReport, MaxRepReport, PollardReport,
};
pub use rectify::{
    prime_square_base, rectify, rectify_cross_checked, two_carry_classify, CanonicalForm,
    ConcentrationCheck, Rectification, RectifyMethod, RectifyOutcome, TwoCarryOutcome,
};
pub use sets::{rep_count, rep_counts, sumset, AddSet, IntSet, ModSet};

use crate::rational::Rational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AdditiveError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("element {0} is out of range for modulus {1}")]
    OutOfRange(usize, usize),
    #[error("sets live in different ambients")]
    AmbientMismatch,
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(usize, usize),
    #[error("the set is empty")]
    EmptySet,
    #[error("need at least {need} sets, got {got}")]
    TooFewSets { need: usize, got: usize },
    #[error(
        "pollard hypothesis fails: {got} of {total} sets have all pairwise \
         differences coprime to {modulus}, need at least {need}"
    )]
    PollardHypothesis {
        got: usize,
        need: usize,
        total: usize,
        modulus: usize,
    },
    #[error("set has {0} elements; need at least {1}")]
    SetTooSmall(usize, usize),
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("map entry for {0} is missing or repeated; not a bijection from the set")]
    NotBijection(i64),
    #[error("point {index} has modulus {modulus} and is not on the unit circle")]
    OffCircle { index: usize, modulus: f64 },
    #[error("arc length {0} is outside (0, 2*pi]")]
    BadArcLength(f64),
    #[error("system is not p(Z/p^2) inside Z/p^2 with p prime")]
    NotPrimeSquareSystem,
    #[error("fourier-guided and exhaustive rectification disagree: {fourier:?} vs {exhaustive:?}")]
    RectifyDisagreement {
        fourier: Option<(usize, usize)>,
        exhaustive: Option<(usize, usize)>,
    },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("alpha2 bound is degenerate: the set is all of Z/{0}")]
    DegenerateFullSet(usize),
    #[error("epsilon {0} out of range")]
    BadEpsilon(Rational),
}
