//! Carry tables and carry scores for coset representatives in finite groups,
//! together with the machinery that surrounds them: approximate-homomorphism
//! measurement and repair, extension-splitting detection, Sym-set
//! near-subgroup extraction, sumset and representation counting, Freiman
//! structure checks, Fourier rectification, and certified exhaustive searches
//! over representative sets.
//!
//! Everything operates on small, explicitly represented finite groups.
//! Scores and thresholds are exact rationals; floating point appears only in
//! Fourier magnitudes and the repair bound `tau`.

pub mod additive;
pub mod approx;
pub mod arith;
pub mod bitset;
pub mod carries;
pub mod fournier;
pub mod group;
pub mod parallel;
pub mod parse;
pub mod rational;
pub mod search;

pub use group::{CosetSystem, Elem, FiniteGroup, RepSet};
pub use rational::Rational;
