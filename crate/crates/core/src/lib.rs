//! Combinatorial dynamics of cyclic patterns of interval maps, computed
//! exactly.
//!
//! A *pattern* is the cyclic permutation that a periodic orbit of a
//! continuous interval map induces on its points ordered left to right.
//! Everything here works on the connect-the-dots (`P`-linear) map of a
//! pattern and uses exact rational arithmetic throughout; there is no
//! floating point anywhere.
//!
//! The crate is organized as follows:
//!
//! * [`rational`] — the exact fraction type underlying all geometry.
//! * [`pattern`] — patterns and their per-pattern combinatorics:
//!   over-rotation pairs, convergence, the fixed point, the code and its
//!   monotonicity class, block structures, over-twist and very badly
//!   ordered classification, unimodality.
//! * [`markov`] — the covering graph of basic intervals, minimum cycle
//!   means, the forced over-rotation interval `[r, 1/2]`, exact
//!   realization of forced cycles, horseshoe detection.
//! * [`kneading`] — symbolic dynamics of unimodal patterns: itineraries,
//!   the parity order, shift-maximality, the weakest and strongest
//!   kneading sequences of a prescribed over-rotation interval.
//! * [`vbo`] — generators: the unimodal over-twist `gamma`, k-tuple
//!   liftings, and the gluing that produces unimodal very badly ordered
//!   cycles of arbitrary non-coprime over-rotation pair.
//! * [`sharkovsky`], [`farey`] — ordering and fraction utilities.

#![forbid(unsafe_code)]

pub mod farey;
pub mod kneading;
pub mod markov;
pub mod pattern;
pub mod rational;
pub mod sharkovsky;
pub mod vbo;

pub use kneading::{
    itinerary_of_point, kneading_of_pattern, rotation_kneading, strongest_kneading,
    IntervalClass, KneadingSequence, Symbol,
};
pub use markov::{
    build_markov, enumerate_loops, forced_cycles_up_to, has_horseshoe, loop_to_orbit,
    min_cycle_mean, over_rotation_interval, ForcedCycle, MarkovGraph, MinCycleMean,
};
pub use pattern::{
    BlockDecomposition, CodeClass, CodeTable, OverRotationPair, Pattern, Side,
};
pub use rational::Rational;
pub use vbo::{gamma, glue, k_tuple_lifting, vbo_build, verify_vbo, Lifting, VboReport};

use thiserror::Error;

/// Errors produced by pattern construction and the analysis operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed pattern text: {0}")]
    Malformed(String),
    #[error("images are not a permutation of 1..=n")]
    NotPermutation,
    #[error("permutation is not a single cycle")]
    NotSingleCycle,
    #[error("a pattern needs at least 2 points")]
    PeriodTooShort,
    #[error("pattern is divergent; this operation needs a convergent pattern")]
    DivergentPattern,
    #[error("pattern is not unimodal")]
    NotUnimodal,
    #[error("rho = {p}/{q} out of range: need gcd(p, q) = 1 and 0 < p/q < 1/2")]
    RhoOutOfRange { p: usize, q: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("gluing did not produce a single cycle: {0}")]
    GluingBroken(String),
    #[error("node sequence is not a cycle of the covering graph")]
    LoopNotInGraph,
    #[error("covering graph has no qualifying cycle (internal)")]
    NoCycle,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
