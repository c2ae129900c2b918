//! Ergodic interference alignment with alignment sets of multiple sizes:
//! exact analysis of the delay-rate tradeoff, and Monte Carlo verification.
//!
//! In ergodic interference alignment, a channel realization is grouped with
//! later realizations whose interference terms cancel when the channel
//! outputs are summed (an *alignment set*).  Racing several disjoint
//! alignment sets against each other ("first to complete") lowers the
//! decoding delay at some cost in rate, and time-sharing between schemes
//! traces out an affine delay-rate frontier.
//!
//! The crate is organized around that pipeline:
//!
//! - [`channel`]: quantized channel matrices, complements, alignment sets,
//!   and disjoint families of alignment sets around a seed realization.
//! - [`markov`]: the absorbing Markov chain of the first-to-complete race,
//!   with absorption probabilities and mean hitting times computed in exact
//!   rational arithmetic.
//! - [`linalg`]: the exact sparse linear solver backing [`markov`].
//! - [`closed_form`]: closed-form delays (integral, harmonic-number, and
//!   digamma forms), achievable rates, time-sharing, and the SINR lower
//!   bound under quantization.
//! - [`special`]: harmonic numbers, digamma, and Gauss-Legendre quadrature.
//! - [`sim`]: reproducible Monte Carlo simulation of the channel-realization
//!   race and of aligned transmission.
//! - [`report`]: comparison and tradeoff records with CSV/JSON encodings.

pub mod channel;
pub mod closed_form;
pub mod error;
pub mod linalg;
pub mod markov;
pub mod report;
pub mod sim;
pub mod special;

pub use error::{Error, Result};

pub use channel::{
    demo_alignment_set, is_alignment_set, quantize, AlignmentFamily, AlignmentSet, ChannelAlphabet,
    LatticePoint, QuantizedMatrix,
};
pub use closed_form::{
    delay_digamma, delay_harmonic, delay_integral, delay_time_sharing, expected_log_term,
    rate_complement, rate_first_to_complete, rate_time_sharing, sinr_bound, FadeSampleSet,
    RateConfig, TimeShareVector,
};
pub use markov::{verify_theorem_size2, AbsorptionResult, MarkovModel, SchemeTuple};
pub use sim::{
    monte_carlo, monte_carlo_enumerated, run_race, simulate_transmission, time_share_simulate,
    EmpiricalReport, RaceOutcome, TransmissionOutcome, TrialRng,
};

/// Re-exported complex scalar used for channel values and symbols.
pub use num_complex::Complex64;

/// Re-exported exact rational used for probabilities and delays.
pub use num_rational::BigRational;

/// Tuples whose absorption probabilities and delays ship as the default
/// reference set for the `table` command and the validation suite.
pub const DEFAULT_TUPLES: &[&[u32]] = &[
    &[2, 4],
    &[2, 6],
    &[2, 4, 4],
    &[2, 4, 6],
    &[4, 4],
    &[4, 6],
    &[4, 8],
    &[4, 4, 4],
    &[6, 10],
];
