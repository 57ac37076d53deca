//! Right-sided discrete quaternion Fourier transform, space and frequency
//! limiting operators, uncertainty bounds for sets of cells, and iterative
//! recovery of bandlimited quaternion signals with a missing region.
//!
//! The transform is unitary, so on an `N`-cell grid the Hilbert–Schmidt norm
//! of `F_W S_T` is `√(|T||W| / N)` and recovery is guaranteed whenever
//! `|T||W| < N`.

pub mod dqft;
pub mod error;
pub mod experiment;
pub mod limiting;
pub mod quaternion;
pub mod random;
pub mod recovery;
pub mod signal;
pub mod synth_io;
pub mod uncertainty;

pub use dqft::{qft_forward, qft_inverse, qft_naive, Direction, DqftPlan};
pub use error::{Error, Result};
pub use limiting::LimitingPair;
pub use quaternion::Quaternion;
pub use recovery::{recover, simulate_received, RecoveryProblem, RecoveryReport};
pub use signal::{apply_mask, inner_product, l2_norm, mask_from_spec, Mask, MaskSpec, QSignal2D};
pub use uncertainty::{check_uncertainty, concentration, ConcentrationReport};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
