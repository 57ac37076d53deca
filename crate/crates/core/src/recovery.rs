//! Recovery of a bandlimited signal observed with a missing region `T` and
//! additive noise.
//!
//! The received signal is `r = (f + n)` off `T` and zero on `T`. Because
//! `(I − S_T F_W) f = (I − S_T) f` for every `W`-bandlimited `f`, the signal
//! solves `f = r + S_T F_W f` in the noiseless case, and the fixed-point
//! iteration
//!
//! ```text
//! s⁽⁰⁾ = r,   s⁽ⁿ⁺¹⁾ = r + S_T F_W s⁽ⁿ⁾
//! ```
//!
//! sums the Neumann series of `(I − S_T F_W)⁻¹ r`. With
//! `ρ = √(|T||W|/N) < 1` the error contracts by at least `ρ` per step and the
//! noise is amplified by at most `(1 − ρ)⁻¹`.

use crate::error::{Error, Result};
use crate::limiting::{compose_st_fw, freq_limit, hs_norm, LimitingPair};
use crate::signal::{apply_mask, QSignal2D};

/// Bandlimit residual above which [`simulate_received`] rejects the input.
pub const BANDLIMIT_TOLERANCE: f64 = 1e-8;

/// Relative stopping tolerance used when none is given.
pub const DEFAULT_RELATIVE_TOL: f64 = 1e-9;

/// Iteration cap when there is no contraction guarantee.
pub const UNGUARANTEED_MAX_ITERS: usize = 10_000;

#[derive(Debug, Clone)]
pub struct RecoveryProblem {
    received: QSignal2D,
    pair: LimitingPair,
    noise_norm: f64,
    max_iters: usize,
    tol: f64,
}

impl RecoveryProblem {
    /// Zeroes `received` on `T` and picks default controls.
    pub fn new(received: QSignal2D, pair: LimitingPair, noise_norm: f64) -> Result<Self> {
        let received = apply_mask(&received, &pair.t_mask().complement())?;
        let rho = hs_norm(&pair);
        let tol = (DEFAULT_RELATIVE_TOL * received.l2_norm()).max(f64::MIN_POSITIVE);
        Ok(Self {
            received,
            noise_norm,
            max_iters: default_max_iters(rho),
            tol,
            pair,
        })
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters.max(1);
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn received(&self) -> &QSignal2D {
        &self.received
    }

    pub fn pair(&self) -> &LimitingPair {
        &self.pair
    }

    pub fn noise_norm(&self) -> f64 {
        self.noise_norm
    }

    pub fn max_iters(&self) -> usize {
        self.max_iters
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn rho(&self) -> f64 {
        hs_norm(&self.pair)
    }

    /// Whether `|T||W| < N`, i.e. unique recovery and guaranteed convergence.
    pub fn guaranteed(&self) -> bool {
        uniqueness_certificate(&self.pair)
    }
}

/// `10·⌈ln(1e−9)/ln ρ⌉` for `ρ < 1`, else [`UNGUARANTEED_MAX_ITERS`].
pub fn default_max_iters(rho: f64) -> usize {
    if rho < 1.0 {
        let steps = (DEFAULT_RELATIVE_TOL.ln() / rho.ln()).ceil();
        ((10.0 * steps) as usize).max(1)
    } else {
        UNGUARANTEED_MAX_ITERS
    }
}

#[derive(Debug, Clone)]
pub struct RecoveryReport {
    pub recovered: QSignal2D,
    pub iterations_run: usize,
    /// `‖s⁽ⁿ⁾ − s⁽ⁿ⁻¹⁾‖` for `n = 1, 2, …`.
    pub residual_history: Vec<f64>,
    /// `‖s⁽ⁿ⁾ − f‖` for `n = 1, 2, …` when the ground truth was supplied.
    pub true_error_history: Option<Vec<f64>>,
    pub rho: f64,
    /// `(1 − ρ)⁻¹` when `|T||W| < N`.
    pub error_bound_c: Option<f64>,
    pub guaranteed: bool,
    pub converged: bool,
    pub noise_norm: f64,
}

/// Builds the received signal from a `W`-bandlimited `f` and optional noise.
pub fn simulate_received(f: &QSignal2D, pair: &LimitingPair, noise: Option<&QSignal2D>) -> Result<RecoveryProblem> {
    let (rows, cols) = pair.dims();
    f.check_dims(rows, cols)?;
    let residual = (f - &freq_limit(f, pair)?).l2_norm();
    if residual >= BANDLIMIT_TOLERANCE {
        return Err(Error::NotBandlimited { residual });
    }
    let (observed, noise_norm) = match noise {
        Some(n) => {
            n.check_dims(rows, cols)?;
            (f + n, n.l2_norm())
        }
        None => (f.clone(), 0.0),
    };
    RecoveryProblem::new(observed, pair.clone(), noise_norm)
}

pub fn recover(problem: &RecoveryProblem) -> RecoveryReport {
    recover_tracking(problem, None)
}

/// Runs the iteration; with `truth` also records `‖s⁽ⁿ⁾ − f‖` per step.
///
/// # Panics
/// If `truth` does not match the problem's grid.
pub fn recover_tracking(problem: &RecoveryProblem, truth: Option<&QSignal2D>) -> RecoveryReport {
    if let Some(f) = truth {
        assert_eq!(f.dims(), problem.pair.dims(), "ground truth does not match grid");
    }
    let r = &problem.received;
    let mut s = r.clone();
    let mut residuals = Vec::new();
    let mut errors = truth.map(|_| Vec::new());
    let mut converged = false;
    for _ in 0..problem.max_iters {
        let next = r + &compose_st_fw(&s, &problem.pair).expect("dims checked at construction");
        let diff = (&next - &s).l2_norm();
        s = next;
        residuals.push(diff);
        if let (Some(errs), Some(f)) = (errors.as_mut(), truth) {
            errs.push((&s - f).l2_norm());
        }
        if diff <= problem.tol {
            converged = true;
            break;
        }
    }
    RecoveryReport {
        recovered: s,
        iterations_run: residuals.len(),
        residual_history: residuals,
        true_error_history: errors,
        rho: problem.rho(),
        error_bound_c: error_bound_c(&problem.pair),
        guaranteed: problem.guaranteed(),
        converged,
        noise_norm: problem.noise_norm,
    }
}

/// `|T||W| < N`, compared exactly in integers.
pub fn uniqueness_certificate(pair: &LimitingPair) -> bool {
    (pair.t_mask().count() as u128) * (pair.w_mask().count() as u128) < pair.n_px() as u128
}

/// `(1 − ρ)⁻¹` when the uniqueness condition holds.
pub fn error_bound_c(pair: &LimitingPair) -> Option<f64> {
    uniqueness_certificate(pair).then(|| 1.0 / (1.0 - hs_norm(pair)))
}
