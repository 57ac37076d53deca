//! ε-concentration of a signal on a spatial set and of its spectrum on a
//! spectral set, and the bound `|T||W| / N ≥ (1 − ε_T − ε_W)²`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::limiting::{freq_limit, LimitingPair};
use crate::random::{random_block_mask, random_mask, random_signal, random_unit_signal};
use crate::signal::{apply_mask, Mask, QSignal2D};

/// Slack for transform round-off when comparing against the bound.
pub const BOUND_TOLERANCE: f64 = 1e-9;

/// Concentration of `f / ‖f‖` on `T` and of its spectrum on `W`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcentrationReport {
    /// `‖f − S_T f‖` for unit `f`.
    pub eps_t: f64,
    /// `‖F f − χ_W F f‖` for unit `f`.
    pub eps_w: f64,
    pub t_count: usize,
    pub w_count: usize,
    pub n_px: usize,
    /// `|T||W| / N`.
    pub bound_lhs: f64,
    /// `max(0, 1 − ε_T − ε_W)²`.
    pub bound_rhs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyCheck {
    pub holds: bool,
    /// `bound_lhs − bound_rhs`.
    pub margin: f64,
}

pub fn concentration(f: &QSignal2D, pair: &LimitingPair) -> Result<ConcentrationReport> {
    let (rows, cols) = pair.dims();
    f.check_dims(rows, cols)?;
    let norm = f.l2_norm();
    if norm == 0.0 {
        return Err(Error::Degenerate("zero signal has no concentration".into()));
    }
    let unit = f.scale(1.0 / norm);
    // both residuals are orthogonal-projection complements
    let eps_t = apply_mask(&unit, &pair.t_mask().complement())?.l2_norm();
    let spectrum = pair.plan().forward(&unit);
    let eps_w = apply_mask(&spectrum, &pair.w_mask().complement())?.l2_norm();
    Ok(report(eps_t, eps_w, pair))
}

fn report(eps_t: f64, eps_w: f64, pair: &LimitingPair) -> ConcentrationReport {
    let t_count = pair.t_mask().count();
    let w_count = pair.w_mask().count();
    let n_px = pair.n_px();
    let slack = (1.0 - eps_t - eps_w).max(0.0);
    ConcentrationReport {
        eps_t,
        eps_w,
        t_count,
        w_count,
        n_px,
        bound_lhs: t_count as f64 * w_count as f64 / n_px as f64,
        bound_rhs: slack * slack,
    }
}

pub fn check_uncertainty(report: &ConcentrationReport) -> UncertaintyCheck {
    let margin = report.bound_lhs - report.bound_rhs;
    UncertaintyCheck {
        holds: margin >= -BOUND_TOLERANCE,
        margin,
    }
}

/// For a signal supported on `T` whose spectrum is supported on `W`
/// (both residuals below `1e−10`), checks `|T||W| ≥ N`. Vacuously true
/// otherwise, including for the zero signal.
pub fn support_product_holds(f: &QSignal2D, pair: &LimitingPair) -> bool {
    match concentration(f, pair) {
        Ok(r) if r.eps_t < 1e-10 && r.eps_w < 1e-10 => r.t_count * r.w_count >= r.n_px,
        _ => true,
    }
}

/// Outcome of a randomized check of the bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSummary {
    pub trials: usize,
    pub violations: usize,
    /// Smallest `bound_lhs − bound_rhs` seen (`+∞` when no trials ran).
    pub worst_margin: f64,
    /// Trials in which the bound was not trivially satisfied (`bound_rhs > 0`).
    pub nontrivial: usize,
}

/// Per-trial seed derived from the sweep seed.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed ^ (trial as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// One random `(f, T, W)` triple. A third of the signals are supported on `T`,
/// a third are bandlimited to `W` and the rest are unrestricted, so that the
/// bound is exercised away from the trivial region.
pub fn random_triple(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> (QSignal2D, LimitingPair) {
    let pick = |rng: &mut ChaCha8Rng| -> Mask {
        if rng.random_bool(0.5) {
            random_mask(rng, rows, cols)
        } else {
            random_block_mask(rng, rows, cols)
        }
    };
    let t = pick(rng);
    let w = pick(rng);
    let pair = LimitingPair::new(t, w).expect("same dims");
    let f = match rng.random_range(0..3) {
        0 => apply_mask(&random_signal(rng, rows, cols), pair.t_mask()).expect("same dims"),
        1 => freq_limit(&random_signal(rng, rows, cols), &pair).expect("same dims"),
        _ => random_unit_signal(rng, rows, cols),
    };
    (f, pair)
}

/// Checks the bound on `trials` random triples with independent seeds.
pub fn uncertainty_sweep(rows: usize, cols: usize, trials: usize, seed: u64) -> SweepSummary {
    let mut out = SweepSummary {
        trials,
        violations: 0,
        worst_margin: f64::INFINITY,
        nontrivial: 0,
    };
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, trial));
        let (f, pair) = random_triple(&mut rng, rows, cols);
        let Ok(rep) = concentration(&f, &pair) else {
            continue;
        };
        let check = check_uncertainty(&rep);
        if !check.holds {
            out.violations += 1;
        }
        if rep.bound_rhs > 0.0 {
            out.nontrivial += 1;
        }
        out.worst_margin = out.worst_margin.min(check.margin);
    }
    out
}
