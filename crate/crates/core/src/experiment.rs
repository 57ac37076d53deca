//! End-to-end runners behind the `qftr` binary: recovery experiments, the
//! property verification suite, kernel tables and file transforms.
//!
//! Every runner writes its results to files; console output is a courtesy.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dqft::{qft_naive, Direction, DqftPlan};
use crate::error::{Error, Result};
use crate::limiting::{hs_norm, hs_norm_brute_force, kernel_unrestricted, op_norm_estimate, Composition, LimitingPair};
use crate::random::{gaussian_noise, random_block_mask, random_mask, random_signal};
use crate::recovery::{recover_tracking, simulate_received, RecoveryReport};
use crate::signal::{apply_mask, MaskSpec, QSignal2D};
use crate::synth_io::{
    bandlimit_project, image_to_qsignal, qsignal_to_image, read_image, synth_texture, write_image, write_metrics,
    RenderMode,
};
use crate::uncertainty::{trial_seed, uncertainty_sweep, BOUND_TOLERANCE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
/// No convergence guarantee (`|T||W| ≥ N`) or the iteration did not converge.
pub const EXIT_NO_CONVERGENCE: i32 = 2;
/// A verified property failed.
pub const EXIT_PROPERTY_FAILED: i32 = 3;

/// Largest grid the verification suite accepts (brute-force kernel sums).
pub const VERIFY_MAX_CELLS: usize = 256;

/// Parses `RxC`, e.g. `8x8`.
pub fn parse_dims(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Config(format!("dims must look like 64x64, got {s:?}"));
    let (r, c) = s.trim().split_once(['x', 'X']).ok_or_else(bad)?;
    let rows: usize = r.trim().parse().map_err(|_| bad())?;
    let cols: usize = c.trim().parse().map_err(|_| bad())?;
    if rows == 0 || cols == 0 {
        return Err(bad());
    }
    Ok((rows, cols))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub rows: usize,
    pub cols: usize,
    /// Spectral set `W`.
    pub band: MaskSpec,
    /// Missing spatial region `T`.
    pub missing: MaskSpec,
    /// Norm of the additive noise.
    pub noise: f64,
    pub seed: u64,
    pub max_iters: Option<usize>,
    pub tol: Option<f64>,
    pub out_dir: PathBuf,
    /// Image to use instead of a synthetic texture; its size overrides `rows`/`cols`.
    pub input: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            rows: 64,
            cols: 64,
            band: MaskSpec::CenteredRect {
                half_height: 6,
                half_width: 6,
            },
            missing: MaskSpec::Block {
                row: 30,
                col: 30,
                height: 4,
                width: 4,
            },
            noise: 0.0,
            seed: 1,
            max_iters: None,
            tol: None,
            out_dir: PathBuf::from("out"),
            input: None,
        }
    }
}

impl ExperimentConfig {
    /// Sets one `key = value` entry.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::Config(format!("{key}: {what} {value:?}"));
        match key {
            "rows" => self.rows = value.parse().map_err(|_| bad("expected integer, got"))?,
            "cols" => self.cols = value.parse().map_err(|_| bad("expected integer, got"))?,
            "dims" => (self.rows, self.cols) = parse_dims(value)?,
            "band" => self.band = value.parse()?,
            "missing" => self.missing = value.parse()?,
            "noise" => self.noise = value.parse().map_err(|_| bad("expected number, got"))?,
            "seed" => self.seed = value.parse().map_err(|_| bad("expected integer, got"))?,
            "max_iters" => self.max_iters = Some(value.parse().map_err(|_| bad("expected integer, got"))?),
            "tol" => self.tol = Some(value.parse().map_err(|_| bad("expected number, got"))?),
            "out" => self.out_dir = PathBuf::from(value),
            "input" => self.input = Some(PathBuf::from(value)),
            _ => return Err(Error::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Checks everything that can be checked without reading the input image.
    pub fn validate(&self) -> Result<()> {
        if !self.noise.is_finite() || self.noise < 0.0 {
            return Err(Error::Config(format!("noise must be a nonnegative number, got {}", self.noise)));
        }
        if let Some(tol) = self.tol {
            if tol.is_nan() || tol <= 0.0 {
                return Err(Error::Config(format!("tol must be positive, got {tol}")));
            }
        }
        if self.max_iters == Some(0) {
            return Err(Error::Config("max_iters must be positive".into()));
        }
        if self.input.is_none() {
            self.band.to_mask(self.rows, self.cols)?;
            self.missing.to_mask(self.rows, self.cols)?;
        }
        Ok(())
    }

    /// Canonical `key = value` rendering; parses back to the same config.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "rows = {}", self.rows);
        let _ = writeln!(s, "cols = {}", self.cols);
        let _ = writeln!(s, "band = {}", self.band);
        let _ = writeln!(s, "missing = {}", self.missing);
        let _ = writeln!(s, "noise = {}", self.noise);
        let _ = writeln!(s, "seed = {}", self.seed);
        if let Some(m) = self.max_iters {
            let _ = writeln!(s, "max_iters = {m}");
        }
        if let Some(t) = self.tol {
            let _ = writeln!(s, "tol = {t}");
        }
        let _ = writeln!(s, "out = {}", self.out_dir.display());
        if let Some(p) = &self.input {
            let _ = writeln!(s, "input = {}", p.display());
        }
        s
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        text.parse()
    }
}

/// Flat `key = value` lines; `#` starts a comment. Unset keys keep defaults.
impl FromStr for ExperimentConfig {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            cfg.set(k.trim(), v.trim())?;
        }
        Ok(cfg)
    }
}

/// What a recovery run produced.
#[derive(Debug, Clone)]
pub struct RecoverOutcome {
    pub report: RecoveryReport,
    pub truth: QSignal2D,
    pub final_error: f64,
    pub files: Vec<PathBuf>,
    pub exit_code: i32,
}

const NOISE_STREAM: u64 = 0x6e6f_6973_6521;

/// Loads or synthesizes the input, bandlimits it, removes `T`, adds noise,
/// recovers, and writes original / masked / recovered / error images plus
/// `metrics.csv` and the effective `config.txt` into `out_dir`.
pub fn run_recover(cfg: &ExperimentConfig) -> Result<RecoverOutcome> {
    cfg.validate()?;
    let (source, color) = match &cfg.input {
        Some(p) => {
            let img = read_image(p)?;
            (image_to_qsignal(&img)?, img.channels() == 3)
        }
        None => (synth_texture(cfg.rows, cfg.cols, &cfg.band, cfg.seed)?, true),
    };
    let (rows, cols) = source.dims();
    let pair = LimitingPair::from_specs(&cfg.missing, &cfg.band, rows, cols)?;
    let truth = bandlimit_project(&source, &cfg.band)?;

    let noise = (cfg.noise > 0.0).then(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ NOISE_STREAM);
        gaussian_noise(&mut rng, rows, cols, cfg.noise)
    });
    let mut problem = simulate_received(&truth, &pair, noise.as_ref())?;
    if let Some(m) = cfg.max_iters {
        problem = problem.with_max_iters(m);
    }
    if let Some(t) = cfg.tol {
        problem = problem.with_tol(t);
    }
    let report = recover_tracking(&problem, Some(&truth));
    let error = &report.recovered - &truth;

    fs::create_dir_all(&cfg.out_dir).map_err(|e| Error::io(&cfg.out_dir, e))?;
    let (mode, ext) = if color {
        (RenderMode::Vector, "ppm")
    } else {
        (RenderMode::Scalar, "pgm")
    };
    let mut files = Vec::new();
    for (name, signal, mode, ext) in [
        ("original", &truth, mode, ext),
        ("masked", problem.received(), mode, ext),
        ("recovered", &report.recovered, mode, ext),
        ("error", &error, RenderMode::Modulus, "pgm"),
    ] {
        let path = cfg.out_dir.join(format!("{name}.{ext}"));
        write_image(&qsignal_to_image(signal, mode), &path)?;
        files.push(path);
    }
    let metrics = cfg.out_dir.join("metrics.csv");
    write_metrics(&report, &metrics)?;
    files.push(metrics);
    let config = cfg.out_dir.join("config.txt");
    fs::write(&config, cfg.render()).map_err(|e| Error::io(&config, e))?;
    files.push(config);

    let exit_code = if report.guaranteed && report.converged {
        EXIT_OK
    } else {
        EXIT_NO_CONVERGENCE
    };
    Ok(RecoverOutcome {
        final_error: error.l2_norm(),
        report,
        truth,
        files,
        exit_code,
    })
}

/// Deliberate transform defects for exercising the verification suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Forward transform output scaled by `1.001`.
    ScaledForward,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub rows: usize,
    pub cols: usize,
    pub trials: usize,
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            rows: 8,
            cols: 8,
            trials: 1000,
            seed: 1,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub cases: usize,
    /// Worst observed deviation (or smallest margin for `uncertainty_bound`).
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOutcome {
    pub checks: Vec<PropertyCheck>,
    pub all_passed: bool,
}

impl VerifyOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.all_passed {
            EXIT_OK
        } else {
            EXIT_PROPERTY_FAILED
        }
    }

    /// `property,passed,cases,worst,tolerance` rows.
    pub fn render_csv(&self) -> String {
        let mut s = String::from("property,passed,cases,worst,tolerance\n");
        for c in &self.checks {
            let _ = writeln!(s, "{},{},{},{:e},{:e}", c.name, c.passed, c.cases, c.worst, c.tolerance);
        }
        let _ = writeln!(s, "# all_passed={}", self.all_passed);
        s
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.render_csv()).map_err(|e| Error::io(path, e))
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = writeln!(
                s,
                "{} {:<20} cases={:<6} worst={:<12.3e} tol={:e}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.cases,
                c.worst,
                c.tolerance
            );
        }
        s
    }
}

/// Hilbert–Schmidt checks use explicit kernel sums, so they run on at most this many pairs.
const VERIFY_MAX_PAIRS: usize = 100;
const VERIFY_MAX_NAIVE: usize = 20;

fn check(name: &'static str, cases: usize, worst: f64, tolerance: f64) -> PropertyCheck {
    PropertyCheck {
        name,
        cases,
        worst,
        tolerance,
        passed: cases == 0 || worst < tolerance,
    }
}

fn random_pair(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> LimitingPair {
    let t = if rng.random_bool(0.5) {
        random_mask(rng, rows, cols)
    } else {
        random_block_mask(rng, rows, cols)
    };
    LimitingPair::new(t, random_mask(rng, rows, cols)).expect("same dims")
}



/// Transform, Hilbert–Schmidt, operator-norm and uncertainty property sweeps.
pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyOutcome> {
    let (rows, cols) = (opts.rows, opts.cols);
    if rows == 0 || cols == 0 || rows * cols > VERIFY_MAX_CELLS {
        return Err(Error::Config(format!(
            "verify needs a grid of at most {VERIFY_MAX_CELLS} cells, got {rows}x{cols}"
        )));
    }
    let plan = DqftPlan::new(rows, cols);
    let forward = |f: &QSignal2D| -> QSignal2D {
        let out = plan.forward(f);
        match opts.fault {
            Some(Fault::ScaledForward) => out.scale(1.001),
            None => out,
        }
    };
    let n = opts.trials;
    let signal = |trial: usize, stream: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(opts.seed ^ stream, trial));
        random_signal(&mut rng, rows, cols)
    };

    let (mut parseval, mut round_trip, mut naive) = (0.0f64, 0.0f64, 0.0f64);
    for trial in 0..n {
        let f = signal(trial, 1);
        let spec = forward(&f);
        parseval = parseval.max((spec.l2_norm() - f.l2_norm()).abs() / f.l2_norm());
        round_trip = round_trip.max(plan.inverse(&spec).max_abs_diff(&f));
        if trial < VERIFY_MAX_NAIVE {
            naive = naive.max(spec.max_abs_diff(&qft_naive(&f, Direction::Forward)));
        }
    }

    let pairs = n.min(VERIFY_MAX_PAIRS);
    let (mut closed, mut commute, mut op_gap) = (0.0f64, 0.0f64, f64::NEG_INFINITY);
    for trial in 0..pairs {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(opts.seed ^ 2, trial));
        let pair = random_pair(&mut rng, rows, cols);
        let exact = hs_norm(&pair);
        let fw_st = hs_norm_brute_force(&pair, Composition::FwSt);
        let st_fw = hs_norm_brute_force(&pair, Composition::StFw);
        closed = closed.max((fw_st - exact).abs());
        commute = commute.max((fw_st - st_fw).abs());
        op_gap = op_gap.max(op_norm_estimate(&pair, 30) - exact);
    }

    let sweep = uncertainty_sweep(rows, cols, n, opts.seed ^ 3);
    let margin = if n == 0 { 0.0 } else { sweep.worst_margin };

    let checks = vec![
        check("parseval", n, parseval, 1e-10),
        check("round_trip", n, round_trip, 1e-10),
        check("fast_vs_naive", n.min(VERIFY_MAX_NAIVE), naive, 1e-10),
        check("hs_closed_form", pairs, closed, 1e-9),
        check("hs_commute", pairs, commute, 1e-9),
        // op_norm − hs must stay below the tolerance
        check("op_norm_below_hs", pairs, op_gap.max(-1.0), 1e-9),
        PropertyCheck {
            name: "uncertainty_bound",
            cases: n,
            worst: margin,
            tolerance: -BOUND_TOLERANCE,
            passed: sweep.violations == 0,
        },
    ];
    let all_passed = checks.iter().all(|c| c.passed);
    Ok(VerifyOutcome { checks, all_passed })
}

/// Largest grid for kernel tables.
pub const KERNEL_MAX_CELLS: usize = 256;

/// `k(t, x)` for every `t ∈ T` and every `x` as CSV
/// (`t_row,t_col,x_row,x_col,w,x,y,z`).
pub fn kernel_table(pair: &LimitingPair) -> Result<String> {
    let (rows, cols) = pair.dims();
    if rows * cols > KERNEL_MAX_CELLS {
        return Err(Error::Config(format!(
            "kernel tables are limited to {KERNEL_MAX_CELLS} cells, got {rows}x{cols}"
        )));
    }
    let mut s = String::from("t_row,t_col,x_row,x_col,w,x,y,z\n");
    for t in pair.t_mask().cells() {
        for x0 in 0..rows {
            for x1 in 0..cols {
                let k = kernel_unrestricted(pair, t, (x0, x1))?;
                let _ = writeln!(s, "{},{},{},{},{},{},{},{}", t.0, t.1, x0, x1, k.w, k.x, k.y, k.z);
            }
        }
    }
    Ok(s)
}

pub fn write_kernel_table(pair: &LimitingPair, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let table = kernel_table(pair)?;
    fs::write(path, table).map_err(|e| Error::io(path, e))
}

/// Reads an image, applies the forward or inverse transform and writes the
/// rendering selected by `mode`.
pub fn run_qft(input: &Path, output: &Path, inverse: bool, mode: RenderMode) -> Result<QSignal2D> {
    let f = image_to_qsignal(&read_image(input)?)?;
    let plan = DqftPlan::new(f.rows(), f.cols());
    let out = if inverse { plan.inverse(&f) } else { plan.forward(&f) };
    write_image(&qsignal_to_image(&out, mode), output)?;
    Ok(out)
}

/// Energy of the error on `T` and off `T`.
pub fn error_split(report: &RecoveryReport, truth: &QSignal2D, pair: &LimitingPair) -> Result<(f64, f64)> {
    let err = &report.recovered - truth;
    let on = apply_mask(&err, pair.t_mask())?.l2_norm();
    let off = apply_mask(&err, &pair.t_mask().complement())?.l2_norm();
    Ok((on, off))
}
