//! Acceptance gate. Each criterion prints one `PASS`/`FAIL` line; the process
//! exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use qft_uncertainty::experiment::{run_recover, ExperimentConfig};
use qft_uncertainty::limiting::{hs_norm, hs_norm_brute_force, op_norm_estimate, Composition};
use qft_uncertainty::random::{gaussian_noise, random_block_mask, random_mask, random_signal};
use qft_uncertainty::recovery::recover_tracking;
use qft_uncertainty::synth_io::{read_image, synth_bandlimited, Samples};
use qft_uncertainty::uncertainty::uncertainty_sweep;
use qft_uncertainty::{qft_naive, simulate_received, Direction, DqftPlan, LimitingPair, Mask, MaskSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn transform_vs_naive() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    let mut count = 0;
    for &(r, c) in &[(4, 4), (8, 8), (16, 16), (6, 6), (12, 12)] {
        let plan = DqftPlan::new(r, c);
        for _ in 0..20 {
            let f = random_signal(&mut rng, r, c);
            worst = worst.max(plan.forward(&f).max_abs_diff(&qft_naive(&f, Direction::Forward)));
            worst = worst.max(plan.inverse(&f).max_abs_diff(&qft_naive(&f, Direction::Inverse)));
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        count >= 100 && worst < 1e-10 && elapsed < Duration::from_secs(10),
        format!("{count} signals, max error {worst:.2e} (< 1e-10), {elapsed:.2?} (< 10 s)"),
    )
}

fn parseval() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut worst = 0.0f64;
    let mut count = 0;
    for &(r, c) in &[(1, 1), (2, 3), (5, 7), (8, 8), (15, 9), (32, 32), (48, 64), (64, 64)] {
        let plan = DqftPlan::new(r, c);
        for _ in 0..10 {
            let f = random_signal(&mut rng, r, c);
            worst = worst.max((plan.forward(&f).l2_norm() - f.l2_norm()).abs() / f.l2_norm());
            count += 1;
        }
    }
    outcome(worst < 1e-10, format!("{count} signals up to 64x64, max relative error {worst:.2e} (< 1e-10)"))
}

/// Random pairs on grids up to 12x12 plus the 8x8, |T| = 4, |W| = 9 case.
fn hs_pairs() -> Vec<LimitingPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut pairs = vec![LimitingPair::from_specs(
        &"block:2,5,2,2".parse::<MaskSpec>().unwrap(),
        &"rect:1,1".parse::<MaskSpec>().unwrap(),
        8,
        8,
    )
    .unwrap()];
    while pairs.len() < 60 {
        let (r, c) = (rng.random_range(1..=12), rng.random_range(1..=12));
        let t = if rng.random_bool(0.5) {
            random_mask(&mut rng, r, c)
        } else {
            random_block_mask(&mut rng, r, c)
        };
        pairs.push(LimitingPair::new(t, random_mask(&mut rng, r, c)).unwrap());
    }
    pairs
}

fn hs_closed_form(pairs: &[LimitingPair]) -> Outcome {
    let worked = hs_norm_brute_force(&pairs[0], Composition::FwSt);
    let worst = pairs
        .iter()
        .map(|p| (hs_norm_brute_force(p, Composition::FwSt) - hs_norm(p)).abs())
        .fold(0.0, f64::max);
    outcome(
        worst < 1e-9 && (worked - 0.75).abs() < 1e-9,
        format!("{} pairs, max deviation {worst:.2e} (< 1e-9), 8x8 |T|=4 |W|=9 gives {worked:.12}", pairs.len()),
    )
}

fn hs_commute(pairs: &[LimitingPair]) -> Outcome {
    let worst = pairs
        .iter()
        .map(|p| (hs_norm_brute_force(p, Composition::FwSt) - hs_norm_brute_force(p, Composition::StFw)).abs())
        .fold(0.0, f64::max);
    outcome(worst < 1e-9, format!("{} pairs, max |‖F_W S_T‖ − ‖S_T F_W‖| {worst:.2e} (< 1e-9)", pairs.len()))
}

fn op_norm_below_hs(pairs: &[LimitingPair]) -> Outcome {
    let worst = pairs
        .iter()
        .map(|p| op_norm_estimate(p, 200) - hs_norm(p))
        .fold(f64::NEG_INFINITY, f64::max);
    outcome(worst <= 1e-9, format!("{} pairs, max (op − HS) {worst:.2e} (≤ 1e-9)", pairs.len()))
}

fn uncertainty() -> Outcome {
    let start = Instant::now();
    let sweep = uncertainty_sweep(16, 16, 10_000, 106);
    let elapsed = start.elapsed();
    outcome(
        sweep.trials == 10_000 && sweep.violations == 0 && elapsed < Duration::from_secs(60),
        format!(
            "{} triples on 16x16, {} violations, {} nontrivial, worst margin {:.2e}, {elapsed:.2?} (< 60 s)",
            sweep.trials, sweep.violations, sweep.nontrivial, sweep.worst_margin
        ),
    )
}

/// 8x8 with |T| = 4, |W| = 4: ρ = 0.5.
fn half_rho_pair() -> LimitingPair {
    LimitingPair::from_specs(
        &"block:3,3,2,2".parse::<MaskSpec>().unwrap(),
        &"cells:0,0;0,7;7,0;7,7".parse::<MaskSpec>().unwrap(),
        8,
        8,
    )
    .unwrap()
}

fn convergence() -> Outcome {
    let pair = half_rho_pair();
    let w = pair.w_spec().unwrap().clone();
    let f = synth_bandlimited(8, 8, &w, 107).unwrap();
    let problem = simulate_received(&f, &pair, None).unwrap().with_max_iters(40).with_tol(1e-14);
    let report = recover_tracking(&problem, Some(&f));
    let norm = f.l2_norm();
    let mut errors = vec![(problem.received() - &f).l2_norm()];
    errors.extend(report.true_error_history.as_deref().unwrap());
    let worst_ratio = errors
        .iter()
        .take(21)
        .enumerate()
        .map(|(n, e)| e / (0.5f64.powi(n as i32) * norm))
        .fold(0.0, f64::max);
    let last = *errors.last().unwrap();
    outcome(
        pair.rho() == 0.5 && errors.len() > 20 && worst_ratio <= 1.01 && last < 1e-6,
        format!(
            "ρ = {}, max ‖s⁽ⁿ⁾−f‖/(0.5ⁿ‖f‖) over n ≤ 20 is {worst_ratio:.4} (≤ 1.01), final error {last:.2e} (< 1e-6)",
            pair.rho()
        ),
    )
}

fn noise_bound() -> Outcome {
    let pair = half_rho_pair();
    let w = pair.w_spec().unwrap().clone();
    let mut worst = 0.0f64;
    for draw in 0..50u64 {
        let f = synth_bandlimited(8, 8, &w, 1000 + draw).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2000 + draw);
        let noise = gaussian_noise(&mut rng, 8, 8, 0.01);
        let problem = simulate_received(&f, &pair, Some(&noise)).unwrap();
        let report = recover_tracking(&problem, None);
        worst = worst.max((&report.recovered - &f).l2_norm());
    }
    let limit = 2.0 * 0.01 + 1e-6;
    outcome(worst <= limit, format!("50 draws at ‖n‖ = 0.01, max error {worst:.3e} (≤ {limit})"))
}

fn outside_levels(path: &Path, t: &Mask) -> u16 {
    let img = read_image(path).unwrap();
    let Samples::U8(px) = img.samples() else { unreachable!("8-bit error map") };
    let mut worst = 0u16;
    for r in 0..img.rows() {
        for c in 0..img.cols() {
            if !t.contains(r, c) {
                worst = worst.max(px[r * img.cols() + c] as u16);
            }
        }
    }
    worst
}

fn desk_reproduction() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut lines = Vec::new();
    let mut passed = true;
    for seed in [1u64, 2, 3] {
        let cfg: ExperimentConfig = format!("rows = 64\ncols = 64\nband = rect:6,6\nmissing = block:30,30,4,4\nseed = {seed}")
            .parse()
            .unwrap();
        let cfg = ExperimentConfig {
            out_dir: dir.path().join(seed.to_string()),
            ..cfg
        };
        let start = Instant::now();
        let out = run_recover(&cfg).unwrap();
        let elapsed = start.elapsed();
        let t = cfg.missing.to_mask(64, 64).unwrap();
        let levels = outside_levels(&cfg.out_dir.join("error.pgm"), &t);
        let r = &out.report;
        let ok = r.guaranteed && r.converged && out.final_error < 1e-4 && levels <= 2 && elapsed < Duration::from_secs(60);
        passed &= ok;
        lines.push(format!(
            "seed {seed}: error {:.2e} in {} iterations, {levels} levels off T, {elapsed:.2?}",
            out.final_error, r.iterations_run
        ));
    }
    outcome(passed, format!("64x64 textures, W = rect:6,6, |T| = 16; {}", lines.join("; ")))
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect()
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "rows = 32\ncols = 32\nband = rect:3,3\nmissing = block:10,12,3,3\nnoise = 0.01\nseed = 9\n").unwrap();
    let out = dir.path().join("out");
    let verify_csv = dir.path().join("verify.csv");
    let qftr = env!("CARGO_BIN_EXE_qftr");
    let mut runs = Vec::new();
    for _ in 0..3 {
        let _ = fs::remove_dir_all(&out);
        let rec = Command::new(qftr)
            .args(["recover", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()])
            .output()
            .unwrap();
        let ver = Command::new(qftr)
            .args(["verify", "--dims", "8x8", "--trials", "200", "--seed", "3", "--out", verify_csv.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(rec.status.success() && ver.status.success(), "qftr failed");
        let mut files = snapshot(&out);
        files.insert("verify.csv".into(), fs::read(&verify_csv).unwrap());
        runs.push(files);
    }
    let identical = runs.windows(2).all(|w| w[0] == w[1]);
    outcome(
        identical && runs[0].len() == 7,
        format!("3 runs of recover and verify, {} files each, byte-identical: {identical}", runs[0].len()),
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let pairs = hs_pairs();
    let criteria: Vec<Criterion> = vec![
        ("transform matches direct summation", Box::new(transform_vs_naive)),
        ("energy preservation", Box::new(parseval)),
        ("HS norm closed form", Box::new(|| hs_closed_form(&pairs))),
        ("HS norms commute", Box::new(|| hs_commute(&pairs))),
        ("operator norm below HS norm", Box::new(|| op_norm_below_hs(&pairs))),
        ("uncertainty bound sweep", Box::new(uncertainty)),
        ("recovery convergence", Box::new(convergence)),
        ("noise error bound", Box::new(noise_bound)),
        ("64x64 synthetic recovery", Box::new(desk_reproduction)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("{} {:>2} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, n + 1, o.detail);
        failed += usize::from(!o.passed);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
