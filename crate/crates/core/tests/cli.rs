use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qft_uncertainty::synth_io::{read_image, read_metrics, write_image, ImageBuffer, Samples};

fn qftr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qftr")).args(args).output().expect("spawn qftr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn write_config(dir: &Path, body: &str) -> String {
    let p = dir.join("run.conf");
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

const SMALL: &str = "rows = 16\ncols = 16\nband = rect:2,2\nmissing = block:6,6,2,2\nseed = 4\n";

#[test]
fn recover_writes_every_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().join("o");
    let res = qftr(&["recover", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    for f in ["original.ppm", "masked.ppm", "recovered.ppm", "error.pgm", "metrics.csv", "config.txt"] {
        assert!(out.join(f).is_file(), "{f}");
    }
    let m = read_metrics(out.join("metrics.csv")).unwrap();
    assert_eq!(m.summary_value("converged"), Some("true"));
    assert!(m.rows.last().unwrap().true_error.unwrap() < 1e-6);
    let img = read_image(out.join("recovered.ppm")).unwrap();
    assert_eq!((img.rows(), img.cols(), img.channels()), (16, 16, 3));
    let echoed = fs::read_to_string(out.join("config.txt")).unwrap();
    assert!(echoed.contains("seed = 4") && echoed.contains(out.to_str().unwrap()));
}

#[test]
fn seed_override_changes_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    qftr(&["recover", "--config", &cfg, "--out", a.to_str().unwrap()]);
    qftr(&["recover", "--config", &cfg, "--out", b.to_str().unwrap(), "--seed", "5"]);
    assert_ne!(fs::read(a.join("original.ppm")).unwrap(), fs::read(b.join("original.ppm")).unwrap());
}

#[test]
fn unguaranteed_run_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "rows = 8\ncols = 8\nband = rect:2,2\nmissing = block:0,0,4,4\nmax_iters = 20\n",
    );
    let out = dir.path().join("o");
    let res = qftr(&["recover", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&res), 2);
    assert!(String::from_utf8_lossy(&res.stderr).contains("not guaranteed"));
    let m = read_metrics(out.join("metrics.csv")).unwrap();
    assert_eq!(m.summary_value("guaranteed"), Some("false"));
}

#[test]
fn usage_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.conf");
    assert_eq!(code(&qftr(&["recover", "--config", missing.to_str().unwrap()])), 1);
    let bad = write_config(dir.path(), "rows = 8\ncols = 8\nmissing = block:7,7,3,3\n");
    let res = qftr(&["recover", "--config", &bad, "--out", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(code(&res), 1);
    assert!(!dir.path().join("o").exists(), "nothing written for an invalid spec");
    assert_eq!(code(&qftr(&["frobnicate"])), 1);
    assert_eq!(code(&qftr(&["verify", "--dims", "8by8"])), 1);
    assert_eq!(code(&qftr(&["verify", "--dims", "32x32"])), 1);
    assert_eq!(code(&qftr(&["--help"])), 0);
    assert_eq!(code(&qftr(&["--version"])), 0);
}

#[test]
fn verify_summary_and_fault_injection() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("v.csv");
    let res = qftr(&["verify", "--dims", "6x6", "--trials", "50", "--seed", "2", "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&res), 0);
    let stdout = String::from_utf8(res.stdout).unwrap();
    assert_eq!(stdout.lines().filter(|l| l.starts_with("PASS")).count(), 7);
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("property,passed,cases,worst,tolerance\n"));
    assert!(text.ends_with("# all_passed=true\n"));

    let faulty = qftr(&["verify", "--dims", "6x6", "--trials", "50", "--inject-fault"]);
    assert_eq!(code(&faulty), 3);
    let stdout = String::from_utf8(faulty.stdout).unwrap();
    assert!(stdout.lines().any(|l| l.starts_with("FAIL parseval")));

    let vacuous = qftr(&["verify", "--trials", "0"]);
    assert_eq!(code(&vacuous), 0);
    assert!(String::from_utf8_lossy(&vacuous.stderr).contains("vacuous"));
}

#[test]
fn kernel_table_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("k.csv");
    let res = qftr(&["kernel", "--dims", "4x4", "--band", "rect:1,1", "--missing", "block:0,0,1,1", "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&res), 0);
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t_row,t_col,x_row,x_col,w,x,y,z");
    assert_eq!(lines.len(), 17);
    assert_eq!(lines[1], "0,0,0,0,0.5625,0,0,0");

    let full = qftr(&["kernel", "--dims", "4x4", "--band", "rect:1,1", "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&full), 0);
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 1 + 16 * 16);
    assert_eq!(code(&qftr(&["kernel", "--dims", "20x20", "--band", "rect:1,1", "--out", csv.to_str().unwrap()])), 1);
}

#[test]
fn qft_subcommand_on_gray_image() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.pgm");
    // constant image: the whole spectrum sits at the origin
    let img = ImageBuffer::new(4, 4, 1, Samples::U8(vec![51; 16])).unwrap();
    write_image(&img, &input).unwrap();
    let out = dir.path().join("spec.pgm");
    let res = qftr(&["qft", "--in", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let spec = read_image(&out).unwrap();
    let Samples::U8(px) = spec.samples() else { panic!("8-bit output") };
    // |F(0,0)| = 4 * 0.2 = 0.8 -> 204
    assert_eq!(px[0], 204);
    assert!(px[1..].iter().all(|&v| v == 0));
    assert_eq!(code(&qftr(&["qft", "--in", input.to_str().unwrap(), "--out", out.to_str().unwrap(), "--mode", "fancy"])), 1);
}
