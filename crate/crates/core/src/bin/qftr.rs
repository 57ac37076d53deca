use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qft_uncertainty::experiment::{
    parse_dims, run_qft, run_recover, run_verify, write_kernel_table, ExperimentConfig, Fault, VerifyOptions, EXIT_OK,
    EXIT_USAGE,
};
use qft_uncertainty::synth_io::RenderMode;
use qft_uncertainty::{LimitingPair, Mask, MaskSpec, Result};

#[derive(Parser)]
#[command(name = "qftr", version, about = "Quaternion Fourier transforms, limiting operators and recovery")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a recovery experiment described by a config file.
    Recover {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory (overrides `out` in the config).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transform an image and write the chosen rendering.
    Qft {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        inverse: bool,
        /// scalar, vector or modulus
        #[arg(long, default_value = "modulus")]
        mode: String,
    },
    /// Check transform, norm and uncertainty properties on random inputs.
    Verify {
        #[arg(long, default_value = "8x8")]
        dims: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Summary CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Tabulate the limiting kernel for every t in T.
    Kernel {
        #[arg(long, default_value = "8x8")]
        dims: String,
        #[arg(long)]
        band: String,
        /// Defaults to the whole grid.
        #[arg(long)]
        missing: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Recover { config, seed, out } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(o) = out {
                cfg.out_dir = o;
            }
            let outcome = run_recover(&cfg)?;
            let r = &outcome.report;
            println!(
                "rho={:.6} guaranteed={} converged={} iterations={} error={:.3e}",
                r.rho, r.guaranteed, r.converged, r.iterations_run, outcome.final_error
            );
            if !r.guaranteed {
                eprintln!("warning: |T||W| >= N, convergence is not guaranteed");
            }
            Ok(outcome.exit_code)
        }
        Command::Qft {
            input,
            out,
            inverse,
            mode,
        } => {
            let mode: RenderMode = mode.parse()?;
            run_qft(&input, &out, inverse, mode)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            dims,
            trials,
            seed,
            out,
            inject_fault,
        } => {
            let (rows, cols) = parse_dims(&dims)?;
            if trials == 0 {
                eprintln!("warning: zero trials, every property passes vacuously");
            }
            let outcome = run_verify(&VerifyOptions {
                rows,
                cols,
                trials,
                seed,
                fault: inject_fault.then_some(Fault::ScaledForward),
            })?;
            print!("{}", outcome.render_text());
            if let Some(path) = out {
                outcome.write_csv(&path)?;
            }
            Ok(outcome.exit_code())
        }
        Command::Kernel {
            dims,
            band,
            missing,
            out,
        } => {
            let (rows, cols) = parse_dims(&dims)?;
            let w: MaskSpec = band.parse()?;
            let pair = match missing {
                Some(t) => LimitingPair::from_specs(&t.parse()?, &w, rows, cols)?,
                None => LimitingPair::new(Mask::full(rows, cols), w.to_mask(rows, cols)?)?,
            };
            write_kernel_table(&pair, &out)?;
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
