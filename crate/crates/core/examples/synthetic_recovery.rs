//! Recovering a bandlimited 8x8 signal with ρ = 0.5, printing the error
//! after each iteration next to the geometric bound.

use qft_uncertainty::recovery::recover_tracking;
use qft_uncertainty::synth_io::synth_bandlimited;
use qft_uncertainty::{simulate_received, LimitingPair, MaskSpec};

fn main() -> qft_uncertainty::Result<()> {
    let t: MaskSpec = "block:3,3,2,2".parse()?;
    let w: MaskSpec = "cells:0,0;0,7;7,0;7,7".parse()?;
    let pair = LimitingPair::from_specs(&t, &w, 8, 8)?;
    let f = synth_bandlimited(8, 8, &w, 1)?;

    let problem = simulate_received(&f, &pair, None)?.with_max_iters(40);
    let report = recover_tracking(&problem, Some(&f));
    println!("ρ = {}  C = {:?}", report.rho, report.error_bound_c);
    let errors = report.true_error_history.as_deref().unwrap_or(&[]);
    for (n, e) in errors.iter().enumerate().take(20) {
        println!("n={:>2}  ‖s−f‖={:.3e}  ρⁿ⁺¹‖f‖={:.3e}", n + 1, e, report.rho.powi(n as i32 + 1));
    }
    println!("converged={} after {} iterations", report.converged, report.iterations_run);
    Ok(())
}
