//! Concentration of a few signals and a randomized sweep of the bound
//! |T||W|/N ≥ (1 − ε_T − ε_W)².

use qft_uncertainty::synth_io::synth_bandlimited;
use qft_uncertainty::uncertainty::uncertainty_sweep;
use qft_uncertainty::{check_uncertainty, concentration, LimitingPair, MaskSpec, QSignal2D};

fn main() -> qft_uncertainty::Result<()> {
    let t: MaskSpec = "block:6,6,4,4".parse()?;
    let w: MaskSpec = "rect:2,2".parse()?;
    let pair = LimitingPair::from_specs(&t, &w, 16, 16)?;

    let signals = [
        ("delta in T", QSignal2D::delta(16, 16, 7, 7)),
        ("bandlimited", synth_bandlimited(16, 16, &w, 4)?),
        ("constant", QSignal2D::from_fn(16, 16, |_, _| qft_uncertainty::Quaternion::ONE)),
    ];
    for (name, f) in &signals {
        let r = concentration(f, &pair)?;
        let c = check_uncertainty(&r);
        println!(
            "{name:<12} ε_T={:.4} ε_W={:.4} lhs={:.4} rhs={:.4} holds={}",
            r.eps_t, r.eps_w, r.bound_lhs, r.bound_rhs, c.holds
        );
    }

    let sweep = uncertainty_sweep(16, 16, 2000, 42);
    println!(
        "\n{} random triples: {} violations, {} nontrivial, worst margin {:.3e}",
        sweep.trials, sweep.violations, sweep.nontrivial, sweep.worst_margin
    );
    Ok(())
}
