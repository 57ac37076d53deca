//! Space and frequency limiting on a 16x16 grid, and the power-iteration
//! estimate of ‖F_W S_T‖ next to its Hilbert–Schmidt norm.

use qft_uncertainty::limiting::{compose_fw_st, freq_limit, hs_norm, op_norm_estimate, space_limit};
use qft_uncertainty::random::random_signal;
use qft_uncertainty::{LimitingPair, MaskSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qft_uncertainty::Result<()> {
    let t: MaskSpec = "block:4,4,4,4".parse()?;
    let w: MaskSpec = "rect:2,2".parse()?;
    let pair = LimitingPair::from_specs(&t, &w, 16, 16)?;
    println!("|T| = {}, |W| = {}, N = {}", pair.t_mask().count(), pair.w_mask().count(), pair.n_px());

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let f = random_signal(&mut rng, 16, 16);
    let st = space_limit(&f, &pair)?;
    let fw = freq_limit(&f, &pair)?;
    println!("‖f‖ = {:.4}  ‖S_T f‖ = {:.4}  ‖F_W f‖ = {:.4}", f.l2_norm(), st.l2_norm(), fw.l2_norm());
    println!("F_W idempotent: {:.3e}", freq_limit(&fw, &pair)?.max_abs_diff(&fw));
    println!("‖F_W S_T f‖ / ‖f‖ = {:.4}", compose_fw_st(&f, &pair)?.l2_norm() / f.l2_norm());

    println!("HS norm      = {:.6}", hs_norm(&pair));
    println!("operator norm ≈ {:.6}", op_norm_estimate(&pair, 200));
    Ok(())
}
