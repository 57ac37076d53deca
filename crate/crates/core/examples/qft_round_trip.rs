//! Forward and inverse transforms on a random 12x16 signal, checked against
//! direct summation.

use qft_uncertainty::random::random_signal;
use qft_uncertainty::{qft_naive, Direction, DqftPlan, QSignal2D};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = random_signal(&mut rng, 12, 16);
    let plan = DqftPlan::new(12, 16);

    let spectrum = plan.forward(&f);
    let back = plan.inverse(&spectrum);
    let naive = qft_naive(&f, Direction::Forward);

    println!("‖f‖ = {:.12}", f.l2_norm());
    println!("‖F f‖ = {:.12}", spectrum.l2_norm());
    println!("max |F⁻¹F f − f| = {:.3e}", back.max_abs_diff(&f));
    println!("max |fast − naive| = {:.3e}", spectrum.max_abs_diff(&naive));

    let delta = QSignal2D::delta(4, 4, 1, 0);
    println!("spectrum of a delta at (1, 0):");
    let d = qft_naive(&delta, Direction::Forward);
    for r in 0..4 {
        let row: Vec<String> = (0..4).map(|c| format!("{:.3}", d[(r, c)])).collect();
        println!("  {}", row.join("  "));
    }
}
