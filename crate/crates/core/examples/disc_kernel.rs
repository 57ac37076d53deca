//! Continuous disc-band kernel evaluated by quadrature.

use qft_uncertainty::limiting::{kernel_disc, RadialLimit};

fn main() {
    let t = [0.0, 0.0];
    for radius in [1.0, 2.0] {
        for limit in [RadialLimit::Unit, RadialLimit::Radius] {
            println!("R = {radius}, {limit:?}");
            for x1 in [0.0, 0.5, 1.0, 2.0] {
                let k = kernel_disc(radius, t, [x1, 0.5], limit);
                println!("  x = ({x1}, 0.5)  k = {k:.8}");
            }
        }
    }
    // at the origin the unit-limit kernel is the disc area over (2π)²
    let k0 = kernel_disc(1.0, t, t, RadialLimit::Unit);
    println!("k(0,0) = {:.12}  1/(4π) = {:.12}", k0.w, 1.0 / (4.0 * std::f64::consts::PI));
}
