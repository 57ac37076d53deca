//! Hamilton products, conjugates and the exponentials used by the transform.

use qft_uncertainty::Quaternion;

fn main() {
    let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
    println!("ij = {}   ji = {}", i * j, j * i);
    println!("jk = {}   ki = {}", j * k, k * i);
    println!("ijk = {}", i * j * k);

    let p = Quaternion::new(1.0, 2.0, -1.0, 0.5);
    let q = Quaternion::new(0.0, 1.0, 3.0, -2.0);
    println!("pq = {}", p * q);
    println!("qp = {}", q * p);
    println!("|pq| = {:.12}  |p||q| = {:.12}", (p * q).modulus(), p.modulus() * q.modulus());
    println!("p p̄ = {}", p * p.conj());

    let theta = 0.3;
    let a = Quaternion::exp_i(theta) * Quaternion::exp_j(theta);
    let b = Quaternion::exp_j(theta) * Quaternion::exp_i(theta);
    println!("e^(iθ) e^(jθ) = {a:.6}");
    println!("e^(jθ) e^(iθ) = {b:.6}");
}
