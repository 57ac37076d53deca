//! Seeded generators for test signals, masks and noise.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::quaternion::Quaternion;
use crate::signal::{Mask, QSignal2D};

pub fn random_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    let mut n = || -> f64 { StandardNormal.sample(rng) };
    Quaternion::new(n(), n(), n(), n())
}

/// Signal with i.i.d. standard normal components.
pub fn random_signal<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> QSignal2D {
    QSignal2D::from_fn(rows, cols, |_, _| random_quaternion(rng))
}

/// Random signal rescaled to unit norm.
pub fn random_unit_signal<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> QSignal2D {
    loop {
        let f = random_signal(rng, rows, cols);
        let n = f.l2_norm();
        if n > 0.0 {
            return f.scale(1.0 / n);
        }
    }
}

/// Bernoulli mask whose density is itself drawn uniformly from `[0, 1)`.
pub fn random_mask<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Mask {
    let p: f64 = rng.random();
    Mask::from_fn(rows, cols, |_, _| rng.random::<f64>() < p)
}

/// Axis-aligned block of random position and size (possibly empty).
pub fn random_block_mask<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Mask {
    let h = rng.random_range(0..=rows);
    let w = rng.random_range(0..=cols);
    let r0 = rng.random_range(0..=rows - h);
    let c0 = rng.random_range(0..=cols - w);
    Mask::from_fn(rows, cols, |r, c| r >= r0 && r < r0 + h && c >= c0 && c < c0 + w)
}

/// Gaussian noise rescaled so that its norm is exactly `norm` (up to rounding).
pub fn gaussian_noise<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, norm: f64) -> QSignal2D {
    if norm == 0.0 {
        return QSignal2D::zeros(rows, cols);
    }
    random_unit_signal(rng, rows, cols).scale(norm)
}
