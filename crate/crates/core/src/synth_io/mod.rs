//! Test-signal synthesis, image conversion and metrics files.

mod image;
mod metrics;

pub use self::image::{
    image_to_qsignal, qsignal_to_image, read_image, write_image, ImageBuffer, RenderMode, Samples,
};
pub use self::metrics::{
    parse_metrics, read_metrics, render_metrics, write_metrics, MetricsFile, MetricsRow, METRICS_HEADER,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::limiting::{freq_limit, LimitingPair};
use crate::quaternion::Quaternion;
use crate::random::random_quaternion;
use crate::signal::{Mask, MaskSpec, QSignal2D};
use crate::DqftPlan;

/// `F_W f` for the band described by `w`.
pub fn bandlimit_project(f: &QSignal2D, w: &MaskSpec) -> Result<QSignal2D> {
    let (rows, cols) = f.dims();
    let pair = LimitingPair::new(Mask::empty(rows, cols), w.to_mask(rows, cols)?)?;
    freq_limit(f, &pair)
}

/// Unit-norm signal whose spectrum is i.i.d. Gaussian on `W` and zero elsewhere.
pub fn synth_bandlimited(rows: usize, cols: usize, w: &MaskSpec, seed: u64) -> Result<QSignal2D> {
    let band = w.to_mask(rows, cols)?;
    if band.count() == 0 {
        return Err(Error::Degenerate("empty band".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spectrum = QSignal2D::zeros(rows, cols);
    for cell in band.cells() {
        spectrum[cell] = random_quaternion(&mut rng);
    }
    let f = DqftPlan::new(rows, cols).inverse(&spectrum);
    let norm = f.l2_norm();
    if norm == 0.0 {
        return Err(Error::Degenerate("synthesized signal vanished".into()));
    }
    Ok(f.scale(1.0 / norm))
}

/// Pure-quaternion color texture with components inside `[0, 1]`.
///
/// A mid-gray offset `0.5(i + j + k)` plus a bandlimited pattern scaled so its
/// largest component is `0.4`. The offset is constant, so the result stays
/// bandlimited whenever `W` contains the zero frequency.
pub fn synth_texture(rows: usize, cols: usize, w: &MaskSpec, seed: u64) -> Result<QSignal2D> {
    let g = synth_bandlimited(rows, cols, w, seed)?;
    let peak = g.as_slice().iter().map(|q| q.max_abs_component()).fold(0.0, f64::max);
    let band = w.to_mask(rows, cols)?;
    let offset = if band.contains(0, 0) {
        Quaternion::new(0.0, 0.5, 0.5, 0.5)
    } else {
        Quaternion::ZERO
    };
    Ok(g.map(|q| offset + q * (0.4 / peak)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_signal;
    use crate::uncertainty::concentration;

    #[test]
    fn projection_is_idempotent_and_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let w: MaskSpec = "rect:2,3".parse().unwrap();
        let f = random_signal(&mut rng, 16, 16);
        let once = bandlimit_project(&f, &w).unwrap();
        assert!(once.l2_norm() < f.l2_norm());
        let twice = bandlimit_project(&once, &w).unwrap();
        assert!(twice.max_abs_diff(&once) < 1e-10);

        let spectrum = DqftPlan::new(16, 16).forward(&once);
        let band = w.to_mask(16, 16).unwrap();
        for r in 0..16 {
            for c in 0..16 {
                if !band.contains(r, c) {
                    assert!(spectrum[(r, c)].max_abs_component() < 1e-10);
                }
            }
        }
        assert!(matches!(bandlimit_project(&f, &"rect:9,0".parse().unwrap()), Err(Error::Spec(_))));
    }

    #[test]
    fn dc_only_band_gives_constant() {
        let f = synth_bandlimited(8, 8, &"cells:0,0".parse().unwrap(), 3).unwrap();
        let first = f.as_slice()[0];
        for q in f.as_slice() {
            assert!((*q - first).max_abs_component() < 1e-14);
        }
        assert!((f.l2_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn synthesized_signals_are_bandlimited_and_seeded() {
        let w: MaskSpec = "rect:3,3".parse().unwrap();
        let a = synth_bandlimited(16, 16, &w, 9).unwrap();
        let b = synth_bandlimited(16, 16, &w, 9).unwrap();
        let c = synth_bandlimited(16, 16, &w, 10).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let pair = LimitingPair::new(Mask::empty(16, 16), w.to_mask(16, 16).unwrap()).unwrap();
        assert!(concentration(&a, &pair).unwrap().eps_w < 1e-10);
        assert!(synth_bandlimited(4, 4, &"cells:".parse().unwrap(), 1).is_err());
    }

    #[test]
    fn texture_stays_in_range_and_band() {
        let w: MaskSpec = "rect:6,6".parse().unwrap();
        let t = synth_texture(64, 64, &w, 5).unwrap();
        for q in t.as_slice() {
            for v in [q.x, q.y, q.z] {
                assert!((0.0..=1.0).contains(&v));
            }
        }
        let proj = bandlimit_project(&t, &w).unwrap();
        assert!(proj.max_abs_diff(&t) < 1e-10);
    }
}
