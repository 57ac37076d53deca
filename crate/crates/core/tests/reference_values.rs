//! Values computed by an independent implementation (plain quaternion
//! arithmetic and dense real-matrix SVD) and frozen here.

use qft_uncertainty::limiting::{kernel_eval, op_norm_estimate};
use qft_uncertainty::{qft_forward, qft_inverse, LimitingPair, MaskSpec, QSignal2D, Quaternion};

fn close(a: Quaternion, b: [f64; 4], tol: f64) {
    let d = (a - Quaternion::from_array(b)).max_abs_component();
    assert!(d < tol, "{a} vs {b:?}");
}

fn ramp() -> QSignal2D {
    QSignal2D::from_fn(3, 4, |r, c| Quaternion::new(r as f64 + 1.0, c as f64 - 1.0, (r * c) as f64, 0.5))
}

fn pair(rows: usize, cols: usize, t: &str, w: &str) -> LimitingPair {
    LimitingPair::from_specs(&t.parse::<MaskSpec>().unwrap(), &w.parse::<MaskSpec>().unwrap(), rows, cols).unwrap()
}

#[test]
fn ramp_spectrum() {
    let s = qft_forward(&ramp());
    close(s[(0, 0)], [6.92820323027551, 1.7320508075688774, 5.196152422706632, 1.7320508075688774], 1e-12);
    close(s[(1, 2)], [0.0, 0.0, 0.8660254037844393, 0.5], 1e-12);
    close(s[(2, 3)], [-0.8660254037844393, 0.5, 0.8660254037844373, -0.5], 1e-12);
}

#[test]
fn ramp_inverse_transform() {
    let s = qft_inverse(&ramp());
    close(s[(1, 1)], [-0.8660254037844387, -0.5, 0.8660254037844389, -0.5], 1e-12);
}

#[test]
fn kernel_symmetric_band() {
    let p = pair(16, 16, "block:0,0,16,16", "rect:2,2");
    close(kernel_eval(&p, (0, 0), (0, 1)).unwrap(), [0.08324165287882163, 0.0, 0.0, 0.0], 1e-14);
    close(kernel_eval(&p, (1, 2), (3, 5)).unwrap(), [0.0033115588477444185, 0.0, 0.0, 0.0], 1e-14);
    close(kernel_eval(&p, (15, 14), (2, 9)).unwrap(), [-0.0016180217280199363, 0.0, 0.0, 0.0], 1e-14);
}

#[test]
fn kernel_asymmetric_band() {
    let p = pair(8, 8, "block:0,0,8,8", "cells:0,1;2,3;5,0");
    close(
        kernel_eval(&p, (1, 2), (3, 5)).unwrap(),
        [-0.0220970869120796, 0.015625, 0.0220970869120796, 0.0],
        1e-14,
    );
    close(kernel_eval(&p, (0, 7), (6, 1)).unwrap(), [0.0, -0.015625, 0.03125, 0.0], 1e-14);
}

#[test]
fn operator_norms_match_svd() {
    for (rows, cols, t, w, sigma) in [
        (8, 8, "block:3,3,2,2", "cells:0,0;0,7;7,0;7,7", 0.4797706750760096),
        (6, 6, "block:1,1,3,2", "cells:0,0;0,1;5,5", 0.62820036337642),
        (8, 8, "block:0,0,2,2", "rect:1,1", 0.6767766952966373),
        (16, 16, "block:4,4,4,4", "rect:2,2", 0.8914513033859024),
    ] {
        let est = op_norm_estimate(&pair(rows, cols, t, w), 500);
        assert!((est - sigma).abs() < 1e-8, "{t} {w}: {est} vs {sigma}");
    }
}
