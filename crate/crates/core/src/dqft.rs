//! Discrete right-sided quaternion Fourier transform.
//!
//! Forward:
//!
//! ```text
//! F[m₁,m₂] = 1/√(N₁N₂) Σ f[n₁,n₂] · e^{−i 2π n₁m₁/N₁} · e^{−j 2π n₂m₂/N₂}
//! ```
//!
//! Inverse applies `e^{+j …}` first and `e^{+i …}` second, both on the right.
//! Index `n₁` runs over rows, `n₂` over columns.
//!
//! The fast path splits the transform into two stages of complex FFTs. Writing
//! `f = a + b j` with `a, b ∈ span{1, i}`, right multiplication by `e^{−iθ}`
//! acts as `a e^{−iθ} + b e^{+iθ} j`, so the row stage is one forward and one
//! conjugate-sign complex transform. The column stage does the same with
//! `g = c + d i`, `c, d ∈ span{1, j}`, since `i e^{−jφ} = e^{+jφ} i`.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::quaternion::Quaternion;
use crate::signal::QSignal2D;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Forward => -1.0,
            Direction::Inverse => 1.0,
        }
    }
}

/// Precomputed complex FFTs for one grid size. Immutable and shareable.
#[derive(Clone)]
pub struct DqftPlan {
    rows: usize,
    cols: usize,
    // [forward, inverse] per axis
    row_axis: [Arc<dyn Fft<f64>>; 2],
    col_axis: [Arc<dyn Fft<f64>>; 2],
    scratch_len: usize,
}

impl fmt::Debug for DqftPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DqftPlan")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .finish()
    }
}

impl DqftPlan {
    /// # Panics
    /// If either dimension is zero.
    pub fn new(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "grid must be non-empty");
        let mut planner = FftPlanner::<f64>::new();
        let row_axis = [
            planner.plan_fft(rows, FftDirection::Forward),
            planner.plan_fft(rows, FftDirection::Inverse),
        ];
        let col_axis = [
            planner.plan_fft(cols, FftDirection::Forward),
            planner.plan_fft(cols, FftDirection::Inverse),
        ];
        let scratch_len = row_axis
            .iter()
            .chain(&col_axis)
            .map(|p| p.get_inplace_scratch_len())
            .max()
            .unwrap_or(0);
        Self {
            rows,
            cols,
            row_axis,
            col_axis,
            scratch_len,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// # Panics
    /// If `f` does not have the plan's dimensions.
    pub fn forward(&self, f: &QSignal2D) -> QSignal2D {
        self.execute(f, Direction::Forward)
    }

    /// # Panics
    /// If `spectrum` does not have the plan's dimensions.
    pub fn inverse(&self, spectrum: &QSignal2D) -> QSignal2D {
        self.execute(spectrum, Direction::Inverse)
    }

    pub fn execute(&self, f: &QSignal2D, dir: Direction) -> QSignal2D {
        assert_eq!(f.dims(), (self.rows, self.cols), "signal does not match plan");
        let mut out = f.clone();
        match dir {
            Direction::Forward => {
                self.i_stage(&mut out, dir);
                self.j_stage(&mut out, dir);
            }
            Direction::Inverse => {
                self.j_stage(&mut out, dir);
                self.i_stage(&mut out, dir);
            }
        }
        let norm = 1.0 / ((self.rows * self.cols) as f64).sqrt();
        for q in out.as_mut_slice() {
            *q = *q * norm;
        }
        out
    }

    fn pick(axis: &[Arc<dyn Fft<f64>>; 2], sign: f64) -> (&Arc<dyn Fft<f64>>, &Arc<dyn Fft<f64>>) {
        if sign < 0.0 {
            (&axis[0], &axis[1])
        } else {
            (&axis[1], &axis[0])
        }
    }

    /// Right multiplication by `e^{±i 2π n₁m₁/N₁}` summed over rows.
    fn i_stage(&self, g: &mut QSignal2D, dir: Direction) {
        let (rows, cols) = (self.rows, self.cols);
        let (same, flipped) = Self::pick(&self.row_axis, dir.sign());
        let mut a = vec![Complex64::default(); rows];
        let mut b = vec![Complex64::default(); rows];
        let mut scratch = vec![Complex64::default(); self.scratch_len];
        let data = g.as_mut_slice();
        for c in 0..cols {
            for r in 0..rows {
                let q = data[r * cols + c];
                a[r] = Complex64::new(q.w, q.x);
                b[r] = Complex64::new(q.y, q.z);
            }
            same.process_with_scratch(&mut a, &mut scratch);
            flipped.process_with_scratch(&mut b, &mut scratch);
            for r in 0..rows {
                // a + b j = (a.re + a.im i) + (b.re j + b.im k)
                data[r * cols + c] = Quaternion::new(a[r].re, a[r].im, b[r].re, b[r].im);
            }
        }
    }

    /// Right multiplication by `e^{±j 2π n₂m₂/N₂}` summed over columns.
    fn j_stage(&self, g: &mut QSignal2D, dir: Direction) {
        let cols = self.cols;
        let (same, flipped) = Self::pick(&self.col_axis, dir.sign());
        let mut c = vec![Complex64::default(); cols];
        let mut d = vec![Complex64::default(); cols];
        let mut scratch = vec![Complex64::default(); self.scratch_len];
        for row in g.as_mut_slice().chunks_exact_mut(cols) {
            for (n, q) in row.iter().enumerate() {
                // q = (w + y j) + (x − z j) i
                c[n] = Complex64::new(q.w, q.y);
                d[n] = Complex64::new(q.x, -q.z);
            }
            same.process_with_scratch(&mut c, &mut scratch);
            flipped.process_with_scratch(&mut d, &mut scratch);
            for (n, q) in row.iter_mut().enumerate() {
                *q = Quaternion::new(c[n].re, d[n].re, c[n].im, -d[n].im);
            }
        }
    }
}

/// `e^{±2π i nm/N}` angle with the product reduced modulo `N`.
#[inline]
pub(crate) fn twiddle_angle(n: usize, m: usize, len: usize) -> f64 {
    TAU * ((n * m) % len) as f64 / len as f64
}

pub fn qft_forward(f: &QSignal2D) -> QSignal2D {
    DqftPlan::new(f.rows(), f.cols()).forward(f)
}

pub fn qft_inverse(spectrum: &QSignal2D) -> QSignal2D {
    DqftPlan::new(spectrum.rows(), spectrum.cols()).inverse(spectrum)
}

/// Literal evaluation of the defining double sum, O((N₁N₂)²).
///
/// Exponentials are multiplied on the right in the written order: `i` then
/// `j` for the forward transform, `j` then `i` for the inverse.
pub fn qft_naive(f: &QSignal2D, dir: Direction) -> QSignal2D {
    let (rows, cols) = f.dims();
    let s = dir.sign();
    let norm = 1.0 / ((rows * cols) as f64).sqrt();
    QSignal2D::from_fn(rows, cols, |m1, m2| {
        let mut acc = Quaternion::ZERO;
        for n1 in 0..rows {
            let ei = Quaternion::exp_i(s * twiddle_angle(n1, m1, rows));
            for n2 in 0..cols {
                let ej = Quaternion::exp_j(s * twiddle_angle(n2, m2, cols));
                acc += match dir {
                    Direction::Forward => f[(n1, n2)] * ei * ej,
                    Direction::Inverse => f[(n1, n2)] * ej * ei,
                };
            }
        }
        acc * norm
    })
}
