//! Space limiting `S_T`, frequency limiting `F_W`, the kernel of their
//! composition and Hilbert–Schmidt / operator norm computations.
//!
//! With the unitary transform the discrete kernel is
//!
//! ```text
//! k(t, x) = 1/N Σ_{ω ∈ W} e^{−i t₁ω₁} e^{−j t₂ω₂} e^{j x₂ω₂} e^{i x₁ω₁},   t ∈ T
//! ```
//!
//! (angles `2π n m / N` per axis), so `(F_W S_T f)(x) = Σ_t f(t) k(t, x)` and
//! `‖F_W S_T‖²_HS = |T||W| / N` where `N` is the number of cells.

use std::f64::consts::PI;

use crate::dqft::{twiddle_angle, DqftPlan};
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::signal::{apply_mask, Mask, MaskSpec, QSignal2D};

/// Largest grid (in cells) on which [`hs_norm_check`] runs the brute force.
pub const HS_BRUTE_FORCE_MAX_CELLS: usize = 144;

/// Spatial set `T`, spectral set `W` and a transform plan for their grid.
#[derive(Debug, Clone)]
pub struct LimitingPair {
    t_mask: Mask,
    w_mask: Mask,
    w_spec: Option<MaskSpec>,
    plan: DqftPlan,
}

impl LimitingPair {
    pub fn new(t_mask: Mask, w_mask: Mask) -> Result<Self> {
        if t_mask.dims() != w_mask.dims() {
            return Err(Error::Shape {
                expected: t_mask.dims(),
                actual: w_mask.dims(),
            });
        }
        let plan = DqftPlan::new(t_mask.rows(), t_mask.cols());
        Ok(Self {
            t_mask,
            w_mask,
            w_spec: None,
            plan,
        })
    }

    /// Builds both masks from specs; keeps the `W` spec for [`kernel_rect_sinc`].
    pub fn from_specs(t_spec: &MaskSpec, w_spec: &MaskSpec, rows: usize, cols: usize) -> Result<Self> {
        let mut pair = Self::new(t_spec.to_mask(rows, cols)?, w_spec.to_mask(rows, cols)?)?;
        pair.w_spec = Some(w_spec.clone());
        Ok(pair)
    }

    pub fn t_mask(&self) -> &Mask {
        &self.t_mask
    }

    pub fn w_mask(&self) -> &Mask {
        &self.w_mask
    }

    pub fn w_spec(&self) -> Option<&MaskSpec> {
        self.w_spec.as_ref()
    }

    pub fn plan(&self) -> &DqftPlan {
        &self.plan
    }

    pub fn dims(&self) -> (usize, usize) {
        self.t_mask.dims()
    }

    pub fn n_px(&self) -> usize {
        self.t_mask.rows() * self.t_mask.cols()
    }

    /// `√(|T||W| / N)`, the closed-form HS norm and contraction ratio.
    pub fn rho(&self) -> f64 {
        hs_norm(self)
    }

    fn check(&self, f: &QSignal2D) -> Result<()> {
        let (r, c) = self.dims();
        f.check_dims(r, c)
    }
}

/// `χ_T · f`.
pub fn space_limit(f: &QSignal2D, pair: &LimitingPair) -> Result<QSignal2D> {
    apply_mask(f, &pair.t_mask)
}

/// Inverse transform of the spectrum restricted to `W`.
pub fn freq_limit(f: &QSignal2D, pair: &LimitingPair) -> Result<QSignal2D> {
    pair.check(f)?;
    let spectrum = apply_mask(&pair.plan.forward(f), &pair.w_mask)?;
    Ok(pair.plan.inverse(&spectrum))
}

/// `S_T F_W f`, the operator iterated during recovery.
pub fn compose_st_fw(f: &QSignal2D, pair: &LimitingPair) -> Result<QSignal2D> {
    space_limit(&freq_limit(f, pair)?, pair)
}

/// `F_W S_T f`.
pub fn compose_fw_st(f: &QSignal2D, pair: &LimitingPair) -> Result<QSignal2D> {
    freq_limit(&space_limit(f, pair)?, pair)
}

fn check_cell(pair: &LimitingPair, (r, c): (usize, usize)) -> Result<()> {
    let (rows, cols) = pair.dims();
    if r >= rows || c >= cols {
        return Err(Error::Index {
            row: r,
            col: c,
            rows,
            cols,
        });
    }
    Ok(())
}

/// The kernel without the `t ∈ T` restriction, summed in the written order.
pub fn kernel_unrestricted(pair: &LimitingPair, t: (usize, usize), x: (usize, usize)) -> Result<Quaternion> {
    check_cell(pair, t)?;
    check_cell(pair, x)?;
    let (rows, cols) = pair.dims();
    let sum: Quaternion = pair
        .w_mask
        .cells()
        .map(|(w1, w2)| {
            Quaternion::exp_i(-twiddle_angle(t.0, w1, rows))
                * Quaternion::exp_j(-twiddle_angle(t.1, w2, cols))
                * Quaternion::exp_j(twiddle_angle(x.1, w2, cols))
                * Quaternion::exp_i(twiddle_angle(x.0, w1, rows))
        })
        .sum();
    Ok(sum / pair.n_px() as f64)
}

/// Kernel of `F_W S_T`: zero when `t ∉ T`.
pub fn kernel_eval(pair: &LimitingPair, t: (usize, usize), x: (usize, usize)) -> Result<Quaternion> {
    check_cell(pair, t)?;
    check_cell(pair, x)?;
    if !pair.t_mask.contains(t.0, t.1) {
        return Ok(Quaternion::ZERO);
    }
    kernel_unrestricted(pair, t, x)
}

/// `sin(Ω u) / (π u)`, continuous at `u = 0`.
pub fn sinc(omega: f64, u: f64) -> f64 {
    if u == 0.0 {
        omega / PI
    } else {
        (omega * u).sin() / (PI * u)
    }
}

/// Per-axis angular half-bandwidths `(Ω₁, Ω₂)` of a centered rectangle with
/// `2h + 1` bins per axis: `Ω = π (2h + 1) / N`.
pub fn rect_band_omegas(pair: &LimitingPair) -> Result<(f64, f64)> {
    match pair.w_spec {
        Some(MaskSpec::CenteredRect {
            half_height,
            half_width,
        }) => {
            let (rows, cols) = pair.dims();
            Ok((
                PI * (2 * half_height + 1) as f64 / rows as f64,
                PI * (2 * half_width + 1) as f64 / cols as f64,
            ))
        }
        _ => Err(Error::Spec("W is not a centered rectangle".into())),
    }
}

/// Separable continuous sinc kernel `sinc_Ω₁(t₁ − x₁) sinc_Ω₂(t₂ − x₂)` for a
/// centered rectangular band. Zero when `t ∉ T`.
pub fn kernel_rect_sinc(pair: &LimitingPair, t: (usize, usize), x: (usize, usize)) -> Result<Quaternion> {
    let (o1, o2) = rect_band_omegas(pair)?;
    check_cell(pair, t)?;
    check_cell(pair, x)?;
    if !pair.t_mask.contains(t.0, t.1) {
        return Ok(Quaternion::ZERO);
    }
    let u1 = t.0 as f64 - x.0 as f64;
    let u2 = t.1 as f64 - x.1 as f64;
    Ok(Quaternion::real(sinc(o1, u1) * sinc(o2, u2)))
}

/// Upper limit of the radial integral in [`kernel_disc`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RadialLimit {
    /// Integrate `r` over `[0, 1]` regardless of the band radius.
    #[default]
    Unit,
    /// Integrate `r` over `[0, radius]`.
    Radius,
}

/// Continuous-domain disc-band kernel
///
/// ```text
/// k(t, x) = 1/(2π)² ∫₀^{2π} ∫₀^{R} e^{−i t₁ r cos θ} e^{j (x₂−t₂) r sin θ} e^{i x₁ r cos θ} r dr dθ
/// ```
///
/// with `R = 1` ([`RadialLimit::Unit`]) or `R = radius`. Gauss–Legendre in
/// `r`, trapezoid in `θ`; both resolutions double until the result moves by
/// less than `1e−10`.
pub fn kernel_disc(radius: f64, t: [f64; 2], x: [f64; 2], limit: RadialLimit) -> Quaternion {
    let upper = match limit {
        RadialLimit::Unit => 1.0,
        RadialLimit::Radius => radius,
    };
    if upper <= 0.0 {
        return Quaternion::ZERO;
    }
    let mut nr = 16;
    let mut nt = 32;
    let mut prev = disc_quadrature(upper, t, x, nr, nt);
    loop {
        nr *= 2;
        nt *= 2;
        let next = disc_quadrature(upper, t, x, nr, nt);
        if (next - prev).max_abs_component() < 1e-10 || nr >= 1024 {
            return next;
        }
        prev = next;
    }
}

fn disc_quadrature(upper: f64, t: [f64; 2], x: [f64; 2], nr: usize, nt: usize) -> Quaternion {
    let (nodes, weights) = gauss_legendre(nr);
    let dtheta = 2.0 * PI / nt as f64;
    let mut acc = Quaternion::ZERO;
    for k in 0..nt {
        let (s, c) = (k as f64 * dtheta).sin_cos();
        let mut ring = Quaternion::ZERO;
        for (&u, &wgt) in nodes.iter().zip(&weights) {
            let r = 0.5 * upper * (u + 1.0);
            let q = Quaternion::exp_i(-t[0] * r * c)
                * Quaternion::exp_j((x[1] - t[1]) * r * s)
                * Quaternion::exp_i(x[0] * r * c);
            ring += q * (wgt * r);
        }
        acc += ring;
    }
    acc * (0.5 * upper * dtheta / (4.0 * PI * PI))
}

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
pub(crate) fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Closed-form `‖F_W S_T‖_HS = √(|T||W| / N)`.
pub fn hs_norm(pair: &LimitingPair) -> f64 {
    (pair.t_mask.count() as f64 * pair.w_mask.count() as f64 / pair.n_px() as f64).sqrt()
}

/// Which composition to sum the kernel of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Composition {
    /// `F_W S_T`: `t` restricted to `T`, `x` free.
    FwSt,
    /// `S_T F_W`: `x` restricted to `T`, `t` free.
    StFw,
}

/// Per-cell kernel factors `e^{−i t₁ω₁} e^{−j t₂ω₂}` and `e^{j x₂ω₂} e^{i x₁ω₁}`
/// for every `ω ∈ W`, so that `k(t, x) = 1/N Σ_ω left[t][ω] · right[x][ω]`.
struct KernelTable {
    left: Vec<Vec<Quaternion>>,
    right: Vec<Vec<Quaternion>>,
    scale: f64,
}

impl KernelTable {
    fn new(pair: &LimitingPair) -> Self {
        let (rows, cols) = pair.dims();
        let band: Vec<(usize, usize)> = pair.w_mask.cells().collect();
        let mut left = Vec::with_capacity(rows * cols);
        let mut right = Vec::with_capacity(rows * cols);
        for n1 in 0..rows {
            for n2 in 0..cols {
                left.push(
                    band.iter()
                        .map(|&(w1, w2)| {
                            Quaternion::exp_i(-twiddle_angle(n1, w1, rows))
                                * Quaternion::exp_j(-twiddle_angle(n2, w2, cols))
                        })
                        .collect(),
                );
                right.push(
                    band.iter()
                        .map(|&(w1, w2)| {
                            Quaternion::exp_j(twiddle_angle(n2, w2, cols))
                                * Quaternion::exp_i(twiddle_angle(n1, w1, rows))
                        })
                        .collect(),
                );
            }
        }
        Self {
            left,
            right,
            scale: 1.0 / (rows * cols) as f64,
        }
    }

    fn kernel(&self, t: usize, x: usize) -> Quaternion {
        let sum: Quaternion = self.left[t].iter().zip(&self.right[x]).map(|(a, b)| *a * *b).sum();
        sum * self.scale
    }
}

/// `(Σ |k(t, x)|²)^{1/2}` by explicit kernel summation over the grid.
pub fn hs_norm_brute_force(pair: &LimitingPair, which: Composition) -> f64 {
    if pair.t_mask.count() == 0 || pair.w_mask.count() == 0 {
        return 0.0;
    }
    let table = KernelTable::new(pair);
    let n = pair.n_px();
    let cols = pair.dims().1;
    let mut total = 0.0;
    for fixed in pair.t_mask.cells().map(|(r, c)| r * cols + c) {
        for free in 0..n {
            let k = match which {
                Composition::FwSt => table.kernel(fixed, free),
                Composition::StFw => table.kernel(free, fixed),
            };
            total += k.norm_sqr();
        }
    }
    total.sqrt()
}

/// Closed form next to both brute-force sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsCheck {
    pub closed_form: f64,
    pub fw_st: f64,
    pub st_fw: f64,
}

impl HsCheck {
    /// Largest disagreement among the three values.
    pub fn max_deviation(&self) -> f64 {
        (self.closed_form - self.fw_st)
            .abs()
            .max((self.closed_form - self.st_fw).abs())
            .max((self.fw_st - self.st_fw).abs())
    }
}

/// Brute-force verification of the HS identities; `None` above
/// [`HS_BRUTE_FORCE_MAX_CELLS`] cells.
pub fn hs_norm_check(pair: &LimitingPair) -> Option<HsCheck> {
    if pair.n_px() > HS_BRUTE_FORCE_MAX_CELLS {
        return None;
    }
    Some(HsCheck {
        closed_form: hs_norm(pair),
        fw_st: hs_norm_brute_force(pair, Composition::FwSt),
        st_fw: hs_norm_brute_force(pair, Composition::StFw),
    })
}

/// Deterministic start vector: all ones with a small index-dependent ripple.
fn power_seed(rows: usize, cols: usize) -> QSignal2D {
    let mut k = 0usize;
    QSignal2D::from_fn(rows, cols, |_, _| {
        let mut comp = || {
            k += 1;
            1.0 + 1e-3 * ((k * 7919) % 101) as f64 / 101.0
        };
        Quaternion::new(comp(), comp(), comp(), comp())
    })
}

/// Power-iteration lower bound on `‖S_T F_W‖` over the real coordinate space.
///
/// Iterates `g ← (F_W S_T)(S_T F_W) g`; the returned value is the largest
/// `‖S_T F_W g‖ / ‖g‖` seen.
pub fn op_norm_estimate(pair: &LimitingPair, iterations: usize) -> f64 {
    let (rows, cols) = pair.dims();
    let mut g = power_seed(rows, cols);
    let mut best = 0.0f64;
    for _ in 0..iterations.max(1) {
        let gn = g.l2_norm();
        if gn == 0.0 {
            break;
        }
        g = g.scale(1.0 / gn);
        let h = compose_st_fw(&g, pair).expect("dims match");
        best = best.max(h.l2_norm());
        g = compose_fw_st(&h, pair).expect("dims match");
    }
    best
}
