//! Quaternion-valued 2D signals on a finite grid, masks, norms and inner
//! products.
//!
//! Norms are plain (unnormalized) sums over cells. The discrete measure of a
//! set is its cell count.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Row-major `rows × cols` grid of quaternions.
#[derive(Debug, Clone, PartialEq)]
pub struct QSignal2D {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QSignal2D {
    pub fn new(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Spec(format!("grid must be non-empty, got {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Spec(format!(
                "data length {} does not match {rows}x{cols}",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().position(|q| !q.is_finite()) {
            return Err(Error::Spec(format!("non-finite sample at flat index {bad}")));
        }
        Ok(Self { rows, cols, data })
    }

    /// # Panics
    /// If either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "grid must be non-empty");
        Self {
            rows,
            cols,
            data: vec![Quaternion::ZERO; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut out = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.data[r * cols + c] = f(r, c);
            }
        }
        out
    }

    /// Kronecker delta at `(row, col)`.
    pub fn delta(rows: usize, cols: usize, row: usize, col: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        out[(row, col)] = Quaternion::ONE;
        out
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Quaternion] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<Quaternion> {
        self.data
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().copied().map(f).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|q| q * s)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest per-component absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).max_abs_component())
            .fold(0.0, f64::max)
    }

    pub(crate) fn check_dims(&self, rows: usize, cols: usize) -> Result<()> {
        if self.dims() != (rows, cols) {
            return Err(Error::Shape {
                expected: (rows, cols),
                actual: self.dims(),
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for QSignal2D {
    type Output = Quaternion;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        assert!(r < self.rows && c < self.cols, "cell ({r}, {c}) out of range");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QSignal2D {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        assert!(r < self.rows && c < self.cols, "cell ({r}, {c}) out of range");
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &QSignal2D {
    type Output = QSignal2D;
    fn add(self, rhs: &QSignal2D) -> QSignal2D {
        assert_eq!(self.dims(), rhs.dims(), "shape mismatch");
        QSignal2D {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl Sub for &QSignal2D {
    type Output = QSignal2D;
    fn sub(self, rhs: &QSignal2D) -> QSignal2D {
        assert_eq!(self.dims(), rhs.dims(), "shape mismatch");
        QSignal2D {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect(),
        }
    }
}

pub fn l2_norm(f: &QSignal2D) -> f64 {
    f.l2_norm()
}

/// `⟨f, g⟩ = Σ f[n] · conj(g[n])`.
pub fn inner_product(f: &QSignal2D, g: &QSignal2D) -> Result<Quaternion> {
    g.check_dims(f.rows, f.cols)?;
    Ok(f.data.iter().zip(&g.data).map(|(a, b)| *a * b.conj()).sum())
}

/// Zeroes every cell outside the mask.
pub fn apply_mask(f: &QSignal2D, m: &Mask) -> Result<QSignal2D> {
    f.check_dims(m.rows, m.cols)?;
    Ok(QSignal2D {
        rows: f.rows,
        cols: f.cols,
        data: f
            .data
            .iter()
            .zip(&m.members)
            .map(|(q, &keep)| if keep { *q } else { Quaternion::ZERO })
            .collect(),
    })
}

/// Signed frequency of natural-order index `m` on an axis of length `n`:
/// `m − n` when `2m ≥ n`, else `m`.
#[inline]
pub fn signed_index(m: usize, n: usize) -> i64 {
    if 2 * m >= n {
        m as i64 - n as i64
    } else {
        m as i64
    }
}

/// A set of grid cells with its cell count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    rows: usize,
    cols: usize,
    members: Vec<bool>,
    count: usize,
}

impl Mask {
    pub fn from_members(rows: usize, cols: usize, members: Vec<bool>) -> Result<Self> {
        if rows == 0 || cols == 0 || members.len() != rows * cols {
            return Err(Error::Spec(format!(
                "mask of {} cells does not fit a {rows}x{cols} grid",
                members.len()
            )));
        }
        let count = members.iter().filter(|&&b| b).count();
        Ok(Self {
            rows,
            cols,
            members,
            count,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut members = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                members.push(f(r, c));
            }
        }
        let count = members.iter().filter(|&&b| b).count();
        Self {
            rows,
            cols,
            members,
            count,
        }
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| true)
    }

    pub fn empty(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| false)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Number of member cells.
    #[inline]
    pub fn count(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn contains(&self, r: usize, c: usize) -> bool {
        r < self.rows && c < self.cols && self.members[r * self.cols + c]
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    /// Member cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let cols = self.cols;
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| (i / cols, i % cols))
    }

    pub fn complement(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| !self.contains(r, c))
    }
}

/// Concrete encodings of spatial and spectral sets.
#[derive(Debug, Clone, PartialEq)]
pub enum MaskSpec {
    /// Axis-aligned block with top-left corner `(row, col)`.
    Block {
        row: usize,
        col: usize,
        height: usize,
        width: usize,
    },
    /// Cells whose signed indices lie in `[−half_height, half_height] × [−half_width, half_width]`.
    CenteredRect { half_height: usize, half_width: usize },
    /// Cells within Euclidean distance `radius` of `(row, col)`.
    Disc { row: usize, col: usize, radius: f64 },
    Explicit(Vec<(usize, usize)>),
}

impl MaskSpec {
    pub fn to_mask(&self, rows: usize, cols: usize) -> Result<Mask> {
        mask_from_spec(self, rows, cols)
    }
}

pub fn mask_from_spec(spec: &MaskSpec, rows: usize, cols: usize) -> Result<Mask> {
    if rows == 0 || cols == 0 {
        return Err(Error::Spec(format!("grid must be non-empty, got {rows}x{cols}")));
    }
    let oob = |what: &str| Err(Error::Spec(format!("{what} does not fit a {rows}x{cols} grid")));
    match *spec {
        MaskSpec::Block {
            row,
            col,
            height,
            width,
        } => {
            if row + height > rows || col + width > cols {
                return oob(&format!("{spec}"));
            }
            Ok(Mask::from_fn(rows, cols, |r, c| {
                (row..row + height).contains(&r) && (col..col + width).contains(&c)
            }))
        }
        MaskSpec::CenteredRect {
            half_height,
            half_width,
        } => {
            if 2 * half_height + 1 > rows || 2 * half_width + 1 > cols {
                return oob(&format!("{spec}"));
            }
            let (hh, hw) = (half_height as i64, half_width as i64);
            Ok(Mask::from_fn(rows, cols, |r, c| {
                signed_index(r, rows).abs() <= hh && signed_index(c, cols).abs() <= hw
            }))
        }
        MaskSpec::Disc { row, col, radius } => {
            if row >= rows || col >= cols || !radius.is_finite() || radius < 0.0 {
                return oob(&format!("{spec}"));
            }
            let r2 = radius * radius;
            Ok(Mask::from_fn(rows, cols, |r, c| {
                let dr = r as f64 - row as f64;
                let dc = c as f64 - col as f64;
                dr * dr + dc * dc <= r2
            }))
        }
        MaskSpec::Explicit(ref cells) => {
            let mut members = vec![false; rows * cols];
            for &(r, c) in cells {
                if r >= rows || c >= cols {
                    return oob(&format!("cell ({r}, {c})"));
                }
                members[r * cols + c] = true;
            }
            Mask::from_members(rows, cols, members)
        }
    }
}

impl fmt::Display for MaskSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaskSpec::Block {
                row,
                col,
                height,
                width,
            } => write!(f, "block:{row},{col},{height},{width}"),
            MaskSpec::CenteredRect {
                half_height,
                half_width,
            } => write!(f, "rect:{half_height},{half_width}"),
            MaskSpec::Disc { row, col, radius } => write!(f, "disc:{row},{col},{radius}"),
            MaskSpec::Explicit(cells) => {
                f.write_str("cells:")?;
                for (i, (r, c)) in cells.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{r},{c}")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses `block:R,C,H,W`, `rect:HH,HW`, `disc:R,C,RADIUS` or
/// `cells:R,C;R,C;...` (an empty cell list is allowed).
impl FromStr for MaskSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Spec(format!("missing ':' in mask spec {s:?}")))?;
        let bad = || Error::Spec(format!("malformed mask spec {s:?}"));
        let ints = |a: &str| -> Result<Vec<usize>> {
            a.split(',')
                .map(|v| v.trim().parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        match kind.trim() {
            "block" => match ints(args)?.as_slice() {
                &[row, col, height, width] => Ok(MaskSpec::Block {
                    row,
                    col,
                    height,
                    width,
                }),
                _ => Err(bad()),
            },
            "rect" => match *ints(args)?.as_slice() {
                [half_height, half_width] => Ok(MaskSpec::CenteredRect {
                    half_height,
                    half_width,
                }),
                [half] => Ok(MaskSpec::CenteredRect {
                    half_height: half,
                    half_width: half,
                }),
                _ => Err(bad()),
            },
            "disc" => {
                let parts: Vec<&str> = args.split(',').map(str::trim).collect();
                if parts.len() != 3 {
                    return Err(bad());
                }
                Ok(MaskSpec::Disc {
                    row: parts[0].parse().map_err(|_| bad())?,
                    col: parts[1].parse().map_err(|_| bad())?,
                    radius: parts[2].parse().map_err(|_| bad())?,
                })
            }
            "cells" => {
                let mut cells = Vec::new();
                for pair in args.split(';').map(str::trim).filter(|p| !p.is_empty()) {
                    match ints(pair)?.as_slice() {
                        &[r, c] => cells.push((r, c)),
                        _ => return Err(bad()),
                    }
                }
                Ok(MaskSpec::Explicit(cells))
            }
            _ => Err(Error::Spec(format!("unknown mask kind {kind:?}"))),
        }
    }
}
