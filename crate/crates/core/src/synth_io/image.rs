//! Grayscale/RGB image buffers and their quaternion embedding.
//!
//! Gray samples map to the scalar part, RGB samples to the pure quaternion
//! `R i + G j + B k`; samples are scaled by `1/maxval`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use image::{DynamicImage, ExtendedColorType, ImageEncoder, ImageReader};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::signal::QSignal2D;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Samples {
    U8(Vec<u8>),
    U16(Vec<u16>),
}

impl Samples {
    fn len(&self) -> usize {
        match self {
            Samples::U8(v) => v.len(),
            Samples::U16(v) => v.len(),
        }
    }

    fn maxval(&self) -> f64 {
        match self {
            Samples::U8(_) => u8::MAX as f64,
            Samples::U16(_) => u16::MAX as f64,
        }
    }

    fn get(&self, i: usize) -> f64 {
        match self {
            Samples::U8(v) => v[i] as f64,
            Samples::U16(v) => v[i] as f64,
        }
    }
}

/// Interleaved row-major samples, one or three channels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageBuffer {
    rows: usize,
    cols: usize,
    channels: usize,
    samples: Samples,
}

impl ImageBuffer {
    pub fn new(rows: usize, cols: usize, channels: usize, samples: Samples) -> Result<Self> {
        if channels != 1 && channels != 3 {
            return Err(Error::Image(format!("{channels} channels")));
        }
        if rows == 0 || cols == 0 || samples.len() != rows * cols * channels {
            return Err(Error::Image(format!(
                "{} samples for {rows}x{cols}x{channels}",
                samples.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            channels,
            samples,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn samples(&self) -> &Samples {
        &self.samples
    }

    /// Sample `(row, col, channel)` scaled to `[0, 1]`.
    pub fn normalized(&self, row: usize, col: usize, channel: usize) -> f64 {
        let i = (row * self.cols + col) * self.channels + channel;
        self.samples.get(i) / self.samples.maxval()
    }
}

pub fn image_to_qsignal(img: &ImageBuffer) -> Result<QSignal2D> {
    let q = |r, c| match img.channels {
        1 => Quaternion::real(img.normalized(r, c, 0)),
        _ => Quaternion::new(
            0.0,
            img.normalized(r, c, 0),
            img.normalized(r, c, 1),
            img.normalized(r, c, 2),
        ),
    };
    match img.channels {
        1 | 3 => Ok(QSignal2D::from_fn(img.rows, img.cols, q)),
        n => Err(Error::Image(format!("{n} channels"))),
    }
}

/// Which part of each quaternion to render.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderMode {
    /// Scalar part as gray.
    Scalar,
    /// `(i, j, k)` parts as RGB.
    Vector,
    /// `|q|` as gray.
    Modulus,
}

impl std::str::FromStr for RenderMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scalar" => Ok(RenderMode::Scalar),
            "vector" => Ok(RenderMode::Vector),
            "modulus" => Ok(RenderMode::Modulus),
            _ => Err(Error::Spec(format!("unknown render mode {s:?}"))),
        }
    }
}

fn quantize(v: f64) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0).round() as u8
}

/// 8-bit rendering; values are clamped to `[0, 1]`.
pub fn qsignal_to_image(f: &QSignal2D, mode: RenderMode) -> ImageBuffer {
    let (rows, cols) = f.dims();
    let (channels, samples): (usize, Vec<u8>) = match mode {
        RenderMode::Scalar => (1, f.as_slice().iter().map(|q| quantize(q.w)).collect()),
        RenderMode::Modulus => (1, f.as_slice().iter().map(|q| quantize(q.modulus())).collect()),
        RenderMode::Vector => (
            3,
            f.as_slice()
                .iter()
                .flat_map(|q| [quantize(q.x), quantize(q.y), quantize(q.z)])
                .collect(),
        ),
    };
    ImageBuffer {
        rows,
        cols,
        channels,
        samples: Samples::U8(samples),
    }
}

/// Reads PGM/PPM (8 or 16 bit) or PNG; format is sniffed from the contents.
pub fn read_image(path: impl AsRef<Path>) -> Result<ImageBuffer> {
    let path = path.as_ref();
    let img = ImageReader::open(path)
        .map_err(|e| Error::io(path, e))?
        .with_guessed_format()
        .map_err(|e| Error::io(path, e))?
        .decode()
        .map_err(|e| Error::Image(format!("{}: {e}", path.display())))?;
    let (cols, rows) = (img.width() as usize, img.height() as usize);
    let (channels, samples) = match img {
        DynamicImage::ImageLuma8(b) => (1, Samples::U8(b.into_raw())),
        DynamicImage::ImageLuma16(b) => (1, Samples::U16(b.into_raw())),
        DynamicImage::ImageRgb8(b) => (3, Samples::U8(b.into_raw())),
        DynamicImage::ImageRgb16(b) => (3, Samples::U16(b.into_raw())),
        other => {
            return Err(Error::Image(format!(
                "{}: unsupported color type {:?}",
                path.display(),
                other.color()
            )))
        }
    };
    ImageBuffer::new(rows, cols, channels, samples)
}

/// Binary `P5`/`P6` with a single-space header and big-endian 16-bit samples.
fn write_pnm(img: &ImageBuffer, out: &mut impl Write) -> std::io::Result<()> {
    let magic = if img.channels == 1 { "P5" } else { "P6" };
    let maxval = img.samples.maxval() as u32;
    write!(out, "{magic}\n{} {}\n{maxval}\n", img.cols, img.rows)?;
    match &img.samples {
        Samples::U8(s) => out.write_all(s),
        Samples::U16(s) => {
            let bytes: Vec<u8> = s.iter().flat_map(|v| v.to_be_bytes()).collect();
            out.write_all(&bytes)
        }
    }
}

/// Writes binary PGM (`P5`) / PPM (`P6`) for `.pgm`, `.ppm` and `.pnm`
/// paths, PNG for `.png`.
pub fn write_image(img: &ImageBuffer, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .unwrap_or_default();
    let color = match (&img.samples, img.channels) {
        (Samples::U8(_), 1) => ExtendedColorType::L8,
        (Samples::U16(_), 1) => ExtendedColorType::L16,
        (Samples::U8(_), _) => ExtendedColorType::Rgb8,
        (Samples::U16(_), _) => ExtendedColorType::Rgb16,
    };
    if !matches!(ext.as_str(), "pgm" | "ppm" | "pnm" | "png") {
        return Err(Error::Image(format!("{}: unknown image extension", path.display())));
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    let (w, h) = (img.cols as u32, img.rows as u32);
    match ext.as_str() {
        "pgm" | "ppm" | "pnm" => write_pnm(img, &mut out).map_err(|e| Error::io(path, e))?,
        "png" => {
            let enc = image::codecs::png::PngEncoder::new(&mut out);
            match &img.samples {
                Samples::U8(s) => enc.write_image(s, w, h, color),
                Samples::U16(s) => {
                    let bytes: Vec<u8> = s.iter().flat_map(|v| v.to_ne_bytes()).collect();
                    enc.write_image(&bytes, w, h, color)
                }
            }
            .map_err(|e| Error::Image(format!("{}: {e}", path.display())))?
        }
        _ => return Err(Error::Image(format!("{}: unknown image extension", path.display()))),
    }
    out.flush().map_err(|e| Error::io(path, e))
}
