//! Orthonormal 2-D Haar (Daubechies-1) pyramid.
//!
//! One level maps every 2x2 block `[a b; c d]` to
//!
//! ```text
//! LL = (a + b + c + d) / 2     LH = (a + b - c - d) / 2
//! HL = (a - b + c - d) / 2     HH = (a - b - c + d) / 2
//! ```
//!
//! which is the row-then-column application of `(x, y) -> ((x+y)/√2, (x-y)/√2)`
//! with the two `1/√2` factors folded into one exact `1/2`. Integer images
//! therefore produce dyadic-rational coefficients with no rounding error.
//! The first letter of a band names the filter along rows, the second the
//! filter along columns.

use crate::error::{Error, Result};
use crate::image::{GrayImage, Plane};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Band {
    LL,
    LH,
    HL,
    HH,
}

impl std::fmt::Display for Band {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Band::LL => "LL",
            Band::LH => "LH",
            Band::HL => "HL",
            Band::HH => "HH",
        })
    }
}

impl std::str::FromStr for Band {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "LL" => Ok(Band::LL),
            "LH" => Ok(Band::LH),
            "HL" => Ok(Band::HL),
            "HH" => Ok(Band::HH),
            _ => Err(Error::BadSelector(format!("unknown band `{s}`"))),
        }
    }
}

/// Detail bands of one decomposition level.
#[derive(Debug, Clone, PartialEq)]
pub struct DetailBands {
    pub lh: Plane,
    pub hl: Plane,
    pub hh: Plane,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DwtPyramid {
    /// Approximation at the coarsest level.
    pub ll: Plane,
    /// `details[0]` is level 1 (finest).
    pub details: Vec<DetailBands>,
}

impl DwtPyramid {
    pub fn levels(&self) -> usize {
        self.details.len()
    }

    /// Coefficient matrix of `band` at `level` (1-based). `LL` exists only
    /// at the coarsest level.
    pub fn band(&self, band: Band, level: usize) -> Option<&Plane> {
        if level == 0 || level > self.levels() {
            return None;
        }
        let d = &self.details[level - 1];
        match band {
            Band::LL => (level == self.levels()).then_some(&self.ll),
            Band::LH => Some(&d.lh),
            Band::HL => Some(&d.hl),
            Band::HH => Some(&d.hh),
        }
    }

    pub fn band_mut(&mut self, band: Band, level: usize) -> Option<&mut Plane> {
        if level == 0 || level > self.levels() {
            return None;
        }
        let coarsest = level == self.levels();
        let d = &mut self.details[level - 1];
        match band {
            Band::LL => coarsest.then_some(&mut self.ll),
            Band::LH => Some(&mut d.lh),
            Band::HL => Some(&mut d.hl),
            Band::HH => Some(&mut d.hh),
        }
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.ll.sum_of_squares()
            + self
                .details
                .iter()
                .map(|d| d.lh.sum_of_squares() + d.hl.sum_of_squares() + d.hh.sum_of_squares())
                .sum::<f64>()
    }
}

fn analyze_level(src: &Plane) -> (Plane, DetailBands) {
    let (rows, cols) = (src.rows() / 2, src.cols() / 2);
    let mut ll = Plane::zeros(rows, cols);
    let mut lh = Plane::zeros(rows, cols);
    let mut hl = Plane::zeros(rows, cols);
    let mut hh = Plane::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            let a = src.get(2 * r, 2 * c);
            let b = src.get(2 * r, 2 * c + 1);
            let cc = src.get(2 * r + 1, 2 * c);
            let d = src.get(2 * r + 1, 2 * c + 1);
            ll.set(r, c, (a + b + cc + d) * 0.5);
            lh.set(r, c, (a + b - cc - d) * 0.5);
            hl.set(r, c, (a - b + cc - d) * 0.5);
            hh.set(r, c, (a - b - cc + d) * 0.5);
        }
    }
    (ll, DetailBands { lh, hl, hh })
}

fn synthesize_level(ll: &Plane, d: &DetailBands) -> Plane {
    let (rows, cols) = (ll.rows(), ll.cols());
    let mut out = Plane::zeros(rows * 2, cols * 2);
    for r in 0..rows {
        for c in 0..cols {
            let (s, v, h, x) = (ll.get(r, c), d.lh.get(r, c), d.hl.get(r, c), d.hh.get(r, c));
            out.set(2 * r, 2 * c, (s + v + h + x) * 0.5);
            out.set(2 * r, 2 * c + 1, (s + v - h - x) * 0.5);
            out.set(2 * r + 1, 2 * c, (s - v + h - x) * 0.5);
            out.set(2 * r + 1, 2 * c + 1, (s - v - h + x) * 0.5);
        }
    }
    out
}

pub fn check_dyadic(width: usize, height: usize, levels: usize) -> Result<()> {
    let step = 1usize.checked_shl(levels as u32).unwrap_or(0);
    if step == 0
        || !width.is_multiple_of(step)
        || !height.is_multiple_of(step)
        || (levels > 0 && (width == 0 || height == 0))
    {
        return Err(Error::DimensionNotDyadic {
            width,
            height,
            levels,
        });
    }
    Ok(())
}

pub fn dwt_forward(img: &GrayImage, levels: usize) -> Result<DwtPyramid> {
    dwt_forward_plane(&img.to_plane(), levels)
}

pub fn dwt_forward_plane(src: &Plane, levels: usize) -> Result<DwtPyramid> {
    check_dyadic(src.cols(), src.rows(), levels)?;
    let mut ll = src.clone();
    let mut details = Vec::with_capacity(levels);
    for _ in 0..levels {
        let (next, d) = analyze_level(&ll);
        details.push(d);
        ll = next;
    }
    Ok(DwtPyramid { ll, details })
}

/// Real-valued synthesis, no rounding.
pub fn synthesize(pyr: &DwtPyramid) -> Result<Plane> {
    let mut ll = pyr.ll.clone();
    for (i, d) in pyr.details.iter().enumerate().rev() {
        for (name, band) in [("LH", &d.lh), ("HL", &d.hl), ("HH", &d.hh)] {
            if band.rows() != ll.rows() || band.cols() != ll.cols() {
                return Err(Error::InconsistentPyramid(format!(
                    "{name}{} is {}x{}, approximation is {}x{}",
                    i + 1,
                    band.rows(),
                    band.cols(),
                    ll.rows(),
                    ll.cols()
                )));
            }
        }
        ll = synthesize_level(&ll, d);
    }
    Ok(ll)
}

/// Synthesis rounded half away from zero and clamped to `[0, 255]`.
pub fn dwt_inverse(pyr: &DwtPyramid) -> Result<GrayImage> {
    Ok(synthesize(pyr)?.to_image())
}
