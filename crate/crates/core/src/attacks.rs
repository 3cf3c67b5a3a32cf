//! Deterministic attack simulators.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Axis-aligned rectangle; `x` is the column, `y` the row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub x: usize,
    pub y: usize,
    pub width: usize,
    pub height: usize,
}

impl Rect {
    pub fn square(x: usize, y: usize, size: usize) -> Self {
        Self {
            x,
            y,
            width: size,
            height: size,
        }
    }

    pub fn full(img: &GrayImage) -> Self {
        Self {
            x: 0,
            y: 0,
            width: img.width(),
            height: img.height(),
        }
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        (self.y..self.y + self.height).contains(&row)
            && (self.x..self.x + self.width).contains(&col)
    }

    fn check(&self, img: &GrayImage) -> Result<()> {
        let fits = |start: usize, len: usize, limit: usize| {
            start.checked_add(len).is_some_and(|end| end <= limit)
        };
        if fits(self.x, self.width, img.width()) && fits(self.y, self.height, img.height()) {
            Ok(())
        } else {
            Err(Error::OutOfBounds {
                width: img.width(),
                height: img.height(),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AttackSpec {
    ZeroSquare { x: usize, y: usize, size: usize },
    Gaussian { sigma: f64, seed: u64 },
    CropPad(Rect),
}

impl AttackSpec {
    pub fn apply(&self, img: &GrayImage) -> Result<GrayImage> {
        match *self {
            AttackSpec::ZeroSquare { x, y, size } => attack_zero_square(img, x, y, size),
            AttackSpec::Gaussian { sigma, seed } => attack_gaussian(img, sigma, seed),
            AttackSpec::CropPad(rect) => attack_crop_pad(img, rect),
        }
    }
}

/// Sets a `size` x `size` square with top-left corner at column `x`, row `y` to 0.
pub fn attack_zero_square(img: &GrayImage, x: usize, y: usize, size: usize) -> Result<GrayImage> {
    let rect = Rect::square(x, y, size);
    rect.check(img)?;
    let mut out = img.clone();
    for row in y..y + size {
        for col in x..x + size {
            out.set(row, col, 0);
        }
    }
    Ok(out)
}

/// Adds rounded N(0, sigma^2) noise and saturates to `[0, 255]`.
pub fn attack_gaussian(img: &GrayImage, sigma: f64, seed: u64) -> Result<GrayImage> {
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(Error::InvalidAttack(format!(
            "sigma {sigma} must be finite and non-negative"
        )));
    }
    if sigma == 0.0 {
        return Ok(img.clone());
    }
    let mut noise = GaussianNoise::new(seed);
    let mut out = img.clone();
    for p in out.pixels_mut() {
        let v = *p as f64 + sigma * noise.sample();
        *p = v.round().clamp(0.0, 255.0) as u8;
    }
    Ok(out)
}

/// Zeroes every pixel outside `rect`; dimensions are kept.
pub fn attack_crop_pad(img: &GrayImage, rect: Rect) -> Result<GrayImage> {
    rect.check(img)?;
    Ok(GrayImage::from_fn(img.width(), img.height(), |r, c| {
        if rect.contains(r, c) {
            img.get(r, c)
        } else {
            0
        }
    }))
}

/// Standard normal samples by the Box-Muller transform.
struct GaussianNoise {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl GaussianNoise {
    fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Uniform in (0, 1].
    fn uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) + 1) as f64 / (1u64 << 53) as f64
    }

    fn sample(&mut self) -> f64 {
        if let Some(s) = self.spare.take() {
            return s;
        }
        let r = (-2.0 * self.uniform().ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * self.uniform();
        self.spare = Some(r * theta.sin());
        r * theta.cos()
    }
}
