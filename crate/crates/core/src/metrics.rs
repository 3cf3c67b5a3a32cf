//! Image quality measures.

use crate::error::{Error, Result};
use crate::image::{GrayImage, Plane};

/// Peak value used by [`psnr`].
pub const PEAK: f64 = 255.0;

/// A rectangular grid of samples that can be compared element-wise.
pub trait Samples {
    fn dims(&self) -> (usize, usize);
    fn sample(&self, i: usize) -> f64;
}

impl Samples for GrayImage {
    fn dims(&self) -> (usize, usize) {
        (self.height(), self.width())
    }

    fn sample(&self, i: usize) -> f64 {
        self.pixels()[i] as f64
    }
}

impl Samples for Plane {
    fn dims(&self) -> (usize, usize) {
        (self.rows(), self.cols())
    }

    fn sample(&self, i: usize) -> f64 {
        self.data()[i]
    }
}

fn check_dims<T: Samples + ?Sized>(a: &T, b: &T) -> Result<usize> {
    let (da, db) = (a.dims(), b.dims());
    if da != db {
        return Err(Error::DimensionMismatch {
            expected: da.0 * da.1,
            actual: db.0 * db.1,
        });
    }
    Ok(da.0 * da.1)
}

pub fn mse<T: Samples + ?Sized>(a: &T, b: &T) -> Result<f64> {
    let n = check_dims(a, b)?;
    if n == 0 {
        return Ok(0.0);
    }
    let sum: f64 = (0..n)
        .map(|i| {
            let d = a.sample(i) - b.sample(i);
            d * d
        })
        .sum();
    Ok(sum / n as f64)
}

/// Root mean square of the element-wise difference.
pub fn rms<T: Samples + ?Sized>(a: &T, b: &T) -> Result<f64> {
    mse(a, b).map(f64::sqrt)
}

/// `10 log10(255^2 / MSE)`; identical images give `f64::INFINITY`.
pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    let m = mse(a, b)?;
    if m == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (PEAK * PEAK / m).log10())
}

/// Largest absolute per-pixel difference.
pub fn max_abs_diff(a: &GrayImage, b: &GrayImage) -> Result<u8> {
    check_dims(a, b)?;
    Ok(a.pixels()
        .iter()
        .zip(b.pixels())
        .map(|(x, y)| x.abs_diff(*y))
        .max()
        .unwrap_or(0))
}
