//! Deterministic natural-looking test image.
//!
//! Six octaves of bilinearly interpolated lattice noise (amplitude halving
//! with each octave) over a seeded linear gradient, all in integer
//! arithmetic, then stretched to `[SYNTH_MIN, SYNTH_MAX]`. The few gray
//! levels of headroom at both ends keep one-level embedding changes away
//! from saturation.

use crate::image::GrayImage;

pub const SYNTH_MIN: u8 = 4;
pub const SYNTH_MAX: u8 = 251;

const OCTAVES: u32 = 6;
const COARSEST_CELL: u32 = 128;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn lattice(seed: u64, octave: u32, ix: u64, iy: u64) -> i64 {
    let h = splitmix64(seed ^ splitmix64((octave as u64) << 48 ^ ix << 24 ^ iy));
    (h >> 52) as i64 // 12 bits
}

pub fn synth_test_image(width: usize, height: usize, seed: u64) -> GrayImage {
    let mixed = splitmix64(seed);
    // gradient direction and strength per seed
    let gx = (mixed & 0xff) as i64 - 128;
    let gy = (mixed >> 8 & 0xff) as i64 - 128;
    let span = (width + height).max(1) as i64;

    let mut field = Vec::with_capacity(width * height);
    for row in 0..height {
        for col in 0..width {
            let mut v = 0i64;
            for o in 0..OCTAVES {
                let cell = (COARSEST_CELL >> o) as u64;
                let (x, y) = (col as u64, row as u64);
                let (ix, iy) = (x / cell, y / cell);
                let (fx, fy) = ((x % cell) as i64, (y % cell) as i64);
                let c = cell as i64;
                let h00 = lattice(mixed, o, ix, iy);
                let h10 = lattice(mixed, o, ix + 1, iy);
                let h01 = lattice(mixed, o, ix, iy + 1);
                let h11 = lattice(mixed, o, ix + 1, iy + 1);
                let interp = h00 * (c - fx) * (c - fy)
                    + h10 * fx * (c - fy)
                    + h01 * (c - fx) * fy
                    + h11 * fx * fy;
                // interp / c^2 is in [0, 4096); weight 2^(OCTAVES - o)
                v += (interp << (OCTAVES - o)) / (c * c);
            }
            v += (gx * col as i64 + gy * row as i64) * 256 / span;
            field.push(v);
        }
    }

    let lo = field.iter().copied().min().unwrap_or(0);
    let hi = field.iter().copied().max().unwrap_or(0);
    let range = (hi - lo).max(1);
    let out_span = (SYNTH_MAX - SYNTH_MIN) as i64;
    let pixels = field
        .into_iter()
        .map(|v| (SYNTH_MIN as i64 + ((v - lo) * out_span + range / 2) / range) as u8)
        .collect();
    GrayImage::new(width, height, pixels).expect("buffer sized from dimensions")
}
