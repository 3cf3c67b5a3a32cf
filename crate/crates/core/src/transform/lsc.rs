//! Bit-plane views: least significant coefficients (alterable) and most
//! significant coefficients (content-bearing).
//!
//! A wavelet coefficient's integral value is `floor(c + 0.5)`, read as a
//! two's complement integer. Toggling a bit moves the real coefficient by
//! exactly `±2^bit`, leaves its fractional part alone, and toggling twice
//! restores the original value bit for bit.

use crate::chaos::SystemState;
use crate::error::{Error, Result};
use crate::image::{GrayImage, Plane};
use crate::payload::BitString;
use crate::transform::dwt::{Band, DwtPyramid};

/// Highest bit index that still counts as least significant.
pub const MAX_LSC_BIT: u8 = 3;

/// Lowest bit index that counts as most significant.
pub const MIN_MSC_BIT: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LscDomain {
    Pixel,
    Dwt { band: Band, level: usize },
}

impl LscDomain {
    /// Decomposition depth a pyramid needs to expose this domain.
    pub fn levels(&self) -> usize {
        match self {
            LscDomain::Pixel => 0,
            LscDomain::Dwt { level, .. } => *level,
        }
    }
}

impl std::fmt::Display for LscDomain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LscDomain::Pixel => f.write_str("pixel"),
            LscDomain::Dwt { band, level } => write!(f, "{band}{level}"),
        }
    }
}

impl std::str::FromStr for LscDomain {
    type Err = Error;

    /// `pixel`, or a band name followed by its level such as `HH2` or `LL1`.
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("pixel") {
            return Ok(LscDomain::Pixel);
        }
        if s.len() < 3 || !s.is_char_boundary(2) {
            return Err(Error::BadSelector(format!("cannot parse `{s}`")));
        }
        let band: Band = s[..2].parse()?;
        let level: usize = s[2..]
            .parse()
            .map_err(|_| Error::BadSelector(format!("bad level in `{s}`")))?;
        if level == 0 {
            return Err(Error::BadSelector("levels start at 1".into()));
        }
        Ok(LscDomain::Dwt { band, level })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LscSelector {
    pub domain: LscDomain,
    /// 0 is the least significant bit.
    pub bit: u8,
}

impl LscSelector {
    pub fn new(domain: LscDomain, bit: u8) -> Result<Self> {
        if bit > MAX_LSC_BIT {
            return Err(Error::BadSelector(format!(
                "bit {bit} is above the least significant range 0..={MAX_LSC_BIT}"
            )));
        }
        if let LscDomain::Dwt { level: 0, .. } = domain {
            return Err(Error::BadSelector("levels start at 1".into()));
        }
        Ok(Self { domain, bit })
    }

    pub fn pixel(bit: u8) -> Result<Self> {
        Self::new(LscDomain::Pixel, bit)
    }

    pub fn dwt(band: Band, level: usize, bit: u8) -> Result<Self> {
        Self::new(LscDomain::Dwt { band, level }, bit)
    }
}

impl std::fmt::Display for LscSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:bit{}", self.domain, self.bit)
    }
}

/// Integral value of a coefficient (round half up).
#[inline]
pub fn integral_value(c: f64) -> i64 {
    (c + 0.5).floor() as i64
}

#[inline]
pub fn coefficient_bit(c: f64, bit: u8) -> bool {
    integral_value(c) >> bit & 1 == 1
}

/// Moves `c` by `±2^bit` so that the selected bit of its integral value flips.
#[inline]
pub fn toggle_coefficient_bit(c: f64, bit: u8) -> f64 {
    let v = integral_value(c);
    c + ((v ^ 1 << bit) - v) as f64
}

/// Returns `c`, toggled if its selected bit differs from `value`.
#[inline]
pub fn set_coefficient_bit(c: f64, bit: u8, value: bool) -> f64 {
    if coefficient_bit(c, bit) == value {
        c
    } else {
        toggle_coefficient_bit(c, bit)
    }
}

/// Anything whose least significant coefficients can be viewed as a state.
pub trait LscCarrier {
    /// Number of cells the selector addresses.
    fn lsc_len(&self, sel: &LscSelector) -> Result<usize>;
    fn read_lsc(&self, sel: &LscSelector) -> Result<SystemState>;
    fn write_lsc(&mut self, sel: &LscSelector, state: &SystemState) -> Result<()>;
}

fn check_size(expected: usize, state: &SystemState) -> Result<()> {
    if state.size() != expected {
        return Err(Error::SizeMismatch {
            expected,
            actual: state.size(),
        });
    }
    Ok(())
}

impl LscCarrier for GrayImage {
    fn lsc_len(&self, sel: &LscSelector) -> Result<usize> {
        match sel.domain {
            LscDomain::Pixel => Ok(self.len()),
            d => Err(Error::BadSelector(format!(
                "{d} needs a wavelet pyramid, not an image"
            ))),
        }
    }

    fn read_lsc(&self, sel: &LscSelector) -> Result<SystemState> {
        self.lsc_len(sel)?;
        Ok(SystemState::new(
            self.pixels()
                .iter()
                .map(|p| p >> sel.bit & 1 == 1)
                .collect(),
        ))
    }

    fn write_lsc(&mut self, sel: &LscSelector, state: &SystemState) -> Result<()> {
        check_size(self.lsc_len(sel)?, state)?;
        let mask = 1u8 << sel.bit;
        for (p, cell) in self.pixels_mut().iter_mut().zip(state.cells()) {
            if *cell {
                *p |= mask;
            } else {
                *p &= !mask;
            }
        }
        Ok(())
    }
}

fn select<'a>(pyr: &'a DwtPyramid, sel: &LscSelector) -> Result<&'a Plane> {
    match sel.domain {
        LscDomain::Pixel => Err(Error::BadSelector(
            "pixel selector used on a wavelet pyramid".into(),
        )),
        LscDomain::Dwt { band, level } => pyr.band(band, level).ok_or_else(|| {
            Error::BadSelector(format!(
                "{band}{level} does not exist in a {}-level pyramid",
                pyr.levels()
            ))
        }),
    }
}

impl LscCarrier for DwtPyramid {
    fn lsc_len(&self, sel: &LscSelector) -> Result<usize> {
        select(self, sel).map(Plane::len)
    }

    fn read_lsc(&self, sel: &LscSelector) -> Result<SystemState> {
        let plane = select(self, sel)?;
        Ok(SystemState::new(
            plane
                .data()
                .iter()
                .map(|c| coefficient_bit(*c, sel.bit))
                .collect(),
        ))
    }

    fn write_lsc(&mut self, sel: &LscSelector, state: &SystemState) -> Result<()> {
        check_size(self.lsc_len(sel)?, state)?;
        let LscDomain::Dwt { band, level } = sel.domain else {
            unreachable!("select() rejects pixel selectors");
        };
        let plane = self.band_mut(band, level).expect("checked by lsc_len");
        for (c, cell) in plane.data_mut().iter_mut().zip(state.cells()) {
            *c = set_coefficient_bit(*c, sel.bit, *cell);
        }
        Ok(())
    }
}

pub fn read_lsc<C: LscCarrier + ?Sized>(carrier: &C, sel: &LscSelector) -> Result<SystemState> {
    carrier.read_lsc(sel)
}

pub fn write_lsc<C: LscCarrier + Clone>(
    carrier: &C,
    sel: &LscSelector,
    state: &SystemState,
) -> Result<C> {
    let mut out = carrier.clone();
    out.write_lsc(sel, state)?;
    Ok(out)
}

/// Concatenates the selected high bits of every pixel, pixel by pixel in
/// raster order, bits in the order given.
pub fn read_msc(img: &GrayImage, msb_set: &[u8]) -> Result<BitString> {
    if let Some(b) = msb_set.iter().find(|b| !(MIN_MSC_BIT..=7).contains(*b)) {
        return Err(Error::BadBitIndex(*b));
    }
    let mut out = Vec::with_capacity(img.len() * msb_set.len());
    for p in img.pixels() {
        out.extend(msb_set.iter().map(|b| p >> b & 1 == 1));
    }
    Ok(BitString::from_bools(out))
}
