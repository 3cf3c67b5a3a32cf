//! Wavelet analysis and bit-plane views over pixels and coefficients.

pub mod dwt;
pub mod lsc;

pub use dwt::{dwt_forward, dwt_inverse, synthesize, Band, DetailBands, DwtPyramid};
pub use lsc::{read_lsc, read_msc, write_lsc, LscCarrier, LscDomain, LscSelector};
