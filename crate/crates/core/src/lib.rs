//! Chaotic-iteration data hiding for grayscale images.
//!
//! Two schemes share one key format:
//!
//! * [`stego`]: blind spatial embedding of ASCII text, encrypted by chaotic
//!   iterations and protected by cross-interleaved Reed-Solomon coding;
//! * [`watermark`]: non-blind switch-mode watermarking of Haar wavelet
//!   coefficients with RMS detection.

pub mod attacks;
pub mod chaos;
pub mod circ;
pub mod error;
pub mod image;
pub mod image_io;
pub mod keystream;
pub mod metrics;
pub mod payload;
pub mod stego;
pub mod transform;
pub mod watermark;

pub use attacks::{attack_crop_pad, attack_gaussian, attack_zero_square, AttackSpec, Rect};
pub use chaos::{iterate, negation, IterateFn, Negation, Strategy, SystemState};
pub use circ::{circ_decode, circ_encode, CircConfig, CircReport, RsCode};
pub use error::{Error, Layer, Result};
pub use image::{GrayImage, Plane};
pub use image_io::{read_pgm, synth_test_image, write_pgm};
pub use keystream::{authenticated_key, ChaosKey, Triplet};
pub use metrics::{psnr, rms};
pub use payload::{bits_to_text, frame_payload, text_to_bits, unframe_payload, BitString};
pub use stego::{build_plan, embed, extract, mix, SpatialEmbedPlan};
pub use transform::{
    dwt_forward, dwt_inverse, read_lsc, read_msc, write_lsc, Band, DwtPyramid, LscCarrier,
    LscDomain, LscSelector,
};
pub use watermark::{
    detect, embed_switch, wrong_parameter_sweep, DetectionReport, SweepRow, SwitchParams, Verdict,
};
