//! Binary PGM files and a synthetic test image.

pub mod pgm;
pub mod synth;

pub use pgm::{read_pgm, read_pgm_file, write_pgm, write_pgm_file};
pub use synth::synth_test_image;
