//! Binary graymap (`P5`) with maxval 255.

use std::path::Path;

use crate::error::{Error, Result};
use crate::image::GrayImage;

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|b| *b != b'\n' && *b != b'\r')
                {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u64> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::MalformedHeader(format!("missing {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::MalformedHeader(format!("{what} is too large")))
    }
}

pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    if !bytes.starts_with(b"P5") {
        return Err(Error::MalformedHeader("magic number is not P5".into()));
    }
    let mut h = Header { bytes, pos: 2 };
    if !bytes
        .get(2)
        .is_some_and(|b| b.is_ascii_whitespace() || *b == b'#')
    {
        return Err(Error::MalformedHeader(
            "no separator after magic number".into(),
        ));
    }
    let width = h.number("width")?;
    let height = h.number("height")?;
    let maxval = h.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader(format!(
            "empty image {width}x{height}"
        )));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(Error::MalformedHeader(format!(
            "maxval {maxval} out of range"
        )));
    }
    if maxval != 255 {
        return Err(Error::UnsupportedMaxval(maxval as u32));
    }
    // exactly one whitespace byte separates the header from the raster
    if !bytes.get(h.pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(Error::MalformedHeader("no separator after maxval".into()));
    }
    let start = h.pos + 1;
    let expected = usize::try_from(width.saturating_mul(height))
        .map_err(|_| Error::MalformedHeader("image too large".into()))?;
    let actual = bytes.len() - start;
    if actual < expected {
        return Err(Error::TruncatedRaster { expected, actual });
    }
    GrayImage::new(
        width as usize,
        height as usize,
        bytes[start..start + expected].to_vec(),
    )
}

/// Canonical encoding: `P5\n<w> <h>\n255\n` followed by the raster.
pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

pub fn read_pgm_file(path: impl AsRef<Path>) -> std::io::Result<Result<GrayImage>> {
    Ok(read_pgm(&std::fs::read(path)?))
}

pub fn write_pgm_file(path: impl AsRef<Path>, img: &GrayImage) -> std::io::Result<()> {
    std::fs::write(path, write_pgm(img))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn minimal() {
        let img = read_pgm(b"P5\n1 1\n255\n\x00").unwrap();
        assert_eq!(
            (img.width(), img.height(), img.pixels()),
            (1, 1, &[0u8][..])
        );
    }

    #[test]
    fn canonical_header() {
        let bytes = write_pgm(&GrayImage::filled(1, 1, 255));
        assert_eq!(bytes, b"P5\n1 1\n255\n\xff");
        assert_eq!(bytes.len(), 11 + 1);
        let img = GrayImage::from_fn(7, 3, |r, c| (r * 7 + c) as u8);
        assert_eq!(write_pgm(&img), write_pgm(&img));
    }

    #[test]
    fn comments_and_odd_whitespace() {
        let bytes = b"P5 # made by hand\n# another\n2\t2 # size\n255\n\x01\x02\x03\x04";
        let img = read_pgm(bytes).unwrap();
        assert_eq!(img.pixels(), &[1, 2, 3, 4]);
        // raster bytes that look like whitespace or '#' are data
        let img = read_pgm(b"P5\n2 1\n255\n# ").unwrap();
        assert_eq!(img.pixels(), b"# ");
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(
            read_pgm(b"P2\n1 1\n255\n0"),
            Err(Error::MalformedHeader(_))
        ));
        assert!(matches!(
            read_pgm(b"P5\n1\n"),
            Err(Error::MalformedHeader(_))
        ));
        assert!(matches!(
            read_pgm(b"P5\n0 4\n255\n"),
            Err(Error::MalformedHeader(_))
        ));
        assert!(matches!(
            read_pgm(b"P5\n1 1\n255"),
            Err(Error::MalformedHeader(_))
        ));
        assert!(matches!(
            read_pgm(b"P51 1\n255\n\0"),
            Err(Error::MalformedHeader(_))
        ));
        assert_eq!(
            read_pgm(b"P5\n1 1\n65535\n\0\0"),
            Err(Error::UnsupportedMaxval(65535))
        );
        assert_eq!(
            read_pgm(b"P5\n1 1\n15\n\0"),
            Err(Error::UnsupportedMaxval(15))
        );
        assert!(matches!(
            read_pgm(b"P5\n1 1\n70000\n\0"),
            Err(Error::MalformedHeader(_))
        ));
        assert_eq!(
            read_pgm(b"P5\n3 2\n255\n\0\0\0"),
            Err(Error::TruncatedRaster {
                expected: 6,
                actual: 3
            })
        );
    }

    proptest! {
        #[test]
        fn round_trip(w in 1usize..40, h in 1usize..40, seed in any::<u64>()) {
            let mut s = seed;
            let img = GrayImage::from_fn(w, h, |_, _| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                (s >> 56) as u8
            });
            let bytes = write_pgm(&img);
            let back = read_pgm(&bytes).unwrap();
            prop_assert_eq!(&back, &img);
            prop_assert_eq!(write_pgm(&back), bytes);
        }
    }
}
