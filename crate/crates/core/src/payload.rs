//! Text payloads as 7-bit ASCII bit strings, plus the 32-bit length frame
//! that lets a blind extractor know where the message ends.

use crate::error::{Error, Result};

/// Bits per character of the payload alphabet.
pub const BITS_PER_CHAR: usize = 7;

/// Width of the big-endian length header added by [`frame_payload`].
pub const FRAME_HEADER_BITS: usize = 32;

/// Ordered sequence of bits.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            bits: vec![false; len],
        }
    }

    pub fn from_bools(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Parses a string of `'0'`/`'1'` characters; other characters are skipped.
    pub fn from_binary_str(s: &str) -> Self {
        Self {
            bits: s
                .chars()
                .filter_map(|c| match c {
                    '0' => Some(false),
                    '1' => Some(true),
                    _ => None,
                })
                .collect(),
        }
    }

    /// Unpacks the first `len` bits of `bytes`, most significant bit first.
    pub fn from_bytes(bytes: &[u8], len: usize) -> Result<Self> {
        if len > bytes.len() * 8 {
            return Err(Error::DimensionMismatch {
                expected: len.div_ceil(8),
                actual: bytes.len(),
            });
        }
        let bits = (0..len)
            .map(|i| bytes[i / 8] >> (7 - i % 8) & 1 == 1)
            .collect();
        Ok(Self { bits })
    }

    /// Packs the bits MSB-first; the tail of the last byte is zero.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.bits.len().div_ceil(8)];
        for (i, _) in self.bits.iter().enumerate().filter(|(_, b)| **b) {
            out[i / 8] |= 0x80 >> (i % 8);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.bits.get(i).copied()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn extend_from(&mut self, other: &BitString) {
        self.bits.extend_from_slice(&other.bits);
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn into_bools(self) -> Vec<bool> {
        self.bits
    }

    /// Appends zeros up to the next multiple of 8.
    pub fn pad_to_bytes(&mut self) {
        let padded = self.bits.len().div_ceil(8) * 8;
        self.bits.resize(padded, false);
    }
}

impl std::fmt::Display for BitString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.bits {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self {
            bits: iter.into_iter().collect(),
        }
    }
}

/// Encodes each character as 7 bits, most significant first.
pub fn text_to_bits(text: &str) -> Result<BitString> {
    let mut bits = Vec::with_capacity(text.len() * BITS_PER_CHAR);
    for (pos, ch) in text.chars().enumerate() {
        let code = ch as u32;
        if code >= 128 {
            return Err(Error::NonAsciiCharacter(pos));
        }
        bits.extend((0..BITS_PER_CHAR).rev().map(|k| code >> k & 1 == 1));
    }
    Ok(BitString { bits })
}

pub fn bits_to_text(bits: &BitString) -> Result<String> {
    if !bits.len().is_multiple_of(BITS_PER_CHAR) {
        return Err(Error::LengthNotMultipleOf7(bits.len()));
    }
    Ok(bits
        .bits
        .chunks(BITS_PER_CHAR)
        .map(|chunk| chunk.iter().fold(0u8, |acc, b| acc << 1 | *b as u8) as char)
        .collect())
}

/// Prepends the bit count as a 32-bit big-endian header.
pub fn frame_payload(bits: &BitString) -> Result<BitString> {
    let len = u32::try_from(bits.len()).map_err(|_| Error::PayloadTooLarge(bits.len()))?;
    let mut out = Vec::with_capacity(FRAME_HEADER_BITS + bits.len());
    out.extend((0..FRAME_HEADER_BITS).rev().map(|k| len >> k & 1 == 1));
    out.extend_from_slice(&bits.bits);
    Ok(BitString { bits: out })
}

/// Inverse of [`frame_payload`]. Bits after the announced payload are
/// ignored, so byte padding added downstream is tolerated.
pub fn unframe_payload(framed: &BitString) -> Result<BitString> {
    if framed.len() < FRAME_HEADER_BITS {
        return Err(Error::MalformedFrame(format!(
            "{} bits cannot hold the length header",
            framed.len()
        )));
    }
    let len = framed.bits[..FRAME_HEADER_BITS]
        .iter()
        .fold(0u64, |acc, b| acc << 1 | *b as u64) as usize;
    let available = framed.len() - FRAME_HEADER_BITS;
    if len > available {
        return Err(Error::MalformedFrame(format!(
            "header announces {len} bits, only {available} present"
        )));
    }
    Ok(BitString {
        bits: framed.bits[FRAME_HEADER_BITS..FRAME_HEADER_BITS + len].to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn letter_l_matches_printed_bit_flow() {
        assert_eq!(text_to_bits("L").unwrap().to_string(), "1001100");
        assert_eq!(
            text_to_bits("Len").unwrap().to_string(),
            "100110011001011101110"
        );
        // the printed system for the Lena caption starts with "Lena (Soderberg)"
        let flow = "100110011001011101110110000101000000101000101001111011";
        let bits = text_to_bits("Lena (Soderberg)").unwrap().to_string();
        assert!(bits.starts_with(flow));
    }

    #[test]
    fn empty_text_and_bits() {
        assert!(text_to_bits("").unwrap().is_empty());
        assert_eq!(bits_to_text(&BitString::new()).unwrap(), "");
    }

    #[test]
    fn non_ascii_reports_position() {
        assert_eq!(text_to_bits("abé"), Err(Error::NonAsciiCharacter(2)));
    }

    #[test]
    fn decode_rejects_ragged_length() {
        let bits = BitString::from_binary_str("10011001");
        assert_eq!(bits_to_text(&bits), Err(Error::LengthNotMultipleOf7(8)));
        assert_eq!(
            bits_to_text(&BitString::from_binary_str("1001100")).unwrap(),
            "L"
        );
    }

    #[test]
    fn frame_of_empty_is_32_zero_bits() {
        let f = frame_payload(&BitString::new()).unwrap();
        assert_eq!(f, BitString::zeros(32));
    }

    #[test]
    fn frame_header_is_big_endian() {
        let payload = BitString::from_binary_str("1010101");
        let f = frame_payload(&payload).unwrap();
        assert_eq!(
            f.to_string(),
            "00000000000000000000000000000111".to_owned() + "1010101"
        );
    }

    #[test]
    fn unframe_rejects_short_or_lying_headers() {
        assert!(matches!(
            unframe_payload(&BitString::zeros(31)),
            Err(Error::MalformedFrame(_))
        ));
        let mut f = frame_payload(&BitString::zeros(3)).unwrap();
        f.bits.truncate(34);
        assert!(matches!(unframe_payload(&f), Err(Error::MalformedFrame(_))));
    }

    #[test]
    fn byte_packing_zero_pads_tail() {
        let bits = BitString::from_binary_str("1011");
        assert_eq!(bits.to_bytes(), vec![0b1011_0000]);
        assert_eq!(BitString::from_bytes(&[0b1011_0000], 4).unwrap(), bits);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn text_round_trip(t in "[\\x00-\\x7f]{0,200}") {
            let bits = text_to_bits(&t).unwrap();
            prop_assert_eq!(bits.len() % 7, 0);
            prop_assert_eq!(bits.len(), 7 * t.len());
            prop_assert_eq!(bits_to_text(&bits).unwrap(), t);
        }

        #[test]
        fn frame_round_trip(raw in proptest::collection::vec(any::<bool>(), 0..2000)) {
            let b = BitString::from_bools(raw);
            let mut framed = frame_payload(&b).unwrap();
            prop_assert_eq!(unframe_payload(&framed).unwrap(), b.clone());
            framed.pad_to_bytes();
            prop_assert_eq!(unframe_payload(&framed).unwrap(), b);
        }

        #[test]
        fn bytes_round_trip(raw in proptest::collection::vec(any::<bool>(), 0..300)) {
            let b = BitString::from_bools(raw);
            prop_assert_eq!(BitString::from_bytes(&b.to_bytes(), b.len()).unwrap(), b);
        }
    }
}
