//! CIRC-style two-layer Reed-Solomon coding.
//!
//! Frame layout, encode side:
//!
//! 1. `[len_hi, len_lo] ++ payload`, zero padded to a multiple of 24 bytes;
//! 2. each 24-byte block is (32,24) encoded (outer layer);
//! 3. the concatenated outer codewords go through [`interleave3`];
//! 4. the interleaved stream is zero padded to a multiple of 16 bytes;
//! 5. each 16-byte block is (24,16) encoded (inner layer).
//!
//! Decoding runs inner decode, deinterleave, outer decode. An inner block
//! that cannot be corrected is passed through unmodified and its data bytes
//! are flagged. An outer codeword is first decoded for errors only; if that
//! fails and it holds at most [`OUTER_ERASURE_LIMIT`] flagged bytes, it is
//! decoded again treating them as erasures. Only an outer failure aborts
//! the frame.

pub mod gf256;
pub mod interleave;
pub mod rs;

pub use interleave::{deinterleave3, interleave3, InterleaverConfig};
pub use rs::{rs_decode, rs_encode, Decoded, RsCode};

use crate::error::{Error, Layer, Result};

pub const OUTER_N: usize = 32;
pub const OUTER_K: usize = 24;
pub const INNER_N: usize = 24;
pub const INNER_K: usize = 16;

/// Bytes of the big-endian length prefix.
pub const LENGTH_PREFIX: usize = 2;

pub const MAX_PAYLOAD: usize = u16::MAX as usize;

/// Most suspect bytes an inner codeword may treat as erasures.
pub const INNER_ERASURE_LIMIT: usize = 8;

/// Most flagged bytes an outer codeword may treat as erasures. Kept below
/// the 8 parity bytes so a residual miscorrection can still be detected.
pub const OUTER_ERASURE_LIMIT: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CircConfig {
    pub interleaver: InterleaverConfig,
}

impl CircConfig {
    pub fn with_delay(delay: usize) -> Self {
        Self {
            interleaver: InterleaverConfig::new(delay),
        }
    }

    /// Number of outer codewords for a payload of `payload_len` bytes.
    pub fn outer_blocks(&self, payload_len: usize) -> usize {
        (payload_len + LENGTH_PREFIX).div_ceil(OUTER_K)
    }

    fn inner_blocks_for_outer(&self, outer_blocks: usize) -> usize {
        (outer_blocks * OUTER_N + self.interleaver.flush_len()).div_ceil(INNER_K)
    }

    /// Encoded frame length in bytes for a payload of `payload_len` bytes.
    pub fn encoded_len(&self, payload_len: usize) -> usize {
        self.inner_blocks_for_outer(self.outer_blocks(payload_len)) * INNER_N
    }

    /// Length of the shortest possible frame; also the prefix needed by
    /// [`CircConfig::peek_payload_len`].
    pub fn min_frame_len(&self) -> usize {
        self.encoded_len(0)
    }

    pub fn encode(&self, payload: &[u8]) -> Result<Vec<u8>> {
        if payload.len() > MAX_PAYLOAD {
            return Err(Error::PayloadTooLarge(payload.len()));
        }
        let outer = RsCode::outer();
        let inner = RsCode::inner();

        let blocks = self.outer_blocks(payload.len());
        let mut framed = Vec::with_capacity(blocks * OUTER_K);
        framed.extend_from_slice(&(payload.len() as u16).to_be_bytes());
        framed.extend_from_slice(payload);
        framed.resize(blocks * OUTER_K, 0);

        let mut outer_stream = Vec::with_capacity(blocks * OUTER_N);
        for block in framed.chunks(OUTER_K) {
            outer_stream.extend(outer.encode(block)?);
        }

        let mut interleaved = interleave3(self.interleaver, &outer_stream);
        let inner_blocks = self.inner_blocks_for_outer(blocks);
        interleaved.resize(inner_blocks * INNER_K, 0);

        let mut out = Vec::with_capacity(inner_blocks * INNER_N);
        for block in interleaved.chunks(INNER_K) {
            out.extend(inner.encode(block)?);
        }
        Ok(out)
    }

    pub fn decode(&self, stream: &[u8]) -> Result<Vec<u8>> {
        self.decode_report(stream).map(|r| r.payload)
    }

    /// Decodes and reports per-layer correction counts.
    pub fn decode_report(&self, stream: &[u8]) -> Result<CircReport> {
        self.decode_hinted(stream, &[])
    }

    /// [`CircConfig::decode_report`] with side information: `unreliable[i]`
    /// marks stream byte `i` as suspect. An inner codeword that fails plain
    /// decoding is retried with its suspect bytes as erasures, as long as
    /// there are at most [`INNER_ERASURE_LIMIT`] of them. Missing entries
    /// count as reliable.
    pub fn decode_hinted(&self, stream: &[u8], unreliable: &[bool]) -> Result<CircReport> {
        if stream.is_empty() || !stream.len().is_multiple_of(INNER_N) {
            return Err(Error::MalformedFrame(format!(
                "{} bytes is not a whole number of inner codewords",
                stream.len()
            )));
        }
        let inner_blocks = stream.len() / INNER_N;
        let flush_blocks = self.interleaver.flush_len().div_ceil(INNER_K);
        let outer_blocks = match inner_blocks.checked_sub(flush_blocks) {
            Some(b) if b >= 2 && b % 2 == 0 => b / 2,
            _ => {
                return Err(Error::MalformedFrame(format!(
                    "{inner_blocks} inner codewords match no frame geometry"
                )))
            }
        };
        debug_assert_eq!(self.inner_blocks_for_outer(outer_blocks), inner_blocks);

        let mut report = CircReport::default();
        let (interleaved, flags) = self.decode_inner(stream, unreliable, &mut report);
        let used = outer_blocks * OUTER_N + self.interleaver.flush_len();
        let outer_stream = deinterleave3(self.interleaver, &interleaved[..used]);
        let outer_flags = deinterleave3(self.interleaver, &flags[..used]);
        let framed = decode_outer(&outer_stream, &outer_flags, &mut report)?;

        let len = u16::from_be_bytes([framed[0], framed[1]]) as usize;
        if self.outer_blocks(len) != outer_blocks {
            return Err(Error::MalformedFrame(format!(
                "length prefix {len} does not fit {outer_blocks} outer blocks"
            )));
        }
        if framed[LENGTH_PREFIX + len..].iter().any(|b| *b != 0) {
            return Err(Error::MalformedFrame("nonzero frame padding".into()));
        }
        report.payload = framed[LENGTH_PREFIX..LENGTH_PREFIX + len].to_vec();
        Ok(report)
    }

    /// Reads the payload length from the first [`CircConfig::min_frame_len`]
    /// bytes of a frame, correcting errors on the way. Lets a reader learn
    /// how long the whole frame is before fetching it.
    pub fn peek_payload_len(&self, prefix: &[u8]) -> Result<usize> {
        self.peek_payload_len_hinted(prefix, &[])
    }

    pub fn peek_payload_len_hinted(&self, prefix: &[u8], unreliable: &[bool]) -> Result<usize> {
        let need = self.min_frame_len();
        if prefix.len() < need {
            return Err(Error::MalformedFrame(format!(
                "{} bytes are too few to locate the length prefix ({need} needed)",
                prefix.len()
            )));
        }
        let mut report = CircReport::default();
        let (interleaved, flags) = self.decode_inner(&prefix[..need], unreliable, &mut report);
        let used = OUTER_N + self.interleaver.flush_len();
        let first = deinterleave3(self.interleaver, &interleaved[..used]);
        let first_flags = deinterleave3(self.interleaver, &flags[..used]);
        let framed = decode_outer(&first, &first_flags, &mut report)?;
        Ok(u16::from_be_bytes([framed[0], framed[1]]) as usize)
    }

    /// Inner layer: corrected data bytes, plus a flag byte (1 = unreliable)
    /// for each of them.
    fn decode_inner(
        &self,
        stream: &[u8],
        unreliable: &[bool],
        report: &mut CircReport,
    ) -> (Vec<u8>, Vec<u8>) {
        let inner = RsCode::inner();
        let mut out = Vec::with_capacity(stream.len() / INNER_N * INNER_K);
        let mut flags = Vec::with_capacity(out.capacity());
        for (b, block) in stream.chunks(INNER_N).enumerate() {
            let mut word = block.to_vec();
            let mut outcome = inner.correct(&mut word);
            if outcome.is_err() {
                let erasures: Vec<usize> = (0..INNER_N)
                    .filter(|i| unreliable.get(b * INNER_N + i).copied().unwrap_or(false))
                    .collect();
                if !erasures.is_empty() && erasures.len() <= INNER_ERASURE_LIMIT {
                    word.copy_from_slice(block);
                    outcome = inner.correct_with_erasures(&mut word, &erasures);
                    report.inner_erasure_retries += 1;
                }
            }
            let failed = match outcome {
                Ok(fixed) => {
                    report.inner_corrected += fixed;
                    false
                }
                Err(_) => {
                    report.inner_failed += 1;
                    word.copy_from_slice(block);
                    true
                }
            };
            out.extend_from_slice(&word[..INNER_K]);
            flags.extend(std::iter::repeat_n(failed as u8, INNER_K));
        }
        (out, flags)
    }
}

fn decode_outer(outer_stream: &[u8], flags: &[u8], report: &mut CircReport) -> Result<Vec<u8>> {
    let outer = RsCode::outer();
    let mut framed = Vec::with_capacity(outer_stream.len() / OUTER_N * OUTER_K);
    for (index, (block, flag)) in outer_stream
        .chunks(OUTER_N)
        .zip(flags.chunks(OUTER_N))
        .enumerate()
    {
        let mut word = block.to_vec();
        let mut outcome = outer.correct(&mut word);
        let erasures: Vec<usize> = (0..OUTER_N).filter(|i| flag[*i] != 0).collect();
        if outcome.is_err() && !erasures.is_empty() && erasures.len() <= OUTER_ERASURE_LIMIT {
            word.copy_from_slice(block);
            outcome = outer.correct_with_erasures(&mut word, &erasures);
            report.outer_erasure_retries += 1;
        }
        let fixed = outcome.map_err(|_| Error::UncorrectableBlock {
            layer: Layer::Outer,
            index,
        })?;
        report.outer_corrected += fixed;
        framed.extend_from_slice(&word[..OUTER_K]);
    }
    Ok(framed)
}

/// Outcome of [`CircConfig::decode_report`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CircReport {
    pub payload: Vec<u8>,
    /// Symbols fixed by the inner layer.
    pub inner_corrected: usize,
    /// Inner codewords passed through uncorrected.
    pub inner_failed: usize,
    /// Inner codewords that needed a second pass with erasures.
    pub inner_erasure_retries: usize,
    /// Symbols fixed by the outer layer.
    pub outer_corrected: usize,
    /// Outer codewords that needed a second pass with erasures.
    pub outer_erasure_retries: usize,
}

pub fn circ_encode(payload: &[u8]) -> Result<Vec<u8>> {
    CircConfig::default().encode(payload)
}

pub fn circ_decode(stream: &[u8]) -> Result<Vec<u8>> {
    CircConfig::default().decode(stream)
}
