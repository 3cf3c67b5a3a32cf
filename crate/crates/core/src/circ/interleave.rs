//! Three-branch convolutional interleaver.
//!
//! Symbol `t` travels on branch `t % 3`, and branch `i` holds it back by
//! `i * delay` branch slots, which is `3 * i * delay` positions of the
//! output stream. Registers start zeroed and the stream is flushed with
//! `FLUSH_FACTOR * delay` trailing symbols so every input symbol comes out.

/// Number of branches.
pub const BRANCHES: usize = 3;

/// Flush length in units of the delay step: `(BRANCHES - 1) * BRANCHES`.
pub const FLUSH_FACTOR: usize = (BRANCHES - 1) * BRANCHES;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterleaverConfig {
    /// Delay increment between consecutive branches, in branch slots.
    pub delay: usize,
}

impl Default for InterleaverConfig {
    fn default() -> Self {
        Self { delay: 4 }
    }
}

impl InterleaverConfig {
    pub fn new(delay: usize) -> Self {
        Self { delay }
    }

    /// Extra symbols appended by [`interleave3`].
    pub fn flush_len(&self) -> usize {
        FLUSH_FACTOR * self.delay
    }

    /// Output position of input symbol `t`.
    #[inline]
    pub fn position(&self, t: usize) -> usize {
        t + BRANCHES * self.delay * (t % BRANCHES)
    }
}

pub fn interleave3(cfg: InterleaverConfig, data: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; data.len() + cfg.flush_len()];
    for (t, &b) in data.iter().enumerate() {
        out[cfg.position(t)] = b;
    }
    out
}

/// Inverse of [`interleave3`]; the result is `flush_len()` symbols shorter
/// than the input (empty if the input is shorter than the flush).
pub fn deinterleave3(cfg: InterleaverConfig, data: &[u8]) -> Vec<u8> {
    let n = data.len().saturating_sub(cfg.flush_len());
    (0..n).map(|t| data[cfg.position(t)]).collect()
}
