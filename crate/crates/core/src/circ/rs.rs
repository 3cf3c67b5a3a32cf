//! Systematic Reed-Solomon codes over GF(256), shortened to `n <= 255`.
//!
//! Generator roots are `alpha^1 .. alpha^(n-k)`. Decoding runs syndromes,
//! Berlekamp-Massey, Chien search and Forney, then re-checks the syndromes
//! of the corrected word so a miscorrection is reported rather than returned.

use super::gf256 as gf;
use crate::error::{Error, Layer, Result};

/// First consecutive root exponent of the generator polynomial.
pub const FIRST_ROOT: usize = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsCode {
    n: usize,
    k: usize,
    /// Generator polynomial, highest degree first, monic.
    generator: Vec<u8>,
}

/// Successful decode: the data part plus how many symbols were fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub data: Vec<u8>,
    pub corrected: usize,
}

impl RsCode {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n > 255 || k == 0 || k >= n || !(n - k).is_multiple_of(2) {
            return Err(Error::InvalidCode { n, k });
        }
        let mut generator = vec![1u8];
        for i in 0..n - k {
            let root = gf::exp(FIRST_ROOT + i);
            // multiply by (x - root)
            let mut next = vec![0u8; generator.len() + 1];
            for (j, &c) in generator.iter().enumerate() {
                next[j] ^= c;
                next[j + 1] ^= gf::mul(c, root);
            }
            generator = next;
        }
        Ok(Self { n, k, generator })
    }

    /// The (32,24) outer code.
    pub fn outer() -> Self {
        Self::new(32, 24).expect("valid parameters")
    }

    /// The (24,16) inner code.
    pub fn inner() -> Self {
        Self::new(24, 16).expect("valid parameters")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn parity_len(&self) -> usize {
        self.n - self.k
    }

    /// Correction capability in symbols.
    pub fn t(&self) -> usize {
        (self.n - self.k) / 2
    }

    pub fn generator(&self) -> &[u8] {
        &self.generator
    }

    /// Returns `data ++ parity`.
    pub fn encode(&self, data: &[u8]) -> Result<Vec<u8>> {
        if data.len() != self.k {
            return Err(Error::WrongBlockLength {
                expected: self.k,
                actual: data.len(),
            });
        }
        let p = self.parity_len();
        // remainder of data(x) * x^p divided by the generator (LFSR form)
        let mut parity = vec![0u8; p];
        for &d in data {
            let feedback = d ^ parity[0];
            parity.rotate_left(1);
            parity[p - 1] = 0;
            if feedback != 0 {
                for (slot, g) in parity.iter_mut().zip(&self.generator[1..]) {
                    *slot ^= gf::mul(feedback, *g);
                }
            }
        }
        let mut out = Vec::with_capacity(self.n);
        out.extend_from_slice(data);
        out.extend_from_slice(&parity);
        Ok(out)
    }

    /// Syndromes `r(alpha^(FIRST_ROOT + i))`, lowest index first.
    pub fn syndromes(&self, received: &[u8]) -> Vec<u8> {
        (0..self.parity_len())
            .map(|i| gf::eval_descending(received, gf::exp(FIRST_ROOT + i)))
            .collect()
    }

    pub fn is_codeword(&self, received: &[u8]) -> bool {
        received.len() == self.n && self.syndromes(received).iter().all(|s| *s == 0)
    }

    /// Decodes in place, returning the number of corrected symbols.
    pub fn correct(&self, word: &mut [u8]) -> std::result::Result<usize, DecodeFailure> {
        self.correct_with_erasures(word, &[])
    }

    /// Errors-and-erasures decoding: `erasures` lists byte positions known
    /// to be unreliable. Succeeds when `2 * errors + erasures <= n - k`.
    ///
    /// The erasure locator `Γ` turns the syndromes into Forney syndromes,
    /// Berlekamp-Massey finds the error locator `σ` from those, and Chien
    /// and Forney run on `Λ = σ Γ`.
    pub fn correct_with_erasures(
        &self,
        word: &mut [u8],
        erasures: &[usize],
    ) -> std::result::Result<usize, DecodeFailure> {
        if word.len() != self.n {
            return Err(DecodeFailure::Length);
        }
        let p = self.parity_len();
        let mut erased: Vec<usize> = erasures.to_vec();
        erased.sort_unstable();
        erased.dedup();
        if erased.iter().any(|i| *i >= self.n) {
            return Err(DecodeFailure::Length);
        }
        if erased.len() > p {
            return Err(DecodeFailure::TooManyErrors);
        }
        let synd = self.syndromes(word);
        if synd.iter().all(|s| *s == 0) {
            return Ok(0);
        }
        // byte i carries the coefficient of x^(n-1-i)
        let locator_of = |i: usize| gf::exp((self.n - 1 - i) % 255);

        let mut gamma = vec![1u8];
        for &i in &erased {
            gamma = poly_mul_ascending(&gamma, &[1, locator_of(i)]);
        }
        let mut forney = poly_mul_ascending(&synd, &gamma);
        forney.truncate(p);
        let (sigma, errors) = berlekamp_massey(&forney[erased.len()..]);
        if 2 * errors + erased.len() > p {
            return Err(DecodeFailure::TooManyErrors);
        }
        if sigma.len() - 1 != errors {
            return Err(DecodeFailure::LocatorMismatch);
        }
        let locator = poly_mul_ascending(&sigma, &gamma);
        let degree = locator.len() - 1;

        // Chien search over the (possibly shortened) codeword positions
        let positions: Vec<usize> = (0..self.n)
            .filter(|&i| gf::eval_ascending(&locator, gf::inv(locator_of(i))) == 0)
            .collect();
        if positions.len() != degree {
            return Err(DecodeFailure::LocatorMismatch);
        }

        // Forney: e = X^(1 - FIRST_ROOT) * omega(X^-1) / lambda'(X^-1)
        let mut omega = poly_mul_ascending(&synd, &locator);
        omega.truncate(p);
        let derivative: Vec<u8> = locator
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| if j % 2 == 1 { *c } else { 0 })
            .collect();
        let mut corrected = 0;
        for &i in &positions {
            let x = locator_of(i);
            let x_inv = gf::inv(x);
            let denom = gf::eval_ascending(&derivative, x_inv);
            if denom == 0 {
                return Err(DecodeFailure::LocatorMismatch);
            }
            let mut magnitude = gf::div(gf::eval_ascending(&omega, x_inv), denom);
            magnitude = gf::mul(magnitude, gf::pow(x, (1 + 255 - FIRST_ROOT % 255) % 255));
            corrected += (magnitude != 0) as usize;
            word[i] ^= magnitude;
        }

        if !self.syndromes(word).iter().all(|s| *s == 0) {
            return Err(DecodeFailure::ParityRecheck);
        }
        Ok(corrected)
    }

    pub fn decode(&self, received: &[u8]) -> Result<Decoded> {
        self.decode_block(received, Layer::Standalone, 0)
    }

    /// [`RsCode::decode`] with the layer and block index to report on failure.
    pub fn decode_block(&self, received: &[u8], layer: Layer, index: usize) -> Result<Decoded> {
        if received.len() != self.n {
            return Err(Error::WrongBlockLength {
                expected: self.n,
                actual: received.len(),
            });
        }
        let mut word = received.to_vec();
        let corrected = self
            .correct(&mut word)
            .map_err(|_| Error::UncorrectableBlock { layer, index })?;
        word.truncate(self.k);
        Ok(Decoded {
            data: word,
            corrected,
        })
    }
}

/// Why a received word could not be decoded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeFailure {
    Length,
    TooManyErrors,
    /// The locator's roots do not match its degree, or fall outside the
    /// shortened code.
    LocatorMismatch,
    /// Correction produced a word that is still not a codeword.
    ParityRecheck,
}

pub fn rs_encode(code: &RsCode, data: &[u8]) -> Result<Vec<u8>> {
    code.encode(data)
}

pub fn rs_decode(code: &RsCode, received: &[u8]) -> Result<Decoded> {
    code.decode(received)
}

/// Error locator from the syndromes, lowest degree first with `lambda[0] = 1`,
/// together with its linear complexity.
fn berlekamp_massey(synd: &[u8]) -> (Vec<u8>, usize) {
    let mut lambda = vec![1u8];
    let mut prev = vec![1u8];
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut prev_discrepancy = 1u8;

    for r in 0..synd.len() {
        let mut delta = synd[r];
        for i in 1..=l.min(lambda.len() - 1) {
            delta ^= gf::mul(lambda[i], synd[r - i]);
        }
        if delta == 0 {
            shift += 1;
            continue;
        }
        let scale = gf::div(delta, prev_discrepancy);
        let mut next = lambda.clone();
        if next.len() < prev.len() + shift {
            next.resize(prev.len() + shift, 0);
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i + shift] ^= gf::mul(scale, c);
        }
        if 2 * l <= r {
            prev = lambda;
            l = r + 1 - l;
            prev_discrepancy = delta;
            shift = 1;
        } else {
            shift += 1;
        }
        lambda = next;
    }
    lambda.truncate(l + 1);
    while lambda.len() > 1 && *lambda.last().unwrap() == 0 {
        lambda.pop();
    }
    (lambda, l)
}

fn poly_mul_ascending(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] ^= gf::mul(x, y);
        }
    }
    out
}
