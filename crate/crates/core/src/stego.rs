//! Blind spatial-domain embedding of ASCII text.
//!
//! Embedding: text bits are framed with a length header, padded to whole
//! bytes, mixed by chaotic iterations, CIRC encoded, and each coded bit
//! replaces bit plane 1 or 2 of a key-selected pixel. Extraction only needs
//! the stego image and the key.
//!
//! Placements come from the triplet recurrence driven by a strategy over
//! `[0, 256)`, so they do not depend on the message length. A triplet whose
//! slot is already taken, or which falls outside the image, is skipped.
//! The reader first fetches the bits of the shortest possible frame, reads
//! the payload length from it, then fetches the rest.
//!
//! Chaotic placement turns any local damage into scattered bit errors, so
//! the interleaver delay is [`INTERLEAVE_DELAY`]: three branches times 11
//! exceeds the 32-byte outer codeword, and the bytes of one failed inner
//! codeword land in different outer codewords. If decoding fails, it is
//! retried treating bits read from saturated pixels (0 or 255) as suspect.

use std::collections::HashSet;

use crate::chaos::{iterate, Negation, Strategy, SystemState};
use crate::circ::CircConfig;
use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::keystream::{
    authenticated_key, bits_to_strategy, group_size, ChaosKey, LogisticBits, StrategyStream,
    Triplet, TripletIter, TRIPLET_MODULUS,
};
use crate::payload::{bits_to_text, frame_payload, text_to_bits, unframe_payload, BitString};
use crate::transform::lsc::read_msc;

/// Domain of the placement strategy terms.
pub const PLACEMENT_DOMAIN: usize = 256;

/// Bit planes available per pixel (the two least significant).
pub const PLANES: usize = 2;

/// Hard cap on triplet draws, per requested bit.
pub const DRAWS_PER_BIT: usize = 64;

/// Interleaver delay of the spatial frame.
pub const INTERLEAVE_DELAY: usize = 11;

/// MSC bits bound to the key in authenticated mode.
pub const DEFAULT_MSB_SET: [u8; 4] = [4, 5, 6, 7];

/// Flips `steps` cells of `bits`, chosen by `s`. Applying it twice with the
/// same arguments restores the input.
pub fn mix(bits: &BitString, s: &Strategy, steps: usize) -> Result<BitString> {
    if steps > s.len() {
        return Err(Error::StrategyExhausted(s.len()));
    }
    let x0 = SystemState::new(bits.as_slice().to_vec());
    let x = iterate(&x0, s.terms().iter().copied(), &Negation, steps)?;
    Ok(BitString::from_bools(x.into_cells()))
}

/// Encryption strategy over `[0, nbits)`: the key's first `iterations`
/// logistic bits, cut to a whole number of groups.
pub fn mix_strategy(key: &ChaosKey, nbits: usize) -> Result<Strategy> {
    if nbits == 0 {
        return Err(Error::EmptyStrategy);
    }
    let group = group_size(nbits);
    let usable = key.iterations as usize / group * group;
    bits_to_strategy(&key.bits().take(usable).collect(), nbits)
}

/// Ordered, collision-free bit slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpatialEmbedPlan {
    pub placements: Vec<Triplet>,
    /// Number of message bits the plan was built for.
    pub message_bits: usize,
}

impl SpatialEmbedPlan {
    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }
}

/// Number of distinct slots the placement recurrence can reach.
pub fn capacity(width: usize, height: usize) -> usize {
    let reach = TRIPLET_MODULUS as usize;
    PLANES * width.min(reach) * height.min(reach)
}

/// Incremental plan generator; successive calls extend the same sequence.
#[derive(Debug)]
pub struct PlanBuilder {
    triplets: TripletIter<StrategyStream<LogisticBits>>,
    width: usize,
    height: usize,
    taken: HashSet<(usize, usize, u8)>,
    placements: Vec<Triplet>,
    draws: usize,
}

impl PlanBuilder {
    pub fn new(key: &ChaosKey, width: usize, height: usize) -> Self {
        Self {
            triplets: TripletIter::new(key.strategy_stream(PLACEMENT_DOMAIN), key.triplet_seeds),
            width,
            height,
            taken: HashSet::new(),
            placements: Vec::new(),
            draws: 0,
        }
    }

    pub fn placements(&self) -> &[Triplet] {
        &self.placements
    }

    /// Draws until `nbits` placements exist, within `DRAWS_PER_BIT * nbits`
    /// draws in total.
    pub fn extend_to(&mut self, nbits: usize) -> Result<&[Triplet]> {
        let available = capacity(self.width, self.height);
        if nbits > available {
            return Err(Error::CapacityExceeded {
                needed: nbits,
                available,
            });
        }
        let cap = DRAWS_PER_BIT.saturating_mul(nbits);
        while self.placements.len() < nbits {
            if self.draws >= cap {
                return Err(Error::PlanExhausted {
                    draws: self.draws,
                    placed: self.placements.len(),
                    wanted: nbits,
                });
            }
            let t = self.triplets.next().expect("key bit stream is unbounded");
            self.draws += 1;
            if t.row < self.height
                && t.col < self.width
                && self.taken.insert((t.row, t.col, t.plane))
            {
                self.placements.push(t);
            }
        }
        Ok(&self.placements[..nbits])
    }
}

pub fn build_plan(
    key: &ChaosKey,
    width: usize,
    height: usize,
    nbits: usize,
) -> Result<SpatialEmbedPlan> {
    let mut builder = PlanBuilder::new(key, width, height);
    let placements = builder.extend_to(nbits)?.to_vec();
    Ok(SpatialEmbedPlan {
        placements,
        message_bits: nbits,
    })
}

#[inline]
fn mask(t: &Triplet) -> u8 {
    1 << (t.plane - 1)
}

fn effective_key(img: &GrayImage, key: &ChaosKey, authenticate: bool) -> Result<ChaosKey> {
    key.validate()?;
    if authenticate {
        Ok(authenticated_key(key, &read_msc(img, &DEFAULT_MSB_SET)?))
    } else {
        Ok(key.clone())
    }
}

/// Frames, pads to whole bytes and mixes the text; returns the bytes that
/// go through CIRC.
fn encrypt(text: &str, key: &ChaosKey) -> Result<Vec<u8>> {
    let mut framed = frame_payload(&text_to_bits(text)?)?;
    framed.pad_to_bytes();
    let s = mix_strategy(key, framed.len())?;
    Ok(mix(&framed, &s, s.len())?.to_bytes())
}

fn decrypt(bytes: &[u8], key: &ChaosKey) -> Result<String> {
    let mixed = BitString::from_bytes(bytes, bytes.len() * 8)?;
    if mixed.is_empty() {
        return Err(Error::MalformedFrame("empty payload".into()));
    }
    let s = mix_strategy(key, mixed.len())?;
    let framed = mix(&mixed, &s, s.len())?;
    bits_to_text(&unframe_payload(&framed)?)
}

/// Coded bit count for a text of `chars` characters.
pub fn coded_bits(chars: usize) -> usize {
    let framed = crate::payload::FRAME_HEADER_BITS + crate::payload::BITS_PER_CHAR * chars;
    circ_config().encoded_len(framed.div_ceil(8)) * 8
}

pub fn circ_config() -> CircConfig {
    CircConfig::with_delay(INTERLEAVE_DELAY)
}

pub fn embed(img: &GrayImage, text: &str, key: &ChaosKey, authenticate: bool) -> Result<GrayImage> {
    let key = effective_key(img, key, authenticate)?;
    let coded = circ_config().encode(&encrypt(text, &key)?)?;
    let bits = BitString::from_bytes(&coded, coded.len() * 8)?;
    let plan = build_plan(&key, img.width(), img.height(), bits.len())?;
    let mut out = img.clone();
    for (t, bit) in plan.placements.iter().zip(bits.iter()) {
        let p = out.get(t.row, t.col);
        out.set(t.row, t.col, if bit { p | mask(t) } else { p & !mask(t) });
    }
    Ok(out)
}

/// Bytes read along `placements`, and for each byte whether any of its
/// bits came from a saturated pixel.
fn read_bytes(img: &GrayImage, placements: &[Triplet]) -> (Vec<u8>, Vec<bool>) {
    let bits: BitString = placements
        .iter()
        .map(|t| img.get(t.row, t.col) & mask(t) != 0)
        .collect();
    let suspect = placements
        .chunks(8)
        .map(|byte| {
            byte.iter()
                .any(|t| matches!(img.get(t.row, t.col), 0 | 255))
        })
        .collect();
    (bits.to_bytes(), suspect)
}

/// Recovers the text from a stego image. Never needs the cover.
pub fn extract(img: &GrayImage, key: &ChaosKey, authenticate: bool) -> Result<String> {
    let key = effective_key(img, key, authenticate)?;
    match extract_frame(img, &key, false) {
        Ok(payload) => decrypt(&payload, &key),
        Err(first) => match extract_frame(img, &key, true) {
            Ok(payload) => decrypt(&payload, &key),
            Err(_) => Err(first),
        },
    }
}

fn extract_frame(img: &GrayImage, key: &ChaosKey, hinted: bool) -> Result<Vec<u8>> {
    let circ = circ_config();
    let mut builder = PlanBuilder::new(key, img.width(), img.height());
    let none: &[bool] = &[];

    let (head, head_hints) = read_bytes(img, builder.extend_to(circ.min_frame_len() * 8)?);
    let len = circ.peek_payload_len_hinted(&head, if hinted { &head_hints } else { none })?;
    let total = circ.encoded_len(len) * 8;
    let available = capacity(img.width(), img.height());
    if total > available {
        return Err(Error::MalformedFrame(format!(
            "length prefix {len} needs {total} bits, image offers {available}"
        )));
    }
    let (all, hints) = read_bytes(img, builder.extend_to(total)?);
    Ok(circ
        .decode_hinted(&all, if hinted { &hints } else { none })?
        .payload)
}
