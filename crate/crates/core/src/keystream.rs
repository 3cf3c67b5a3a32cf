//! Deterministic key-driven strategies.
//!
//! Everything random in the toolkit comes from a [`ChaosKey`]: a logistic
//! map `x <- mu * x * (1 - x)` thresholded at 0.5 yields a bit stream, bits
//! are grouped into strategy terms, and those terms feed the placement
//! triplets and the switch strategy `U`.

use std::fmt::Write as _;

use crate::chaos::Strategy;
use crate::error::{Error, Result};
use crate::payload::BitString;

/// Coordinates are reduced modulo this value, so row/column 255 is never used.
pub const TRIPLET_MODULUS: u64 = 255;

/// Key material. Every strategy in the toolkit is a pure function of it.
#[derive(Debug, Clone, PartialEq)]
pub struct ChaosKey {
    pub mu: f64,
    pub x0: f64,
    /// Logistic iterations dropped before the first emitted bit.
    pub discard: u64,
    /// First term of the switch strategy; `None` means "use the first
    /// encryption strategy term".
    pub u0: Option<u64>,
    /// Seeds of the placement triplet recurrence (row, column, bit plane).
    pub triplet_seeds: (u64, u64, u8),
    /// Logistic bits spent on watermark encryption.
    pub iterations: u64,
    /// How many times the encrypted watermark drives the switch strategy.
    pub repetition: u64,
    /// Set once the key has been bound to a cover's most significant bits.
    pub auth_msc_digest: Option<u64>,
}

impl Default for ChaosKey {
    fn default() -> Self {
        Self {
            mu: 3.999999,
            x0: 0.65,
            discard: 0,
            u0: Some(1),
            triplet_seeds: (11, 23, 1),
            iterations: 20_000,
            repetition: 1,
            auth_msc_digest: None,
        }
    }
}

impl ChaosKey {
    pub fn validate(&self) -> Result<()> {
        if !(self.mu.is_finite() && self.mu > 0.0 && self.mu <= 4.0) {
            return Err(Error::InvalidKey(format!("mu {} outside (0, 4]", self.mu)));
        }
        if !(self.x0.is_finite() && self.x0 > 0.0 && self.x0 < 1.0) {
            return Err(Error::InvalidKey(format!("x0 {} outside (0, 1)", self.x0)));
        }
        let (x, y, z) = self.triplet_seeds;
        if x >= TRIPLET_MODULUS || y >= TRIPLET_MODULUS || !(1..=2).contains(&z) {
            return Err(Error::InvalidKey(format!(
                "triplet seeds ({x}, {y}, {z}) outside [0,255)x[0,255)x{{1,2}}"
            )));
        }
        if self.repetition == 0 {
            return Err(Error::InvalidKey("repetition must be at least 1".into()));
        }
        Ok(())
    }

    /// Serializes to the line-based key file format. Reals carry both a
    /// decimal rendering and their IEEE-754 bit pattern; the latter wins on read.
    pub fn to_key_file(&self) -> String {
        let mut s = String::from("# chaosmark key\n");
        let _ = writeln!(s, "mu = {}", self.mu);
        let _ = writeln!(s, "mu_hex = {:#018x}", self.mu.to_bits());
        let _ = writeln!(s, "x0 = {}", self.x0);
        let _ = writeln!(s, "x0_hex = {:#018x}", self.x0.to_bits());
        let _ = writeln!(s, "discard = {}", self.discard);
        match self.u0 {
            Some(u) => writeln!(s, "u0 = {u}"),
            None => writeln!(s, "u0 = none"),
        }
        .ok();
        let (x, y, z) = self.triplet_seeds;
        let _ = writeln!(s, "triplet_seeds = {x} {y} {z}");
        let _ = writeln!(s, "iterations = {}", self.iterations);
        let _ = writeln!(s, "repetition = {}", self.repetition);
        match self.auth_msc_digest {
            Some(d) => writeln!(s, "auth_msc_digest = {d:#018x}"),
            None => writeln!(s, "auth_msc_digest = none"),
        }
        .ok();
        s
    }

    pub fn from_key_file(text: &str) -> Result<Self> {
        let mut key = ChaosKey::default();
        let (mut mu_dec, mut mu_hex, mut x0_dec, mut x0_hex) = (None, None, None, None);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, value) = line
                .split_once('=')
                .map(|(n, v)| (n.trim(), v.trim()))
                .ok_or_else(|| bad_line(lineno, "expected `name = value`"))?;
            match name {
                "mu" => mu_dec = Some(parse_f64(value, lineno)?),
                "mu_hex" => mu_hex = Some(f64::from_bits(parse_hex(value, lineno)?)),
                "x0" => x0_dec = Some(parse_f64(value, lineno)?),
                "x0_hex" => x0_hex = Some(f64::from_bits(parse_hex(value, lineno)?)),
                "discard" => key.discard = parse_u64(value, lineno)?,
                "u0" => key.u0 = parse_optional(value, lineno, parse_u64)?,
                "triplet_seeds" => {
                    let parts: Vec<_> = value.split_whitespace().collect();
                    if parts.len() != 3 {
                        return Err(bad_line(lineno, "triplet_seeds needs three integers"));
                    }
                    let z = parse_u64(parts[2], lineno)?;
                    key.triplet_seeds = (
                        parse_u64(parts[0], lineno)?,
                        parse_u64(parts[1], lineno)?,
                        u8::try_from(z).map_err(|_| bad_line(lineno, "bit plane too large"))?,
                    );
                }
                "iterations" => key.iterations = parse_u64(value, lineno)?,
                "repetition" => key.repetition = parse_u64(value, lineno)?,
                "auth_msc_digest" => {
                    key.auth_msc_digest = parse_optional(value, lineno, parse_hex)?
                }
                other => return Err(bad_line(lineno, &format!("unknown field `{other}`"))),
            }
        }
        key.mu = mu_hex.or(mu_dec).unwrap_or(key.mu);
        key.x0 = x0_hex.or(x0_dec).unwrap_or(key.x0);
        key.validate()?;
        Ok(key)
    }

    /// 64-bit FNV-1a of the canonical key file; identifies a key in reports.
    pub fn fingerprint(&self) -> u64 {
        fnv1a64(self.to_key_file().as_bytes())
    }

    /// Lazily generated logistic bit stream of this key.
    pub fn bits(&self) -> LogisticBits {
        LogisticBits::new(self)
    }

    /// Unbounded strategy over `[0, domain)` built from this key's bits.
    pub fn strategy_stream(&self, domain: usize) -> StrategyStream<LogisticBits> {
        StrategyStream::new(self.bits(), domain)
    }
}

fn bad_line(lineno: usize, msg: &str) -> Error {
    Error::InvalidKey(format!("line {}: {msg}", lineno + 1))
}

fn parse_f64(v: &str, lineno: usize) -> Result<f64> {
    v.parse()
        .map_err(|_| bad_line(lineno, &format!("bad real `{v}`")))
}

fn parse_u64(v: &str, lineno: usize) -> Result<u64> {
    v.parse()
        .map_err(|_| bad_line(lineno, &format!("bad integer `{v}`")))
}

fn parse_hex(v: &str, lineno: usize) -> Result<u64> {
    let digits = v
        .strip_prefix("0x")
        .or_else(|| v.strip_prefix("0X"))
        .unwrap_or(v);
    u64::from_str_radix(digits, 16).map_err(|_| bad_line(lineno, &format!("bad hex `{v}`")))
}

fn parse_optional(
    v: &str,
    lineno: usize,
    parse: fn(&str, usize) -> Result<u64>,
) -> Result<Option<u64>> {
    if v.eq_ignore_ascii_case("none") {
        Ok(None)
    } else {
        parse(v, lineno).map(Some)
    }
}

/// Logistic-map bit generator: one bit per iteration, `1` iff `x >= 0.5`.
#[derive(Debug, Clone)]
pub struct LogisticBits {
    mu: f64,
    x: f64,
}

impl LogisticBits {
    pub fn new(key: &ChaosKey) -> Self {
        let mut gen = Self {
            mu: key.mu,
            x: key.x0,
        };
        for _ in 0..key.discard {
            gen.step();
        }
        gen
    }

    #[inline]
    fn step(&mut self) -> f64 {
        self.x = self.mu * self.x * (1.0 - self.x);
        self.x
    }

    /// Current orbit value (the last emitted iterate).
    pub fn state(&self) -> f64 {
        self.x
    }
}

impl Iterator for LogisticBits {
    type Item = bool;

    #[inline]
    fn next(&mut self) -> Option<bool> {
        Some(self.step() >= 0.5)
    }
}

pub fn logistic_bits(key: &ChaosKey, n: usize) -> BitString {
    key.bits().take(n).collect()
}

/// Bits consumed per strategy term for a domain of `domain` cells:
/// `ceil(log2(domain))`, and 1 for a single-cell domain.
pub fn group_size(domain: usize) -> usize {
    if domain <= 2 {
        1
    } else {
        (usize::BITS - (domain - 1).leading_zeros()) as usize
    }
}

/// Groups bits MSB-first into `group_size(domain)`-bit integers reduced mod `domain`.
pub fn bits_to_strategy(bits: &BitString, domain: usize) -> Result<Strategy> {
    if domain == 0 {
        return Err(Error::InvalidKey("strategy domain must be positive".into()));
    }
    let group = group_size(domain);
    if !bits.len().is_multiple_of(group) {
        return Err(Error::LengthNotMultipleOfGroup {
            len: bits.len(),
            group,
        });
    }
    let terms = StrategyStream::new(bits.iter(), domain).collect();
    Strategy::new(terms, domain)
}

/// Streaming version of [`bits_to_strategy`]; ends when fewer than a full
/// group of bits remain.
#[derive(Debug, Clone)]
pub struct StrategyStream<I> {
    bits: I,
    domain: u64,
    group: usize,
}

impl<I: Iterator<Item = bool>> StrategyStream<I> {
    pub fn new(bits: I, domain: usize) -> Self {
        assert!(domain > 0, "strategy domain must be positive");
        Self {
            bits,
            domain: domain as u64,
            group: group_size(domain),
        }
    }

    pub fn domain(&self) -> usize {
        self.domain as usize
    }

    pub fn group(&self) -> usize {
        self.group
    }
}

impl<I: Iterator<Item = bool>> Iterator for StrategyStream<I> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        let mut value = 0u64;
        for _ in 0..self.group {
            value = value << 1 | self.bits.next()? as u64;
        }
        Some((value % self.domain) as usize)
    }
}

/// One placement: pixel row, pixel column, and bit plane (1 = least significant).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triplet {
    pub row: usize,
    pub col: usize,
    pub plane: u8,
}

/// Lazy placement recurrence. The seed triplet is emitted first; every
/// further triplet consumes three strategy terms:
///
/// ```text
/// x[n+1] = 2 x[n] + S[3n]   + n  (mod 255)
/// y[n+1] = 2 y[n] + S[3n+1] + n  (mod 255)
/// z[n+1] = 2 z[n] + S[3n+2] + n  (mod 2), reported as z + 1
/// ```
#[derive(Debug, Clone)]
pub struct TripletIter<I> {
    terms: I,
    current: Option<(u64, u64, u64)>,
    n: u64,
    consumed: usize,
}

impl<I: Iterator<Item = usize>> TripletIter<I> {
    pub fn new(terms: I, seeds: (u64, u64, u8)) -> Self {
        Self {
            terms,
            current: Some((seeds.0, seeds.1, seeds.2 as u64)),
            n: 0,
            consumed: 0,
        }
    }

    /// Strategy terms consumed so far.
    pub fn consumed(&self) -> usize {
        self.consumed
    }
}

impl<I: Iterator<Item = usize>> Iterator for TripletIter<I> {
    type Item = Triplet;

    fn next(&mut self) -> Option<Triplet> {
        let (x, y, z) = self.current.take()?;
        let out = Triplet {
            row: x as usize,
            col: y as usize,
            plane: z as u8,
        };
        let mut pull = || {
            let t = self.terms.next().map(|t| t as u64);
            self.consumed += t.is_some() as usize;
            t
        };
        if let (Some(a), Some(b), Some(c)) = (pull(), pull(), pull()) {
            let n = self.n;
            self.current = Some((
                (2 * x + a + n) % TRIPLET_MODULUS,
                (2 * y + b + n) % TRIPLET_MODULUS,
                // z is carried as 1 or 2; the mod-2 value is z - 1
                (2 * (z - 1) + c + n) % 2 + 1,
            ));
            self.n += 1;
        }
        Some(out)
    }
}

/// First `n` placement triplets; the strategy must supply `3n` terms.
pub fn triplet_stream(strategy: &Strategy, key: &ChaosKey, n: usize) -> Result<Vec<Triplet>> {
    if strategy.len() < 3 * n {
        return Err(Error::StrategyExhausted(strategy.len()));
    }
    Ok(
        TripletIter::new(strategy.terms().iter().copied(), key.triplet_seeds)
            .take(n)
            .collect(),
    )
}

/// Lazy switch strategy: `U[0] = u0` (or `S[0]`), then
/// `U[n+1] = S[n+1] + 2 U[n] + n (mod M)`.
#[derive(Debug, Clone)]
pub struct UStrategy<I> {
    terms: I,
    modulus: u64,
    u0: Option<u64>,
    current: Option<u64>,
    n: u64,
}

impl<I: Iterator<Item = usize>> UStrategy<I> {
    pub fn new(terms: I, u0: Option<u64>, modulus: usize) -> Self {
        assert!(modulus > 0, "switch strategy modulus must be positive");
        Self {
            terms,
            modulus: modulus as u64,
            u0,
            current: None,
            n: 0,
        }
    }
}

impl<I: Iterator<Item = usize>> Iterator for UStrategy<I> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        let s = self.terms.next()? as u64;
        let u = match self.current {
            None => self.u0.unwrap_or(s) % self.modulus,
            Some(prev) => {
                let u = (s % self.modulus + 2 * prev + self.n % self.modulus) % self.modulus;
                self.n += 1;
                u
            }
        };
        self.current = Some(u);
        Some(u as usize)
    }
}

/// First `n` terms of the switch strategy over `[0, modulus)`.
pub fn u_strategy(
    strategy: &Strategy,
    u0: Option<u64>,
    modulus: usize,
    n: usize,
) -> Result<Strategy> {
    if modulus == 0 {
        return Err(Error::InvalidKey(
            "switch strategy modulus must be positive".into(),
        ));
    }
    if strategy.len() < n {
        return Err(Error::StrategyExhausted(strategy.len()));
    }
    let terms = UStrategy::new(strategy.terms().iter().copied(), u0, modulus)
        .take(n)
        .collect();
    Strategy::new(terms, modulus)
}

pub const FNV_OFFSET_BASIS: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET_BASIS, |h, b| {
        (h ^ *b as u64).wrapping_mul(FNV_PRIME)
    })
}

/// Binds a key to a cover's most significant bits: the FNV-1a digest of
/// the packed MSC bits is folded into `x0`, so any change to those bits
/// changes every strategy derived from the key.
pub fn authenticated_key(key: &ChaosKey, msc_bits: &BitString) -> ChaosKey {
    let digest = fnv1a64(&msc_bits.to_bytes());
    let shift = digest as f64 / 2f64.powi(64);
    let x0 = (key.x0 + shift)
        .fract()
        .clamp(f64::EPSILON, 1.0 - f64::EPSILON);
    ChaosKey {
        x0,
        auth_msc_digest: Some(digest),
        ..key.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::{any, prop_assert, prop_assert_eq, proptest, ProptestConfig};

    fn reference_key() -> ChaosKey {
        ChaosKey {
            u0: None,
            ..ChaosKey::default()
        }
    }

    #[test]
    fn first_logistic_bit() {
        let key = reference_key();
        // 3.999999 * 0.65 * 0.35, evaluated left to right in f64
        let expected = 3.999999f64 * 0.65 * (1.0 - 0.65);
        assert!((expected - 0.9099997725).abs() < 1e-12);
        let mut gen = key.bits();
        assert_eq!(gen.next(), Some(true));
        assert_eq!(gen.state(), expected);
        assert_eq!(logistic_bits(&key, 1).to_string(), "1");
        assert!(logistic_bits(&key, 0).is_empty());
    }

    #[test]
    fn logistic_bits_replay_and_discard() {
        let key = reference_key();
        let a = logistic_bits(&key, 20_000);
        assert_eq!(a, logistic_bits(&key, 20_000));
        let skipped = ChaosKey {
            discard: 5,
            ..key.clone()
        };
        assert_eq!(
            logistic_bits(&skipped, 100).as_slice(),
            &a.as_slice()[5..105]
        );
        // a fair-ish source: the threshold at 0.5 splits the invariant density evenly
        let ones = a.count_ones() as f64 / a.len() as f64;
        assert!((0.45..0.55).contains(&ones), "ones fraction {ones}");
    }

    #[test]
    fn group_sizes() {
        assert_eq!(group_size(1), 1);
        assert_eq!(group_size(2), 1);
        assert_eq!(group_size(3), 2);
        assert_eq!(group_size(756), 10);
        assert_eq!(group_size(1024), 10);
        assert_eq!(group_size(1025), 11);
        assert_eq!(group_size(16384), 14);
    }

    #[test]
    fn grouping_examples() {
        let s = bits_to_strategy(&BitString::zeros(10), 756).unwrap();
        assert_eq!(s.terms(), &[0]);
        let s = bits_to_strategy(&BitString::from_bools(vec![true; 10]), 756).unwrap();
        assert_eq!(s.terms(), &[267]);
        let s = bits_to_strategy(&logistic_bits(&reference_key(), 20_000), 756).unwrap();
        assert_eq!(s.len(), 2000);
        assert!(s.terms().iter().all(|t| *t < 756));
        assert_eq!(
            bits_to_strategy(&BitString::zeros(15), 756),
            Err(Error::LengthNotMultipleOfGroup { len: 15, group: 10 })
        );
    }

    #[test]
    fn triplet_seed_and_first_update() {
        let key = reference_key();
        let s = Strategy::new(vec![743, 0, 0, 5, 5, 5], 756).unwrap();
        let t = triplet_stream(&s, &key, 2).unwrap();
        assert_eq!(
            t[0],
            Triplet {
                row: 11,
                col: 23,
                plane: 1
            }
        );
        // (2*11 + 743 + 0) mod 255 = 0; (2*23 + 0 + 0) mod 255 = 46; (2*0 + 0 + 0) mod 2 = 0 -> plane 1
        assert_eq!(
            t[1],
            Triplet {
                row: 0,
                col: 46,
                plane: 1
            }
        );
        assert_eq!(
            triplet_stream(&s, &key, 3),
            Err(Error::StrategyExhausted(6))
        );
    }

    #[test]
    fn triplets_consume_three_terms_each() {
        let terms: Vec<usize> = (0..30).collect();
        let mut it = TripletIter::new(terms.into_iter(), (11, 23, 1));
        for k in 1..=10 {
            it.next().unwrap();
            assert_eq!(it.consumed(), 3 * k);
        }
    }

    #[test]
    fn triplet_stream_replays() {
        let key = reference_key();
        let s = key.strategy_stream(795);
        let terms: Vec<usize> = s.take(3 * 2112).collect();
        let strategy = Strategy::new(terms, 795).unwrap();
        let a = triplet_stream(&strategy, &key, 2112).unwrap();
        let b = triplet_stream(&strategy, &key, 2112).unwrap();
        assert_eq!(a, b);
        assert!(a
            .iter()
            .all(|t| t.row < 255 && t.col < 255 && (1..=2).contains(&t.plane)));
    }

    #[test]
    fn u_strategy_examples() {
        let s = Strategy::new(vec![7, 100, 3], 1000).unwrap();
        let u = u_strategy(&s, Some(1), 1000, 2).unwrap();
        assert_eq!(u.terms(), &[1, 102]);
        let u = u_strategy(&s, None, 1000, 3).unwrap();
        // U0 = S0 = 7, U1 = 100 + 14 + 0, U2 = 3 + 228 + 1
        assert_eq!(u.terms(), &[7, 114, 232]);
        assert_eq!(
            u_strategy(&s, None, 1000, 4),
            Err(Error::StrategyExhausted(3))
        );
    }

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a64(b""), FNV_OFFSET_BASIS);
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
        assert_eq!(fnv1a64(b"foobar"), 0x85944171f73967e8);
    }

    #[test]
    fn authentication_of_empty_msc() {
        let key = reference_key();
        let auth = authenticated_key(&key, &BitString::new());
        assert_eq!(auth.auth_msc_digest, Some(FNV_OFFSET_BASIS));
        let expected = (0.65 + FNV_OFFSET_BASIS as f64 / 2f64.powi(64)).fract();
        assert_eq!(auth.x0, expected);
        assert_eq!(auth, authenticated_key(&key, &BitString::new()));
    }

    #[test]
    fn authentication_avalanche() {
        use rand_chacha::rand_core::{RngCore, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let key = reference_key();
        for _ in 0..100 {
            let bits: Vec<bool> = (0..512).map(|_| rng.next_u32() & 1 == 1).collect();
            let mut flipped = bits.clone();
            let i = rng.next_u32() as usize % bits.len();
            flipped[i] = !flipped[i];
            let a = authenticated_key(&key, &BitString::from_bools(bits));
            let b = authenticated_key(&key, &BitString::from_bools(flipped));
            assert_ne!(a.auth_msc_digest, b.auth_msc_digest);
            assert_ne!(logistic_bits(&a, 256), logistic_bits(&b, 256));
        }
    }

    #[test]
    fn key_file_round_trip_is_bit_exact() {
        let key = ChaosKey {
            mu: 3.999_999_000_000_001,
            x0: 0.1 + 0.2,
            discard: 17,
            u0: None,
            triplet_seeds: (3, 254, 2),
            iterations: 19_950,
            repetition: 3,
            auth_msc_digest: Some(0xdead_beef_0123_4567),
        };
        let text = key.to_key_file();
        let back = ChaosKey::from_key_file(&text).unwrap();
        assert_eq!(back.mu.to_bits(), key.mu.to_bits());
        assert_eq!(back.x0.to_bits(), key.x0.to_bits());
        assert_eq!(back, key);
    }

    #[test]
    fn key_file_hex_wins_over_decimal() {
        let text = format!("mu = 3.5\nmu_hex = {:#x}\nx0 = 0.25\n", 3.75f64.to_bits());
        let key = ChaosKey::from_key_file(&text).unwrap();
        assert_eq!(key.mu, 3.75);
        assert_eq!(key.x0, 0.25);
    }

    #[test]
    fn key_file_errors() {
        assert!(ChaosKey::from_key_file("mu = 5").is_err());
        assert!(ChaosKey::from_key_file("x0 = 1.0").is_err());
        assert!(ChaosKey::from_key_file("bogus = 1").is_err());
        assert!(ChaosKey::from_key_file("mu 3.9").is_err());
        assert!(ChaosKey::from_key_file("triplet_seeds = 1 2 3").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn u_terms_stay_below_modulus(
            mu in 3.6f64..4.0,
            x0 in 0.01f64..0.99,
            u0 in proptest::option::of(any::<u64>()),
            modulus in 1usize..70_000,
        ) {
            let key = ChaosKey { mu, x0, u0, ..ChaosKey::default() };
            let u = UStrategy::new(key.strategy_stream(795), key.u0, modulus);
            let mut count = 0;
            for t in u.take(100_000 / 64) {
                prop_assert!(t < modulus);
                count += 1;
            }
            prop_assert_eq!(count, 100_000 / 64);
        }

        #[test]
        fn strategy_terms_below_domain(domain in 1usize..5000, x0 in 0.01f64..0.99) {
            let key = ChaosKey { x0, ..ChaosKey::default() };
            for t in key.strategy_stream(domain).take(500) {
                prop_assert!(t < domain);
            }
        }
    }

    #[test]
    fn u_terms_below_modulus_long_run() {
        let key = reference_key();
        for modulus in [16_384, 65_536, 1, 7] {
            let u = UStrategy::new(key.strategy_stream(795), Some(1), modulus);
            assert_eq!(u.take(100_000).filter(|t| *t >= modulus).count(), 0);
        }
    }
}
