//! Non-blind switch-mode watermarking in the Haar wavelet domain.
//!
//! The watermark is mixed by chaotic iterations (as in [`crate::stego`]),
//! then drives the switch strategy
//!
//! ```text
//! U[0] = u0,   U[n+1] = V[n+1] + 2 U[n] + n  (mod M)
//! V[n] = 2 S[n mod |S|] + e[n mod L]
//! ```
//!
//! where `S` is the encryption strategy, `e` the encrypted watermark of
//! length `L`, and `M` the number of selected coefficients. `L * repetition`
//! cells are negated, one per strategy term. Detection negates the same
//! cells of the candidate and compares the selected coefficients with the
//! original's: each cell of a genuine copy is then negated an even number
//! of times.

use crate::chaos::{iterate, Negation};
use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::keystream::{authenticated_key, ChaosKey, UStrategy};
use crate::metrics::rms;
use crate::payload::BitString;
use crate::stego::{mix, mix_strategy};
use crate::transform::dwt::{dwt_forward, dwt_inverse, Band, DwtPyramid};
use crate::transform::lsc::{read_msc, LscCarrier, LscDomain, LscSelector};

/// Everything that must match between embedding and detection.
#[derive(Debug, Clone, PartialEq)]
pub struct SwitchParams {
    pub key: ChaosKey,
    pub selector: LscSelector,
    /// Bind the strategy to these most significant bits of the original.
    pub msb_set: Option<Vec<u8>>,
}

impl SwitchParams {
    pub fn new(key: ChaosKey, selector: LscSelector) -> Self {
        Self {
            key,
            selector,
            msb_set: None,
        }
    }

    pub fn authenticated(mut self, msb_set: Vec<u8>) -> Self {
        self.msb_set = Some(msb_set);
        self
    }

    fn levels(&self) -> Result<usize> {
        match self.selector.domain {
            LscDomain::Pixel => Err(Error::BadSelector(
                "switch watermarking needs a wavelet selector".into(),
            )),
            d => Ok(d.levels()),
        }
    }

    /// Key actually used, given the image whose MSCs authenticate it.
    fn effective_key(&self, reference: &GrayImage) -> Result<ChaosKey> {
        self.key.validate()?;
        match &self.msb_set {
            Some(set) => Ok(authenticated_key(&self.key, &read_msc(reference, set)?)),
            None => Ok(self.key.clone()),
        }
    }
}

/// Switch strategy terms over `[0, modulus)` and their count.
pub fn switch_strategy(
    wm_bits: &BitString,
    key: &ChaosKey,
    modulus: usize,
) -> Result<(Vec<usize>, usize)> {
    if wm_bits.is_empty() {
        return Ok((Vec::new(), 0));
    }
    let s = mix_strategy(key, wm_bits.len())?;
    let encrypted = mix(wm_bits, &s, s.len())?;
    let steps = (wm_bits.len() as u64)
        .checked_mul(key.repetition)
        .and_then(|n| usize::try_from(n).ok())
        .ok_or(Error::PayloadTooLarge(wm_bits.len()))?;
    let v = (0..steps).map(|n| {
        let base = if s.is_empty() {
            0
        } else {
            s.terms()[n % s.len()]
        };
        2 * base + encrypted.as_slice()[n % encrypted.len()] as usize
    });
    let terms: Vec<usize> = UStrategy::new(v, key.u0, modulus).collect();
    Ok((terms, steps))
}

fn apply_switch(
    pyr: &mut DwtPyramid,
    wm_bits: &BitString,
    key: &ChaosKey,
    sel: &LscSelector,
) -> Result<usize> {
    let state = pyr.read_lsc(sel)?;
    let (terms, steps) = switch_strategy(wm_bits, key, state.size())?;
    let switched = iterate(&state, terms, &Negation, steps)?;
    pyr.write_lsc(sel, &switched)?;
    Ok(steps)
}

fn switch_image(
    img: &GrayImage,
    wm_bits: &BitString,
    key: &ChaosKey,
    params: &SwitchParams,
) -> Result<GrayImage> {
    let mut pyr = dwt_forward(img, params.levels()?)?;
    apply_switch(&mut pyr, wm_bits, key, &params.selector)?;
    dwt_inverse(&pyr)
}

/// Negates the key-selected LSCs of `img` and resynthesizes it.
pub fn embed_switch(
    img: &GrayImage,
    wm_bits: &BitString,
    params: &SwitchParams,
) -> Result<GrayImage> {
    let key = params.effective_key(img)?;
    switch_image(img, wm_bits, &key, params)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Watermarked,
    NotWatermarked,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Watermarked => "watermarked",
            Verdict::NotWatermarked => "not-watermarked",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectionReport {
    pub rms: f64,
    pub threshold: f64,
    pub verdict: Verdict,
    pub selector: LscSelector,
    pub key_fingerprint: u64,
    pub steps: usize,
}

impl std::fmt::Display for DetectionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "rms={:.6}", self.rms)?;
        writeln!(f, "threshold={:.6}", self.threshold)?;
        writeln!(f, "verdict={}", self.verdict)?;
        writeln!(f, "selector={}", self.selector)?;
        writeln!(f, "key={:016x}", self.key_fingerprint)?;
        write!(f, "steps={}", self.steps)
    }
}

/// Half the RMS a single, unreturned switch pass would leave: cells negated
/// an odd number of times each differ by `2^bit`.
pub fn default_threshold(terms: &[usize], modulus: usize, bit: u8) -> f64 {
    if modulus == 0 {
        return 0.0;
    }
    let mut odd = vec![false; modulus];
    for t in terms {
        odd[*t] = !odd[*t];
    }
    let flipped = odd.iter().filter(|o| **o).count();
    0.5 * (1u64 << bit) as f64 * (flipped as f64 / modulus as f64).sqrt()
}

/// Re-applies the switch to `candidate` and measures the RMS distance of
/// the selected coefficients to those of `original`. `threshold = None`
/// uses [`default_threshold`].
pub fn detect(
    candidate: &GrayImage,
    original: &GrayImage,
    wm_bits: &BitString,
    params: &SwitchParams,
    threshold: Option<f64>,
) -> Result<DetectionReport> {
    if !candidate.same_dims(original) {
        return Err(Error::DimensionMismatch {
            expected: original.len(),
            actual: candidate.len(),
        });
    }
    let key = params.effective_key(original)?;
    let levels = params.levels()?;
    let sel = &params.selector;

    let mut pyr = dwt_forward(candidate, levels)?;
    let m = pyr.lsc_len(sel)?;
    let steps = apply_switch(&mut pyr, wm_bits, &key, sel)?;
    let returned = dwt_forward(&dwt_inverse(&pyr)?, levels)?;
    let reference = dwt_forward(original, levels)?;

    let (band, level) = match sel.domain {
        LscDomain::Dwt { band, level } => (band, level),
        LscDomain::Pixel => unreachable!("levels() rejects pixel selectors"),
    };
    let a = reference.band(band, level).expect("selector checked");
    let b = returned.band(band, level).expect("selector checked");
    let value = rms(a, b)?;
    let threshold = match threshold {
        Some(t) => t,
        None => {
            let (terms, _) = switch_strategy(wm_bits, &key, m)?;
            default_threshold(&terms, m, sel.bit)
        }
    };
    Ok(DetectionReport {
        rms: value,
        threshold,
        verdict: if value <= threshold {
            Verdict::Watermarked
        } else {
            Verdict::NotWatermarked
        },
        selector: *sel,
        key_fingerprint: key.fingerprint(),
        steps,
    })
}

/// One row of a wrong-parameter sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// `correct`, or the name of the perturbed parameter.
    pub parameter: &'static str,
    /// Value used for that parameter, as text.
    pub value: String,
    pub rms: f64,
}

fn pick<T: PartialEq + Clone>(current: &T, preferred: T, fallback: T) -> T {
    if *current != preferred {
        preferred
    } else {
        fallback
    }
}

/// The single-parameter perturbations of a sweep, in table order.
pub fn perturbations(params: &SwitchParams) -> Vec<(&'static str, String, SwitchParams)> {
    let mut rows = Vec::new();
    let key = &params.key;

    let mu = pick(&key.mu, 3.99987, 3.999999);
    let mut p = params.clone();
    p.key.mu = mu;
    rows.push(("mu", mu.to_string(), p));

    let x0 = pick(&key.x0, 0.64, 0.65);
    let mut p = params.clone();
    p.key.x0 = x0;
    rows.push(("x0", x0.to_string(), p));

    let iterations = pick(&key.iterations, 19_950, 20_000);
    let mut p = params.clone();
    p.key.iterations = iterations;
    rows.push(("iterations", iterations.to_string(), p));

    let msb = pick(&params.msb_set, Some(vec![5, 6, 7]), Some(vec![4, 5, 6, 7]));
    let mut p = params.clone();
    p.msb_set = msb.clone();
    rows.push(("msb", format!("{:?}", msb.unwrap_or_default()), p));

    let mut p = params.clone();
    if let LscDomain::Dwt { band, level } = params.selector.domain {
        let level = if level > 1 { level - 1 } else { level + 1 };
        // LL only exists at the coarsest level, so it moves with the level
        p.selector.domain = LscDomain::Dwt { band, level };
    }
    rows.push(("band", p.selector.domain.to_string(), p));

    let u0 = pick(&key.u0, Some(2), Some(1));
    let mut p = params.clone();
    p.key.u0 = u0;
    rows.push(("u0", u0.map_or("none".into(), |u| u.to_string()), p));

    let mut p = params.clone();
    p.selector.bit = if params.selector.bit == 0 { 1 } else { 0 };
    rows.push(("bit", p.selector.bit.to_string(), p));

    rows
}

/// Detection RMS with the correct parameters, then with each single
/// parameter perturbed.
pub fn wrong_parameter_sweep(
    candidate: &GrayImage,
    original: &GrayImage,
    wm_bits: &BitString,
    params: &SwitchParams,
) -> Result<Vec<SweepRow>> {
    let mut rows = vec![SweepRow {
        parameter: "correct",
        value: "-".into(),
        rms: detect(candidate, original, wm_bits, params, Some(0.0))?.rms,
    }];
    for (parameter, value, p) in perturbations(params) {
        rows.push(SweepRow {
            parameter,
            value,
            rms: detect(candidate, original, wm_bits, &p, Some(0.0))?.rms,
        });
    }
    Ok(rows)
}

/// Default selectors: second least significant bit of HH2 or of LL1.
pub fn hh2() -> LscSelector {
    LscSelector::dwt(Band::HH, 2, 1).expect("valid selector")
}

pub fn ll1() -> LscSelector {
    LscSelector::dwt(Band::LL, 1, 1).expect("valid selector")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image_io::synth_test_image;
    use crate::metrics::{max_abs_diff, psnr};
    use crate::payload::text_to_bits;

    fn wm() -> BitString {
        text_to_bits("Watermark: chaotic iterations in the wavelet domain, detected by RMS.")
            .unwrap()
    }

    #[test]
    fn empty_watermark_changes_nothing() {
        let img = synth_test_image(64, 64, 1);
        let out = embed_switch(
            &img,
            &BitString::new(),
            &SwitchParams::new(ChaosKey::default(), hh2()),
        )
        .unwrap();
        assert!(max_abs_diff(&img, &out).unwrap() <= 1);
    }

    #[test]
    fn rejects_pixel_selector_and_bad_sizes() {
        let img = synth_test_image(64, 64, 1);
        let p = SwitchParams::new(ChaosKey::default(), LscSelector::pixel(0).unwrap());
        assert!(matches!(
            embed_switch(&img, &wm(), &p),
            Err(Error::BadSelector(_))
        ));
        let odd = synth_test_image(66, 64, 1);
        let p = SwitchParams::new(ChaosKey::default(), hh2());
        assert!(matches!(
            embed_switch(&odd, &wm(), &p),
            Err(Error::DimensionNotDyadic { .. })
        ));
        assert!(matches!(
            detect(&odd, &img, &wm(), &p, None),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn strategy_shape() {
        let key = ChaosKey {
            repetition: 3,
            ..ChaosKey::default()
        };
        let (terms, steps) = switch_strategy(&wm(), &key, 16384).unwrap();
        assert_eq!(steps, wm().len() * 3);
        assert_eq!(terms.len(), steps);
        assert_eq!(terms[0], 1);
        assert!(terms.iter().all(|t| *t < 16384));
        let (again, _) = switch_strategy(&wm(), &key, 16384).unwrap();
        assert_eq!(terms, again);
    }

    #[test]
    fn watermark_content_matters() {
        let key = ChaosKey::default();
        let a = switch_strategy(&wm(), &key, 16384).unwrap().0;
        let mut other = wm().into_bools();
        other[10] = !other[10];
        let b = switch_strategy(&BitString::from_bools(other), &key, 16384)
            .unwrap()
            .0;
        assert_ne!(a, b);
    }

    #[test]
    fn hh2_round_trip() {
        let img = synth_test_image(128, 128, 2);
        let p = SwitchParams::new(ChaosKey::default(), hh2());
        let marked = embed_switch(&img, &wm(), &p).unwrap();
        assert!(max_abs_diff(&img, &marked).unwrap() <= 1);
        assert!(psnr(&img, &marked).unwrap() > 50.0);

        let hit = detect(&marked, &img, &wm(), &p, None).unwrap();
        assert_eq!(hit.rms, 0.0);
        assert_eq!(hit.verdict, Verdict::Watermarked);
        let miss = detect(&img, &img, &wm(), &p, None).unwrap();
        assert!(miss.rms > 0.3, "{}", miss.rms);
        assert_eq!(miss.verdict, Verdict::NotWatermarked);
        assert!(hit.threshold > 0.0 && hit.threshold < miss.rms);
    }

    #[test]
    fn coefficient_round_trip_is_exact() {
        let img = synth_test_image(64, 64, 3);
        let key = ChaosKey::default();
        let mut pyr = dwt_forward(&img, 2).unwrap();
        let before = pyr.clone();
        apply_switch(&mut pyr, &wm(), &key, &hh2()).unwrap();
        assert_ne!(pyr, before);
        apply_switch(&mut pyr, &wm(), &key, &hh2()).unwrap();
        assert_eq!(pyr, before);
    }

    #[test]
    fn detect_leaves_inputs_alone() {
        let img = synth_test_image(64, 64, 4);
        let copy = img.clone();
        let p = SwitchParams::new(ChaosKey::default(), ll1());
        let marked = embed_switch(&img, &wm(), &p).unwrap();
        let marked_copy = marked.clone();
        detect(&marked, &img, &wm(), &p, None).unwrap();
        assert_eq!((img, marked), (copy, marked_copy));
    }

    #[test]
    fn authenticated_detection() {
        let img = synth_test_image(128, 128, 5);
        let p = SwitchParams::new(ChaosKey::default(), hh2()).authenticated(vec![4, 5, 6, 7]);
        let marked = embed_switch(&img, &wm(), &p).unwrap();
        assert_eq!(detect(&marked, &img, &wm(), &p, None).unwrap().rms, 0.0);
        let plain = SwitchParams::new(ChaosKey::default(), hh2());
        assert!(detect(&marked, &img, &wm(), &plain, None).unwrap().rms > 0.1);
    }

    #[test]
    fn sweep_rows() {
        let img = synth_test_image(128, 128, 6);
        let p = SwitchParams::new(ChaosKey::default(), hh2());
        let marked = embed_switch(&img, &wm(), &p).unwrap();
        let rows = wrong_parameter_sweep(&marked, &img, &wm(), &p).unwrap();
        let names: Vec<_> = rows.iter().map(|r| r.parameter).collect();
        assert_eq!(
            names,
            [
                "correct",
                "mu",
                "x0",
                "iterations",
                "msb",
                "band",
                "u0",
                "bit"
            ]
        );
        assert_eq!(rows[5].value, "HH1");
        assert_eq!(rows[7].value, "0");
        for r in &rows[1..] {
            assert!(r.rms > rows[0].rms, "{r:?}");
        }
        assert_eq!(
            rows,
            wrong_parameter_sweep(&marked, &img, &wm(), &p).unwrap()
        );
    }

    #[test]
    fn perturbations_differ_from_base() {
        let p = SwitchParams::new(
            ChaosKey {
                mu: 3.99987,
                ..ChaosKey::default()
            },
            ll1(),
        );
        let rows = perturbations(&p);
        assert_eq!(rows.len(), 7);
        for (_, _, q) in &rows {
            assert_ne!(q, &p);
        }
        assert_eq!(rows[0].2.key.mu, 3.999999);
        assert_eq!(rows[4].1, "LL2");
    }

    #[test]
    fn report_lines() {
        let r = DetectionReport {
            rms: 0.25,
            threshold: 0.1,
            verdict: Verdict::NotWatermarked,
            selector: hh2(),
            key_fingerprint: 0xabc,
            steps: 7,
        };
        assert_eq!(
            r.to_string(),
            "rms=0.250000\nthreshold=0.100000\nverdict=not-watermarked\nselector=HH2:bit1\nkey=0000000000000abc\nsteps=7"
        );
    }
}
