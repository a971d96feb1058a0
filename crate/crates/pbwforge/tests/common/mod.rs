#![allow(dead_code)]

//! Shared helpers for the integration suites: catalog loading and seeded
//! random element generation.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pbwforge::catalog;
use pbwforge::coeffring::{RElement, RingPresentation};
use pbwforge::freealg::{FreePoly, Word};
use pbwforge::scalar::Scalar;
use pbwforge::skewext::{AElement, ExtensionPresentation, Monomial};

/// Catalog entries whose σ-filtered verdict is expected to hold.
pub const FILTERED_ENTRIES: &[&str] = &[
    "weyl-1",
    "weyl-2",
    "jordan-ext",
    "kt-general",
    "usl2",
    "type-I",
    "type-II",
    "quantum-plane",
    "quantum-weyl",
    "deform-linear",
    "deform-jordan",
    "deform-jordan-unit",
];

/// Every entry, filtered or not.
pub const ALL_ENTRIES: &[&str] = &[
    "weyl-1",
    "weyl-2",
    "jordan-ext",
    "kt-general",
    "usl2",
    "type-I",
    "type-II",
    "quantum-plane",
    "quantum-weyl",
    "deform-linear",
    "deform-jordan",
    "deform-jordan-unit",
    "non-filtered",
];

pub fn load(name: &str) -> ExtensionPresentation {
    catalog::load(name)
        .unwrap_or_else(|e| panic!("catalog entry `{name}`: {e}"))
        .extension
        .unwrap_or_else(|| panic!("catalog entry `{name}` has no extension"))
}

pub fn rng_for(entry: &str, salt: u64) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    for (i, b) in entry.bytes().enumerate() {
        seed[i % 32] ^= b;
    }
    seed[31] ^= salt as u8;
    ChaCha8Rng::from_seed(seed)
}

pub fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let numer = rng.gen_range(-4i64..=4);
    let denom = *[1i64, 1, 2, 3].get(rng.gen_range(0..4)).unwrap();
    Scalar::new(if numer == 0 { 1 } else { numer }, denom).unwrap()
}

/// A random nonzero ring element of degree at most `max_deg` (after
/// reduction the degree can only shrink).
pub fn random_relement(rng: &mut ChaCha8Rng, ring: &RingPresentation, max_deg: usize) -> RElement {
    let m = ring.generator_count();
    let mut poly = FreePoly::zero(ring.alphabet().clone());
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        let len = if m == 0 {
            0
        } else {
            rng.gen_range(0..=max_deg)
        };
        let letters: Vec<usize> = (0..len).map(|_| rng.gen_range(0..m)).collect();
        poly.add_term(Word::from_letters(letters), random_scalar(rng));
    }
    let reduced = ring.reduce(&poly).unwrap();
    if reduced.is_zero() {
        ring.one()
    } else {
        reduced
    }
}

/// A random nonzero element of the extension with total degree at most
/// `max_tdeg`.
pub fn random_aelement(
    rng: &mut ChaCha8Rng,
    ext: &ExtensionPresentation,
    max_tdeg: usize,
) -> AElement {
    let n = ext.variable_count();
    let mut out = ext.zero();
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        let mono_deg = rng.gen_range(0..=max_tdeg);
        let mut exponents = vec![0usize; n];
        for _ in 0..mono_deg {
            exponents[rng.gen_range(0..n)] += 1;
        }
        let coeff = random_relement(rng, ext.base(), max_tdeg - mono_deg);
        out = out
            .add(&ext.monomial_element(coeff, Monomial::new(exponents)))
            .unwrap();
    }
    if out.is_zero() {
        ext.one()
    } else {
        out
    }
}

/// Flattens a PBW-normal element into the word algebra over the combined
/// alphabet of a flattened presentation: coefficient words followed by the
/// sorted variable word. An independent representation used to cross-check
/// the structured arithmetic against plain word rewriting.
pub fn flatten_element(
    f: &AElement,
    ext: &ExtensionPresentation,
    flat: &RingPresentation,
) -> RElement {
    let m = ext.base().generator_count();
    let mut poly = FreePoly::zero(flat.alphabet().clone());
    for (mono, coeff) in f.terms() {
        for (word, scalar) in coeff.poly().terms() {
            let mut letters: Vec<usize> = word.letters().to_vec();
            for (i, &e) in mono.exponents().iter().enumerate() {
                letters.extend(std::iter::repeat_n(m + i, e));
            }
            poly.add_term(Word::from_letters(letters), scalar.clone());
        }
    }
    flat.reduce(&poly).unwrap()
}
