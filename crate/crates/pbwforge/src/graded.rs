//! Graded dimension analysis: Hilbert functions, filtration dimensions, the
//! Rees/homogenization comparison, and regularity of the central generator.
//!
//! Ring-level dimensions are exact counts of irreducible words per degree,
//! which on a confluence-checked presentation is the dimension of the graded
//! piece. Extension-level dimensions use the free-module structure: every
//! element has a unique representation with left coefficients, so the
//! dimension of degree `p` is the convolution of the base dimensions with the
//! count of standard monomials. The two routes are deliberately independent
//! so they can be cross-checked against each other.

use std::collections::BTreeSet;
use std::fmt;

use crate::freealg::{FreePoly, Word};
use crate::homog::{self, GradedExtensionPresentation, GradedPresentation};
use crate::scalar::Scalar;
use crate::skewext::ExtensionPresentation;
use crate::Error;

/// Dimensions of the graded pieces, indexed by degree `0..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertTable {
    dims: Vec<u64>,
}

impl HilbertTable {
    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn dim(&self, p: usize) -> u64 {
        self.dims[p]
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }
}

impl fmt::Display for HilbertTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.dims.iter().map(u64::to_string).collect();
        write!(f, "{}", cells.join(", "))
    }
}

/// Cumulative filtration dimensions `dim F_p`, indexed by `0..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationTable {
    cum_dims: Vec<u64>,
}

impl FiltrationTable {
    pub fn cum_dims(&self) -> &[u64] {
        &self.cum_dims
    }

    pub fn dim(&self, p: usize) -> u64 {
        self.cum_dims[p]
    }

    /// Dimensions of the graded quotients `F_p / F_{p-1}`.
    pub fn layer_dims(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.cum_dims.len());
        for (p, &d) in self.cum_dims.iter().enumerate() {
            out.push(if p == 0 { d } else { d - self.cum_dims[p - 1] });
        }
        out
    }
}

impl fmt::Display for FiltrationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.cum_dims.iter().map(u64::to_string).collect();
        write!(f, "{}", cells.join(", "))
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial fits in u64 at desk scale")
}

/// Number of exponent vectors in `n` variables of total degree `d`.
fn monomial_count(d: usize, n: usize) -> u64 {
    if n == 0 {
        return u64::from(d == 0);
    }
    binomial(d + n - 1, n - 1)
}

/// Hilbert function of a graded presentation by exact normal-word
/// enumeration.
pub fn hilbert_ring(graded: &GradedPresentation, max_degree: usize) -> HilbertTable {
    let layers = graded.ring().normal_words_by_degree(max_degree);
    HilbertTable {
        dims: layers.iter().map(|layer| layer.len() as u64).collect(),
    }
}

/// Hilbert function of a graded skew PBW extension through the free-module
/// formula: `dim H(A)_p = Σ_{d ≤ p} #{α : |α| = d} · dim H(R)_{p-d}`.
pub fn hilbert_extension(
    graded: &GradedExtensionPresentation,
    max_degree: usize,
) -> Result<HilbertTable, Error> {
    let base = graded.base_graded()?;
    let base_dims = hilbert_ring(&base, max_degree);
    let n = graded.extension().variable_count();
    let mut dims = Vec::with_capacity(max_degree + 1);
    for p in 0..=max_degree {
        let mut total = 0u64;
        for d in 0..=p {
            total += monomial_count(d, n) * base_dims.dim(p - d);
        }
        dims.push(total);
    }
    Ok(HilbertTable { dims })
}

/// Hilbert function of a graded extension by brute-force enumeration on the
/// flattened word-level presentation. Independent of the free-module formula;
/// the two must agree.
pub fn hilbert_extension_by_enumeration(
    graded: &GradedExtensionPresentation,
    max_degree: usize,
) -> Result<HilbertTable, Error> {
    let flat = graded.full_presentation()?;
    Ok(hilbert_ring(&flat, max_degree))
}

/// Cumulative dimensions `dim F_p(A)` of the total-degree filtration of a
/// σ-filtered extension, via the free-filtered decomposition
/// `F_p(A) = ⊕_α F_{p-|α|}(R) x^α` with `dim F_q(R)` counted on the
/// normal-word basis.
pub fn filtration_dims(
    ext: &ExtensionPresentation,
    max_degree: usize,
) -> Result<FiltrationTable, Error> {
    let report = ext.check_sigma_filtered();
    if !report.verdict {
        return Err(Error::NotSigmaFiltered(report.failures.join("; ")));
    }
    let layers = ext.base().normal_words_by_degree(max_degree);
    let mut ring_cum = Vec::with_capacity(max_degree + 1);
    let mut acc = 0u64;
    for layer in &layers {
        acc += layer.len() as u64;
        ring_cum.push(acc);
    }
    let n = ext.variable_count();
    let mut cum_dims = Vec::with_capacity(max_degree + 1);
    for p in 0..=max_degree {
        let mut total = 0u64;
        for d in 0..=p {
            total += monomial_count(d, n) * ring_cum[p - d];
        }
        cum_dims.push(total);
    }
    Ok(FiltrationTable { cum_dims })
}

/// Degreewise comparison of the Rees algebra of the filtration (whose
/// degree-p piece is `F_p(A)`) with the homogenization.
#[derive(Clone, Debug)]
pub struct ReesComparison {
    pub rees: Vec<u64>,
    pub homogenized: Vec<u64>,
    pub first_mismatch: Option<usize>,
}

impl ReesComparison {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares `dim Rees(A)_p = dim F_p(A)` against the Hilbert function of
/// `H(A)` for `p ≤ N`.
pub fn rees_vs_homog(
    ext: &ExtensionPresentation,
    max_degree: usize,
) -> Result<ReesComparison, Error> {
    let rees = filtration_dims(ext, max_degree)?;
    let h = homog::homogenize_extension(ext)?;
    let homogenized = hilbert_extension(&h, max_degree)?;
    let first_mismatch = (0..=max_degree).find(|&p| rees.dim(p) != homogenized.dim(p));
    Ok(ReesComparison {
        rees: rees.cum_dims().to_vec(),
        homogenized: homogenized.dims().to_vec(),
        first_mismatch,
    })
}

/// Outcome of the z-regularity check.
#[derive(Clone, Debug)]
pub struct ZRegularityReport {
    pub regular: bool,
    pub checked_up_to: usize,
    pub failure: Option<String>,
}

/// Checks that multiplication by the marked central generator maps the
/// degree-p basis injectively into degree p+1 for every `p ≤ N`: the normal
/// forms of `z·(basis word)` must be nonzero and pairwise distinct.
pub fn check_z_regular_graded(
    graded: &GradedPresentation,
    max_degree: usize,
) -> Result<ZRegularityReport, Error> {
    let z = graded
        .central()
        .ok_or_else(|| Error::Structural("z-regularity needs a marked central generator".into()))?;
    let ring = graded.ring();
    let layers = ring.normal_words_by_degree(max_degree);
    for (p, layer) in layers.iter().enumerate() {
        let mut seen: BTreeSet<Vec<(Word, Scalar)>> = BTreeSet::new();
        for word in layer {
            let mut letters = vec![z];
            letters.extend_from_slice(word.letters());
            let product = FreePoly::from_terms(
                ring.alphabet().clone(),
                [(Word::from_letters(letters), Scalar::one())],
            );
            let nf = ring.reduce(&product)?;
            if nf.is_zero() {
                return Ok(ZRegularityReport {
                    regular: false,
                    checked_up_to: p,
                    failure: Some(format!(
                        "z annihilates the degree-{p} basis word {}",
                        FreePoly::from_terms(
                            ring.alphabet().clone(),
                            [(word.clone(), Scalar::one())]
                        )
                    )),
                });
            }
            let key: Vec<(Word, Scalar)> = nf
                .poly()
                .terms()
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect();
            if !seen.insert(key) {
                return Ok(ZRegularityReport {
                    regular: false,
                    checked_up_to: p,
                    failure: Some(format!("z collapses two degree-{p} basis words onto {nf}")),
                });
            }
        }
    }
    Ok(ZRegularityReport {
        regular: true,
        checked_up_to: max_degree,
        failure: None,
    })
}

/// z-regularity on the flattened presentation of a graded extension.
pub fn check_z_regular(
    graded: &GradedExtensionPresentation,
    max_degree: usize,
) -> Result<ZRegularityReport, Error> {
    let flat = graded.full_presentation()?;
    check_z_regular_graded(&flat, max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::coeffring::RingPresentation;
    use crate::freealg::Alphabet;
    use std::collections::BTreeMap;

    fn entry(name: &str) -> ExtensionPresentation {
        catalog::load(name).unwrap().extension.unwrap()
    }

    #[test]
    fn binomial_oracle() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(2, 5), 0);
        // Pascal identity on a sample
        for n in 1..12 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn polynomial_ring_hilbert() {
        // K[t, z]: dimensions p + 1
        let kt = entry("weyl-1");
        let h = homog::homogenize_ring(kt.base(), None).unwrap();
        let table = hilbert_ring(&h, 6);
        assert_eq!(table.dims(), &[1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn homogenized_usl2_hilbert_is_binomial() {
        let h = homog::homogenize_extension(&entry("usl2")).unwrap();
        let table = hilbert_extension(&h, 8).unwrap();
        for p in 0..=8 {
            assert_eq!(table.dim(p), binomial(p + 3, 3));
        }
    }

    #[test]
    fn homogenized_type_i_hilbert_is_binomial() {
        let h = homog::homogenize_extension(&entry("type-I")).unwrap();
        let table = hilbert_extension(&h, 8).unwrap();
        for p in 0..=8 {
            assert_eq!(table.dim(p), binomial(p + 3, 3));
        }
    }

    #[test]
    fn convolution_agrees_with_enumeration() {
        for name in ["weyl-1", "weyl-2", "usl2", "jordan-ext", "type-II"] {
            let h = homog::homogenize_extension(&entry(name)).unwrap();
            let fast = hilbert_extension(&h, 6).unwrap();
            let slow = hilbert_extension_by_enumeration(&h, 6).unwrap();
            assert_eq!(fast, slow, "hilbert mismatch for {name}");
        }
    }

    #[test]
    fn weyl_filtration_dims() {
        let table = filtration_dims(&entry("weyl-1"), 5).unwrap();
        // basis t^a x^b with a + b <= p: C(p+2, 2) = 1, 3, 6, 10, ...
        assert_eq!(table.cum_dims(), &[1, 3, 6, 10, 15, 21]);
        assert_eq!(table.layer_dims(), vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn filtration_requires_the_filtered_verdict() {
        assert!(matches!(
            filtration_dims(&entry("non-filtered"), 4),
            Err(Error::NotSigmaFiltered(_))
        ));
    }

    #[test]
    fn rees_comparison_on_weyl() {
        let cmp = rees_vs_homog(&entry("weyl-1"), 8).unwrap();
        assert!(cmp.agrees());
        for (p, &d) in cmp.rees.iter().enumerate() {
            assert_eq!(d, binomial(p + 2, 2));
        }
        assert_eq!(cmp.rees, cmp.homogenized);
    }

    #[test]
    fn associated_graded_layers_match() {
        for name in ["weyl-1", "jordan-ext", "kt-general", "usl2"] {
            let ext = entry(name);
            let table = filtration_dims(&ext, 6).unwrap();
            let gr = homog::gr_presentation(&ext).unwrap();
            let gr_dims = hilbert_extension(&gr, 6).unwrap();
            assert_eq!(
                table.layer_dims(),
                gr_dims.dims().to_vec(),
                "layer mismatch for {name}"
            );
        }
    }

    #[test]
    fn regular_central_generator_shifts_dimensions() {
        // with z regular, dim G_p = dim H_p - dim H_(p-1)
        for name in ["weyl-1", "usl2", "kt-general"] {
            let h = homog::homogenize_extension(&entry(name)).unwrap();
            assert!(check_z_regular(&h, 6).unwrap().regular);
            let h_dims = hilbert_extension(&h, 6).unwrap();
            let g_dims = hilbert_extension(&h.specialize_zero().unwrap(), 6).unwrap();
            for p in 0..=6 {
                let expected = if p == 0 {
                    h_dims.dim(0)
                } else {
                    h_dims.dim(p) - h_dims.dim(p - 1)
                };
                assert_eq!(
                    g_dims.dim(p),
                    expected,
                    "z-shift identity failed for {name} at {p}"
                );
            }
        }
    }

    #[test]
    fn homogenized_entries_are_z_regular() {
        for name in ["weyl-1", "usl2", "jordan-ext"] {
            let h = homog::homogenize_extension(&entry(name)).unwrap();
            let report = check_z_regular(&h, 6).unwrap();
            assert!(report.regular, "z not regular for {name}");
            assert_eq!(report.checked_up_to, 6);
        }
    }

    #[test]
    fn nilpotent_central_generator_is_caught() {
        // the presentation K<z>/(z^2): multiplication by z kills degree 1
        let a = Alphabet::new(["z"]).unwrap();
        let rule = (Word::from_letters(vec![0, 0]), FreePoly::zero(a.clone()));
        let ring = RingPresentation::new("nilz", a, vec![rule], BTreeMap::new()).unwrap();
        let graded = GradedPresentation::new(ring, Some(0)).unwrap();
        let report = check_z_regular_graded(&graded, 4).unwrap();
        assert!(!report.regular);
        assert_eq!(report.checked_up_to, 1);
        assert!(report.failure.unwrap().contains("annihilates"));
    }
}
