//! Homogenization of σ-filtered skew PBW extensions.
//!
//! Adjoining a fresh central degree-1 generator `z` and padding every
//! defining relation with right factors of `z` turns a σ-filtered bijective
//! extension `A` over `R` into a graded skew PBW extension `H(A)` over the
//! homogenized coefficient algebra `H(R)`:
//!
//! - `σ̂_i(t_k) = σ_i(t_k) z^{1-deg}` and `σ̂_i(z) = z` (padding applied per
//!   homogeneous component),
//! - `δ̂_i(t_k) = δ_i(t_k) z^{2-deg}` and `δ̂_i(z) = 0`,
//! - `x_j x_i = d_ij x_i x_j + r0_ji z^{2-deg} + Σ_l (r_lji z^{1-deg}) x_l`.
//!
//! The padding exponents are nonnegative exactly because the σ's and δ's are
//! filtered, which is why homogenization insists on the σ-filtered verdict.
//! Specializing `z -> 1` recovers `A` verbatim and `z -> 0` yields the
//! presentation of the associated graded algebra `G(A)`, which can also be
//! built directly by keeping only the top-degree components of the defining
//! data. The module also flattens extensions into word-level presentations
//! over the combined alphabet, which is what the dimension counters consume.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coeffring::{DerivSpec, EndoSpec, RElement, RingPresentation};
use crate::freealg::{Alphabet, FreePoly, GenId, Word};
use crate::scalar::Scalar;
use crate::skewext::{CrossRelation, ExtensionPresentation};
use crate::Error;

/// A connected graded presentation: every rule is degree-homogeneous, and an
/// optional generator is marked central (with its commutation rules present
/// in the rule set).
#[derive(Clone)]
pub struct GradedPresentation {
    ring: RingPresentation,
    central: Option<GenId>,
}

impl GradedPresentation {
    pub fn new(ring: RingPresentation, central: Option<GenId>) -> Result<Self, Error> {
        for rule in ring.rules() {
            let ok = rule.rhs().is_zero()
                || (rule.rhs().is_homogeneous()
                    && rule.rhs().degree() == Some(rule.lhs().degree()));
            if !ok {
                let lhs = FreePoly::from_terms(
                    ring.alphabet().clone(),
                    [(rule.lhs().clone(), Scalar::one())],
                );
                return Err(Error::NotHomogeneous(format!("{} -> {}", lhs, rule.rhs())));
            }
        }
        if let Some(z) = central {
            if z >= ring.alphabet().len() {
                return Err(Error::Structural("central generator out of range".into()));
            }
            for g in 0..ring.alphabet().len() {
                if g == z {
                    continue;
                }
                if !has_centrality_rule(&ring, z, g) {
                    return Err(Error::Structural(format!(
                        "generator `{}` is marked central but no commutation rule with `{}` exists",
                        ring.alphabet().name(z),
                        ring.alphabet().name(g)
                    )));
                }
            }
        }
        Ok(GradedPresentation { ring, central })
    }

    pub fn ring(&self) -> &RingPresentation {
        &self.ring
    }

    pub fn central(&self) -> Option<GenId> {
        self.central
    }

    pub fn central_name(&self) -> Option<&str> {
        self.central.map(|z| self.ring.alphabet().name(z))
    }
}

impl PartialEq for GradedPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.central == other.central
    }
}

impl Eq for GradedPresentation {}

impl fmt::Debug for GradedPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GradedPresentation({:?}, central {:?})",
            self.ring,
            self.central_name()
        )
    }
}

fn has_centrality_rule(ring: &RingPresentation, z: GenId, g: GenId) -> bool {
    let zg = Word::from_letters(vec![z, g]);
    let gz = Word::from_letters(vec![g, z]);
    ring.rules().iter().any(|rule| {
        (rule.lhs() == &zg && is_single_word(rule.rhs(), &gz))
            || (rule.lhs() == &gz && is_single_word(rule.rhs(), &zg))
    })
}

fn is_single_word(poly: &FreePoly, word: &Word) -> bool {
    poly.term_count() == 1 && poly.coefficient(word).is_one()
}

/// Per-condition result of the graded skew PBW verification.
#[derive(Clone, Debug)]
pub struct GradedConditionsReport {
    pub base_homogeneous: bool,
    pub sigma_graded: Vec<bool>,
    pub delta_graded: Vec<bool>,
    pub cross_d_scalar: bool,
    pub cross_r0_degree2: bool,
    pub cross_linear_degree1: bool,
    pub centrality: bool,
    pub failures: Vec<String>,
    pub verdict: bool,
}

/// Checks the graded skew PBW extension conditions on raw extension data:
/// homogeneous base rules, every σ image homogeneous of degree 1, every δ
/// image homogeneous of degree 2, cross components in the graded pieces
/// `d ∈ R_0`, `r0 ∈ R_2`, `r_l ∈ R_1`, and (when a central generator is
/// named) its commutation rules plus `σ(z) = z`, `δ(z) = 0`.
pub fn graded_conditions_report(
    ext: &ExtensionPresentation,
    central: Option<GenId>,
) -> GradedConditionsReport {
    let ring = ext.base();
    let mut failures = Vec::new();

    let base_homogeneous = ring.rules().iter().all(|rule| {
        rule.rhs().is_zero()
            || (rule.rhs().is_homogeneous() && rule.rhs().degree() == Some(rule.lhs().degree()))
    });
    if !base_homogeneous {
        failures.push("a base relation is not degree-homogeneous".into());
    }

    let sigma_graded: Vec<bool> = (0..ext.variable_count())
        .map(|i| ext.sigma(i).is_graded())
        .collect();
    for (i, ok) in sigma_graded.iter().enumerate() {
        if !ok {
            failures.push(format!(
                "sigma[{}] has an image that is not homogeneous of degree 1",
                ext.variables()[i]
            ));
        }
    }
    let delta_graded: Vec<bool> = (0..ext.variable_count())
        .map(|i| ext.delta(i).is_graded())
        .collect();
    for (i, ok) in delta_graded.iter().enumerate() {
        if !ok {
            failures.push(format!(
                "delta[{}] has an image that is not homogeneous of degree 2",
                ext.variables()[i]
            ));
        }
    }

    let cross_d_scalar = ext.cross_pairs().all(|(_, rel)| rel.d().is_scalar());
    if !cross_d_scalar {
        failures.push("a cross coefficient d is not a scalar".into());
    }
    let cross_r0_degree2 = ext
        .cross_pairs()
        .all(|(_, rel)| rel.r0().is_homogeneous_of(2));
    if !cross_r0_degree2 {
        failures.push("a cross constant term r0 is not homogeneous of degree 2".into());
    }
    let cross_linear_degree1 = ext
        .cross_pairs()
        .all(|(_, rel)| rel.r().iter().all(|rl| rl.is_homogeneous_of(1)));
    if !cross_linear_degree1 {
        failures.push("a cross linear coefficient is not homogeneous of degree 1".into());
    }

    let centrality = match central {
        None => true,
        Some(z) => {
            let mut ok = (0..ring.alphabet().len())
                .filter(|&g| g != z)
                .all(|g| has_centrality_rule(ring, z, g));
            for i in 0..ext.variable_count() {
                let fixes_z = ext.sigma(i).image(z) == &ring.generator(z);
                let kills_z = ext.delta(i).image(z).is_zero();
                ok = ok && fixes_z && kills_z;
            }
            ok
        }
    };
    if !centrality {
        failures.push("the homogenizing generator is not central".into());
    }

    let verdict = base_homogeneous
        && sigma_graded.iter().all(|&b| b)
        && delta_graded.iter().all(|&b| b)
        && cross_d_scalar
        && cross_r0_degree2
        && cross_linear_degree1
        && centrality;
    GradedConditionsReport {
        base_homogeneous,
        sigma_graded,
        delta_graded,
        cross_d_scalar,
        cross_r0_degree2,
        cross_linear_degree1,
        centrality,
        failures,
        verdict,
    }
}

/// A graded skew PBW extension: an extension presentation whose data passes
/// the graded conditions, with an optional marked central generator.
#[derive(Clone)]
pub struct GradedExtensionPresentation {
    ext: ExtensionPresentation,
    central: Option<GenId>,
}

impl GradedExtensionPresentation {
    pub fn new(ext: ExtensionPresentation, central: Option<GenId>) -> Result<Self, Error> {
        let report = graded_conditions_report(&ext, central);
        if !report.verdict {
            return Err(Error::Structural(format!(
                "not a graded skew PBW extension: {}",
                report.failures.join("; ")
            )));
        }
        Ok(GradedExtensionPresentation { ext, central })
    }

    pub fn extension(&self) -> &ExtensionPresentation {
        &self.ext
    }

    pub fn central(&self) -> Option<GenId> {
        self.central
    }

    pub fn central_name(&self) -> Option<&str> {
        self.central.map(|z| self.ext.base().alphabet().name(z))
    }

    /// The base ring as a graded presentation.
    pub fn base_graded(&self) -> Result<GradedPresentation, Error> {
        GradedPresentation::new(self.ext.base().clone(), self.central)
    }

    /// Re-runs the per-condition verification (all conditions hold for a
    /// constructed value; the report carries the booleans for display).
    pub fn verify(&self) -> GradedConditionsReport {
        graded_conditions_report(&self.ext, self.central)
    }

    /// The word-level presentation over the combined alphabet.
    pub fn full_presentation(&self) -> Result<GradedPresentation, Error> {
        let flat = full_presentation(&self.ext)?;
        GradedPresentation::new(flat, self.central)
    }

    /// Substitutes 1 for the central generator, recovering the filtered
    /// extension the graded one homogenizes.
    pub fn specialize_one(&self) -> Result<ExtensionPresentation, Error> {
        self.specialize(SpecializeAt::One)
            .map(|s| s.expect_extension())
    }

    /// Substitutes 0 for the central generator: the associated graded
    /// presentation.
    pub fn specialize_zero(&self) -> Result<GradedExtensionPresentation, Error> {
        match self.specialize(SpecializeAt::Zero)? {
            Specialized::Graded(g) => Ok(g),
            Specialized::Extension(_) => unreachable!("zero specialization is graded"),
        }
    }

    fn specialize(&self, at: SpecializeAt) -> Result<Specialized, Error> {
        let z = self.central.ok_or_else(|| {
            Error::Structural("specialization needs a marked central generator".into())
        })?;
        let ring = self.ext.base();
        let alphabet = ring.alphabet();

        let names: Vec<String> = alphabet
            .names()
            .iter()
            .enumerate()
            .filter(|&(id, _)| id != z)
            .map(|(_, n)| n.clone())
            .collect();
        let reduced = Alphabet::new(names)?;
        // old letter -> new letter, skipping z
        let remap = |id: GenId| if id > z { id - 1 } else { id };
        let project = |poly: &FreePoly| -> FreePoly {
            let cleared = match at {
                SpecializeAt::One => poly.substitute_unit(z),
                SpecializeAt::Zero => poly.substitute_zero(z),
            };
            cleared.map_letters(reduced.clone(), remap)
        };

        let mut rules = Vec::new();
        for rule in ring.rules() {
            if rule.lhs().letters().contains(&z) {
                // commutation rules of the central generator disappear with it
                let gz_like = rule.lhs().degree() == 2;
                if !gz_like {
                    return Err(Error::Structural(
                        "cannot specialize: a non-commutation rule rewrites the central generator"
                            .into(),
                    ));
                }
                continue;
            }
            let lhs = Word::from_letters(rule.lhs().letters().iter().map(|&l| remap(l)).collect());
            rules.push((lhs, project(rule.rhs())));
        }
        let suffix = match at {
            SpecializeAt::One => "at-1",
            SpecializeAt::Zero => "at-0",
        };
        let new_ring = RingPresentation::new(
            format!("{}-{}", ring.name(), suffix),
            reduced.clone(),
            rules,
            ring.parameters().clone(),
        )?;

        let project_elem =
            |elem: &RElement| -> Result<RElement, Error> { new_ring.reduce(&project(elem.poly())) };

        let n = self.ext.variable_count();
        let mut sigma = Vec::with_capacity(n);
        let mut delta = Vec::with_capacity(n);
        for i in 0..n {
            let mut images = Vec::new();
            for id in 0..alphabet.len() {
                if id != z {
                    images.push(project_elem(self.ext.sigma(i).image(id))?);
                }
            }
            let inverse = match self.ext.sigma(i).inverse_images() {
                None => None,
                Some(inv) => {
                    let mut mapped = Vec::new();
                    for (id, img) in inv.iter().enumerate() {
                        if id != z {
                            mapped.push(project_elem(img)?);
                        }
                    }
                    Some(mapped)
                }
            };
            let s = EndoSpec::new(images, inverse, &new_ring)?;
            let mut dimages = Vec::new();
            for id in 0..alphabet.len() {
                if id != z {
                    dimages.push(project_elem(self.ext.delta(i).image(id))?);
                }
            }
            let d = DerivSpec::new(dimages, s.clone(), &new_ring)?;
            sigma.push(s);
            delta.push(d);
        }

        let mut cross = BTreeMap::new();
        for (&(i, j), rel) in self.ext.cross_pairs() {
            let d = project_elem(rel.d())?;
            let r0 = project_elem(rel.r0())?;
            let r = rel
                .r()
                .iter()
                .map(&project_elem)
                .collect::<Result<Vec<_>, _>>()?;
            cross.insert((i, j), CrossRelation::new(d, r0, r));
        }

        let ext = ExtensionPresentation::new(
            format!("{}-{}", self.ext.name(), suffix),
            new_ring,
            self.ext.variables().to_vec(),
            sigma,
            delta,
            cross,
        )?;
        match at {
            SpecializeAt::One => Ok(Specialized::Extension(ext)),
            SpecializeAt::Zero => Ok(Specialized::Graded(GradedExtensionPresentation::new(
                ext, None,
            )?)),
        }
    }
}

impl PartialEq for GradedExtensionPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.ext == other.ext && self.central == other.central
    }
}

impl Eq for GradedExtensionPresentation {}

impl fmt::Debug for GradedExtensionPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedExtensionPresentation({:?})", self.ext)
    }
}

#[derive(Clone, Copy)]
enum SpecializeAt {
    One,
    Zero,
}

enum Specialized {
    Extension(ExtensionPresentation),
    Graded(GradedExtensionPresentation),
}

impl Specialized {
    fn expect_extension(self) -> ExtensionPresentation {
        match self {
            Specialized::Extension(e) => e,
            Specialized::Graded(g) => g.ext,
        }
    }
}

/// Pads every term of `poly` (over the base alphabet) with the right power of
/// `z` that lifts it to degree `target` in the extended alphabet. Fails if a
/// term already exceeds the target, which cannot happen for filtered data.
fn pad_to(
    poly: &FreePoly,
    target: usize,
    extended: &Arc<Alphabet>,
    z: GenId,
) -> Result<FreePoly, Error> {
    let mut out = FreePoly::zero(extended.clone());
    for (word, coeff) in poly.terms() {
        if word.degree() > target {
            return Err(Error::Structural(format!(
                "term of degree {} exceeds the homogenization budget {}",
                word.degree(),
                target
            )));
        }
        let mut letters = word.letters().to_vec();
        letters.extend(std::iter::repeat_n(z, target - word.degree()));
        out.add_term(Word::from_letters(letters), coeff.clone());
    }
    Ok(out)
}

/// Picks a homogenizing-variable name not colliding with any taken name:
/// `z`, then `w`, then `z0`, `z1`, ….
fn fresh_central_name(taken: &[&str]) -> String {
    for candidate in ["z", "w"] {
        if !taken.contains(&candidate) {
            return candidate.to_string();
        }
    }
    (0..)
        .map(|k| format!("z{k}"))
        .find(|c| !taken.iter().any(|t| t == c))
        .expect("unbounded candidate supply")
}

/// Homogenizes a coefficient ring: adjoins a central generator and pads every
/// relation to top degree. With no relations to pad this just adds the
/// commutation rules of the new generator.
pub fn homogenize_ring(
    ring: &RingPresentation,
    central_name: Option<&str>,
) -> Result<GradedPresentation, Error> {
    let taken: Vec<&str> = ring.alphabet().names().iter().map(String::as_str).collect();
    let name = match central_name {
        Some(n) => {
            if taken.contains(&n) {
                return Err(Error::Structural(format!(
                    "homogenizing generator `{n}` collides with an existing generator"
                )));
            }
            n.to_string()
        }
        None => fresh_central_name(&taken),
    };
    let extended = ring.alphabet().extended(&name)?;
    let z = extended.len() - 1;

    let mut rules = Vec::new();
    for rule in ring.rules() {
        let target = rule.lhs().degree();
        let rhs = pad_to(rule.rhs(), target, &extended, z)?;
        rules.push((rule.lhs().clone(), rhs));
    }
    for g in 0..ring.alphabet().len() {
        // z g -> g z: the central generator moves right past every other one
        let mut rhs = FreePoly::zero(extended.clone());
        rhs.add_term(Word::from_letters(vec![g, z]), Scalar::one());
        rules.push((Word::from_letters(vec![z, g]), rhs));
    }

    let hr = RingPresentation::new(
        format!("h-{}", ring.name()),
        extended,
        rules,
        ring.parameters().clone(),
    )?;
    GradedPresentation::new(hr, Some(z))
}

/// Homogenizes a σ-filtered bijective extension into a graded skew PBW
/// extension over the homogenized coefficient ring.
pub fn homogenize_extension(
    ext: &ExtensionPresentation,
) -> Result<GradedExtensionPresentation, Error> {
    let report = ext.check_sigma_filtered();
    if !report.verdict {
        return Err(Error::NotSigmaFiltered(report.failures.join("; ")));
    }
    let bij = ext.bijectivity();
    if !bij.is_verified() {
        return Err(Error::NotBijective(bij.to_string()));
    }

    let mut taken: Vec<&str> = ext
        .base()
        .alphabet()
        .names()
        .iter()
        .map(String::as_str)
        .collect();
    taken.extend(ext.variables().iter().map(String::as_str));
    let central_name = fresh_central_name(&taken);

    let base = homogenize_ring(ext.base(), Some(&central_name))?;
    let hr = base.ring().clone();
    let z = base
        .central()
        .expect("homogenized ring has a central generator");
    let extended = hr.alphabet().clone();

    let lift = |elem: &RElement, target: usize| -> Result<RElement, Error> {
        hr.reduce(&pad_to(elem.poly(), target, &extended, z)?)
    };

    let n = ext.variable_count();
    let m = ext.base().generator_count();
    let mut sigma = Vec::with_capacity(n);
    let mut delta = Vec::with_capacity(n);
    for i in 0..n {
        let mut images = Vec::with_capacity(m + 1);
        for k in 0..m {
            images.push(lift(ext.sigma(i).image(k), 1)?);
        }
        images.push(hr.generator(z));
        let inverse = match ext.sigma(i).inverse_images() {
            None => None,
            Some(inv) => {
                let mut mapped = Vec::with_capacity(m + 1);
                for img in inv {
                    mapped.push(lift(img, 1)?);
                }
                mapped.push(hr.generator(z));
                Some(mapped)
            }
        };
        let s = EndoSpec::new(images, inverse, &hr)?;

        let mut dimages = Vec::with_capacity(m + 1);
        for k in 0..m {
            dimages.push(lift(ext.delta(i).image(k), 2)?);
        }
        dimages.push(hr.zero());
        let d = DerivSpec::new(dimages, s.clone(), &hr)?;
        sigma.push(s);
        delta.push(d);
    }

    let mut cross = BTreeMap::new();
    for (&(i, j), rel) in ext.cross_pairs() {
        let d = lift(rel.d(), 0)?;
        let r0 = lift(rel.r0(), 2)?;
        let r = rel
            .r()
            .iter()
            .map(|rl| lift(rl, 1))
            .collect::<Result<Vec<_>, _>>()?;
        cross.insert((i, j), CrossRelation::new(d, r0, r));
    }

    let hext = ExtensionPresentation::new(
        format!("h-{}", ext.name()),
        hr,
        ext.variables().to_vec(),
        sigma,
        delta,
        cross,
    )?;
    GradedExtensionPresentation::new(hext, Some(z))
}

/// The associated graded presentation of a σ-filtered extension, built
/// directly by keeping the top-degree components of the defining data: base
/// relations keep their leading homogeneous parts, σ images their degree-1
/// components, δ images their degree-2 components, cross constants their
/// degree-2 and linear coefficients their degree-1 components. Structurally
/// equal to `homogenize_extension(ext).specialize_zero()`.
pub fn gr_presentation(ext: &ExtensionPresentation) -> Result<GradedExtensionPresentation, Error> {
    let report = ext.check_sigma_filtered();
    if !report.verdict {
        return Err(Error::NotSigmaFiltered(report.failures.join("; ")));
    }
    let ring = ext.base();
    let rules = ring
        .rules()
        .iter()
        .map(|rule| {
            (
                rule.lhs().clone(),
                rule.rhs().component(rule.lhs().degree()),
            )
        })
        .collect();
    let gr_ring = RingPresentation::new(
        format!("gr-{}", ring.name()),
        ring.alphabet().clone(),
        rules,
        ring.parameters().clone(),
    )?;

    let top = |elem: &RElement, degree: usize| -> Result<RElement, Error> {
        gr_ring.reduce(&elem.poly().component(degree))
    };

    let n = ext.variable_count();
    let m = ring.generator_count();
    let mut sigma = Vec::with_capacity(n);
    let mut delta = Vec::with_capacity(n);
    for i in 0..n {
        let mut images = Vec::with_capacity(m);
        for k in 0..m {
            images.push(top(ext.sigma(i).image(k), 1)?);
        }
        let inverse = match ext.sigma(i).inverse_images() {
            None => None,
            Some(inv) => Some(
                inv.iter()
                    .map(|img| top(img, 1))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        let s = EndoSpec::new(images, inverse, &gr_ring)?;
        let mut dimages = Vec::with_capacity(m);
        for k in 0..m {
            dimages.push(top(ext.delta(i).image(k), 2)?);
        }
        let d = DerivSpec::new(dimages, s.clone(), &gr_ring)?;
        sigma.push(s);
        delta.push(d);
    }

    let mut cross = BTreeMap::new();
    for (&(i, j), rel) in ext.cross_pairs() {
        let d = top(rel.d(), 0)?;
        let r0 = top(rel.r0(), 2)?;
        let r = rel
            .r()
            .iter()
            .map(|rl| top(rl, 1))
            .collect::<Result<Vec<_>, _>>()?;
        cross.insert((i, j), CrossRelation::new(d, r0, r));
    }

    let gr_ext = ExtensionPresentation::new(
        format!("gr-{}", ext.name()),
        gr_ring,
        ext.variables().to_vec(),
        sigma,
        delta,
        cross,
    )?;
    GradedExtensionPresentation::new(gr_ext, None)
}

/// Flattens an extension into the word-level presentation of the whole
/// algebra over the combined alphabet `t_1, …, t_m, x_1, …, x_n`: the base
/// rules, the pushes `x_i t_k -> σ_i(t_k) x_i + δ_i(t_k)`, and the sorting
/// rules `x_j x_i -> d_ij x_i x_j + r0_ji + Σ_l r_lji x_l`. The construction
/// re-runs the structural and confluence checks, so it doubles as a
/// word-level consistency test of the presentation data; it requires the
/// σ-filtered verdict, without which the pushes need not decrease the
/// degree-lexicographic order.
pub fn full_presentation(ext: &ExtensionPresentation) -> Result<RingPresentation, Error> {
    let report = ext.check_sigma_filtered();
    if !report.verdict {
        return Err(Error::NotSigmaFiltered(report.failures.join("; ")));
    }
    let ring = ext.base();
    let m = ring.generator_count();
    let n = ext.variable_count();
    let mut names: Vec<String> = ring.alphabet().names().to_vec();
    names.extend(ext.variables().iter().cloned());
    let combined = Alphabet::new(names)?;

    let embed = |poly: &FreePoly| poly.map_letters(combined.clone(), |id| id);
    let embed_after = |poly: &FreePoly, letter: GenId| -> FreePoly {
        let mut out = FreePoly::zero(combined.clone());
        for (word, coeff) in poly.terms() {
            let mut letters = word.letters().to_vec();
            letters.push(letter);
            out.add_term(Word::from_letters(letters), coeff.clone());
        }
        out
    };

    let mut rules = Vec::new();
    for rule in ring.rules() {
        rules.push((rule.lhs().clone(), embed(rule.rhs())));
    }
    for i in 0..n {
        let xi = m + i;
        for k in 0..m {
            // x_i t_k -> sigma_i(t_k) x_i + delta_i(t_k)
            let mut rhs = embed_after(ext.sigma(i).image(k).poly(), xi);
            rhs = rhs.add(&embed(ext.delta(i).image(k).poly()))?;
            rules.push((Word::from_letters(vec![xi, k]), rhs));
        }
    }
    for (&(i, j), rel) in ext.cross_pairs() {
        let xi = m + i;
        let xj = m + j;
        // x_j x_i -> d x_i x_j + r0 + sum_l r_l x_l
        let mut rhs = FreePoly::zero(combined.clone());
        for (word, coeff) in rel.d().poly().terms() {
            let mut letters = word.letters().to_vec();
            letters.push(xi);
            letters.push(xj);
            rhs.add_term(Word::from_letters(letters), coeff.clone());
        }
        rhs = rhs.add(&embed(rel.r0().poly()))?;
        for (l, rl) in rel.r().iter().enumerate() {
            rhs = rhs.add(&embed_after(rl.poly(), m + l))?;
        }
        rules.push((Word::from_letters(vec![xj, xi]), rhs));
    }

    RingPresentation::new(
        format!("full-{}", ext.name()),
        combined,
        rules,
        ring.parameters().clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn entry(name: &str) -> ExtensionPresentation {
        catalog::load(name).unwrap().extension.unwrap()
    }

    #[test]
    fn homogenized_weyl_relations() {
        let h = homogenize_extension(&entry("weyl-1")).unwrap();
        assert_eq!(h.central_name(), Some("z"));
        let hext = h.extension();
        // delta-hat(t) = z^2
        assert_eq!(hext.delta(0).image(0).to_string(), "z^2");
        // sigma-hat fixes t and z
        assert_eq!(hext.sigma(0).image(0).to_string(), "t");
        assert_eq!(hext.sigma(0).image(1).to_string(), "z");
        assert!(h.verify().verdict);
    }

    #[test]
    fn homogenized_usl2_relations() {
        let h = homogenize_extension(&entry("usl2")).unwrap();
        assert_eq!(h.central_name(), Some("z"));
        let hext = h.extension();
        // f e = e f - z h, h e = e h + 2 z e, h f = f h - 2 z f
        assert_eq!(hext.cross(0, 1).r()[2].to_string(), "-z");
        assert_eq!(hext.cross(0, 2).r()[0].to_string(), "2*z");
        assert_eq!(hext.cross(1, 2).r()[1].to_string(), "-2*z");
        assert!(h.verify().verdict);
    }

    #[test]
    fn homogenized_type_i_uses_a_fresh_name() {
        // the variables already include z, so the homogenizer is named w
        let h = homogenize_extension(&entry("type-I")).unwrap();
        assert_eq!(h.central_name(), Some("w"));
        let hext = h.extension();
        // z x = beta x z + (a w) y + b w^2
        assert_eq!(hext.cross(0, 2).d().to_string(), "3");
        assert_eq!(hext.cross(0, 2).r0().to_string(), "w^2");
        assert_eq!(hext.cross(0, 2).r()[1].to_string(), "w");
    }

    #[test]
    fn round_trip_specialize_one() {
        for name in [
            "weyl-1",
            "weyl-2",
            "jordan-ext",
            "kt-general",
            "usl2",
            "type-II",
        ] {
            let ext = entry(name);
            let h = homogenize_extension(&ext).unwrap();
            let back = h.specialize_one().unwrap();
            assert_eq!(back, ext, "round trip failed for {name}");
        }
    }

    #[test]
    fn specialize_zero_matches_direct_associated_graded() {
        for name in [
            "weyl-1",
            "weyl-2",
            "jordan-ext",
            "kt-general",
            "usl2",
            "deform-jordan",
        ] {
            let ext = entry(name);
            let h = homogenize_extension(&ext).unwrap();
            let via_h = h.specialize_zero().unwrap();
            let direct = gr_presentation(&ext).unwrap();
            assert_eq!(via_h, direct, "associated graded mismatch for {name}");
        }
    }

    #[test]
    fn weyl_associated_graded_drops_delta() {
        let g = gr_presentation(&entry("weyl-1")).unwrap();
        assert!(g.extension().delta(0).image(0).is_zero());
        // jordan keeps its homogeneous sigma
        let g = gr_presentation(&entry("jordan-ext")).unwrap();
        assert_eq!(g.extension().sigma(0).image(1).to_string(), "t2 + 2*t1");
        // usl2 drops the linear cross terms: commuting generators remain
        let g = gr_presentation(&entry("usl2")).unwrap();
        assert!(g.extension().cross(0, 1).r()[2].is_zero());
    }

    #[test]
    fn kt_general_top_components() {
        // sigma(t) = 2t + 1 has degree-1 part 2t; delta(t) = t^2 + t + 1 keeps t^2
        let g = gr_presentation(&entry("kt-general")).unwrap();
        assert_eq!(g.extension().sigma(0).image(0).to_string(), "2*t");
        assert_eq!(g.extension().delta(0).image(0).to_string(), "t^2");
        assert_eq!(
            g.extension().sigma(0).inverse_images().unwrap()[0].to_string(),
            "1/2*t"
        );
    }

    #[test]
    fn homogenization_requires_the_filtered_verdict() {
        let err = homogenize_extension(&entry("non-filtered"));
        assert!(matches!(err, Err(Error::NotSigmaFiltered(_))));
        let err = full_presentation(&entry("non-filtered"));
        assert!(matches!(err, Err(Error::NotSigmaFiltered(_))));
    }

    #[test]
    fn broken_graded_input_is_located() {
        // delta image of degree 1 violates the degree-2 condition
        let file = crate::dsl::parse(
            "\
ring kz
gens t z
rel z*t -> t*z
central z
extension broken over kz
vars x
sigma 1: t -> t; z -> z
delta 1: t -> t; z -> 0
",
        )
        .unwrap();
        let ext = file.extension.unwrap();
        let z = ext.base().alphabet().index_of("z").unwrap();
        let report = graded_conditions_report(&ext, Some(z));
        assert!(!report.verdict);
        assert!(!report.delta_graded[0]);
        assert!(report.failures.iter().any(|f| f.contains("delta")));
        assert!(GradedExtensionPresentation::new(ext, Some(z)).is_err());
    }

    #[test]
    fn homogenize_ring_examples() {
        // K[t] gains just the commutation rule z t -> t z
        let kt = entry("weyl-1");
        let h = homogenize_ring(kt.base(), None).unwrap();
        assert_eq!(h.ring().rules().len(), 1);
        assert_eq!(h.central_name(), Some("z"));

        // the Jordan relation is already homogeneous and survives unchanged
        let jordan = entry("jordan-ext");
        let h = homogenize_ring(jordan.base(), None).unwrap();
        let rule = &h.ring().rules()[0];
        assert_eq!(rule.rhs().to_string(), "t1*t2 + t1^2");
    }

    #[test]
    fn full_presentation_flattens_and_checks_overlaps() {
        let w2 = entry("weyl-2");
        let flat = full_presentation(&w2).unwrap();
        assert_eq!(flat.alphabet().len(), 4);
        // x1 t1 t1 reduces the same way through either route
        let a = flat.alphabet().clone();
        let x1 = a.index_of("x1").unwrap();
        let t1 = a.index_of("t1").unwrap();
        let word = FreePoly::from_terms(
            a.clone(),
            [(Word::from_letters(vec![x1, t1, t1]), Scalar::one())],
        );
        assert_eq!(flat.reduce(&word).unwrap().to_string(), "t1^2*x1 + 2*t1");

        let h = homogenize_extension(&w2).unwrap();
        let flat_h = h.full_presentation().unwrap();
        assert_eq!(flat_h.ring().alphabet().len(), 5);
        assert_eq!(flat_h.central_name(), Some("z"));
    }
}
