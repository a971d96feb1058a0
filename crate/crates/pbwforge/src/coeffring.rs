//! Finitely presented coefficient algebras `R = K⟨t_1,…,t_m⟩ / ⟨r_1,…,r_s⟩`.
//!
//! A presentation is accepted only when its relations form an oriented,
//! terminating, inter-reduced rewriting system whose overlap ambiguities all
//! resolve (diamond lemma). Under those conditions the irreducible words are
//! a basis of `R`, normal forms are unique, and the standard word-degree
//! filtration of the free algebra descends to a connected filtration on `R`
//! in which the degree of an element is the maximal word degree of its
//! normal form.
//!
//! On top of the quotient arithmetic the module implements algebra
//! endomorphisms and twisted derivations given by generator images, with
//! machine checks for well-definedness (the images must annihilate every
//! defining relation) and for filteredness (`deg σ(t) ≤ 1`, `deg δ(t) ≤ 2`,
//! which propagates to all of `R` by multiplicativity and the twisted
//! Leibniz rule since every generator has degree 1).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::freealg::{Alphabet, FreePoly, GenId, Word};
use crate::scalar::Scalar;
use crate::Error;

/// An oriented rewriting rule `lhs -> rhs` with `lhs` a word and every term
/// of `rhs` strictly below `lhs` in the degree-lexicographic order.
#[derive(Clone, PartialEq, Eq)]
pub struct RewriteRule {
    lhs: Word,
    rhs: FreePoly,
}

impl RewriteRule {
    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &FreePoly {
        &self.rhs
    }
}

/// Reduction strategy. Both strategies compute the same normal form on a
/// confluent system; having two is what makes that statement testable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    /// Smallest start position, then shortest matching left-hand side.
    LeftmostInnermost,
    /// Largest start position, then longest matching left-hand side.
    RightmostOutermost,
}

/// A finitely presented coefficient algebra with a validated rewriting
/// system. Immutable after construction.
#[derive(Clone)]
pub struct RingPresentation {
    name: String,
    alphabet: Arc<Alphabet>,
    rules: Vec<RewriteRule>,
    parameters: BTreeMap<String, Scalar>,
}

impl RingPresentation {
    /// Validates and builds a presentation.
    ///
    /// Checks, in order: every rule has a left-hand side of degree at least 2
    /// and a right-hand side over the same alphabet that is strictly smaller
    /// in degree-lexicographic order (termination); no left-hand side occurs
    /// inside another (inter-reduction); every overlap ambiguity between
    /// left-hand sides resolves to a common normal form (confluence). The
    /// right-hand sides are stored fully normalized.
    pub fn new(
        name: impl Into<String>,
        alphabet: Arc<Alphabet>,
        rules: Vec<(Word, FreePoly)>,
        parameters: BTreeMap<String, Scalar>,
    ) -> Result<Self, Error> {
        let mut checked = Vec::with_capacity(rules.len());
        for (lhs, rhs) in rules {
            if rhs.alphabet() != &alphabet {
                return Err(Error::AlphabetMismatch);
            }
            let display = |w: &Word| {
                FreePoly::from_terms(alphabet.clone(), [(w.clone(), Scalar::one())]).to_string()
            };
            if lhs.degree() < 2 {
                return Err(Error::InvalidRule {
                    rule: display(&lhs),
                    reason: "left-hand side must have degree at least 2".into(),
                });
            }
            if let Some(d) = rhs.degree() {
                if d > lhs.degree() {
                    return Err(Error::InvalidRule {
                        rule: format!("{} -> {}", display(&lhs), rhs),
                        reason: "right-hand side exceeds the degree of the left-hand side".into(),
                    });
                }
                let leading = rhs.terms().map(|(w, _)| w).max().expect("nonzero");
                if *leading >= lhs {
                    return Err(Error::InvalidRule {
                        rule: format!("{} -> {}", display(&lhs), rhs),
                        reason: "right-hand side is not below the left-hand side in deglex order"
                            .into(),
                    });
                }
            }
            checked.push(RewriteRule { lhs, rhs });
        }

        for (i, a) in checked.iter().enumerate() {
            for (j, b) in checked.iter().enumerate() {
                if i != j && b.lhs.contains(&a.lhs) {
                    return Err(Error::Structural(format!(
                        "rule set is not inter-reduced: left-hand side #{} occurs inside #{}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }

        // Store right-hand sides in normal form so structurally equal
        // presentations compare equal.
        let normalized: Vec<RewriteRule> = checked
            .iter()
            .map(|rule| RewriteRule {
                lhs: rule.lhs.clone(),
                rhs: reduce_poly(&rule.rhs, &checked, Strategy::LeftmostInnermost),
            })
            .collect();

        let ring = RingPresentation {
            name: name.into(),
            alphabet,
            rules: normalized,
            parameters,
        };
        let report = ring.check_confluence(None);
        if !report.is_confluent() {
            return Err(Error::NotConfluent(report.to_string()));
        }
        Ok(ring)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn parameters(&self) -> &BTreeMap<String, Scalar> {
        &self.parameters
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.len()
    }

    /// Reduces a free-algebra element to its unique normal form.
    pub fn reduce(&self, poly: &FreePoly) -> Result<RElement, Error> {
        if poly.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(RElement {
            poly: reduce_poly(poly, &self.rules, Strategy::LeftmostInnermost),
        })
    }

    /// Reduction under an explicit strategy; used by the confluence fallback.
    pub fn reduce_with(&self, poly: &FreePoly, strategy: Strategy) -> Result<RElement, Error> {
        if poly.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(RElement {
            poly: reduce_poly(poly, &self.rules, strategy),
        })
    }

    pub fn zero(&self) -> RElement {
        RElement {
            poly: FreePoly::zero(self.alphabet.clone()),
        }
    }

    pub fn one(&self) -> RElement {
        RElement {
            poly: FreePoly::one(self.alphabet.clone()),
        }
    }

    pub fn scalar(&self, value: Scalar) -> RElement {
        RElement {
            poly: FreePoly::scalar(self.alphabet.clone(), value),
        }
    }

    /// The generator `t_k` as a ring element. Generators are irreducible
    /// because rule left-hand sides have degree at least 2.
    pub fn generator(&self, id: GenId) -> RElement {
        RElement {
            poly: FreePoly::generator(self.alphabet.clone(), id),
        }
    }

    /// Wraps a polynomial that is already known to be in normal form; checked.
    pub fn element_from_normal(&self, poly: FreePoly) -> Result<RElement, Error> {
        let reduced = self.reduce(&poly)?;
        if reduced.poly != poly {
            return Err(Error::Structural(format!(
                "polynomial `{poly}` is not in normal form (reduces to `{}`)",
                reduced.poly
            )));
        }
        Ok(reduced)
    }

    /// Checks every overlap ambiguity between rule left-hand sides; with a
    /// degree bound, additionally reduces every word up to that degree under
    /// both strategies as a sampling fallback.
    pub fn check_confluence(&self, exhaustive_degree: Option<usize>) -> ConfluenceReport {
        let mut report = ConfluenceReport {
            overlaps_checked: 0,
            unresolved: Vec::new(),
            words_checked: 0,
            strategy_disagreements: Vec::new(),
        };

        for (i, a) in self.rules.iter().enumerate() {
            for (j, b) in self.rules.iter().enumerate() {
                let la = a.lhs.letters();
                let lb = b.lhs.letters();
                // A proper suffix of lhs_i equal to a proper prefix of lhs_j
                // yields the overlap word lhs_i · lhs_j[k..].
                for k in 1..la.len().min(lb.len()) {
                    if la[la.len() - k..] != lb[..k] {
                        continue;
                    }
                    report.overlaps_checked += 1;
                    let mut letters = la.to_vec();
                    letters.extend_from_slice(&lb[k..]);
                    let word = Word::from_letters(letters);

                    let first = self.apply_rule_at(&word, a, 0);
                    let second = self.apply_rule_at(&word, b, la.len() - k);
                    let nf_first = reduce_poly(&first, &self.rules, Strategy::LeftmostInnermost);
                    let nf_second = reduce_poly(&second, &self.rules, Strategy::LeftmostInnermost);
                    if nf_first != nf_second {
                        report.unresolved.push(Ambiguity {
                            witness: self.word_display(&word),
                            rules: (i, j),
                            first: nf_first.to_string(),
                            second: nf_second.to_string(),
                        });
                    }
                }
            }
        }

        if let Some(bound) = exhaustive_degree {
            let mut layer = vec![Word::empty()];
            for _ in 0..bound {
                let mut next = Vec::new();
                for word in &layer {
                    for id in 0..self.alphabet.len() {
                        next.push(word.append_power(id, 1));
                    }
                }
                for word in &next {
                    report.words_checked += 1;
                    let poly = FreePoly::from_terms(
                        self.alphabet.clone(),
                        [(word.clone(), Scalar::one())],
                    );
                    let left = reduce_poly(&poly, &self.rules, Strategy::LeftmostInnermost);
                    let right = reduce_poly(&poly, &self.rules, Strategy::RightmostOutermost);
                    if left != right {
                        report.strategy_disagreements.push(self.word_display(word));
                    }
                }
                layer = next;
            }
        }

        report
    }

    /// Irreducible words grouped by degree, up to and including `max_degree`.
    ///
    /// A word is irreducible exactly when no rule left-hand side occurs in
    /// it, so the degree-(d+1) layer is built by extending the degree-d layer
    /// one letter at a time: the only new subwords such an extension creates
    /// are suffixes. On a confluent presentation these words are a basis of
    /// `R`, and the count of words of degree at most `p` is `dim F_p(R)`.
    pub fn normal_words_by_degree(&self, max_degree: usize) -> Vec<Vec<Word>> {
        let mut layers = vec![vec![Word::empty()]];
        for _ in 0..max_degree {
            let previous = layers.last().expect("nonempty");
            let mut next = Vec::new();
            for word in previous {
                for id in 0..self.alphabet.len() {
                    let candidate = word.append_power(id, 1);
                    let reducible = self.rules.iter().any(|rule| candidate.ends_with(&rule.lhs));
                    if !reducible {
                        next.push(candidate);
                    }
                }
            }
            layers.push(next);
        }
        layers
    }

    fn apply_rule_at(&self, word: &Word, rule: &RewriteRule, pos: usize) -> FreePoly {
        let mut out = FreePoly::zero(self.alphabet.clone());
        for (rw, rc) in rule.rhs.terms() {
            out.add_term(word.splice(pos, rule.lhs.degree(), rw), rc.clone());
        }
        out
    }

    fn word_display(&self, word: &Word) -> String {
        FreePoly::from_terms(self.alphabet.clone(), [(word.clone(), Scalar::one())]).to_string()
    }
}

/// Presentations are compared by their semantic content: generator names and
/// the (canonically ordered, normalized) rule set. Names and documentation
/// parameters are ignored.
impl PartialEq for RingPresentation {
    fn eq(&self, other: &Self) -> bool {
        if self.alphabet != other.alphabet {
            return false;
        }
        fn key(r: &RingPresentation) -> Vec<&RewriteRule> {
            let mut rules: Vec<&RewriteRule> = r.rules.iter().collect();
            rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
            rules
        }
        let left = key(self);
        let right = key(other);
        left.len() == right.len()
            && left
                .iter()
                .zip(&right)
                .all(|(a, b)| a.lhs == b.lhs && a.rhs == b.rhs)
    }
}

impl Eq for RingPresentation {}

impl fmt::Debug for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RingPresentation(`{}`, {} rules)",
            self.name,
            self.rules.len()
        )
    }
}

/// Result of the diamond-lemma check.
pub struct ConfluenceReport {
    pub overlaps_checked: usize,
    pub unresolved: Vec<Ambiguity>,
    pub words_checked: usize,
    pub strategy_disagreements: Vec<String>,
}

/// An overlap whose two reduction orders ended in different normal forms.
pub struct Ambiguity {
    pub witness: String,
    pub rules: (usize, usize),
    pub first: String,
    pub second: String,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.unresolved.is_empty() && self.strategy_disagreements.is_empty()
    }
}

impl fmt::Display for ConfluenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_confluent() {
            write!(
                f,
                "confluent ({} overlaps checked, {} words sampled)",
                self.overlaps_checked, self.words_checked
            )
        } else {
            for a in &self.unresolved {
                writeln!(
                    f,
                    "overlap `{}` of rules #{} and #{} resolves to `{}` vs `{}`",
                    a.witness,
                    a.rules.0 + 1,
                    a.rules.1 + 1,
                    a.first,
                    a.second
                )?;
            }
            for w in &self.strategy_disagreements {
                writeln!(f, "strategies disagree on `{w}`")?;
            }
            Ok(())
        }
    }
}

/// Core rewriting loop. Total: every splice replaces a word by words that
/// are strictly smaller in deglex order, so the multiset of pending words
/// decreases in a well-founded order.
fn reduce_poly(poly: &FreePoly, rules: &[RewriteRule], strategy: Strategy) -> FreePoly {
    let mut out = FreePoly::zero(poly.alphabet().clone());
    let mut pending: Vec<(Word, Scalar)> =
        poly.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    while let Some((word, coeff)) = pending.pop() {
        match find_redex(&word, rules, strategy) {
            None => out.add_term(word, coeff),
            Some((pos, rule)) => {
                for (rw, rc) in rules[rule].rhs.terms() {
                    pending.push((word.splice(pos, rules[rule].lhs.degree(), rw), &coeff * rc));
                }
            }
        }
    }
    out
}

fn find_redex(word: &Word, rules: &[RewriteRule], strategy: Strategy) -> Option<(usize, usize)> {
    let letters = word.letters();
    let positions: Box<dyn Iterator<Item = usize>> = match strategy {
        Strategy::LeftmostInnermost => Box::new(0..letters.len()),
        Strategy::RightmostOutermost => Box::new((0..letters.len()).rev()),
    };
    for pos in positions {
        let mut best: Option<(usize, usize)> = None; // (lhs length, rule index)
        for (idx, rule) in rules.iter().enumerate() {
            let len = rule.lhs.degree();
            if pos + len <= letters.len() && letters[pos..pos + len] == *rule.lhs.letters() {
                let better = match (best, strategy) {
                    (None, _) => true,
                    (Some((cur, _)), Strategy::LeftmostInnermost) => len < cur,
                    (Some((cur, _)), Strategy::RightmostOutermost) => len > cur,
                };
                if better {
                    best = Some((len, idx));
                }
            }
        }
        if let Some((_, idx)) = best {
            return Some((pos, idx));
        }
    }
    None
}

/// An element of the quotient algebra, stored as the unique normal form of
/// its representatives. Only reduction produces these, so the "fixed point
/// of reduce" invariant holds by construction.
#[derive(Clone, PartialEq, Eq)]
pub struct RElement {
    poly: FreePoly,
}

impl RElement {
    pub fn poly(&self) -> &FreePoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// True when the normal form is a scalar multiple of the empty word.
    pub fn is_scalar(&self) -> bool {
        self.poly.is_zero() || self.poly.degree() == Some(0)
    }

    /// The scalar value, when the element is one.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.poly.is_zero() {
            Some(Scalar::zero())
        } else if self.poly.degree() == Some(0) {
            Some(self.poly.coefficient(&Word::empty()))
        } else {
            None
        }
    }

    /// Filtration degree: the least `p` with the element in `F_p(R)`, which
    /// for normal forms is the maximal word degree. `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.poly.degree()
    }

    /// Degree of a nonzero element; the zero element is rejected.
    pub fn deg(&self) -> Result<usize, Error> {
        self.degree().ok_or(Error::ZeroDegree)
    }

    /// True when the element is zero or homogeneous of degree exactly `d`.
    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.poly.is_zero() || (self.poly.is_homogeneous() && self.poly.degree() == Some(d))
    }

    /// Sums of normal forms are normal forms, so addition needs no ring.
    pub fn add(&self, other: &RElement) -> Result<RElement, Error> {
        Ok(RElement {
            poly: self.poly.add(&other.poly)?,
        })
    }

    pub fn sub(&self, other: &RElement) -> Result<RElement, Error> {
        Ok(RElement {
            poly: self.poly.sub(&other.poly)?,
        })
    }

    pub fn neg(&self) -> RElement {
        RElement {
            poly: self.poly.neg(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> RElement {
        RElement {
            poly: self.poly.scale(factor),
        }
    }

    /// Free-algebra product followed by reduction.
    pub fn mul(&self, other: &RElement, ring: &RingPresentation) -> Result<RElement, Error> {
        ring.reduce(&self.poly.mul(&other.poly)?)
    }
}

impl fmt::Display for RElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.poly, f)
    }
}

impl fmt::Debug for RElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.poly, f)
    }
}

/// Applies generator images multiplicatively to a polynomial: every word maps
/// to the product of the images of its letters.
fn substitute(
    poly: &FreePoly,
    images: &[RElement],
    ring: &RingPresentation,
) -> Result<RElement, Error> {
    let mut out = ring.zero();
    for (word, coeff) in poly.terms() {
        let mut acc = ring.one();
        for &letter in word.letters() {
            acc = acc.mul(&images[letter], ring)?;
        }
        out = out.add(&acc.scale(coeff))?;
    }
    Ok(out)
}

/// Extends generator images by the twisted Leibniz rule
/// `δ(rs) = σ(r)δ(s) + δ(r)s` and applies them to a polynomial.
fn substitute_deriv(
    poly: &FreePoly,
    images: &[RElement],
    twist: &[RElement],
    ring: &RingPresentation,
) -> Result<RElement, Error> {
    fn word_deriv(
        letters: &[GenId],
        images: &[RElement],
        twist: &[RElement],
        ring: &RingPresentation,
    ) -> Result<RElement, Error> {
        match letters.split_first() {
            None => Ok(ring.zero()),
            Some((&head, tail)) => {
                let tail_word = ring.reduce(&FreePoly::from_terms(
                    ring.alphabet().clone(),
                    [(Word::from_letters(tail.to_vec()), Scalar::one())],
                ))?;
                let rest = word_deriv(tail, images, twist, ring)?;
                let first = twist[head].mul(&rest, ring)?;
                let second = images[head].mul(&tail_word, ring)?;
                first.add(&second)
            }
        }
    }

    let mut out = ring.zero();
    for (word, coeff) in poly.terms() {
        let d = word_deriv(word.letters(), images, twist, ring)?;
        out = out.add(&d.scale(coeff))?;
    }
    Ok(out)
}

/// True if the images annihilate every defining relation, i.e. extend to a
/// well-defined algebra endomorphism of the quotient.
pub fn endo_well_defined(images: &[RElement], ring: &RingPresentation) -> Result<bool, Error> {
    for rule in ring.rules() {
        let lhs_poly = FreePoly::from_terms(
            ring.alphabet().clone(),
            [(rule.lhs().clone(), Scalar::one())],
        );
        let image_lhs = substitute(&lhs_poly, images, ring)?;
        let image_rhs = substitute(rule.rhs(), images, ring)?;
        if !image_lhs.sub(&image_rhs)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True if the images, extended by the twisted Leibniz rule over `twist`,
/// annihilate every defining relation.
pub fn deriv_well_defined(
    images: &[RElement],
    twist: &[RElement],
    ring: &RingPresentation,
) -> Result<bool, Error> {
    for rule in ring.rules() {
        let lhs_poly = FreePoly::from_terms(
            ring.alphabet().clone(),
            [(rule.lhs().clone(), Scalar::one())],
        );
        let image_lhs = substitute_deriv(&lhs_poly, images, twist, ring)?;
        let image_rhs = substitute_deriv(rule.rhs(), images, twist, ring)?;
        if !image_lhs.sub(&image_rhs)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An algebra endomorphism of `R` given by generator images, verified
/// well-defined at construction. When inverse images are supplied they are
/// verified to invert the map on generators, which certifies bijectivity.
#[derive(Clone, PartialEq, Eq)]
pub struct EndoSpec {
    images: Vec<RElement>,
    inverse_images: Option<Vec<RElement>>,
}

impl EndoSpec {
    pub fn new(
        images: Vec<RElement>,
        inverse_images: Option<Vec<RElement>>,
        ring: &RingPresentation,
    ) -> Result<Self, Error> {
        if images.len() != ring.generator_count() {
            return Err(Error::Structural(format!(
                "endomorphism needs {} generator images, got {}",
                ring.generator_count(),
                images.len()
            )));
        }
        if !endo_well_defined(&images, ring)? {
            return Err(Error::IllFormedEndo(
                "a defining relation has a nonzero image".into(),
            ));
        }
        // the identity map certifies its own inverse
        let identity_images: Vec<RElement> = (0..ring.generator_count())
            .map(|i| ring.generator(i))
            .collect();
        let inverse_images = if inverse_images.is_none() && images == identity_images {
            Some(images.clone())
        } else {
            inverse_images
        };
        if let Some(inverse) = &inverse_images {
            if inverse.len() != ring.generator_count() {
                return Err(Error::Structural(
                    "inverse images must cover every generator".into(),
                ));
            }
            if !endo_well_defined(inverse, ring)? {
                return Err(Error::BadInverse(
                    "inverse images do not define an endomorphism".into(),
                ));
            }
            for id in 0..ring.generator_count() {
                let t = ring.generator(id);
                let round1 = substitute(inverse[id].poly(), &images, ring)?;
                let round2 = substitute(images[id].poly(), inverse, ring)?;
                if round1 != t || round2 != t {
                    return Err(Error::BadInverse(format!(
                        "composition is not the identity on `{}`",
                        ring.alphabet().name(id)
                    )));
                }
            }
        }
        Ok(EndoSpec {
            images,
            inverse_images,
        })
    }

    /// The identity endomorphism, trivially bijective.
    pub fn identity(ring: &RingPresentation) -> Self {
        let images: Vec<RElement> = (0..ring.generator_count())
            .map(|i| ring.generator(i))
            .collect();
        EndoSpec {
            inverse_images: Some(images.clone()),
            images,
        }
    }

    pub fn images(&self) -> &[RElement] {
        &self.images
    }

    pub fn image(&self, id: GenId) -> &RElement {
        &self.images[id]
    }

    pub fn inverse_images(&self) -> Option<&[RElement]> {
        self.inverse_images.as_deref()
    }

    pub fn has_verified_inverse(&self) -> bool {
        self.inverse_images.is_some()
    }

    pub fn apply(&self, a: &RElement, ring: &RingPresentation) -> Result<RElement, Error> {
        substitute(a.poly(), &self.images, ring)
    }

    /// Filtered endomorphism: every generator image has degree at most 1.
    /// With degree-1 generators and the standard filtration this bound
    /// propagates to all of `R` by multiplicativity.
    pub fn is_filtered(&self) -> bool {
        self.images.iter().all(|img| img.degree().unwrap_or(0) <= 1)
    }

    /// Graded endomorphism: every image is zero or homogeneous of degree 1.
    pub fn is_graded(&self) -> bool {
        self.images.iter().all(|img| img.is_homogeneous_of(1))
    }
}

impl fmt::Debug for EndoSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EndoSpec({:?})", self.images)
    }
}

/// A σ-derivation of `R` given by generator images, extended by the twisted
/// Leibniz rule `δ(rs) = σ(r)δ(s) + δ(r)s` (the form forced by associativity
/// of `x·(rs)` under `x r = σ(r) x + δ(r)`), verified well-defined at
/// construction.
#[derive(Clone, PartialEq, Eq)]
pub struct DerivSpec {
    images: Vec<RElement>,
    twist: EndoSpec,
}

impl DerivSpec {
    pub fn new(
        images: Vec<RElement>,
        twist: EndoSpec,
        ring: &RingPresentation,
    ) -> Result<Self, Error> {
        if images.len() != ring.generator_count() {
            return Err(Error::Structural(format!(
                "derivation needs {} generator images, got {}",
                ring.generator_count(),
                images.len()
            )));
        }
        if !deriv_well_defined(&images, twist.images(), ring)? {
            return Err(Error::IllFormedDeriv(
                "a defining relation has a nonzero image".into(),
            ));
        }
        Ok(DerivSpec { images, twist })
    }

    /// The zero σ-derivation.
    pub fn zero(twist: EndoSpec, ring: &RingPresentation) -> Self {
        DerivSpec {
            images: (0..ring.generator_count()).map(|_| ring.zero()).collect(),
            twist,
        }
    }

    pub fn images(&self) -> &[RElement] {
        &self.images
    }

    pub fn image(&self, id: GenId) -> &RElement {
        &self.images[id]
    }

    pub fn twist(&self) -> &EndoSpec {
        &self.twist
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(RElement::is_zero)
    }

    pub fn apply(&self, a: &RElement, ring: &RingPresentation) -> Result<RElement, Error> {
        substitute_deriv(a.poly(), &self.images, self.twist.images(), ring)
    }

    /// Filtered σ-derivation: every generator image has degree at most 2,
    /// which gives `deg δ(a) ≤ deg a + 1` on all of `R` via the Leibniz rule.
    pub fn is_filtered(&self) -> bool {
        self.images.iter().all(|img| img.degree().unwrap_or(0) <= 2)
    }

    /// Every image zero or homogeneous of degree 2 (a graded derivation of
    /// degree +1 on degree-1 generators).
    pub fn is_graded(&self) -> bool {
        self.images.iter().all(|img| img.is_homogeneous_of(2))
    }
}

impl fmt::Debug for DerivSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DerivSpec({:?})", self.images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alphabet(names: &[&str]) -> Arc<Alphabet> {
        Alphabet::new(names.iter().copied()).unwrap()
    }

    fn poly(ring_alphabet: &Arc<Alphabet>, terms: &[(&[&str], i64)]) -> FreePoly {
        let mut out = FreePoly::zero(ring_alphabet.clone());
        for (names, coeff) in terms {
            let letters = names
                .iter()
                .map(|n| ring_alphabet.index_of(n).unwrap())
                .collect();
            out.add_term(Word::from_letters(letters), Scalar::integer(*coeff));
        }
        out
    }

    /// The Jordan plane K<t1,t2>/(t2 t1 - t1 t2 - t1^2).
    fn jordan() -> RingPresentation {
        let a = alphabet(&["t1", "t2"]);
        let lhs = Word::from_letters(vec![1, 0]);
        let rhs = poly(&a, &[(&["t1", "t2"], 1), (&["t1", "t1"], 1)]);
        RingPresentation::new("jordan", a, vec![(lhs, rhs)], BTreeMap::new()).unwrap()
    }

    /// Commutative K[t1,...,tm].
    fn commutative(m: usize) -> RingPresentation {
        let names: Vec<String> = (1..=m).map(|i| format!("t{i}")).collect();
        let a = Alphabet::new(names).unwrap();
        let mut rules = Vec::new();
        for j in 0..m {
            for i in 0..j {
                let lhs = Word::from_letters(vec![j, i]);
                let mut rhs = FreePoly::zero(a.clone());
                rhs.add_term(Word::from_letters(vec![i, j]), Scalar::one());
                rules.push((lhs, rhs));
            }
        }
        RingPresentation::new("poly", a, rules, BTreeMap::new()).unwrap()
    }

    #[test]
    fn jordan_reduction_examples() {
        let r = jordan();
        let a = r.alphabet().clone();

        let t2t1 = r.reduce(&poly(&a, &[(&["t2", "t1"], 1)])).unwrap();
        assert_eq!(t2t1.to_string(), "t1*t2 + t1^2");

        // two-step reduction: t2 t1 t1 -> t1^2 t2 + 2 t1^3
        let t2t1t1 = r.reduce(&poly(&a, &[(&["t2", "t1", "t1"], 1)])).unwrap();
        assert_eq!(t2t1t1.to_string(), "t1^2*t2 + 2*t1^3");
    }

    #[test]
    fn commutative_reduction() {
        let r = commutative(2);
        let a = r.alphabet().clone();
        let t2t1 = r.reduce(&poly(&a, &[(&["t2", "t1"], 1)])).unwrap();
        assert_eq!(t2t1.to_string(), "t1*t2");
    }

    #[test]
    fn ring_arithmetic() {
        let r = jordan();
        let t1 = r.generator(0);
        let t2 = r.generator(1);
        assert_eq!(t1.mul(&t2, &r).unwrap().to_string(), "t1*t2");
        assert_eq!(t2.mul(&t1, &r).unwrap().to_string(), "t1*t2 + t1^2");
        assert_eq!(r.one().mul(&t2, &r).unwrap(), t2);
    }

    #[test]
    fn reduce_is_idempotent() {
        let r = jordan();
        let a = r.alphabet().clone();
        let f = poly(&a, &[(&["t2", "t1", "t2"], 3), (&["t2"], -2), (&[], 5)]);
        let once = r.reduce(&f).unwrap();
        let twice = r.reduce(once.poly()).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn degrees() {
        let r = jordan();
        let a = r.alphabet().clone();
        let f = r
            .reduce(&poly(&a, &[(&["t1", "t2"], 1), (&["t1"], 1)]))
            .unwrap();
        assert_eq!(f.deg().unwrap(), 2);
        assert_eq!(r.one().deg().unwrap(), 0);
        let g = r.reduce(&poly(&a, &[(&["t1"], 2), (&["t2"], 1)])).unwrap();
        assert_eq!(g.deg().unwrap(), 1);
        assert!(matches!(r.zero().deg(), Err(Error::ZeroDegree)));
    }

    #[test]
    fn confluence_verdicts() {
        // single Jordan rule: no overlap of t2t1 with itself
        let report = jordan().check_confluence(Some(4));
        assert!(report.is_confluent());
        assert_eq!(report.overlaps_checked, 0);

        // commutative in three variables: the single overlap t3 t2 t1 resolves
        let report = commutative(3).check_confluence(Some(4));
        assert!(report.is_confluent());
        assert_eq!(report.overlaps_checked, 1);
    }

    #[test]
    fn subword_ruleset_rejected() {
        let a = alphabet(&["t1", "t2"]);
        let r1 = (
            Word::from_letters(vec![1, 0]),
            poly(&a, &[(&["t1", "t2"], 1)]),
        );
        let r2 = (Word::from_letters(vec![1, 0, 0]), FreePoly::zero(a.clone()));
        let err = RingPresentation::new("bad", a, vec![r1, r2], BTreeMap::new());
        assert!(matches!(err, Err(Error::Structural(_))));
    }

    #[test]
    fn nonconfluent_ruleset_rejected() {
        // sl2-style rules with a broken constant: the overlap h f e fails
        let a = alphabet(&["e", "f", "h"]);
        let rules = vec![
            (
                Word::from_letters(vec![1, 0]),
                poly(&a, &[(&["e", "f"], 1), (&["h"], -1)]),
            ),
            (
                Word::from_letters(vec![2, 0]),
                poly(&a, &[(&["e", "h"], 1), (&["e"], 2)]),
            ),
            (
                Word::from_letters(vec![2, 1]),
                poly(&a, &[(&["f", "h"], 1), (&["f"], -3)]),
            ),
        ];
        let err = RingPresentation::new("broken", a, rules, BTreeMap::new());
        assert!(matches!(err, Err(Error::NotConfluent(_))));
    }

    #[test]
    fn degree_increasing_rule_rejected() {
        let a = alphabet(&["t1", "t2"]);
        let lhs = Word::from_letters(vec![0, 1]);
        let rhs = poly(&a, &[(&["t2", "t1", "t1"], 1)]);
        let err = RingPresentation::new("bad", a, vec![(lhs, rhs)], BTreeMap::new());
        assert!(matches!(err, Err(Error::InvalidRule { .. })));
    }

    #[test]
    fn jordan_endomorphism() {
        let r = jordan();
        let a = r.alphabet().clone();
        // σ(t1) = t1, σ(t2) = 2 t1 + t2
        let images = vec![
            r.generator(0),
            r.reduce(&poly(&a, &[(&["t1"], 2), (&["t2"], 1)])).unwrap(),
        ];
        let inverse = vec![
            r.generator(0),
            r.reduce(&poly(&a, &[(&["t1"], -2), (&["t2"], 1)])).unwrap(),
        ];
        let sigma = EndoSpec::new(images, Some(inverse), &r).unwrap();
        assert!(sigma.is_filtered());
        assert!(sigma.has_verified_inverse());

        let t2 = r.generator(1);
        assert_eq!(sigma.apply(&t2, &r).unwrap().to_string(), "t2 + 2*t1");

        let id = EndoSpec::identity(&r);
        assert_eq!(id.apply(&t2, &r).unwrap(), t2);
    }

    #[test]
    fn swapping_generators_is_not_an_endomorphism_of_jordan() {
        let r = jordan();
        let images = vec![r.generator(1), r.generator(0)];
        assert!(!endo_well_defined(&images, &r).unwrap());
        assert!(matches!(
            EndoSpec::new(images, None, &r),
            Err(Error::IllFormedEndo(_))
        ));
    }

    #[test]
    fn affine_endomorphism_on_kt() {
        // σ(t) = c1 t + c2 with (c1, c2) = (2, 1); σ(t^2) = 4t^2 + 4t + 1
        let r = commutative(1);
        let a = r.alphabet().clone();
        let images = vec![r.reduce(&poly(&a, &[(&["t1"], 2), (&[], 1)])).unwrap()];
        let sigma = EndoSpec::new(images, None, &r).unwrap();
        assert!(sigma.is_filtered());
        let t2 = r.reduce(&poly(&a, &[(&["t1", "t1"], 1)])).unwrap();
        assert_eq!(
            sigma.apply(&t2, &r).unwrap().to_string(),
            "4*t1^2 + 4*t1 + 1"
        );

        // σ(t) = t^2 is well-defined on K[t] but not filtered
        let square = EndoSpec::new(vec![t2.clone()], None, &r).unwrap();
        assert!(!square.is_filtered());
    }

    #[test]
    fn weyl_derivation() {
        // δ(t) = 1 with σ = id on K[t]: δ(t^2) = 2t
        let r = commutative(1);
        let a = r.alphabet().clone();
        let sigma = EndoSpec::identity(&r);
        let delta = DerivSpec::new(vec![r.one()], sigma.clone(), &r).unwrap();
        assert!(delta.is_filtered());
        let t2 = r.reduce(&poly(&a, &[(&["t1", "t1"], 1)])).unwrap();
        assert_eq!(delta.apply(&t2, &r).unwrap().to_string(), "2*t1");

        let zero = DerivSpec::zero(sigma.clone(), &r);
        assert!(zero.is_filtered());
        assert!(zero.apply(&t2, &r).unwrap().is_zero());

        // δ(t) = t^3 is well-defined (no relations) but not filtered:
        // δ(t^2) = 2 t^4
        let cubic = DerivSpec::new(
            vec![r.reduce(&poly(&a, &[(&["t1"; 3], 1)])).unwrap()],
            sigma,
            &r,
        )
        .unwrap();
        assert!(!cubic.is_filtered());
        assert_eq!(cubic.apply(&t2, &r).unwrap().to_string(), "2*t1^4");
    }

    #[test]
    fn partial_derivatives_are_derivations_of_polynomial_rings() {
        let r = commutative(3);
        let sigma = EndoSpec::identity(&r);
        for k in 0..3 {
            let images = (0..3)
                .map(|i| if i == k { r.one() } else { r.zero() })
                .collect();
            let delta = DerivSpec::new(images, sigma.clone(), &r).unwrap();
            assert!(delta.is_filtered());
        }
    }

    #[test]
    fn deriv_with_nonzero_image_of_a_relation_is_rejected() {
        // On the Jordan plane, δ(t1) = 0, δ(t2) = t1 with σ = id:
        // δ(t2t1 - t1t2 - t1^2) = t1·t1 - t1·t1 = 0, so this one works;
        // δ(t1) = t2, δ(t2) = 0 fails instead.
        let r = jordan();
        let sigma = EndoSpec::identity(&r);
        let good = DerivSpec::new(vec![r.zero(), r.generator(0)], sigma.clone(), &r);
        assert!(good.is_ok());
        let bad = DerivSpec::new(vec![r.generator(1), r.zero()], sigma, &r);
        assert!(matches!(bad, Err(Error::IllFormedDeriv(_))));
    }

    #[test]
    fn normal_word_enumeration() {
        // Jordan plane has basis t1^a t2^b: d+1 words in degree d
        let layers = jordan().normal_words_by_degree(5);
        for (d, layer) in layers.iter().enumerate() {
            assert_eq!(layer.len(), d + 1);
        }
        // commutative in 3 variables: C(d+2, 2) monomials in degree d
        let layers = commutative(3).normal_words_by_degree(4);
        assert_eq!(
            layers.iter().map(Vec::len).collect::<Vec<_>>(),
            vec![1, 3, 6, 10, 15]
        );
    }

    #[test]
    fn unit_filtration_level_is_the_scalars() {
        // every degree-0 normal form is a scalar: F_0(R) = K
        let r = jordan();
        let a = r.alphabet().clone();
        let f = r.reduce(&poly(&a, &[(&[], 7)])).unwrap();
        assert!(f.is_scalar());
        assert_eq!(f.deg().unwrap(), 0);
    }
}
