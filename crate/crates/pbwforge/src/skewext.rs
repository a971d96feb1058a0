//! Skew PBW extensions `A = σ(R)⟨x_1,…,x_n⟩` with unique normal forms.
//!
//! Every nonzero element of such an extension has a unique representation
//! `Σ c_α x^α` with nonzero left coefficients `c_α ∈ R` and standard
//! monomials `x^α = x_1^{α_1}…x_n^{α_n}`. Products are brought back to that
//! form by two rewrite moves:
//!
//! - pushing a variable past a coefficient, `x_i r = σ_i(r) x_i + δ_i(r)`,
//! - sorting a variable pair, `x_j x_i = d_ij x_i x_j + r0_ji + Σ_l r_lji x_l`
//!   for `j > i`.
//!
//! Both moves strictly decrease the lexicographic measure (number of variable
//! inversions, number of coefficient letters to the right of a variable), so
//! normalization terminates on every valid presentation.
//!
//! On top of the arithmetic the module implements the total-degree filtration
//! `tdeg(c x^α) = deg(c) + |α|`, `F_p(A) = {f : tdeg(f) ≤ p} ∪ {0}`, and the
//! verdict machinery for the σ-filtered conditions: each `σ_i` filtered, each
//! `δ_i` filtered, and the cross relations preserving total degree.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::coeffring::{DerivSpec, EndoSpec, RElement, RingPresentation};
use crate::scalar::Scalar;
use crate::Error;

/// An exponent vector `α ∈ ℕⁿ`, the standard monomial `x^α`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<usize>,
}

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Monomial {
            exponents: vec![0; n],
        }
    }

    pub fn variable(index: usize, n: usize) -> Self {
        let mut exponents = vec![0; n];
        exponents[index] = 1;
        Monomial { exponents }
    }

    pub fn new(exponents: Vec<usize>) -> Self {
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    /// Number of variables the exponent vector covers.
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Total degree `|α|`.
    pub fn degree(&self) -> usize {
        self.exponents.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Index of the largest variable occurring, if any.
    pub fn top_variable(&self) -> Option<usize> {
        self.exponents.iter().rposition(|&e| e > 0)
    }

    pub fn bumped(&self, index: usize) -> Monomial {
        let mut exponents = self.exponents.clone();
        exponents[index] += 1;
        Monomial { exponents }
    }

    pub fn lowered(&self, index: usize) -> Monomial {
        debug_assert!(self.exponents[index] > 0);
        let mut exponents = self.exponents.clone();
        exponents[index] -= 1;
        Monomial { exponents }
    }
}

/// Graded-lexicographic order: total degree first, then lexicographic on the
/// exponent vector.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{:?}", self.exponents)
    }
}

/// Which coefficient degree enters the total degree: the standard inherited
/// filtration on `R`, or the trivial positive filtration that assigns degree
/// 0 to every nonzero coefficient (under which `tdeg` collapses onto the
/// monomial degree).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FiltrationMode {
    Standard,
    Trivial,
}

/// The cross relation `x_j x_i = d x_i x_j + r0 + Σ_l r[l] x_l` for one pair
/// `i < j`.
#[derive(Clone, PartialEq, Eq)]
pub struct CrossRelation {
    d: RElement,
    r0: RElement,
    r: Vec<RElement>,
}

impl CrossRelation {
    pub fn new(d: RElement, r0: RElement, r: Vec<RElement>) -> Self {
        CrossRelation { d, r0, r }
    }

    pub fn quasi_commutative(d: RElement, n: usize, ring: &RingPresentation) -> Self {
        CrossRelation {
            d,
            r0: ring.zero(),
            r: (0..n).map(|_| ring.zero()).collect(),
        }
    }

    pub fn d(&self) -> &RElement {
        &self.d
    }

    pub fn r0(&self) -> &RElement {
        &self.r0
    }

    pub fn r(&self) -> &[RElement] {
        &self.r
    }
}

/// How far the bijectivity hypotheses have been certified for a presentation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BijectivityStatus {
    /// Every `σ_i` came with verified inverse images and every `d_ij` is a
    /// nonzero scalar (hence invertible).
    Verified,
    /// Nothing is known to fail, but some certificate is missing.
    Unverified(String),
}

impl BijectivityStatus {
    pub fn is_verified(&self) -> bool {
        matches!(self, BijectivityStatus::Verified)
    }
}

impl fmt::Display for BijectivityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BijectivityStatus::Verified => write!(f, "verified"),
            BijectivityStatus::Unverified(why) => write!(f, "unverified: {why}"),
        }
    }
}

/// The data of a skew PBW extension over a validated coefficient ring.
/// Immutable after construction.
#[derive(Clone)]
pub struct ExtensionPresentation {
    name: String,
    base: RingPresentation,
    variables: Vec<String>,
    sigma: Vec<EndoSpec>,
    delta: Vec<DerivSpec>,
    cross: BTreeMap<(usize, usize), CrossRelation>,
}

impl ExtensionPresentation {
    pub fn new(
        name: impl Into<String>,
        base: RingPresentation,
        variables: Vec<String>,
        sigma: Vec<EndoSpec>,
        delta: Vec<DerivSpec>,
        cross: BTreeMap<(usize, usize), CrossRelation>,
    ) -> Result<Self, Error> {
        let n = variables.len();
        if n == 0 {
            return Err(Error::Structural(
                "an extension needs at least one variable".into(),
            ));
        }
        for (i, v) in variables.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::Structural("empty variable name".into()));
            }
            if variables[..i].contains(v) || base.alphabet().index_of(v).is_some() {
                return Err(Error::Structural(format!(
                    "variable `{v}` is already declared"
                )));
            }
        }
        if sigma.len() != n || delta.len() != n {
            return Err(Error::Structural(format!(
                "need one σ and one δ per variable: expected {n}, got {} and {}",
                sigma.len(),
                delta.len()
            )));
        }
        for (i, d) in delta.iter().enumerate() {
            if d.twist() != &sigma[i] {
                return Err(Error::Structural(format!(
                    "δ for variable `{}` is twisted by a different endomorphism than its σ",
                    variables[i]
                )));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let rel = cross.get(&(i, j)).ok_or_else(|| {
                    Error::Structural(format!(
                        "missing cross relation for the pair ({}, {})",
                        variables[j], variables[i]
                    ))
                })?;
                if rel.d.is_zero() {
                    return Err(Error::Structural(format!(
                        "cross coefficient d for ({}, {}) must be nonzero",
                        variables[j], variables[i]
                    )));
                }
                if rel.r.len() != n {
                    return Err(Error::Structural(format!(
                        "cross relation for ({}, {}) needs {n} linear coefficients",
                        variables[j], variables[i]
                    )));
                }
            }
        }
        if cross.keys().any(|&(i, j)| i >= j || j >= n) {
            return Err(Error::Structural(
                "cross relations must be indexed by pairs i < j".into(),
            ));
        }
        Ok(ExtensionPresentation {
            name: name.into(),
            base,
            variables,
            sigma,
            delta,
            cross,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &RingPresentation {
        &self.base
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn sigma(&self, i: usize) -> &EndoSpec {
        &self.sigma[i]
    }

    pub fn delta(&self, i: usize) -> &DerivSpec {
        &self.delta[i]
    }

    pub fn cross(&self, i: usize, j: usize) -> &CrossRelation {
        debug_assert!(i < j);
        &self.cross[&(i, j)]
    }

    pub fn cross_pairs(&self) -> impl Iterator<Item = (&(usize, usize), &CrossRelation)> {
        self.cross.iter()
    }

    // ---- element constructors ----

    pub fn zero(&self) -> AElement {
        AElement {
            n: self.variable_count(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> AElement {
        self.from_coefficient(self.base.one())
    }

    pub fn from_coefficient(&self, c: RElement) -> AElement {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(self.variable_count()), c);
        }
        AElement {
            n: self.variable_count(),
            terms,
        }
    }

    pub fn variable(&self, index: usize) -> AElement {
        let mut terms = BTreeMap::new();
        terms.insert(
            Monomial::variable(index, self.variable_count()),
            self.base.one(),
        );
        AElement {
            n: self.variable_count(),
            terms,
        }
    }

    pub fn monomial_element(&self, c: RElement, monomial: Monomial) -> AElement {
        let mut out = self.zero();
        out.insert(monomial, c);
        out
    }

    // ---- normal-form multiplication ----

    /// Appends `x_index` on the right of an element and renormalizes.
    pub fn times_variable(&self, f: &AElement, index: usize) -> Result<AElement, Error> {
        let mut out = self.zero();
        for (mono, coeff) in f.terms() {
            match mono.top_variable() {
                // already sorted: every variable present is ≤ index
                Some(top) if top > index => {
                    // x^β x_index = x^{β-e_top} (x_top x_index), then expand
                    // the cross relation and renormalize recursively
                    let rel = self.cross(index, top);
                    let stem = mono.lowered(top);

                    let head = self.monomial_times_coefficient(&stem, rel.d())?;
                    let head = self.times_variable(&self.times_variable(&head, index)?, top)?;
                    let mut piece = head;

                    if !rel.r0().is_zero() {
                        piece = piece.add(&self.monomial_times_coefficient(&stem, rel.r0())?)?;
                    }
                    for (l, rl) in rel.r().iter().enumerate() {
                        if !rl.is_zero() {
                            let lifted = self.monomial_times_coefficient(&stem, rl)?;
                            piece = piece.add(&self.times_variable(&lifted, l)?)?;
                        }
                    }
                    out = out.add(&self.coefficient_times(coeff, &piece)?)?;
                }
                _ => out.insert(mono.bumped(index), coeff.clone()),
            }
        }
        Ok(out)
    }

    /// The product `x^α · r` in normal form: the coefficient is pushed left
    /// through the variables one at a time via `x_i r = σ_i(r) x_i + δ_i(r)`.
    pub fn monomial_times_coefficient(
        &self,
        alpha: &Monomial,
        r: &RElement,
    ) -> Result<AElement, Error> {
        if r.is_zero() {
            return Ok(self.zero());
        }
        match alpha.top_variable() {
            None => Ok(self.from_coefficient(r.clone())),
            Some(top) => {
                let stem = alpha.lowered(top);
                let sigma_part = self.sigma[top].apply(r, &self.base)?;
                let mut out = self.zero();
                if !sigma_part.is_zero() {
                    let pushed = self.monomial_times_coefficient(&stem, &sigma_part)?;
                    out = out.add(&self.times_variable(&pushed, top)?)?;
                }
                let delta_part = self.delta[top].apply(r, &self.base)?;
                if !delta_part.is_zero() {
                    out = out.add(&self.monomial_times_coefficient(&stem, &delta_part)?)?;
                }
                Ok(out)
            }
        }
    }

    /// Appends the monomial `x^β` on the right, smallest variable first.
    pub fn times_monomial(&self, f: &AElement, beta: &Monomial) -> Result<AElement, Error> {
        let mut out = f.clone();
        for (index, &count) in beta.exponents().iter().enumerate() {
            for _ in 0..count {
                out = self.times_variable(&out, index)?;
            }
        }
        Ok(out)
    }

    /// Left multiplication by a coefficient: `r · (c x^α) = (r c) x^α`.
    pub fn coefficient_times(&self, r: &RElement, f: &AElement) -> Result<AElement, Error> {
        let mut out = self.zero();
        for (mono, coeff) in f.terms() {
            out.insert(mono.clone(), r.mul(coeff, &self.base)?);
        }
        Ok(out)
    }

    /// Left multiplication by a monomial: `x^μ · f`.
    pub fn monomial_times(&self, mu: &Monomial, f: &AElement) -> Result<AElement, Error> {
        let mut out = self.zero();
        for (mono, coeff) in f.terms() {
            let pushed = self.monomial_times_coefficient(mu, coeff)?;
            out = out.add(&self.times_monomial(&pushed, mono)?)?;
        }
        Ok(out)
    }

    /// The unique PBW normal form of the product `f · g`.
    pub fn mul(&self, f: &AElement, g: &AElement) -> Result<AElement, Error> {
        let mut out = self.zero();
        for (alpha, a) in f.terms() {
            for (beta, b) in g.terms() {
                // a x^α · b x^β = a (x^α b) x^β
                let pushed = self.monomial_times_coefficient(alpha, b)?;
                let appended = self.times_monomial(&pushed, beta)?;
                out = out.add(&self.coefficient_times(a, &appended)?)?;
            }
        }
        Ok(out)
    }

    /// Evaluates the closed-form expansion of `a x^X · b x^Y`: for each
    /// variable position, a telescoping sum of the terms in which the
    /// derivation fires once, with powers of the endomorphisms applied to
    /// everything it has already passed, plus the pure-endomorphism summand
    /// `a σ^X(b) x^X x^Y`. Variable sorting is finished with the cross
    /// relations. Agrees with [`ExtensionPresentation::mul`] on every input;
    /// the two routes make that identity testable.
    pub fn expansion_closed_form(
        &self,
        a: &RElement,
        x_exp: &Monomial,
        b: &RElement,
        y_exp: &Monomial,
    ) -> Result<AElement, Error> {
        let n = self.variable_count();
        if a.is_zero() || b.is_zero() {
            return Ok(self.zero());
        }
        let mut out = self.zero();
        // tail = σ_{i+1}^{X_{i+1}}(… σ_n^{X_n}(b)…) while scanning i from n-1
        // down to 0
        let mut tail = b.clone();
        for i in (0..n).rev() {
            let xi = x_exp.exponents()[i];
            // prefix monomial x_1^{X_1} … x_{i-1}^{X_{i-1}}
            let mut prefix = vec![0; n];
            prefix[..i].copy_from_slice(&x_exp.exponents()[..i]);
            // suffix monomial x_{i+1}^{X_{i+1}} … x_n^{X_n}
            let mut suffix = vec![0; n];
            suffix[i + 1..].copy_from_slice(&x_exp.exponents()[i + 1..]);
            let suffix = Monomial::new(suffix);

            let mut twisted = tail.clone();
            for k in 1..=xi {
                // summand x_i^{X_i - k} δ_i(σ_i^{k-1}(tail)) x_i^{k-1}
                let fired = self.delta[i].apply(&twisted, &self.base)?;
                if !fired.is_zero() {
                    let mut inner = self.from_coefficient(fired);
                    let mut trailing = Monomial::unit(n);
                    trailing.exponents[i] = k - 1;
                    inner = self.times_monomial(&inner, &trailing)?;
                    inner = self.times_monomial(&inner, &suffix)?;
                    let mut left = prefix.clone();
                    left[i] = xi - k;
                    inner = self.monomial_times(&Monomial::new(left), &inner)?;
                    inner = self.times_monomial(&inner, y_exp)?;
                    out = out.add(&self.coefficient_times(a, &inner)?)?;
                }
                if k < xi {
                    twisted = self.sigma[i].apply(&twisted, &self.base)?;
                }
            }
            for _ in 0..xi {
                tail = self.sigma[i].apply(&tail, &self.base)?;
            }
        }
        // pure-endomorphism summand a σ^X(b) x^X x^Y
        let coeff = a.mul(&tail, &self.base)?;
        let stem = self.from_coefficient(coeff);
        let stem = self.times_monomial(&stem, x_exp)?;
        let stem = self.times_monomial(&stem, y_exp)?;
        out.add(&stem)
    }

    // ---- degrees and the filtration ----

    /// Total degree under the chosen coefficient filtration. Zero is refused.
    pub fn tdeg_with(&self, f: &AElement, mode: FiltrationMode) -> Result<usize, Error> {
        f.terms()
            .map(|(mono, coeff)| {
                let cdeg = match mode {
                    FiltrationMode::Standard => coeff.deg()?,
                    FiltrationMode::Trivial => 0,
                };
                Ok(cdeg + mono.degree())
            })
            .try_fold(None::<usize>, |acc, d: Result<usize, Error>| {
                let d = d?;
                Ok(Some(acc.map_or(d, |m: usize| m.max(d))))
            })?
            .ok_or(Error::ZeroDegree)
    }

    /// `tdeg(f) = max deg(c_α) + |α|` over the unique representation.
    pub fn tdeg(&self, f: &AElement) -> Result<usize, Error> {
        self.tdeg_with(f, FiltrationMode::Standard)
    }

    /// The monomial-only degree `max |α|` (the coefficient degrees are
    /// ignored): the degree under the monomial-only filtration, whose level m
    /// is spanned by the elements with every monomial of degree at most m.
    pub fn lr_degree(&self, f: &AElement) -> Result<usize, Error> {
        f.terms()
            .map(|(mono, _)| mono.degree())
            .max()
            .ok_or(Error::ZeroDegree)
    }

    /// Membership in `F_p(A) = {f : tdeg(f) ≤ p} ∪ {0}`.
    pub fn in_filtration(&self, f: &AElement, p: usize) -> bool {
        f.is_zero() || self.tdeg(f).expect("nonzero") <= p
    }

    /// Splits `f ∈ F_p(A)` along the free-filtered decomposition
    /// `F_p(A) = ⊕_α F_{p-|α|}(R) x^α`, certifying `deg(c_α) ≤ p - |α|` for
    /// every summand.
    pub fn free_filtered_decomposition(
        &self,
        f: &AElement,
        p: usize,
    ) -> Result<Vec<(Monomial, RElement, usize)>, Error> {
        if !self.in_filtration(f, p) {
            return Err(Error::NotInFiltration {
                level: p,
                found: self.tdeg(f)?,
            });
        }
        let mut parts = Vec::new();
        for (mono, coeff) in f.terms() {
            let budget = p - mono.degree();
            debug_assert!(coeff.deg()? <= budget);
            parts.push((mono.clone(), coeff.clone(), budget));
        }
        Ok(parts)
    }

    // ---- σ-filtered verdicts ----

    /// Structural reading of the tdeg-preservation condition: for every pair
    /// `i < j`, `d_ij` is a nonzero scalar, `deg r0_ji ≤ 2`, and
    /// `deg r_lji ≤ 1`. Checked on the presentation data so that cancellation
    /// in a symbolic sum cannot mask a violation.
    pub fn preserves_tdeg(&self) -> bool {
        self.cross.values().all(|rel| {
            rel.d.is_scalar()
                && rel.r0.degree().unwrap_or(0) <= 2
                && rel.r.iter().all(|rl| rl.degree().unwrap_or(0) <= 1)
        })
    }

    /// Strict reading of the same condition: the lower-order remainder
    /// `r0_ji + Σ_l r_lji x_l` of every cross relation, when nonzero, has
    /// total degree exactly 2 (the `d x_i x_j` term always contributes 2, so
    /// reading the bound on the whole right-hand side would never constrain
    /// the remainder). Relations like `f e = e f - h`, whose remainder has
    /// total degree 1, pass the structural reading but fail this one; the
    /// verdict uses the structural reading and reports carry a note whenever
    /// the two disagree.
    pub fn preserves_tdeg_strict(&self) -> Result<bool, Error> {
        for rel in self.cross.values() {
            if !rel.d.is_scalar() {
                return Ok(false);
            }
            let mut remainder = self.from_coefficient(rel.r0.clone());
            for (l, rl) in rel.r.iter().enumerate() {
                if !rl.is_zero() {
                    remainder = remainder.add(&self.monomial_element(
                        rl.clone(),
                        Monomial::variable(l, self.variable_count()),
                    ))?;
                }
            }
            if !remainder.is_zero() && self.tdeg(&remainder)? != 2 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Per-condition report for the σ-filtered property: every σ filtered,
    /// every δ filtered, and the cross relations preserving total degree.
    pub fn check_sigma_filtered(&self) -> SigmaFilteredReport {
        let sigma_filtered: Vec<bool> = self.sigma.iter().map(EndoSpec::is_filtered).collect();
        let delta_filtered: Vec<bool> = self.delta.iter().map(DerivSpec::is_filtered).collect();
        let preserves_tdeg = self.preserves_tdeg();
        let preserves_tdeg_strict = self.preserves_tdeg_strict().unwrap_or(false);

        let mut failures = Vec::new();
        for (i, ok) in sigma_filtered.iter().enumerate() {
            if !ok {
                let worst = self.sigma[i]
                    .images()
                    .iter()
                    .filter_map(RElement::degree)
                    .max()
                    .unwrap_or(0);
                failures.push(format!(
                    "sigma[{}] is not filtered: a generator image has degree {} > 1",
                    self.variables[i], worst
                ));
            }
        }
        for (i, ok) in delta_filtered.iter().enumerate() {
            if !ok {
                let worst = self.delta[i]
                    .images()
                    .iter()
                    .filter_map(RElement::degree)
                    .max()
                    .unwrap_or(0);
                failures.push(format!(
                    "delta[{}] is not filtered: a generator image has degree {} > 2",
                    self.variables[i], worst
                ));
            }
        }
        if !preserves_tdeg {
            failures.push("a cross relation does not preserve total degree".into());
        }

        let mut notes = Vec::new();
        if preserves_tdeg != preserves_tdeg_strict {
            notes.push(
                "the structural reading of tdeg preservation (components bounded by \
                 degree 2) and the strict reading (nonzero lower-order remainder of \
                 total degree exactly 2) differ; the structural reading decides the \
                 verdict"
                    .to_string(),
            );
        }

        let verdict = sigma_filtered.iter().all(|&b| b)
            && delta_filtered.iter().all(|&b| b)
            && preserves_tdeg;
        SigmaFilteredReport {
            sigma_filtered,
            delta_filtered,
            preserves_tdeg,
            preserves_tdeg_strict,
            verdict,
            failures,
            notes,
        }
    }

    /// Connectedness of the filtration: `F_0` is spanned by the empty word
    /// alone. Generators all have degree 1 and rules cannot shorten below
    /// their left-hand sides, so this checks that the degree-0 layer of the
    /// normal-word basis is exactly `{1}`.
    pub fn check_connected(&self) -> bool {
        let layers = self.base.normal_words_by_degree(0);
        layers.len() == 1 && layers[0].len() == 1 && layers[0][0].is_empty()
    }

    /// Bijectivity certificate: all `σ_i` carry verified inverses and every
    /// `d_ij` is a nonzero scalar. Injectivity of an arbitrary endomorphism
    /// (and unit-ness of an arbitrary `d`) is not decided here; without the
    /// certificates the status is reported as unverified, not as failed.
    pub fn bijectivity(&self) -> BijectivityStatus {
        for (i, s) in self.sigma.iter().enumerate() {
            if !s.has_verified_inverse() {
                return BijectivityStatus::Unverified(format!(
                    "no inverse images supplied for sigma[{}]",
                    self.variables[i]
                ));
            }
        }
        for (&(i, j), rel) in &self.cross {
            if !rel.d.is_scalar() {
                return BijectivityStatus::Unverified(format!(
                    "d for ({}, {}) is not a scalar",
                    self.variables[j], self.variables[i]
                ));
            }
        }
        BijectivityStatus::Verified
    }

    /// Renders an element with the variable names of this presentation.
    pub fn display<'a>(&'a self, f: &'a AElement) -> AElementDisplay<'a> {
        AElementDisplay {
            ext: self,
            element: f,
        }
    }

    /// Deterministic supply of elements for property checks: single PBW terms
    /// `w x^α` over the normal-word basis with `tdeg ≤ max_tdeg`, plus the
    /// pairwise sums of consecutive ones.
    pub fn enumerate_elements(&self, max_tdeg: usize, limit: usize) -> Vec<AElement> {
        let words = self.base.normal_words_by_degree(max_tdeg);
        let n = self.variable_count();
        let mut monos = vec![Monomial::unit(n)];
        for d in 1..=max_tdeg {
            monos.extend(monomials_of_degree(n, d));
        }
        let mut singles = Vec::new();
        'outer: for mono in &monos {
            for (wd, layer) in words.iter().enumerate() {
                if wd + mono.degree() > max_tdeg {
                    break;
                }
                for word in layer {
                    let coeff = self
                        .base
                        .element_from_normal(crate::freealg::FreePoly::from_terms(
                            self.base.alphabet().clone(),
                            [(word.clone(), Scalar::one())],
                        ))
                        .expect("basis words are normal");
                    singles.push(self.monomial_element(coeff, mono.clone()));
                    if singles.len() >= limit {
                        break 'outer;
                    }
                }
            }
        }
        let mut out = singles.clone();
        let half = Scalar::new(1, 2).expect("nonzero denominator");
        'pairs: for i in 0..singles.len() {
            for j in (i + 1)..singles.len() {
                if out.len() >= limit.max(singles.len()) {
                    break 'pairs;
                }
                let sum = singles[i].add(&singles[j]).expect("same presentation");
                out.push(if (i + j) % 2 == 0 {
                    sum
                } else {
                    singles[i]
                        .sub(&singles[j].scale(&half))
                        .expect("same presentation")
                });
            }
        }
        out
    }
}

/// All exponent vectors in `n` variables of total degree exactly `d`.
pub(crate) fn monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
    fn rec(n: usize, d: usize, prefix: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        if n == 1 {
            prefix.push(d);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in 0..=d {
            prefix.push(first);
            rec(n - 1, d - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Extensions are compared by semantic content: base presentation, variable
/// names, σ/δ images (with inverse data), and cross relations.
impl PartialEq for ExtensionPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.variables == other.variables
            && self.sigma == other.sigma
            && self.delta == other.delta
            && self.cross == other.cross
    }
}

impl Eq for ExtensionPresentation {}

impl fmt::Debug for ExtensionPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ExtensionPresentation(`{}`, {} variables over `{}`)",
            self.name,
            self.variables.len(),
            self.base.name()
        )
    }
}

/// Verdict of the σ-filtered check with per-condition booleans.
#[derive(Clone, Debug)]
pub struct SigmaFilteredReport {
    pub sigma_filtered: Vec<bool>,
    pub delta_filtered: Vec<bool>,
    pub preserves_tdeg: bool,
    pub preserves_tdeg_strict: bool,
    pub verdict: bool,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

/// An element of the extension in its unique representation `Σ c_α x^α`:
/// a canonical map from standard monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct AElement {
    n: usize,
    terms: BTreeMap<Monomial, RElement>,
}

impl AElement {
    pub fn variable_count(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Option<&RElement> {
        self.terms.get(mono)
    }

    /// Adds `c x^α` in place, dropping the entry if it cancels.
    pub fn insert(&mut self, mono: Monomial, coeff: RElement) {
        debug_assert_eq!(mono.len(), self.n);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff).expect("same alphabet");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &AElement) -> Result<AElement, Error> {
        if self.n != other.n {
            return Err(Error::Structural(
                "elements belong to extensions with different variable counts".into(),
            ));
        }
        let mut out = self.clone();
        for (mono, coeff) in other.terms() {
            out.insert(mono.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &AElement) -> Result<AElement, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AElement {
        AElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> AElement {
        if factor.is_zero() {
            return AElement {
                n: self.n,
                terms: BTreeMap::new(),
            };
        }
        AElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.scale(factor)))
                .collect(),
        }
    }
}

impl fmt::Debug for AElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AElement({} terms)", self.terms.len())
    }
}

/// Display of an element: terms in descending graded-lex order of the
/// monomial, coefficients in ring display form, parenthesized when they have
/// more than one term.
pub struct AElementDisplay<'a> {
    ext: &'a ExtensionPresentation,
    element: &'a AElement,
}

impl fmt::Display for AElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return write!(f, "0");
        }
        let mono_string = |mono: &Monomial| -> String {
            let mut parts = Vec::new();
            for (i, &e) in mono.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.ext.variables()[i].clone()),
                    _ => parts.push(format!("{}^{}", self.ext.variables()[i], e)),
                }
            }
            parts.join("*")
        };
        for (i, (mono, coeff)) in self.element.terms.iter().rev().enumerate() {
            let coeff_str = coeff.to_string();
            let (sign, body) = if coeff.poly().term_count() > 1 && !mono.is_unit() {
                ("+", format!("({coeff_str})"))
            } else if let Some(rest) = coeff_str.strip_prefix('-') {
                ("-", rest.to_string())
            } else {
                ("+", coeff_str)
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_unit() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{}", mono_string(mono))?;
            } else {
                write!(f, "{}*{}", body, mono_string(mono))?;
            }
        }
        Ok(())
    }
}
