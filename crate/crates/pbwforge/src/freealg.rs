//! The free associative algebra K⟨t_1,…,t_m⟩ with exact rational coefficients.
//!
//! Elements are finite linear combinations of words in a fixed ordered
//! alphabet of degree-1 generators. Words multiply by concatenation. The
//! module supplies the degree/leading-part bookkeeping and the single-element
//! homogenization used throughout the crate: lower-degree components of a
//! polynomial are padded with right factors of a fresh central generator so
//! that the result is homogeneous.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::scalar::Scalar;
use crate::Error;

/// Index of a generator inside its [`Alphabet`].
pub type GenId = usize;

/// An ordered list of generator names. The position of a name is its
/// precedence in the degree-lexicographic word order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    /// Builds an alphabet from distinct, non-empty names.
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Result<Arc<Self>, Error> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::Structural("empty generator name".into()));
            }
            if names[..i].contains(name) {
                return Err(Error::Structural(format!("duplicate generator `{name}`")));
            }
        }
        Ok(Arc::new(Alphabet { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, id: GenId) -> &str {
        &self.names[id]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<GenId> {
        self.names.iter().position(|n| n == name)
    }

    /// A copy of this alphabet with one more generator appended at the end
    /// (lowest precedence). Fails if the name is already present.
    pub fn extended(&self, name: &str) -> Result<Arc<Self>, Error> {
        if self.index_of(name).is_some() {
            return Err(Error::Structural(format!(
                "generator `{name}` already present in the alphabet"
            )));
        }
        let mut names = self.names.clone();
        names.push(name.to_string());
        Alphabet::new(names)
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet{:?}", self.names)
    }
}

/// A word in the generators: a possibly empty sequence of letters. The empty
/// word has degree 0 and is the multiplicative identity.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<GenId>,
}

impl Word {
    pub fn empty() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn letter(id: GenId) -> Self {
        Word { letters: vec![id] }
    }

    pub fn from_letters(letters: Vec<GenId>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[GenId] {
        &self.letters
    }

    /// Degree of a word is its length.
    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Appends `count` copies of one letter.
    pub fn append_power(&self, id: GenId, count: usize) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(std::iter::repeat_n(id, count));
        Word { letters }
    }

    /// Positions at which `pattern` occurs as a contiguous subword.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        if pattern.letters.is_empty() || pattern.letters.len() > self.letters.len() {
            return None;
        }
        self.letters
            .windows(pattern.letters.len())
            .position(|w| w == pattern.letters.as_slice())
    }

    pub fn contains(&self, pattern: &Word) -> bool {
        self.find(pattern).is_some()
    }

    pub fn ends_with(&self, pattern: &Word) -> bool {
        self.letters.ends_with(&pattern.letters)
    }

    /// Replaces the subword of length `len` starting at `pos` by `infix`.
    pub fn splice(&self, pos: usize, len: usize, infix: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len() - len + infix.letters.len());
        letters.extend_from_slice(&self.letters[..pos]);
        letters.extend_from_slice(&infix.letters);
        letters.extend_from_slice(&self.letters[pos + len..]);
        Word { letters }
    }

    fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
        }
    }
}

/// Degree-lexicographic order: shorter words first, then left-to-right letter
/// comparison by alphabet position.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.letters)
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        // Runs of one letter print as powers: t*t*t -> t^3.
        let mut first = true;
        let mut run: Option<(GenId, usize)> = None;
        let emit = |f: &mut fmt::Formatter<'_>, id: GenId, count: usize, first: &mut bool| {
            if !*first {
                write!(f, "*")?;
            }
            *first = false;
            if count == 1 {
                write!(f, "{}", self.alphabet.name(id))
            } else {
                write!(f, "{}^{}", self.alphabet.name(id), count)
            }
        };
        for &id in self.word.letters() {
            match run {
                Some((cur, count)) if cur == id => run = Some((cur, count + 1)),
                Some((cur, count)) => {
                    emit(f, cur, count, &mut first)?;
                    run = Some((id, 1));
                }
                None => run = Some((id, 1)),
            }
        }
        if let Some((cur, count)) = run {
            emit(f, cur, count, &mut first)?;
        }
        Ok(())
    }
}

/// An element of the free algebra: a canonical map from words to nonzero
/// rational coefficients. The zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq)]
pub struct FreePoly {
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<Word, Scalar>,
}

impl FreePoly {
    pub fn zero(alphabet: Arc<Alphabet>) -> Self {
        FreePoly {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: Arc<Alphabet>) -> Self {
        FreePoly::scalar(alphabet, Scalar::one())
    }

    pub fn scalar(alphabet: Arc<Alphabet>, value: Scalar) -> Self {
        let mut poly = FreePoly::zero(alphabet);
        poly.add_term(Word::empty(), value);
        poly
    }

    pub fn generator(alphabet: Arc<Alphabet>, id: GenId) -> Self {
        assert!(id < alphabet.len(), "generator id out of range");
        let mut poly = FreePoly::zero(alphabet);
        poly.add_term(Word::letter(id), Scalar::one());
        poly
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(
        alphabet: Arc<Alphabet>,
        terms: I,
    ) -> Self {
        let mut poly = FreePoly::zero(alphabet);
        for (word, coeff) in terms {
            poly.add_term(word, coeff);
        }
        poly
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &Word) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Adds `coeff * word` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_alphabet(&self, other: &FreePoly) -> Result<(), Error> {
        if Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    pub fn add(&self, other: &FreePoly) -> Result<FreePoly, Error> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        for (word, coeff) in other.terms() {
            out.add_term(word.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FreePoly) -> Result<FreePoly, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FreePoly {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect();
        FreePoly {
            alphabet: self.alphabet.clone(),
            terms,
        }
    }

    pub fn scale(&self, factor: &Scalar) -> FreePoly {
        if factor.is_zero() {
            return FreePoly::zero(self.alphabet.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), c * factor))
            .collect();
        FreePoly {
            alphabet: self.alphabet.clone(),
            terms,
        }
    }

    /// Bilinear extension of word concatenation.
    pub fn mul(&self, other: &FreePoly) -> Result<FreePoly, Error> {
        self.check_alphabet(other)?;
        let mut out = FreePoly::zero(self.alphabet.clone());
        for (lw, lc) in self.terms() {
            for (rw, rc) in other.terms() {
                out.add_term(lw.concat(rw), lc * rc);
            }
        }
        Ok(out)
    }

    /// Degree of the polynomial, `None` for the zero polynomial (the "minus
    /// infinity" sentinel: every degree lemma here is stated for nonzero
    /// elements only).
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::degree).max()
    }

    /// The degree-`d` homogeneous component.
    pub fn component(&self, d: usize) -> FreePoly {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| w.degree() == d)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        FreePoly {
            alphabet: self.alphabet.clone(),
            terms,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Word::degree);
        match degrees.next() {
            None => true,
            Some(first) => degrees.all(|d| d == first),
        }
    }

    /// The leading homogeneous part: all terms of maximal word degree.
    /// Rejects the zero polynomial.
    pub fn leading_part(&self) -> Result<FreePoly, Error> {
        let top = self.degree().ok_or(Error::ZeroDegree)?;
        Ok(self.component(top))
    }

    /// Homogenizes with a fresh central generator appended to the alphabet:
    /// a term of degree k in a polynomial of degree p picks up a right factor
    /// `z^(p-k)`. Substituting the new generator back to 1 recovers the input
    /// exactly.
    pub fn homogenized(&self, new_generator: &str) -> Result<FreePoly, Error> {
        let top = self.degree().ok_or(Error::ZeroDegree)?;
        let alphabet = self.alphabet.extended(new_generator)?;
        let z = alphabet.len() - 1;
        let mut out = FreePoly::zero(alphabet);
        for (word, coeff) in self.terms() {
            out.add_term(word.append_power(z, top - word.degree()), coeff.clone());
        }
        Ok(out)
    }

    /// Substitutes 1 for a generator by deleting its letters from every word.
    pub fn substitute_unit(&self, id: GenId) -> FreePoly {
        let mut out = FreePoly::zero(self.alphabet.clone());
        for (word, coeff) in self.terms() {
            let letters = word
                .letters()
                .iter()
                .copied()
                .filter(|&l| l != id)
                .collect();
            out.add_term(Word::from_letters(letters), coeff.clone());
        }
        out
    }

    /// Substitutes 0 for a generator by deleting every term that mentions it.
    pub fn substitute_zero(&self, id: GenId) -> FreePoly {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| !w.letters().contains(&id))
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        FreePoly {
            alphabet: self.alphabet.clone(),
            terms,
        }
    }

    /// Transfers the polynomial onto another alphabet through a letter map.
    pub fn map_letters(
        &self,
        alphabet: Arc<Alphabet>,
        mut map: impl FnMut(GenId) -> GenId,
    ) -> FreePoly {
        let mut out = FreePoly::zero(alphabet);
        for (word, coeff) in self.terms() {
            let letters = word.letters().iter().map(|&l| map(l)).collect();
            out.add_term(Word::from_letters(letters), coeff.clone());
        }
        out
    }

    /// Whether any word of the polynomial mentions the generator.
    pub fn mentions(&self, id: GenId) -> bool {
        self.terms.keys().any(|w| w.letters().contains(&id))
    }
}

impl fmt::Display for FreePoly {
    /// Terms print in descending (degree, lexicographic) order, coefficients
    /// as `p/q`, with unit coefficients elided on nonempty words.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (word, coeff)) in self.terms.iter().rev().enumerate() {
            let (sign, magnitude) = if coeff.is_negative() {
                ("-", coeff.abs())
            } else {
                ("+", coeff.clone())
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if word.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", word.display(&self.alphabet))?;
            } else {
                write!(f, "{}*{}", magnitude, word.display(&self.alphabet))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alphabet(names: &[&str]) -> Arc<Alphabet> {
        Alphabet::new(names.iter().copied()).unwrap()
    }

    fn gen(a: &Arc<Alphabet>, name: &str) -> FreePoly {
        FreePoly::generator(a.clone(), a.index_of(name).unwrap())
    }

    #[test]
    fn word_order_is_deglex() {
        let xy = Word::from_letters(vec![0, 1]);
        let yx = Word::from_letters(vec![1, 0]);
        let x3 = Word::from_letters(vec![0, 0, 0]);
        assert!(xy < yx);
        assert!(yx < x3);
        assert!(Word::empty() < xy);
    }

    #[test]
    fn additive_inverse_and_cancellation() {
        let a = alphabet(&["x", "y"]);
        let x = gen(&a, "x");
        let y = gen(&a, "y");
        let xy = x.mul(&y).unwrap();
        let yx = y.mul(&x).unwrap();

        assert!(xy.add(&xy.neg()).unwrap().is_zero());
        assert_eq!(yx.sub(&xy).unwrap().add(&xy).unwrap(), yx);

        // like-term merge: (t1t2 + t1) + t1 = t1t2 + 2 t1
        let t = alphabet(&["t1", "t2"]);
        let t1 = gen(&t, "t1");
        let t2 = gen(&t, "t2");
        let sum = t1.mul(&t2).unwrap().add(&t1).unwrap().add(&t1).unwrap();
        assert_eq!(sum.to_string(), "t1*t2 + 2*t1");
    }

    #[test]
    fn multiplication_is_concatenation() {
        let a = alphabet(&["x", "y"]);
        let x = gen(&a, "x");
        let y = gen(&a, "y");
        assert_eq!(x.mul(&y).unwrap().to_string(), "x*y");
        let sum = x.add(&y).unwrap();
        assert_eq!(sum.mul(&x).unwrap().to_string(), "y*x + x^2");
        let one = FreePoly::one(a.clone());
        assert_eq!(one.mul(&sum).unwrap(), sum);
    }

    #[test]
    fn alphabet_mismatch_is_rejected() {
        let a = alphabet(&["x"]);
        let b = alphabet(&["y"]);
        let x = FreePoly::generator(a, 0);
        let y = FreePoly::generator(b, 0);
        assert!(matches!(x.add(&y), Err(Error::AlphabetMismatch)));
        assert!(matches!(x.mul(&y), Err(Error::AlphabetMismatch)));
    }

    #[test]
    fn leading_part_examples() {
        let a = alphabet(&["x", "y"]);
        let x = gen(&a, "x");
        let y = gen(&a, "y");
        // yx - xy - x^3 has unique top term -x^3
        let f = y
            .mul(&x)
            .unwrap()
            .sub(&x.mul(&y).unwrap())
            .unwrap()
            .sub(&x.mul(&x).unwrap().mul(&x).unwrap())
            .unwrap();
        assert_eq!(f.leading_part().unwrap().to_string(), "-x^3");

        // t2t1 - t1t2 - t1^2 is already homogeneous
        let t = alphabet(&["t1", "t2"]);
        let t1 = gen(&t, "t1");
        let t2 = gen(&t, "t2");
        let jordan = t2
            .mul(&t1)
            .unwrap()
            .sub(&t1.mul(&t2).unwrap())
            .unwrap()
            .sub(&t1.mul(&t1).unwrap())
            .unwrap();
        assert_eq!(jordan.leading_part().unwrap(), jordan);

        // xt - tx - 1 keeps only its degree-2 part
        let w = alphabet(&["t", "x"]);
        let tt = gen(&w, "t");
        let xx = gen(&w, "x");
        let weyl = xx
            .mul(&tt)
            .unwrap()
            .sub(&tt.mul(&xx).unwrap())
            .unwrap()
            .sub(&FreePoly::one(w.clone()))
            .unwrap();
        assert_eq!(weyl.leading_part().unwrap().to_string(), "x*t - t*x");

        assert!(matches!(
            FreePoly::zero(a).leading_part(),
            Err(Error::ZeroDegree)
        ));
    }

    #[test]
    fn homogenize_weyl_relation() {
        let w = alphabet(&["t", "x"]);
        let t = gen(&w, "t");
        let x = gen(&w, "x");
        let weyl = x
            .mul(&t)
            .unwrap()
            .sub(&t.mul(&x).unwrap())
            .unwrap()
            .sub(&FreePoly::one(w.clone()))
            .unwrap();
        let h = weyl.homogenized("z").unwrap();
        // canonical order is descending deglex; z is the last letter, so z^2
        // is the largest degree-2 word
        assert_eq!(h.to_string(), "-z^2 + x*t - t*x");
        assert!(h.is_homogeneous());
        // z -> 1 recovers the input on the extended alphabet
        let z = h.alphabet().index_of("z").unwrap();
        let back = h.substitute_unit(z);
        let expected = weyl.map_letters(h.alphabet().clone(), |id| id);
        assert_eq!(back, expected);
    }

    #[test]
    fn homogenize_with_named_variable() {
        // yz - a zy - x - b homogenizes with w: yz - a zy - x w - b w^2
        let a = alphabet(&["x", "y", "z"]);
        let x = gen(&a, "x");
        let y = gen(&a, "y");
        let z = gen(&a, "z");
        let two = FreePoly::scalar(a.clone(), Scalar::integer(2));
        let f = y
            .mul(&z)
            .unwrap()
            .sub(&two.mul(&z.mul(&y).unwrap()).unwrap())
            .unwrap()
            .sub(&x)
            .unwrap()
            .sub(&FreePoly::one(a.clone()))
            .unwrap();
        let h = f.homogenized("w").unwrap();
        assert_eq!(h.to_string(), "-w^2 - 2*z*y + y*z - x*w");
        let w_id = h.alphabet().index_of("w").unwrap();
        assert_eq!(h.substitute_unit(w_id).to_string(), "-2*z*y + y*z - x - 1");
        // the homogenizer must be fresh
        assert!(f.homogenized("z").is_err());
    }

    #[test]
    fn homogenize_mixed_top_degree() {
        // yx - xy - x^3 -> (yx - xy) z - x^3
        let a = alphabet(&["x", "y"]);
        let x = gen(&a, "x");
        let y = gen(&a, "y");
        let f = y
            .mul(&x)
            .unwrap()
            .sub(&x.mul(&y).unwrap())
            .unwrap()
            .sub(&x.mul(&x).unwrap().mul(&x).unwrap())
            .unwrap();
        let h = f.homogenized("z").unwrap();
        assert_eq!(h.to_string(), "y*x*z - x*y*z - x^3");
    }

    #[test]
    fn display_is_deglex_descending() {
        let a = alphabet(&["t"]);
        let t = gen(&a, "t");
        let f = t
            .mul(&t)
            .unwrap()
            .add(&t.scale(&Scalar::new(-1, 2).unwrap()))
            .unwrap()
            .add(&FreePoly::scalar(a.clone(), Scalar::integer(3)))
            .unwrap();
        assert_eq!(f.to_string(), "t^2 - 1/2*t + 3");
    }
}
