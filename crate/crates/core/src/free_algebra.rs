//! The free graded algebra `k<x1, ..., xn>` with every generator in degree 1.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::scalar::Field;

/// A monomial: a sequence of zero-based generator indices. The empty word is
/// the unit. Words are ordered by length, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn letter(i: usize) -> Self {
        Word(vec![i as u8])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Position of this word in [`degree_basis`] for `n` generators.
    pub fn index(&self, n: usize) -> usize {
        self.0.iter().fold(0, |acc, &l| acc * n + l as usize)
    }

    /// Inverse of [`Word::index`].
    pub fn from_index(mut index: usize, n: usize, degree: usize) -> Word {
        let mut letters = vec![0u8; degree];
        for slot in letters.iter_mut().rev() {
            *slot = (index % n) as u8;
            index /= n;
        }
        Word(letters)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Word {
    /// Render with the given generator letter, e.g. `y1*y3`.
    pub fn render(&self, letter: char) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| format!("{letter}{}", l + 1))
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render('x'))
    }
}

/// All `n^d` words of length `d`, in lexicographic order. Every matrix in the
/// crate indexes degree-`d` coordinates by this order.
pub fn degree_basis(n: usize, d: usize) -> Vec<Word> {
    let count = n.pow(d as u32);
    (0..count).map(|i| Word::from_index(i, n, d)).collect()
}

/// Sparse linear combination of words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedElement<F> {
    n: usize,
    terms: BTreeMap<Word, F>,
}

impl<F: Field> GradedElement<F> {
    pub fn zero(n: usize) -> Self {
        GradedElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, Word::unit(), F::one())
    }

    /// The generator with zero-based index `i`.
    pub fn generator(n: usize, i: usize) -> Self {
        assert!(i < n, "generator index {i} out of range for {n} generators");
        Self::monomial(n, Word::letter(i), F::one())
    }

    pub fn monomial(n: usize, word: Word, coeff: F) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        GradedElement { n, terms }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Word, F)>) -> Self {
        let mut e = Self::zero(n);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn generator_count(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GeneratorCount {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Bilinear extension of word concatenation.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.n);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        GradedElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Word::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Common degree of all terms; `None` for the zero element.
    pub fn degree(&self) -> Result<Option<usize>> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        Ok(self.terms.keys().next().map(Word::degree))
    }

    /// Split into homogeneous components, keyed by degree.
    pub fn components(&self) -> BTreeMap<usize, Self> {
        let mut out: BTreeMap<usize, Self> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.degree())
                .or_insert_with(|| Self::zero(self.n))
                .add_term(w.clone(), c.clone());
        }
        out
    }

    /// Coordinates with respect to [`degree_basis`]`(n, d)`.
    pub fn to_vector(&self, d: usize) -> Result<SparseVec<F>> {
        if self.terms.keys().any(|w| w.degree() != d) {
            return Err(Error::NotHomogeneous);
        }
        Ok(SparseVec::from_pairs(
            self.terms
                .iter()
                .map(|(w, c)| (w.index(self.n), c.clone()))
                .collect(),
        ))
    }

    pub fn from_vector(v: &SparseVec<F>, n: usize, d: usize) -> Self {
        GradedElement {
            n,
            terms: v
                .entries()
                .iter()
                .map(|(i, c)| (Word::from_index(*i, n, d), c.clone()))
                .collect(),
        }
    }

    /// Parse the textual form used in reports, e.g. `x1*x3 + x3*x1`,
    /// `2*x1^2 - 1/3*x2*x3` or `1`. Letters `x` and `y` are interchangeable.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        let mut out = Self::zero(n);
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(i > 0 && current.ends_with('^')) {
                if !current.is_empty() {
                    chunks.push((negative, std::mem::take(&mut current)));
                } else if i > 0 {
                    return Err(Error::Parse(format!("dangling sign in `{s}`")));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(Error::Parse(format!("trailing sign in `{s}`")));
        }
        chunks.push((negative, current));
        for (neg, chunk) in chunks {
            let mut coeff = F::one();
            let mut word = Vec::new();
            for factor in chunk.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in `{s}`")));
                }
                if factor.starts_with(['x', 'y']) {
                    let (base, exp) = match factor.split_once('^') {
                        Some((b, e)) => (
                            b,
                            e.parse::<usize>()
                                .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                        ),
                        None => (factor, 1),
                    };
                    let idx: usize = base[1..]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad generator `{factor}`")))?;
                    if idx == 0 || idx > n {
                        return Err(Error::Parse(format!(
                            "generator `{base}` out of range 1..={n}"
                        )));
                    }
                    word.extend(std::iter::repeat_n((idx - 1) as u8, exp));
                } else {
                    coeff = coeff * F::parse(factor)?;
                }
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(Word(word), coeff);
        }
        Ok(out)
    }
}

impl<F: Field> GradedElement<F> {
    /// Render with the given generator letter.
    pub fn render(&self, letter: char) -> String {
        let mut s = String::new();
        self.write_with(&mut s, letter)
            .expect("writing to a string");
        s
    }

    fn write_with(&self, f: &mut impl fmt::Write, letter: char) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative_literal();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let unit_coeff = magnitude.is_one();
            match (w.degree(), unit_coeff) {
                (0, _) => write!(f, "{magnitude}")?,
                (_, true) => write!(f, "{}", w.render(letter))?,
                (_, false) => write!(f, "{magnitude}*{}", w.render(letter))?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for GradedElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, 'x')
    }
}

impl<F: Field> fmt::Debug for GradedElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> Add for &GradedElement<F> {
    type Output = GradedElement<F>;
    fn add(self, rhs: Self) -> GradedElement<F> {
        self.checked_add(rhs).expect("generator count mismatch")
    }
}

impl<F: Field> Sub for &GradedElement<F> {
    type Output = GradedElement<F>;
    fn sub(self, rhs: Self) -> GradedElement<F> {
        self.checked_sub(rhs).expect("generator count mismatch")
    }
}

impl<F: Field> Mul for &GradedElement<F> {
    type Output = GradedElement<F>;
    fn mul(self, rhs: Self) -> GradedElement<F> {
        self.checked_mul(rhs).expect("generator count mismatch")
    }
}

impl<F: Field> Neg for &GradedElement<F> {
    type Output = GradedElement<F>;
    fn neg(self) -> GradedElement<F> {
        self.scale(&-F::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type E = GradedElement<Rational>;

    fn el(s: &str) -> E {
        E::parse(s, 3).unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(&el("x3") * &el("x3"), el("x3*x3"));
        assert_eq!(&el("x1 + x3") * &el("x3"), el("x1*x3 + x3*x3"));
        let u = el("x1*x3 + x3*x1");
        assert_eq!(
            &u * &u,
            el("x1*x3*x1*x3 + x1*x3*x3*x1 + x3*x1*x1*x3 + x3*x1*x3*x1")
        );
    }

    #[test]
    fn mismatched_generator_counts() {
        let a = E::generator(2, 0);
        let b = E::generator(3, 0);
        assert!(matches!(
            a.checked_mul(&b),
            Err(Error::GeneratorCount { .. })
        ));
    }

    #[test]
    fn basis_order() {
        assert_eq!(degree_basis(3, 0), vec![Word::unit()]);
        assert_eq!(
            degree_basis(3, 1),
            vec![Word::letter(0), Word::letter(1), Word::letter(2)]
        );
        let b2 = degree_basis(3, 2);
        assert_eq!(b2.len(), 9);
        assert_eq!(b2[0], Word::new(vec![0, 0]));
        assert_eq!(b2[5], Word::new(vec![1, 2]));
        assert_eq!(b2[8], Word::new(vec![2, 2]));
        for (i, w) in b2.iter().enumerate() {
            assert_eq!(w.index(3), i);
        }
    }

    #[test]
    fn coordinates() {
        let v = el("x2*x2").to_vector(2).unwrap();
        assert_eq!(v.entries(), &[(4, Rational::from_i64(1))]);
        assert!(E::zero(3).to_vector(2).unwrap().is_zero());
        let v = el("x1*x3 + x3*x1").to_vector(2).unwrap();
        let idx: Vec<usize> = v.entries().iter().map(|(i, _)| *i).collect();
        assert_eq!(idx, vec![2, 6]);
        assert!(el("x1 + x1*x2").to_vector(1).is_err());
    }

    #[test]
    fn rendering_round_trips() {
        for s in [
            "x1*x3 + x3*x1",
            "-x1*x3",
            "1/2*x2 - 3*x3*x1",
            "1",
            "0",
            "-2/3",
        ] {
            let e = el(s);
            assert_eq!(e.to_string(), s);
            assert_eq!(el(&e.to_string()), e);
        }
        assert_eq!(el("y3^2"), el("x3*x3"));
        assert!(E::parse("x4", 3).is_err());
        assert!(E::parse("x1 +", 3).is_err());
    }
}
