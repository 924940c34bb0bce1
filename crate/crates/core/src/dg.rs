//! DG free algebras defined by crisscross matrix tuples.
//!
//! A tuple `(M^1, ..., M^n)` of `n x n` matrices defines a degree-one
//! derivation on the free algebra by `d(x_i) = sum_{j,k} M^i_{jk} x_j x_k`,
//! extended by the graded Leibniz rule.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_algebra::{GradedElement, Word};
use crate::scalar::{Field, FieldKind};

/// Ordered tuple of square matrices, one per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrisscrossTuple<F> {
    n: usize,
    matrices: Vec<Vec<Vec<F>>>,
}

/// Outcome of [`crisscross_check`]. On failure `witness` holds the first
/// zero-based `(i, j)` pair, in lexicographic order, whose matrix sum is
/// nonzero, together with that sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrisscrossVerdict<F> {
    pub holds: bool,
    pub witness: Option<(usize, usize, Vec<Vec<F>>)>,
}

impl<F: Field> CrisscrossTuple<F> {
    pub fn new(matrices: Vec<Vec<Vec<F>>>) -> Result<Self> {
        let n = matrices.len();
        for (i, m) in matrices.iter().enumerate() {
            if m.len() != n || m.iter().any(|row| row.len() != n) {
                return Err(Error::Dimension(format!("matrix {} is not {n}x{n}", i + 1)));
            }
        }
        Ok(CrisscrossTuple { n, matrices })
    }

    pub fn from_i64(matrices: &[Vec<Vec<i64>>]) -> Result<Self> {
        Self::new(
            matrices
                .iter()
                .map(|m| {
                    m.iter()
                        .map(|r| r.iter().map(|&v| F::from_i64(v)).collect())
                        .collect()
                })
                .collect(),
        )
    }

    pub fn zero(n: usize) -> Self {
        CrisscrossTuple {
            n,
            matrices: vec![vec![vec![F::zero(); n]; n]; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self, i: usize) -> &[Vec<F>] {
        &self.matrices[i]
    }

    /// The quadratic form `d(x_i)`, zero-based `i`.
    pub fn generator_image(&self, i: usize) -> GradedElement<F> {
        let m = &self.matrices[i];
        let mut out = GradedElement::zero(self.n);
        for (j, row) in m.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                out.add_term(Word::new(vec![j as u8, k as u8]), v.clone());
            }
        }
        out
    }

    /// The derivation induced by the tuple, whether or not it squares to zero.
    pub fn derivation(&self) -> Derivation<F> {
        Derivation {
            n: self.n,
            images: (0..self.n).map(|i| self.generator_image(i)).collect(),
        }
    }
}

/// `sum_k [ c^k_j r^i_k - c^i_k r^k_j ]` with `c^k_j` column `j` of `M^k` and
/// `r^i_k` row `k` of `M^i`, as an `n x n` matrix.
fn crisscross_sum<F: Field>(t: &CrisscrossTuple<F>, i: usize, j: usize) -> Vec<Vec<F>> {
    let n = t.n;
    let mut out = vec![vec![F::zero(); n]; n];
    for k in 0..n {
        let mk = &t.matrices[k];
        let mi = &t.matrices[i];
        for p in 0..n {
            for q in 0..n {
                let plus = mk[p][j].clone() * mi[k][q].clone();
                let minus = mi[p][k].clone() * mk[j][q].clone();
                out[p][q] += &(plus - minus);
            }
        }
    }
    out
}

pub fn crisscross_check<F: Field>(t: &CrisscrossTuple<F>) -> CrisscrossVerdict<F> {
    for i in 0..t.n {
        for j in 0..t.n {
            let s = crisscross_sum(t, i, j);
            if s.iter().flatten().any(|v| !v.is_zero()) {
                return CrisscrossVerdict {
                    holds: false,
                    witness: Some((i, j, s)),
                };
            }
        }
    }
    CrisscrossVerdict {
        holds: true,
        witness: None,
    }
}

/// A degree-one derivation of the free algebra, given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation<F: Field> {
    n: usize,
    images: Vec<GradedElement<F>>,
}

impl<F: Field> Derivation<F> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn on_generator(&self, i: usize) -> &GradedElement<F> {
        &self.images[i]
    }

    /// Image of a single word:
    /// `d(a_1...a_k) = sum_p (-1)^(p-1) a_1..a_{p-1} d(a_p) a_{p+1}..a_k`.
    pub fn on_word(&self, w: &Word, coeff: &F, out: &mut GradedElement<F>) {
        let letters = w.letters();
        for (pos, &l) in letters.iter().enumerate() {
            let sign = if pos % 2 == 0 {
                coeff.clone()
            } else {
                -coeff.clone()
            };
            for (mid, c) in self.images[l as usize].terms() {
                let mut v = Vec::with_capacity(letters.len() + 1);
                v.extend_from_slice(&letters[..pos]);
                v.extend_from_slice(mid.letters());
                v.extend_from_slice(&letters[pos + 1..]);
                out.add_term(Word::new(v), sign.clone() * c.clone());
            }
        }
    }

    pub fn apply(&self, e: &GradedElement<F>) -> Result<GradedElement<F>> {
        if e.generator_count() != self.n {
            return Err(Error::GeneratorCount {
                expected: self.n,
                found: e.generator_count(),
            });
        }
        let mut out = GradedElement::zero(self.n);
        for (w, c) in e.terms() {
            self.on_word(w, c, &mut out);
        }
        Ok(out)
    }
}

/// Result of [`d_squared_on_generators`]: on failure, the first zero-based
/// generator index with `d(d(x_i)) != 0` and that degree-3 element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareZeroVerdict<F: Field> {
    pub holds: bool,
    pub witness: Option<(usize, GradedElement<F>)>,
}

/// Since `d^2 = d o d` is itself a derivation, vanishing on generators is
/// equivalent to vanishing everywhere.
pub fn d_squared_on_generators<F: Field>(t: &CrisscrossTuple<F>) -> SquareZeroVerdict<F> {
    let d = t.derivation();
    for i in 0..t.n {
        let dd = d.apply(d.on_generator(i)).expect("same generator count");
        if !dd.is_zero() {
            return SquareZeroVerdict {
                holds: false,
                witness: Some((i, dd)),
            };
        }
    }
    SquareZeroVerdict {
        holds: true,
        witness: None,
    }
}

/// A validated DG free algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgFreeAlgebra<F: Field> {
    name: String,
    letter: char,
    tuple: CrisscrossTuple<F>,
    derivation: Derivation<F>,
}

impl<F: Field> DgFreeAlgebra<F> {
    /// Fails with the crisscross witness if the tuple does not define a differential.
    pub fn new(name: impl Into<String>, tuple: CrisscrossTuple<F>) -> Result<Self> {
        let verdict = crisscross_check(&tuple);
        if let Some((i, j, _)) = verdict.witness {
            return Err(Error::Input(format!(
                "tuple is not crisscross: violated at (i, j) = ({}, {})",
                i + 1,
                j + 1
            )));
        }
        let derivation = tuple.derivation();
        Ok(DgFreeAlgebra {
            name: name.into(),
            letter: 'x',
            tuple,
            derivation,
        })
    }

    /// Use `letter` instead of `x` when rendering elements.
    pub fn with_letter(mut self, letter: char) -> Self {
        self.letter = letter;
        self
    }

    pub fn letter(&self) -> char {
        self.letter
    }

    pub fn render(&self, e: &GradedElement<F>) -> String {
        e.render(self.letter)
    }

    /// `d(x1) = x3^2`, `d(x2) = x2^2`, `d(x3) = 0`.
    pub fn a1() -> Self {
        let t = CrisscrossTuple::from_i64(&[
            vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 1]],
            vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 0]],
            vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 0]],
        ])
        .expect("preset shape");
        Self::new("a1", t).expect("preset a1 is crisscross")
    }

    /// `d(y1) = y3^2`, `d(y2) = y1 y3 + y3 y1`, `d(y3) = 0`.
    pub fn a2() -> Self {
        let t = CrisscrossTuple::from_i64(&[
            vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 1]],
            vec![vec![0, 0, 1], vec![0, 0, 0], vec![1, 0, 0]],
            vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 0]],
        ])
        .expect("preset shape");
        Self::new("a2", t)
            .expect("preset a2 is crisscross")
            .with_letter('y')
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "a1" => Some(Self::a1()),
            "a2" => Some(Self::a2()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.tuple.n
    }

    pub fn tuple(&self) -> &CrisscrossTuple<F> {
        &self.tuple
    }

    pub fn derivation(&self) -> &Derivation<F> {
        &self.derivation
    }

    /// `d(x_i)` for a zero-based generator index.
    pub fn differential_on_generator(&self, i: usize) -> Result<GradedElement<F>> {
        if i >= self.n() {
            return Err(Error::Input(format!(
                "generator index {} out of range 1..={}",
                i + 1,
                self.n()
            )));
        }
        Ok(self.derivation.on_generator(i).clone())
    }

    pub fn differential(&self, e: &GradedElement<F>) -> Result<GradedElement<F>> {
        self.derivation.apply(e)
    }

    pub fn element(&self, s: &str) -> Result<GradedElement<F>> {
        GradedElement::parse(s, self.n())
    }
}

/// Scalar literal in definition files: an integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarLiteral {
    Int(i64),
    Text(String),
}

impl ScalarLiteral {
    pub fn to_field<F: Field>(&self) -> Result<F> {
        match self {
            ScalarLiteral::Int(v) => Ok(F::from_i64(*v)),
            ScalarLiteral::Text(s) => F::parse(s),
        }
    }
}

/// On-disk algebra definition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldKind,
    pub generators: usize,
    pub matrices: Vec<Vec<Vec<ScalarLiteral>>>,
}

impl AlgebraFile {
    pub fn from_json(s: &str) -> Result<Self> {
        let f: AlgebraFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if let FieldKind::Prime { p } = f.field {
            if p < 5 || !crate::scalar::is_prime(p) {
                return Err(Error::InvalidPrime(p));
            }
        }
        if f.matrices.len() != f.generators {
            return Err(Error::Dimension(format!(
                "{} generators but {} matrices",
                f.generators,
                f.matrices.len()
            )));
        }
        Ok(f)
    }

    pub fn tuple<F: Field>(&self) -> Result<CrisscrossTuple<F>> {
        if self.field != F::kind() {
            return Err(Error::Input(format!(
                "file is over {} but {} was requested",
                self.field,
                F::kind()
            )));
        }
        let matrices = self
            .matrices
            .iter()
            .map(|m| {
                m.iter()
                    .map(|r| {
                        r.iter()
                            .map(ScalarLiteral::to_field)
                            .collect::<Result<Vec<F>>>()
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<Vec<F>>>>>()?;
        CrisscrossTuple::new(matrices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    #[test]
    fn presets_are_crisscross() {
        for a in [DgFreeAlgebra::<Q>::a1(), DgFreeAlgebra::<Q>::a2()] {
            assert!(crisscross_check(a.tuple()).holds);
            assert!(d_squared_on_generators(a.tuple()).holds);
        }
        assert!(crisscross_check(&CrisscrossTuple::<Q>::zero(4)).holds);
    }

    #[test]
    fn generator_images() {
        let a1 = DgFreeAlgebra::<Q>::a1();
        assert_eq!(
            a1.differential_on_generator(0).unwrap(),
            a1.element("x3*x3").unwrap()
        );
        assert!(a1.differential_on_generator(2).unwrap().is_zero());
        assert!(a1.differential_on_generator(3).is_err());
        let a2 = DgFreeAlgebra::<Q>::a2();
        assert_eq!(
            a2.differential_on_generator(1).unwrap(),
            a2.element("y1*y3 + y3*y1").unwrap()
        );
    }

    #[test]
    fn leibniz_examples() {
        let a1 = DgFreeAlgebra::<Q>::a1();
        let d = a1.differential(&a1.element("x1*x1").unwrap()).unwrap();
        assert_eq!(d, a1.element("x3*x3*x1 - x1*x3*x3").unwrap());
        let a2 = DgFreeAlgebra::<Q>::a2();
        let d = a2
            .differential(&a2.element("y1*y2 + y2*y1").unwrap())
            .unwrap();
        assert_eq!(
            d,
            a2.element("y3*y1^2 - y1^2*y3 + y3^2*y2 - y2*y3^2").unwrap()
        );
        assert!(a2.differential(&GradedElement::one(3)).unwrap().is_zero());
    }

    #[test]
    fn non_square_zero_tuple() {
        let t = CrisscrossTuple::<Q>::from_i64(&[
            vec![vec![0, 0], vec![0, 1]],
            vec![vec![1, 0], vec![0, 0]],
        ])
        .unwrap();
        let v = d_squared_on_generators(&t);
        assert!(!v.holds);
        let (i, w) = v.witness.unwrap();
        assert_eq!(i, 0);
        assert_eq!(w, GradedElement::parse("x1*x1*x2 - x2*x1*x1", 2).unwrap());
        assert!(!crisscross_check(&t).holds);
        assert!(DgFreeAlgebra::new("bad", t).is_err());
    }

    #[test]
    fn definition_file() {
        let json = r#"{"field":{"kind":"rational"},"generators":2,
            "matrices":[[[0,0],[0,"1/2"]],[[0,0],[0,0]]]}"#;
        let f = AlgebraFile::from_json(json).unwrap();
        let t: CrisscrossTuple<Q> = f.tuple().unwrap();
        assert_eq!(t.matrix(0)[1][1], Q::new(1.into(), 2.into()));
        assert!(f.tuple::<crate::scalar::Fp<5>>().is_err());
        let bad = r#"{"field":{"kind":"prime","p":4},"generators":0,"matrices":[]}"#;
        assert!(matches!(
            AlgebraFile::from_json(bad),
            Err(Error::InvalidPrime(4))
        ));
    }
}
