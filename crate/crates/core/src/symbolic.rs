//! Multivariate Laurent polynomials with exact coefficients, for checking
//! parametric matrix identities. Only variables flagged invertible may carry
//! negative exponents.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{Field, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub invertible: bool,
}

/// The set of variables a polynomial lives over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<Variable>,
}

/// Exponent vector, ordered graded-lex: total degree first, then
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<i32>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (da, db): (i32, i32) = (self.0.iter().sum(), other.0.iter().sum());
        da.cmp(&db).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn exponents(&self) -> &[i32] {
        &self.0
    }
}

impl PolyRing {
    /// Variables given as `(name, invertible)`.
    pub fn new(vars: &[(&str, bool)]) -> Result<Arc<Self>> {
        let mut seen = std::collections::BTreeSet::new();
        for (name, _) in vars {
            if !seen.insert(*name) {
                return Err(Error::Input(format!("duplicate variable `{name}`")));
            }
        }
        Ok(Arc::new(PolyRing {
            vars: vars
                .iter()
                .map(|(n, inv)| Variable {
                    name: n.to_string(),
                    invertible: *inv,
                })
                .collect(),
        }))
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<F> {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, F>,
}

pub type QPoly = LaurentPoly<Rational>;

impl<F: Field> LaurentPoly<F> {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        LaurentPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: F) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(Monomial(vec![0; ring.vars.len()]), c);
        p
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, F::one())
    }

    pub fn from_i64(ring: &Arc<PolyRing>, c: i64) -> Self {
        Self::constant(ring, F::from_i64(c))
    }

    /// The variable `name`, or an error if the ring lacks it.
    pub fn var(ring: &Arc<PolyRing>, name: &str) -> Result<Self> {
        Self::monomial(ring, F::one(), &[(name, 1)])
    }

    /// `c * prod name^e`.
    pub fn monomial(ring: &Arc<PolyRing>, c: F, powers: &[(&str, i32)]) -> Result<Self> {
        let mut exps = vec![0; ring.vars.len()];
        for (name, e) in powers {
            let i = ring
                .index(name)
                .ok_or_else(|| Error::Input(format!("unknown variable `{name}`")))?;
            if *e < 0 && !ring.vars[i].invertible {
                return Err(Error::Input(format!(
                    "negative exponent on non-invertible variable `{name}`"
                )));
            }
            exps[i] += e;
        }
        let mut p = Self::zero(ring);
        p.add_term(Monomial(exps), c);
        Ok(p)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e == 0))
    }

    /// Constant coefficient.
    pub fn constant_term(&self) -> F {
        self.terms
            .get(&Monomial(vec![0; self.ring.vars.len()]))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::Input(
                "polynomials over different variable sets".into(),
            ))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-F::one()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = Monomial(ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect());
                let mut c = ca.clone();
                c *= cb;
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(&self.ring);
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.terms {
            let mut y = x.clone();
            y *= c;
            out.terms.insert(m.clone(), y);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(&self.ring), |acc, _| &acc * self)
    }

    /// Inverse of a single term whose variables are all invertible.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if m.0
            .iter()
            .zip(&self.ring.vars)
            .any(|(&e, v)| e != 0 && !v.invertible)
        {
            return None;
        }
        let mut out = Self::zero(&self.ring);
        out.add_term(Monomial(m.0.iter().map(|e| -e).collect()), c.inverse()?);
        Some(out)
    }

    pub fn is_unit_monomial(&self) -> bool {
        self.unit_inverse().is_some()
    }

    /// Ring homomorphism sending each bound variable to a polynomial in
    /// `target`; unbound variables must also exist in `target`. Variables
    /// carrying negative exponents need a unit image.
    pub fn substitute(
        &self,
        target: &Arc<PolyRing>,
        bindings: &BTreeMap<String, LaurentPoly<F>>,
    ) -> Result<Self> {
        let mut images = Vec::with_capacity(self.ring.vars.len());
        for v in &self.ring.vars {
            let img = match bindings.get(&v.name) {
                Some(p) => {
                    if !(Arc::ptr_eq(&p.ring, target) || *p.ring == **target) {
                        return Err(Error::Input(format!(
                            "binding for `{}` is over another ring",
                            v.name
                        )));
                    }
                    p.clone()
                }
                None => {
                    let i = target
                        .index(&v.name)
                        .ok_or_else(|| Error::Input(format!("variable `{}` is unbound", v.name)))?;
                    if v.invertible && !target.vars[i].invertible {
                        return Err(Error::Input(format!(
                            "variable `{}` loses invertibility",
                            v.name
                        )));
                    }
                    Self::var(target, &v.name)?
                }
            };
            images.push(img);
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (e, img) in m.0.iter().zip(&images) {
                let factor = if *e >= 0 {
                    img.pow(*e as u32)
                } else {
                    img.unit_inverse()
                        .ok_or_else(|| {
                            Error::Input(format!(
                                "non-invertible image {img} under a negative exponent"
                            ))
                        })?
                        .pow((-e) as u32)
                };
                t = &t * &factor;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Substitute constants for some variables, staying in the same ring.
    pub fn substitute_values(&self, values: &[(&str, F)]) -> Result<Self> {
        let mut bindings = BTreeMap::new();
        for (name, v) in values {
            bindings.insert(name.to_string(), Self::constant(&self.ring, v.clone()));
        }
        self.substitute(&self.ring.clone(), &bindings)
    }

    /// Value at a point (one entry per ring variable) in any field that the
    /// coefficients map into.
    pub fn evaluate_in<G: Field>(&self, point: &[G]) -> Result<G>
    where
        F: Into<Rational>,
    {
        if point.len() != self.ring.vars.len() {
            return Err(Error::Dimension(format!(
                "point has {} coordinates",
                point.len()
            )));
        }
        let mut total = G::zero();
        for (m, c) in &self.terms {
            let c: Rational = c.clone().into();
            let mut t = G::from_rational(&c)
                .ok_or_else(|| Error::Input(format!("coefficient {c} has no image")))?;
            for (e, x) in m.0.iter().zip(point) {
                let base = if *e >= 0 {
                    x.clone()
                } else {
                    x.inverse().ok_or_else(|| {
                        Error::Input("evaluation at a zero of an inverted variable".into())
                    })?
                };
                t *= &base.power(e.unsigned_abs() as u64);
            }
            total += &t;
        }
        Ok(total)
    }

    /// Value at a point in the coefficient field.
    pub fn evaluate(&self, point: &[F]) -> Result<F> {
        if point.len() != self.ring.vars.len() {
            return Err(Error::Dimension(format!(
                "point has {} coordinates",
                point.len()
            )));
        }
        let mut total = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, x) in m.0.iter().zip(point) {
                let base = if *e >= 0 {
                    x.clone()
                } else {
                    x.inverse().ok_or_else(|| {
                        Error::Input("evaluation at a zero of an inverted variable".into())
                    })?
                };
                t *= &base.power(e.unsigned_abs() as u64);
            }
            total += &t;
        }
        Ok(total)
    }

    /// Names of the variables that occur.
    pub fn support_vars(&self) -> Vec<String> {
        (0..self.ring.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] != 0))
            .map(|i| self.ring.vars[i].name.clone())
            .collect()
    }
}

impl<F: Field> fmt::Display for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest graded-lex term first
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative_literal();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> =
                m.0.iter()
                    .zip(&self.ring.vars)
                    .filter(|(e, _)| **e != 0)
                    .map(|(e, v)| {
                        if *e == 1 {
                            v.name.clone()
                        } else {
                            format!("{}^{}", v.name, e)
                        }
                    })
                    .collect();
            match (factors.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", factors.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> Add for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn add(self, rhs: Self) -> LaurentPoly<F> {
        self.checked_add(rhs).expect("same ring")
    }
}

impl<F: Field> Sub for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn sub(self, rhs: Self) -> LaurentPoly<F> {
        self.checked_sub(rhs).expect("same ring")
    }
}

impl<F: Field> Mul for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn mul(self, rhs: Self) -> LaurentPoly<F> {
        self.checked_mul(rhs).expect("same ring")
    }
}

impl<F: Field> Neg for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn neg(self) -> LaurentPoly<F> {
        self.scale(&-F::one())
    }
}

pub type PolyMatrix<F> = Vec<Vec<LaurentPoly<F>>>;

pub fn poly_identity<F: Field>(ring: &Arc<PolyRing>, m: usize) -> PolyMatrix<F> {
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        LaurentPoly::one(ring)
                    } else {
                        LaurentPoly::zero(ring)
                    }
                })
                .collect()
        })
        .collect()
}

/// Build a matrix from rows of integers.
pub fn poly_matrix_from_i64<F: Field>(ring: &Arc<PolyRing>, rows: &[&[i64]]) -> PolyMatrix<F> {
    rows.iter()
        .map(|r| r.iter().map(|&c| LaurentPoly::from_i64(ring, c)).collect())
        .collect()
}

pub fn poly_mat_mul<F: Field>(a: &PolyMatrix<F>, b: &PolyMatrix<F>) -> Result<PolyMatrix<F>> {
    let k = b.len();
    if a.iter().any(|r| r.len() != k) {
        return Err(Error::Dimension("matrix product shape mismatch".into()));
    }
    let cols = b.first().map_or(0, Vec::len);
    let ring = a
        .first()
        .and_then(|r| r.first())
        .or_else(|| b.first().and_then(|r| r.first()))
        .map(|p| p.ring.clone())
        .ok_or_else(|| Error::Dimension("empty matrix".into()))?;
    let mut out = vec![vec![LaurentPoly::zero(&ring); cols]; a.len()];
    for (i, row) in a.iter().enumerate() {
        for (t, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..cols {
                out[i][j] = out[i][j].checked_add(&x.checked_mul(&b[t][j])?)?;
            }
        }
    }
    Ok(out)
}

/// Inverse of an upper-triangular matrix whose diagonal entries are unit
/// monomials, by back substitution.
pub fn upper_triangular_inverse<F: Field>(u: &PolyMatrix<F>) -> Result<PolyMatrix<F>> {
    let m = u.len();
    if u.iter().any(|r| r.len() != m) {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let ring = u
        .first()
        .and_then(|r| r.first())
        .map(|p| p.ring.clone())
        .ok_or_else(|| Error::Dimension("empty".into()))?;
    for i in 0..m {
        for j in 0..i {
            if !u[i][j].is_zero() {
                return Err(Error::Input(format!(
                    "entry ({}, {}) below the diagonal is nonzero",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let inv_diag = (0..m)
        .map(|i| {
            u[i][i].unit_inverse().ok_or_else(|| {
                Error::Input(format!("diagonal entry {} is not a unit monomial", u[i][i]))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut x = vec![vec![LaurentPoly::zero(&ring); m]; m];
    for j in 0..m {
        x[j][j] = inv_diag[j].clone();
        for i in (0..j).rev() {
            let mut s = LaurentPoly::zero(&ring);
            for k in i + 1..=j {
                s = &s + &(&u[i][k] * &x[k][j]);
            }
            x[i][j] = -&(&inv_diag[i] * &s);
        }
    }
    Ok(x)
}

/// Determinant by permutation expansion; intended for the small matrices of
/// parametric families.
pub fn poly_determinant<F: Field>(a: &PolyMatrix<F>) -> Result<LaurentPoly<F>> {
    let m = a.len();
    if a.iter().any(|r| r.len() != m) || m == 0 {
        return Err(Error::Dimension(
            "determinant of a non-square matrix".into(),
        ));
    }
    let ring = a[0][0].ring.clone();
    fn rec<F: Field>(
        a: &PolyMatrix<F>,
        row: usize,
        used: &mut Vec<bool>,
        sign: bool,
        acc: LaurentPoly<F>,
        out: &mut LaurentPoly<F>,
    ) {
        let m = a.len();
        if row == m {
            *out = if sign { &*out - &acc } else { &*out + &acc };
            return;
        }
        let mut inversions_before = 0;
        for col in 0..m {
            if used[col] {
                continue;
            }
            // parity of the permutation tracked by columns skipped over
            let flip = inversions_before % 2 == 1;
            inversions_before += 1;
            if a[row][col].is_zero() {
                continue;
            }
            used[col] = true;
            rec(a, row + 1, used, sign ^ flip, &acc * &a[row][col], out);
            used[col] = false;
        }
    }
    let mut out = LaurentPoly::zero(&ring);
    rec(
        a,
        0,
        &mut vec![false; m],
        false,
        LaurentPoly::one(&ring),
        &mut out,
    );
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityVerdict<F: Field> {
    pub holds: bool,
    /// Zero-based entry and `lhs - rhs` there.
    pub witness: Option<(usize, usize, LaurentPoly<F>)>,
}

/// Entry-wise canonical equality.
pub fn matrix_identity_check<F: Field>(
    lhs: &PolyMatrix<F>,
    rhs: &PolyMatrix<F>,
) -> Result<IdentityVerdict<F>> {
    if lhs.len() != rhs.len() || lhs.iter().zip(rhs).any(|(a, b)| a.len() != b.len()) {
        return Err(Error::Dimension(
            "matrix identity between different shapes".into(),
        ));
    }
    for (i, (ra, rb)) in lhs.iter().zip(rhs).enumerate() {
        for (j, (a, b)) in ra.iter().zip(rb).enumerate() {
            let d = a.checked_sub(b)?;
            if !d.is_zero() {
                return Ok(IdentityVerdict {
                    holds: false,
                    witness: Some((i, j, d)),
                });
            }
        }
    }
    Ok(IdentityVerdict {
        holds: true,
        witness: None,
    })
}

/// Random nonzero rational with small numerator and denominator.
fn sample(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let num: i64 = rng.gen_range(-20..=20);
        let den: i64 = rng.gen_range(1..=9);
        if !nonzero || num != 0 {
            return Rational::new(num.into(), den.into());
        }
    }
}

pub const RANDOM_POINTS: usize = 20;

/// Check `lhs = rhs` at random rational points, invertible variables sampled
/// nonzero. Returns the first failing point, if any.
pub fn random_point_check(
    lhs: &PolyMatrix<Rational>,
    rhs: &PolyMatrix<Rational>,
    seed: u64,
    points: usize,
) -> Result<Option<Vec<Rational>>> {
    if lhs.len() != rhs.len() || lhs.iter().zip(rhs).any(|(a, b)| a.len() != b.len()) {
        return Err(Error::Dimension(
            "matrix identity between different shapes".into(),
        ));
    }
    let Some(ring) = lhs.first().and_then(|r| r.first()).map(|p| p.ring.clone()) else {
        return Ok(None);
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..points {
        let point: Vec<Rational> = ring
            .vars
            .iter()
            .map(|v| sample(&mut rng, v.invertible))
            .collect();
        for (ra, rb) in lhs.iter().zip(rhs) {
            for (a, b) in ra.iter().zip(rb) {
                if a.evaluate(&point)? != b.evaluate(&point)? {
                    return Ok(Some(point));
                }
            }
        }
    }
    Ok(None)
}

/// Sample a random point for `ring`.
pub fn random_point(ring: &PolyRing, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    ring.vars
        .iter()
        .map(|v| sample(rng, v.invertible))
        .collect()
}

pub fn render_matrix<F: Field>(a: &PolyMatrix<F>) -> Vec<Vec<String>> {
    a.iter()
        .map(|r| r.iter().map(|p| p.to_string()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(&[
            ("a", true),
            ("b", false),
            ("c", false),
            ("s", false),
            ("t", false),
        ])
        .unwrap()
    }

    fn v(r: &Arc<PolyRing>, n: &str) -> QPoly {
        QPoly::var(r, n).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn basic_arithmetic() {
        let r = ring();
        let a = v(&r, "a");
        assert_eq!(&a * &a.unit_inverse().unwrap(), QPoly::one(&r));
        let s_over_a = &v(&r, "s") * &a.unit_inverse().unwrap();
        let val = s_over_a
            .substitute_values(&[("a", q(2, 1)), ("s", q(1, 1))])
            .unwrap();
        assert_eq!(val, QPoly::constant(&r, q(1, 2)));
        let b = v(&r, "b");
        let expr = (&v(&r, "c") + &(&b * &b).scale(&q(2, 1))).scale(&q(1, 3));
        assert_eq!(
            expr.scale(&q(3, 1)),
            &v(&r, "c") + &(&b * &b).scale(&q(2, 1))
        );
        assert!(v(&r, "b").unit_inverse().is_none());
        assert!(QPoly::monomial(&r, q(1, 1), &[("b", -1)]).is_err());
    }

    #[test]
    fn display_is_canonical() {
        let r = ring();
        let p = &(&v(&r, "a") * &v(&r, "a")) - &QPoly::from_i64(&r, 3);
        assert_eq!(p.to_string(), "a^2 - 3");
        assert_eq!(QPoly::zero(&r).to_string(), "0");
    }

    #[test]
    fn substitution_is_multiplicative() {
        let r = ring();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = &(&v(&r, "a") + &v(&r, "b")) * &v(&r, "c");
        let w = &v(&r, "a").unit_inverse().unwrap() - &v(&r, "t");
        for _ in 0..10 {
            let pt = random_point(&r, &mut rng);
            let vals: Vec<(&str, Rational)> = ["a", "b", "c", "s", "t"]
                .iter()
                .copied()
                .zip(pt.iter().cloned())
                .collect();
            let lhs = (&p * &w).substitute_values(&vals).unwrap();
            let rhs = &p.substitute_values(&vals).unwrap() * &w.substitute_values(&vals).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn triangular_inverse_and_determinant() {
        let r = ring();
        let (a, b, c) = (v(&r, "a"), v(&r, "b"), v(&r, "c"));
        let z = QPoly::zero(&r);
        let g = vec![
            vec![a.clone(), b.clone(), c.clone()],
            vec![z.clone(), a.pow(2), (&a * &b).scale(&q(2, 1))],
            vec![z.clone(), z.clone(), a.pow(3)],
        ];
        let inv = upper_triangular_inverse(&g).unwrap();
        let prod = poly_mat_mul(&g, &inv).unwrap();
        assert!(
            matrix_identity_check(&prod, &poly_identity(&r, 3))
                .unwrap()
                .holds
        );
        assert_eq!(poly_determinant(&g).unwrap(), a.pow(6));
        let m = vec![vec![a.clone(), b.clone()], vec![c.clone(), a.clone()]];
        assert_eq!(poly_determinant(&m).unwrap(), &a.pow(2) - &(&b * &c));
        let p3 = vec![
            vec![z.clone(), QPoly::one(&r), z.clone()],
            vec![z.clone(), z.clone(), QPoly::one(&r)],
            vec![QPoly::one(&r), z.clone(), z.clone()],
        ];
        assert_eq!(poly_determinant(&p3).unwrap(), QPoly::one(&r));
    }

    #[test]
    fn identity_witness() {
        let r = ring();
        let lhs = vec![vec![v(&r, "a")]];
        let rhs = vec![vec![v(&r, "b")]];
        let verdict = matrix_identity_check(&lhs, &rhs).unwrap();
        assert!(!verdict.holds);
        assert_eq!(verdict.witness.unwrap().0, 0);
        assert!(random_point_check(&lhs, &rhs, 0, RANDOM_POINTS)
            .unwrap()
            .is_some());
        assert!(random_point_check(&lhs, &lhs, 0, RANDOM_POINTS)
            .unwrap()
            .is_none());
    }
}
