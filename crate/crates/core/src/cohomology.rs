//! Degree-wise cohomology of a DG free algebra.
//!
//! For each degree `d` the coboundaries `B^d = im d^{d-1}` are put in column
//! echelon form. The rows that carry a pivot are "pivot words"; the remaining
//! words span a complement `C^d`, and every class has exactly one
//! representative inside `C^d` (its normal form). The cocycles lying in `C^d`
//! are the kernel of `d^d` restricted to those words, and that kernel is
//! isomorphic to `H^d`. Its reduced basis, led by the first word in the
//! global order with coefficient one, is the canonical basis of `H^d`.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dg::DgFreeAlgebra;
use crate::error::{Error, Result};
use crate::free_algebra::{degree_basis, GradedElement, Word};
use crate::linalg::{ColumnEchelon, Matrix, SparseVec};
use crate::scalar::Field;

pub const DEFAULT_MAX_DEGREE: usize = 6;
/// Largest degree accepted without an explicit override.
pub const HARD_CAP: usize = 9;
/// Largest degree accepted with an override (`DGFREE_MAX_DEGREE`).
pub const EXTENDED_CAP: usize = 10;

/// Matrix of `d^d : A^d -> A^{d+1}` in word coordinates.
pub fn boundary_matrix<F: Field>(a: &DgFreeAlgebra<F>, d: usize) -> Matrix<F> {
    let n = a.n();
    let columns = degree_basis(n, d)
        .into_par_iter()
        .map(|w| {
            let mut img = GradedElement::zero(n);
            a.derivation().on_word(&w, &F::one(), &mut img);
            img.to_vector(d + 1)
                .expect("differential raises degree by one")
        })
        .collect();
    Matrix::from_columns(n.pow(d as u32 + 1), columns).expect("boundary columns fit")
}

/// A cohomology class, stored through its unique representative supported
/// on non-pivot words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyClass<F: Field> {
    degree: usize,
    representative: GradedElement<F>,
}

impl<F: Field> CohomologyClass<F> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn representative(&self) -> &GradedElement<F> {
        &self.representative
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }
}

#[derive(Debug)]
struct DegreeData<F> {
    basis: Vec<SparseVec<F>>,
}

/// Outcome of [`Cohomology::is_coboundary`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coboundary<F: Field> {
    /// `d(preimage) = z`.
    Exact { preimage: GradedElement<F> },
    /// `z` is not a coboundary; `witness` is its nonzero normal form.
    NotExact { witness: GradedElement<F> },
}

/// Lazily computed cohomology of one algebra, up to a fixed degree bound.
pub struct Cohomology<F: Field> {
    algebra: DgFreeAlgebra<F>,
    max_degree: usize,
    /// `images[d]`: echelon of `B^d`, i.e. of the columns of `d^{d-1}`.
    images: Vec<OnceLock<Arc<ColumnEchelon<F>>>>,
    degrees: Vec<OnceLock<Arc<DegreeData<F>>>>,
}

impl<F: Field> Cohomology<F> {
    pub fn new(algebra: DgFreeAlgebra<F>, max_degree: usize) -> Result<Self> {
        Self::with_cap(algebra, max_degree, HARD_CAP)
    }

    pub fn with_cap(algebra: DgFreeAlgebra<F>, max_degree: usize, cap: usize) -> Result<Self> {
        let cap = cap.min(EXTENDED_CAP);
        if max_degree > cap {
            return Err(Error::DegreeCap {
                requested: max_degree,
                max: cap,
            });
        }
        Ok(Cohomology {
            algebra,
            max_degree,
            images: (0..max_degree + 2).map(|_| OnceLock::new()).collect(),
            degrees: (0..max_degree + 1).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn algebra(&self) -> &DgFreeAlgebra<F> {
        &self.algebra
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.max_degree {
            return Err(Error::DegreeCap {
                requested: d,
                max: self.max_degree,
            });
        }
        Ok(())
    }

    fn image(&self, d: usize) -> Arc<ColumnEchelon<F>> {
        self.images[d]
            .get_or_init(|| {
                let n = self.algebra.n();
                if d == 0 {
                    return Arc::new(ColumnEchelon::new(1, false));
                }
                let m = boundary_matrix(&self.algebra, d - 1);
                debug_assert_eq!(m.rows(), n.pow(d as u32));
                Arc::new(ColumnEchelon::of_matrix(&m, false))
            })
            .clone()
    }

    fn degree_data(&self, d: usize) -> Arc<DegreeData<F>> {
        self.degrees[d]
            .get_or_init(|| {
                let n = self.algebra.n();
                let image = self.image(d);
                let words = n.pow(d as u32);
                // Complement words, latest first, so that each kernel vector is
                // led by its own (earliest) word with coefficient one.
                let free: Vec<usize> = (0..words)
                    .rev()
                    .filter(|&w| !image.is_pivot_row(w))
                    .collect();
                let mut ech = ColumnEchelon::new(n.pow(d as u32 + 1), true);
                for &w in &free {
                    let mut img = GradedElement::zero(n);
                    self.algebra.derivation().on_word(
                        &Word::from_index(w, n, d),
                        &F::one(),
                        &mut img,
                    );
                    ech.insert(img.to_vector(d + 1).expect("homogeneous image"));
                }
                let mut basis: Vec<SparseVec<F>> = ech
                    .kernel()
                    .iter()
                    .map(|k| k.remap(|slot| Some(free[slot])))
                    .collect();
                basis.sort_by_key(|v| v.leading().map(|(i, _)| *i));
                Arc::new(DegreeData { basis })
            })
            .clone()
    }

    /// Compute every degree up to the bound, in parallel.
    pub fn prefetch(&self) {
        (0..=self.max_degree + 1).into_par_iter().for_each(|d| {
            self.image(d);
        });
        (0..=self.max_degree).into_par_iter().for_each(|d| {
            self.degree_data(d);
        });
    }

    /// `rank d^{d-1}`, the dimension of the coboundaries in degree `d`.
    pub fn coboundary_rank(&self, d: usize) -> Result<usize> {
        self.check_degree(d)?;
        Ok(self.image(d).rank())
    }

    /// `dim ker d^d`.
    pub fn nullity(&self, d: usize) -> Result<usize> {
        self.check_degree(d)?;
        Ok(self.algebra.n().pow(d as u32) - self.image(d + 1).rank())
    }

    /// `dim H^d`. Cross-checked against `nullity - coboundary_rank`.
    pub fn dim(&self, d: usize) -> Result<usize> {
        self.check_degree(d)?;
        let dim = self.degree_data(d).basis.len();
        let expected = self.nullity(d)? - self.coboundary_rank(d)?;
        if dim != expected {
            return Err(Error::Internal(format!(
                "H^{d}: complement kernel has dim {dim}, ranks give {expected}"
            )));
        }
        Ok(dim)
    }

    /// Canonical basis of `H^d`.
    pub fn basis(&self, d: usize) -> Result<Vec<CohomologyClass<F>>> {
        self.check_degree(d)?;
        let n = self.algebra.n();
        Ok(self
            .degree_data(d)
            .basis
            .iter()
            .map(|v| CohomologyClass {
                degree: d,
                representative: GradedElement::from_vector(v, n, d),
            })
            .collect())
    }

    /// Normal form of a homogeneous element modulo coboundaries.
    pub fn normal_form(&self, z: &GradedElement<F>) -> Result<(usize, GradedElement<F>)> {
        let Some(d) = z.degree()? else {
            return Ok((0, z.clone()));
        };
        self.check_degree(d)?;
        let v = z.to_vector(d)?;
        Ok((
            d,
            GradedElement::from_vector(&self.image(d).reduce(&v), self.algebra.n(), d),
        ))
    }

    /// The class of a cocycle. Zero elements land in degree 0 unless the
    /// degree is given by [`Cohomology::zero_class`].
    pub fn class_of(&self, z: &GradedElement<F>) -> Result<CohomologyClass<F>> {
        let dz = self.algebra.differential(z)?;
        if !dz.is_zero() {
            return Err(Error::NotCocycle(self.algebra.render(&dz)));
        }
        let (degree, representative) = self.normal_form(z)?;
        Ok(CohomologyClass {
            degree,
            representative,
        })
    }

    pub fn zero_class(&self, d: usize) -> CohomologyClass<F> {
        CohomologyClass {
            degree: d,
            representative: GradedElement::zero(self.algebra.n()),
        }
    }

    pub fn unit_class(&self) -> CohomologyClass<F> {
        CohomologyClass {
            degree: 0,
            representative: GradedElement::one(self.algebra.n()),
        }
    }

    /// Coordinates of a class in the canonical basis of its degree.
    pub fn coordinates(&self, c: &CohomologyClass<F>) -> Result<Vec<F>> {
        let n = self.algebra.n();
        let v = c.representative.to_vector(c.degree)?;
        Ok(self
            .degree_data(c.degree)
            .basis
            .iter()
            .map(|b| {
                let lead = b.leading().expect("basis vectors are nonzero").0;
                v.get(lead)
            })
            .inspect(|_| debug_assert!(n > 0))
            .collect())
    }

    /// Decide whether `z` is a coboundary. In strict mode a non-cocycle is an
    /// error; otherwise it is reported as not exact.
    pub fn is_coboundary(&self, z: &GradedElement<F>, strict: bool) -> Result<Coboundary<F>> {
        let n = self.algebra.n();
        let dz = self.algebra.differential(z)?;
        if strict && !dz.is_zero() {
            return Err(Error::NotCocycle(self.algebra.render(&dz)));
        }
        let Some(d) = z.degree()? else {
            return Ok(Coboundary::Exact {
                preimage: GradedElement::zero(n),
            });
        };
        self.check_degree(d)?;
        if d == 0 {
            return Ok(Coboundary::NotExact { witness: z.clone() });
        }
        let v = z.to_vector(d)?;
        let nf = self.image(d).reduce(&v);
        if !nf.is_zero() {
            return Ok(Coboundary::NotExact {
                witness: GradedElement::from_vector(&nf, n, d),
            });
        }
        let tracked = ColumnEchelon::of_matrix(&boundary_matrix(&self.algebra, d - 1), true);
        let pre = tracked
            .preimage(&v)
            .ok_or_else(|| Error::Internal("normal form zero but no preimage".into()))?;
        Ok(Coboundary::Exact {
            preimage: GradedElement::from_vector(&pre, n, d - 1),
        })
    }

    /// Product of classes, computed on representatives and renormalized.
    pub fn class_product(
        &self,
        u: &CohomologyClass<F>,
        v: &CohomologyClass<F>,
    ) -> Result<CohomologyClass<F>> {
        let degree = u.degree + v.degree;
        self.check_degree(degree)?;
        let prod = u.representative.checked_mul(&v.representative)?;
        if prod.is_zero() {
            return Ok(self.zero_class(degree));
        }
        let (_, representative) = self.normal_form(&prod)?;
        Ok(CohomologyClass {
            degree,
            representative,
        })
    }

    /// Per-degree summary up to the bound.
    pub fn report(&self) -> Result<CohomologyReport> {
        self.prefetch();
        let mut degrees = Vec::new();
        for d in 0..=self.max_degree {
            degrees.push(DegreeEntry {
                d,
                dim: self.dim(d)?,
                nullity: self.nullity(d)?,
                coboundary_rank: self.coboundary_rank(d)?,
                basis: self
                    .basis(d)?
                    .iter()
                    .map(|c| self.algebra.render(&c.representative))
                    .collect(),
            });
        }
        Ok(CohomologyReport {
            algebra: self.algebra.name().to_string(),
            field: F::kind().to_string(),
            verified_up_to: self.max_degree,
            degrees,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeEntry {
    pub d: usize,
    pub dim: usize,
    pub nullity: usize,
    pub coboundary_rank: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub algebra: String,
    pub field: String,
    pub verified_up_to: usize,
    pub degrees: Vec<DegreeEntry>,
}

/// A claimed presentation of the cohomology ring as a commutative-style
/// quotient: named generators given by cocycle representatives, relation
/// words (indices into `generators`) claimed to vanish, and pairs claimed to
/// commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation<F: Field> {
    pub generators: Vec<(String, GradedElement<F>)>,
    pub relations: Vec<Vec<usize>>,
    pub commutations: Vec<(usize, usize)>,
}

impl<F: Field> RingPresentation<F> {
    /// `k[u1, u2]/(u1^2)` with `u1 = [x3]` and `u2 = [x1 x3 + x3 x1]`.
    pub fn a1() -> Self {
        Self::two_generator("x3", "x1*x3 + x3*x1")
    }

    /// `k[u1, u2]/(u1^2)` with `u1 = [y3]` and `u2 = [y1^2 + y2 y3 + y3 y2]`.
    pub fn a2() -> Self {
        Self::two_generator("y3", "y1*y1 + y2*y3 + y3*y2")
    }

    fn two_generator(u1: &str, u2: &str) -> Self {
        RingPresentation {
            generators: vec![
                ("u1".into(), GradedElement::parse(u1, 3).expect("preset")),
                ("u2".into(), GradedElement::parse(u2, 3).expect("preset")),
            ],
            relations: vec![vec![0, 0]],
            commutations: vec![(0, 1)],
        }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "a1" => Some(Self::a1()),
            "a2" => Some(Self::a2()),
            _ => None,
        }
    }

    pub fn from_file(file: &PresentationFile, n: usize) -> Result<Self> {
        let generators = file
            .generators
            .iter()
            .map(|g| Ok((g.name.clone(), GradedElement::parse(&g.representative, n)?)))
            .collect::<Result<Vec<_>>>()?;
        let lookup = |name: &str| {
            generators
                .iter()
                .position(|(g, _)| g == name)
                .ok_or_else(|| Error::Input(format!("unknown generator `{name}`")))
        };
        let relations = file
            .relations
            .iter()
            .map(|r| r.iter().map(|s| lookup(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let commutations = file
            .commutations
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingPresentation {
            generators,
            relations,
            commutations,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationGeneratorEntry {
    pub name: String,
    pub representative: String,
}

/// On-disk form of a [`RingPresentation`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub generators: Vec<PresentationGeneratorEntry>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
    #[serde(default)]
    pub commutations: Vec<(String, String)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Generator,
    Relation,
    Commutation,
    Spanning,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationCheck {
    pub kind: CheckKind,
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub verified_up_to: usize,
    pub all_pass: bool,
    pub checks: Vec<PresentationCheck>,
}

/// Exponent vectors `e` with `sum e_i * weight_i = d`, lexicographically
/// largest first.
fn weighted_exponents(weights: &[usize], d: usize) -> Vec<Vec<usize>> {
    fn rec(weights: &[usize], left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match weights.split_first() {
            None => {
                if left == 0 {
                    out.push(prefix.clone());
                }
            }
            Some((&w, rest)) => {
                let max = left.checked_div(w).unwrap_or(0);
                for e in (0..=max).rev() {
                    prefix.push(e);
                    rec(rest, left - e * w, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(weights, d, &mut Vec::new(), &mut out);
    out
}

/// Verify a claimed presentation degree by degree up to `max_degree`.
pub fn ring_presentation_check<F: Field>(
    coh: &Cohomology<F>,
    p: &RingPresentation<F>,
    max_degree: usize,
) -> Result<PresentationReport> {
    coh.check_degree(max_degree)?;
    let n = coh.algebra.n();
    let mut checks = Vec::new();
    let mut weights = Vec::new();
    let mut classes = Vec::new();

    for (name, rep) in &p.generators {
        let shown = coh.algebra.render(rep);
        let mut pass = false;
        let mut witness = None;
        match rep.degree() {
            Ok(Some(deg)) if deg > 0 && deg <= max_degree => match coh.class_of(rep) {
                Ok(c) => {
                    pass = !c.is_zero();
                    if !pass {
                        witness = Some(format!("{shown} is a coboundary"));
                    }
                    weights.push(deg);
                    classes.push(c);
                }
                Err(e) => {
                    witness = Some(e.to_string());
                    weights.push(deg);
                    classes.push(coh.zero_class(deg));
                }
            },
            _ => {
                witness = Some(format!(
                    "{shown} is not homogeneous of positive degree <= {max_degree}"
                ));
                weights.push(0);
                classes.push(coh.zero_class(0));
            }
        }
        checks.push(PresentationCheck {
            kind: CheckKind::Generator,
            name: format!("{name} = [{shown}] is a nonzero class"),
            pass,
            witness,
        });
    }
    if checks.iter().any(|c| !c.pass) {
        return Ok(PresentationReport {
            verified_up_to: max_degree,
            all_pass: false,
            checks,
        });
    }

    let product = |word: &[usize]| -> Result<CohomologyClass<F>> {
        let mut acc = coh.unit_class();
        for &g in word {
            acc = coh.class_product(&acc, &classes[g])?;
        }
        Ok(acc)
    };

    for rel in &p.relations {
        let name = rel
            .iter()
            .map(|&g| p.generators[g].0.as_str())
            .collect::<Vec<_>>()
            .join("*");
        let degree: usize = rel.iter().map(|&g| weights[g]).sum();
        let (pass, witness) = if degree > max_degree {
            (
                false,
                Some(format!("relation degree {degree} exceeds {max_degree}")),
            )
        } else {
            let c = product(rel)?;
            (
                c.is_zero(),
                (!c.is_zero()).then(|| coh.algebra.render(&c.representative)),
            )
        };
        checks.push(PresentationCheck {
            kind: CheckKind::Relation,
            name: format!("{name} = 0"),
            pass,
            witness,
        });
    }

    for &(a, b) in &p.commutations {
        let (na, nb) = (&p.generators[a].0, &p.generators[b].0);
        let (ra, rb) = (&p.generators[a].1, &p.generators[b].1);
        let raw = ra.checked_mul(rb)?.checked_sub(&rb.checked_mul(ra)?)?;
        let (pass, witness) = match coh.is_coboundary(&raw, true)? {
            Coboundary::Exact { preimage } => {
                let check = coh.algebra.differential(&preimage)? == raw;
                (
                    check,
                    Some(format!(
                        "{} = d({})",
                        coh.algebra.render(&raw),
                        coh.algebra.render(&preimage)
                    )),
                )
            }
            Coboundary::NotExact { witness } => (false, Some(coh.algebra.render(&witness))),
        };
        checks.push(PresentationCheck {
            kind: CheckKind::Commutation,
            name: format!("{na}*{nb} = {nb}*{na}"),
            pass,
            witness,
        });
    }

    for d in 0..=max_degree {
        let dim = coh.dim(d)?;
        let mut span = ColumnEchelon::new(n.pow(d as u32), false);
        let monomials = weighted_exponents(&weights, d);
        for exps in &monomials {
            let word: Vec<usize> = exps
                .iter()
                .enumerate()
                .flat_map(|(g, &e)| std::iter::repeat_n(g, e))
                .collect();
            let c = product(&word)?;
            span.insert(c.representative.to_vector(d)?);
        }
        let pass = span.rank() == dim;
        checks.push(PresentationCheck {
            kind: CheckKind::Spanning,
            name: format!("monomials of degree {d} span H^{d} (dim {dim})"),
            pass,
            witness: (!pass).then(|| {
                format!(
                    "{} monomials span a space of dim {}",
                    monomials.len(),
                    span.rank()
                )
            }),
        });
    }

    let all_pass = checks.iter().all(|c| c.pass);
    Ok(PresentationReport {
        verified_up_to: max_degree,
        all_pass,
        checks,
    })
}

/// Convenience: per-degree dimensions.
pub fn cohomology_dims<F: Field>(coh: &Cohomology<F>) -> Result<BTreeMap<usize, usize>> {
    coh.prefetch();
    (0..=coh.max_degree).map(|d| Ok((d, coh.dim(d)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    fn a1() -> Cohomology<Q> {
        Cohomology::new(DgFreeAlgebra::a1(), 4).unwrap()
    }

    #[test]
    fn boundary_matrix_shapes() {
        let a = DgFreeAlgebra::<Q>::a1();
        let m0 = boundary_matrix(&a, 0);
        assert_eq!((m0.rows(), m0.cols()), (3, 1));
        assert!(m0.is_zero());
        let m1 = boundary_matrix(&a, 1);
        assert_eq!((m1.rows(), m1.cols()), (9, 3));
        let nonzero: Vec<usize> = (0..3).filter(|&c| !m1.column(c).is_zero()).collect();
        assert_eq!(nonzero, vec![0, 1]);
        // column of x1 is x3*x3 (index 8), column of x2 is x2*x2 (index 4)
        assert_eq!(m1.column(0).entries(), &[(8, Q::from_i64(1))]);
        assert_eq!(m1.column(1).entries(), &[(4, Q::from_i64(1))]);
    }

    #[test]
    fn low_degrees_of_a1() {
        let c = a1();
        assert_eq!(c.dim(0).unwrap(), 1);
        assert_eq!(
            c.basis(0).unwrap()[0].representative(),
            &GradedElement::one(3)
        );
        assert_eq!(c.dim(1).unwrap(), 1);
        assert_eq!(c.dim(2).unwrap(), 1);
        assert_eq!(c.nullity(2).unwrap(), 3);
        assert_eq!(c.coboundary_rank(2).unwrap(), 2);
    }

    #[test]
    fn coboundary_decisions() {
        let c = a1();
        let a = c.algebra().clone();
        match c.is_coboundary(&a.element("x3*x3").unwrap(), true).unwrap() {
            Coboundary::Exact { preimage } => assert_eq!(preimage, a.element("x1").unwrap()),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            c.is_coboundary(&a.element("x1*x3 + x3*x1").unwrap(), true)
                .unwrap(),
            Coboundary::NotExact { .. }
        ));
        assert!(matches!(
            c.is_coboundary(&GradedElement::zero(3), true).unwrap(),
            Coboundary::Exact { .. }
        ));
        assert!(matches!(
            c.is_coboundary(&a.element("x1").unwrap(), true),
            Err(Error::NotCocycle(_))
        ));
    }

    #[test]
    fn products_and_overflow() {
        let c = a1();
        let a = c.algebra().clone();
        let u1 = c.class_of(&a.element("x3").unwrap()).unwrap();
        assert!(c.class_product(&u1, &u1).unwrap().is_zero());
        assert_eq!(c.class_product(&c.unit_class(), &u1).unwrap(), u1);
        let u2 = c.class_of(&a.element("x1*x3 + x3*x1").unwrap()).unwrap();
        let u22 = c.class_product(&u2, &u2).unwrap();
        assert!(matches!(
            c.class_product(&u22, &u1),
            Err(Error::DegreeCap { .. })
        ));
    }

    #[test]
    fn weighted_monomials() {
        assert_eq!(
            weighted_exponents(&[1, 2], 4),
            vec![vec![4, 0], vec![2, 1], vec![0, 2]]
        );
        assert_eq!(weighted_exponents(&[1, 2], 0), vec![vec![0, 0]]);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            Cohomology::<Q>::new(DgFreeAlgebra::a1(), 12),
            Err(Error::DegreeCap {
                requested: 12,
                max: HARD_CAP
            })
        ));
    }
}
