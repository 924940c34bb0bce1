//! Semi-free DG modules whose semibasis sits in degree 0.
//!
//! The module is `A ⊗ k{b_1..b_m}` with `d(b_i) = sum_j D_ij b_j`, where the
//! connection matrix `D` has degree-one entries and is strictly lower
//! triangular.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dg::DgFreeAlgebra;
use crate::error::{Error, Result};
use crate::free_algebra::{GradedElement, Word};
use crate::linalg::{ColumnEchelon, SparseVec};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemifreeModule<F: Field> {
    name: String,
    algebra: DgFreeAlgebra<F>,
    labels: Vec<String>,
    connection: Vec<Vec<GradedElement<F>>>,
}

/// Coordinates with respect to the semibasis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement<F: Field> {
    coords: Vec<GradedElement<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaurerCartanVerdict<F: Field> {
    pub holds: bool,
    /// Zero-based `(i, j)` and the residual `d(D_ij) - sum_k D_ik D_kj`.
    pub witness: Option<(usize, usize, GradedElement<F>)>,
}

impl<F: Field> SemifreeModule<F> {
    /// Checked constructor: shape, degrees, triangularity and Maurer–Cartan.
    pub fn new(
        name: impl Into<String>,
        algebra: DgFreeAlgebra<F>,
        labels: Vec<String>,
        connection: Vec<Vec<GradedElement<F>>>,
    ) -> Result<Self> {
        let m = Self::new_unverified(name, algebra, labels, connection)?;
        for (i, row) in m.connection.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !matches!(e.degree()?, None | Some(1)) {
                    return Err(Error::Input(format!(
                        "connection entry ({}, {}) is not of degree 1",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        if let Some((i, j, r)) = maurer_cartan_check(&m).witness {
            return Err(Error::Input(format!(
                "Maurer-Cartan identity fails at ({}, {}): residual {}",
                i + 1,
                j + 1,
                m.algebra.render(&r)
            )));
        }
        Ok(m)
    }

    /// Checks shape and strict lower triangularity only, so that broken
    /// connections can still be diagnosed.
    pub fn new_unverified(
        name: impl Into<String>,
        algebra: DgFreeAlgebra<F>,
        labels: Vec<String>,
        connection: Vec<Vec<GradedElement<F>>>,
    ) -> Result<Self> {
        let m = labels.len();
        if m == 0 {
            return Err(Error::Input(
                "a module needs at least one basis label".into(),
            ));
        }
        if connection.len() != m || connection.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension(format!("connection must be {m}x{m}")));
        }
        for (i, row) in connection.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.generator_count() != algebra.n() {
                    return Err(Error::GeneratorCount {
                        expected: algebra.n(),
                        found: e.generator_count(),
                    });
                }
                if j >= i && !e.is_zero() {
                    return Err(Error::Input(format!(
                        "connection is not strictly lower triangular at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(SemifreeModule {
            name: name.into(),
            algebra,
            labels,
            connection,
        })
    }

    fn from_strings(
        name: &str,
        algebra: DgFreeAlgebra<F>,
        labels: &[&str],
        rows: &[&[&str]],
    ) -> Self {
        let n = algebra.n();
        let connection = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| GradedElement::parse(s, n).expect("preset entry"))
                    .collect()
            })
            .collect();
        Self::new(
            name,
            algebra,
            labels.iter().map(|s| s.to_string()).collect(),
            connection,
        )
        .expect("preset module")
    }

    /// Resolution of the trivial module over `a1`.
    pub fn f1() -> Self {
        Self::from_strings(
            "f1",
            DgFreeAlgebra::a1(),
            &["1", "e_x3", "e_z"],
            &[&["0", "0", "0"], &["x3", "0", "0"], &["x1", "x3", "0"]],
        )
    }

    /// Resolution of the trivial module over `a2`.
    pub fn f2() -> Self {
        Self::from_strings(
            "f2",
            DgFreeAlgebra::a2(),
            &["1", "e_y3", "e_z", "e_r"],
            &[
                &["0", "0", "0", "0"],
                &["y3", "0", "0", "0"],
                &["y1", "y3", "0", "0"],
                &["y2", "y1", "y3", "0"],
            ],
        )
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "f1" => Some(Self::f1()),
            "f2" => Some(Self::f2()),
            _ => None,
        }
    }

    /// The algebra itself as a rank-one module.
    pub fn free_rank_one(algebra: DgFreeAlgebra<F>) -> Self {
        let n = algebra.n();
        Self::new(
            "free",
            algebra,
            vec!["1".into()],
            vec![vec![GradedElement::zero(n)]],
        )
        .expect("rank one")
    }

    /// Build from a definition file whose algebra has already been resolved.
    /// Maurer–Cartan is not enforced here; use [`maurer_cartan_check`].
    pub fn from_file(file: &ModuleFile, algebra: DgFreeAlgebra<F>, name: &str) -> Result<Self> {
        if file.labels.len() != file.rank {
            return Err(Error::Dimension(format!(
                "rank {} but {} labels",
                file.rank,
                file.labels.len()
            )));
        }
        let n = algebra.n();
        let connection = file
            .connection
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| GradedElement::parse(s, n))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new_unverified(name, algebra, file.labels.clone(), connection)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &DgFreeAlgebra<F> {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn connection(&self) -> &[Vec<GradedElement<F>>] {
        &self.connection
    }

    pub fn entry(&self, i: usize, j: usize) -> &GradedElement<F> {
        &self.connection[i][j]
    }

    pub fn zero(&self) -> ModuleElement<F> {
        ModuleElement {
            coords: vec![GradedElement::zero(self.algebra.n()); self.rank()],
        }
    }

    /// The semibasis element `b_i`.
    pub fn basis_element(&self, i: usize) -> ModuleElement<F> {
        let mut e = self.zero();
        e.coords[i] = GradedElement::one(self.algebra.n());
        e
    }

    pub fn element(&self, coords: Vec<GradedElement<F>>) -> Result<ModuleElement<F>> {
        if coords.len() != self.rank() {
            return Err(Error::Dimension(format!(
                "expected {} coordinates, found {}",
                self.rank(),
                coords.len()
            )));
        }
        if let Some(c) = coords
            .iter()
            .find(|c| c.generator_count() != self.algebra.n())
        {
            return Err(Error::GeneratorCount {
                expected: self.algebra.n(),
                found: c.generator_count(),
            });
        }
        Ok(ModuleElement { coords })
    }

    /// Apply `d` to `w * b_i` with coefficient `c`, accumulating into `out`.
    fn differential_on_term(&self, w: &Word, c: &F, i: usize, out: &mut [GradedElement<F>]) {
        self.algebra.derivation().on_word(w, c, &mut out[i]);
        let sign = if w.degree() % 2 == 0 {
            c.clone()
        } else {
            -c.clone()
        };
        for (j, dij) in self.connection[i].iter().enumerate() {
            for (u, a) in dij.terms() {
                let mut coeff = sign.clone();
                coeff *= a;
                out[j].add_term(w.concat(u), coeff);
            }
        }
    }

    /// `d(sum a_i b_i) = sum d(a_i) b_i + (-1)^{|a_i|} a_i sum_j D_ij b_j`.
    pub fn differential(&self, e: &ModuleElement<F>) -> Result<ModuleElement<F>> {
        if e.coords.len() != self.rank() {
            return Err(Error::Dimension(format!(
                "expected {} coordinates",
                self.rank()
            )));
        }
        let n = self.algebra.n();
        if let Some(c) = e.coords.iter().find(|c| c.generator_count() != n) {
            return Err(Error::GeneratorCount {
                expected: n,
                found: c.generator_count(),
            });
        }
        let mut out = vec![GradedElement::zero(n); self.rank()];
        for (i, a) in e.coords.iter().enumerate() {
            for (w, c) in a.terms() {
                self.differential_on_term(w, c, i, &mut out);
            }
        }
        Ok(ModuleElement { coords: out })
    }

    /// Dimension of the degree-`d` component, `m * n^d`.
    pub fn component_dim(&self, d: usize) -> usize {
        self.rank() * self.algebra.n().pow(d as u32)
    }

    /// Coordinates of `d^d` on the product basis, label-major:
    /// `w * b_i` has index `i * n^d + index(w)`.
    fn boundary_columns(&self, d: usize) -> Vec<SparseVec<F>> {
        let n = self.algebra.n();
        let words = n.pow(d as u32);
        let next = n.pow(d as u32 + 1);
        (0..self.rank() * words)
            .into_par_iter()
            .map(|col| {
                let (i, w) = (col / words, Word::from_index(col % words, n, d));
                let mut out = vec![GradedElement::zero(n); self.rank()];
                self.differential_on_term(&w, &F::one(), i, &mut out);
                let mut pairs = Vec::new();
                for (j, e) in out.iter().enumerate() {
                    for (u, c) in e.terms() {
                        pairs.push((j * next + u.index(n), c.clone()));
                    }
                }
                SparseVec::from_pairs(pairs)
            })
            .collect()
    }

    /// `rank d^d`.
    pub fn boundary_rank(&self, d: usize) -> usize {
        let mut ech = ColumnEchelon::new(self.component_dim(d + 1), false);
        for c in self.boundary_columns(d) {
            ech.insert(c);
        }
        ech.rank()
    }

    /// `dim H^d(F)` for `0 <= d <= max_degree`.
    pub fn homology_dims(&self, max_degree: usize) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=max_degree)
            .into_par_iter()
            .map(|d| self.boundary_rank(d))
            .collect();
        (0..=max_degree)
            .map(|d| {
                let prev = if d == 0 { 0 } else { ranks[d - 1] };
                self.component_dim(d) - ranks[d] - prev
            })
            .collect()
    }
}

impl<F: Field> ModuleElement<F> {
    pub fn coords(&self) -> &[GradedElement<F>] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Common degree of the nonzero coordinates, if homogeneous.
    pub fn degree(&self) -> Result<Option<usize>> {
        let mut deg = None;
        for c in &self.coords {
            if let Some(d) = c.degree()? {
                if deg.is_some_and(|e| e != d) {
                    return Err(Error::NotHomogeneous);
                }
                deg = Some(d);
            }
        }
        Ok(deg)
    }
}

/// `d(D_ij) = sum_k D_ik D_kj` for every entry, which is exactly `d_F^2 = 0`.
pub fn maurer_cartan_check<F: Field>(f: &SemifreeModule<F>) -> MaurerCartanVerdict<F> {
    let m = f.rank();
    let n = f.algebra.n();
    for i in 0..m {
        for j in 0..m {
            let mut residual = f
                .algebra
                .differential(&f.connection[i][j])
                .expect("same generator count");
            for k in 0..m {
                let prod = f.connection[i][k]
                    .checked_mul(&f.connection[k][j])
                    .expect("same generator count");
                residual = residual.checked_sub(&prod).expect("same generator count");
            }
            if !residual.is_zero() {
                debug_assert_eq!(residual.generator_count(), n);
                return MaurerCartanVerdict {
                    holds: false,
                    witness: Some((i, j, residual)),
                };
            }
        }
    }
    MaurerCartanVerdict {
        holds: true,
        witness: None,
    }
}

/// No connection entry has a constant term.
pub fn minimality_check<F: Field>(f: &SemifreeModule<F>) -> bool {
    let unit = Word::unit();
    f.connection
        .iter()
        .flatten()
        .all(|e| e.coefficient(&unit).is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulCertificate {
    pub module: String,
    pub rank: usize,
    pub labels: Vec<String>,
    pub verified_up_to: usize,
    pub homology_dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum KoszulVerdict {
    Issued(KoszulCertificate),
    Refused {
        failed_check: String,
        detail: String,
    },
}

impl KoszulVerdict {
    pub fn is_issued(&self) -> bool {
        matches!(self, KoszulVerdict::Issued(_))
    }
}

/// Certificate that `f` resolves the trivial module with a degree-0
/// semibasis, valid through degree `max_degree`.
pub fn koszul_certificate<F: Field>(f: &SemifreeModule<F>, max_degree: usize) -> KoszulVerdict {
    let mc = maurer_cartan_check(f);
    if let Some((i, j, r)) = mc.witness {
        return KoszulVerdict::Refused {
            failed_check: "maurer_cartan".into(),
            detail: format!("({}, {}): {}", i + 1, j + 1, f.algebra.render(&r)),
        };
    }
    if !minimality_check(f) {
        return KoszulVerdict::Refused {
            failed_check: "minimality".into(),
            detail: "a connection entry has a constant term".into(),
        };
    }
    let dims = f.homology_dims(max_degree);
    let expected: Vec<usize> = (0..=max_degree).map(|d| usize::from(d == 0)).collect();
    if dims != expected {
        return KoszulVerdict::Refused {
            failed_check: "homology".into(),
            detail: format!("H(F) dims {dims:?}"),
        };
    }
    KoszulVerdict::Issued(KoszulCertificate {
        module: f.name.clone(),
        rank: f.rank(),
        labels: f.labels.clone(),
        verified_up_to: max_degree,
        homology_dims: dims,
    })
}

/// On-disk module definition. `algebra` is a preset name or a path, resolved
/// by the caller.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub algebra: String,
    pub rank: usize,
    pub labels: Vec<String>,
    pub connection: Vec<Vec<String>>,
}

impl ModuleFile {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}
