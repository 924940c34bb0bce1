//! Ext-algebra of a semi-free resolution with degree-0 semibasis, computed as
//! the commutant `{A : A D = D A}` of the connection matrix, plus tests for
//! truncated-polynomial structure and Frobenius forms.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_algebra::{GradedElement, Word};
use crate::linalg::{determinant, ColumnEchelon, SparseVec};
use crate::scalar::Field;
use crate::semifree::SemifreeModule;

pub type ScalarMatrix<F> = Vec<Vec<F>>;

fn mat_mul<F: Field>(a: &ScalarMatrix<F>, b: &ScalarMatrix<F>) -> ScalarMatrix<F> {
    let (r, k, c) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = vec![vec![F::zero(); c]; r];
    for i in 0..r {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..c {
                let mut p = a[i][t].clone();
                p *= &b[t][j];
                out[i][j] += &p;
            }
        }
    }
    out
}

fn identity<F: Field>(m: usize) -> ScalarMatrix<F> {
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { F::one() } else { F::zero() })
                .collect()
        })
        .collect()
}

fn flatten<F: Field>(a: &ScalarMatrix<F>) -> SparseVec<F> {
    SparseVec::from_dense(&a.iter().flatten().cloned().collect::<Vec<_>>())
}

fn unknown_name(m: usize, k: usize) -> String {
    let (p, q) = (k / m + 1, k % m + 1);
    if m < 10 {
        format!("a{p}{q}")
    } else {
        format!("a{p}_{q}")
    }
}

/// Render `sum c_k a_k` over named unknowns.
fn render_linear<F: Field>(m: usize, terms: &[(usize, F)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (n, (k, c)) in terms.iter().enumerate() {
        let neg = c.is_negative_literal();
        let mag = if neg { -c.clone() } else { c.clone() };
        match (n, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if !mag.is_one() {
            s.push_str(&format!("{mag}*"));
        }
        s.push_str(&unknown_name(m, *k));
    }
    s
}

/// Basis of the commutant of a connection matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutantBasis<F: Field> {
    pub size: usize,
    /// Reduced-echelon solution basis; matrix `k` has a one at the `k`-th free
    /// unknown (row-major `a11, a12, ...`) and zero at the other free unknowns.
    pub matrices: Vec<ScalarMatrix<F>>,
    pub free_unknowns: Vec<usize>,
    /// Solved form of the linear system, one line per pivot unknown.
    pub constraints: Vec<String>,
    equations: Vec<SparseVec<F>>,
}

impl<F: Field> CommutantBasis<F> {
    pub fn dim(&self) -> usize {
        self.matrices.len()
    }

    /// Whether a matrix satisfies every defining equation.
    pub fn contains(&self, a: &ScalarMatrix<F>) -> bool {
        let flat: Vec<F> = a.iter().flatten().cloned().collect();
        self.equations.iter().all(|e| e.dot_dense(&flat).is_zero())
    }

    /// Coordinates of a matrix in the basis, if it lies in the span.
    pub fn coordinates(&self, a: &ScalarMatrix<F>) -> Option<Vec<F>> {
        if !self.contains(a) {
            return None;
        }
        let coords: Vec<F> = self
            .free_unknowns
            .iter()
            .map(|&k| a[k / self.size][k % self.size].clone())
            .collect();
        Some(coords)
    }

    pub fn combination(&self, coords: &[F]) -> ScalarMatrix<F> {
        let m = self.size;
        let mut out = vec![vec![F::zero(); m]; m];
        for (c, b) in coords.iter().zip(&self.matrices) {
            for i in 0..m {
                for j in 0..m {
                    let mut t = c.clone();
                    t *= &b[i][j];
                    out[i][j] += &t;
                }
            }
        }
        out
    }
}

/// Expand `A D - D A = 0` word by word into scalar equations and solve.
pub fn degree_zero_endomorphism_basis<F: Field>(f: &SemifreeModule<F>) -> CommutantBasis<F> {
    let m = f.rank();
    let d = f.connection();
    // (i, j, word) -> linear form in the unknowns a_{pq} (index p*m + q)
    let mut rows: BTreeMap<(usize, usize, Word), BTreeMap<usize, F>> = BTreeMap::new();
    let mut add = |i: usize, j: usize, w: &Word, unknown: usize, c: F| {
        let e = rows
            .entry((i, j, w.clone()))
            .or_default()
            .entry(unknown)
            .or_insert_with(F::zero);
        *e += &c;
    };
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                // (A D)_ij contains a_ik D_kj
                for (w, c) in d[k][j].terms() {
                    add(i, j, w, i * m + k, c.clone());
                }
                // (D A)_ij contains D_ik a_kj
                for (w, c) in d[i][k].terms() {
                    add(i, j, w, k * m + j, -c.clone());
                }
            }
        }
    }
    let equations: Vec<SparseVec<F>> = rows
        .into_values()
        .map(|r| SparseVec::from_pairs(r.into_iter().filter(|(_, c)| !c.is_zero()).collect()))
        .filter(|v| !v.is_zero())
        .collect();

    // Columns of the system are the unknowns.
    let mut columns = vec![Vec::new(); m * m];
    for (row, eq) in equations.iter().enumerate() {
        for (k, c) in eq.entries() {
            columns[*k].push((row, c.clone()));
        }
    }
    let mut ech = ColumnEchelon::new(equations.len(), true);
    for col in columns {
        ech.insert(SparseVec::from_pairs(col));
    }
    let kernel: Vec<Vec<F>> = ech.kernel().iter().map(|k| k.to_dense(m * m)).collect();
    // each kernel vector is supported on its free unknown and earlier pivots
    let free_unknowns: Vec<usize> = ech
        .kernel()
        .iter()
        .map(|k| k.max_index().expect("nonzero"))
        .collect();
    let matrices = kernel
        .iter()
        .map(|k| k.chunks(m).map(<[F]>::to_vec).collect())
        .collect();

    let constraints = ech
        .pivot_columns()
        .iter()
        .map(|&p| {
            let rhs: Vec<(usize, F)> = kernel
                .iter()
                .zip(&free_unknowns)
                .filter(|(k, _)| !k[p].is_zero())
                .map(|(k, &fu)| (fu, k[p].clone()))
                .collect();
            format!("{} = {}", unknown_name(m, p), render_linear(m, &rhs))
        })
        .collect();

    CommutantBasis {
        size: m,
        matrices,
        free_unknowns,
        constraints,
        equations,
    }
}

/// Parse equality chains such as `a12=a13=a23=0` or `a21 = a32` into linear
/// forms over the unknowns of an `m x m` matrix.
pub fn parse_constraint_chains<F: Field>(chains: &[&str], m: usize) -> Result<Vec<SparseVec<F>>> {
    let parse_side = |s: &str| -> Result<Option<usize>> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix(['a', 'c']) {
            let (p, q) = match rest.split_once('_') {
                Some((p, q)) => (p.parse::<usize>(), q.parse::<usize>()),
                None if rest.len() == 2 => (rest[..1].parse::<usize>(), rest[1..].parse::<usize>()),
                None => return Err(Error::Parse(format!("bad unknown `{s}`"))),
            };
            match (p, q) {
                (Ok(p), Ok(q)) if (1..=m).contains(&p) && (1..=m).contains(&q) => {
                    Ok(Some((p - 1) * m + q - 1))
                }
                _ => Err(Error::Parse(format!("bad unknown `{s}`"))),
            }
        } else if s == "0" {
            Ok(None)
        } else {
            Err(Error::Parse(format!("unsupported constraint side `{s}`")))
        }
    };
    let mut out = Vec::new();
    for chain in chains {
        let sides = chain
            .split('=')
            .map(parse_side)
            .collect::<Result<Vec<_>>>()?;
        for pair in sides.windows(2) {
            let mut terms = Vec::new();
            if let Some(k) = pair[0] {
                terms.push((k, F::one()));
            }
            if let Some(k) = pair[1] {
                terms.push((k, -F::one()));
            }
            let mut v = SparseVec::from_pairs(Vec::new());
            for (k, c) in terms {
                v.axpy(&c, &SparseVec::unit(k));
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// Whether the linear system `forms` cuts out exactly the commutant.
pub fn constraints_match<F: Field>(basis: &CommutantBasis<F>, forms: &[SparseVec<F>]) -> bool {
    let m = basis.size;
    let satisfied = basis.matrices.iter().all(|a| {
        let flat: Vec<F> = a.iter().flatten().cloned().collect();
        forms.iter().all(|f| f.dot_dense(&flat).is_zero())
    });
    let mut ech = ColumnEchelon::new(m * m, false);
    for f in forms {
        ech.insert(f.clone());
    }
    satisfied && m * m - ech.rank() == basis.dim()
}

/// Finite-dimensional unital associative algebra given by structure
/// constants: `e_i e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstantAlgebra<F: Field> {
    labels: Vec<String>,
    constants: Vec<Vec<Vec<F>>>,
    unit: usize,
}

impl<F: Field> StructureConstantAlgebra<F> {
    /// Validates shape, the unit laws and associativity on all basis triples.
    pub fn new(labels: Vec<String>, constants: Vec<Vec<Vec<F>>>, unit: usize) -> Result<Self> {
        let m = labels.len();
        if m == 0 || unit >= m {
            return Err(Error::Input("algebra needs a unit among its basis".into()));
        }
        if constants.len() != m
            || constants
                .iter()
                .any(|r| r.len() != m || r.iter().any(|v| v.len() != m))
        {
            return Err(Error::Dimension(format!(
                "structure constants must be {m}x{m}x{m}"
            )));
        }
        let a = StructureConstantAlgebra {
            labels,
            constants,
            unit,
        };
        for i in 0..m {
            let e = a.basis_vector(i);
            if a.mul(&a.basis_vector(unit), &e) != e || a.mul(&e, &a.basis_vector(unit)) != e {
                return Err(Error::Input(format!("unit law fails for {}", a.labels[i])));
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let (x, y, z) = (a.basis_vector(i), a.basis_vector(j), a.basis_vector(k));
                    if a.mul(&a.mul(&x, &y), &z) != a.mul(&x, &a.mul(&y, &z)) {
                        return Err(Error::Input(format!(
                            "associativity fails on ({}, {}, {})",
                            a.labels[i], a.labels[j], a.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(a)
    }

    /// `k[X]/(X^m)` in the basis `1, X, ..., X^{m-1}`, labelled `e1..em`.
    pub fn truncated_polynomial(m: usize) -> Self {
        let constants = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        (0..m)
                            .map(|k| if i + j == k { F::one() } else { F::zero() })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self::new((1..=m).map(|i| format!("e{i}")).collect(), constants, 0)
            .expect("truncated polynomial algebra")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn constants(&self) -> &[Vec<Vec<F>>] {
        &self.constants
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        (0..self.dim())
            .map(|k| if k == i { F::one() } else { F::zero() })
            .collect()
    }

    pub fn one(&self) -> Vec<F> {
        self.basis_vector(self.unit)
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        let m = self.dim();
        let mut out = vec![F::zero(); m];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let mut s = xi.clone();
                s *= yj;
                for (k, c) in self.constants[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        let mut t = s.clone();
                        t *= c;
                        out[k] += &t;
                    }
                }
            }
        }
        out
    }

    pub fn power(&self, x: &[F], k: usize) -> Vec<F> {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    pub fn is_commutative(&self) -> bool {
        let m = self.dim();
        (0..m).all(|i| (0..m).all(|j| self.constants[i][j] == self.constants[j][i]))
    }

    /// Matrix of left multiplication by `x` (column `j` is `x e_j`).
    pub fn left_multiplication(&self, x: &[F]) -> ScalarMatrix<F> {
        let m = self.dim();
        let cols: Vec<Vec<F>> = (0..m).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        (0..m)
            .map(|r| (0..m).map(|c| cols[c][r].clone()).collect())
            .collect()
    }

    /// Kernel of the trace form `Tr(L_x L_y)`. This is the Jacobson radical
    /// in characteristic zero and in characteristic larger than the dimension.
    pub fn trace_radical(&self) -> Vec<Vec<F>> {
        let m = self.dim();
        let ls: Vec<ScalarMatrix<F>> = (0..m)
            .map(|i| self.left_multiplication(&self.basis_vector(i)))
            .collect();
        let mut ech = ColumnEchelon::new(m, true);
        for j in 0..m {
            let col: Vec<F> = (0..m)
                .map(|i| {
                    let p = mat_mul(&ls[i], &ls[j]);
                    (0..m).fold(F::zero(), |mut acc, t| {
                        acc += &p[t][t];
                        acc
                    })
                })
                .collect();
            ech.insert(SparseVec::from_dense(&col));
        }
        ech.kernel().iter().map(|k| k.to_dense(m)).collect()
    }

    pub fn is_local(&self) -> bool {
        self.trace_radical().len() + 1 == self.dim()
    }

    /// Re-express the algebra in a new basis given by coordinate vectors
    /// (the first of which should be the unit).
    pub fn change_basis(&self, basis: &[Vec<F>], labels: Vec<String>) -> Result<Self> {
        let m = self.dim();
        if basis.len() != m {
            return Err(Error::Dimension(
                "change of basis needs a full basis".into(),
            ));
        }
        let mut ech = ColumnEchelon::new(m, true);
        for b in basis {
            ech.insert(SparseVec::from_dense(b));
        }
        if ech.rank() != m {
            return Err(Error::Input("new basis is linearly dependent".into()));
        }
        let coords = |v: &[F]| {
            ech.preimage(&SparseVec::from_dense(v))
                .expect("full rank")
                .to_dense(m)
        };
        let constants = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| coords(&self.mul(&basis[i], &basis[j])))
                    .collect()
            })
            .collect();
        let unit = (0..m)
            .find(|&i| basis[i] == self.one())
            .ok_or_else(|| Error::Input("new basis does not contain the unit".into()))?;
        Self::new(labels, constants, unit)
    }

    /// Nonzero products of basis elements, e.g. `e2*e2 = e3`, skipping the unit.
    pub fn relations(&self) -> Vec<String> {
        let m = self.dim();
        let mut out = Vec::new();
        for i in (0..m).filter(|&i| i != self.unit) {
            for j in (0..m).filter(|&j| j != self.unit) {
                let terms: Vec<String> = self.constants[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| {
                        if c.is_one() {
                            self.labels[k].clone()
                        } else {
                            format!("{c}*{}", self.labels[k])
                        }
                    })
                    .collect();
                let rhs = if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join(" + ")
                };
                out.push(format!("{}*{} = {rhs}", self.labels[i], self.labels[j]));
            }
        }
        out
    }
}

/// Which matrix product realizes `e_i * e_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompositionOrder {
    /// `e_i * e_j` is `e_i` after `e_j` on row-vector coordinates: `A_j A_i`.
    Composition,
    /// Plain matrix product `A_i A_j`.
    MatrixProduct,
}

/// Structure constants of the commutant in its echelon basis. The unit
/// replaces the first basis matrix it has a nonzero coordinate on, if it is
/// not already a basis matrix.
pub fn ext_structure_constants<F: Field>(
    b: &CommutantBasis<F>,
    order: CompositionOrder,
) -> Result<(StructureConstantAlgebra<F>, Vec<ScalarMatrix<F>>)> {
    let m = b.size;
    let id = identity::<F>(m);
    let id_coords = b
        .coordinates(&id)
        .ok_or_else(|| Error::Internal("identity is not in the commutant".into()))?;
    let mut mats = b.matrices.clone();
    if !mats.contains(&id) {
        let k = id_coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("identity is nonzero");
        mats[k] = id.clone();
    }
    let unit = mats.iter().position(|a| *a == id).expect("identity placed");
    let mut ech = ColumnEchelon::new(m * m, true);
    for a in &mats {
        ech.insert(flatten(a));
    }
    let coords = |a: &ScalarMatrix<F>| -> Result<Vec<F>> {
        ech.preimage(&flatten(a))
            .map(|v| v.to_dense(mats.len()))
            .ok_or_else(|| Error::Internal("commutant is not closed under products".into()))
    };
    let k = mats.len();
    let mut constants = vec![vec![Vec::new(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let prod = match order {
                CompositionOrder::Composition => mat_mul(&mats[j], &mats[i]),
                CompositionOrder::MatrixProduct => mat_mul(&mats[i], &mats[j]),
            };
            constants[i][j] = coords(&prod)?;
        }
    }
    let labels = (1..=k).map(|i| format!("b{i}")).collect();
    Ok((
        StructureConstantAlgebra::new(labels, constants, unit)?,
        mats,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recognition<F> {
    /// `{1, x, ..., x^{order-1}}` is a basis and `x^order = 0`.
    Found {
        generator: Vec<F>,
        order: usize,
    },
    NotCommutative,
    NotLocal,
    /// No generator within the search budget.
    NotFound,
}

pub const RECOGNITION_BUDGET: usize = 10_000;

fn generates<F: Field>(a: &StructureConstantAlgebra<F>, x: &[F]) -> bool {
    let m = a.dim();
    let mut ech = ColumnEchelon::new(m, false);
    let mut p = a.one();
    for _ in 0..m {
        if !ech.insert(SparseVec::from_dense(&p)) {
            return false;
        }
        p = a.mul(&p, x);
    }
    p.iter().all(Zero::is_zero)
}

/// Recognize `k[X]/(X^m)`: search the radical for an element whose powers
/// form a basis. Radical basis vectors are tried first, then integer
/// combinations with coefficients in `[-2, 2]`.
pub fn truncated_polynomial_recognize<F: Field>(a: &StructureConstantAlgebra<F>) -> Recognition<F> {
    if !a.is_commutative() {
        return Recognition::NotCommutative;
    }
    let m = a.dim();
    if m == 1 {
        return Recognition::Found {
            generator: vec![F::zero()],
            order: 1,
        };
    }
    let radical = a.trace_radical();
    if radical.len() + 1 != m {
        return Recognition::NotLocal;
    }
    let mut tried = 0;
    for r in &radical {
        tried += 1;
        if generates(a, r) {
            return Recognition::Found {
                generator: r.clone(),
                order: m,
            };
        }
    }
    let r = radical.len();
    let mut coeffs = vec![-2i64; r];
    loop {
        if tried >= RECOGNITION_BUDGET {
            return Recognition::NotFound;
        }
        if coeffs.iter().filter(|&&c| c != 0).count() > 1 {
            tried += 1;
            let mut x = vec![F::zero(); m];
            for (c, v) in coeffs.iter().zip(&radical) {
                let c = F::from_i64(*c);
                for (xi, vi) in x.iter_mut().zip(v) {
                    let mut t = c.clone();
                    t *= vi;
                    *xi += &t;
                }
            }
            if generates(a, &x) {
                return Recognition::Found {
                    generator: x,
                    order: m,
                };
            }
        }
        // next coefficient tuple in [-2, 2]^r
        let mut pos = 0;
        loop {
            if pos == r {
                return Recognition::NotFound;
            }
            if coeffs[pos] < 2 {
                coeffs[pos] += 1;
                break;
            }
            coeffs[pos] = -2;
            pos += 1;
        }
    }
}

/// The algebra in the power basis `1, x, x^2, ...` labelled `e1, e2, ...`,
/// together with the power vectors in the original coordinates.
pub fn power_basis<F: Field>(
    a: &StructureConstantAlgebra<F>,
    x: &[F],
    order: usize,
) -> Result<(StructureConstantAlgebra<F>, Vec<Vec<F>>)> {
    let powers: Vec<Vec<F>> = (0..order).map(|k| a.power(x, k)).collect();
    let labels = (1..=order).map(|i| format!("e{i}")).collect();
    Ok((a.change_basis(&powers, labels)?, powers))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusForm<F> {
    pub functional: Vec<F>,
    pub gram: ScalarMatrix<F>,
    pub symmetric: bool,
}

pub const FROBENIUS_ATTEMPTS: usize = 1_000;

/// Gram matrix `lambda(e_i e_j)`.
pub fn pairing_matrix<F: Field>(a: &StructureConstantAlgebra<F>, lambda: &[F]) -> ScalarMatrix<F> {
    let m = a.dim();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    a.constants[i][j]
                        .iter()
                        .zip(lambda)
                        .fold(F::zero(), |mut acc, (c, l)| {
                            let mut t = c.clone();
                            t *= l;
                            acc += &t;
                            acc
                        })
                })
                .collect()
        })
        .collect()
}

/// The form defined by `lambda`, if its pairing is nondegenerate.
pub fn frobenius_check<F: Field>(
    a: &StructureConstantAlgebra<F>,
    lambda: &[F],
) -> Option<FrobeniusForm<F>> {
    let gram = pairing_matrix(a, lambda);
    let det = determinant(&gram).expect("square");
    if det.is_zero() {
        return None;
    }
    let m = a.dim();
    let symmetric = (0..m).all(|i| (0..m).all(|j| gram[i][j] == gram[j][i]));
    Some(FrobeniusForm {
        functional: lambda.to_vec(),
        gram,
        symmetric,
    })
}

/// Search for a Frobenius functional: dual-basis functionals first, then
/// seeded random integer combinations in `[-3, 3]`. `None` means none was
/// found within the budget, not that none exists.
pub fn frobenius_form<F: Field>(
    a: &StructureConstantAlgebra<F>,
    seed: u64,
) -> Option<FrobeniusForm<F>> {
    let m = a.dim();
    for k in 0..m {
        if let Some(f) = frobenius_check(a, &a.basis_vector(k)) {
            return Some(f);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..FROBENIUS_ATTEMPTS {
        let lambda: Vec<F> = (0..m).map(|_| F::from_i64(rng.gen_range(-3..=3))).collect();
        if let Some(f) = frobenius_check(a, &lambda) {
            return Some(f);
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusEntry {
    pub found: bool,
    pub symmetric: bool,
    pub functional: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtReport {
    pub module: String,
    pub field: String,
    pub ext_dim: usize,
    pub constraints: Vec<String>,
    pub commutative: bool,
    pub local: bool,
    pub recognized: Option<String>,
    pub generator: Option<Vec<Vec<String>>>,
    pub basis: Vec<Vec<Vec<String>>>,
    pub relations: Vec<String>,
    pub composition_order_independent: bool,
    pub frobenius: FrobeniusEntry,
    pub calabi_yau: Option<String>,
}

/// Everything computed for one module.
#[derive(Clone, Debug)]
pub struct ExtAlgebra<F: Field> {
    pub commutant: CommutantBasis<F>,
    pub echelon: StructureConstantAlgebra<F>,
    pub echelon_matrices: Vec<ScalarMatrix<F>>,
    pub recognition: Recognition<F>,
    /// Power basis `1, x, x^2, ...` when recognition succeeded.
    pub power: Option<(StructureConstantAlgebra<F>, Vec<ScalarMatrix<F>>)>,
    pub order_independent: bool,
}

impl<F: Field> ExtAlgebra<F> {
    pub fn compute(f: &SemifreeModule<F>) -> Result<Self> {
        let commutant = degree_zero_endomorphism_basis(f);
        let (echelon, echelon_matrices) =
            ext_structure_constants(&commutant, CompositionOrder::Composition)?;
        let (reversed, _) = ext_structure_constants(&commutant, CompositionOrder::MatrixProduct)?;
        let order_independent = reversed == echelon;
        let recognition = truncated_polynomial_recognize(&echelon);
        let power = match &recognition {
            Recognition::Found { generator, order } => {
                let (alg, vecs) = power_basis(&echelon, generator, *order)?;
                let to_matrix = |v: &Vec<F>| {
                    let m = commutant.size;
                    let mut out = vec![vec![F::zero(); m]; m];
                    for (c, b) in v.iter().zip(&echelon_matrices) {
                        for i in 0..m {
                            for j in 0..m {
                                let mut t = c.clone();
                                t *= &b[i][j];
                                out[i][j] += &t;
                            }
                        }
                    }
                    out
                };
                Some((alg, vecs.iter().map(to_matrix).collect()))
            }
            _ => None,
        };
        Ok(ExtAlgebra {
            commutant,
            echelon,
            echelon_matrices,
            recognition,
            power,
            order_independent,
        })
    }

    /// The algebra in the nicest available basis.
    pub fn algebra(&self) -> &StructureConstantAlgebra<F> {
        self.power.as_ref().map_or(&self.echelon, |(a, _)| a)
    }

    pub fn basis_matrices(&self) -> &[ScalarMatrix<F>] {
        self.power
            .as_ref()
            .map_or(&self.echelon_matrices, |(_, m)| m)
    }

    pub fn report(&self, module: &str, seed: u64) -> ExtReport {
        let strs = |m: &ScalarMatrix<F>| {
            m.iter()
                .map(|r| r.iter().map(|c| c.to_string()).collect())
                .collect()
        };
        let alg = self.algebra();
        let frob = frobenius_form(alg, seed);
        let (recognized, generator) = match (&self.recognition, &self.power) {
            (Recognition::Found { order, .. }, Some((_, mats))) => (
                Some(format!("k[X]/(X^{order})")),
                Some(strs(mats.get(1).unwrap_or(&mats[0]))),
            ),
            _ => (None, None),
        };
        let symmetric = frob.as_ref().is_some_and(|f| f.symmetric);
        ExtReport {
            module: module.to_string(),
            field: F::kind().to_string(),
            ext_dim: self.commutant.dim(),
            constraints: self.commutant.constraints.clone(),
            commutative: alg.is_commutative(),
            local: alg.is_local(),
            recognized,
            generator,
            basis: self.basis_matrices().iter().map(strs).collect(),
            relations: alg.relations(),
            composition_order_independent: self.order_independent,
            frobenius: FrobeniusEntry {
                found: frob.is_some(),
                symmetric,
                functional: frob
                    .map(|f| f.functional.iter().map(|c| c.to_string()).collect())
                    .unwrap_or_default(),
            },
            calabi_yau: symmetric.then(|| {
                "symmetric Frobenius Ext-algebra in degree 0; Calabi-Yau by the cited criterion"
                    .to_string()
            }),
        }
    }
}

/// Identity check used by tests: a basis matrix satisfies `A D = D A` as
/// matrices over the free algebra.
pub fn commutes_with_connection<F: Field>(f: &SemifreeModule<F>, a: &ScalarMatrix<F>) -> bool {
    let m = f.rank();
    let n = f.algebra().n();
    let d = f.connection();
    (0..m).all(|i| {
        (0..m).all(|j| {
            let mut diff = GradedElement::zero(n);
            for k in 0..m {
                diff = diff
                    .checked_add(&d[k][j].scale(&a[i][k]))
                    .expect("same algebra");
                diff = diff
                    .checked_sub(&d[i][k].scale(&a[k][j]))
                    .expect("same algebra");
            }
            diff.is_zero()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::DgFreeAlgebra;
    use crate::scalar::Rational;
    use crate::F5;

    type Q = Rational;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn commutant_of_f1() {
        let f = SemifreeModule::<Q>::f1();
        let b = degree_zero_endomorphism_basis(&f);
        assert_eq!(b.dim(), 3);
        assert_eq!(b.free_unknowns, vec![6, 7, 8]);
        for a in &b.matrices {
            assert!(commutes_with_connection(&f, a));
        }
        assert!(b.contains(&identity(3)));
        let paper =
            parse_constraint_chains::<Q>(&["a12=a13=a23=0", "a11=a22=a33", "a21=a32"], 3).unwrap();
        assert!(constraints_match(&b, &paper));
        let wrong = parse_constraint_chains::<Q>(&["a12=a13=a23=0", "a11=a22=a33"], 3).unwrap();
        assert!(!constraints_match(&b, &wrong));
        assert!(b.constraints.contains(&"a21 = a32".to_string()));
    }

    #[test]
    fn rank_one_commutant_is_scalars() {
        let f = SemifreeModule::<Q>::free_rank_one(DgFreeAlgebra::a1());
        let e = ExtAlgebra::compute(&f).unwrap();
        assert_eq!(e.commutant.dim(), 1);
        assert_eq!(
            e.recognition,
            Recognition::Found {
                generator: vec![q(0)],
                order: 1
            }
        );
    }

    #[test]
    fn f1_is_truncated_cubic() {
        let e = ExtAlgebra::compute(&SemifreeModule::<Q>::f1()).unwrap();
        assert!(e.order_independent);
        let (alg, mats) = e.power.clone().unwrap();
        assert_eq!(alg, StructureConstantAlgebra::truncated_polynomial(3));
        let toeplitz: Vec<ScalarMatrix<Q>> = vec![
            identity(3),
            vec![
                vec![q(0), q(0), q(0)],
                vec![q(1), q(0), q(0)],
                vec![q(0), q(1), q(0)],
            ],
            vec![
                vec![q(0), q(0), q(0)],
                vec![q(0), q(0), q(0)],
                vec![q(1), q(0), q(0)],
            ],
        ];
        assert_eq!(mats, toeplitz);
        assert!(alg.relations().contains(&"e2*e2 = e3".to_string()));
        assert!(alg.relations().contains(&"e2*e3 = 0".to_string()));
    }

    #[test]
    fn frobenius_functionals() {
        let a = StructureConstantAlgebra::<Q>::truncated_polynomial(3);
        let f = frobenius_form(&a, 0).unwrap();
        assert_eq!(f.functional, vec![q(0), q(0), q(1)]);
        assert!(f.symmetric);
        // k x k with idempotent basis
        let c = vec![
            vec![vec![q(1), q(0)], vec![q(0), q(0)]],
            vec![vec![q(0), q(0)], vec![q(0), q(1)]],
        ];
        // unit is f1 + f2, so use the basis {1, f1}
        let prod = StructureConstantAlgebra::new(vec!["f1".into(), "f2".into()], c, 0);
        assert!(prod.is_err(), "f1 is not a unit");
        let kk = StructureConstantAlgebra::new(
            vec!["1".into(), "f".into()],
            vec![
                vec![vec![q(1), q(0)], vec![q(0), q(1)]],
                vec![vec![q(0), q(1)], vec![q(0), q(1)]],
            ],
            0,
        )
        .unwrap();
        assert!(!kk.is_local());
        assert!(frobenius_check(&kk, &[q(2), q(-1)]).is_some());
        assert!(frobenius_form(&kk, 0).is_some());
    }

    #[test]
    fn works_over_prime_fields() {
        let e = ExtAlgebra::compute(&SemifreeModule::<F5>::f2()).unwrap();
        assert_eq!(
            e.algebra(),
            &StructureConstantAlgebra::truncated_polynomial(4)
        );
    }
}
