//! The matrix groups
//!
//! ```text
//! G1 = { (a, b; 0, a^2) }      G2 = { (a, b, c; 0, a^2, 2ab; 0, 0, a^3) }
//! ```
//!
//! with `a` a unit: abelianization through `a`, explicit commutator
//! witnesses, the conjugation action of the abelianization on the commutator
//! subgroup, and the census of invariant subgroups over prime fields, which
//! tells the two groups apart.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, Fp, Rational};
use crate::symbolic::{
    matrix_identity_check, poly_identity, poly_mat_mul, random_point_check,
    upper_triangular_inverse, PolyMatrix, PolyRing, QPoly, RANDOM_POINTS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupId {
    G1,
    G2,
}

impl std::fmt::Display for GroupId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GroupId::G1 => "G1",
            GroupId::G2 => "G2",
        })
    }
}

/// `DPic = Z x G`, the integer factor carried as a tag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DPicDescriptor {
    pub shift_factor: String,
    pub group: GroupId,
}

impl DPicDescriptor {
    pub fn new(group: GroupId) -> Self {
        DPicDescriptor {
            shift_factor: "Z".into(),
            group,
        }
    }
}

fn matmul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let m = a.len();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..m).fold(F::zero(), |mut acc, k| {
                        let mut t = a[i][k].clone();
                        t *= &b[k][j];
                        acc += &t;
                        acc
                    })
                })
                .collect()
        })
        .collect()
}

/// `(a, b; 0, a^2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct G1Element<F> {
    pub a: F,
    pub b: F,
}

/// `(a, b, c; 0, a^2, 2ab; 0, 0, a^3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct G2Element<F> {
    pub a: F,
    pub b: F,
    pub c: F,
}

impl<F: Field> G1Element<F> {
    pub fn new(a: F, b: F) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::Input(
                "G1 element needs a nonzero diagonal parameter".into(),
            ));
        }
        Ok(G1Element { a, b })
    }

    pub fn identity() -> Self {
        G1Element {
            a: F::one(),
            b: F::zero(),
        }
    }

    pub fn to_matrix(&self) -> Vec<Vec<F>> {
        vec![
            vec![self.a.clone(), self.b.clone()],
            vec![F::zero(), self.a.power(2)],
        ]
    }

    /// Read a matrix of the right shape back into parameters.
    pub fn from_matrix(m: &[Vec<F>]) -> Result<Self> {
        let g = G1Element::new(m[0][0].clone(), m[0][1].clone())?;
        if g.to_matrix() != m {
            return Err(Error::Internal("matrix is not of G1 shape".into()));
        }
        Ok(g)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_matrix(&matmul(&self.to_matrix(), &other.to_matrix())).expect("G1 is closed")
    }

    pub fn inverse(&self) -> Self {
        let ai = self.a.inverse().expect("a is nonzero");
        // (a, b; 0, a^2)^{-1} = (1/a, -b/a^3; 0, 1/a^2)
        let mut b = -self.b.clone();
        b *= &ai.power(3);
        G1Element { a: ai, b }
    }

    /// The abelianization map.
    pub fn sigma(&self) -> F {
        self.a.clone()
    }

    pub fn in_kernel(&self) -> bool {
        self.a.is_one()
    }
}

impl<F: Field> G2Element<F> {
    pub fn new(a: F, b: F, c: F) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::Input(
                "G2 element needs a nonzero diagonal parameter".into(),
            ));
        }
        Ok(G2Element { a, b, c })
    }

    pub fn identity() -> Self {
        G2Element {
            a: F::one(),
            b: F::zero(),
            c: F::zero(),
        }
    }

    pub fn to_matrix(&self) -> Vec<Vec<F>> {
        let mut two_ab = F::from_i64(2);
        two_ab *= &self.a;
        two_ab *= &self.b;
        vec![
            vec![self.a.clone(), self.b.clone(), self.c.clone()],
            vec![F::zero(), self.a.power(2), two_ab],
            vec![F::zero(), F::zero(), self.a.power(3)],
        ]
    }

    pub fn from_matrix(m: &[Vec<F>]) -> Result<Self> {
        let g = G2Element::new(m[0][0].clone(), m[0][1].clone(), m[0][2].clone())?;
        if g.to_matrix() != m {
            return Err(Error::Internal("matrix is not of G2 shape".into()));
        }
        Ok(g)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_matrix(&matmul(&self.to_matrix(), &other.to_matrix())).expect("G2 is closed")
    }

    pub fn inverse(&self) -> Self {
        let ai = self.a.inverse().expect("a is nonzero");
        // first row of the inverse: (1/a, -b/a^3, (2b^2 - ac)/a^5)
        let mut b = -self.b.clone();
        b *= &ai.power(3);
        let mut c = self.b.power(2);
        c *= &F::from_i64(2);
        let mut ac = self.a.clone();
        ac *= &self.c;
        c -= &ac;
        c *= &ai.power(5);
        let inv = G2Element { a: ai, b, c };
        debug_assert!(self.mul(&inv) == Self::identity());
        inv
    }

    pub fn sigma(&self) -> F {
        self.a.clone()
    }

    pub fn in_kernel(&self) -> bool {
        self.a.is_one()
    }
}

/// `[g, h] = g h g^{-1} h^{-1}`.
pub fn commutator_g1<F: Field>(g: &G1Element<F>, h: &G1Element<F>) -> G1Element<F> {
    g.mul(h).mul(&g.inverse()).mul(&h.inverse())
}

pub fn commutator_g2<F: Field>(g: &G2Element<F>, h: &G2Element<F>) -> G2Element<F> {
    g.mul(h).mul(&g.inverse()).mul(&h.inverse())
}

/// For `k = (1, b)`: `g = (1/2, 0)`, `h = k`, and `[g, h] = k`.
pub fn commutator_witness_g1<F: Field>(k: &G1Element<F>) -> Result<(G1Element<F>, G1Element<F>)> {
    if !k.in_kernel() {
        return Err(Error::Input(
            "commutator witness requested for a non-kernel element".into(),
        ));
    }
    if *k == G1Element::identity() {
        return Ok((G1Element::identity(), G1Element::identity()));
    }
    let half = F::from_i64(2)
        .inverse()
        .ok_or_else(|| Error::Input("characteristic 2".into()))?;
    Ok((G1Element::new(half, F::zero())?, k.clone()))
}

/// For `k = (1, b, c)`: `g = (1/2, 0, 0)`, `h = (1, b, (c + 2b^2)/3)`.
pub fn commutator_witness_g2<F: Field>(k: &G2Element<F>) -> Result<(G2Element<F>, G2Element<F>)> {
    if !k.in_kernel() {
        return Err(Error::Input(
            "commutator witness requested for a non-kernel element".into(),
        ));
    }
    if *k == G2Element::identity() {
        return Ok((G2Element::identity(), G2Element::identity()));
    }
    let half = F::from_i64(2)
        .inverse()
        .ok_or_else(|| Error::Input("characteristic 2".into()))?;
    let third = F::from_i64(3)
        .inverse()
        .ok_or_else(|| Error::Input("characteristic 3".into()))?;
    let mut t = k.b.power(2);
    t *= &F::from_i64(2);
    t += &k.c;
    t *= &third;
    Ok((
        G2Element::new(half, F::zero(), F::zero())?,
        G2Element::new(F::one(), k.b.clone(), t)?,
    ))
}

/// Kernel coordinates: `s` for `(1, s; 0, 1)`, `(s, t)` for
/// `(1, s, t; 0, 1, 2s; 0, 0, 1)`. The action of `a` is `s -> s/a` and
/// `(s, t) -> (s/a, t/a^2)`.
pub fn conjugation_action<F: Field>(group: GroupId, a: &F, k: &[F]) -> Result<Vec<F>> {
    let ai = a
        .inverse()
        .ok_or_else(|| Error::Input("the acting scalar must be nonzero".into()))?;
    match (group, k) {
        (GroupId::G1, [s]) => {
            let mut s = s.clone();
            s *= &ai;
            Ok(vec![s])
        }
        (GroupId::G2, [s, t]) => {
            let mut s = s.clone();
            s *= &ai;
            let mut t = t.clone();
            t *= &ai.power(2);
            Ok(vec![s, t])
        }
        _ => Err(Error::Dimension(format!(
            "{group} kernel coordinates have the wrong length"
        ))),
    }
}

/// Invariant subgroups of the commutator subgroup over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupCensus<const P: u64> {
    pub group: GroupId,
    /// All subgroups of the commutator subgroup, each sorted.
    pub all_subgroups: Vec<Vec<Vec<Fp<P>>>>,
    pub invariant: Vec<Vec<Vec<Fp<P>>>>,
}

impl<const P: u64> SubgroupCensus<P> {
    pub fn count(&self) -> usize {
        self.invariant.len()
    }
}

/// Kernel elements are coded as integers: `s` for G1, `s * p + t` for G2.
type Subgroup = BTreeSet<u64>;

fn encode<const P: u64>(k: &[Fp<P>]) -> u64 {
    k.iter().fold(0, |acc, x| acc * P + x.value())
}

fn decode<const P: u64>(group: GroupId, code: u64) -> Vec<Fp<P>> {
    match group {
        GroupId::G1 => vec![Fp::new(code)],
        GroupId::G2 => vec![Fp::new(code / P), Fp::new(code % P)],
    }
}

fn mul_code<const P: u64>(group: GroupId, x: u64, y: u64) -> u64 {
    match group {
        GroupId::G1 => (x + y) % P,
        GroupId::G2 => {
            let (s, t) = (Fp::<P>::new(x / P), Fp::<P>::new(x % P));
            let (s2, t2) = (Fp::<P>::new(y / P), Fp::<P>::new(y % P));
            encode(&[s + s2, t + t2 + Fp::new(2) * s * s2])
        }
    }
}

fn cyclic<const P: u64>(group: GroupId, g: u64) -> Subgroup {
    let mut set = BTreeSet::from([0]);
    let mut x = g;
    while set.insert(x) {
        x = mul_code::<P>(group, x, g);
    }
    set
}

fn kernel_size<const P: u64>(group: GroupId) -> u64 {
    match group {
        GroupId::G1 => P,
        GroupId::G2 => P * P,
    }
}

fn to_elements<const P: u64>(group: GroupId, h: &Subgroup) -> Vec<Vec<Fp<P>>> {
    h.iter().map(|&c| decode::<P>(group, c)).collect()
}

/// Every subgroup of the commutator subgroup (cyclic subgroups, then joins
/// to a fixpoint), filtered by stability under all `a` in `F_p^x`.
pub fn invariant_subgroup_census<const P: u64>(group: GroupId) -> Result<SubgroupCensus<P>> {
    if P < 5 {
        return Err(Error::InvalidPrime(P));
    }
    let mut subgroups: BTreeSet<Subgroup> = (0..kernel_size::<P>(group))
        .map(|g| cyclic::<P>(group, g))
        .collect();
    // the kernels are abelian, so the join of A and B is the product set AB
    let mut fresh: Vec<Subgroup> = subgroups.iter().cloned().collect();
    while !fresh.is_empty() {
        let known: Vec<Subgroup> = subgroups.iter().cloned().collect();
        let mut next = Vec::new();
        for a in &fresh {
            for b in &known {
                if a.is_subset(b) || b.is_subset(a) {
                    continue;
                }
                let join: Subgroup = a
                    .iter()
                    .flat_map(|&x| b.iter().map(move |&y| mul_code::<P>(group, x, y)))
                    .collect();
                if subgroups.insert(join.clone()) {
                    next.push(join);
                }
            }
        }
        fresh = next;
    }
    let stable = |h: &Subgroup| {
        Fp::<P>::units().all(|a| {
            h.iter().all(|&k| {
                conjugation_action(group, &a, &decode::<P>(group, k))
                    .is_ok_and(|img| h.contains(&encode(&img)))
            })
        })
    };
    let closed = |h: &Subgroup| {
        let elems: Vec<u64> = h.iter().copied().collect();
        elems
            .par_iter()
            .all(|&x| h.iter().all(|&y| h.contains(&mul_code::<P>(group, x, y))))
    };
    let mut all: Vec<Subgroup> = subgroups.into_iter().collect();
    all.sort_by_key(|h| (h.len(), h.iter().copied().collect::<Vec<_>>()));
    let invariant: Vec<&Subgroup> = all.iter().filter(|h| stable(h)).collect();
    if !invariant.iter().all(|h| closed(h)) {
        return Err(Error::Internal("census produced a non-subgroup".into()));
    }
    Ok(SubgroupCensus {
        group,
        all_subgroups: all.iter().map(|h| to_elements::<P>(group, h)).collect(),
        invariant: invariant
            .into_iter()
            .map(|h| to_elements::<P>(group, h))
            .collect(),
    })
}

/// The four invariant subgroups of the G2 commutator subgroup named in the
/// comparison argument: trivial, `{(0, t)}`, `{(t, t^2)}`, everything.
pub fn listed_g2_subgroups<const P: u64>() -> Vec<Vec<Vec<Fp<P>>>> {
    let zero = Fp::<P>::new(0);
    let mut lists: Vec<Subgroup> = vec![
        BTreeSet::from([0]),
        Fp::<P>::elements().map(|t| encode(&[zero, t])).collect(),
        Fp::<P>::elements().map(|t| encode(&[t, t * t])).collect(),
        (0..P * P).collect(),
    ];
    lists.sort_by_key(|h| (h.len(), h.iter().copied().collect::<Vec<_>>()));
    lists
        .iter()
        .map(|h| to_elements::<P>(GroupId::G2, h))
        .collect()
}

/// Commutator subgroup over `F_p` by brute force: every commutator, then
/// closure. Returns whether it equals the kernel of the abelianization.
pub fn brute_force_commutator_matches_kernel<const P: u64>(group: GroupId) -> bool {
    let units: Vec<Fp<P>> = Fp::<P>::units().collect();
    let all: Vec<Fp<P>> = Fp::<P>::elements().collect();
    let generate = |comms: Subgroup| {
        let mut h = BTreeSet::from([0]);
        for g in comms {
            let c = cyclic::<P>(group, g);
            h = h
                .iter()
                .flat_map(|&x| c.iter().map(move |&y| mul_code::<P>(group, x, y)))
                .collect();
        }
        h
    };
    let (generated, kernel) = match group {
        GroupId::G1 => {
            let elems: Vec<G1Element<Fp<P>>> = units
                .iter()
                .flat_map(|a| all.iter().map(move |b| G1Element { a: *a, b: *b }))
                .collect();
            let comms: Subgroup = elems
                .par_iter()
                .map(|g| {
                    elems
                        .iter()
                        .map(|h| encode(&[commutator_g1(g, h).b]))
                        .collect::<Subgroup>()
                })
                .reduce(BTreeSet::new, |mut a, b| {
                    a.extend(b);
                    a
                });
            let kernel: Subgroup = elems
                .iter()
                .filter(|g| g.in_kernel())
                .map(|g| encode(&[g.b]))
                .collect();
            (generate(comms), kernel)
        }
        GroupId::G2 => {
            let mut elems = Vec::new();
            for &a in &units {
                for &b in &all {
                    for &c in &all {
                        elems.push(G2Element { a, b, c });
                    }
                }
            }
            let comms: Subgroup = elems
                .par_iter()
                .map(|g| {
                    elems
                        .iter()
                        .map(|h| {
                            let k = commutator_g2(g, h);
                            encode(&[k.b, k.c])
                        })
                        .collect::<Subgroup>()
                })
                .reduce(BTreeSet::new, |mut a, b| {
                    a.extend(b);
                    a
                });
            let kernel: Subgroup = elems
                .iter()
                .filter(|g| g.in_kernel())
                .map(|g| encode(&[g.b, g.c]))
                .collect();
            (generate(comms), kernel)
        }
    };
    generated == kernel
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicCheck {
    pub name: String,
    /// Canonical-form equality over Q.
    pub pass: bool,
    /// Agreement at random rational points.
    pub random_points_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn identity_check(
    name: &str,
    lhs: &PolyMatrix<Rational>,
    rhs: &PolyMatrix<Rational>,
    seed: u64,
) -> Result<SymbolicCheck> {
    let verdict = matrix_identity_check(lhs, rhs)?;
    let random = random_point_check(lhs, rhs, seed, RANDOM_POINTS)?;
    Ok(SymbolicCheck {
        name: name.into(),
        pass: verdict.holds,
        random_points_pass: random.is_none(),
        detail: verdict
            .witness
            .map(|(i, j, d)| format!("entry ({}, {}) differs by {d}", i + 1, j + 1)),
    })
}

fn g1_poly(a: &QPoly, b: &QPoly) -> PolyMatrix<Rational> {
    let z = QPoly::zero(a.ring());
    vec![vec![a.clone(), b.clone()], vec![z, a.pow(2)]]
}

fn g2_poly(a: &QPoly, b: &QPoly, c: &QPoly) -> PolyMatrix<Rational> {
    let z = QPoly::zero(a.ring());
    vec![
        vec![a.clone(), b.clone(), c.clone()],
        vec![z.clone(), a.pow(2), (a * b).scale(&Rational::from_i64(2))],
        vec![z.clone(), z, a.pow(3)],
    ]
}

fn group_poly(group: GroupId, p: &[QPoly]) -> PolyMatrix<Rational> {
    match group {
        GroupId::G1 => g1_poly(&p[0], &p[1]),
        GroupId::G2 => g2_poly(&p[0], &p[1], &p[2]),
    }
}

fn kernel_poly(group: GroupId, k: &[QPoly]) -> PolyMatrix<Rational> {
    let one = QPoly::one(k[0].ring());
    match group {
        GroupId::G1 => g1_poly(&one, &k[0]),
        GroupId::G2 => {
            let z = QPoly::zero(k[0].ring());
            vec![
                vec![one.clone(), k[0].clone(), k[1].clone()],
                vec![z.clone(), one.clone(), k[0].scale(&Rational::from_i64(2))],
                vec![z.clone(), z, one],
            ]
        }
    }
}

fn param_names(group: GroupId) -> &'static [&'static str] {
    match group {
        GroupId::G1 => &["a", "b"],
        GroupId::G2 => &["a", "b", "c"],
    }
}

fn vars(ring: &Arc<PolyRing>, names: &[&str]) -> Result<Vec<QPoly>> {
    names.iter().map(|n| QPoly::var(ring, n)).collect()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// All characteristic-zero identities for one group.
pub fn symbolic_checks(group: GroupId, seed: u64) -> Result<Vec<SymbolicCheck>> {
    let tag = match group {
        GroupId::G1 => "g1",
        GroupId::G2 => "g2",
    };
    let names = param_names(group);
    let primed: Vec<String> = names.iter().map(|n| format!("{n}'")).collect();
    let mut spec: Vec<(&str, bool)> = names.iter().map(|n| (*n, *n == "a")).collect();
    spec.extend(primed.iter().map(|n| (n.as_str(), n == "a'")));
    spec.extend([("s", false), ("t", false)]);
    let ring = PolyRing::new(&spec)?;
    let x = vars(&ring, names)?;
    let primed_refs: Vec<&str> = primed.iter().map(String::as_str).collect();
    let y = vars(&ring, &primed_refs)?;
    let g = group_poly(group, &x);
    let h = group_poly(group, &y);
    let g_inv = upper_triangular_inverse(&g)?;
    let h_inv = upper_triangular_inverse(&h)?;
    let dim = g.len();
    let mut checks = Vec::new();

    // closure: the product has the group shape with parameters read off row 0
    let gh = poly_mat_mul(&g, &h)?;
    let read: Vec<QPoly> = gh[0].clone();
    checks.push(identity_check(
        &format!("{tag}_closure"),
        &gh,
        &group_poly(group, &read),
        seed,
    )?);
    let read_inv: Vec<QPoly> = g_inv[0].clone();
    checks.push(identity_check(
        &format!("{tag}_inverse_shape"),
        &g_inv,
        &group_poly(group, &read_inv),
        seed,
    )?);
    checks.push(identity_check(
        &format!("{tag}_inverse"),
        &poly_mat_mul(&g, &g_inv)?,
        &poly_identity(&ring, dim),
        seed,
    )?);

    // sigma(gh) = sigma(g) sigma(h)
    let sigma = vec![vec![gh[0][0].clone()]];
    let sigma_prod = vec![vec![&x[0] * &y[0]]];
    checks.push(identity_check(
        &format!("{tag}_sigma_homomorphism"),
        &sigma,
        &sigma_prod,
        seed,
    )?);

    // commutators lie in the kernel: sigma([g, h]) = 1
    let comm = poly_mat_mul(&poly_mat_mul(&poly_mat_mul(&g, &h)?, &g_inv)?, &h_inv)?;
    let one = vec![vec![QPoly::one(&ring)]];
    checks.push(identity_check(
        &format!("{tag}_commutators_in_kernel"),
        &vec![vec![comm[0][0].clone()]],
        &one,
        seed,
    )?);

    // explicit witness
    let (s, t) = (QPoly::var(&ring, "s")?, QPoly::var(&ring, "t")?);
    let k_coords: Vec<QPoly> = match group {
        GroupId::G1 => vec![s.clone()],
        GroupId::G2 => vec![s.clone(), t.clone()],
    };
    let k = kernel_poly(group, &k_coords);
    let half = QPoly::constant(&ring, q(1, 2));
    let z = QPoly::zero(&ring);
    let wg = match group {
        GroupId::G1 => group_poly(group, &[half, z.clone()]),
        GroupId::G2 => group_poly(group, &[half, z.clone(), z.clone()]),
    };
    let wh = match group {
        GroupId::G1 => k.clone(),
        GroupId::G2 => {
            let third = (&t + &(&s * &s).scale(&q(2, 1))).scale(&q(1, 3));
            kernel_poly(group, &[s.clone(), third])
        }
    };
    let witness = poly_mat_mul(
        &poly_mat_mul(&poly_mat_mul(&wg, &wh)?, &upper_triangular_inverse(&wg)?)?,
        &upper_triangular_inverse(&wh)?,
    )?;
    checks.push(identity_check(
        &format!("{tag}_commutator_witness"),
        &witness,
        &k,
        seed,
    )?);

    // conjugation by a general element depends only on a
    let conj = poly_mat_mul(&poly_mat_mul(&g, &k)?, &g_inv)?;
    let ai = x[0].unit_inverse().expect("a is invertible");
    let acted: Vec<QPoly> = match group {
        GroupId::G1 => vec![&s * &ai],
        GroupId::G2 => vec![&s * &ai, &t * &ai.pow(2)],
    };
    let mut check = identity_check(
        &format!("{tag}_conjugation_action"),
        &conj,
        &kernel_poly(group, &acted),
        seed,
    )?;
    let extra: Vec<String> = conj
        .iter()
        .flatten()
        .flat_map(|p| p.support_vars())
        .filter(|v| v != "a" && v != "s" && v != "t")
        .collect();
    if !extra.is_empty() {
        check.pass = false;
        check.detail = Some(format!("action depends on {extra:?}"));
    }
    checks.push(check);
    Ok(checks)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub p: u64,
    pub g1: usize,
    pub g2: usize,
    pub g1_subgroups: Vec<Vec<Vec<u64>>>,
    pub g2_subgroups: Vec<Vec<Vec<u64>>>,
    pub g2_listed_subgroups_present: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteCheck {
    pub name: String,
    /// `None` when the group is too large to enumerate all pairs.
    pub pass: Option<bool>,
}

/// Largest `|G|^2` for which all commutators are enumerated.
pub const COMMUTATOR_PAIR_LIMIT: u64 = 10_000_000;

pub fn group_order<const P: u64>(group: GroupId) -> u64 {
    match group {
        GroupId::G1 => P * (P - 1),
        GroupId::G2 => P * P * (P - 1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonIsomorphismCertificate {
    pub groups: Vec<DPicDescriptor>,
    pub symbolic_checks: Vec<SymbolicCheck>,
    pub finite_checks: Vec<FiniteCheck>,
    pub census: CensusEntry,
    pub transport_argument: String,
    pub verdict: String,
    pub cited_inputs: Vec<String>,
    pub labels: Vec<String>,
}

pub const VERDICT_DIFFERENT: &str = "DPic(A1) != DPic(A2)";
pub const VERDICT_SAME: &str = "indistinguishable by this invariant";

fn subgroup_values<const P: u64>(subgroups: &[Vec<Vec<Fp<P>>>]) -> Vec<Vec<Vec<u64>>> {
    subgroups
        .iter()
        .map(|h| {
            h.iter()
                .map(|k| k.iter().map(|x| x.value()).collect())
                .collect()
        })
        .collect()
}

/// Compare the invariant-subgroup counts of two groups over `F_p`.
pub fn compare<const P: u64>(
    left: GroupId,
    right: GroupId,
) -> Result<(usize, usize, &'static str)> {
    let l = invariant_subgroup_census::<P>(left)?.count();
    let r = invariant_subgroup_census::<P>(right)?.count();
    Ok((
        l,
        r,
        if l == r {
            VERDICT_SAME
        } else {
            VERDICT_DIFFERENT
        },
    ))
}

/// Assemble the full certificate that `G1` and `G2` are not isomorphic.
/// Any failing sub-check aborts with that check named.
pub fn non_isomorphism_certificate<const P: u64>(seed: u64) -> Result<NonIsomorphismCertificate> {
    if P < 5 {
        return Err(Error::InvalidPrime(P));
    }
    let mut symbolic = symbolic_checks(GroupId::G1, seed)?;
    symbolic.extend(symbolic_checks(GroupId::G2, seed)?);
    if let Some(bad) = symbolic.iter().find(|c| !c.pass || !c.random_points_pass) {
        return Err(Error::Internal(format!(
            "symbolic check {} failed",
            bad.name
        )));
    }
    let finite: Vec<FiniteCheck> = [("g1", GroupId::G1), ("g2", GroupId::G2)]
        .into_iter()
        .map(|(tag, g)| FiniteCheck {
            name: format!("{tag}_commutator_subgroup_equals_kernel"),
            pass: (group_order::<P>(g).pow(2) <= COMMUTATOR_PAIR_LIMIT)
                .then(|| brute_force_commutator_matches_kernel::<P>(g)),
        })
        .collect();
    if let Some(bad) = finite.iter().find(|c| c.pass == Some(false)) {
        return Err(Error::Internal(format!("finite check {} failed", bad.name)));
    }
    let c1 = invariant_subgroup_census::<P>(GroupId::G1)?;
    let c2 = invariant_subgroup_census::<P>(GroupId::G2)?;
    let listed = listed_g2_subgroups::<P>();
    let present = listed.iter().all(|h| c2.invariant.contains(h));
    let verdict = if c1.count() != c2.count() {
        VERDICT_DIFFERENT
    } else {
        VERDICT_SAME
    };
    Ok(NonIsomorphismCertificate {
        groups: vec![DPicDescriptor::new(GroupId::G1), DPicDescriptor::new(GroupId::G2)],
        symbolic_checks: symbolic,
        finite_checks: finite,
        census: CensusEntry {
            p: P,
            g1: c1.count(),
            g2: c2.count(),
            g1_subgroups: subgroup_values(&c1.invariant),
            g2_subgroups: subgroup_values(&c2.invariant),
            g2_listed_subgroups_present: present,
        },
        transport_argument: "an isomorphism G1 -> G2 restricts to the commutator subgroups and descends to the \
            abelianizations compatibly with the conjugation actions, so it maps invariant subgroups bijectively \
            onto invariant subgroups; the counts are isomorphism invariants"
            .into(),
        verdict: verdict.into(),
        cited_inputs: vec![
            "DPic(A_i) = Z x Aut(Ext(A_i)) for the two algebras, with Aut(Ext) = G_i".into(),
            "the derived Picard group is a derived invariant".into(),
        ],
        labels: vec![
            "symbolic_checks: characteristic-zero identities over Q".into(),
            format!("finite_checks and census: finite-field analogues over F_{P}"),
        ],
    })
}
