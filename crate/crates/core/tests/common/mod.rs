#![allow(dead_code)]

use dgfree::cohomology::Cohomology;
use dgfree::dg::{crisscross_check, d_squared_on_generators, CrisscrossTuple, DgFreeAlgebra};
use dgfree::free_algebra::{degree_basis, GradedElement};
use dgfree::linalg::{rank_and_kernel, Matrix};
use dgfree::semifree::SemifreeModule;
use dgfree::{Field, Rational, F5};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Suite = Result<String, String>;

/// Homogeneous element of degree `d` with a few random terms.
pub fn random_homogeneous<F: Field>(rng: &mut ChaCha8Rng, n: usize, d: usize) -> GradedElement<F> {
    let words = degree_basis(n, d);
    let terms = rng.gen_range(1..=4);
    GradedElement::from_terms(
        n,
        (0..terms).map(|_| {
            let w = words[rng.gen_range(0..words.len())].clone();
            (w, F::from_i64(rng.gen_range(-3..=3)))
        }),
    )
}

pub fn random_element<F: Field>(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_degree: usize,
) -> GradedElement<F> {
    let mut e = GradedElement::zero(n);
    for d in 0..=max_degree {
        if rng.gen_bool(0.6) {
            e = e.checked_add(&random_homogeneous(rng, n, d)).unwrap();
        }
    }
    e
}

/// Every tuple of two 2x2 matrices with entries in {-1, 0, 1}.
pub fn crisscross_equivalence() -> Suite {
    let mut holding = 0;
    for code in 0..3usize.pow(8) {
        let mut c = code;
        let mut entries = [0i64; 8];
        for e in entries.iter_mut() {
            *e = (c % 3) as i64 - 1;
            c /= 3;
        }
        let m = |k: usize| {
            vec![
                vec![entries[k], entries[k + 1]],
                vec![entries[k + 2], entries[k + 3]],
            ]
        };
        let t = CrisscrossTuple::<Rational>::from_i64(&[m(0), m(4)]).map_err(|e| e.to_string())?;
        let cc = crisscross_check(&t).holds;
        let sq = d_squared_on_generators(&t).holds;
        if cc != sq {
            return Err(format!("tuple {entries:?}: crisscross {cc}, d^2 = 0 {sq}"));
        }
        holding += usize::from(cc);
    }
    Ok(format!("6561 tuples, {holding} square-zero"))
}

/// `d(xy) = d(x) y + (-1)^|x| x d(y)` and `d^2 = 0`.
pub fn leibniz_and_square_zero(seed: u64, samples: usize) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for alg in [DgFreeAlgebra::<Rational>::a1(), DgFreeAlgebra::a2()] {
        let n = alg.n();
        for _ in 0..samples {
            let dx = rng.gen_range(0..=3);
            let x = random_homogeneous::<Rational>(&mut rng, n, dx);
            let y = random_element::<Rational>(&mut rng, n, 3);
            let d = |e: &GradedElement<Rational>| alg.differential(e).unwrap();
            let lhs = d(&x.checked_mul(&y).unwrap());
            let mut second = x.checked_mul(&d(&y)).unwrap();
            if dx % 2 == 1 {
                second = second.scale(&Rational::from_i64(-1));
            }
            let rhs = d(&x).checked_mul(&y).unwrap().checked_add(&second).unwrap();
            if lhs != rhs {
                return Err(format!(
                    "{}: Leibniz fails for x = {}, y = {}",
                    alg.name(),
                    alg.render(&x),
                    alg.render(&y)
                ));
            }
            if !d(&d(&y)).is_zero() {
                return Err(format!("{}: d^2 != 0 on {}", alg.name(), alg.render(&y)));
            }
        }
    }
    Ok(format!("{samples} samples per preset"))
}

/// Determinant by permutation expansion.
fn leibniz_det<F: Field>(m: &[Vec<F>]) -> F {
    fn rec<F: Field>(m: &[Vec<F>], perm: &mut Vec<usize>, acc: &mut F) {
        let k = m.len();
        if perm.len() == k {
            let inversions = (0..k)
                .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let mut t = if inversions % 2 == 0 {
                F::one()
            } else {
                -F::one()
            };
            for (row, &col) in perm.iter().enumerate() {
                t *= &m[row][col];
            }
            *acc += &t;
            return;
        }
        for c in 0..k {
            if !perm.contains(&c) {
                perm.push(c);
                rec(m, perm, acc);
                perm.pop();
            }
        }
    }
    let mut acc = F::zero();
    rec(m, &mut Vec::new(), &mut acc);
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Largest order of a nonvanishing minor.
pub fn minor_rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    for k in (1..=r.min(c)).rev() {
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let minor: Vec<Vec<F>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect())
                    .collect();
                if !leibniz_det(&minor).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

fn rank_kernel_case<F: Field>(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let r = rng.gen_range(1..=4);
    let c = rng.gen_range(1..=5);
    let density = rng.gen_range(0.2..1.0);
    let mut rows: Vec<Vec<F>> = (0..r)
        .map(|_| {
            (0..c)
                .map(|_| {
                    if rng.gen_bool(density) {
                        F::from_i64(rng.gen_range(-2..=2))
                    } else {
                        F::zero()
                    }
                })
                .collect()
        })
        .collect();
    // force some dependent rows
    if r > 1 && rng.gen_bool(0.4) {
        let k = F::from_i64(rng.gen_range(-2..=2));
        let src = rows[0].clone();
        for (dst, s) in rows[r - 1].iter_mut().zip(&src) {
            let mut t = s.clone();
            t *= &k;
            *dst += &t;
        }
    }
    let m = Matrix::from_rows(&rows).map_err(|e| e.to_string())?;
    let (rank, kernel) = rank_and_kernel(&m);
    let oracle = minor_rank(&rows);
    if rank != oracle {
        return Err(format!("{rows:?}: rank {rank}, minor oracle {oracle}"));
    }
    if kernel.len() != c - oracle {
        return Err(format!(
            "{rows:?}: kernel dim {}, expected {}",
            kernel.len(),
            c - oracle
        ));
    }
    for v in &kernel {
        if m.mul_vec(v)
            .map_err(|e| e.to_string())?
            .iter()
            .any(|x| !x.is_zero())
        {
            return Err(format!("{rows:?}: {v:?} is not in the kernel"));
        }
    }
    if !kernel.is_empty() && minor_rank(&kernel) != kernel.len() {
        return Err(format!("{rows:?}: kernel vectors are dependent"));
    }
    Ok(())
}

pub fn rank_kernel_oracle(seed: u64, samples: usize) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        rank_kernel_case::<Rational>(&mut rng)?;
        rank_kernel_case::<F5>(&mut rng)?;
    }
    Ok(format!("{samples} matrices over Q and over F5"))
}

/// Products of perturbed representatives land in the same class.
pub fn class_product_independence(seed: u64, samples: usize) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for alg in [DgFreeAlgebra::<Rational>::a1(), DgFreeAlgebra::a2()] {
        let n = alg.n();
        let name = alg.name().to_string();
        let coh = Cohomology::new(alg, 6).map_err(|e| e.to_string())?;
        for _ in 0..samples {
            let (d1, d2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let u = coh.basis(d1).map_err(|e| e.to_string())?[0].clone();
            let v = coh.basis(d2).map_err(|e| e.to_string())?[0].clone();
            let expected = coh.class_product(&u, &v).map_err(|e| e.to_string())?;
            let perturb = |rng: &mut ChaCha8Rng, rep: &GradedElement<Rational>, d: usize| {
                let a = random_homogeneous::<Rational>(rng, n, d - 1);
                rep.checked_add(&coh.algebra().differential(&a).unwrap())
                    .unwrap()
            };
            let u2 = perturb(&mut rng, u.representative(), d1);
            let v2 = perturb(&mut rng, v.representative(), d2);
            let got = coh
                .class_of(&u2.checked_mul(&v2).unwrap())
                .map_err(|e| e.to_string())?;
            if got != expected {
                return Err(format!(
                    "{name}: product of perturbed H^{d1} x H^{d2} representatives changed class"
                ));
            }
        }
    }
    Ok(format!("{samples} perturbations per preset"))
}

/// `d_F^2 = 0` on random module elements.
pub fn module_square_zero(seed: u64, samples: usize) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for f in [SemifreeModule::<Rational>::f1(), SemifreeModule::f2()] {
        let n = f.algebra().n();
        for _ in 0..samples {
            let coords = (0..f.rank())
                .map(|_| random_element::<Rational>(&mut rng, n, 3))
                .collect();
            let e = f.element(coords).map_err(|e| e.to_string())?;
            let dd = f.differential(&f.differential(&e).unwrap()).unwrap();
            if !dd.is_zero() {
                return Err(format!("{}: d_F^2 != 0", f.name()));
            }
        }
    }
    Ok(format!("{samples} elements per module"))
}
