//! One line per criterion. Run with `--nocapture` to see them.

mod common;

use std::time::Instant;

use dgfree::aut::{
    brute_force_aut, family_closure_check, family_membership_check, ParametrizedFamily,
};
use dgfree::cohomology::{ring_presentation_check, CheckKind, Cohomology, RingPresentation};
use dgfree::dg::{crisscross_check, d_squared_on_generators, DgFreeAlgebra};
use dgfree::ext::{
    constraints_match, frobenius_form, parse_constraint_chains, ExtAlgebra, Recognition,
    StructureConstantAlgebra,
};
use dgfree::picard::{non_isomorphism_certificate, GroupId, VERDICT_DIFFERENT};
use dgfree::semifree::{koszul_certificate, maurer_cartan_check, minimality_check, SemifreeModule};
use dgfree::{Fp, Rational};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: dgfree::Error) -> String {
    e.to_string()
}

fn crisscross() -> Outcome {
    for alg in [DgFreeAlgebra::<Rational>::a1(), DgFreeAlgebra::a2()] {
        ensure(
            crisscross_check(alg.tuple()).holds,
            format!("{} fails crisscross", alg.name()),
        )?;
        ensure(
            d_squared_on_generators(alg.tuple()).holds,
            format!("{} has d^2 != 0", alg.name()),
        )?;
    }
    Ok("a1, a2".into())
}

fn cohomology_dims() -> Outcome {
    let expected = [
        ("a1", "x3", "x1*x3 + x3*x1"),
        ("a2", "y3", "y1^2 + y2*y3 + y3*y2"),
    ];
    for (alg, (name, h1, h2)) in [DgFreeAlgebra::<Rational>::a1(), DgFreeAlgebra::a2()]
        .into_iter()
        .zip(expected)
    {
        let coh = Cohomology::new(alg, 8).map_err(err)?;
        coh.prefetch();
        for d in 0..=8 {
            ensure(
                coh.dim(d).map_err(err)? == 1,
                format!("{name}: dim H^{d} != 1"),
            )?;
        }
        let pair = (
            coh.nullity(2).map_err(err)?,
            coh.coboundary_rank(2).map_err(err)?,
        );
        ensure(
            pair == (3, 2),
            format!("{name}: (nullity, rank) at d=2 is {pair:?}"),
        )?;
        for (d, rep) in [(1, h1), (2, h2)] {
            let z = coh.algebra().element(rep).map_err(err)?;
            let class = coh.class_of(&z).map_err(err)?;
            let basis = coh.basis(d).map_err(err)?;
            ensure(!class.is_zero(), format!("{name}: {rep} is exact"))?;
            // dim 1: the class is a nonzero multiple of the basis class
            let coords = coh.coordinates(&class).map_err(err)?;
            ensure(
                coords.len() == 1 && coords[0] != Rational::from_integer(0.into()),
                format!("{name}: {rep} coordinates"),
            )?;
            let shown = coh.algebra().render(basis[0].representative());
            ensure(
                basis[0].representative() == &z,
                format!("{name}: H^{d} basis is {shown}"),
            )?;
        }
    }
    Ok("dims 1 for d <= 8, (3, 2) at d = 2, representatives match".into())
}

fn presentations() -> Outcome {
    let witnesses = [
        ("x1^2", "x3*(x1*x3 + x3*x1) - (x1*x3 + x3*x1)*x3"),
        (
            "y1*y2 + y2*y1",
            "y3*(y1^2 + y2*y3 + y3*y2) - (y1^2 + y2*y3 + y3*y2)*y3",
        ),
    ];
    let presets = [
        (DgFreeAlgebra::<Rational>::a1(), RingPresentation::a1()),
        (DgFreeAlgebra::a2(), RingPresentation::a2()),
    ];
    let mut checks = 0;
    for ((alg, pres), (pre, commutator)) in presets.into_iter().zip(witnesses) {
        let name = alg.name().to_string();
        let coh = Cohomology::new(alg, 8).map_err(err)?;
        let report = ring_presentation_check(&coh, &pres, 8).map_err(err)?;
        if let Some(bad) = report.checks.iter().find(|c| !c.pass) {
            return Err(format!("{name}: {} ({:?})", bad.name, bad.witness));
        }
        for kind in [
            CheckKind::Generator,
            CheckKind::Relation,
            CheckKind::Commutation,
            CheckKind::Spanning,
        ] {
            ensure(
                report.checks.iter().any(|c| c.kind == kind),
                format!("{name}: no {kind:?} check"),
            )?;
        }
        checks += report.checks.len();
        // explicit coboundary for the commutator of the two generators
        let a = coh.algebra();
        let lhs = a.differential(&a.element(pre).map_err(err)?).map_err(err)?;
        let (g, h) = (&pres.generators[0].1, &pres.generators[1].1);
        let raw = g
            .checked_mul(h)
            .map_err(err)?
            .checked_sub(&h.checked_mul(g).map_err(err)?)
            .map_err(err)?;
        ensure(lhs == raw, format!("{name}: d({pre}) != {commutator}"))?;
    }
    Ok(format!(
        "{checks} checks at N = 8, d(x1^2) and d(y1*y2 + y2*y1) exact"
    ))
}

fn resolutions() -> Outcome {
    for f in [SemifreeModule::<Rational>::f1(), SemifreeModule::f2()] {
        ensure(
            maurer_cartan_check(&f).holds,
            format!("{}: Maurer-Cartan", f.name()),
        )?;
        ensure(minimality_check(&f), format!("{}: not minimal", f.name()))?;
        let dims = f.homology_dims(6);
        ensure(
            dims == vec![1, 0, 0, 0, 0, 0, 0],
            format!("{}: H(F) = {dims:?}", f.name()),
        )?;
        ensure(
            koszul_certificate(&f, 6).is_issued(),
            format!("{}: certificate refused", f.name()),
        )?;
    }
    Ok("f1, f2 certified".into())
}

fn ext_algebras() -> Outcome {
    let lists: [&[&str]; 2] = [
        &["a12=a13=a23=0", "a11=a22=a33", "a21=a32"],
        &[
            "a12=a13=a14=a23=a24=a34=0",
            "a11=a22=a33=a44",
            "a21=a32=a43",
            "a42=a31",
        ],
    ];
    for ((m, f), list) in [
        (3, SemifreeModule::<Rational>::f1()),
        (4, SemifreeModule::f2()),
    ]
    .into_iter()
    .zip(lists)
    {
        let e = ExtAlgebra::compute(&f).map_err(err)?;
        ensure(
            e.commutant.dim() == m,
            format!("{}: commutant dim {}", f.name(), e.commutant.dim()),
        )?;
        let forms = parse_constraint_chains::<Rational>(list, m).map_err(err)?;
        ensure(
            constraints_match(&e.commutant, &forms),
            format!("{}: constraints differ from the listed ones", f.name()),
        )?;
        ensure(
            matches!(e.recognition, Recognition::Found { order, .. } if order == m),
            format!("{}: not k[X]/(X^{m})", f.name()),
        )?;
        ensure(
            e.algebra() == &StructureConstantAlgebra::truncated_polynomial(m),
            format!("{}: power basis", f.name()),
        )?;
        ensure(
            e.order_independent,
            format!("{}: composition order matters", f.name()),
        )?;
        let frob = frobenius_form(e.algebra(), 0)
            .ok_or_else(|| format!("{}: no Frobenius form", f.name()))?;
        let mut top = vec![Rational::from_integer(0.into()); m];
        top[m - 1] = Rational::from_integer(1.into());
        ensure(
            frob.symmetric && frob.functional == top,
            format!("{}: functional {:?}", f.name(), frob.functional),
        )?;
    }
    Ok("dims 3, 4; k[X]/(X^3), k[X]/(X^4); symmetric Frobenius".into())
}

fn brute<const P: u64>(fam: &ParametrizedFamily, m: usize, expected: usize) -> Result<(), String> {
    let alg = StructureConstantAlgebra::<Fp<P>>::truncated_polynomial(m);
    let bf = brute_force_aut(&alg).map_err(err)?;
    ensure(
        bf.automorphisms.len() == expected,
        format!(
            "{}: {} automorphisms over F{P}",
            fam.name,
            bf.automorphisms.len()
        ),
    )?;
    ensure(
        bf.group_axioms,
        format!("{}: group axioms over F{P}", fam.name),
    )?;
    ensure(
        fam.enumerate_fp::<P>().map_err(err)? == bf.automorphisms,
        format!("{}: family differs over F{P}", fam.name),
    )
}

fn automorphisms() -> Outcome {
    for (fam, m) in [(ParametrizedFamily::e1(), 3), (ParametrizedFamily::e2(), 4)] {
        let alg = StructureConstantAlgebra::<Rational>::truncated_polynomial(m);
        let v = family_membership_check(&fam, &alg).map_err(err)?;
        ensure(
            v.holds && v.determinant_is_unit,
            format!("{}: membership {:?}", fam.name, v.failure),
        )?;
        ensure(
            family_closure_check(&fam).map_err(err)?.holds,
            format!("{}: closure", fam.name),
        )?;
    }
    brute::<5>(&ParametrizedFamily::e1(), 3, 20)?;
    brute::<5>(&ParametrizedFamily::e2(), 4, 100)?;
    brute::<7>(&ParametrizedFamily::e1(), 3, 42)?;
    brute::<7>(&ParametrizedFamily::e2(), 4, 294)?;
    Ok("families verified; 20, 100 over F5; 42, 294 over F7".into())
}

fn picard() -> Outcome {
    let cert = non_isomorphism_certificate::<5>(0).map_err(err)?;
    for g in ["g1", "g2"] {
        for check in [
            "sigma_homomorphism",
            "commutator_witness",
            "conjugation_action",
        ] {
            let name = format!("{g}_{check}");
            let c = cert
                .symbolic_checks
                .iter()
                .find(|c| c.name == name)
                .ok_or_else(|| format!("{name} missing"))?;
            ensure(c.pass && c.random_points_pass, format!("{name} failed"))?;
        }
    }
    ensure(
        (cert.census.g1, cert.census.g2) == (2, 4),
        format!("census {:?}", (cert.census.g1, cert.census.g2)),
    )?;
    ensure(
        cert.census.g2_listed_subgroups_present,
        "listed G2 subgroups missing",
    )?;
    ensure(
        cert.finite_checks.iter().all(|c| c.pass == Some(true)),
        "commutator subgroup over F5",
    )?;
    ensure(cert.verdict == VERDICT_DIFFERENT, cert.verdict.clone())?;
    let _ = GroupId::G1;
    Ok(format!("census (2, 4) over F5, verdict {}", cert.verdict))
}

fn properties() -> Outcome {
    let parts = [
        common::crisscross_equivalence()?,
        common::leibniz_and_square_zero(0, 200)?,
        common::rank_kernel_oracle(0, 100)?,
        common::class_product_independence(0, 50)?,
    ];
    Ok(parts.join("; "))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("crisscross validation", crisscross),
        ("cohomology dimensions", cohomology_dims),
        ("ring presentations", presentations),
        ("resolutions", resolutions),
        ("Ext-algebras", ext_algebras),
        ("automorphism groups", automorphisms),
        ("Picard certificate", picard),
        ("property suites", properties),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({secs:.2}s) {detail}", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL {name} ({secs:.2}s) {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
