use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dgfree::aut::{aut_report, brute_force_aut, AutReport, BruteForceEntry, ParametrizedFamily};
use dgfree::cohomology::{
    ring_presentation_check, Cohomology, CohomologyReport, PresentationFile, PresentationReport,
    RingPresentation, DEFAULT_MAX_DEGREE, EXTENDED_CAP, HARD_CAP,
};
use dgfree::dg::{
    crisscross_check, d_squared_on_generators, AlgebraFile, CrisscrossTuple, DgFreeAlgebra,
};
use dgfree::ext::{ExtAlgebra, ExtReport};
use dgfree::picard::{self, GroupId, NonIsomorphismCertificate};
use dgfree::semifree::{
    koszul_certificate, maurer_cartan_check, minimality_check, KoszulVerdict, ModuleFile,
    SemifreeModule,
};
use dgfree::{Error, Field, FieldKind, Fp, Rational};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("input error: {0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(m) => Failure::Verification(m),
            other => Failure::Input(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Report plus whether everything in it verified.
struct Outcome {
    json: String,
    verified: bool,
}

impl Outcome {
    fn new<T: Serialize>(value: &T, verified: bool) -> CliResult<Self> {
        let json =
            serde_json::to_string_pretty(value).map_err(|e| Failure::Input(e.to_string()))?;
        Ok(Outcome { json, verified })
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "dgfree",
    version,
    about = "Exact computations for DG free algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a matrix tuple defines a differential.
    CheckCrisscross {
        /// Preset (a1, a2) or algebra JSON file.
        algebra: String,
    },
    /// Cohomology dimensions and bases up to a degree.
    Cohomology {
        algebra: String,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
        /// Check a ring presentation (preset name or JSON file). Without a
        /// value, the algebra's own preset presentation is used.
        #[arg(long, num_args = 0..=1, default_missing_value = "")]
        verify_presentation: Option<String>,
    },
    /// Maurer-Cartan, minimality, homology and Koszul certificate of a resolution.
    Resolution {
        algebra: String,
        /// Preset (f1, f2) or module JSON file.
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
    },
    /// Ext-algebra of a resolution, optionally with its automorphism group.
    Ext {
        algebra: String,
        #[arg(long)]
        module: String,
        /// Also verify the automorphism family and enumerate over F_p.
        #[arg(long)]
        aut: bool,
        #[arg(long, default_value_t = 5)]
        prime: u64,
    },
    /// Invariant-subgroup comparison of the two derived Picard groups.
    DpicCompare {
        #[arg(long, default_value_t = 5)]
        prime: u64,
        #[arg(long, value_enum, default_value_t = GroupArg::G1)]
        left: GroupArg,
        #[arg(long, value_enum, default_value_t = GroupArg::G2)]
        right: GroupArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupArg {
    G1,
    G2,
}

impl From<GroupArg> for GroupId {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::G1 => GroupId::G1,
            GroupArg::G2 => GroupId::G2,
        }
    }
}

const PRIMES: &str =
    "5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97";

/// Bind the const `$P` to the runtime prime `$p` and evaluate `$body`.
macro_rules! with_prime {
    ($p:expr, $P:ident => $body:expr) => {
        with_prime!(@arms $p, $P, $body; 5 7 11 13 17 19 23 29 31 37 41 43 47 53 59 61 67 71 73 79 83 89 97)
    };
    (@arms $p:expr, $P:ident, $body:expr; $($q:literal)*) => {
        match $p {
            $($q => {
                const $P: u64 = $q;
                $body
            })*
            p if p < 5 || !dgfree::scalar::is_prime(p) => Err(Failure::from(Error::InvalidPrime(p))),
            p => Err(Failure::Input(format!("prime {p} is not supported; choose one of {PRIMES}"))),
        }
    };
}

/// Bind the type `$F` to the field named by `$kind`.
macro_rules! with_field {
    ($kind:expr, $F:ident => $body:expr) => {
        match $kind {
            FieldKind::Rational => {
                type $F = Rational;
                $body
            }
            FieldKind::Prime { p } => with_prime!(p, P => {
                type $F = Fp<P>;
                $body
            }),
        }
    };
}

enum AlgebraSource {
    Preset(&'static str),
    File(AlgebraFile),
}

impl AlgebraSource {
    fn resolve(arg: &str) -> CliResult<Self> {
        match arg {
            "a1" => Ok(AlgebraSource::Preset("a1")),
            "a2" => Ok(AlgebraSource::Preset("a2")),
            path => Ok(AlgebraSource::File(AlgebraFile::from_json(&read(
                Path::new(path),
            )?)?)),
        }
    }

    fn field(&self) -> FieldKind {
        match self {
            AlgebraSource::Preset(_) => FieldKind::Rational,
            AlgebraSource::File(f) => f.field,
        }
    }

    fn name(&self, arg: &str) -> String {
        match self {
            AlgebraSource::Preset(p) => (*p).to_string(),
            AlgebraSource::File(_) => Path::new(arg)
                .file_stem()
                .map_or(arg.into(), |s| s.to_string_lossy().into_owned()),
        }
    }

    fn tuple<F: Field>(&self) -> CliResult<CrisscrossTuple<F>> {
        match self {
            AlgebraSource::Preset(p) => Ok(DgFreeAlgebra::<F>::preset(p)
                .expect("known preset")
                .tuple()
                .clone()),
            AlgebraSource::File(f) => Ok(f.tuple::<F>()?),
        }
    }

    /// Same data read over another field; rational files reduce mod `p`.
    fn tuple_over<F: Field>(&self) -> CliResult<CrisscrossTuple<F>> {
        match self {
            AlgebraSource::File(f) if f.field != F::kind() => {
                let matrices = f
                    .matrices
                    .iter()
                    .map(|m| {
                        m.iter()
                            .map(|r| r.iter().map(|c| c.to_field::<F>()).collect())
                            .collect()
                    })
                    .collect::<dgfree::Result<Vec<Vec<Vec<F>>>>>()?;
                Ok(CrisscrossTuple::new(matrices)?)
            }
            _ => self.tuple(),
        }
    }

    fn algebra<F: Field>(&self, arg: &str) -> CliResult<DgFreeAlgebra<F>> {
        match self {
            AlgebraSource::Preset(p) => Ok(DgFreeAlgebra::preset(p).expect("known preset")),
            AlgebraSource::File(_) => Ok(DgFreeAlgebra::new(self.name(arg), self.tuple_over()?)?),
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn max_degree_cap() -> CliResult<usize> {
    match std::env::var("DGFREE_MAX_DEGREE") {
        Err(_) => Ok(HARD_CAP),
        Ok(v) => {
            let cap: usize = v.trim().parse().map_err(|_| {
                Failure::Input(format!("DGFREE_MAX_DEGREE must be a number, got `{v}`"))
            })?;
            if cap > EXTENDED_CAP {
                return Err(Failure::Input(format!(
                    "DGFREE_MAX_DEGREE may not exceed {EXTENDED_CAP}"
                )));
            }
            Ok(cap)
        }
    }
}

fn check_degree(requested: usize) -> CliResult<()> {
    let max = max_degree_cap()?;
    if requested > max {
        return Err(Error::DegreeCap { requested, max }.into());
    }
    Ok(())
}

#[derive(Serialize)]
struct CrisscrossWitness {
    /// One-based generator indices.
    i: usize,
    j: usize,
    sum: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct CrisscrossReport {
    algebra: String,
    field: String,
    generators: usize,
    crisscross: bool,
    d_squared_zero: bool,
    witness: Option<CrisscrossWitness>,
    d_squared_witness: Option<String>,
}

fn check_crisscross<F: Field>(src: &AlgebraSource, name: String) -> CliResult<Outcome> {
    let t = src.tuple::<F>()?;
    let cc = crisscross_check(&t);
    let sq = d_squared_on_generators(&t);
    let render = |e: &dgfree::free_algebra::GradedElement<F>| e.render('x');
    let report = CrisscrossReport {
        algebra: name,
        field: F::kind().to_string(),
        generators: t.n(),
        crisscross: cc.holds,
        d_squared_zero: sq.holds,
        witness: cc.witness.map(|(i, j, s)| CrisscrossWitness {
            i: i + 1,
            j: j + 1,
            sum: s
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }),
        d_squared_witness: sq
            .witness
            .map(|(i, e)| format!("d(d(x{})) = {}", i + 1, render(&e))),
    };
    if cc.holds != sq.holds {
        return Err(Failure::Verification(
            "crisscross and d^2 = 0 disagree".into(),
        ));
    }
    let ok = report.crisscross;
    Outcome::new(&report, ok)
}

#[derive(Serialize)]
struct CohomologyOutput {
    #[serde(flatten)]
    report: CohomologyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    presentation: Option<PresentationReport>,
}

fn cohomology<F: Field>(
    src: &AlgebraSource,
    arg: &str,
    max_degree: usize,
    presentation: Option<&str>,
) -> CliResult<Outcome> {
    let cap = max_degree_cap()?;
    let alg = src.algebra::<F>(arg)?;
    let coh = Cohomology::with_cap(alg, max_degree, cap)?;
    coh.prefetch();
    let report = coh.report()?;
    let presentation = match presentation {
        None => None,
        Some(which) => {
            let which = if which.is_empty() { arg } else { which };
            let pres = match RingPresentation::<F>::preset(which) {
                Some(p) => p,
                None => {
                    let file: PresentationFile = serde_json::from_str(&read(Path::new(which))?)
                        .map_err(|e| Failure::Input(format!("presentation file: {e}")))?;
                    RingPresentation::from_file(&file, coh.algebra().n())?
                }
            };
            Some(ring_presentation_check(&coh, &pres, max_degree)?)
        }
    };
    let ok = presentation.as_ref().is_none_or(|p| p.all_pass);
    Outcome::new(
        &CohomologyOutput {
            report,
            presentation,
        },
        ok,
    )
}

fn load_module<F: Field>(
    src: &AlgebraSource,
    alg_arg: &str,
    module: &str,
) -> CliResult<SemifreeModule<F>> {
    if let Some(f) = SemifreeModule::<F>::preset(module) {
        let expected = f.algebra().name().to_string();
        if !matches!(src, AlgebraSource::Preset(p) if *p == expected) {
            return Err(Failure::Input(format!(
                "module {module} is defined over {expected}, not {alg_arg}"
            )));
        }
        return Ok(f);
    }
    let file = ModuleFile::from_json(&read(Path::new(module))?)?;
    if file.algebra != alg_arg && file.algebra != src.name(alg_arg) {
        return Err(Failure::Input(format!(
            "module file is over `{}`, but `{alg_arg}` was given",
            file.algebra
        )));
    }
    let name = Path::new(module)
        .file_stem()
        .map_or(module.into(), |s| s.to_string_lossy().into_owned());
    Ok(SemifreeModule::from_file(
        &file,
        src.algebra::<F>(alg_arg)?,
        &name,
    )?)
}

#[derive(Serialize)]
struct MaurerCartanEntry {
    holds: bool,
    /// One-based `(i, j)` and the residual `d(D_ij) - sum_k D_ik D_kj`.
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<(usize, usize, String)>,
}

#[derive(Serialize)]
struct ResolutionReport {
    algebra: String,
    module: String,
    field: String,
    rank: usize,
    maurer_cartan: MaurerCartanEntry,
    minimal: bool,
    homology_dims: Option<Vec<usize>>,
    koszul: KoszulVerdict,
}

fn resolution<F: Field>(
    src: &AlgebraSource,
    arg: &str,
    module: &str,
    max_degree: usize,
) -> CliResult<Outcome> {
    check_degree(max_degree)?;
    let f = load_module::<F>(src, arg, module)?;
    let mc = maurer_cartan_check(&f);
    let report = ResolutionReport {
        algebra: f.algebra().name().to_string(),
        module: f.name().to_string(),
        field: F::kind().to_string(),
        rank: f.rank(),
        maurer_cartan: MaurerCartanEntry {
            holds: mc.holds,
            witness: mc
                .witness
                .as_ref()
                .map(|(i, j, r)| (i + 1, j + 1, f.algebra().render(r))),
        },
        minimal: minimality_check(&f),
        homology_dims: mc.holds.then(|| f.homology_dims(max_degree)),
        koszul: koszul_certificate(&f, max_degree),
    };
    let ok = report.koszul.is_issued();
    Outcome::new(&report, ok)
}

#[derive(Serialize)]
struct ExtOutput {
    #[serde(flatten)]
    ext: ExtReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    aut: Option<AutOutput>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum AutOutput {
    Family(AutReport),
    BruteForceOnly {
        dim: usize,
        family: Option<String>,
        brute_force: BruteForceEntry,
    },
}

fn aut_over<const P: u64>(
    src: &AlgebraSource,
    arg: &str,
    module: &str,
    ext_q: &ExtAlgebra<Rational>,
) -> CliResult<(AutOutput, bool)> {
    let f = load_module::<Fp<P>>(src, arg, module)?;
    let ext_p = ExtAlgebra::compute(&f)?;
    let alg_p = ext_p.algebra();
    if alg_p.dim() != ext_q.algebra().dim() {
        return Err(Failure::Verification(format!(
            "Ext has dimension {} over F_{P} but {} over Q",
            alg_p.dim(),
            ext_q.algebra().dim()
        )));
    }
    let family = match ext_q.algebra().dim() {
        3 => Some(ParametrizedFamily::e1()),
        4 => Some(ParametrizedFamily::e2()),
        _ => None,
    };
    match family {
        Some(fam) if ext_q.power.is_some() && ext_p.power.is_some() => {
            let r = aut_report::<P>(ext_q.algebra(), Some(alg_p), &fam)?;
            let bf = r.brute_force.as_ref().expect("prime field requested");
            let ok =
                r.family_verified && r.closure_verified && bf.group_axioms && bf.matches_family;
            Ok((AutOutput::Family(r), ok))
        }
        _ => {
            let bf = brute_force_aut(alg_p)?;
            let entry = BruteForceEntry {
                p: P,
                count: bf.automorphisms.len(),
                free_unknowns: bf.free_unknowns,
                group_axioms: bf.group_axioms,
                matches_family: false,
            };
            let ok = entry.group_axioms;
            Ok((
                AutOutput::BruteForceOnly {
                    dim: alg_p.dim(),
                    family: None,
                    brute_force: entry,
                },
                ok,
            ))
        }
    }
}

fn ext(
    src: &AlgebraSource,
    arg: &str,
    module: &str,
    aut: bool,
    prime: u64,
    seed: u64,
) -> CliResult<Outcome> {
    if src.field() != FieldKind::Rational {
        return Err(Failure::Input(
            "ext expects an algebra over Q; use --prime for the finite-field count".into(),
        ));
    }
    let f = load_module::<Rational>(src, arg, module)?;
    let e = ExtAlgebra::compute(&f)?;
    let report = e.report(f.name(), seed);
    let (aut, ok) = if aut {
        let (a, ok) = with_prime!(prime, P => aut_over::<P>(src, arg, module, &e))?;
        (Some(a), ok)
    } else {
        (None, true)
    };
    Outcome::new(&ExtOutput { ext: report, aut }, ok)
}

#[derive(Serialize)]
struct Comparison {
    p: u64,
    left: GroupId,
    right: GroupId,
    left_count: usize,
    right_count: usize,
    verdict: String,
}

fn dpic<const P: u64>(left: GroupId, right: GroupId, seed: u64) -> CliResult<Outcome> {
    if (left, right) == (GroupId::G1, GroupId::G2) {
        let cert: NonIsomorphismCertificate = picard::non_isomorphism_certificate::<P>(seed)?;
        let ok = cert.verdict == picard::VERDICT_DIFFERENT;
        return Outcome::new(&cert, ok);
    }
    let (l, r, verdict) = picard::compare::<P>(left, right)?;
    Outcome::new(
        &Comparison {
            p: P,
            left,
            right,
            left_count: l,
            right_count: r,
            verdict: verdict.into(),
        },
        true,
    )
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::CheckCrisscross { algebra } => {
            let src = AlgebraSource::resolve(algebra)?;
            let name = src.name(algebra);
            with_field!(src.field(), F => check_crisscross::<F>(&src, name))
        }
        Command::Cohomology {
            algebra,
            max_degree,
            verify_presentation,
        } => {
            let src = AlgebraSource::resolve(algebra)?;
            with_field!(src.field(), F => cohomology::<F>(&src, algebra, *max_degree, verify_presentation.as_deref()))
        }
        Command::Resolution {
            algebra,
            module,
            max_degree,
        } => {
            let src = AlgebraSource::resolve(algebra)?;
            with_field!(src.field(), F => resolution::<F>(&src, algebra, module, *max_degree))
        }
        Command::Ext {
            algebra,
            module,
            aut,
            prime,
        } => {
            let src = AlgebraSource::resolve(algebra)?;
            ext(&src, algebra, module, *aut, *prime, cli.seed)
        }
        Command::DpicCompare { prime, left, right } => {
            with_prime!(*prime, P => dpic::<P>((*left).into(), (*right).into(), cli.seed))
        }
    }
}

fn emit(cli: &Cli, json: &str) -> CliResult<()> {
    match &cli.output {
        Some(path) => fs::write(path, format!("{json}\n"))
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{json}").map_err(|e| Failure::Input(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = run(&cli).and_then(|o| emit(&cli, &o.json).map(|_| o.verified));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("dgfree: {e}");
            ExitCode::from(match e {
                Failure::Input(_) => 2,
                Failure::Verification(_) => 1,
            })
        }
    }
}
