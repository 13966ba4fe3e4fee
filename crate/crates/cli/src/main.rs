//! `duoidal`: products, structure and measuring checks, convolution, duals,
//! generating functions and the seeded selftest.
//!
//! Exit status: 0 on success, 1 when a check fails, 2 on input or schema errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use duoidal::duoidal::{braided_cauchy, check_duoidal, check_duoidal_species, Duoidal, DuoidalPair, Report};
use duoidal::graded;
use duoidal::linalg::{format_rational, parse_rational, Rational};
use duoidal::measuring::{check_measuring, check_transpose, convolution_monoid, universal_factorization_check};
use duoidal::random::Gen;
use duoidal::selftest;
use duoidal::serial::{canonical_json, load, save, Document};
use duoidal::species::{self, egf, SymmetricSequence};
use duoidal::structures::{check_structure, dual, Structure, StructureReport};

#[derive(Parser)]
#[command(name = "duoidal", version, about = "Exact computations with graded objects, species, duoidal structures and measurings")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Hadamard,
    Cauchy,
    Substitution,
}

#[derive(Subcommand)]
enum Command {
    /// Product of two graded objects or two species.
    Product {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Group order bound for the coinvariants of the species substitution product.
        #[arg(long, default_value_t = 720)]
        max_group: usize,
        a: PathBuf,
        b: PathBuf,
    },
    /// Check the axioms of a monoid, comonoid, operad or cooperad.
    CheckStructure { file: PathBuf },
    /// Check the duoidal axioms on a samples document, or on seeded random samples.
    CheckDuoidal {
        #[arg(long)]
        pair: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        truncation: usize,
        /// Use random species samples instead of graded ones.
        #[arg(long)]
        species: bool,
        #[arg(long, default_value_t = 5)]
        count: usize,
        file: Option<PathBuf>,
    },
    /// Check that a candidate is a measuring, directly and through its transpose.
    CheckMeasuring {
        #[arg(long)]
        pair: String,
        /// Braiding parameter for `--pair cauchy`.
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        file: PathBuf,
    },
    /// The convolution monoid on the internal hom from a comonoid to a monoid.
    Convolve {
        #[arg(long)]
        pair: String,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        comonoid: PathBuf,
        monoid: PathBuf,
    },
    /// The dual (co)monoid or (co)operad.
    Dual { file: PathBuf },
    /// Coefficients of the Hilbert series.
    Hilbert { file: PathBuf },
    /// Coefficients of the exponential generating function of a species.
    Egf { file: PathBuf },
    /// Check a factorization through a universal measuring.
    FactorCheck {
        #[arg(long)]
        pair: String,
        file: PathBuf,
    },
    /// Rewrite a document in canonical form.
    Canonicalize { file: PathBuf },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

/// Exit 2: the input could not be used.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

struct Outcome {
    passed: bool,
    text: String,
    json: Value,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { passed: true, text, json }
    }
}

fn read_doc(path: &Path) -> Result<Document, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    load(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_structure(path: &Path) -> Result<Structure, InputError> {
    match read_doc(path)? {
        Document::Structure(s) => Ok(s),
        d => Err(InputError(format!("{}: expected a structure, got a {}", path.display(), d.kind().tag()))),
    }
}

fn parse_q(q: Option<&str>) -> Result<Rational, InputError> {
    match q {
        None => Ok(Rational::from_integer(1.into())),
        Some(s) => parse_rational(s).map_err(|e| InputError(format!("--q: {e}"))),
    }
}

/// A duoidal pair tag, or `cauchy` for the braided Cauchy structure.
fn duoidal_data(pair: &str, q: Option<&str>) -> Result<Duoidal, InputError> {
    if pair == "cauchy" {
        let q = parse_q(q)?;
        if q == Rational::from_integer(0.into()) {
            return Err(InputError("--q must be nonzero".into()));
        }
        return Ok(braided_cauchy(q));
    }
    if q.is_some() {
        return Err(InputError("--q applies only to --pair cauchy".into()));
    }
    Ok(pair.parse::<DuoidalPair>()?.data())
}

fn structure_report_json(r: &StructureReport) -> Value {
    let instances: Vec<Value> = r
        .instances
        .iter()
        .map(|i| {
            json!({
                "axiom": i.axiom,
                "indices": i.indices,
                "passed": i.passed(),
                "first_difference": i.difference.map(|(a, b)| vec![a, b]),
            })
        })
        .collect();
    json!({ "passed": r.passed(), "instances": instances })
}

fn report_json(r: &Report) -> Value {
    let results: Vec<Value> = r
        .results
        .iter()
        .map(|a| {
            let diff = a.difference.as_ref().map(|d| {
                json!({
                    "degree": d.degree,
                    "source": d.source,
                    "target": d.target,
                    "left": format_rational(&d.left),
                    "right": format_rational(&d.right),
                })
            });
            json!({ "name": a.name, "passed": a.passed(), "difference": diff })
        })
        .collect();
    json!({ "passed": r.passed(), "results": results })
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn document_outcome(doc: Document, summary: String) -> Outcome {
    let text = save(&doc);
    let json: Value = serde_json::from_str(&text).expect("saved documents parse");
    Outcome::ok(format!("{summary}\n{text}"), json)
}

fn dims_line(dims: &[usize]) -> String {
    dims.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn product(kind: Kind, max_group: usize, a: &Path, b: &Path) -> Result<Outcome, InputError> {
    let doc = match (read_doc(a)?, read_doc(b)?) {
        (Document::GradedObject(v), Document::GradedObject(w)) => Document::GradedObject(match kind {
            Kind::Hadamard => graded::hadamard(&v, &w)?,
            Kind::Cauchy => graded::cauchy(&v, &w)?,
            Kind::Substitution => graded::substitution(&v, &w)?,
        }),
        (Document::Species(x), Document::Species(y)) => Document::Species(match kind {
            Kind::Hadamard => species::species_hadamard(&x, &y)?,
            Kind::Cauchy => species::species_cauchy(&x, &y)?,
            Kind::Substitution => species::species_substitution_bounded(&x, &y, max_group)?.result,
        }),
        (x, y) => {
            return Err(InputError(format!(
                "expected two graded objects or two species, got {} and {}",
                x.kind().tag(),
                y.kind().tag()
            )))
        }
    };
    let dims = match &doc {
        Document::GradedObject(v) => v.dims().to_vec(),
        Document::Species(s) => s.underlying().dims().to_vec(),
        _ => unreachable!("products are graded objects or species"),
    };
    Ok(document_outcome(doc, format!("dims: {}", dims_line(&dims))))
}

fn check_structure_cmd(path: &Path) -> Result<Outcome, InputError> {
    let s = read_structure(path)?;
    let r = check_structure(&s);
    let text = format!("{}{}: {} axiom instances checked\n", r, verdict(r.passed()), r.instances.len());
    Ok(Outcome { passed: r.passed(), text, json: structure_report_json(&r) })
}

fn check_duoidal_cmd(
    pair: &str,
    seed: u64,
    truncation: usize,
    species_samples: bool,
    count: usize,
    file: Option<&Path>,
) -> Result<Outcome, InputError> {
    let pair: DuoidalPair = pair.parse()?;
    let mut reports = Vec::new();
    match file {
        Some(path) => match read_doc(path)? {
            Document::Samples(s) => reports.push(check_duoidal(pair, &s)?),
            d => return Err(InputError(format!("expected samples, got a {}", d.kind().tag()))),
        },
        None => {
            let mut g = Gen::new(seed);
            for _ in 0..count {
                let r = if species_samples {
                    check_duoidal_species(pair, &g.species_samples(truncation, 2))?
                } else {
                    check_duoidal(pair, &g.duoidal_samples(pair, truncation, 2))?
                };
                reports.push(r);
            }
        }
    }
    let passed = reports.iter().all(Report::passed);
    let mut text = String::new();
    for (k, r) in reports.iter().enumerate() {
        text.push_str(&format!("sample {k}\n{r}"));
    }
    text.push_str(&format!("{}: {} samples for {pair}\n", verdict(passed), reports.len()));
    let json = json!({ "pair": pair.tag(), "passed": passed, "samples": reports.iter().map(report_json).collect::<Vec<_>>() });
    Ok(Outcome { passed, text, json })
}

fn check_measuring_cmd(pair: &str, q: Option<&str>, path: &Path) -> Result<Outcome, InputError> {
    let d = duoidal_data(pair, q)?;
    let m = match read_doc(path)? {
        Document::Measuring(m) => m,
        x => return Err(InputError(format!("expected a measuring, got a {}", x.kind().tag()))),
    };
    let direct = check_measuring(&d, &m)?;
    let transposed = check_transpose(&d, &m).ok();
    let mut text = format!("measuring squares\n{direct}");
    if let Some(t) = &transposed {
        text.push_str(&format!("transpose monoid map\n{t}"));
    }
    text.push_str(&format!("{}: measuring for {}\n", verdict(direct.passed()), d.name));
    let json = json!({
        "pair": d.name,
        "passed": direct.passed(),
        "measuring": report_json(&direct),
        "transpose": transposed.as_ref().map(structure_report_json),
    });
    Ok(Outcome { passed: direct.passed(), text, json })
}

fn convolve_cmd(pair: &str, q: Option<&str>, z: &Path, v: &Path) -> Result<Outcome, InputError> {
    let d = duoidal_data(pair, q)?;
    let (z, v) = (read_structure(z)?, read_structure(v)?);
    let conv = convolution_monoid(&d, &z, &v)?;
    let r = check_structure(&conv);
    let text = format!("{}{}: convolution structure on {}\n", save(&Document::Structure(conv.clone())), verdict(r.passed()), dims_line(conv.carrier().dims()));
    let json = json!({ "passed": r.passed(), "structure": conv, "check": structure_report_json(&r) });
    Ok(Outcome { passed: r.passed(), text, json })
}

fn dual_cmd(path: &Path) -> Result<Outcome, InputError> {
    let s = dual(&read_structure(path)?)?;
    Ok(document_outcome(Document::Structure(s), "dual:".into()))
}

fn carrier_dims(doc: &Document) -> Result<Vec<usize>, InputError> {
    match doc {
        Document::GradedObject(v) => Ok(graded::hilbert(v)),
        Document::Species(s) => Ok(graded::hilbert(s.underlying())),
        Document::Structure(s) => Ok(graded::hilbert(s.carrier())),
        d => Err(InputError(format!("no carrier in a {} document", d.kind().tag()))),
    }
}

fn hilbert_cmd(path: &Path) -> Result<Outcome, InputError> {
    let dims = carrier_dims(&read_doc(path)?)?;
    Ok(Outcome::ok(format!("{}\n", dims_line(&dims)), json!({ "coefficients": dims })))
}

fn egf_cmd(path: &Path) -> Result<Outcome, InputError> {
    let seq: SymmetricSequence = match read_doc(path)? {
        Document::Species(s) => s,
        Document::Structure(s) if s.actions().is_some() => s.sequence(),
        Document::GradedObject(v) => SymmetricSequence::trivial(v),
        d => return Err(InputError(format!("expected a species, got a {}", d.kind().tag()))),
    };
    let coeffs: Vec<String> = egf(&seq).iter().map(format_rational).collect();
    Ok(Outcome::ok(format!("{}\n", coeffs.join(" ")), json!({ "coefficients": coeffs })))
}

fn factor_check_cmd(pair: &str, path: &Path) -> Result<Outcome, InputError> {
    let d = duoidal_data(pair, None)?;
    let f = match read_doc(path)? {
        Document::Factorization(f) => f,
        x => return Err(InputError(format!("expected a factorization, got a {}", x.kind().tag()))),
    };
    let r = universal_factorization_check(&d, &f.universal, &f.phi_univ, &f.psi, &f.g, f.other.as_ref())?;
    let unique = match r.unique {
        None => "not compared".to_string(),
        Some(u) => u.to_string(),
    };
    let text = format!(
        "comonoid map: {}\nfactors: {}\nunique: {unique}\n{}: factorization\n",
        r.comonoid_map,
        r.factors,
        verdict(r.passed())
    );
    let json = json!({ "passed": r.passed(), "comonoid_map": r.comonoid_map, "factors": r.factors, "unique": r.unique });
    Ok(Outcome { passed: r.passed(), text, json })
}

fn canonicalize_cmd(path: &Path) -> Result<Outcome, InputError> {
    let doc = read_doc(path)?;
    let text = save(&doc);
    let json: Value = serde_json::from_str(&text).expect("saved documents parse");
    Ok(Outcome::ok(text, json))
}

fn selftest_cmd(seed: u64) -> Outcome {
    let r = selftest::run(seed);
    let criteria: Vec<Value> = r
        .criteria
        .iter()
        .map(|c| json!({ "id": c.id, "name": c.name, "passed": c.passed, "detail": c.detail }))
        .collect();
    let json = json!({ "seed": r.seed, "passed": r.passed(), "criteria": criteria });
    Outcome { passed: r.passed(), text: r.to_string(), json }
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Product { kind, max_group, a, b } => product(*kind, *max_group, a, b),
        Command::CheckStructure { file } => check_structure_cmd(file),
        Command::CheckDuoidal { pair, seed, truncation, species, count, file } => {
            check_duoidal_cmd(pair, *seed, *truncation, *species, *count, file.as_deref())
        }
        Command::CheckMeasuring { pair, q, file } => check_measuring_cmd(pair, q.as_deref(), file),
        Command::Convolve { pair, q, comonoid, monoid } => convolve_cmd(pair, q.as_deref(), comonoid, monoid),
        Command::Dual { file } => dual_cmd(file),
        Command::Hilbert { file } => hilbert_cmd(file),
        Command::Egf { file } => egf_cmd(file),
        Command::FactorCheck { pair, file } => factor_check_cmd(pair, file),
        Command::Canonicalize { file } => canonicalize_cmd(file),
        Command::Selftest { seed } => Ok(selftest_cmd(*seed)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => print!("{}", canonical_json(&out.json)),
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
