//! Command dispatch for the `semicentre` binary.
//!
//! [`run`] never touches the process: it returns the exit code and the text
//! destined for stdout and stderr, so tests can drive it directly.
//!
//! Exit codes: 0 the property holds or the value was computed, 1 the
//! property fails (a witness is printed), 2 parse or usage error, 3 a
//! precondition of the command is violated.

pub mod format;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use semicentre::casimir::{
    algebraic_relation, casimir_quotient_witness, casimir_witness, monomial_in_ideal,
};
use semicentre::lie::{lie_from_brackets, pnorm_crosscheck, semi_invariants, PnormCheck, PnormWitness};
use semicentre::normality::{
    check_normal, extract_homogeneous, gpa_certify, weight_decompose, weight_report, Certification, GpaFailure,
    Normality,
};
use semicentre::parse::parse_polynomial;
use semicentre::{Derivation, Error, GpaCertificate, MonomialCertificate, PoissonAlgebra, Polynomial, Rational, Signature};

use format::AlgebraFile;

#[derive(Parser, Debug)]
#[command(name = "semicentre", version, about = "Exact computations with polynomial Poisson algebras")]
struct Cli {
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Jacobi identity on generator triples
    Jacobi { file: PathBuf },
    /// Compute {f, g}
    Bracket { file: PathBuf, f: String, g: String },
    /// Test whether an element is Poisson normal and print its weight
    Normal { file: PathBuf, expr: String },
    /// Check that the generators are normal with pairwise commuting weights
    Awp { file: PathBuf },
    /// Split an element into weight components
    Decompose { file: PathBuf, expr: String },
    /// Find a homogeneous element of the Poisson ideal generated by an element
    Homog { file: PathBuf, expr: String },
    /// Test whether an element is a Casimir
    Casimir { file: PathBuf, expr: String },
    /// Test whether a/b is a Casimir of the fraction field
    Casq { file: PathBuf, a: String, b: String },
    /// Search for an algebraic relation f(a, b) = 0
    Relation {
        file: PathBuf,
        a: String,
        b: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// Search for a monomial power in the ideal generated by a homogeneous element
    Monideal {
        file: PathBuf,
        expr: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// Semi-invariants of a Lie algebra in one degree
    Semiinv {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Check that semi-invariants and Poisson normal elements agree in one degree
    Pnormcheck {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn precondition(message: impl Into<String>) -> Failure {
    Failure {
        code: 3,
        message: message.into(),
    }
}

fn from_kernel(e: Error) -> Failure {
    match e {
        Error::Syntax { .. }
        | Error::UnknownVariable { .. }
        | Error::NegativeExponent { .. }
        | Error::NonInvertible(_)
        | Error::Unrepresentable(_)
        | Error::InvalidSignature(_) => usage(e.to_string()),
        _ => precondition(e.to_string()),
    }
}

/// Human lines, JSON fields and the exit code of a finished command.
struct Report {
    code: i32,
    lines: Vec<String>,
    fields: Map<String, Value>,
}

impl Report {
    fn new(code: i32, status: &str) -> Self {
        let mut fields = Map::new();
        fields.insert("status".into(), json!(status));
        Report {
            code,
            lines: Vec::new(),
            fields,
        }
    }

    fn line(mut self, s: impl Into<String>) -> Self {
        self.lines.push(s.into());
        self
    }

    fn field(mut self, key: &str, value: Value) -> Self {
        self.fields.insert(key.into(), value);
        self
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(report) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&Value::Object(report.fields)).expect("serializable");
                s.push('\n');
                s
            } else {
                report.lines.iter().map(|l| format!("{l}\n")).collect()
            };
            Outcome {
                code: report.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn load(path: &PathBuf) -> Result<AlgebraFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    AlgebraFile::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Loads the file and insists on a bracket satisfying Jacobi.
fn load_verified(path: &PathBuf) -> Result<PoissonAlgebra, Failure> {
    let mut a = load(path)?.algebra();
    if let Err(fail) = a.verify_jacobi() {
        return Err(precondition(format!(
            "the bracket fails the Jacobi identity at {}: residual {}",
            triple_name(a.signature(), fail.triple),
            fail.residual
        )));
    }
    Ok(a)
}

fn load_certified(path: &PathBuf) -> Result<(PoissonAlgebra, GpaCertificate), Failure> {
    let a = load_verified(path)?;
    match gpa_certify(&a).map_err(from_kernel)? {
        Certification::Certified(c) => Ok((a, c)),
        Certification::Failed(f) => Err(precondition(format!(
            "the algebra is not certified as a generalised Poisson affine space: {}",
            describe_gpa_failure(a.signature(), &f)
        ))),
    }
}

fn expr(a: &PoissonAlgebra, text: &str) -> Result<Polynomial, Failure> {
    parse_polynomial(text, a.signature()).map_err(|e| {
        let f = from_kernel(e);
        Failure {
            message: format!("in `{text}`: {}", f.message),
            ..f
        }
    })
}

fn triple_name(sig: &Signature, (i, j, k): (usize, usize, usize)) -> String {
    format!("({}, {}, {})", sig.name(i), sig.name(j), sig.name(k))
}

fn images_text(w: &Derivation) -> String {
    let sig = w.signature();
    (0..sig.len())
        .map(|i| format!("{} -> {}", sig.name(i), w.image(i)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn images_json(w: &Derivation) -> Value {
    let sig = w.signature();
    Value::Object(
        (0..sig.len())
            .map(|i| (sig.name(i).to_string(), json!(w.image(i).to_string())))
            .collect(),
    )
}

fn nonzero_images_text(w: &Derivation) -> String {
    let sig = w.signature();
    (0..sig.len())
        .filter(|&i| !w.image(i).is_zero())
        .map(|i| format!("image {} at {}", w.image(i), sig.name(i)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn describe_gpa_failure(sig: &Signature, f: &GpaFailure<Rational>) -> String {
    match f {
        GpaFailure::NotNormal {
            generator,
            against,
            bracket,
        } => format!(
            "generator {} is not normal: {{{}, {}}} = {}",
            sig.name(*generator),
            sig.name(*against),
            sig.name(*generator),
            bracket
        ),
        GpaFailure::NonCommuting { i, j, commutator } => format!(
            "commutator(λ_{}, λ_{}) nonzero: {}",
            sig.name(*i),
            sig.name(*j),
            nonzero_images_text(commutator)
        ),
    }
}

fn dispatch(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Jacobi { file } => jacobi(file),
        Command::Bracket { file, f, g } => {
            let a = load(file)?.algebra();
            let (f, g) = (expr(&a, f)?, expr(&a, g)?);
            let b = a.bracket(&f, &g);
            Ok(Report::new(0, "computed")
                .line(b.to_string())
                .field("result", json!(b.to_string())))
        }
        Command::Normal { file, expr: e } => normal(file, e),
        Command::Awp { file } => awp(file),
        Command::Decompose { file, expr: e } => decompose(file, e),
        Command::Homog { file, expr: e } => homog(file, e),
        Command::Casimir { file, expr: e } => {
            let a = load_verified(file)?;
            let f = expr(&a, e)?;
            Ok(match casimir_witness(&a, &f).map_err(from_kernel)? {
                None => Report::new(0, "holds").line("casimir: yes"),
                Some((i, b)) => {
                    let name = a.signature().name(i);
                    Report::new(1, "fails")
                        .line(format!("casimir: no: {{{name}, f}} = {b}"))
                        .field("witness", json!({"generator": name, "bracket": b.to_string()}))
                }
            })
        }
        Command::Casq { file, a: ea, b: eb } => {
            let a = load_verified(file)?;
            let (f, g) = (expr(&a, ea)?, expr(&a, eb)?);
            Ok(match casimir_quotient_witness(&a, &f, &g).map_err(from_kernel)? {
                None => Report::new(0, "holds").line("casimir quotient: yes"),
                Some((i, r)) => {
                    let name = a.signature().name(i);
                    Report::new(1, "fails")
                        .line(format!("casimir quotient: no: b*{{{name}, a}} - a*{{{name}, b}} = {r}"))
                        .field("witness", json!({"generator": name, "residual": r.to_string()}))
                }
            })
        }
        Command::Relation {
            file,
            a: ea,
            b: eb,
            max_degree,
        } => {
            let a = load(file)?.algebra();
            let (f, g) = (expr(&a, ea)?, expr(&a, eb)?);
            Ok(match algebraic_relation(&f, &g, *max_degree).map_err(from_kernel)? {
                Some(r) => Report::new(0, "computed")
                    .line(format!("relation: {r}"))
                    .field("relation", json!(r.to_string())),
                None => Report::new(1, "fails")
                    .line(format!("no relation up to degree {max_degree}"))
                    .field("relation", Value::Null),
            })
        }
        Command::Monideal { file, expr: e, max_degree } => monideal(file, e, *max_degree),
        Command::Semiinv { file, degree } => semiinv(file, *degree),
        Command::Pnormcheck { file, degree } => pnormcheck(file, *degree),
    }
}

fn jacobi(file: &PathBuf) -> Result<Report, Failure> {
    let mut a = load(file)?.algebra();
    Ok(match a.verify_jacobi() {
        Ok(()) => Report::new(0, "holds").line("jacobi: holds"),
        Err(fail) => {
            let sig = a.signature();
            let (i, j, k) = fail.triple;
            Report::new(1, "fails")
                .line(format!(
                    "jacobi: fails at {}: residual {}",
                    triple_name(sig, fail.triple),
                    fail.residual
                ))
                .field(
                    "witness",
                    json!({
                        "triple": [sig.name(i), sig.name(j), sig.name(k)],
                        "residual": fail.residual.to_string(),
                    }),
                )
        }
    })
}

fn normal(file: &PathBuf, e: &str) -> Result<Report, Failure> {
    let a = load_verified(file)?;
    let f = expr(&a, e)?;
    Ok(match check_normal(&a, &f).map_err(from_kernel)? {
        Normality::Normal(w) => Report::new(0, "holds")
            .line(format!("normal: weight images {}", images_text(&w)))
            .field("weight_images", images_json(&w)),
        Normality::NotNormal { generator, bracket } => {
            let name = a.signature().name(generator);
            Report::new(1, "fails")
                .line(format!("not normal: {{{name}, f}} = {bracket} is not divisible by f"))
                .field("witness", json!({"generator": name, "bracket": bracket.to_string()}))
        }
    })
}

/// Weights of the normal generators come first: a non-commuting pair among
/// them is reported even when some other generator is not normal.
fn awp(file: &PathBuf) -> Result<Report, Failure> {
    let a = load_verified(file)?;
    let sig = a.signature();
    let report = weight_report(&a).map_err(from_kernel)?;
    let mut weights = Map::new();
    let mut lines = Vec::new();
    for (i, n) in report.generators.iter().enumerate() {
        match n {
            Normality::Normal(w) => {
                weights.insert(sig.name(i).to_string(), images_json(w));
                lines.push(format!("λ_{}: {}", sig.name(i), images_text(w)));
            }
            Normality::NotNormal { generator, bracket } => {
                weights.insert(sig.name(i).to_string(), Value::Null);
                lines.push(format!(
                    "{} is not normal: {{{}, {}}} = {}",
                    sig.name(i),
                    sig.name(*generator),
                    sig.name(i),
                    bracket
                ));
            }
        }
    }
    let witness = if let Some((i, j, c)) = &report.non_commuting {
        Some((
            describe_gpa_failure(sig, &GpaFailure::NonCommuting { i: *i, j: *j, commutator: c.clone() }),
            json!({
                "kind": "non_commuting",
                "pair": [sig.name(*i), sig.name(*j)],
                "images": images_json(c),
            }),
        ))
    } else {
        report.generators.iter().enumerate().find_map(|(g, n)| match n {
            Normality::NotNormal { generator, bracket } => Some((
                describe_gpa_failure(
                    sig,
                    &GpaFailure::NotNormal {
                        generator: g,
                        against: *generator,
                        bracket: bracket.clone(),
                    },
                ),
                json!({
                    "kind": "not_normal",
                    "generator": sig.name(g),
                    "against": sig.name(*generator),
                    "bracket": bracket.to_string(),
                }),
            )),
            Normality::Normal(_) => None,
        })
    };
    let mut out = match witness {
        Some((text, value)) => Report::new(1, "fails").line(text).field("witness", value),
        None => Report::new(0, "holds").line("abelian weight property: holds"),
    };
    out.lines.extend(lines);
    Ok(out.field("weight_images", Value::Object(weights)))
}

fn decompose(file: &PathBuf, e: &str) -> Result<Report, Failure> {
    let (a, cert) = load_certified(file)?;
    let f = expr(&a, e)?;
    let d = weight_decompose(&cert, &f).map_err(from_kernel)?;
    let mut out = Report::new(0, "computed");
    let mut components = Vec::new();
    for c in &d.components {
        out = out.line(format!("[{}]: {}", images_text(&c.weight), c.part));
        components.push(json!({"weight_images": images_json(&c.weight), "part": c.part.to_string()}));
    }
    Ok(out.field("components", Value::Array(components)))
}

fn homog(file: &PathBuf, e: &str) -> Result<Report, Failure> {
    let (a, cert) = load_certified(file)?;
    let f = expr(&a, e)?;
    let components = weight_decompose(&cert, &f).map_err(from_kernel)?.len();
    let (h, trace) = extract_homogeneous(&cert, &f).map_err(from_kernel)?;
    let sig = a.signature();
    let mut out = Report::new(0, "computed").line(format!("homogeneous: {h}"));
    let mut steps = Vec::new();
    for (k, s) in trace.steps.iter().enumerate() {
        let name = sig.name(s.generator);
        out = out.line(format!("step {}: a <- ({})*a - {{{name}, a}}", k + 1, s.multiplier));
        steps.push(json!({"generator": name, "multiplier": s.multiplier.to_string()}));
    }
    Ok(out
        .field("result", json!(h.to_string()))
        .field("components", json!(components))
        .field("trace", Value::Array(steps)))
}

fn certificate_json(c: &MonomialCertificate) -> Value {
    json!({
        "b": c.b.to_string(),
        "d": c.d,
        "m": c.m,
        "power": c.power.to_string(),
        "cofactor": c.cofactor.to_string(),
    })
}

fn monideal(file: &PathBuf, e: &str, max_degree: usize) -> Result<Report, Failure> {
    let (a, cert) = load_certified(file)?;
    let f = expr(&a, e)?;
    Ok(match monomial_in_ideal(&cert, &f, max_degree).map_err(from_kernel)? {
        Some(c) => {
            let relation = c.relation();
            Report::new(0, "computed")
                .line(format!("b = {}, relation {} at d = {}, m = {}", c.b, relation, c.d, c.m))
                .line(format!("{} = ({}) * ({})", c.power, f, c.cofactor))
                .field("relation", json!(relation.to_string()))
                .field("witness", certificate_json(&c))
        }
        None => Report::new(1, "fails")
            .line(format!("inconclusive up to degree {max_degree}"))
            .field("relation", Value::Null),
    })
}

fn character_json(sig: &Signature, values: &[Rational]) -> Value {
    Value::Object(
        values
            .iter()
            .enumerate()
            .map(|(i, v)| (sig.name(i).to_string(), json!(v.to_string())))
            .collect(),
    )
}

fn character_text(sig: &Signature, values: &[Rational]) -> String {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| format!("{} -> {}", sig.name(i), v))
        .collect::<Vec<_>>()
        .join(", ")
}

fn semiinv(file: &PathBuf, degree: usize) -> Result<Report, Failure> {
    let a = load_verified(file)?;
    let lie = lie_from_brackets(&a).map_err(from_kernel)?;
    let space = semi_invariants(&lie, degree).map_err(from_kernel)?;
    let sig = a.signature();
    let mut out = Report::new(0, "computed");
    let mut characters = Vec::new();
    for entry in &space.entries {
        let basis: Vec<String> = entry.basis.iter().map(ToString::to_string).collect();
        out = out.line(format!(
            "character [{}]: {}",
            character_text(sig, &entry.character.values),
            basis.join("; ")
        ));
        characters.push(json!({
            "values": character_json(sig, &entry.character.values),
            "basis": basis,
        }));
    }
    let mut unsplit = Vec::new();
    for block in &space.unsplit {
        let basis: Vec<String> = block.basis.iter().map(ToString::to_string).collect();
        let factor = univariate_text(&block.factor);
        out = out.line(format!(
            "unsplit over the rationals (ad({}), factor {}): {}",
            sig.name(block.operator),
            factor,
            basis.join("; ")
        ));
        unsplit.push(json!({"operator": sig.name(block.operator), "factor": factor, "basis": basis}));
    }
    if space.entries.is_empty() && space.unsplit.is_empty() {
        out = out.line(format!("no semi-invariants in degree {degree}"));
    }
    Ok(out
        .field("degree", json!(degree))
        .field("characters", Value::Array(characters))
        .field("unsplit", Value::Array(unsplit)))
}

fn univariate_text(coeffs: &[Rational]) -> String {
    let sig = Signature::polynomial(&["t"]).expect("valid name");
    let terms = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| (semicentre::Monomial::from_exponents(vec![k as i32]), c.clone()));
    Polynomial::from_terms(&sig, terms).expect("nonnegative exponents").to_string()
}

fn pnormcheck(file: &PathBuf, degree: usize) -> Result<Report, Failure> {
    let a = load_verified(file)?;
    let lie = lie_from_brackets(&a).map_err(from_kernel)?;
    let sig = a.signature();
    Ok(match pnorm_crosscheck(&lie, degree).map_err(from_kernel)? {
        PnormCheck::Pass => Report::new(0, "holds").line(format!("pnorm crosscheck: holds in degree {degree}")),
        PnormCheck::Fail(w) => {
            let (text, value) = match w {
                PnormWitness::NotNormal { element } => (
                    format!("semi-invariant {element} is not normal"),
                    json!({"kind": "not_normal", "element": element.to_string()}),
                ),
                PnormWitness::WeightMismatch {
                    element,
                    generator,
                    image,
                    expected,
                } => (
                    format!(
                        "weight of {element} at {} is {image}, character value {expected}",
                        sig.name(generator)
                    ),
                    json!({
                        "kind": "weight_mismatch",
                        "element": element.to_string(),
                        "generator": sig.name(generator),
                        "image": image.to_string(),
                        "expected": expected.to_string(),
                    }),
                ),
                PnormWitness::MissingNormal { element, weight } => (
                    format!(
                        "normal element {element} (weight images {}) is not among the semi-invariants",
                        images_text(&weight)
                    ),
                    json!({
                        "kind": "missing_normal",
                        "element": element.to_string(),
                        "weight_images": images_json(&weight),
                    }),
                ),
            };
            Report::new(1, "fails").line(text).field("witness", value)
        }
    })
}
