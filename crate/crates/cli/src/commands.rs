//! Verb implementations. Each verb reads JSON literals, runs one kernel
//! operation and returns a JSON report.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use tensoraxiom_core::io::{
    from_json, peek_field, BilinearLiteral, FreeLiteral, MatrixLiteral, RealTensorLiteral,
    TensorLiteral,
};
use tensoraxiom_core::*;

use crate::suite;

#[derive(Debug, Parser)]
#[command(
    name = "tensoraxiom",
    version,
    about = "Exact tensor products, Kronecker algebra and crossnorms"
)]
pub struct Cli {
    /// write the report here instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Realization {
    Quotient,
    Dual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    All,
    Quotient,
    Dual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormKind {
    Injective,
    Projective,
    Hilbert,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check both tensor product axioms for the shipped realizations.
    CheckAxioms {
        /// probe bilinear maps; without any, the matrix-unit map is used
        probes: Vec<PathBuf>,
        #[arg(long, default_value = "Q")]
        field: FieldSpec,
        #[arg(long)]
        x_dim: Option<usize>,
        #[arg(long)]
        y_dim: Option<usize>,
        #[arg(long, value_enum, default_value = "all")]
        realization: Which,
    },
    /// Matrix of the linear map through which a bilinear map factors.
    Factorize {
        phi: PathBuf,
        #[arg(long, value_enum, default_value = "quotient")]
        realization: Realization,
    },
    /// The canonical isomorphism between two realizations of X ⊗ Y.
    Iso {
        #[arg(long, default_value = "Q")]
        field: FieldSpec,
        #[arg(long)]
        x_dim: usize,
        #[arg(long)]
        y_dim: usize,
        #[arg(long, value_enum, default_value = "dual")]
        from: Realization,
        #[arg(long, value_enum, default_value = "quotient")]
        to: Realization,
    },
    /// Normal form of a free vector modulo the bilinearity relations.
    NormalForm { free: PathBuf },
    /// Whether a free vector lies in the relation span.
    #[command(name = "member-M")]
    MemberM { free: PathBuf },
    /// Kronecker product of two maps.
    Kron { a: PathBuf, b: PathBuf },
    /// Algebraic adjoint of a map.
    Adjoint { a: PathBuf },
    /// The permutation of basis tensors (i,j) ↦ (j,i).
    Shuffle {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "Q")]
        field: FieldSpec,
    },
    /// Injective, projective or Hilbert norm of a real tensor.
    Norm {
        tensor: PathBuf,
        #[arg(long, value_enum)]
        kind: NormKind,
        #[arg(long)]
        px: Option<Tag>,
        #[arg(long)]
        py: Option<Tag>,
    },
    /// Check the crossnorm properties on one real tensor.
    Certify {
        tensor: PathBuf,
        #[arg(long)]
        px: Option<Tag>,
        #[arg(long)]
        py: Option<Tag>,
    },
    /// Run the randomized acceptance suite.
    Suite {
        /// overrides TENSORAXIOM_SEED
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// unreadable or malformed input: exit 2
    Input(String),
    /// a typed kernel error on well-formed input: exit 1 with a report
    Kernel(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::UnsupportedModulus(_)
            | Error::NotPrime(_)
            | Error::UnsupportedTag(_) => CliError::Input(e.to_string()),
            other => CliError::Kernel(other),
        }
    }
}

/// A finished command: the report and whether the checked property held.
#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome {
            report,
            passed: true,
        }
    }
}

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Runs one command and returns the text to print and the exit code.
pub fn execute(cmd: &Command) -> (String, i32) {
    match run(cmd) {
        Ok(out) => {
            let code = if out.passed {
                EXIT_SUCCESS
            } else {
                EXIT_FAILURE
            };
            (render(&out.report), code)
        }
        Err(CliError::Kernel(e)) => (render(&error_report(&e)), EXIT_FAILURE),
        Err(CliError::Input(msg)) => (
            render(&json!({"error": {"kind": "input", "message": msg}})),
            EXIT_INPUT,
        ),
    }
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn error_report(e: &Error) -> Value {
    let kind = format!("{e:?}");
    let kind = kind
        .split(['(', ' ', '{'])
        .next()
        .unwrap_or("Error")
        .to_string();
    json!({"error": {"kind": kind, "message": e.to_string()}})
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    from_json(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Conversion of a parsed literal into kernel values; any failure here is a
/// malformed input.
fn literal<T>(path: &Path, r: Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn field_of(path: &Path) -> Result<FieldSpec, CliError> {
    peek_field(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

pub fn run(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::CheckAxioms {
            probes,
            field,
            x_dim,
            y_dim,
            realization,
        } => {
            let field = match probes.first() {
                Some(p) => field_of(p)?,
                None => *field,
            };
            with_field!(field, F => check_axioms_cmd::<F>(probes, *x_dim, *y_dim, *realization))
        }
        Command::Factorize { phi, realization } => {
            with_field!(field_of(phi)?, F => factorize_cmd::<F>(phi, *realization))
        }
        Command::Iso {
            field,
            x_dim,
            y_dim,
            from,
            to,
        } => with_field!(*field, F => iso_cmd::<F>(*x_dim, *y_dim, *from, *to)),
        Command::NormalForm { free } => {
            with_field!(free_field(free)?, F => normal_form_cmd::<F>(free))
        }
        Command::MemberM { free } => with_field!(free_field(free)?, F => member_cmd::<F>(free)),
        Command::Kron { a, b } => {
            let (fa, fb) = (field_of(a)?, field_of(b)?);
            if fa != fb {
                return Err(CliError::Kernel(Error::MixedFields {
                    left: fa.to_string(),
                    right: fb.to_string(),
                }));
            }
            with_field!(fa, F => kron_cmd::<F>(a, b))
        }
        Command::Adjoint { a } => with_field!(field_of(a)?, F => adjoint_cmd::<F>(a)),
        Command::Shuffle { m, n, field } => {
            if *m == 0 || *n == 0 {
                return Err(CliError::Input("shuffle needs positive dimensions".into()));
            }
            with_field!(*field, F => Ok::<_, CliError>(Outcome::ok(to_value(&MatrixLiteral::from_map(&shuffle_permutation::<F>(*m, *n))))))
        }
        Command::Norm {
            tensor,
            kind,
            px,
            py,
        } => norm_cmd(tensor, *kind, *px, *py),
        Command::Certify { tensor, px, py } => {
            let lit: RealTensorLiteral = load(tensor)?;
            let t = literal(tensor, lit.to_tensor(*px, *py))?;
            let report = crossnorm_certify(&t)?;
            Ok(Outcome {
                passed: report.passed(),
                report: to_value(&report),
            })
        }
        Command::Suite { seed } => {
            let seed = match seed {
                Some(s) => *s,
                None => suite::seed_from_env().map_err(CliError::Input)?,
            };
            let report = suite::run(seed);
            Ok(Outcome {
                passed: report.passed,
                report: to_value(&report),
            })
        }
    }
}

fn free_field(path: &Path) -> Result<FieldSpec, CliError> {
    let lit: FreeLiteral = load(path)?;
    Ok(lit.field())
}

fn check_axioms_cmd<F: Field>(
    paths: &[PathBuf],
    x_dim: Option<usize>,
    y_dim: Option<usize>,
    which: Which,
) -> Result<Outcome, CliError> {
    let mut probes: Vec<BilinearMap<F>> = Vec::new();
    for p in paths {
        let lit: BilinearLiteral = load(p)?;
        probes.push(literal(p, lit.to_bilinear::<F>())?);
    }
    let (m, n) = match probes.first() {
        Some(phi) => (phi.left().dim(), phi.right().dim()),
        None => match (x_dim, y_dim) {
            (Some(m), Some(n)) => (m, n),
            _ => {
                return Err(CliError::Input(
                    "give probe files or both --x-dim and --y-dim".into(),
                ))
            }
        },
    };
    if probes
        .iter()
        .any(|phi| phi.left().dim() != m || phi.right().dim() != n)
    {
        return Err(CliError::Input(
            "probe maps have different factor dimensions".into(),
        ));
    }
    let field = F::spec();
    let (x, y) = (
        VectorSpace::new(field, m),
        VectorSpace::with_prefix(field, n, "d"),
    );
    if probes.is_empty() {
        let e: Vec<Vector<F>> = (0..m).map(|i| Vector::unit(m, i)).collect();
        let d: Vec<Vector<F>> = (0..n).map(|j| Vector::unit(n, j)).collect();
        probes.push(matrix_unit_bilinear(&x, &y, &e, &d)?);
    }
    let mut reports = Vec::new();
    if which != Which::Dual {
        reports.push(check_axioms(
            &QuotientRealization::new::<F>(&x, &y)?,
            &probes,
        ));
    }
    if which != Which::Quotient {
        reports.push(check_axioms(&DualRealization::new::<F>(&x, &y)?, &probes));
    }
    let passed = reports.iter().all(|r| r.passed());
    Ok(Outcome {
        report: json!({"field": field, "X_dim": m, "Y_dim": n, "passed": passed, "realizations": reports}),
        passed,
    })
}

fn build<F: Field>(
    which: Realization,
    x: &VectorSpace,
    y: &VectorSpace,
) -> Result<Box<dyn TensorRealization<F>>> {
    Ok(match which {
        Realization::Quotient => Box::new(QuotientRealization::new::<F>(x, y)?),
        Realization::Dual => Box::new(DualRealization::new::<F>(x, y)?),
    })
}

fn name(which: Realization) -> &'static str {
    match which {
        Realization::Quotient => "quotient",
        Realization::Dual => "dual",
    }
}

fn factorize_cmd<F: Field>(path: &Path, which: Realization) -> Result<Outcome, CliError> {
    let lit: BilinearLiteral = load(path)?;
    let phi = literal(path, lit.to_bilinear::<F>())?;
    let r = build::<F>(which, phi.left(), phi.right())?;
    let map = factorize(r.as_ref(), &phi)?;
    Ok(Outcome::ok(
        json!({"realization": name(which), "map": MatrixLiteral::from_map(&map)}),
    ))
}

fn iso_cmd<F: Field>(
    m: usize,
    n: usize,
    from: Realization,
    to: Realization,
) -> Result<Outcome, CliError> {
    let field = F::spec();
    let (x, y) = (
        VectorSpace::new(field, m),
        VectorSpace::with_prefix(field, n, "d"),
    );
    let (r1, r2) = (build::<F>(to, &x, &y)?, build::<F>(from, &x, &y)?);
    let iso = canonical_iso::<F>(r1.as_ref(), r2.as_ref())?;
    let identity = iso.matrix() == &Matrix::identity(m * n);
    Ok(Outcome::ok(json!({
        "from": name(from),
        "to": name(to),
        "identity": identity,
        "map": MatrixLiteral::from_map(&iso),
    })))
}

fn normal_form_cmd<F: Field>(path: &Path) -> Result<Outcome, CliError> {
    let lit: FreeLiteral = load(path)?;
    let f = literal(path, lit.to_free::<F>())?;
    let q = QuotientRealization::new::<F>(f.left(), f.right())?;
    let table = q.normal_form(&f)?;
    let member = table.data().iter().all(|c| *c == F::zero());
    Ok(Outcome::ok(json!({
        "normal_form": TensorLiteral::from_element(&TensorElement::from_table(table)),
        "member": member,
    })))
}

fn member_cmd<F: Field>(path: &Path) -> Result<Outcome, CliError> {
    let lit: FreeLiteral = load(path)?;
    let f = literal(path, lit.to_free::<F>())?;
    let q = QuotientRealization::new::<F>(f.left(), f.right())?;
    Ok(Outcome::ok(json!({"member": q.member_relation_span(&f)?})))
}

fn load_map<F: Field>(path: &Path) -> Result<LinearMap<F>, CliError> {
    let lit: MatrixLiteral = load(path)?;
    literal(path, lit.to_map::<F>())
}

fn kron_cmd<F: Field>(a: &Path, b: &Path) -> Result<Outcome, CliError> {
    let k = kron(&load_map::<F>(a)?, &load_map::<F>(b)?)?;
    Ok(Outcome::ok(to_value(&MatrixLiteral::from_map(k.map()))))
}

fn adjoint_cmd<F: Field>(a: &Path) -> Result<Outcome, CliError> {
    Ok(Outcome::ok(to_value(&MatrixLiteral::from_map(&adjoint(
        &load_map::<F>(a)?,
    )))))
}

fn norm_cmd(
    path: &Path,
    kind: NormKind,
    px: Option<Tag>,
    py: Option<Tag>,
) -> Result<Outcome, CliError> {
    let lit: RealTensorLiteral = load(path)?;
    let t = literal(path, lit.to_tensor(px, py))?;
    let result = match kind {
        NormKind::Injective => injective_norm(&t)?,
        NormKind::Projective => projective_norm(&t)?,
        NormKind::Hilbert => {
            let v = hilbert_inner(&t, &t)?.sqrt();
            NormResult {
                lo: v,
                hi: v,
                method: Method::ClosedForm,
                tolerance: 0.0,
            }
        }
    };
    let (px, py) = t.tags();
    let mut report = to_value(&result);
    report["kind"] = json!(match kind {
        NormKind::Injective => "injective",
        NormKind::Projective => "projective",
        NormKind::Hilbert => "hilbert",
    });
    report["px"] = json!(px);
    report["py"] = json!(py);
    Ok(Outcome::ok(report))
}
