//! The `retroalg` command line.
//!
//! Exit codes: 0 success or "holds", 1 definite negative, 2 input error,
//! 3 criterion inapplicable.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::io::{algebra_from_json, algebra_to_json};
use crate::algebra::{Element, IdentityCheck, WeightedAlgebra};
use crate::backcross::{extract_mutation, is_backcrossing};
use crate::error::{Error, Result};
use crate::idempotent::{
    fixed_point_idempotent, idempotent_from_square, theorem_idempotent, train_system_idempotent,
    IdempotentSolution, Method,
};
use crate::magma::MagmaPoly;
use crate::mutation::{build_mutation_for_identity, mutation_from_json, mutation_to_json, MutationSpec};
use crate::scalar::rational::{format_decimal, format_rational, int};
use crate::scalar::{QMatrix, Rational, UniPoly};
use crate::theta::{identity_dependence, theta, DependenceCase};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INAPPLICABLE: i32 = 3;

const DECIMAL_DIGITS: u32 = 12;

#[derive(Parser, Debug)]
#[command(name = "retroalg", version, about = "Exact computations in backcrossing and mutation algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Largest identity degree accepted.
    #[arg(long, global = true, default_value_t = 8)]
    max_degree: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Plenary,
    Principal,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether identities hold, with a witness on failure.
    Check {
        #[arg(short = 'a', value_name = "ALGEBRA")]
        algebra: PathBuf,
        #[arg(short = 'f', value_name = "IDENTITY", required = true, allow_hyphen_values = true)]
        identities: Vec<String>,
        /// Worker threads for several identities.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Weak and strict backcrossing, with the identities of degree below 4.
    Backcross {
        #[arg(short = 'a', value_name = "ALGEBRA")]
        algebra: PathBuf,
    },
    /// Mutation structure of the subalgebra generated by a weight-1 element.
    Mutation {
        #[arg(short = 'a', value_name = "ALGEBRA")]
        algebra: PathBuf,
        #[arg(short = 'x', value_name = "ELEMENT", allow_hyphen_values = true)]
        element: String,
    },
    /// Reduction polynomial D, theta(X) = D(2X) and theta'(1/2).
    Theta {
        #[arg(short = 'f', value_name = "IDENTITY", allow_hyphen_values = true)]
        identity: String,
    },
    /// Idempotents of weight 1 in the subalgebra generated by an element.
    Idempotent {
        #[arg(short = 'a', value_name = "ALGEBRA")]
        algebra: PathBuf,
        #[arg(short = 'x', value_name = "ELEMENT", allow_hyphen_values = true)]
        element: String,
        /// Identity of the algebra; a principal train identity X*T selects the train system.
        #[arg(short = 'f', value_name = "IDENTITY", allow_hyphen_values = true)]
        identity: Option<String>,
    },
    /// Generations x^[1], ..., x^[k+1] or backcrosses x^1, ..., x^(k+1) as CSV.
    Simulate {
        #[arg(short = 'a', value_name = "ALGEBRA")]
        algebra: PathBuf,
        #[arg(short = 'x', value_name = "ELEMENT", allow_hyphen_values = true)]
        element: String,
        #[arg(short = 'k', default_value_t = 3)]
        generations: usize,
        #[arg(long, value_enum, default_value_t = Mode::Plenary)]
        mode: Mode,
        /// Decimal approximations instead of exact rationals (lossy).
        #[arg(long)]
        decimal: bool,
    },
    /// A combination of the listed identities satisfied by K<x>.
    Depend {
        #[arg(short = 'a', value_name = "ALGEBRA")]
        algebra: PathBuf,
        #[arg(short = 'x', value_name = "ELEMENT", allow_hyphen_values = true)]
        element: String,
        /// One identity per line; blank lines and lines starting with '#' are skipped.
        #[arg(short = 'S', value_name = "FILE")]
        list: PathBuf,
    },
    /// A mutation algebra satisfying an identity, as a mutation file.
    BuildMutation {
        #[arg(short = 'f', value_name = "IDENTITY", allow_hyphen_values = true)]
        identity: String,
    },
    /// Structure constants of a mutation file, as an algebra file.
    FromMutation {
        #[arg(short = 'm', value_name = "MUTATION")]
        mutation: PathBuf,
    },
}

/// Runs the command line and returns the process exit code.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return if code == 0 { EXIT_OK } else { EXIT_INPUT };
        }
    };
    let ctx = Context {
        format: cli.format,
        max_degree: cli.max_degree,
    };
    let mut buf = Vec::new();
    let result = ctx.dispatch(cli.command, &mut buf);
    let _ = out.write_all(&buf);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CriterionFails(_) => EXIT_INAPPLICABLE,
        _ => EXIT_INPUT,
    }
}

struct Context {
    format: Format,
    max_degree: usize,
}

type Out<'a> = &'a mut Vec<u8>;

fn emit(out: Out, text: impl AsRef<str>) {
    out.extend_from_slice(text.as_ref().as_bytes());
    if !text.as_ref().ends_with('\n') {
        out.push(b'\n');
    }
}

fn emit_json(out: Out, value: &Value) {
    emit(out, serde_json::to_string_pretty(value).expect("serializable"));
}

fn rational_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn element_json(e: &Element) -> Value {
    Value::Array(e.coords().iter().map(rational_json).collect())
}

fn poly_json(p: &UniPoly) -> Value {
    json!({
        "text": p.to_string(),
        "coefficients": p.coeffs().iter().map(rational_json).collect::<Vec<_>>(),
    })
}

fn matrix_rows(m: &QMatrix) -> Vec<String> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(" "))
        .collect()
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))
}

impl Context {
    fn dispatch(&self, command: Command, out: Out) -> Result<i32> {
        match command {
            Command::Check {
                algebra,
                identities,
                jobs,
            } => self.check(&algebra, &identities, jobs, out),
            Command::Backcross { algebra } => self.backcross(&algebra, out),
            Command::Mutation { algebra, element } => self.mutation(&algebra, &element, out),
            Command::Theta { identity } => self.theta(&identity, out),
            Command::Idempotent {
                algebra,
                element,
                identity,
            } => self.idempotent(&algebra, &element, identity.as_deref(), out),
            Command::Simulate {
                algebra,
                element,
                generations,
                mode,
                decimal,
            } => self.simulate(&algebra, &element, generations, mode, decimal, out),
            Command::Depend { algebra, element, list } => self.depend(&algebra, &element, &list, out),
            Command::BuildMutation { identity } => self.build_mutation(&identity, out),
            Command::FromMutation { mutation } => self.rebuild_from_mutation(&mutation, out),
        }
    }

    fn no_csv(&self, command: &str) -> Result<()> {
        if self.format == Format::Csv {
            return Err(Error::Format(format!("{command} has no csv output")));
        }
        Ok(())
    }

    fn load_algebra(&self, path: &Path) -> Result<WeightedAlgebra> {
        let alg = algebra_from_json(&read_file(path)?)?;
        let report = alg.validate();
        if !report.weight_nonzero {
            return Err(Error::InvalidAlgebra("the weight is zero".into()));
        }
        if let Some((i, j)) = report.violations.first() {
            return Err(Error::InvalidAlgebra(format!(
                "the weight is not multiplicative on e{i}·e{j}"
            )));
        }
        Ok(alg)
    }

    fn load_element(&self, alg: &WeightedAlgebra, text: &str) -> Result<Element> {
        let x = Element::parse(text)?;
        alg.check(&x)?;
        Ok(x)
    }

    fn parse_identity(&self, text: &str) -> Result<MagmaPoly> {
        let f: MagmaPoly = text.parse()?;
        if f.degree() > self.max_degree {
            return Err(Error::Precondition(format!(
                "{f} has degree {} above --max-degree {}",
                f.degree(),
                self.max_degree
            )));
        }
        Ok(f)
    }

    fn check(&self, path: &Path, texts: &[String], jobs: usize, out: Out) -> Result<i32> {
        let alg = self.load_algebra(path)?;
        let polys = texts
            .iter()
            .map(|t| self.parse_identity(t))
            .collect::<Result<Vec<_>>>()?;
        let checks = check_all(&alg, &polys, jobs.max(1));
        match self.format {
            Format::Human => {
                for (f, c) in polys.iter().zip(&checks) {
                    if c.holds {
                        emit(out, format!("holds: {f}"));
                    } else {
                        emit(out, format!("fails: {f}"));
                        emit(out, format!("witness: {}", c.witness.as_ref().expect("witness")));
                        emit(out, format!("value: {}", c.witness_value.as_ref().expect("value")));
                    }
                }
            }
            Format::Json => {
                let results: Vec<Value> = polys
                    .iter()
                    .zip(&checks)
                    .map(|(f, c)| {
                        json!({
                            "identity": f.to_string(),
                            "holds": c.holds,
                            "witness": c.witness.as_ref().map(element_json),
                            "value": c.witness_value.as_ref().map(element_json),
                        })
                    })
                    .collect();
                emit_json(out, &json!({ "results": results }));
            }
            Format::Csv => {
                emit(out, "identity,holds,witness");
                for (f, c) in polys.iter().zip(&checks) {
                    let witness = c.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
                    emit(out, format!("\"{f}\",{},\"{witness}\"", c.holds));
                }
            }
        }
        Ok(if checks.iter().all(|c| c.holds) {
            EXIT_OK
        } else {
            EXIT_NEGATIVE
        })
    }

    fn backcross(&self, path: &Path, out: Out) -> Result<i32> {
        self.no_csv("backcross")?;
        let alg = self.load_algebra(path)?;
        let status = is_backcrossing(&alg);
        let identities: Vec<String> = status.low_degree.iter().map(|i| i.to_poly().to_string()).collect();
        match self.format {
            Format::Json => emit_json(
                out,
                &json!({
                    "strict": status.strict,
                    "weak": status.weak,
                    "low_degree_identities": identities,
                }),
            ),
            _ => {
                emit(out, format!("strict: {}", status.strict));
                emit(out, format!("weak: {}", status.weak));
                for i in &identities {
                    emit(out, format!("identity: {i}"));
                }
            }
        }
        Ok(if status.weak { EXIT_OK } else { EXIT_NEGATIVE })
    }

    fn mutation(&self, path: &Path, element: &str, out: Out) -> Result<i32> {
        self.no_csv("mutation")?;
        let alg = self.load_algebra(path)?;
        let x = self.load_element(&alg, element)?;
        let ext = extract_mutation(&alg, &x)?;
        let (spec, basis) = match ext.ambient_matrix() {
            Some(m) => (
                MutationSpec::new(m, alg.weight_vector().to_vec())?,
                alg.names().to_vec(),
            ),
            None => (ext.to_spec(), (1..=ext.dim()).map(|k| format!("p{k}")).collect()),
        };
        match self.format {
            Format::Json => emit(out, mutation_to_json(&spec)),
            _ => {
                emit(out, format!("basis: {}", basis.join(" ")));
                for (k, p) in ext.p_basis().iter().enumerate() {
                    emit(out, format!("p{}: {p}", k + 1));
                }
                emit(out, "M:");
                for row in matrix_rows(spec.matrix()) {
                    emit(out, format!("  {row}"));
                }
                let eta: Vec<String> = spec.eta().iter().map(format_rational).collect();
                emit(out, format!("eta: {}", eta.join(" ")));
            }
        }
        Ok(EXIT_OK)
    }

    fn theta(&self, text: &str, out: Out) -> Result<i32> {
        let f = self.parse_identity(text)?;
        let r = theta(&f)?;
        match self.format {
            Format::Human => {
                emit(out, format!("D: {}", r.d));
                emit(out, format!("theta: {}", r.theta));
                match r.criterion() {
                    Some(c) => emit(out, format!("theta'(1/2): {}", format_rational(c))),
                    None => emit(out, "degenerate: D = 0, criterion inapplicable"),
                }
            }
            Format::Json => emit_json(
                out,
                &json!({
                    "identity": f.to_string(),
                    "D": poly_json(&r.d),
                    "theta": poly_json(&r.theta),
                    "criterion_value": r.criterion().map(rational_json),
                    "degenerate": r.degenerate,
                }),
            ),
            Format::Csv => {
                emit(out, "D,theta,criterion_value,degenerate");
                let c = r.criterion().map(format_rational).unwrap_or_default();
                emit(out, format!("\"{}\",\"{}\",{c},{}", r.d, r.theta, r.degenerate));
            }
        }
        Ok(if r.guarantees_idempotent() {
            EXIT_OK
        } else {
            EXIT_INAPPLICABLE
        })
    }

    fn idempotent(&self, path: &Path, element: &str, identity: Option<&str>, out: Out) -> Result<i32> {
        let alg = self.load_algebra(path)?;
        let x = self.load_element(&alg, element)?;
        let solution = match identity {
            Some(text) => {
                let f = self.parse_identity(text)?;
                Some(match train_polynomial(&f) {
                    Some(t) => train_system_idempotent(&alg, &x, &t)?,
                    None => theorem_idempotent(&alg, &x, &f)?,
                })
            }
            None => idempotent_from_square(&alg, &x)?.map(|e| IdempotentSolution {
                lambdas: Vec::new(),
                determinant: int(1),
                idempotent: e,
                method: Method::SquareShortcut,
                train_polynomial: None,
            }),
        };
        let (points, directions, method, solution) = match solution {
            Some(s) => (vec![s.idempotent.clone()], Vec::new(), s.method, Some(s)),
            None => {
                let family = fixed_point_idempotent(&alg, &x)?;
                (family.representatives(), family.directions, Method::FixedPoint, None)
            }
        };
        match self.format {
            Format::Human => {
                emit(out, format!("method: {}", method.name()));
                if points.is_empty() {
                    emit(out, "no idempotent of weight 1 in K<x>");
                }
                for p in &points {
                    emit(out, format!("idempotent: {p}"));
                }
                for d in &directions {
                    emit(out, format!("direction: {d}"));
                }
                if let Some(s) = &solution {
                    if let Some(t) = &s.train_polynomial {
                        emit(out, format!("T: {t}"));
                        let l: Vec<String> = s.lambdas.iter().map(format_rational).collect();
                        emit(out, format!("lambdas: {}", l.join(" ")));
                        emit(out, format!("delta: {}", format_rational(&s.determinant)));
                    }
                }
            }
            Format::Json => {
                let mut v = json!({
                    "method": method.name(),
                    "idempotents": points.iter().map(element_json).collect::<Vec<_>>(),
                    "directions": directions.iter().map(element_json).collect::<Vec<_>>(),
                });
                if let Some(s) = &solution {
                    v["lambdas"] = Value::Array(s.lambdas.iter().map(rational_json).collect());
                    v["delta"] = rational_json(&s.determinant);
                    v["T"] = s.train_polynomial.as_ref().map(poly_json).unwrap_or(Value::Null);
                }
                emit_json(out, &v);
            }
            Format::Csv => {
                emit(out, format!("method,{}", alg.names().join(",")));
                for p in &points {
                    emit(out, format!("{},{p}", method.name()));
                }
            }
        }
        Ok(if points.is_empty() { EXIT_NEGATIVE } else { EXIT_OK })
    }

    fn simulate(&self, path: &Path, element: &str, k: usize, mode: Mode, decimal: bool, out: Out) -> Result<i32> {
        let alg = self.load_algebra(path)?;
        let x = self.load_element(&alg, element)?;
        alg.require_weight_one(&x)?;
        let mut rows = vec![x.clone()];
        for _ in 0..k {
            let last = rows.last().expect("nonempty");
            let next = match mode {
                Mode::Plenary => alg.square(last),
                Mode::Principal => alg.mul(&x, last),
            };
            rows.push(next);
        }
        let cell = |r: &Rational| {
            if decimal {
                format_decimal(r, DECIMAL_DIGITS)
            } else {
                format_rational(r)
            }
        };
        match self.format {
            Format::Json => emit_json(
                out,
                &json!({
                    "mode": format!("{mode:?}").to_lowercase(),
                    "basis": alg.names(),
                    "lossy": decimal,
                    "rows": rows
                        .iter()
                        .map(|r| r.coords().iter().map(cell).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                }),
            ),
            _ => {
                if decimal {
                    emit(out, "# decimal approximations, lossy");
                }
                emit(out, alg.names().join(","));
                for r in &rows {
                    emit(out, r.coords().iter().map(cell).collect::<Vec<_>>().join(","));
                }
            }
        }
        Ok(EXIT_OK)
    }

    fn depend(&self, path: &Path, element: &str, list: &Path, out: Out) -> Result<i32> {
        self.no_csv("depend")?;
        let alg = self.load_algebra(path)?;
        let x = self.load_element(&alg, element)?;
        let family = read_file(list)?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| self.parse_identity(l))
            .collect::<Result<Vec<_>>>()?;
        let r = identity_dependence(&alg, &x, &family)?;
        let case = match r.case {
            DependenceCase::Vanishing => "single-vanishing",
            DependenceCase::Coincident => "pair-equal",
            DependenceCase::Linear => "linear-dependence",
        };
        match self.format {
            Format::Json => emit_json(
                out,
                &json!({
                    "case": case,
                    "identity": r.identity.to_string(),
                    "combination": r.combination.iter().map(|(k, c)| json!({
                        "index": k + 1,
                        "identity": family[*k].to_string(),
                        "coefficient": rational_json(c),
                    })).collect::<Vec<_>>(),
                    "minimal_polynomial": poly_json(&r.minimal_polynomial),
                    "residues": r.residues.iter().map(poly_json).collect::<Vec<_>>(),
                }),
            ),
            _ => {
                emit(out, format!("identity: {}", r.identity));
                emit(out, format!("case: {case}"));
                emit(out, format!("minimal polynomial: {}", r.minimal_polynomial));
                for (k, c) in &r.combination {
                    emit(out, format!("  [{}] {} * ({})", k + 1, format_rational(c), family[*k]));
                }
            }
        }
        Ok(EXIT_OK)
    }

    fn build_mutation(&self, text: &str, out: Out) -> Result<i32> {
        self.no_csv("build-mutation")?;
        let f = self.parse_identity(text)?;
        emit(out, mutation_to_json(&build_mutation_for_identity(&f)?));
        Ok(EXIT_OK)
    }

    fn rebuild_from_mutation(&self, path: &Path, out: Out) -> Result<i32> {
        self.no_csv("from-mutation")?;
        let spec = mutation_from_json(&read_file(path)?)?;
        emit(out, algebra_to_json(&spec.to_algebra()?));
        Ok(EXIT_OK)
    }
}

/// `T` when `f = X·T` is written with principal powers only.
fn train_polynomial(f: &MagmaPoly) -> Option<UniPoly> {
    let c = f.principal_coefficients()?;
    if c.first().is_some_and(|c0| !num_traits::Zero::is_zero(c0)) {
        return None;
    }
    let t = UniPoly::from_coeffs(c.into_iter().skip(1).collect());
    (t.degree()? >= 1).then_some(t)
}

fn check_all(alg: &WeightedAlgebra, polys: &[MagmaPoly], jobs: usize) -> Vec<IdentityCheck> {
    if jobs <= 1 || polys.len() <= 1 {
        return polys.iter().map(|f| alg.holds_identity(f)).collect();
    }
    let chunk = polys.len().div_ceil(jobs);
    std::thread::scope(|s| {
        let handles: Vec<_> = polys
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|f| alg.holds_identity(f)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("identity check panicked"))
            .collect()
    })
}
