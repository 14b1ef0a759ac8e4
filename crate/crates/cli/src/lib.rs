//! The `brauer` command line: invariants, Hensel lifting, algebra files and
//! the invariant suites. [`run`] is pure apart from reading input files, so
//! it can be tested without spawning a process.

pub mod suites;

use std::fmt::Write as _;

use brauer_core::algebra::{hamilton, matrix_algebra, parse_algebra, quaternion_algebra, AnyAlgebra};
use brauer_core::brauer::{
    global_sum_check, padic_invariant, quaternion_local_invariant, required_precision,
    BrauerInvariant, Place,
};
use brauer_core::crossed::{CyclicAlgebraSpec, GaloisData};
use brauer_core::extfield::unramified_extension;
use brauer_core::fields::{is_prime, parse_rational, PrimeField, Rational, Rationals};
use brauer_core::padic::{hensel_lift_root, PadicContext, Qp, DEFAULT_PRECISION};
use brauer_core::Error;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// The outcome of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub json: Option<Value>,
    pub exit: i32,
    /// Print `json` instead of `text`.
    pub prefer_json: bool,
}

impl Report {
    fn ok(text: String, json: Value, prefer_json: bool) -> Self {
        Self {
            text,
            json: Some(json),
            exit: EXIT_OK,
            prefer_json,
        }
    }

    fn text(text: String) -> Self {
        Self {
            text,
            json: None,
            exit: EXIT_OK,
            prefer_json: false,
        }
    }

    fn error(e: &Error) -> Self {
        Self {
            text: format!("error: {e}"),
            json: Some(json!({ "error": e.to_string() })),
            exit: EXIT_FAILURE,
            prefer_json: false,
        }
    }

    fn usage(text: String) -> Self {
        Self {
            text,
            json: None,
            exit: EXIT_USAGE,
            prefer_json: false,
        }
    }

    /// What the binary writes: the JSON payload when requested, otherwise
    /// the text, always newline-terminated.
    pub fn rendered(&self) -> String {
        let mut out = match (&self.json, self.prefer_json) {
            (Some(v), true) => v.to_string(),
            _ => self.text.clone(),
        };
        if !out.ends_with('\n') {
            out.push('\n');
        }
        out
    }
}

#[derive(Parser, Debug)]
#[command(name = "brauer", version, about = "Brauer invariants, local fields and central simple algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Brauer invariants of cyclic and quaternion algebras
    Inv {
        #[command(subcommand)]
        which: InvCommand,
    },
    /// Lift a simple root of a polynomial mod p to Z_p
    Hensel {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        prec: u32,
        /// Coefficients c0,c1,... from the constant term up
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        root: String,
        #[arg(long)]
        json: bool,
    },
    /// Validate, normalize or emit algebras in the JSON exchange format
    Algebra {
        #[command(subcommand)]
        which: AlgebraCommand,
    },
    /// Run a randomized invariant suite
    Verify {
        /// cocycle, norms, ramification, invariants, global or all
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum InvCommand {
    /// Invariant at the real place of (σ, R(√a), b)
    Real {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Invariant of (Frobenius, W_f, r) over Q_p
    Padic {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: usize,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        prec: u32,
        #[arg(long)]
        json: bool,
    },
    /// Local invariants of the quaternion algebra (a, b) over Q
    Quat {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// real, a prime, or all
        #[arg(long, default_value = "all")]
        place: String,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        prec: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum AlgebraCommand {
    /// Validate an algebra file and report its center and enveloping rank
    Check {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the normalized form of an algebra file
    Normalize { file: String },
    /// Print a standard algebra in normalized form
    Emit {
        #[command(subcommand)]
        which: EmitCommand,
        /// Q, Fp:P or Qp:P:N
        #[arg(long, default_value = "Q", global = true)]
        field: String,
    },
}

#[derive(Subcommand, Debug)]
enum EmitCommand {
    /// The quaternion algebra (a, b)
    Quaternion {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Hamilton's quaternions (-1, -1)
    Hamilton,
    /// The n x n matrices
    Matrix { n: usize },
}

/// Parses and executes one command line (including the program name).
pub fn run<I, S>(argv: I) -> Report
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Report::text(text)
                }
                _ => Report::usage(text),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(report) => report,
        Err(Failure::Usage(msg)) => Report::usage(format!("error: {msg}")),
        Err(Failure::Domain(e)) => Report::error(&e),
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = std::result::Result<Report, Failure>;

fn rational_arg(name: &str, s: &str) -> std::result::Result<Rational, Failure> {
    parse_rational(s).map_err(|_| Failure::Usage(format!("{name}: expected an integer or num/den, got {s:?}")))
}

fn prime_arg(p: u64) -> std::result::Result<u64, Failure> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(Failure::Usage(format!("--p: {p} is not prime")))
    }
}

fn context(p: u64, prec: u32) -> std::result::Result<PadicContext, Failure> {
    let need = if p == 2 { required_precision(2) } else { 1 };
    if prec < need {
        return Err(Error::InsufficientPrecision {
            required: need,
            available: prec,
        }
        .into());
    }
    Ok(PadicContext::new(prime_arg(p)?, prec)?)
}

/// Integers print bare, other rationals as num/den.
fn show(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn invariant_json(place: Place, x: BrauerInvariant) -> Value {
    json!({ "place": place.to_string(), "num": x.num(), "den": x.den() })
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Inv { which } => inv(which),
        Command::Hensel {
            p,
            prec,
            poly,
            root,
            json,
        } => hensel(p, prec, &poly, &root, json),
        Command::Algebra { which } => algebra(which),
        Command::Verify {
            suite,
            seed,
            trials,
            json,
        } => verify(&suite, seed, trials, json),
    }
}

fn inv(which: InvCommand) -> Outcome {
    match which {
        InvCommand::Real { a, b, json } => {
            let (x, y) = (rational_arg("A", &a)?, rational_arg("B", &b)?);
            let v = brauer_core::brauer::real_invariant(&x, &y)?;
            Ok(Report::ok(
                format!("inv_real({},{}) = {v}", show(&x), show(&y)),
                invariant_json(Place::Real, v),
                json,
            ))
        }
        InvCommand::Padic { p, f, r, prec, json } => {
            if f == 0 {
                return Err(Failure::Usage("--f must be at least 1".into()));
            }
            let ctx = context(p, prec)?;
            let r = rational_arg("--r", &r)?;
            let (_, _, frob) = unramified_extension(&ctx, f)?;
            let spec = CyclicAlgebraSpec::new(GaloisData::new(frob)?, ctx.from_rational(&r))?;
            let v = padic_invariant(&spec)?;
            Ok(Report::ok(v.to_string(), invariant_json(Place::Prime(p), v), json))
        }
        InvCommand::Quat {
            a,
            b,
            place,
            prec,
            json,
        } => quat(&a, &b, &place, prec, json),
    }
}

fn quat(a: &str, b: &str, place: &str, prec: u32, as_json: bool) -> Outcome {
    let (x, y) = (rational_arg("A", a)?, rational_arg("B", b)?);
    let line = |v: Place, inv: BrauerInvariant| format!("inv_{v}({},{}) = {inv}", show(&x), show(&y));
    let single = |v: Place| -> Outcome {
        if let Place::Prime(p) = v {
            context(p, prec)?;
        }
        let inv = quaternion_local_invariant(&x, &y, v, prec)?;
        Ok(Report::ok(line(v, inv), invariant_json(v, inv), as_json))
    };
    match place {
        "real" => single(Place::Real),
        "all" => {
            let check = global_sum_check(&x, &y, prec)?;
            let mut text = String::new();
            for (v, inv) in &check.invariants {
                writeln!(text, "{}", line(*v, *inv)).expect("write to string");
            }
            let spots: Vec<String> = check.spot_checks.iter().map(|(v, _)| v.to_string()).collect();
            let spots_ok = check.spot_checks.iter().all(|(_, i)| i.is_zero());
            writeln!(
                text,
                "spot checks at {}: {}",
                spots.join(", "),
                if spots_ok { "all 0" } else { "NONZERO" }
            )
            .expect("write to string");
            write!(
                text,
                "sum ≡ 0 (mod 1): {}",
                if check.sum.is_zero() { "yes" } else { "no" }
            )
            .expect("write to string");
            let payload = json!({
                "invariants": check.invariants.iter().map(|(v, i)| invariant_json(*v, *i)).collect::<Vec<_>>(),
                "spot_checks": check.spot_checks.iter().map(|(v, i)| invariant_json(*v, *i)).collect::<Vec<_>>(),
                "sum_zero": check.sum.is_zero(),
            });
            let mut report = Report::ok(text, payload, as_json);
            if !check.holds() {
                report.exit = EXIT_FAILURE;
            }
            Ok(report)
        }
        p => {
            let p: u64 = p
                .parse()
                .map_err(|_| Failure::Usage(format!("--place: expected real, all or a prime, got {p:?}")))?;
            single(Place::Prime(prime_arg(p)?))
        }
    }
}

fn hensel(p: u64, prec: u32, poly: &str, root: &str, as_json: bool) -> Outcome {
    let ctx = context(p, prec)?;
    let coeffs = poly
        .split(',')
        .map(|c| rational_arg("--poly", c).map(|r| ctx.from_rational(&r)))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let a0 = ctx.from_rational(&rational_arg("--root", root)?);
    let r = hensel_lift_root(&coeffs, &a0)?;
    let text = r.to_string();
    let payload = json!({
        "p": p,
        "precision": prec,
        "root": r.to_integer_mod(prec)?.to_string(),
        "expansion": text,
    });
    Ok(Report::ok(text, payload, as_json))
}

fn read_file(path: &str) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Domain(Error::Malformed(format!("{path}: {e}"))))
}

fn parse_field(s: &str) -> std::result::Result<(String, Vec<u64>), Failure> {
    let bad = || Failure::Usage(format!("--field: expected Q, Fp:P or Qp:P:N, got {s:?}"));
    let mut parts = s.split(':');
    let head = parts.next().ok_or_else(bad)?.to_string();
    let nums = parts
        .map(|x| x.parse::<u64>().map_err(|_| bad()))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    match (head.as_str(), nums.len()) {
        ("Q", 0) | ("Fp", 1) | ("Qp", 2) => Ok((head, nums)),
        _ => Err(bad()),
    }
}

fn algebra(which: AlgebraCommand) -> Outcome {
    match which {
        AlgebraCommand::Check { file, json } => {
            let a = parse_algebra(&read_file(&file)?)?;
            let (dim, center, rank) = (a.dim(), a.center_dim(), a.enveloping_map_rank());
            let cs = rank == dim * dim;
            let text = format!(
                "field: {}\ndimension: {dim}\ncenter dimension: {center}\nenveloping map rank: {rank} of {}\ncentral simple: {}",
                a.field_tag(),
                dim * dim,
                if cs { "yes" } else { "no" }
            );
            let payload = json!({
                "field": a.field_tag().to_json(),
                "dim": dim,
                "center_dim": center,
                "enveloping_rank": rank,
                "central_simple": cs,
            });
            Ok(Report::ok(text, payload, json))
        }
        AlgebraCommand::Normalize { file } => {
            let a = parse_algebra(&read_file(&file)?)?;
            Ok(Report::text(a.to_normalized_string()))
        }
        AlgebraCommand::Emit { which, field } => {
            let (head, nums) = parse_field(&field)?;
            let a: AnyAlgebra = match head.as_str() {
                "Q" => emit(Rationals, which)?.into(),
                "Fp" => emit(PrimeField::new(prime_arg(nums[0])?)?, which)?.into(),
                _ => emit(Qp::new(&context(nums[0], nums[1] as u32)?), which)?.into(),
            };
            Ok(Report::text(a.to_normalized_string()))
        }
    }
}

fn emit<F>(field: F, which: EmitCommand) -> std::result::Result<brauer_core::algebra::StructureConstantAlgebra<F>, Failure>
where
    F: brauer_core::fields::Field<Elem = <F as EmitField>::E> + EmitField,
{
    Ok(match which {
        EmitCommand::Hamilton => hamilton(field),
        EmitCommand::Matrix { n } => {
            if n == 0 {
                return Err(Failure::Usage("matrix size must be at least 1".into()));
            }
            matrix_algebra(field, n)?
        }
        EmitCommand::Quaternion { a, b } => {
            let x = field.convert(&rational_arg("A", &a)?)?;
            let y = field.convert(&rational_arg("B", &b)?)?;
            quaternion_algebra(field, &x, &y)?
        }
    })
}

/// Conversion of command-line rationals into field elements.
trait EmitField {
    type E;
    fn convert(&self, x: &Rational) -> std::result::Result<Self::E, Failure>;
}

impl EmitField for Rationals {
    type E = Rational;
    fn convert(&self, x: &Rational) -> std::result::Result<Rational, Failure> {
        Ok(x.clone())
    }
}

impl EmitField for PrimeField {
    type E = u64;
    fn convert(&self, x: &Rational) -> std::result::Result<u64, Failure> {
        use brauer_core::fields::Field;
        let p = num_bigint::BigInt::from(self.p());
        let reduce = |n: &num_bigint::BigInt| {
            let r = ((n % &p) + &p) % &p;
            u64::try_from(r).expect("reduced below p")
        };
        self.div(&reduce(x.numer()), &reduce(x.denom()))
            .ok_or_else(|| Failure::Domain(Error::DivisionByZero))
    }
}

impl EmitField for Qp {
    type E = brauer_core::padic::PadicNumber;
    fn convert(&self, x: &Rational) -> std::result::Result<Self::E, Failure> {
        Ok(self.context().from_rational(x))
    }
}

fn verify(suite: &str, seed: u64, trials: usize, as_json: bool) -> Outcome {
    let names: Vec<&str> = if suite == "all" {
        suites::SUITES.to_vec()
    } else if suites::SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(Failure::Usage(format!(
            "--suite: expected one of {} or all, got {suite:?}",
            suites::SUITES.join(", ")
        )));
    };
    let mut text = String::new();
    let mut payload = Vec::new();
    let mut all_ok = true;
    for name in names {
        let r = suites::run_suite(name, seed, trials)?;
        all_ok &= r.ok();
        writeln!(
            text,
            "suite {}: {} passed, {} failed{}",
            r.name,
            r.passed,
            r.failed,
            if r.ok() { "" } else { " FAIL" }
        )
        .expect("write to string");
        for f in &r.failures {
            writeln!(text, "  failed: {f}").expect("write to string");
        }
        payload.push(json!({
            "suite": r.name,
            "passed": r.passed,
            "failed": r.failed,
            "failures": r.failures,
        }));
    }
    let mut report = Report::ok(text.trim_end().to_string(), json!(payload), as_json);
    if !all_ok {
        report.exit = EXIT_FAILURE;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brauer(args: &[&str]) -> Report {
        run(std::iter::once("brauer").chain(args.iter().copied()))
    }

    #[test]
    fn real_invariant_text() {
        let r = brauer(&["inv", "real", "-1", "-1"]);
        assert_eq!(r.exit, EXIT_OK);
        assert_eq!(r.rendered(), "inv_real(-1,-1) = 1/2\n");
        assert_eq!(brauer(&["inv", "real", "1/2", "-3"]).text, "inv_real(1/2,-3) = 0");
    }

    #[test]
    fn json_payloads() {
        let r = brauer(&["inv", "padic", "--p", "5", "--f", "3", "--r", "50", "--json"]);
        assert_eq!(r.rendered(), "{\"den\":3,\"num\":2,\"place\":\"5\"}\n");
    }

    #[test]
    fn exit_statuses() {
        assert_eq!(brauer(&[]).exit, EXIT_USAGE);
        assert_eq!(brauer(&["inv", "real", "x", "1"]).exit, EXIT_USAGE);
        assert_eq!(brauer(&["inv", "real", "0", "1"]).exit, EXIT_FAILURE);
        assert_eq!(brauer(&["hensel", "--p", "5", "--poly", "1,0,1", "--root", "1"]).exit, EXIT_FAILURE);
        assert_eq!(brauer(&["--help"]).exit, EXIT_OK);
    }

    #[test]
    fn default_precision_is_used() {
        let r = brauer(&["hensel", "--p", "7", "--poly", "-2,0,1", "--root", "3"]);
        assert_eq!(r.exit, EXIT_OK);
        assert!(r.text.ends_with("O(7³²)"), "{}", r.text);
    }

    #[test]
    fn suites_are_deterministic() {
        let a = suites::run_suite("global", 3, 4).unwrap();
        let b = suites::run_suite("global", 3, 4).unwrap();
        assert!(a.ok());
        assert_eq!(a, b);
        assert!(suites::run_suite("nope", 0, 1).is_err());
    }
}
