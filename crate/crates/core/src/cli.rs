//! The `qqcalc` command line.
//!
//! [`run`] parses arguments and executes a command, returning what should be written
//! to stdout/stderr and the exit status: 0 success, 1 a verification failed,
//! 2 usage error.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use crate::laurent::{LaurentPoly, SubstTarget, SubstValue};
use crate::ncalg::{self, binomial_gt, binomial_lt, RelationConst};
use crate::operators;
use crate::qcomb;
use crate::qexp;
use crate::report::{Report, VerifyOptions};

pub const DEFAULT_N_MAX: u32 = 8;

#[derive(Debug, Parser)]
#[command(name = "qqcalc", version, about = "Exact two-base (Q,q)-calculus and Q-commutative binomial identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand an ordered q-product (x+y)^n_{<q} or (x+y)^n_{>q}.
    Expand(ExpandArgs),
    /// Print the (Q,q)-binomial coefficient [n k], optionally specialised.
    Coeff(CoeffArgs),
    /// Print the Q-commutative q-Pascal triangle.
    Triangle(TriangleArgs),
    /// Run identity checks.
    Verify(VerifyArgs),
    /// Check the exponential factorisation e((x+y)_{<q}) = e(x) E(y).
    ExpCheck(ExpCheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Dir {
    Lt,
    Gt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RelationPreset {
    #[value(name = "Q")]
    BigQ,
    #[value(name = "inv-q")]
    InvQ,
    #[value(name = "one")]
    One,
}

impl RelationPreset {
    pub fn relation(self) -> RelationConst {
        match self {
            RelationPreset::BigQ => RelationConst::big_q(),
            RelationPreset::InvQ => RelationConst::inv_q(),
            RelationPreset::One => RelationConst::one(),
        }
    }
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[arg(long = "n")]
    pub n: u32,
    #[arg(long, value_enum, default_value = "lt")]
    pub dir: Dir,
    #[arg(long, value_enum, default_value = "Q")]
    pub relation: RelationPreset,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CoeffArgs {
    #[arg(value_name = "N", conflicts_with = "n_flag", required_unless_present = "n_flag")]
    pub n_pos: Option<u32>,
    #[arg(value_name = "K", allow_negative_numbers = true, conflicts_with = "k_flag", required_unless_present = "k_flag")]
    pub k_pos: Option<i64>,
    #[arg(long = "n", id = "n_flag")]
    pub n_flag: Option<u32>,
    #[arg(long = "k", id = "k_flag", allow_negative_numbers = true)]
    pub k_flag: Option<i64>,
    /// `golden`, `Q=1`, `q=1`, `Q=q`, `Q=1/q`, or numeric `q=<r>,Q=<r>`; comma separated.
    #[arg(long)]
    pub subst: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TriangleArgs {
    #[arg(long = "n-max", default_value_t = 4)]
    pub n_max: u32,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Theorem,
    OrderRelation,
    Symmetric,
    Reversal,
    Descending,
    SpecialCases,
    Operators,
    Exp,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum, default_value = "all")]
    pub suite: Suite,
    #[arg(long = "n-max", default_value_t = DEFAULT_N_MAX)]
    pub n_max: u32,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Run every case on the calling thread.
    #[arg(long)]
    pub serial: bool,
    /// Corrupt one right-hand-side coefficient per case (checker self-test).
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct ExpCheckArgs {
    #[arg(long = "n-max", default_value_t = DEFAULT_N_MAX)]
    pub n_max: u32,
    /// Also print the truncated series e((x+y)_{<q}).
    #[arg(long)]
    pub show: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

/// Result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: msg.into() }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome::usage(text)
            };
        }
    };
    match cli.command {
        Command::Expand(a) => cmd_expand(&a),
        Command::Coeff(a) => cmd_coeff(&a),
        Command::Triangle(a) => cmd_triangle(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::ExpCheck(a) => cmd_exp_check(&a),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

pub fn cmd_expand(a: &ExpandArgs) -> Outcome {
    let rel = a.relation.relation();
    let p = match a.dir {
        Dir::Lt => binomial_lt(a.n, rel),
        Dir::Gt => binomial_gt(a.n, rel),
    };
    match a.format {
        Format::Text => Outcome::ok(format!("{p}\n")),
        Format::Json => Outcome::ok(to_json(&p)),
    }
}

/// Parses a `--subst` specification into the sequence of homomorphisms to apply.
pub fn parse_subst(spec: &str) -> Result<Vec<SubstTarget>, String> {
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("golden") {
        return Ok(vec![SubstTarget::Golden]);
    }
    let mut q_num = None;
    let mut big_q_num = None;
    let mut symbolic = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (lhs, rhs) = part
            .split_once('=')
            .ok_or_else(|| format!("substitution {part:?} is not of the form var=value"))?;
        let (lhs, rhs) = (lhs.trim(), rhs.trim());
        if let Ok(r) = rhs.parse::<BigRational>() {
            match lhs {
                "q" => q_num = Some(r),
                "Q" => big_q_num = Some(r),
                _ => return Err(format!("unknown variable {lhs:?}")),
            }
            continue;
        }
        let t = match (lhs, rhs) {
            ("Q", "q") => SubstTarget::BigQToQ,
            ("Q", "1/q" | "q^-1" | "inv-q") => SubstTarget::BigQToInvQ,
            _ => return Err(format!("unsupported substitution {part:?}")),
        };
        symbolic.push(t);
    }
    match (q_num, big_q_num) {
        (Some(q), Some(big_q)) => {
            symbolic.push(SubstTarget::Numeric { q, big_q });
        }
        (Some(q), None) if q == BigRational::from_integer(BigInt::from(1)) => symbolic.push(SubstTarget::QToOne),
        (None, Some(b)) if b == BigRational::from_integer(BigInt::from(1)) => symbolic.insert(0, SubstTarget::BigQToOne),
        (None, None) => {}
        _ => return Err("numeric substitution needs values for both q and Q (or a single base set to 1)".into()),
    }
    if symbolic.is_empty() {
        return Err("empty substitution".into());
    }
    let terminal = |t: &SubstTarget| matches!(t, SubstTarget::Numeric { .. } | SubstTarget::Golden);
    if symbolic[..symbolic.len() - 1].iter().any(terminal) {
        return Err("numeric or golden substitution must come last".into());
    }
    Ok(symbolic)
}

/// Applies a parsed substitution chain.
pub fn apply_subst(p: &LaurentPoly, chain: &[SubstTarget]) -> crate::Result<SubstValue> {
    let mut cur = SubstValue::Laurent(p.clone());
    for t in chain {
        cur = match cur {
            SubstValue::Laurent(lp) => lp.substitute(t)?,
            other => return Ok(other),
        };
    }
    Ok(cur)
}

pub fn cmd_coeff(a: &CoeffArgs) -> Outcome {
    let (Some(n), Some(k)) = (a.n_pos.or(a.n_flag), a.k_pos.or(a.k_flag)) else {
        return Outcome::usage("coeff needs both N and K\n");
    };
    let c = qcomb::qq_binomial(n, k);
    let value = match &a.subst {
        None => SubstValue::Laurent(c),
        Some(spec) => {
            let chain = match parse_subst(spec) {
                Ok(c) => c,
                Err(e) => return Outcome::usage(format!("error: {e}\n")),
            };
            match apply_subst(&c, &chain) {
                Ok(v) => v,
                Err(e) => return Outcome::usage(format!("error: {e}\n")),
            }
        }
    };
    match a.format {
        Format::Text => Outcome::ok(format!("{value}\n")),
        Format::Json => {
            let v = match &value {
                SubstValue::Laurent(p) => serde_json::to_value(p),
                SubstValue::Rational(r) => Ok(json!({ "rational": r.to_string() })),
                SubstValue::Golden(g) => serde_json::to_value(g),
            }
            .expect("serialisable");
            Outcome::ok(to_json(&v))
        }
    }
}

pub fn cmd_triangle(a: &TriangleArgs) -> Outcome {
    let rows = qcomb::triangle_rows(a.n_max);
    match a.format {
        Format::Text => Outcome::ok(qcomb::triangle_text(&rows)),
        Format::Json => Outcome::ok(to_json(&rows)),
    }
}

/// Reports for one suite, in a fixed order.
pub fn suite_reports(suite: Suite, n_max: u32, opts: &VerifyOptions) -> Vec<Report> {
    let n1 = n_max.max(1);
    match suite {
        Suite::Theorem => vec![
            ncalg::verify_main_theorem(n_max, opts),
            qcomb::recursion_report(n_max),
            qcomb::pascal_report(n_max, opts),
        ],
        Suite::OrderRelation => vec![ncalg::verify_order_relation(n_max, opts)],
        Suite::Symmetric => vec![ncalg::verify_symmetric_q1(n1, opts)],
        Suite::Reversal => vec![ncalg::verify_order_reversal(n1, opts)],
        Suite::Descending => vec![ncalg::verify_descending_expansion(n1, opts)],
        Suite::SpecialCases => vec![ncalg::verify_special_cases(n1, opts)],
        Suite::Operators => vec![
            operators::qcommutation_report(n_max, opts),
            operators::verify_operator_binomial(n1, n1 + 1, opts),
        ],
        Suite::Exp => vec![
            qexp::verify_factorization(n_max, opts),
            qexp::verify_jackson_degeneration(n_max, opts),
        ],
        Suite::All => [
            Suite::Theorem,
            Suite::OrderRelation,
            Suite::Symmetric,
            Suite::Reversal,
            Suite::Descending,
            Suite::SpecialCases,
            Suite::Operators,
            Suite::Exp,
        ]
        .into_iter()
        .flat_map(|s| suite_reports(s, n_max, opts))
        .collect(),
    }
}

fn render_reports(reports: &[Report], format: Format) -> (bool, String) {
    let pass = reports.iter().all(|r| r.pass);
    let body = match format {
        Format::Text => {
            let mut s: String = reports.iter().map(ToString::to_string).collect();
            s.push_str(if pass { "ALL PASS\n" } else { "FAILED\n" });
            s
        }
        Format::Json => to_json(&json!({ "pass": pass, "reports": reports })),
    };
    (pass, body)
}

fn finish(reports: &[Report], format: Format) -> Outcome {
    let (pass, stdout) = render_reports(reports, format);
    if pass {
        return Outcome::ok(stdout);
    }
    let first = reports
        .iter()
        .find_map(|r| r.first_failure().map(|c| (r.identity.clone(), c.clone())))
        .expect("a failing report has a failing case");
    let stderr = format!(
        "first mismatch in {} {}: {}\n",
        first.0,
        first.1.case,
        first.1.diff.as_deref().unwrap_or("")
    );
    Outcome { code: 1, stdout, stderr }
}

pub fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let opts = VerifyOptions { parallel: !a.serial, perturb: a.inject_fault };
    finish(&suite_reports(a.suite, a.n_max, &opts), a.format)
}

pub fn cmd_exp_check(a: &ExpCheckArgs) -> Outcome {
    let opts = VerifyOptions::parallel();
    let reports = suite_reports(Suite::Exp, a.n_max, &opts);
    let mut out = finish(&reports, a.format);
    if a.show {
        let series = qexp::exp_of_binomial(a.n_max);
        let shown = match a.format {
            Format::Text => format!("{series}\n"),
            Format::Json => to_json(&series),
        };
        out.stdout = shown + &out.stdout;
    }
    out
}
