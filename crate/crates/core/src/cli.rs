//! Command-line front end: `eval`, `crosscheck` and `table`.
//!
//! Exit codes: 0 success, 1 a cross-check identity failed, 2 usage error,
//! 3 a method's size cap was exceeded.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::exactpoly::{binomial, parse_rational, q_binomial, q_int, LaurentPoly, RationalPoly};
use crate::{ansatz, closedforms, paths, permstats, rooks};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IDENTITY_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

const METHOD_CAPS_HELP: &str = "Size caps per method: matrix 30, motzkin 40, signed-paths 10, \
rooks 12, theorem1 120, williams 30, permutations-ascent 9, permutations-crossing 9. \
Requests beyond a cap exit with code 3.";

#[derive(Debug, Parser)]
#[command(
    name = "pasep",
    version,
    about = "Exact PASEP partition polynomials y<W|(yD+E)^(n-1)|V> by several methods",
    after_help = METHOD_CAPS_HELP
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for the parallel enumerations (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Reserved; every computation is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the partition polynomial by one method.
    #[command(after_help = METHOD_CAPS_HELP)]
    Eval(EvalArgs),
    /// Run every identity between methods and every module invariant.
    Crosscheck(CrosscheckArgs),
    /// Emit a CSV of coefficients for a range of n.
    Table(TableArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum, default_value_t = Method::Theorem1)]
    pub method: Method,
    #[arg(
        short = 'n',
        conflicts_with = "range",
        required_unless_present = "range"
    )]
    pub n: Option<usize>,
    /// Inclusive range `a..b`.
    #[arg(long, value_parser = parse_range)]
    pub range: Option<SizeRange>,
    /// Specialize q to a rational value.
    #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
    pub q: Option<BigRational>,
    /// Specialize y to a rational value.
    #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
    pub y: Option<BigRational>,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CrosscheckArgs {
    #[arg(long = "n-max", default_value_t = 5)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Inclusive range `a..b`.
    #[arg(value_parser = parse_range, required_unless_present = "range_flag")]
    pub range: Option<SizeRange>,
    #[arg(long = "range", value_parser = parse_range, conflicts_with = "range")]
    pub range_flag: Option<SizeRange>,
    /// `qK` for `[q^K]` at `y = 1`, or `qKyM` for `[q^K y^M]`; omitted, all
    /// `q`-coefficients at `y = 1`.
    #[arg(long, value_parser = parse_coeff)]
    pub coeff: Option<CoeffSpec>,
    #[arg(long, value_enum, default_value_t = Method::Theorem1)]
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Matrix,
    Motzkin,
    SignedPaths,
    Rooks,
    Theorem1,
    Williams,
    PermutationsAscent,
    PermutationsCrossing,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::Matrix,
        Method::Motzkin,
        Method::SignedPaths,
        Method::Rooks,
        Method::Theorem1,
        Method::Williams,
        Method::PermutationsAscent,
        Method::PermutationsCrossing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Matrix => "matrix",
            Method::Motzkin => "motzkin",
            Method::SignedPaths => "signed-paths",
            Method::Rooks => "rooks",
            Method::Theorem1 => "theorem1",
            Method::Williams => "williams",
            Method::PermutationsAscent => "permutations-ascent",
            Method::PermutationsCrossing => "permutations-crossing",
        }
    }

    /// Largest `n` the method accepts.
    pub fn cap(self) -> usize {
        match self {
            Method::Matrix => 30,
            Method::Motzkin => 40,
            Method::SignedPaths => 10,
            Method::Rooks => 12,
            Method::Theorem1 => 120,
            Method::Williams => 30,
            Method::PermutationsAscent | Method::PermutationsCrossing => 9,
        }
    }

    /// `y <W|(yD+E)^(n-1)|V>` by this method, for `1 <= n <= cap`.
    pub fn compute(self, n: usize) -> Result<LaurentPoly, CliError> {
        if n == 0 {
            return Err(CliError::Usage("n must be at least 1".into()));
        }
        if n > self.cap() {
            return Err(CliError::Cap {
                method: self.name(),
                n,
                cap: self.cap(),
            });
        }
        Ok(match self {
            Method::Matrix => ansatz::partition_polynomial(n),
            Method::Motzkin => paths::motzkin_polynomial(n),
            Method::SignedPaths => paths::signed_path_polynomial(n),
            Method::Rooks => rooks::partition_via_rooks(n),
            Method::Theorem1 => {
                closedforms::theorem1(n)
                    .map_err(|e| CliError::Identity(format!("theorem1: {e}")))?
                    .value
            }
            Method::Williams => closedforms::williams_polynomial(n),
            Method::PermutationsAscent => {
                permstats::gen_polynomial(n, permstats::StatPair::AscentPattern)
            }
            Method::PermutationsCrossing => {
                permstats::gen_polynomial(n, permstats::StatPair::WexCrossing)
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// Deliberate defects for checking that the cross-check notices them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Places `E_{m,n}` at `y^(m-1)` instead of `y^m`.
    WilliamsOffset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeRange {
    pub start: usize,
    pub end: usize,
}

impl SizeRange {
    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoeffSpec {
    pub q: i64,
    pub y: Option<i64>,
}

impl CoeffSpec {
    fn header(self) -> String {
        match self.y {
            Some(m) => format!("q{}y{}", self.q, m),
            None => format!("q{}", self.q),
        }
    }

    fn extract(self, p: &LaurentPoly) -> BigInt {
        match self.y {
            Some(m) => p.coeff(self.q, m),
            None => p.at_y_one().coeff(self.q, 0),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("method {method} is capped at n = {cap}; got n = {n}")]
    Cap {
        method: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("identity failure: {0}")]
    Identity(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Cap { .. } => EXIT_CAP,
            CliError::Identity(_) => EXIT_IDENTITY_FAILURE,
            CliError::Io(_) => EXIT_IDENTITY_FAILURE,
        }
    }
}

pub fn parse_range(s: &str) -> Result<SizeRange, String> {
    let bad = || format!("malformed range {s:?}; expected a..b with a <= b");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let start: usize = a.trim().parse().map_err(|_| bad())?;
    let end: usize = b.trim().parse().map_err(|_| bad())?;
    if start > end {
        return Err(bad());
    }
    Ok(SizeRange { start, end })
}

pub fn parse_coeff(s: &str) -> Result<CoeffSpec, String> {
    let bad = || format!("malformed coefficient {s:?}; expected qK or qKyM");
    let rest = s.strip_prefix('q').ok_or_else(bad)?;
    let (qk, ym) = match rest.split_once('y') {
        Some((a, b)) => (a, Some(b)),
        None => (rest, None),
    };
    let q = qk.parse().map_err(|_| bad())?;
    let y = ym.map(|m| m.parse().map_err(|_| bad())).transpose()?;
    Ok(CoeffSpec { q, y })
}

fn parse_rational_arg(s: &str) -> Result<BigRational, String> {
    parse_rational(s).ok_or_else(|| format!("malformed rational {s:?}"))
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))
            .and_then(|pool| pool.install(|| dispatch(&cli.command, out))),
        None => dispatch(&cli.command, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: &Command, out: &mut (dyn Write + Send)) -> Result<i32, CliError> {
    match command {
        Command::Eval(args) => cmd_eval(args, out).map(|()| EXIT_OK),
        Command::Crosscheck(args) => cmd_crosscheck(args, out),
        Command::Table(args) => cmd_table(args, out).map(|()| EXIT_OK),
    }
}

/// A computed polynomial, possibly specialized at rational `q` and/or `y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum EvalValue {
    Exact(LaurentPoly),
    Specialized(RationalPoly),
}

impl EvalValue {
    fn pretty(&self) -> String {
        match self {
            EvalValue::Exact(p) => p.pretty(),
            EvalValue::Specialized(p) => p.to_string(),
        }
    }

    fn csv_rows(&self) -> Vec<(i64, i64, String)> {
        match self {
            EvalValue::Exact(p) => p.terms().map(|((a, b), c)| (a, b, c.to_string())).collect(),
            EvalValue::Specialized(p) => {
                p.terms().map(|((a, b), c)| (a, b, c.to_string())).collect()
            }
        }
    }
}

/// Evaluates `method` at `n` and applies the optional specializations.
pub fn evaluate(
    method: Method,
    n: usize,
    q: Option<&BigRational>,
    y: Option<&BigRational>,
) -> Result<EvalValue, CliError> {
    let p = method.compute(n)?;
    if q.is_none() && y.is_none() {
        return Ok(EvalValue::Exact(p));
    }
    let mut r = RationalPoly::from(&p);
    let usage = |e: crate::PolyError| CliError::Usage(e.to_string());
    if let Some(q) = q {
        r = r.eval_q(q).map_err(usage)?;
    }
    if let Some(y) = y {
        r = r.eval_y(y).map_err(usage)?;
    }
    Ok(EvalValue::Specialized(r))
}

pub fn cmd_eval(args: &EvalArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let sizes: Vec<usize> = match (args.n, args.range) {
        (Some(n), _) => vec![n],
        (None, Some(r)) => r.iter().collect(),
        (None, None) => return Err(CliError::Usage("need -n or --range".into())),
    };
    let mut results = Vec::new();
    for n in sizes {
        results.push((
            n,
            evaluate(args.method, n, args.q.as_ref(), args.y.as_ref())?,
        ));
    }
    let show = |r: &Option<BigRational>| r.as_ref().map(|v| v.to_string());
    match args.format {
        Format::Json => {
            let records: Vec<_> = results
                .iter()
                .map(|(n, v)| {
                    json!({
                        "method": args.method.name(),
                        "n": n,
                        "q": show(&args.q),
                        "y": show(&args.y),
                        "value": v,
                    })
                })
                .collect();
            let doc = if records.len() == 1 {
                records.into_iter().next().unwrap()
            } else {
                serde_json::Value::Array(records)
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&doc).expect("serializable")
            )?;
        }
        Format::Csv => {
            let rows = results.iter().flat_map(|(n, v)| {
                v.csv_rows()
                    .into_iter()
                    .map(move |(a, b, c)| vec![n.to_string(), a.to_string(), b.to_string(), c])
            });
            out.write_all(to_csv(&["n", "q", "y", "coeff"], rows).as_bytes())?;
        }
        Format::Pretty => {
            let many = results.len() > 1;
            for (n, v) in &results {
                if many {
                    writeln!(out, "n={n}: {}", v.pretty())?;
                } else {
                    writeln!(out, "{}", v.pretty())?;
                }
            }
        }
    }
    Ok(())
}

pub fn cmd_table(args: &TableArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let range = args
        .range
        .or(args.range_flag)
        .ok_or_else(|| CliError::Usage("need a range".into()))?;
    if range.start == 0 {
        return Err(CliError::Usage("range must start at n >= 1".into()));
    }
    let rows: Vec<(usize, LaurentPoly)> = range
        .iter()
        .map(|n| args.method.compute(n).map(|p| (n, p)))
        .collect::<Result<_, _>>()?;
    out.write_all(table_csv(&rows, args.coeff).as_bytes())?;
    Ok(())
}

/// Renders a header and rows as CSV with LF line endings.
fn to_csv<H: AsRef<str>>(header: &[H], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header.iter().map(|h| h.as_ref()))
        .expect("writing to memory");
    for row in rows {
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("UTF-8 input")
}

/// CSV with one row per `n`: the selected coefficient, or every
/// `q`-coefficient at `y = 1`.
pub fn table_csv(rows: &[(usize, LaurentPoly)], coeff: Option<CoeffSpec>) -> String {
    match coeff {
        Some(spec) => to_csv(
            &["n".to_string(), spec.header()],
            rows.iter()
                .map(|(n, p)| vec![n.to_string(), spec.extract(p).to_string()]),
        ),
        None => {
            let at_one: Vec<LaurentPoly> = rows.iter().map(|(_, p)| p.at_y_one()).collect();
            let max_q = at_one
                .iter()
                .filter_map(|p| p.bounds().map(|b| b.max_q))
                .max()
                .unwrap_or(0);
            let header: Vec<String> = std::iter::once("n".to_string())
                .chain((0..=max_q).map(|k| format!("q{k}")))
                .collect();
            to_csv(
                &header,
                rows.iter().zip(&at_one).map(|((n, _), p)| {
                    std::iter::once(n.to_string())
                        .chain((0..=max_q).map(|k| p.coeff(k, 0).to_string()))
                        .collect()
                }),
            )
        }
    }
}

/// One named identity checked at one size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub n: Option<usize>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub n_max: usize,
    pub passed: bool,
    pub first_failure: Option<String>,
    /// How Williams's `E_{m,n}` is aligned with the `y`-grading.
    pub williams_indexing: String,
    pub checks: Vec<CheckOutcome>,
    /// Every library operation exercised by the run, as `module::operation`.
    pub covered_operations: Vec<String>,
}

/// Operations reached through `eval` rather than `crosscheck`.
pub const EVAL_OPERATIONS: &[&str] = &["cli::cmd_eval", "exactpoly::eval_q"];

#[derive(Default)]
struct Recorder {
    checks: Vec<CheckOutcome>,
    ops: BTreeSet<&'static str>,
}

impl Recorder {
    fn check(
        &mut self,
        name: &str,
        n: Option<usize>,
        ops: &[&'static str],
        f: impl FnOnce() -> Result<(), String>,
    ) {
        self.ops.extend(ops);
        let result = f();
        self.checks.push(CheckOutcome {
            name: name.to_string(),
            n,
            passed: result.is_ok(),
            detail: result.err(),
        });
    }
}

fn expect_eq(what: &str, lhs: &LaurentPoly, rhs: &LaurentPoly) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{what}: {lhs} != {rhs}"))
    }
}

fn expect(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Largest sizes for the exhaustive checks inside the cross-check.
const MATCHING_CHECK_CAP: usize = 6;
const LGV_CHECK_CAP: usize = 7;
const PHI_CHECK_CAP: usize = 6;
const INVERSION_CHECK_CAP: usize = 6;
const T_TABLE_CHECK_CAP: usize = 8;
const NORMALIZATION_CHECK_CAP: usize = 8;
const M_SIGNED_CHECK_CAP: usize = 10;

/// Runs every identity for `1 <= n <= n_max`.
pub fn crosscheck(n_max: usize, fault: Option<Fault>) -> CrosscheckReport {
    let mut rec = Recorder::default();
    let williams_offset = match fault {
        Some(Fault::WilliamsOffset) => -1,
        None => 0,
    };

    for n in 1..=n_max {
        let t1 = closedforms::theorem1(n);
        rec.check(
            "theorem1 exact division",
            Some(n),
            &[
                "closedforms::theorem1",
                "exactpoly::exact_div",
                "exactpoly::add",
                "exactpoly::mul",
                "exactpoly::binomial",
            ],
            || {
                let t = t1.as_ref().map_err(|e| e.to_string())?;
                expect(t.is_permutation_count(), || {
                    format!("not a permutation count: {}", t.value)
                })
            },
        );
        let Ok(t1) = t1.map(|t| t.value) else {
            continue;
        };

        rec.check(
            "matrix vs theorem1",
            Some(n),
            &[
                "ansatz::build_D",
                "ansatz::build_E",
                "ansatz::scalar_product",
            ],
            || expect_eq("matrix", &ansatz::partition_polynomial(n), &t1),
        );
        rec.check(
            "matrix truncation stability",
            Some(n),
            &["ansatz::scalar_product"],
            || {
                expect(
                    ansatz::is_truncation_stable(&ansatz::OperatorExpr::y_d_plus_e(), n - 1, 3),
                    || "scalar product depends on truncation".into(),
                )
            },
        );
        rec.check(
            "motzkin vs theorem1",
            Some(n),
            &["paths::motzkin_polynomial"],
            || expect_eq("motzkin", &paths::motzkin_polynomial(n), &t1),
        );
        if n <= Method::SignedPaths.cap() {
            let signed = paths::enumerate_p(n);
            rec.check(
                "signed_paths vs theorem1",
                Some(n),
                &["paths::enumerate_P"],
                || {
                    let scaled = &t1 * &crate::exactpoly::one_minus_q_pow(n as u32);
                    expect_eq("enumerate_P", &signed, &scaled)
                },
            );
            rec.check(
                "decomposition sum vs enumerate_P",
                Some(n),
                &["paths::enumerate_M_signed", "paths::count_left_factors"],
                || expect_eq("decomposition", &paths::decomposition_sum(n), &signed),
            );
        }
        if n <= 6 {
            rec.check(
                "decompose/recompose round trip",
                Some(n),
                &["paths::decompose"],
                || {
                    for p in paths::p_paths(n) {
                        let d = paths::decompose(&p).map_err(|e| e.to_string())?;
                        if !d.core.in_m() {
                            return Err(format!("core of {p} not in M"));
                        }
                        let back =
                            paths::recompose(&d.left_factor, &d.core).map_err(|e| e.to_string())?;
                        if back != p {
                            return Err(format!("{p} recomposes to {back}"));
                        }
                    }
                    Ok(())
                },
            );
        }
        rec.check(
            "left factor counts",
            Some(n),
            &["paths::count_left_factors"],
            || {
                for k in 0..=n {
                    for j in 0..=n - k {
                        let e = paths::count_left_factors_enumerated(n, k, j);
                        let f = paths::count_left_factors_formula(n, k, j);
                        if e != f {
                            return Err(format!("(k,j)=({k},{j}): {e} != {f}"));
                        }
                    }
                }
                Ok(())
            },
        );
        if n <= LGV_CHECK_CAP {
            rec.check("lgv bijection", Some(n), &["paths::lgv_bijection"], || {
                check_lgv(n)
            });
        }

        if n <= Method::Rooks.cap() {
            rec.check(
                "rooks vs theorem1",
                Some(n),
                &["rooks::rook_sum", "rooks::weight", "ansatz::build_hat"],
                || expect_eq("rooks", &rooks::partition_via_rooks(n), &t1),
            );
            rec.check(
                "rook_sum vs hat matrix",
                Some(n - 1),
                &[
                    "rooks::rook_sum",
                    "ansatz::build_hat",
                    "ansatz::scalar_product",
                ],
                || {
                    expect(rooks::rook_sum_matches_matrix(n - 1), || {
                        format!("rook_sum({}) differs from the hat moment", n - 1)
                    })
                },
            );
        }
        rec.check(
            "g formula vs theorem1",
            Some(n),
            &["rooks::g_polynomial"],
            || expect_eq("G route", &rooks::partition_via_g(n), &t1),
        );
        if n <= T_TABLE_CHECK_CAP {
            rec.check(
                "T factorization, recurrence, closed form, row sums",
                Some(n),
                &[
                    "rooks::T",
                    "rooks::check_factorization",
                    "rooks::T0_recurrence",
                    "rooks::T0_closed",
                    "rooks::row_sum_formula",
                    "exactpoly::q_binomial",
                ],
                || check_t_table(n),
            );
        }
        if n <= PHI_CHECK_CAP {
            rec.check("phi bijection", Some(n), &["rooks::phi"], || check_phi(n));
        }

        let fault_note = if williams_offset != 0 {
            " (fault injected)"
        } else {
            ""
        };
        rec.check(
            "williams_E vs theorem1",
            Some(n),
            &[
                "closedforms::williams_E",
                "exactpoly::coeff",
                "exactpoly::q_int",
            ],
            || {
                let shifted = closedforms::williams_polynomial_shifted(n, williams_offset);
                for m in 1..=n as i64 {
                    let lhs = shifted.coeff_y(m);
                    let rhs = t1.coeff_y(m);
                    if lhs != rhs {
                        return Err(format!(
                            "[y^{m}] at n={n}{fault_note}: williams {lhs} != theorem1 {rhs}"
                        ));
                    }
                }
                expect_eq("williams polynomial", &shifted, &t1)
            },
        );
        if n <= Method::PermutationsAscent.cap() {
            rec.check(
                "permutations_ascent vs theorem1",
                Some(n),
                &[
                    "permstats::gen_polynomial",
                    "permstats::ascents",
                    "permstats::pattern_13_2",
                ],
                || {
                    expect_eq(
                        "ascents/13-2",
                        &permstats::gen_polynomial(n, permstats::StatPair::AscentPattern),
                        &t1,
                    )
                },
            );
            rec.check(
                "permutations_crossing vs theorem1",
                Some(n),
                &[
                    "permstats::gen_polynomial",
                    "permstats::weak_exceedances",
                    "permstats::crossings",
                ],
                || {
                    expect_eq(
                        "wex/crossings",
                        &permstats::gen_polynomial(n, permstats::StatPair::WexCrossing),
                        &t1,
                    )
                },
            );
            rec.check(
                "classical 1-3-2 bound",
                Some(n),
                &[
                    "permstats::classical_132_count",
                    "permstats::psi",
                    "closedforms::corollary_bound",
                ],
                || check_psi_bound(n),
            );
        }

        let cor = closedforms::corollary(n);
        rec.check(
            "corollary vs theorem1 at y=1",
            Some(n),
            &["closedforms::corollary"],
            || {
                let c = cor.as_ref().map_err(|e| e.to_string())?;
                expect_eq("corollary", c, &t1.at_y_one())
            },
        );
        if let Ok(cor) = &cor {
            rec.check(
                "taylor low order vs corollary",
                Some(n),
                &["closedforms::taylor_low_order"],
                || {
                    let t = closedforms::taylor_low_order(n);
                    for (k, v) in t.iter().enumerate() {
                        let c = cor.coeff(k as i64, 0);
                        if &c != v {
                            return Err(format!("[q^{k}]: formula {v} != {c}"));
                        }
                    }
                    Ok(())
                },
            );
            rec.check(
                "q10 formula vs corollary",
                Some(n),
                &["closedforms::q10_coefficient"],
                || {
                    let f = closedforms::q10_coefficient(n).map_err(|e| e.to_string())?;
                    let c = cor.coeff(10, 0);
                    expect(f == c, || format!("formula {f} != {c}"))
                },
            );
        }
        rec.check(
            "narayana at q=0",
            Some(n),
            &["closedforms::narayana_check", "exactpoly::eval_q"],
            || {
                let r = closedforms::narayana_check(n).map_err(|e| e.to_string())?;
                expect(r.passed, || {
                    format!("{:?} != {:?}", r.coefficients, r.narayana)
                })
            },
        );
        rec.check(
            "q and q^2 coefficients",
            Some(n),
            &["closedforms::low_q_y_coefficients"],
            || {
                for m in 0..=n {
                    let (a, b) =
                        closedforms::low_q_y_coefficients(n, m).map_err(|e| e.to_string())?;
                    let (ca, cb) = (t1.coeff(1, m as i64), t1.coeff(2, m as i64));
                    if a != ca || b != cb {
                        return Err(format!("m={m}: formula ({a}, {b}) != ({ca}, {cb})"));
                    }
                }
                Ok(())
            },
        );
        if n <= MATCHING_CHECK_CAP {
            rec.check(
                "touchard_riordan vs matching_crossings",
                Some(n),
                &[
                    "closedforms::touchard_riordan",
                    "permstats::matching_crossings",
                ],
                || {
                    let tr = closedforms::touchard_riordan(n).map_err(|e| e.to_string())?;
                    expect_eq("matchings", &permstats::matching_crossings(n), &tr)
                },
            );
        }
        rec.check(
            "ansatz relations",
            Some(n + 2),
            &["ansatz::verify_ansatz", "ansatz::verify_hat_relations"],
            || {
                let r = ansatz::verify_ansatz(n + 2);
                let h = ansatz::verify_hat_relations(n + 2);
                expect(r.passed() && h.passed(), || {
                    format!("{:?}", r.violations.iter().chain(&h.violations).next())
                })
            },
        );
        if n <= INVERSION_CHECK_CAP {
            rec.check(
                "inversion formulas",
                Some(n),
                &["ansatz::verify_inversion"],
                || {
                    let r = ansatz::verify_inversion(n, n + 4).map_err(|e| e.to_string())?;
                    expect(r.forward.passed(), || "forward inversion fails".into())?;
                    expect(r.backward.passed(), || "backward inversion fails".into())?;
                    expect(!r.backward_without_y.passed(), || {
                        "backward inversion with (D+E)^k unexpectedly holds at y=2".into()
                    })
                },
            );
        }
        rec.check(
            "q-integer and q-binomial identities",
            Some(n),
            &[
                "exactpoly::q_int",
                "exactpoly::q_binomial",
                "exactpoly::binomial",
            ],
            || check_q_identities(n as i64),
        );
    }

    for k in 0..=n_max.min(M_SIGNED_CHECK_CAP) {
        rec.check(
            "M_k signed vs closed form",
            Some(k),
            &["paths::enumerate_M_signed", "paths::m_k_closed"],
            || {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let closed = paths::m_k_closed(k).scale(&BigInt::from(sign));
                expect_eq("M_k", &paths::enumerate_m_signed(k), &closed)
            },
        );
    }
    rec.check(
        "functional equation",
        None,
        &["paths::check_functional_equation"],
        || {
            let r = paths::check_functional_equation(4, n_max.max(4));
            expect(r.passed(), || format!("{r:?}"))
        },
    );
    let norm_n = n_max.min(NORMALIZATION_CHECK_CAP);
    rec.check(
        "G identity normalization unique",
        Some(norm_n),
        &["rooks::reconcile_g_identity", "rooks::g_polynomial"],
        || {
            let r = rooks::reconcile_g_identity(norm_n);
            match r.unique_pass() {
                Some(c) => expect(c == rooks::Normalization::QPowNOneMinusQ, || {
                    format!("unexpected normalization {}", c.name())
                }),
                None => Err(format!(
                    "passing candidates: {:?}",
                    r.passing().iter().map(|c| c.name()).collect::<Vec<_>>()
                )),
            }
        },
    );
    rec.check(
        "asymptotic ratios increase toward 1",
        None,
        &["closedforms::asymptotic_ratio"],
        || {
            for m in 0..=2 {
                let rs: Vec<f64> = [20, 40, 60]
                    .iter()
                    .map(|&n| closedforms::asymptotic_ratio(m, n).map(|r| r.to_f64()))
                    .collect::<Result<_, _>>()
                    .map_err(|e| e.to_string())?;
                if !(rs[0] < rs[1] && rs[1] < rs[2] && rs[2] < 1.0) {
                    return Err(format!("m={m}: {rs:?}"));
                }
            }
            Ok(())
        },
    );
    rec.ops.extend([
        "cli::cmd_crosscheck",
        "cli::cmd_table",
        "exactpoly::coeff_y",
    ]);

    let first_failure = rec.checks.iter().find(|c| !c.passed).map(|c| match c.n {
        Some(n) => format!("{} (n={n})", c.name),
        None => c.name.clone(),
    });
    CrosscheckReport {
        n_max,
        passed: first_failure.is_none(),
        first_failure,
        williams_indexing: format!(
            "E_(m,n) is the coefficient of y^{} in y<W|(yD+E)^(n-1)|V>, 1 <= m <= n",
            if williams_offset == 0 {
                "m".to_string()
            } else {
                format!("(m{williams_offset:+})")
            }
        ),
        checks: rec.checks,
        covered_operations: rec.ops.iter().map(|s| s.to_string()).collect(),
    }
}

fn check_lgv(n: usize) -> Result<(), String> {
    let mut images = BTreeSet::new();
    for pair in paths::lattice_pairs(n) {
        let Ok(lf) = paths::lgv_to_left_factor(&pair) else {
            continue;
        };
        if paths::left_factor_to_lgv(&lf) != pair {
            return Err(format!("{pair:?} does not round-trip"));
        }
        images.insert(lf);
    }
    let expected: BTreeSet<_> = paths::left_factors(n).into_iter().collect();
    expect(images == expected, || {
        format!(
            "{} non-intersecting pairs vs {} left factors",
            images.len(),
            expected.len()
        )
    })
}

fn check_t_table(n: usize) -> Result<(), String> {
    let table = rooks::t_table(n);
    for k in 0..=n {
        let mut row = LaurentPoly::zero();
        for j in 0..=k {
            row += &table[&(j, k)];
            let t0 = &table[&(0, k - j)];
            if table[&(j, k)] != rooks::factorization_rhs(j, k, n, t0) {
                return Err(format!("factorization fails at (j,k)=({j},{k})"));
            }
        }
        let rec = rooks::t0_recurrence(k, n);
        let closed = rooks::t0_closed(k, n);
        if rec != closed || table[&(0, k)] != closed {
            return Err(format!(
                "T(0,{k},{n}): table {}, recurrence {rec}, closed {closed}",
                table[&(0, k)]
            ));
        }
        let formula = rooks::row_sum_formula(k, n).map_err(|e| e.to_string())?;
        if row != formula.shift(0, k as i64) {
            return Err(format!("row sum k={k}: {row} != y^{k} ({formula})"));
        }
    }
    if n >= 1 && !rooks::check_factorization(0, 0, n) {
        return Err("factorization fails at (0,0)".into());
    }
    Ok(())
}

fn check_phi(n: usize) -> Result<(), String> {
    let mut seen = BTreeSet::new();
    let mut mu_of = std::collections::BTreeMap::new();
    for r in rooks::all_placements(n) {
        let (inv, lambda) = rooks::phi(&r);
        let back = rooks::phi_inverse(&inv, &lambda).map_err(|e| e.to_string())?;
        if back != r {
            return Err(format!("phi is not inverted on {r:?}"));
        }
        let mu = r.crosses() as i64 - lambda.size() as i64;
        if mu < 0 {
            return Err(format!("negative mu on {r:?}"));
        }
        if *mu_of.entry(inv.clone()).or_insert(mu) != mu || mu != inv.mu() as i64 {
            return Err(format!("mu depends on more than the involution at {r:?}"));
        }
        if !seen.insert((inv, lambda.to_string())) {
            return Err(format!("phi is not injective at {r:?}"));
        }
    }
    Ok(())
}

fn check_psi_bound(n: usize) -> Result<(), String> {
    let violations = permstats::pattern_bound_violations(n.min(7));
    expect(violations.is_empty(), || {
        format!("13-2 exceeds 1-3-2 on {:?}", violations[0])
    })?;
    for k in 0..=3 {
        let psi = BigInt::from(permstats::psi(k, n));
        let bound = closedforms::pattern_13_2_cumulative(k, n).map_err(|e| e.to_string())?;
        if psi > bound {
            return Err(format!("psi_{k}({n}) = {psi} > {bound}"));
        }
    }
    Ok(())
}

fn check_q_identities(n: i64) -> Result<(), String> {
    for k in 0..=n {
        let a = q_binomial(n, k);
        if a != q_binomial(n, n - k) {
            return Err(format!("q-binomial symmetry fails at ({n},{k})"));
        }
        if a.at_q_one() != LaurentPoly::constant(binomial(n, k)) {
            return Err(format!("q-binomial at q=1 fails at ({n},{k})"));
        }
        if k >= 1 {
            let pascal = &q_binomial(n - 1, k - 1) + &q_binomial(n - 1, k).shift(k, 0);
            if a != pascal {
                return Err(format!("q-Pascal fails at ({n},{k})"));
            }
            let split = &q_int(k) + &q_int(n - k).shift(k, 0);
            if split != q_int(n) {
                return Err(format!("[n]_q additivity fails at ({n},{k})"));
            }
        }
    }
    Ok(())
}

pub fn cmd_crosscheck(args: &CrosscheckArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if args.n_max == 0 || args.n_max > Method::PermutationsAscent.cap() {
        return Err(CliError::Cap {
            method: "crosscheck",
            n: args.n_max,
            cap: Method::PermutationsAscent.cap(),
        });
    }
    let report = crosscheck(args.n_max, args.inject_fault);
    match args.format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        )?,
        Format::Csv => {
            let rows = report.checks.iter().map(|c| {
                vec![
                    c.name.clone(),
                    c.n.map(|n| n.to_string()).unwrap_or_default(),
                    c.passed.to_string(),
                    c.detail.clone().unwrap_or_default(),
                ]
            });
            out.write_all(to_csv(&["name", "n", "passed", "detail"], rows).as_bytes())?;
        }
        Format::Pretty => {
            for c in &report.checks {
                let n = c.n.map(|n| format!(" n={n}")).unwrap_or_default();
                let mark = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{mark} {}{n}", c.name)?;
                if let Some(d) = &c.detail {
                    writeln!(out, "     {d}")?;
                }
            }
        }
    }
    match &report.first_failure {
        None => Ok(EXIT_OK),
        Some(name) => Err(CliError::Identity(name.clone())),
    }
}
