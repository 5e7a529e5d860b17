//! Command-line frontend: maps subcommands one-to-one onto the library
//! operations and emits deterministic JSON-lines records.
//!
//! Exit codes: 0 success (an empty solution set is a success), 2 invalid
//! input or parse error, 3 budget exceeded (incl. incomplete factorization),
//! 4 no obstruction certificate within the search limit.

pub mod config;
pub mod output;
pub mod parse;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use dioprod_core::arith::DEFAULT_FACTOR_BUDGET;
use dioprod_core::error::Error as CoreError;
use dioprod_core::explorer::{
    abc_szpiro_quality, audit_exp_divisor_bound, audit_power_divisor_bound, class_membership,
    family_solutions_budgeted, kfree_growth_bound, radical_ratio_table_budgeted, szpiro_n_bound,
    AuditReport, CrossoverBound, SolutionFamily,
};
use dioprod_core::poly::IntPolynomial;
use dioprod_core::sequences::DEFAULT_BIT_BUDGET;
use dioprod_core::solver::{
    find_obstruction_prime, solve_bounded_budgeted, solve_certified_budgeted,
    solve_perfect_power_opts, KfreeFilter, SolveReport, DEFAULT_OBSTRUCTION_LIMIT,
};

use config::{EquationConfig, PolynomialConfig};
use output::{emit, evidence_record, format_sig, solution_record, Record, Summary};
use parse::{
    parse_bigint_list, parse_polynomial, parse_pos_rational, parse_terms, parse_u64_list,
    ParseError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_NO_CERTIFICATE: i32 = 4;

#[derive(Parser)]
#[command(
    name = "dioprod",
    version,
    about = "Certified solvers and exact audits for equations P(x) = product of factorial-type sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve P(x) = product (certified, bounded, or perfect_power mode)
    Solve(SolveArgs),
    /// Complete solve of x^d = product, requiring d > number of terms
    Power(PowerArgs),
    /// Find the smallest obstruction prime and print its certificate
    Obstruct(ObstructArgs),
    /// Exhaustive divisor-bound audit over all divisors of A^n n!^s
    Audit(AuditArgs),
    /// Radical decay table: N(F)^(1+eps)/F along the diagonal n = (n,...,n)
    Ratios(RatiosArgs),
    /// ABC/Szpiro quality record of a coprime triple a + b = c
    Quality(QualityArgs),
    /// Effective crossover bounds (kinds: szpiro, kfree)
    Bounds(BoundsArgs),
    /// Members of the known infinite solution families of x^2 = product
    Families(FamiliesArgs),
    /// Class membership: is K(x) < k, is omega(x) < l
    Membership(MembershipArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Polynomial expression, e.g. "x^2-1"
    #[arg(long)]
    poly: Option<String>,
    /// Comma-separated terms, e.g. "factorial:A=1,dfact:A=2"
    #[arg(long)]
    terms: Option<String>,
    /// certified | bounded | perfect_power
    #[arg(long)]
    mode: Option<String>,
    /// Per-term index cap (bounded mode)
    #[arg(long)]
    nmax: Option<u64>,
    /// Obstruction-prime search limit (certified mode)
    #[arg(long)]
    limit: Option<u64>,
    /// Bit budget for evaluated products
    #[arg(long)]
    bits: Option<u64>,
    /// "a,k": keep only solutions with K(x - a) < k
    #[arg(long)]
    kfree: Option<String>,
    /// Report only solutions with x >= 0
    #[arg(long)]
    nonnegative: bool,
    /// Worker threads for the enumeration
    #[arg(long)]
    jobs: Option<usize>,
    /// JSON equation manifest; explicit flags override it
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct PowerArgs {
    /// The monomial side, e.g. "x^3"
    #[arg(long)]
    poly: String,
    #[arg(long)]
    terms: String,
    #[arg(long)]
    bits: Option<u64>,
    #[arg(long)]
    nonnegative: bool,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct ObstructArgs {
    #[arg(long)]
    poly: String,
    #[arg(long)]
    terms: String,
    #[arg(long)]
    limit: Option<u64>,
}

#[derive(Args)]
struct AuditArgs {
    /// exp (params A,s,n) or power (params A,s,a,n)
    #[arg(long)]
    form: String,
    /// Comma-separated audit parameters
    #[arg(long)]
    params: String,
}

#[derive(Args)]
struct RatiosArgs {
    #[arg(long)]
    terms: String,
    /// Rational epsilon: "0.1", "1/10", or an integer
    #[arg(long)]
    eps: String,
    #[arg(long)]
    nmax: u64,
    #[arg(long)]
    bits: Option<u64>,
}

#[derive(Args)]
struct QualityArgs {
    /// "a,b,c" with a + b = c, nonzero and pairwise coprime
    #[arg(long)]
    triple: String,
}

#[derive(Args)]
struct BoundsArgs {
    /// szpiro | kfree
    #[arg(long)]
    kind: String,
    /// Szpiro exponent s (rational), szpiro kind only
    #[arg(long)]
    s: Option<String>,
    /// Shift u in x^2 - u^2, szpiro kind only
    #[arg(long)]
    u: Option<u64>,
    /// All-factorial terms, szpiro kind only
    #[arg(long)]
    terms: Option<String>,
    /// "k,r,d,M,C", kfree kind only
    #[arg(long)]
    params: Option<String>,
}

#[derive(Args)]
struct FamiliesArgs {
    /// sq_fact_dfact | sq_primorials | sq_fact_prim_fact
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 25)]
    count: u64,
    #[arg(long)]
    bits: Option<u64>,
}

#[derive(Args)]
struct MembershipArgs {
    /// The integer to classify
    #[arg(long)]
    x: String,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    l: u64,
}

/// A failed command: message for the diagnostic stream plus the exit code.
struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        fail(EXIT_INVALID, e.to_string())
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::InvalidInput(_) | CoreError::PreconditionViolated(_) => EXIT_INVALID,
            CoreError::BudgetExceeded(_) | CoreError::FactorizationIncomplete { .. } => {
                EXIT_BUDGET
            }
            CoreError::CertificateNotFound { .. } => EXIT_NO_CERTIFICATE,
        };
        fail(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        fail(1, format!("i/o error: {e}"))
    }
}

/// Entry point shared by the binary and the tests.
pub fn run(args: &[String], out: &mut impl Write, err: &mut impl Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_INVALID
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn dispatch(command: Command, out: &mut impl Write) -> Result<(), Failure> {
    match command {
        Command::Solve(args) => cmd_solve(args, out),
        Command::Power(args) => cmd_solve(
            SolveArgs {
                poly: Some(args.poly),
                terms: Some(args.terms),
                mode: Some("perfect_power".into()),
                nmax: None,
                limit: None,
                bits: args.bits,
                kfree: None,
                nonnegative: args.nonnegative,
                jobs: args.jobs,
                config: None,
            },
            out,
        ),
        Command::Obstruct(args) => cmd_obstruct(args, out),
        Command::Audit(args) => cmd_audit(args, out),
        Command::Ratios(args) => cmd_ratios(args, out),
        Command::Quality(args) => cmd_quality(args, out),
        Command::Bounds(args) => cmd_bounds(args, out),
        Command::Families(args) => cmd_families(args, out),
        Command::Membership(args) => cmd_membership(args, out),
    }
}

fn in_pool<T: Send>(
    jobs: Option<usize>,
    work: impl FnOnce() -> Result<T, Failure> + Send,
) -> Result<T, Failure> {
    match jobs {
        None => work(),
        Some(n) => {
            if n == 0 {
                return Err(fail(EXIT_INVALID, "--jobs must be >= 1"));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| fail(EXIT_INVALID, format!("cannot build thread pool: {e}")))?;
            pool.install(work)
        }
    }
}

fn cmd_solve(args: SolveArgs, out: &mut impl Write) -> Result<(), Failure> {
    let manifest: Option<EquationConfig> = match &args.config {
        None => None,
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| fail(EXIT_INVALID, format!("cannot read {}: {e}", path.display())))?;
            Some(serde_json::from_str(&text).map_err(|e| {
                fail(EXIT_INVALID, format!("invalid config {}: {e}", path.display()))
            })?)
        }
    };
    let manifest = manifest.unwrap_or(EquationConfig {
        polynomial: None,
        terms: Vec::new(),
        mode: None,
        limits: Default::default(),
        filters: None,
        output: Default::default(),
    });

    let poly = match (&args.poly, &manifest.polynomial) {
        (Some(text), _) => parse_polynomial(text)?,
        (None, Some(PolynomialConfig::Expression(text))) => parse_polynomial(text)?,
        (None, Some(PolynomialConfig::Coefficients(c))) => IntPolynomial::from_i64(c),
        (None, None) => return Err(fail(EXIT_INVALID, "missing --poly (or config polynomial)")),
    };
    let terms_text = args
        .terms
        .clone()
        .or_else(|| manifest.terms_text())
        .ok_or_else(|| fail(EXIT_INVALID, "missing --terms (or config terms)"))?;
    let spec = parse_terms(&terms_text)?;
    let mode = args
        .mode
        .clone()
        .or_else(|| manifest.mode.clone())
        .unwrap_or_else(|| "certified".to_string());
    let limit = args
        .limit
        .or(manifest.limits.obstruction_search_limit)
        .unwrap_or(DEFAULT_OBSTRUCTION_LIMIT);
    let bits = args
        .bits
        .or(manifest.limits.bit_budget)
        .unwrap_or(DEFAULT_BIT_BUDGET);
    let nmax = args.nmax.or(manifest.limits.nmax);
    let kfree: Option<KfreeFilter> = match &args.kfree {
        Some(text) => {
            let parts = parse_bigint_list(text)?;
            let [shift, k] = parts.as_slice() else {
                return Err(fail(EXIT_INVALID, "--kfree expects \"a,k\""));
            };
            let k = u32::try_from(k).map_err(|_| fail(EXIT_INVALID, "k must be a small positive integer"))?;
            Some(KfreeFilter::new(shift.clone(), k))
        }
        None => manifest
            .filters
            .as_ref()
            .map(|f| KfreeFilter::new(BigInt::from(f.a), f.k)),
    };
    if let Some(f) = &kfree {
        if f.k < 2 {
            return Err(fail(EXIT_INVALID, "k-free filter requires k >= 2"));
        }
    }
    let nonnegative = args.nonnegative || manifest.output.nonnegative_x;

    let report = in_pool(args.jobs, || -> Result<SolveReport, Failure> {
        Ok(match mode.as_str() {
            "certified" => solve_certified_budgeted(&poly, &spec, limit, bits)?,
            "bounded" => {
                let nmax =
                    nmax.ok_or_else(|| fail(EXIT_INVALID, "bounded mode requires --nmax"))?;
                solve_bounded_budgeted(&poly, &spec, nmax, kfree.as_ref(), bits)?
            }
            "perfect_power" => {
                let d = poly.monic_monomial_degree().ok_or_else(|| {
                    fail(
                        EXIT_INVALID,
                        "perfect_power mode requires the polynomial x^d",
                    )
                })?;
                solve_perfect_power_opts(d, &spec, true, bits)?
            }
            other => return Err(fail(EXIT_INVALID, format!("unknown mode '{other}'"))),
        })
    })?;

    let mut reported = 0u64;
    for solution in &report.solutions {
        if nonnegative && solution.x.is_negative() {
            continue;
        }
        emit(out, &solution_record(solution))?;
        reported += 1;
    }
    if let Some(evidence) = &report.evidence {
        emit(out, &evidence_record(evidence, &spec))?;
    }
    let mut summary = Summary::new("solve");
    summary.complete = Some(report.complete);
    summary.solutions = Some(reported);
    summary.candidates = Some(report.stats.candidates_examined);
    emit(out, &Record::Summary(summary))?;
    Ok(())
}

fn cmd_obstruct(args: ObstructArgs, out: &mut impl Write) -> Result<(), Failure> {
    let poly = parse_polynomial(&args.poly)?;
    let spec = parse_terms(&args.terms)?;
    let limit = args.limit.unwrap_or(DEFAULT_OBSTRUCTION_LIMIT);
    let cert = find_obstruction_prime(&poly, &spec, limit)?;
    cert.verify(&poly, &spec)?;
    emit(out, &output::certificate_record(&cert, &spec))?;
    let mut summary = Summary::new("obstruct");
    summary.p = Some(cert.p);
    emit(out, &Record::Summary(summary))?;
    Ok(())
}

fn audit_record(report: &AuditReport) -> Record {
    Record::Audit {
        grid: report.grid.clone(),
        checked: report.checked_count,
        violations: report.violations.len() as u64,
        violation_examples: report
            .violations
            .iter()
            .take(5)
            .map(|v| format!("x={} omega={} K={} check={}", v.x, v.omega, v.max_exp, v.check))
            .collect(),
        extremal_ratio: report.extremal.as_ref().map(|e| format_sig(e.ratio, 6)),
        extremal_x: report.extremal.as_ref().map(|e| e.x.to_string()),
    }
}

fn cmd_audit(args: AuditArgs, out: &mut impl Write) -> Result<(), Failure> {
    let params = parse_u64_list(&args.params)?;
    let report = match args.form.as_str() {
        "exp" => {
            let [a, s, n] = params.as_slice() else {
                return Err(fail(EXIT_INVALID, "--form exp expects --params A,s,n"));
            };
            let s = u32::try_from(*s).map_err(|_| fail(EXIT_INVALID, "s too large"))?;
            audit_exp_divisor_bound(*a, s, *n)?
        }
        "power" => {
            let [a_mult, s, a, n] = params.as_slice() else {
                return Err(fail(EXIT_INVALID, "--form power expects --params A,s,a,n"));
            };
            let s = u32::try_from(*s).map_err(|_| fail(EXIT_INVALID, "s too large"))?;
            audit_power_divisor_bound(*a_mult, s, *a, *n)?
        }
        other => return Err(fail(EXIT_INVALID, format!("unknown audit form '{other}'"))),
    };
    emit(out, &audit_record(&report))?;
    let mut summary = Summary::new("audit");
    summary.violations = Some(report.violations.len() as u64);
    emit(out, &Record::Summary(summary))?;
    Ok(())
}

fn cmd_ratios(args: RatiosArgs, out: &mut impl Write) -> Result<(), Failure> {
    let spec = parse_terms(&args.terms)?;
    let eps = parse_pos_rational(&args.eps)?;
    let bits = args.bits.unwrap_or(DEFAULT_BIT_BUDGET);
    let table = radical_ratio_table_budgeted(&spec, eps, args.nmax, bits)?;
    for row in table.rows() {
        emit(
            out,
            &Record::RatioRow {
                n: row.n,
                radical: row.radical.to_string(),
                ratio: format_sig(row.ratio, 3),
            },
        )?;
    }
    let mut summary = Summary::new("ratios");
    summary.rows = Some(table.rows().len() as u64);
    summary.decreasing_from = table.decreasing_from();
    summary.increasing_from = table.increasing_from();
    summary.decay_hypothesis_met = Some(table.decay_hypothesis_met);
    emit(out, &Record::Summary(summary))?;
    Ok(())
}

fn cmd_quality(args: QualityArgs, out: &mut impl Write) -> Result<(), Failure> {
    let triple = parse_bigint_list(&args.triple)?;
    let [a, b, c] = triple.as_slice() else {
        return Err(fail(EXIT_INVALID, "--triple expects \"a,b,c\""));
    };
    let record = abc_szpiro_quality(a, b, c, DEFAULT_FACTOR_BUDGET)?;
    emit(
        out,
        &Record::Quality {
            a: record.a.to_string(),
            b: record.b.to_string(),
            c: record.c.to_string(),
            radical: record.radical_abc.to_string(),
            quality: format_sig(record.quality, 6),
            szpiro_ratio: format_sig(record.szpiro_ratio, 6),
        },
    )?;
    emit(out, &Record::Summary(Summary::new("quality")))?;
    Ok(())
}

fn bound_record(kind: &str, bound: &CrossoverBound) -> Record {
    Record::Bound {
        kind: kind.to_string(),
        n_bound: bound.n_bound,
        fails_at: bound.fails_at,
        verified_through: bound.verified_through,
    }
}

fn cmd_bounds(args: BoundsArgs, out: &mut impl Write) -> Result<(), Failure> {
    let bound = match args.kind.as_str() {
        "szpiro" => {
            let s_text = args
                .s
                .as_ref()
                .ok_or_else(|| fail(EXIT_INVALID, "szpiro kind requires --s"))?;
            let terms = args
                .terms
                .as_ref()
                .ok_or_else(|| fail(EXIT_INVALID, "szpiro kind requires --terms"))?;
            let s = parse_pos_rational(s_text)?;
            let spec = parse_terms(terms)?;
            szpiro_n_bound(s, &spec, args.u.unwrap_or(1))?
        }
        "kfree" => {
            let params_text = args
                .params
                .as_ref()
                .ok_or_else(|| fail(EXIT_INVALID, "kfree kind requires --params k,r,d,M,C"))?;
            let params = parse_u64_list(params_text)?;
            let [k, r, d, m, c] = params.as_slice() else {
                return Err(fail(EXIT_INVALID, "kfree kind requires --params k,r,d,M,C"));
            };
            kfree_growth_bound(*k, *r, *d, *m, *c)?
        }
        other => return Err(fail(EXIT_INVALID, format!("unknown bound kind '{other}'"))),
    };
    emit(out, &bound_record(&args.kind, &bound))?;
    emit(out, &Record::Summary(Summary::new("bounds")))?;
    Ok(())
}

fn cmd_families(args: FamiliesArgs, out: &mut impl Write) -> Result<(), Failure> {
    let family = SolutionFamily::parse(&args.family)
        .ok_or_else(|| fail(EXIT_INVALID, format!("unknown family '{}'", args.family)))?;
    let bits = args.bits.unwrap_or(DEFAULT_BIT_BUDGET);
    let (_, records) = family_solutions_budgeted(family, args.count, bits)?;
    for record in &records {
        emit(out, &solution_record(record))?;
    }
    let mut summary = Summary::new("families");
    summary.family = Some(family.name().to_string());
    summary.count = Some(records.len() as u64);
    emit(out, &Record::Summary(summary))?;
    Ok(())
}

fn cmd_membership(args: MembershipArgs, out: &mut impl Write) -> Result<(), Failure> {
    let x: BigUint = args
        .x
        .parse()
        .map_err(|_| fail(EXIT_INVALID, format!("invalid integer '{}'", args.x)))?;
    let (in_fk, in_pl) = class_membership(&x, args.k, args.l, DEFAULT_FACTOR_BUDGET)?;
    emit(
        out,
        &Record::Membership {
            x: x.to_string(),
            k: args.k,
            l: args.l,
            in_fk,
            in_pl,
        },
    )?;
    emit(out, &Record::Summary(Summary::new("membership")))?;
    Ok(())
}
