//! Command-line verifier for quaternionic slice-regular function identities.
//!
//! Functions are described by the JSON expression grammar (see the library
//! docs and the repository README). Exit codes: 0 when every checked
//! identity holds within tolerance, 1 on an identity violation, 2 on an
//! input error.

use std::fs;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use sliceregular::grid::{CheckConfig, Grid};
use sliceregular::quaternion::ImaginaryUnit;
use sliceregular::report::{ClassifyReport, EvalReport, ExpReport, Report, SqrtReport};
use sliceregular::slicefn::{json as fjson, representation_check, PlanarDomain};
use sliceregular::sqrt::{has_sqrt, sqrt as poly_sqrt, RealPolynomial};
use sliceregular::starexp::{
    classify_exp, exp_star_closed, exp_star_series_on, exp_star_sqrtform, sum_rule,
    verify_exp_identities, ExpClass, SumRuleCase,
};
use sliceregular::{Error, Quaternion, SliceFunction};

#[derive(Parser)]
#[command(
    name = "sliceregular",
    version,
    about = "Evaluate and verify slice-regular function identities"
)]
struct Cli {
    /// Validate a previously written report file and exit.
    #[arg(long, value_name = "FILE")]
    check_report: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Function description file (JSON expression tree), or '-' for stdin.
    #[arg(value_name = "FILE")]
    input: Option<PathBuf>,

    /// Evaluation tolerance for identity residuals.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,

    /// Remainder target for truncated series.
    #[arg(long, default_value_t = 1e-12)]
    series_tol: f64,

    /// Sample grid, as COLSxROWS of (alpha, beta) samples.
    #[arg(long, default_value = "21x21")]
    grid: String,

    /// Analysis window: 'whole', 'punctured', or 'rect:AMIN,AMAX,BMAX'.
    #[arg(long, default_value = "rect:-2,2,2")]
    domain: String,

    /// Seed for randomized spot checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Emit the JSON report instead of the human-readable summary.
    #[arg(long)]
    json: bool,

    /// Write the report here instead of stdout.
    #[arg(long, short = 'o', value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the input functions at a point.
    Eval {
        #[command(flatten)]
        common: CommonOpts,
        /// Evaluation point as 'w,x,y,z'.
        #[arg(long, value_name = "W,X,Y,Z")]
        point: String,
    },
    /// Compute exp* of the input function and cross-check its evaluators.
    Exp {
        #[command(flatten)]
        common: CommonOpts,
        /// Optional evaluation point as 'w,x,y,z'.
        #[arg(long, value_name = "W,X,Y,Z")]
        point: Option<String>,
    },
    /// Verify the exponential identities for the input function.
    Identities {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Decide exp*(f+g) = exp*(f) * exp*(g) for a pair of functions.
    SumRule {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Zero structure and square root of a real-coefficient polynomial.
    Sqrt {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Classify exp* of the input function.
    Classify {
        #[command(flatten)]
        common: CommonOpts,
    },
}

/// Failures that map to exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = Result<T, InputError>;

fn read_input(path: &Option<PathBuf>) -> CliResult<String> {
    match path {
        None => Err(InputError("missing input file (use '-' for stdin)".into())),
        Some(p) if p.as_os_str() == "-" => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
        Some(p) => Ok(fs::read_to_string(p)?),
    }
}

fn parse_point(text: &str) -> CliResult<Quaternion> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| InputError(format!("bad point '{text}': {e}")))?;
    if parts.len() != 4 {
        return Err(InputError(format!(
            "point needs 4 components, got {}",
            parts.len()
        )));
    }
    Ok(Quaternion::new(parts[0], parts[1], parts[2], parts[3]))
}

fn parse_domain(text: &str) -> CliResult<PlanarDomain> {
    match text {
        "whole" => Ok(PlanarDomain::whole_plane()),
        "punctured" => Ok(PlanarDomain::plane_minus_real_axis()),
        other => {
            let rest = other
                .strip_prefix("rect:")
                .ok_or_else(|| InputError(format!("unknown domain '{other}'")))?;
            let nums: Vec<f64> = rest
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| InputError(format!("bad rectangle '{rest}': {e}")))?;
            if nums.len() != 3 || nums[0] >= nums[1] || nums[2] <= 0.0 {
                return Err(InputError(format!("bad rectangle '{rest}'")));
            }
            Ok(PlanarDomain::rectangle(nums[0], nums[1], nums[2]))
        }
    }
}

fn parse_grid_shape(text: &str) -> CliResult<(usize, usize)> {
    let (a, b) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| InputError(format!("grid must look like 21x21, got '{text}'")))?;
    let na: usize = a
        .trim()
        .parse()
        .map_err(|e| InputError(format!("bad grid: {e}")))?;
    let nb: usize = b
        .trim()
        .parse()
        .map_err(|e| InputError(format!("bad grid: {e}")))?;
    if na < 2 || nb < 2 {
        return Err(InputError("grid dimensions must be at least 2".into()));
    }
    Ok((na, nb))
}

/// Parses the input as one or more function expressions.
fn parse_functions(text: &str) -> CliResult<Vec<SliceFunction>> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| InputError(format!("invalid JSON: {e}")))?;
    let nodes: Vec<&Value> = match &value {
        Value::Array(items) => items.iter().collect(),
        other => vec![other],
    };
    if nodes.is_empty() {
        return Err(InputError("no functions in input".into()));
    }
    nodes
        .into_iter()
        .map(|n| fjson::parse(n).map_err(|e| InputError(e.to_string())))
        .collect()
}

/// Analysis configuration: the window domain intersected with the domains
/// of all involved functions.
fn config_for(common: &CommonOpts, functions: &[SliceFunction]) -> CliResult<CheckConfig> {
    if common.tol <= 0.0 || common.series_tol <= 0.0 {
        return Err(InputError("tolerances must be positive".into()));
    }
    let mut domain = parse_domain(&common.domain)?;
    for f in functions {
        domain = domain
            .intersect(f.domain())
            .map_err(|e| InputError(e.to_string()))?;
    }
    let (na, nb) = parse_grid_shape(&common.grid)?;
    Ok(CheckConfig {
        grid: Grid::for_domain(&domain, na, nb),
        tol: common.tol,
        series_tol: common.series_tol,
    })
}

fn emit(common: &CommonOpts, report: &Report, human: String) -> CliResult<()> {
    let text = if common.json { report.to_json() } else { human };
    match &common.output {
        Some(path) => fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn fmt_quaternion(q: Quaternion) -> String {
    format!("{q}")
}

fn run_eval(common: &CommonOpts, point_text: &str) -> CliResult<u8> {
    let functions = parse_functions(&read_input(&common.input)?)?;
    let point = parse_point(point_text)?;
    let mut values = Vec::new();
    for f in &functions {
        values.push(f.evaluate(point).map_err(|e| InputError(e.to_string()))?);
    }
    let mut human = format!("eval at {}\n", fmt_quaternion(point));
    for (i, v) in values.iter().enumerate() {
        human.push_str(&format!("  f[{i}] = {}\n", fmt_quaternion(*v)));
    }
    human.pop();
    let report = Report::Eval(EvalReport { point, values });
    emit(common, &report, human)?;
    Ok(0)
}

fn run_exp(common: &CommonOpts, point_text: &Option<String>) -> CliResult<u8> {
    let functions = parse_functions(&read_input(&common.input)?)?;
    if functions.len() != 1 {
        return Err(InputError("exp expects exactly one function".into()));
    }
    let f = &functions[0];
    let config = config_for(common, &functions)?;
    let closed = exp_star_closed(f);

    let sup =
        sliceregular::grid::sup_norm(f, &config.grid).map_err(|e| InputError(e.to_string()))?;
    // Rounding envelope of the power-series route: eps * sup * e^sup.
    let envelope = f64::EPSILON * sup * sup.exp();
    let (series_terms, dual_path_residual, series_skipped) =
        match exp_star_series_on(f, config.series_tol, &config.grid) {
            Ok(series) => {
                let residual = sliceregular::grid::sup_distance(&series, &closed, &config.grid)
                    .map_err(|e| InputError(e.to_string()))?;
                (series.series_depth(), Some(residual), None)
            }
            Err(e @ Error::SeriesCap { .. }) => (None, None, Some(e.to_string())),
            Err(e) => return Err(InputError(e.to_string())),
        };

    let (sqrtform, sqrtform_residual) = match exp_star_sqrtform(f) {
        Ok(form) => {
            let residual = sliceregular::grid::sup_distance(&form, &closed, &config.grid)
                .map_err(|e| InputError(e.to_string()))?;
            ("applied".to_string(), Some(residual))
        }
        Err(Error::NoSquareRoot(reason)) => (format!("no global square root: {reason}"), None),
        Err(Error::PolynomialRequired) => ("not a polynomial".to_string(), None),
        Err(e) => return Err(InputError(e.to_string())),
    };

    let value_at_point = match point_text {
        Some(text) => {
            let point = parse_point(text)?;
            let value = closed
                .evaluate(point)
                .map_err(|e| InputError(e.to_string()))?;
            Some(EvalReport {
                point,
                values: vec![value],
            })
        }
        None => None,
    };

    let dual_tol = common.tol.max(10.0 * envelope);
    let mut violation = false;
    if let Some(residual) = dual_path_residual {
        violation |= residual > dual_tol;
    }
    if let Some(residual) = sqrtform_residual {
        violation |= residual > dual_tol;
    }

    let mut human = String::from("exp* report\n");
    match (series_terms, dual_path_residual) {
        (Some(n), Some(r)) => human.push_str(&format!(
            "  series route: N = {n}, |series - closed| = {r:.3e} (envelope {envelope:.3e})\n"
        )),
        _ => human.push_str(&format!(
            "  series route skipped: {}\n",
            series_skipped.as_deref().unwrap_or("unavailable")
        )),
    }
    human.push_str(&format!("  sqrt form: {sqrtform}"));
    if let Some(r) = sqrtform_residual {
        human.push_str(&format!(", |form - closed| = {r:.3e}"));
    }
    human.push('\n');
    if let Some(ev) = &value_at_point {
        human.push_str(&format!(
            "  exp*(f)({}) = {}\n",
            fmt_quaternion(ev.point),
            fmt_quaternion(ev.values[0])
        ));
    }
    human.push_str(if violation { "  FAIL" } else { "  PASS" });

    let report = Report::Exp(ExpReport {
        series_terms,
        dual_path_residual,
        dual_path_envelope: Some(envelope),
        series_skipped,
        sqrtform,
        sqrtform_residual,
        value_at_point,
        grid: config.grid.clone(),
        tol: common.tol,
    });
    emit(common, &report, human)?;
    Ok(if violation { 1 } else { 0 })
}

fn run_identities(common: &CommonOpts) -> CliResult<u8> {
    let functions = parse_functions(&read_input(&common.input)?)?;
    if functions.len() != 1 {
        return Err(InputError("identities expects exactly one function".into()));
    }
    let f = &functions[0];
    let config = config_for(common, &functions)?;
    let mut report = verify_exp_identities(f, &config).map_err(|e| InputError(e.to_string()))?;

    // Randomized spot check that the closed-form evaluator output behaves
    // like a slice function under the representation formula.
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(common.seed);
    let closed = exp_star_closed(f);
    let rect = config.grid.rect();
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        use rand::Rng;
        let alpha = rng.gen_range(rect.alpha_min..=rect.alpha_max);
        let beta = rng.gen_range(0.05..=rect.beta_max.max(0.06));
        let i = ImaginaryUnit::random(&mut rng);
        let j = ImaginaryUnit::random(&mut rng);
        let r = representation_check(&closed, alpha, beta, i, j)
            .map_err(|e| InputError(e.to_string()))?;
        worst = worst.max(r);
    }
    report.representation_spot_check = Some(worst);

    let pass = report.passes();
    let human = format!(
        "identity report\n  (exp* f)^s = exp(2 f0)        residual {:.3e}\n  even part = exp(f0) mu(f)     residual {:.3e}\n  odd part  = exp(f0) nu(f) f_v residual {:.3e}\n  exp*(f) * exp*(-f) = 1        residual {:.3e}\n  exp*(f^c) = (exp* f)^c        residual {:.3e}\n  min |exp* f|                  {:.6e}\n  never-vanishing defect        {:.3e}\n  representation spot check     {:.3e}\n  tol {:.1e}\n  {}",
        report.symmetrized_eq,
        report.even_part_eq,
        report.odd_part_eq,
        report.inverse_eq,
        report.conjugation_eq,
        report.min_modulus,
        report.never_vanishing_defect,
        worst,
        report.tol,
        if pass { "PASS" } else { "FAIL" }
    );
    emit(common, &Report::Identities(report), human)?;
    Ok(if pass { 0 } else { 1 })
}

fn run_sum_rule(common: &CommonOpts) -> CliResult<u8> {
    let functions = parse_functions(&read_input(&common.input)?)?;
    if functions.len() != 2 {
        return Err(InputError("sum-rule expects exactly two functions".into()));
    }
    let config = config_for(common, &functions)?;
    let report =
        sum_rule(&functions[0], &functions[1], &config).map_err(|e| InputError(e.to_string()))?;

    let case = match report.case {
        SumRuleCase::LinearDependent => "linear-dependent",
        SumRuleCase::Pythagorean => "pythagorean",
        SumRuleCase::Fails => "fails",
    };
    let fmt_idx = |v: Option<u32>| v.map_or("-".to_string(), |n| n.to_string());
    let human = format!(
        "sum-rule report\n  case: {case}\n  commutes: {}\n  n = {}, m = {}, p = {}, parity_ok = {}\n  <f_v, g_v>_* = {}\n  predicted equal: {}\n  residual |exp*(f+g) - exp*(f)*exp*(g)| = {:.3e} (tol {:.3e})\n  observed equal: {}\n  necessity: {:?}\n  {}",
        report.commutes,
        fmt_idx(report.n),
        fmt_idx(report.m),
        fmt_idx(report.p),
        report.parity_ok.map_or("-".to_string(), |b| b.to_string()),
        report.inner.map_or("non-constant".to_string(), |v| format!("{v:.9}")),
        report.predicted_equal,
        report.numeric_residual,
        report.residual_tol,
        report.observed_equal,
        report.necessity,
        if report.agreement { "PASS (prediction matches measurement)" } else { "FAIL (prediction and measurement disagree)" }
    );
    let agreement = report.agreement;
    emit(common, &Report::SumRule(report), human)?;
    Ok(if agreement { 0 } else { 1 })
}

fn run_sqrt(common: &CommonOpts) -> CliResult<u8> {
    let text = read_input(&common.input)?;
    let coeffs: Vec<f64> = serde_json::from_str(&text)
        .map_err(|e| InputError(format!("expected a JSON array of reals: {e}")))?;
    let poly = RealPolynomial::new(coeffs.clone());
    let check = has_sqrt(&poly).map_err(|e| InputError(e.to_string()))?;

    let (sqrt_coeffs, square_residual) = if check.has_sqrt {
        let root = poly_sqrt(&poly).map_err(|e| InputError(e.to_string()))?;
        let residual = root.mul(&root).coeffwise_distance(&poly);
        (Some(root.coeffs().to_vec()), Some(residual))
    } else {
        (None, None)
    };

    let mut human = String::from("sqrt report\n  zero structure:\n");
    human.push_str(&format!("    leading {}\n", check.structure.leading));
    for (r, k) in &check.structure.real_roots {
        human.push_str(&format!("    real root q = {r:.9} multiplicity {k}\n"));
    }
    for s in &check.structure.spheres {
        human.push_str(&format!(
            "    sphere center {:.9} radius {:.9} spherical multiplicity {}\n",
            s.center,
            s.radius,
            s.spherical_multiplicity()
        ));
    }
    match (&sqrt_coeffs, &check.reason) {
        (Some(c), _) => {
            human.push_str(&format!(
                "  sqrt coefficients: {c:?}\n  square residual {:.3e}\n  PASS",
                square_residual.unwrap()
            ));
        }
        (None, Some(reason)) => {
            human.push_str(&format!("  has_sqrt: false\n  reason: {reason}\n  FAIL"));
        }
        (None, None) => human.push_str("  has_sqrt: false\n  FAIL"),
    }

    let ok = check.has_sqrt
        && square_residual.is_none_or(|r| r <= common.tol * (1.0 + poly.max_coeff()) * 10.0);
    let report = Report::Sqrt(SqrtReport {
        input: coeffs,
        check,
        sqrt_coeffs,
        square_residual,
    });
    emit(common, &report, human)?;
    Ok(if ok { 0 } else { 1 })
}

fn run_classify(common: &CommonOpts) -> CliResult<u8> {
    let functions = parse_functions(&read_input(&common.input)?)?;
    if functions.len() != 1 {
        return Err(InputError("classify expects exactly one function".into()));
    }
    let config = config_for(common, &functions)?;
    let classification =
        classify_exp(&functions[0], &config).map_err(|e| InputError(e.to_string()))?;

    let class = match &classification.class {
        ExpClass::SlicePreserving => "slice-preserving".to_string(),
        ExpClass::CjPreserving(axis) => format!("C_J-preserving, J = {}", axis.as_quaternion()),
        ExpClass::Generic => "generic".to_string(),
    };
    let mut human = format!("classify report\n  exp*(f) is {class}\n");
    human.push_str(&format!(
        "  f_v identically zero: {}\n",
        classification.vector_part_zero
    ));
    match classification.vector_sym_constant {
        Some(v) => human.push_str(&format!("  f_v^s constant = {v:.9}")),
        None => human.push_str("  f_v^s not constant"),
    }
    if let Some(n) = classification.zeta_index {
        human.push_str(&format!(" = ({n} pi)^2"));
    }
    emit(
        common,
        &Report::Classify(ClassifyReport { classification }),
        human,
    )?;
    Ok(0)
}

fn run_check_report(path: &PathBuf) -> CliResult<u8> {
    let text = fs::read_to_string(path)?;
    match Report::from_json(&text) {
        Ok(_) => {
            println!("valid report: {}", path.display());
            Ok(0)
        }
        Err(e) => Err(InputError(format!("invalid report: {e}"))),
    }
}

fn dispatch(cli: Cli) -> CliResult<u8> {
    if let Some(path) = &cli.check_report {
        return run_check_report(path);
    }
    match &cli.command {
        None => Err(InputError("missing subcommand (try --help)".into())),
        Some(Command::Eval { common, point }) => run_eval(common, point),
        Some(Command::Exp { common, point }) => run_exp(common, point),
        Some(Command::Identities { common }) => run_identities(common),
        Some(Command::SumRule { common }) => run_sum_rule(common),
        Some(Command::Sqrt { common }) => run_sqrt(common),
        Some(Command::Classify { common }) => run_classify(common),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
