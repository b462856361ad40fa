//! Command-line front end for the deformation engine: star products,
//! verification suites, coupling-coefficient tables, and ordering maps,
//! all in exact truncated-series arithmetic.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qspace::{
    cg_table, parse_poly, run_suite, star, AlgebraDescriptor, AlgebraKind, HalfInt, NCPoly,
    OrderingKind, OrderingMap, Suite, SuiteReport, VerifyConfig,
};

#[derive(Parser)]
#[command(
    name = "qspace",
    version,
    about = "Exact star products and deformed symmetry on the plane and on 2x2 matrix space",
    after_help = "Series are truncated at --order powers of h; coefficients are exact \
                  rationals extended by square roots. Text output writes e^{kh} as e(k)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Number of retained powers of h (at least 1).
    #[arg(long, global = true, default_value_t = 8, value_parser = parse_order)]
    order: usize,

    /// Which polynomial algebra to work in.
    #[arg(long, global = true, value_enum, default_value_t = AlgebraArg::Plane)]
    algebra: AlgebraArg,

    /// Ordering prescription relating commutative and deformed variables.
    #[arg(long, global = true, value_enum, default_value_t = OrderingArg::Normal)]
    ordering: OrderingArg,

    /// Degree bound for swept families of checks (at least 1).
    #[arg(long, global = true, default_value_t = 4, value_parser = parse_degree)]
    max_degree: u32,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Seed for the randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

fn parse_order(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n == 0 {
        return Err("order must be at least 1".into());
    }
    Ok(n)
}

fn parse_degree(s: &str) -> Result<u32, String> {
    let n: u32 = s.parse().map_err(|e| format!("{e}"))?;
    if n == 0 {
        return Err("max degree must be at least 1".into());
    }
    Ok(n)
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgebraArg {
    /// Two variables x, y.
    Plane,
    /// Four variables a, b, c, d.
    M2,
}

impl AlgebraArg {
    fn kind(self) -> AlgebraKind {
        match self {
            AlgebraArg::Plane => AlgebraKind::Plane,
            AlgebraArg::M2 => AlgebraKind::M2,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderingArg {
    /// Alphabetical products of the deformed generators.
    Normal,
    /// Averages over all arrangements of each word.
    Symmetric,
    /// The symmetry-preserving prescription.
    Sympres,
}

impl OrderingArg {
    fn kind(self) -> OrderingKind {
        match self {
            OrderingArg::Normal => OrderingKind::Normal,
            OrderingArg::Symmetric => OrderingKind::Symmetric,
            OrderingArg::Sympres => OrderingKind::SymPres,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    /// Commutative polynomial to its deformed image.
    Fwd,
    /// Deformed polynomial back to commutative coordinates.
    Inv,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two commutative polynomials with the star product of the
    /// selected ordering.
    Star {
        /// Left factor, e.g. "x^2 + e(-1)*x*y" or "a*d - b*c".
        lhs: String,
        /// Right factor.
        rhs: String,
    },
    /// Run a verification suite and report per-check results.
    Verify {
        /// One of: requal, rigidity-plane, rigidity-m2, cg, product-formula,
        /// invariants, all.
        #[arg(default_value = "all")]
        suite: String,
    },
    /// Print the coupling coefficients for a pair of spins, deformed and
    /// undeformed side by side.
    Cg {
        /// First spin, e.g. "1/2", "1", "3/2".
        j1: String,
        /// Second spin.
        j2: String,
    },
    /// Apply the selected ordering prescription (fwd) or its inverse (inv)
    /// to an expression.
    OrderMap {
        #[arg(value_enum)]
        direction: Direction,
        /// Polynomial expression; commutative variables for fwd, deformed
        /// for inv.  May be omitted when --matrix is given.
        expr: Option<String>,
        /// Instead of transforming an expression, dump the forward and
        /// inverse matrices of the prescription at this degree as JSON.
        #[arg(long, value_name = "DEGREE")]
        matrix: Option<u32>,
    },
}

/// Errors split by the exit code they should produce: 2 for bad input,
/// 1 for computations that fail or suites that do not pass.
enum AppError {
    Usage(String),
    Failed(String),
}

fn usage(e: impl std::fmt::Display) -> AppError {
    AppError::Usage(e.to_string())
}

fn failed(e: impl std::fmt::Display) -> AppError {
    AppError::Failed(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, AppError> {
    match &cli.command {
        Command::Star { lhs, rhs } => cmd_star(cli, lhs, rhs),
        Command::Verify { suite } => cmd_verify(cli, suite),
        Command::Cg { j1, j2 } => cmd_cg(cli, j1, j2),
        Command::OrderMap {
            direction,
            expr,
            matrix,
        } => cmd_order_map(cli, *direction, expr.as_deref(), *matrix),
    }
}

fn poly_to_json(p: &NCPoly) -> Result<serde_json::Value, AppError> {
    let mut terms = Vec::new();
    for (mono, coeff) in p.terms() {
        let exponents: Vec<u16> = (0..p.kind().gen_count())
            .map(|i| mono.exponent(i))
            .collect();
        terms.push(serde_json::json!({
            "monomial": mono.render(p.kind()),
            "exponents": exponents,
            "coefficient": coeff.to_json().map_err(failed)?,
        }));
    }
    Ok(serde_json::json!({
        "algebra": p.kind().name(),
        "order": p.order(),
        "terms": terms,
    }))
}

fn cmd_star(cli: &Cli, lhs: &str, rhs: &str) -> Result<ExitCode, AppError> {
    let classical = AlgebraDescriptor::new(cli.algebra.kind().classical());
    let p = parse_poly(&classical, lhs, cli.order).map_err(usage)?;
    let q = parse_poly(&classical, rhs, cli.order).map_err(usage)?;
    let map = OrderingMap::new(cli.ordering.kind(), cli.algebra.kind(), cli.order);
    let result = star(&map, &p, &q).map_err(failed)?;
    match cli.format {
        FormatArg::Text => println!("{result}"),
        FormatArg::Json => {
            let v = serde_json::json!({
                "algebra": cli.algebra.kind().name(),
                "ordering": cli.ordering.kind().name(),
                "order": cli.order,
                "lhs": lhs,
                "rhs": rhs,
                "result": poly_to_json(&result)?,
            });
            println!("{}", serde_json::to_string_pretty(&v).map_err(failed)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cli: &Cli, suite: &str) -> Result<ExitCode, AppError> {
    let suite: Suite = suite.parse().map_err(usage)?;
    let config = VerifyConfig {
        order: cli.order,
        max_degree: cli.max_degree,
        seed: cli.seed,
    };
    let reports = run_suite(suite, &config).map_err(failed)?;
    let all_passed = reports.iter().all(SuiteReport::passed);
    match cli.format {
        FormatArg::Text => {
            for report in &reports {
                println!("suite {} ({} checks)", report.suite, report.checks.len());
                for check in &report.checks {
                    let status = if check.passed { "PASS" } else { "FAIL" };
                    println!("  {status} {}", check.name);
                    if let Some(w) = &check.witness {
                        println!("       {w}");
                    }
                }
            }
            if !all_passed {
                let failures: Vec<serde_json::Value> = reports
                    .iter()
                    .flat_map(|r| r.checks.iter().filter(|c| !c.passed).map(|c| c.to_json()))
                    .collect();
                println!(
                    "failures: {}",
                    serde_json::to_string_pretty(&failures).map_err(failed)?
                );
            }
        }
        FormatArg::Json => {
            let v: Vec<serde_json::Value> = reports.iter().map(SuiteReport::to_json).collect();
            println!("{}", serde_json::to_string_pretty(&v).map_err(failed)?);
        }
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_cg(cli: &Cli, j1: &str, j2: &str) -> Result<ExitCode, AppError> {
    let j1: HalfInt = j1.parse().map_err(usage)?;
    let j2: HalfInt = j2.parse().map_err(usage)?;
    let deformed = cg_table(j1, j2, true, cli.order).map_err(usage)?;
    let plain = cg_table(j1, j2, false, cli.order).map_err(usage)?;
    let mut rows = Vec::new();
    for j in deformed.js() {
        for m in HalfInt::range_inclusive(-j, j) {
            for m1 in HalfInt::range_inclusive(-j1, j1) {
                let m2 = m - m1;
                if m2.abs() > j2 {
                    continue;
                }
                rows.push((
                    j,
                    m,
                    m1,
                    m2,
                    deformed.coeff(j, m, m1),
                    plain.coeff(j, m, m1),
                ));
            }
        }
    }
    match cli.format {
        FormatArg::Text => {
            println!("couplings for {j1} x {j2} at order {}", cli.order);
            for (j, m, m1, m2, d, c) in &rows {
                println!("j = {j}, m = {m}, m1 = {m1}, m2 = {m2}");
                println!("  deformed:   {d}");
                println!("  undeformed: {c}");
            }
        }
        FormatArg::Json => {
            let couplings: Vec<serde_json::Value> = rows
                .iter()
                .map(|(j, m, m1, m2, d, c)| {
                    Ok(serde_json::json!({
                        "j": j.to_string(),
                        "m": m.to_string(),
                        "m1": m1.to_string(),
                        "m2": m2.to_string(),
                        "deformed": d.to_json().map_err(failed)?,
                        "undeformed": c.to_json().map_err(failed)?,
                    }))
                })
                .collect::<Result<_, AppError>>()?;
            let v = serde_json::json!({
                "j1": j1.to_string(),
                "j2": j2.to_string(),
                "order": cli.order,
                "couplings": couplings,
            });
            println!("{}", serde_json::to_string_pretty(&v).map_err(failed)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_order_map(
    cli: &Cli,
    direction: Direction,
    expr: Option<&str>,
    matrix: Option<u32>,
) -> Result<ExitCode, AppError> {
    let map = OrderingMap::new(cli.ordering.kind(), cli.algebra.kind(), cli.order);
    if let Some(degree) = matrix {
        let v = map.to_json(degree).map_err(failed)?;
        println!("{}", serde_json::to_string_pretty(&v).map_err(failed)?);
        return Ok(ExitCode::SUCCESS);
    }
    let expr = expr
        .ok_or_else(|| AppError::Usage("an expression (or --matrix DEGREE) is required".into()))?;
    let result = match direction {
        Direction::Fwd => {
            let p = parse_poly(map.source(), expr, cli.order).map_err(usage)?;
            map.apply(&p).map_err(failed)?
        }
        Direction::Inv => {
            let p = parse_poly(map.target(), expr, cli.order).map_err(usage)?;
            map.apply_inv(&p).map_err(failed)?
        }
    };
    match cli.format {
        FormatArg::Text => println!("{result}"),
        FormatArg::Json => {
            let v = serde_json::json!({
                "direction": match direction {
                    Direction::Fwd => "fwd",
                    Direction::Inv => "inv",
                },
                "ordering": cli.ordering.kind().name(),
                "algebra": cli.algebra.kind().name(),
                "input": expr,
                "result": poly_to_json(&result)?,
            });
            println!("{}", serde_json::to_string_pretty(&v).map_err(failed)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}
