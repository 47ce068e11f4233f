//! Command line front end: verify identities from the catalog, list
//! them, expand named series, and benchmark full-catalog verification.
//!
//! Exit codes: 0 when everything passes, 1 when any verification
//! fails, 2 for usage errors (unknown ids, malformed parameters).

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qmock_core::rational::format_rat;
use qmock_core::{
    find_identity, list_identities, verify, verify_all, identities::identity_sides, MockTheta,
    ParamPoint, ParamValue, QSeries, Status, VerificationReport, DEFAULT_ORDER,
};

#[derive(Parser)]
#[command(name = "qmock", about = "Exact q-series verification of the sixth order mock theta identities", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one identity or the full catalog over its parameter panels
    Verify {
        /// Identity id, or "all" for the whole catalog
        #[arg(long, default_value = "all")]
        identity: String,
        /// Truncation order (coefficients are compared for q^k, k < order)
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: i64,
        /// Parameter override as name=value; repeatable.  Values are
        /// rationals ("p/q"), or "q", "-q", "sqrt(q)", "-sqrt(q)" where
        /// the identity admits monomial parameters
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Multiply the right-hand side by (1+q) before comparing; a
        /// self-test hook that must make every verification fail
        #[arg(long, hide = true, default_value_t = false)]
        perturb_rhs: bool,
    },
    /// List the identity catalog
    List {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the coefficients of a named series, one per line as
    /// "exponent<TAB>numerator/denominator"
    Expand {
        /// A mock theta function (phi, psi, rho, sigma, lambda, mu,
        /// phi_minus, psi_minus) or a side of a parameter-free identity
        /// as "<id>.lhs" / "<id>.rhs"
        #[arg(long)]
        series: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: i64,
    },
    /// Time full-catalog verification at a range of orders
    Bench {
        #[arg(long, num_args = 1.., value_delimiter = ',', default_values_t = vec![50, 100, 200, 400])]
        orders: Vec<i64>,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_params(raw: &[String]) -> Result<ParamPoint, String> {
    let mut point = ParamPoint::empty();
    for item in raw {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| format!("malformed parameter `{item}`; expected name=value"))?;
        let value = ParamValue::parse(value)
            .ok_or_else(|| format!("cannot parse parameter value `{value}`"))?;
        point.set(name.trim(), value);
    }
    Ok(point)
}

fn params_text(p: &ParamPoint) -> String {
    if p.is_empty() {
        String::new()
    } else {
        let inner: Vec<String> = p.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!(" [{}]", inner.join(", "))
    }
}

fn report_json(r: &VerificationReport) -> serde_json::Value {
    let params: serde_json::Map<String, serde_json::Value> = r
        .params
        .iter()
        .map(|(k, v)| (k.clone(), json!(v.to_string())))
        .collect();
    let first_mismatch = r.first_mismatch.as_ref().map(|m| {
        json!({
            "exponent": m.exponent,
            "lhs": format_rat(&m.lhs),
            "rhs": format_rat(&m.rhs),
        })
    });
    json!({
        "id": r.id,
        "params": params,
        "status": r.status.as_str(),
        "first_mismatch": first_mismatch,
        "elapsed_ms": r.elapsed_ms as u64,
    })
}

fn print_reports(reports: &[VerificationReport], order: i64, format: Format) -> ExitCode {
    let all_pass = reports.iter().all(|r| r.passed());
    match format {
        Format::Json => {
            let doc = json!({
                "order": order,
                "results": reports.iter().map(report_json).collect::<Vec<_>>(),
                "all_pass": all_pass,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Text => {
            for r in reports {
                let mut line = format!(
                    "{} {}{} order={} ({} ms)",
                    r.status.as_str(),
                    r.id,
                    params_text(&r.params),
                    r.requested_order,
                    r.elapsed_ms
                );
                if let Some(m) = &r.first_mismatch {
                    line.push_str(&format!(
                        "  first mismatch at q^{}: lhs={} rhs={}",
                        m.exponent,
                        format_rat(&m.lhs),
                        format_rat(&m.rhs)
                    ));
                }
                if let Some(e) = &r.error {
                    line.push_str(&format!("  {e}"));
                }
                println!("{line}");
            }
            let fails = reports.iter().filter(|r| r.status == Status::Fail).count();
            let errors = reports.iter().filter(|r| r.status == Status::Error).count();
            println!(
                "{} reports: {} pass, {} fail, {} error",
                reports.len(),
                reports.len() - fails - errors,
                fails,
                errors
            );
        }
    }
    if reports.iter().any(|r| r.status == Status::Error) {
        ExitCode::from(2)
    } else if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn verify_perturbed(id: &str, point: &ParamPoint, order: i64) -> VerificationReport {
    use qmock_core::rational::rat;
    let start = std::time::Instant::now();
    let mut report = VerificationReport {
        id: id.to_string(),
        params: point.clone(),
        requested_order: order,
        effective_order: 0,
        status: Status::Error,
        first_mismatch: None,
        error: None,
        elapsed_ms: 0,
    };
    match identity_sides(id, point, order) {
        Ok((lhs, rhs)) => {
            let c = qmock_core::compare(&lhs, &rhs.mul_binomial(&rat(-1), 1), order);
            report.effective_order = c.effective_order;
            report.status = if c.is_pass() { Status::Pass } else { Status::Fail };
            report.first_mismatch = c.mismatch;
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    report.elapsed_ms = start.elapsed().as_millis();
    report
}

fn cmd_verify(
    identity: &str,
    order: i64,
    params: &[String],
    format: Format,
    perturb_rhs: bool,
) -> ExitCode {
    if order < 1 {
        return usage_error("order must be at least 1");
    }
    let overrides = match parse_params(params) {
        Ok(p) => p,
        Err(e) => return usage_error(&e),
    };
    let run = |id: &str, p: &ParamPoint| {
        if perturb_rhs {
            verify_perturbed(id, p, order)
        } else {
            verify(id, p, order)
        }
    };
    let reports: Vec<VerificationReport> = if identity == "all" {
        if !overrides.is_empty() {
            return usage_error("--param requires a specific --identity");
        }
        if perturb_rhs {
            return usage_error("--perturb-rhs requires a specific --identity");
        }
        verify_all(order)
    } else {
        let spec = match find_identity(identity) {
            Ok(s) => s,
            Err(e) => return usage_error(&e.to_string()),
        };
        if overrides.is_empty() {
            spec.panel.iter().map(|p| run(spec.id, p)).collect()
        } else {
            vec![run(spec.id, &overrides)]
        }
    };
    print_reports(&reports, order, format)
}

fn cmd_list(format: Format) -> ExitCode {
    let specs = list_identities();
    match format {
        Format::Json => {
            let doc = json!({
                "identities": specs
                    .iter()
                    .map(|s| {
                        json!({
                            "id": s.id,
                            "params": s.param_names,
                            "panel_points": s.panel.len(),
                            "description": s.description,
                        })
                    })
                    .collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Text => {
            for s in &specs {
                let params = if s.param_names.is_empty() {
                    "-".to_string()
                } else {
                    s.param_names.join(",")
                };
                println!("{:<12} {:<10} {}", s.id, params, s.description);
            }
        }
    }
    ExitCode::SUCCESS
}

fn print_series(f: &QSeries) {
    for (exp, coef) in f.terms() {
        println!("{exp}\t{}", format_rat(coef));
    }
}

fn cmd_expand(series: &str, order: i64) -> ExitCode {
    if order < 1 {
        return usage_error("order must be at least 1");
    }
    if let Ok(m) = series.parse::<MockTheta>() {
        return match m.series(order) {
            Ok(f) => {
                print_series(&f);
                ExitCode::SUCCESS
            }
            Err(e) => usage_error(&e.to_string()),
        };
    }
    if let Some((id, side)) = series.rsplit_once('.') {
        if side == "lhs" || side == "rhs" {
            let spec = match find_identity(id) {
                Ok(s) => s,
                Err(e) => return usage_error(&e.to_string()),
            };
            if !spec.param_names.is_empty() {
                return usage_error(&format!(
                    "`{id}` takes parameters; expand supports only parameter-free identities"
                ));
            }
            return match identity_sides(id, &ParamPoint::empty(), order) {
                Ok((lhs, rhs)) => {
                    print_series(if side == "lhs" { &lhs } else { &rhs });
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(&e.to_string()),
            };
        }
    }
    usage_error(&format!(
        "unknown series `{series}`; expected a mock theta name or <id>.lhs / <id>.rhs"
    ))
}

fn cmd_bench(orders: &[i64]) -> ExitCode {
    if orders.iter().any(|&o| o < 1) {
        return usage_error("orders must be at least 1");
    }
    println!("{:>6} {:>8} {:>6} {:>6} {:>7} {:>11}", "order", "reports", "pass", "fail", "error", "elapsed_ms");
    let mut worst: u8 = 0;
    for &order in orders {
        let start = std::time::Instant::now();
        let reports = verify_all(order);
        let elapsed = start.elapsed().as_millis();
        let fails = reports.iter().filter(|r| r.status == Status::Fail).count();
        let errors = reports.iter().filter(|r| r.status == Status::Error).count();
        println!(
            "{:>6} {:>8} {:>6} {:>6} {:>7} {:>11}",
            order,
            reports.len(),
            reports.len() - fails - errors,
            fails,
            errors,
            elapsed
        );
        if errors > 0 {
            worst = 2;
        } else if fails > 0 {
            worst = worst.max(1);
        }
    }
    ExitCode::from(worst)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            identity,
            order,
            params,
            format,
            perturb_rhs,
        } => cmd_verify(&identity, order, &params, format, perturb_rhs),
        Command::List { format } => cmd_list(format),
        Command::Expand { series, order } => cmd_expand(&series, order),
        Command::Bench { orders } => cmd_bench(&orders),
    }
}
