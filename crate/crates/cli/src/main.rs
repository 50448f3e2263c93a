mod format;

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use format::{csv_text, emit, fmt_g, json_text};
use tilted_sos::algebra::parse_poly;
use tilted_sos::certificates::{
    audit_yn, basis_polys, certificate_from_json, library, library_entry, library_names, AnyCertificate,
    VerificationReport,
};
use tilted_sos::field::Field;
use tilted_sos::qubit::{apply, system_from_json};
use tilted_sos::sdp::{
    canonical_basis, enumerate_chsh_vertices, lift_to_canonical, region_axes, region_points, solve_feasible,
    BasisKind, ConstraintSystem,
};
use tilted_sos::selftest::{
    bound_sweep, bound_sweep_header, bound_sweep_row, noisy_system, parse_grid, self_test, NoiseModel,
};
use tilted_sos::{Error, Scalar, Tilt};

#[derive(Parser)]
#[command(name = "tilted-sos", version, about = "SOS certificates and self-testing bounds for tilted CHSH operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a certificate file or a named library certificate.
    Verify(VerifyArgs),
    /// Search numerically for a Gram matrix at a fixed angle.
    Search(SearchArgs),
    /// The five vertices of the solution set at pi/4.
    Vertices(TableArgs),
    /// Feasible lattice points of the solution set at pi/4 or pi/8.
    Region(RegionArgs),
    /// Expectation of a polynomial on a system file.
    Eval(EvalArgs),
    /// Measure every robustness bound on a system.
    Selftest(SelftestArgs),
    /// Tabulate the bounds over a grid of angles and deficits.
    Bounds(BoundsArgs),
    /// Audit of the earlier closed-form certificate.
    AuditYn(TextArgs),
    /// List and verify the built-in certificates.
    Library(TextArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct VerifyArgs {
    /// Certificate file.
    file: Option<PathBuf>,
    #[arg(long, conflicts_with = "file")]
    name: Option<String>,
    /// `symbolic`, `pi/N`, or radians. Evaluates a symbolic certificate there.
    #[arg(long)]
    theta: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    theta: String,
    /// 5 for the annihilator basis, 9 for `1, A_x, B_y, A_x B_y`.
    #[arg(long, default_value_t = 5, value_parser = parse_basis)]
    basis: usize,
    /// Search for the negated operator instead (expected infeasible).
    #[arg(long)]
    negate: bool,
    /// Write the certificate here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct RegionArgs {
    #[arg(long)]
    theta: String,
    #[arg(long, default_value_t = 21)]
    grid: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    system: PathBuf,
    #[arg(long)]
    poly: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct SelftestArgs {
    /// System file.
    #[arg(long, required_unless_present = "model", conflicts_with = "model")]
    system: Option<PathBuf>,
    /// Built-in noisy system instead of a file.
    #[arg(long, value_parser = parse_model, requires_all = ["theta", "visibility"])]
    model: Option<NoiseModel>,
    #[arg(long)]
    theta: Option<String>,
    #[arg(long)]
    visibility: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    report: Format,
}

#[derive(Args)]
struct BoundsArgs {
    /// `a:b:n`, n evenly spaced angles.
    #[arg(long)]
    theta_grid: String,
    /// `a:b:n`, n evenly spaced deficits.
    #[arg(long)]
    eps_grid: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct TextArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn parse_basis(s: &str) -> Result<usize, String> {
    match s {
        "5" => Ok(5),
        "9" => Ok(9),
        _ => Err("basis size must be 5 or 9".into()),
    }
}

fn parse_model(s: &str) -> Result<NoiseModel, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure of a check, as opposed to bad input.
#[derive(Debug)]
struct Failed;

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("check failed")
    }
}

impl std::error::Error for Failed {}

/// `pi/N`, `pi`, or a decimal number of radians.
fn parse_theta(s: &str) -> Result<f64> {
    let s = s.trim();
    let v = if s == "pi" {
        PI
    } else if let Some(d) = s.strip_prefix("pi/") {
        PI / d.parse::<f64>().with_context(|| format!("bad angle {s:?}"))?
    } else {
        s.parse::<f64>().with_context(|| format!("bad angle {s:?}"))?
    };
    Ok(v)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn pass_fail(ok: bool) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Failed.into())
    }
}

fn report_text(r: &VerificationReport) -> String {
    let mut s = format!(
        "name: {}\nexact: {}\nresidual: {}\nresidual terms: {}\nresidual max abs: {}\n",
        r.name,
        r.exact,
        r.residual,
        r.residual_terms,
        fmt_g(r.residual_max_abs)
    );
    if let Some(m) = r.min_eigenvalue {
        s += &format!("min eigenvalue: {}\n", fmt_g(m));
    }
    if let Some(n) = &r.note {
        s += &format!("note: {n}\n");
    }
    s += &format!("{}\n", if r.passed { "PASS" } else { "FAIL" });
    s
}

fn verify(a: VerifyArgs) -> Result<()> {
    let cert = match (&a.file, &a.name) {
        (Some(f), None) => certificate_from_json(&read(f)?)?,
        (None, Some(n)) => library_entry(n)
            .ok_or_else(|| anyhow!("unknown certificate {n:?}; known: {}", library_names().join(", ")))?,
        _ => bail!("give a certificate file or --name"),
    };
    let cert = match a.theta.as_deref().map(str::trim) {
        None | Some("symbolic") => cert,
        Some(t) => {
            let theta = parse_theta(t)?;
            match cert.theta() {
                None => AnyCertificate::Numeric(cert.to_numeric(theta)?),
                Some(own) if (own - theta).abs() < 1e-12 => cert,
                Some(own) => bail!("certificate {} holds at theta = {}, not {}", cert.name(), fmt_g(own), fmt_g(theta)),
            }
        }
    };
    let r = cert.verify();
    let text = match a.format {
        Format::Text => report_text(&r),
        _ => json_text(&r)?,
    };
    emit(None, &text)?;
    pass_fail(r.passed)
}

fn search(a: SearchArgs) -> Result<()> {
    let theta = parse_theta(&a.theta)?;
    let mut cs = ConstraintSystem::for_theta(theta, BasisKind::Annihilators)?;
    if a.negate {
        cs = cs.negated();
    }
    let found = solve_feasible(&cs)?;
    let (basis, gram) = if a.basis == 9 {
        let b: Vec<String> = canonical_basis::<Scalar>().iter().map(|p| p.to_string()).collect();
        (b, lift_to_canonical(&found.gram, theta)?)
    } else {
        let b: Vec<String> = basis_polys(&Tilt::<Scalar>::symbolic()).iter().map(|p| p.to_string()).collect();
        (b, found.gram.clone())
    };
    let n = basis.len();
    let rows: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| gram[(i, j)]).collect()).collect();
    let mut cert = json!({
        "name": format!("search-{}", a.basis),
        "theta": theta,
        "mode": "numeric",
        "basis": basis,
        "gram": rows,
    });
    if a.negate {
        cert["target"] = json!((-tilted_sos::algebra::shifted_operator(&Tilt::numeric(theta)?)).to_string());
    }
    let text = json_text(&cert)?;
    let check = certificate_from_json(&text)?.verify();
    let summary = json_text(json!({
        "iterations": found.iterations,
        "affine_residual": found.affine_residual,
        "psd_violation": found.psd_violation,
        "verification": check,
    }))?;
    match &a.out {
        Some(p) => {
            emit(Some(p), &text)?;
            emit(None, &summary)?;
        }
        None => emit(None, &text)?,
    }
    pass_fail(check.passed)
}

fn vertices(a: TableArgs) -> Result<()> {
    let vs = enumerate_chsh_vertices();
    let text = match a.format {
        Format::Json => json_text(
            vs.iter()
                .map(|v| {
                    json!({
                        "name": v.name,
                        "lambda": v.params.lambda,
                        "mu": v.params.mu,
                        "q": v.params.q,
                        "rank": v.rank,
                        "extremal": v.extremal,
                        "gram": v.gram.iter().map(|r| r.iter().map(|x| x.to_expr()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>(),
        )?,
        _ => {
            let header = ["name", "lambda", "mu", "q", "rank", "extremal"].map(String::from);
            let rows: Vec<Vec<String>> = vs
                .iter()
                .map(|v| {
                    vec![
                        v.name.clone(),
                        fmt_g(v.params.lambda),
                        fmt_g(v.params.mu),
                        fmt_g(v.params.q),
                        v.rank.to_string(),
                        v.extremal.to_string(),
                    ]
                })
                .collect();
            csv_text(&header, &rows)?
        }
    };
    emit(a.out.as_deref(), &text)?;
    pass_fail(vs.iter().all(|v| v.extremal))
}

fn region(a: RegionArgs) -> Result<()> {
    let theta = parse_theta(&a.theta)?;
    let axes = region_axes(theta).ok_or_else(|| anyhow!("closed-form regions exist only at theta = pi/4 and pi/8"))?;
    let pts = region_points(theta, a.grid)?;
    let text = match a.format {
        Format::Json => json_text(
            pts.iter()
                .map(|p| json!({axes[0]: p.coords[0], axes[1]: p.coords[1], axes[2]: p.coords[2], "margin": p.margin}))
                .collect::<Vec<_>>(),
        )?,
        _ => {
            let header = [axes[0], axes[1], axes[2], "margin"].map(String::from);
            let rows: Vec<Vec<String>> = pts
                .iter()
                .map(|p| p.coords.iter().chain([&p.margin]).map(|x| fmt_g(*x)).collect())
                .collect();
            csv_text(&header, &rows)?
        }
    };
    emit(a.out.as_deref(), &text)
}

fn eval(a: EvalArgs) -> Result<()> {
    let sys = system_from_json(&read(&a.system)?)?;
    let p = parse_poly::<Scalar>(&a.poly)?;
    let v = apply(&p, &sys)?;
    let e = sys.state.dotc(&v);
    let text = match a.format {
        Format::Text => format!("{}\n", fmt_g(e.re)),
        _ => json_text(json!({
            "poly": p.to_string(),
            "theta": sys.theta,
            "expectation": e.re,
            "imaginary": e.im,
            "norm": v.norm(),
        }))?,
    };
    emit(None, &text)
}

fn selftest(a: SelftestArgs) -> Result<()> {
    let sys = match (&a.system, a.model) {
        (Some(p), _) => system_from_json(&read(p)?)?,
        (None, Some(m)) => {
            let theta = parse_theta(a.theta.as_deref().unwrap_or_default())?;
            noisy_system(m, theta, a.visibility.unwrap_or(1.0))?
        }
        (None, None) => bail!("give --system or --model"),
    };
    let r = self_test(&sys)?;
    let text = match a.report {
        Format::Csv => {
            let header = ["section", "name", "measured", "bound", "passed"].map(String::from);
            let mut rows = vec![
                vec!["system".into(), "theta".into(), fmt_g(r.theta), String::new(), String::new()],
                vec!["system".into(), "epsilon".into(), fmt_g(r.epsilon), String::new(), String::new()],
                vec!["system".into(), "beta".into(), fmt_g(r.beta), String::new(), String::new()],
            ];
            for (n, v) in r.bounds.scalars() {
                rows.push(vec!["bound".into(), n.into(), String::new(), fmt_g(v), String::new()]);
            }
            for (section, checks) in [
                ("sos", &r.sos_checks),
                ("regularized", &r.regularized_checks),
                ("isometry", &r.distances),
            ] {
                for c in checks {
                    rows.push(vec![
                        section.into(),
                        c.name.clone(),
                        fmt_g(c.measured),
                        fmt_g(c.bound),
                        c.passed.to_string(),
                    ]);
                }
            }
            csv_text(&header, &rows)?
        }
        _ => json_text(&r)?,
    };
    emit(None, &text)?;
    pass_fail(r.passed)
}

fn bounds(a: BoundsArgs) -> Result<()> {
    let thetas = parse_grid(&a.theta_grid).ok_or_else(|| anyhow!("bad --theta-grid {:?}, expected a:b:n", a.theta_grid))?;
    let eps = parse_grid(&a.eps_grid).ok_or_else(|| anyhow!("bad --eps-grid {:?}, expected a:b:n", a.eps_grid))?;
    let rows = bound_sweep(&thetas, &eps)?;
    let text = match a.format {
        Format::Json => json_text(&rows)?,
        _ => {
            let body: Vec<Vec<String>> =
                rows.iter().map(|d| bound_sweep_row(d).into_iter().map(fmt_g).collect()).collect();
            csv_text(&bound_sweep_header(), &body)?
        }
    };
    emit(a.out.as_deref(), &text)
}

fn audit(a: TextArgs) -> Result<()> {
    let r = audit_yn();
    let text = match a.format {
        Format::Text => format!(
            "radicand sign change: lower endpoint {}\nradicand sign change: upper endpoint {}\nradicand at pi/8: {}\nspan of the five vectors at pi/8: rank {}\n",
            fmt_g(r.lower),
            fmt_g(r.upper),
            fmt_g(r.radicand_at_pi8),
            r.q_rank
        ),
        _ => json_text(&r)?,
    };
    emit(None, &text)?;
    pass_fail(r.q_rank == 4)
}

fn list_library(a: TextArgs) -> Result<()> {
    let entries = library();
    let reports: Vec<VerificationReport> = entries.iter().map(AnyCertificate::verify).collect();
    let theta = |c: &AnyCertificate| c.theta().map(fmt_g).unwrap_or_else(|| "symbolic".into());
    let text = match a.format {
        Format::Json => json_text(&reports)?,
        Format::Csv => {
            let header = ["name", "theta", "exact", "residual", "passed"].map(String::from);
            let rows: Vec<Vec<String>> = entries
                .iter()
                .zip(&reports)
                .map(|(c, r)| vec![r.name.clone(), theta(c), r.exact.to_string(), r.residual.clone(), r.passed.to_string()])
                .collect();
            csv_text(&header, &rows)?
        }
        Format::Text => entries
            .iter()
            .zip(&reports)
            .map(|(c, r)| {
                format!(
                    "{:<10} theta={:<16} {:<8} residual={} {}\n",
                    r.name,
                    theta(c),
                    if r.exact { "exact" } else { "numeric" },
                    r.residual,
                    if r.passed { "PASS" } else { "FAIL" }
                )
            })
            .collect(),
    };
    emit(None, &text)?;
    pass_fail(reports.iter().all(|r| r.passed))
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.is::<Failed>() {
        return 1;
    }
    match e.downcast_ref::<Error>() {
        Some(
            Error::Infeasible { .. }
            | Error::NotConverged { .. }
            | Error::NonDichotomic { .. }
            | Error::DegenerateJunk { .. }
            | Error::NonHermitian { .. },
        ) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Search(a) => search(a),
        Command::Vertices(a) => vertices(a),
        Command::Region(a) => region(a),
        Command::Eval(a) => eval(a),
        Command::Selftest(a) => selftest(a),
        Command::Bounds(a) => bounds(a),
        Command::AuditYn(a) => audit(a),
        Command::Library(a) => list_library(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.is::<Failed>() {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
