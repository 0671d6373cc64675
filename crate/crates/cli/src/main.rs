//! Command-line front end: configure check campaigns, run them, and write
//! reproducible JSON/CSV reports; print Kantorovich/Specht constant tables.
//!
//! Exit codes: 0 = all checks passed, 1 = an inequality violation was
//! found, 2 = configuration or I/O error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use loewner_lab::campaign::{self, CampaignConfig};
use loewner_lab::constants::{kantorovich, kantorovich_gen, specht};
use loewner_lab::report::csv_quote;
use loewner_lab::result::CheckId;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "loewner-lab",
    version,
    about = "Numerical laboratory for operator Young/Aczél inequalities over SPD matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a check campaign and write a machine-readable report.
    Run(RunArgs),
    /// Print tables of K(h), K^R(h), the Specht ratio, and K(w, α).
    ConstantsTable(ConstantsArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated check ids, or "all".
    #[arg(long, default_value = "all")]
    suites: String,
    /// Comma-separated matrix dimensions, each in [2, 32].
    #[arg(long, default_value = "2,3,5,8")]
    dims: String,
    /// Trials per (suite, dimension).
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Campaign seed; per-trial seeds are seed XOR trial-index.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Relative tolerance for matrix checks.
    #[arg(long = "tol-matrix", default_value_t = loewner_lab::checkers::TOL_MATRIX)]
    tol_matrix: f64,
    /// Tolerance for scalar sequence checks.
    #[arg(long = "tol-scalar", default_value_t = loewner_lab::checkers::TOL_SCALAR)]
    tol_scalar: f64,
    /// Spectrum range LO HI for generated matrices.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    spectrum: Option<Vec<f64>>,
    /// Spectrum lower bound (overrides --spectrum).
    #[arg(long = "spectrum-lo")]
    spectrum_lo: Option<f64>,
    /// Spectrum upper bound (overrides --spectrum).
    #[arg(long = "spectrum-hi")]
    spectrum_hi: Option<f64>,
    /// Conjugate exponent pair "p,q"; repeatable.
    #[arg(long = "pq", value_name = "P,Q")]
    pq: Vec<String>,
    /// Report output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
    /// Print only the exit status line, not the report.
    #[arg(long, default_value_t = false)]
    quiet: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct ConstantsArgs {
    /// Comma-separated h grid for the K/S table.
    #[arg(long = "h-grid", default_value = "0.01,0.1,0.5,1,2,5,10,100")]
    h_grid: String,
    /// Exponent R of the K^R column.
    #[arg(long, default_value_t = 0.6)]
    r: f64,
    /// Comma-separated w grid for the K(w, α) table.
    #[arg(long = "w-grid", default_value = "1,1.5,2,4,10,100")]
    w_grid: String,
    /// Comma-separated α grid for the K(w, α) table.
    #[arg(long = "alpha-grid", default_value = "0.1,0.25,0.5,0.75,0.9")]
    alpha_grid: String,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: aligned text or CSV with full-precision values.
    #[arg(long, value_enum, default_value_t = TableFormat::Text)]
    format: TableFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run(args) => match run_campaign(args) {
            Ok(all_pass) => {
                if all_pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        },
        Command::ConstantsTable(args) => match constants_table(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        },
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| v.parse::<T>().map_err(|_| format!("invalid {what}: `{v}`")))
        .collect()
}

fn parse_suites(s: &str) -> Result<Vec<CheckId>, String> {
    if s.trim() == "all" {
        return Ok(CheckId::ALL.to_vec());
    }
    s.split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| CheckId::parse(v).ok_or_else(|| format!("unknown suite `{v}`")))
        .collect()
}

fn build_config(args: &RunArgs) -> Result<CampaignConfig, String> {
    let mut config = CampaignConfig {
        suites: parse_suites(&args.suites)?,
        dims: parse_list(&args.dims, "dimension")?,
        trials: args.trials,
        seed: args.seed,
        tol_matrix: args.tol_matrix,
        tol_scalar: args.tol_scalar,
        ..CampaignConfig::default()
    };
    if let Some(values) = &args.spectrum {
        config.spectrum = (values[0], values[1]);
    }
    if let Some(lo) = args.spectrum_lo {
        config.spectrum.0 = lo;
    }
    if let Some(hi) = args.spectrum_hi {
        config.spectrum.1 = hi;
    }
    if !args.pq.is_empty() {
        let mut exps = Vec::new();
        for pair in &args.pq {
            let parts: Vec<f64> = parse_list(pair, "exponent")?;
            if parts.len() != 2 {
                return Err(format!("--pq expects `p,q`, got `{pair}`"));
            }
            exps.push((parts[0], parts[1]));
        }
        config.exponents = exps;
    }
    config.validate().map_err(|e| e.to_string())?;
    Ok(config)
}

fn run_campaign(args: RunArgs) -> Result<bool, String> {
    let config = build_config(&args)?;
    let report = campaign::run(&config).map_err(|e| e.to_string())?;
    let mut body = match args.format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Csv => report.to_csv(),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &args.out {
        Some(path) => {
            std::fs::write(path, &body).map_err(|e| format!("writing {}: {e}", path.display()))?
        }
        None => {
            if !args.quiet {
                print!("{body}");
            }
        }
    }
    let failed: Vec<String> = report
        .rows
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} (n={})", r.check_id, r.n))
        .collect();
    if failed.is_empty() {
        eprintln!(
            "ok: {} checks x {} dims, {} trials each, min slack within tolerance",
            config.suites.len(),
            config.dims.len(),
            config.trials
        );
    } else {
        eprintln!("FAIL: {}", failed.join(", "));
    }
    Ok(report.all_pass)
}

/// The two comparison rows that must always appear in the h-table: the
/// K^0.6 − S difference changes sign between h = 0.01 and h = 5.
const COMPARISON_ROWS: [f64; 2] = [0.01, 5.0];

fn constants_table(args: ConstantsArgs) -> Result<(), String> {
    let mut h_grid: Vec<f64> = parse_list(&args.h_grid, "h value")?;
    for &h in &COMPARISON_ROWS {
        if !h_grid.contains(&h) {
            h_grid.push(h);
        }
    }
    h_grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let w_grid: Vec<f64> = parse_list(&args.w_grid, "w value")?;
    let alpha_grid: Vec<f64> = parse_list(&args.alpha_grid, "alpha value")?;
    let r = args.r;
    if !(0.0..=1.0).contains(&r) {
        return Err(format!("R = {r} outside [0, 1]"));
    }

    let mut out = String::new();
    match args.format {
        TableFormat::Text => {
            out.push_str(&format!(
                "{:>12} {:>14} {:>14} {:>14} {:>14}\n",
                "h",
                "K(h)",
                format!("K^{r}(h)"),
                "S(h)",
                format!("K^{r}-S")
            ));
            for &h in &h_grid {
                let k = kantorovich(h).map_err(|e| e.to_string())?;
                let s = specht(h).map_err(|e| e.to_string())?;
                let kr = k.powf(r);
                out.push_str(&format!(
                    "{h:>12.6} {k:>14.7} {kr:>14.7} {s:>14.7} {:>14.7}\n",
                    kr - s
                ));
            }
            out.push('\n');
            out.push_str(&format!("{:>12}", "K(w,a) w\\a"));
            for &a in &alpha_grid {
                out.push_str(&format!(" {a:>12.4}"));
            }
            out.push('\n');
            for &w in &w_grid {
                out.push_str(&format!("{w:>12.4}"));
                for &a in &alpha_grid {
                    let k = kantorovich_gen(w, a).map_err(|e| e.to_string())?;
                    out.push_str(&format!(" {k:>12.8}"));
                }
                out.push('\n');
            }
        }
        TableFormat::Csv => {
            out.push_str("table,h,r,k,k_pow_r,specht,kr_minus_s\n");
            for &h in &h_grid {
                let k = kantorovich(h).map_err(|e| e.to_string())?;
                let s = specht(h).map_err(|e| e.to_string())?;
                let kr = k.powf(r);
                let row = [
                    "kantorovich_specht".to_string(),
                    format!("{h}"),
                    format!("{r}"),
                    format!("{k}"),
                    format!("{kr}"),
                    format!("{s}"),
                    format!("{}", kr - s),
                ];
                out.push_str(&row.iter().map(|f| csv_quote(f)).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
            out.push_str("table,w,alpha,k_gen,,,\n");
            for &w in &w_grid {
                for &a in &alpha_grid {
                    let k = kantorovich_gen(w, a).map_err(|e| e.to_string())?;
                    out.push_str(&format!("kantorovich_gen,{w},{a},{k},,,\n"));
                }
            }
        }
    }

    match &args.out {
        Some(path) => {
            std::fs::write(path, &out).map_err(|e| format!("writing {}: {e}", path.display()))?
        }
        None => print!("{out}"),
    }
    Ok(())
}
