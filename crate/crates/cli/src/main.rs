use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use iwasawa_cli::commands::{self, Options};
use iwasawa_cli::dataset::EdgeJson;
use iwasawa_cli::{max_pn_from_env, tables, Dataset, Report, EXIT_ERROR, EXIT_MATCH, EXIT_MISMATCH};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(name = "iwasawa", version, about = "Iwasawa invariants of elliptic curves over Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// p-adic digits carried by the Tate period and power-series coefficients.
    #[arg(long, global = true, default_value_t = iwasawa_core::DEFAULT_DIGITS)]
    precision_digits: u32,
    /// Number of power-series terms kept.
    #[arg(long, global = true, default_value_t = iwasawa_core::DEFAULT_T_PRECISION)]
    t_precision: usize,
    /// Additional dataset entries (JSON list of {label, ainvs, expect?}).
    #[arg(long, global = true)]
    extra: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Local data, torsion, Euler characteristic, criteria and mu data at p.
    Analyze {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        p: u64,
        /// Order of Sel_E(Q)_p; defaults to the dataset value or 1.
        #[arg(long)]
        sel_order: Option<u64>,
    },
    /// The Euler characteristic ledger at p.
    EulerChar {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        sel_order: Option<u64>,
    },
    /// Vanishing, infinitude, density and corank criteria at p.
    Criteria {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        sel_order: Option<u64>,
    },
    /// Lower bound or zero certificate for the mu-invariant.
    MuBound {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        p: u64,
        /// JSON list of isogeny edges replacing the dataset's declared edges.
        #[arg(long)]
        edges: Option<PathBuf>,
    },
    /// Orders of Lambda/(f, theta_n) and the fitted growth law.
    Growth {
        /// A series such as "p=3 coeffs=[-3,1]".
        series: String,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
    },
    /// Solve iota(f) = w (1+T)^c f.
    Fe { series: String },
    /// Build a curve with prescribed local data.
    Forge {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Exact checks of points over number fields.
    VerifyPoints,
    /// Stated tables and values against computation.
    Tables,
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run(cli: Cli) -> Result<Report> {
    let opts = Options { precision_digits: cli.precision_digits, t_precision: cli.t_precision, max_pn: max_pn_from_env()? };
    let mut d = Dataset::load()?;
    if let Some(path) = &cli.extra {
        d.extend_from_json(&read(path)?)?;
    }
    match cli.command {
        Command::Analyze { curve, p, sel_order } => commands::analyze(&d, &curve, p, sel_order, &opts),
        Command::EulerChar { curve, p, sel_order } => commands::euler_char_report(&d, &curve, p, sel_order, &opts),
        Command::Criteria { curve, p, sel_order } => commands::criteria(&d, &curve, p, sel_order),
        Command::MuBound { curve, p, edges } => {
            let edges = match edges {
                Some(path) => {
                    let raw: Vec<EdgeJson> = serde_json::from_str(&read(&path)?).context("parsing --edges")?;
                    Some(raw.iter().map(EdgeJson::to_edge).collect::<Result<Vec<_>>>()?)
                }
                None => None,
            };
            commands::mu_bound(&d, &curve, p, edges)
        }
        Command::Growth { series, n_max } => commands::growth(&series, n_max, &opts),
        Command::Fe { series } => commands::fe(&series, &opts),
        Command::Forge { spec, seed } => commands::forge(&read(&spec)?, seed),
        Command::VerifyPoints => Ok(commands::verify_points()),
        Command::Tables => tables::tables(&d, &opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            let out = match format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            print!("{out}");
            ExitCode::from(if report.all_pass() { EXIT_MATCH } else { EXIT_MISMATCH } as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
