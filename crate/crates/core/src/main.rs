use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use wsd_core::gf2::is_weakly_self_dual;
use wsd_core::gmat::emit_gmat;
use wsd_core::report::{
    analyze_path, bound_curves, curve_csv, curves_csv, report_csv, report_json, verify_zoo,
    AnalysisError, AnalysisOptions, CheckStatus, Curve, ReportDocument,
};
use wsd_core::zoo::{zoo, zoo_entry};

#[derive(Parser)]
#[command(name = "wsd", version, about = "Weight bounds and rotation identities for weakly self-dual binary codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct GridArgs {
    #[arg(long, default_value_t = 101)]
    theta_steps: usize,
    #[arg(long, default_value_t = 99)]
    lambda_steps: usize,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Seed for the randomly chosen spot-check angles and messages.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse a generator matrix file and print a report.
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        grid: GridArgs,
        /// Fail with status 2 unless the code is weakly self-dual.
        #[arg(long)]
        require_wsd: bool,
    },
    /// Check the rotation identities and inequalities and print the worst slack of each.
    VerifyLemmas {
        #[arg(required_unless_present = "zoo", conflicts_with = "zoo")]
        path: Option<PathBuf>,
        /// Run over every code in the built-in zoo.
        #[arg(long)]
        zoo: bool,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Tabulate log2 of each bound for w = 1 .. n/2 - 1.
    BoundCurves {
        #[arg(long)]
        n: usize,
        /// Minimum distance, enabling the doubly-even bound.
        #[arg(long)]
        d: Option<usize>,
        /// Dimension used for the binomial baseline (default n/2).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Emit only this curve as two-column CSV.
        #[arg(long, value_enum)]
        curve: Option<Curve>,
    },
    /// Built-in code library.
    Zoo {
        #[command(subcommand)]
        action: ZooAction,
    },
}

#[derive(Subcommand)]
enum ZooAction {
    /// List the available codes.
    List,
    /// Print one code in generator matrix format.
    Emit { name: String },
}

fn options(grid: &GridArgs, require_wsd: bool) -> AnalysisOptions {
    AnalysisOptions {
        theta_steps: grid.theta_steps,
        lambda_steps: grid.lambda_steps,
        tolerance: grid.tolerance,
        require_wsd,
        seed: grid.seed,
    }
}

fn report_failures(docs: &[ReportDocument]) -> ExitCode {
    let failures: Vec<String> = docs.iter().flat_map(ReportDocument::failures).collect();
    for f in &failures {
        eprintln!("violation: {f}");
    }
    if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn num(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.6e}"))
}

fn print_lemma_table(doc: &ReportDocument) {
    println!("{} [n={}, k={}]", doc.code.name, doc.code.n, doc.code.k);
    for c in &doc.lemmas {
        let status = match c.status {
            CheckStatus::Passed => "PASS",
            CheckStatus::Failed => "FAIL",
            CheckStatus::Skipped => "SKIP",
            CheckStatus::OutsideHypotheses => "INFO",
        };
        println!(
            "  {:<28} {status}  worst={}  bound={}  slack={}  at={}",
            c.name,
            num(c.worst_value),
            num(c.bound),
            num(c.worst_slack),
            num(c.worst_at),
        );
    }
}

fn run(cli: Cli) -> Result<ExitCode, AnalysisError> {
    match cli.command {
        Command::Analyze {
            path,
            format,
            grid,
            require_wsd,
        } => {
            let doc = analyze_path(&path, &options(&grid, require_wsd))?;
            match format {
                Format::Json => println!("{}", report_json(&doc)),
                Format::Csv => print!("{}", report_csv(&doc)),
            }
            Ok(report_failures(std::slice::from_ref(&doc)))
        }
        Command::VerifyLemmas { path, zoo, grid } => {
            let opts = options(&grid, false);
            let docs = match path {
                Some(p) if !zoo => vec![analyze_path(&p, &opts)?],
                _ => verify_zoo(&opts)?,
            };
            for d in &docs {
                print_lemma_table(d);
            }
            Ok(report_failures(&docs))
        }
        Command::BoundCurves {
            n,
            d,
            k,
            format,
            curve,
        } => {
            let table = bound_curves(n, d, k)?;
            match (curve, format) {
                (Some(c), _) => print!("{}", curve_csv(&table, c)),
                (None, Format::Csv) => print!("{}", curves_csv(&table)),
                (None, Format::Json) => println!("{}", report_json(&table)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Zoo { action } => {
            match action {
                ZooAction::List => {
                    for e in zoo()? {
                        println!(
                            "{:<10} [{}, {}]  wsd={}  {}",
                            e.name,
                            e.code.n(),
                            e.code.k(),
                            is_weakly_self_dual(&e.code),
                            e.provenance
                        );
                    }
                }
                ZooAction::Emit { name } => {
                    let e = zoo_entry(&name)?;
                    println!("# {}: {}", e.name, e.provenance);
                    print!("{}", emit_gmat(&e.code));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
