use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use biquad2::campaign::{cli_search, cli_verify, structure_campaign, Config, Family, VerificationReport};
use biquad2::report::{cli_report, from_json, Format};

#[derive(Parser)]
#[command(version, about = "Search and verify 2-class group ranks along cyclotomic Z2-extensions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Worker threads
    #[arg(long, default_value_t = 1, global = true)]
    workers: usize,
    /// Largest discriminant handled by form enumeration
    #[arg(long, default_value_t = biquad2::core::formclass::DEFAULT_DISC_CAP, global = true)]
    disc_cap: u64,
    /// Skip h2(K), h2(K1) and the stable group in `verify`
    #[arg(long, global = true)]
    ranks_only: bool,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// List tuples matching an item
    Search {
        #[arg(long)]
        case: u8,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Verify predicted ranks for one item, or all items
    Verify {
        #[arg(long)]
        case: Option<u8>,
        /// Overrides both the two-prime and three-prime bounds
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Stable group of the cyclic (1) or split (2) qrs family
    Structure {
        #[arg(long, default_value_t = 1)]
        case: u8,
        #[arg(long, default_value_t = 100)]
        bound: u64,
    },
    /// Re-serialize a JSON report
    Report { input: PathBuf },
}

fn emit(text: &str, out: &Option<PathBuf>) -> std::io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, Box<dyn std::error::Error>> {
    let mut cfg = Config { disc_cap: cli.disc_cap, workers: cli.workers, orders: !cli.ranks_only, ..Config::default() };
    let report: VerificationReport = match cli.cmd {
        Cmd::Search { case, bound } => {
            let found = cli_search(case, bound.unwrap_or(cfg.bound_two))?;
            emit(&serde_json::to_string_pretty(&found)?, &cli.out)?;
            return Ok(true);
        }
        Cmd::Verify { case, bound } => {
            if let Some(b) = bound {
                cfg.bound_two = b;
                cfg.bound_three = b;
            }
            let cases: Vec<u8> = case.map_or((1..=29).collect(), |c| vec![c]);
            let mut all: Option<VerificationReport> = None;
            for c in cases {
                let r = cli_verify(c, &cfg)?;
                eprintln!("case {c}: {}/{} agree", r.summary.agree, r.summary.tuples);
                all = Some(match all {
                    None => r,
                    Some(a) => {
                        let ms = a.summary.runtime_ms + r.summary.runtime_ms;
                        let rows = a.rows.into_iter().chain(r.rows).collect();
                        VerificationReport::new(case, cfg, rows, ms)
                    }
                });
            }
            all.expect("at least one case")
        }
        Cmd::Structure { case, bound } => {
            let fam = match case {
                1 => Family::Cyclic,
                2 => Family::Split,
                _ => return Err(format!("structure family {case}; expected 1 or 2").into()),
            };
            structure_campaign(fam, bound, &cfg)
        }
        Cmd::Report { input } => from_json(&fs::read_to_string(input)?)?,
    };
    emit(&cli_report(&report, cli.format)?, &cli.out)?;
    Ok(report.all_agree())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
