use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rauzy::commands::{self, Output, SvgTarget};
use rauzy::verify::Criterion;
use rauzy::{CliError, FieldChoice, RunConfig};

#[derive(Parser)]
#[command(name = "rauzy", version, about = "Rauzy tiling patches, their rhombal algebras and module checks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldKind {
    Rational,
    Prime,
}

#[derive(Args)]
struct Global {
    /// Substitution level of the patch
    #[arg(long, global = true, env = "RAUZY_LEVEL")]
    level: Option<usize>,
    /// Defaults to rational for verify-all and prime otherwise
    #[arg(long, global = true, value_enum, env = "RAUZY_FIELD")]
    field: Option<FieldKind>,
    /// Characteristic when `--field prime`
    #[arg(long, global = true, default_value_t = 5, env = "RAUZY_PRIME")]
    prime: u32,
    #[arg(long, global = true, env = "RAUZY_ALLOW_CHAR_TWO")]
    allow_char_two: bool,
    /// Extra substitution steps allowed to complete vertex stars
    #[arg(long, global = true, default_value_t = 6, env = "RAUZY_PADDING")]
    padding: usize,
    /// parity, constant, family-N or corrupted-M-N
    #[arg(long, global = true, default_value = "parity", env = "RAUZY_SIGNS")]
    signs: String,
    #[arg(long, global = true, env = "RAUZY_SEED")]
    seed: Option<u64>,
    /// Write output here instead of stdout
    #[arg(long, global = true, env = "RAUZY_OUT")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate P_i as JSON or SVG
    Tile {
        /// Write SVG to this file, or to stdout instead of JSON when no path is given
        #[arg(long, num_args = 0..=1, value_name = "PATH")]
        svg: Option<Option<PathBuf>>,
        /// Add horizontal lines to the SVG and the JSON
        #[arg(long)]
        highlight_lines: bool,
    },
    /// Quiver, vertex classes and algebra dimension report
    Analyze,
    /// Configuration census and line endpoint certificates
    Census,
    /// Omega-orbits of arrow modules on certified lines
    Periodicity,
    /// Run the acceptance checks
    VerifyAll {
        /// Criteria to run, by number or name
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

impl Global {
    fn config(&self, default_field: FieldKind) -> RunConfig {
        let d = RunConfig::default();
        RunConfig {
            level: self.level,
            field: match self.field.unwrap_or(default_field) {
                FieldKind::Rational => FieldChoice::Rational,
                FieldKind::Prime => FieldChoice::Prime(self.prime),
            },
            allow_char_two: self.allow_char_two,
            padding: self.padding,
            signs: self.signs.clone(),
            seed: self.seed.unwrap_or(d.seed),
            out: self.out.clone(),
            tile_budget: d.tile_budget,
        }
    }
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let default_field = if matches!(cli.cmd, Cmd::VerifyAll { .. }) { FieldKind::Rational } else { FieldKind::Prime };
    let cfg = cli.global.config(default_field);
    match cli.cmd {
        Cmd::Tile { svg, highlight_lines } => {
            let target = match svg {
                None => SvgTarget::None,
                Some(None) => SvgTarget::Stdout,
                Some(Some(path)) => SvgTarget::File(path),
            };
            commands::tile(&cfg, &target, highlight_lines)
        }
        Cmd::Analyze => commands::analyze(&cfg),
        Cmd::Census => commands::census(&cfg),
        Cmd::Periodicity => commands::periodicity(&cfg),
        Cmd::VerifyAll { only, json } => {
            let only = only
                .iter()
                .map(|s| Criterion::parse(s).ok_or_else(|| CliError::Config(format!("unknown criterion `{s}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            commands::verify_all(&cfg, &only, json)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.global.out.clone();
    match run(cli) {
        Ok(o) => {
            let written = match &out {
                Some(path) => std::fs::write(path, format!("{}\n", o.text)).map_err(CliError::from),
                None => {
                    println!("{}", o.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("rauzy: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
            if o.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("rauzy: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
