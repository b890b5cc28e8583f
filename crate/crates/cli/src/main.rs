use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use altvertex::constructions::dump_fixtures;
use altvertex::verify::{selftest, verify_range, write_bundle, Budgets, Config, ReportFormat};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Verifies vertices and sources of the natural simple modules of A_n and S_n in characteristic 2.
#[derive(Parser)]
#[command(name = "altvertex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    options: Options,
}

#[derive(Subcommand)]
enum Command {
    /// Runs the verification batteries for one degree or a range.
    Verify {
        #[arg(long, conflicts_with_all = ["from", "to"], required_unless_present_all = ["from", "to"])]
        n: Option<usize>,
        #[arg(long, requires = "to")]
        from: Option<usize>,
        #[arg(long, requires = "from")]
        to: Option<usize>,
    },
    /// Runs the oracle, identity and fixture self-tests.
    Selftest,
    /// Writes every construction for a degree in the text fixture formats.
    DumpFixtures {
        #[arg(long)]
        n: usize,
        /// Directory to write one file per fixture into; prints a bundle to stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Options {
    /// Degree k of the starting coefficient field GF(2^k).
    #[arg(long, global = true, default_value_t = 1)]
    field_degree: u8,
    /// Largest coset transversal any check may enumerate.
    #[arg(long, global = true)]
    budget_cosets: Option<u128>,
    /// Largest group any check may enumerate element by element.
    #[arg(long, global = true)]
    budget_elements: Option<u128>,
    #[arg(long, global = true, env = "ALTVERTEX_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    report: Format,
    /// Adds the S_n battery for even degrees that are not powers of 2.
    #[arg(long, global = true)]
    include_sn: bool,
    /// Zeroes timings so that reruns are byte-identical.
    #[arg(long, global = true)]
    normalize_timings: bool,
}

impl Options {
    fn config(&self) -> Config {
        let defaults = Budgets::default();
        Config {
            field_degree: self.field_degree,
            budgets: Budgets {
                cosets: self.budget_cosets.unwrap_or(defaults.cosets),
                elements: self.budget_elements.unwrap_or(defaults.elements),
                ..defaults
            },
            seed: self.seed,
            format: match self.report {
                Format::Json => ReportFormat::Json,
                Format::Text => ReportFormat::Text,
            },
            include_sn: self.include_sn,
            normalize_timings: self.normalize_timings,
            ..Config::default()
        }
    }
}

fn run(cli: Cli) -> altvertex::Result<u8> {
    let config = cli.options.config();
    config.validate()?;
    match cli.command {
        Command::Verify { n, from, to } => {
            let (a, b) = match n {
                Some(n) => (n, n),
                None => (from.unwrap_or_default(), to.unwrap_or_default()),
            };
            let report = verify_range(a, b, &config)?;
            match config.format {
                ReportFormat::Json => println!("{}", report.to_json()),
                ReportFormat::Text => print!("{}", report.to_text()),
            }
            Ok(report.exit_code() as u8)
        }
        Command::Selftest => {
            let report = selftest(&config);
            match config.format {
                ReportFormat::Json => println!("{}", report.to_json()),
                ReportFormat::Text => print!("{}", report.to_text()),
            }
            Ok(report.exit_code() as u8)
        }
        Command::DumpFixtures { n, out } => {
            let fixtures = dump_fixtures(n, config.field()?)?;
            match out {
                None => print!("{}", write_bundle(&fixtures)),
                Some(dir) => {
                    for fx in &fixtures {
                        let path = dir.join(&fx.name);
                        let io = |e: std::io::Error| altvertex::Error::Config(format!("{}: {e}", path.display()));
                        if let Some(parent) = path.parent() {
                            fs::create_dir_all(parent).map_err(io)?;
                        }
                        fs::write(&path, &fx.contents).map_err(io)?;
                    }
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
