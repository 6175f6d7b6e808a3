use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use chevtori::data::Dataset;
use chevtori::rootsys::CartanType;
use chevtori::tits::Isogeny;
use chevtori::verify::common::{parse_qs, Options};
use chevtori::verify::selftest::OracleSamples;
use chevtori::verify::{complements, lifts, mutate, nonsplit, prose, selftest, timed, tori, Report};

#[derive(Parser)]
#[command(name = "chevtori", about = "Lifts, complements and torus normalizers in E6, E7, E8")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory holding e6.toml, e7.toml, e8.toml and table9.toml
    /// (the embedded copy is used otherwise).
    #[arg(long, global = true)]
    data: Option<PathBuf>,
    /// Only check this table row.
    #[arg(long, global = true)]
    row: Option<usize>,
    /// Print the report as JSON instead of a summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Engine checks: root data, calibration, braid relations, oracle, identities.
    Selftest {
        #[arg(long, default_value_t = 10_000)]
        words: usize,
        #[arg(long, default_value_t = 200)]
        words_e8: usize,
    },
    /// Stored lifts: order and image in W.
    Lifts {
        #[arg(long = "type")]
        kind: CartanType,
        #[arg(long, default_value = "sc")]
        isogeny: Isogeny,
    },
    /// Insolubility certificates for the non-split tori.
    Nonsplit {
        #[arg(long = "type")]
        kind: CartanType,
    },
    /// Complement generators and relations for the split tori.
    Complements {
        #[arg(long = "type")]
        kind: CartanType,
    },
    /// Complements over extension fields, instantiated at sample q.
    Prose {
        #[arg(long = "type", default_value = "E7")]
        kind: CartanType,
        #[arg(long, default_value = "5,7")]
        q: String,
    },
    /// Torus orders, characteristic polynomials and centralizers.
    Tori {
        #[arg(long = "type")]
        kind: CartanType,
        #[arg(long, default_value = "3,5,7,9,11,13")]
        q: String,
    },
    /// Every command over every type.
    Report {
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Re-verify the certificates in a JSON report written by `--json` or `report --format json`.
    Recheck { file: PathBuf },
    /// Corrupt stored rows at random and confirm each corruption is caught.
    Mutate {
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

fn run(cli: &Cli, data: &Dataset) -> Result<Report> {
    let opts = Options {
        seed: cli.seed,
        only: cli.row,
    };
    let qs = |s: &str| parse_qs(s).map_err(anyhow::Error::msg);
    Ok(match &cli.cmd {
        Cmd::Selftest { words, words_e8 } => timed(|| {
            selftest::selftest(
                data,
                &opts,
                OracleSamples {
                    e6: *words,
                    e7: *words,
                    e8: *words_e8,
                },
            )
        }),
        Cmd::Lifts { kind, isogeny } => timed(|| lifts::lifts(data, *kind, *isogeny, &opts)),
        Cmd::Nonsplit { kind } => timed(|| nonsplit::nonsplit(data, *kind, &opts)),
        Cmd::Complements { kind } => timed(|| complements::complements(data, *kind, &opts)),
        Cmd::Prose { kind, q } => {
            if *kind != CartanType::E7 {
                bail!("extension-field complements are tabulated for E7 only");
            }
            let qs = qs(q)?;
            timed(|| prose::prose(data, &qs, &opts))
        }
        Cmd::Tori { kind, q } => {
            let qs = qs(q)?;
            timed(|| tori::tori(data, *kind, &qs, &opts))
        }
        Cmd::Report { .. } => timed(|| full_report(data, &opts)),
        Cmd::Recheck { file } => {
            let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let saved: Report = serde_json::from_str(&text).context("parsing report")?;
            timed(|| nonsplit::recheck(&saved))
        }
        Cmd::Mutate { count } => timed(|| mutate::mutations(data, *count, cli.seed)),
    })
}

fn full_report(data: &Dataset, opts: &Options) -> Report {
    let mut r = Report::new("report", opts.seed);
    let sub = [
        selftest::selftest(data, opts, OracleSamples::default()),
        lifts::lifts(data, CartanType::E7, Isogeny::Sc, opts),
        lifts::lifts(data, CartanType::E7, Isogeny::Ad, opts),
        lifts::lifts(data, CartanType::E8, Isogeny::Ad, opts),
        nonsplit::nonsplit(data, CartanType::E7, opts),
        nonsplit::nonsplit(data, CartanType::E8, opts),
        complements::complements(data, CartanType::E7, opts),
        complements::complements(data, CartanType::E8, opts),
        prose::prose(data, &[5, 7], opts),
        tori::tori(data, CartanType::E6, &tori::DEFAULT_QS, opts),
        tori::tori(data, CartanType::E7, &tori::DEFAULT_QS, opts),
        tori::tori(data, CartanType::E8, &tori::DEFAULT_QS, opts),
    ];
    for s in sub {
        r.extend(s);
    }
    r
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let data = match &cli.data {
        Some(dir) => match Dataset::from_dir(dir) {
            Ok(d) => d,
            Err(e) => {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
        },
        None => Dataset::embedded(),
    };
    let report = match run(&cli, &data) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let json = cli.json || matches!(cli.cmd, Cmd::Report { format: Format::Json });
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else if matches!(cli.cmd, Cmd::Report { .. }) {
        print!("{}", report.to_markdown());
    } else {
        for c in &report.checks {
            println!("{:7} {}  {}", c.status.label(), c.id, c.detail);
        }
        println!("{}", report.summary());
    }
    if report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
