use std::io::{self, Read};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use monores::conjecture::{conjecture_fuzz, Conjecture, FuzzReport};
use monores::engine::{betti_capped, characteristic_check_capped, verify};
use monores::parse::parse_ideal_auto;
use monores::random::{random_ideal, Constraint, RandomParams};
use monores::taylor::DEFAULT_MAX_GENS;
use monores::{FieldSpec, Method, MonomialIdeal};

mod render;

/// Exact multigraded Betti numbers of monomial ideals.
#[derive(Parser, Debug)]
#[command(name = "monores", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Algorithm for Betti numbers.
    #[arg(long, global = true, default_value = "decompose")]
    method: Method,

    /// Coefficient field: `Q` or `Fp:<prime>`.
    #[arg(long, global = true, default_value = "Q")]
    field: FieldSpec,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Base seed for random ideals.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Generator cap for Taylor complexes; for random ideals, the upper
    /// bound on the number of generators (default 6).
    #[arg(long, global = true)]
    max_gens: Option<usize>,

    /// Number of random ideals.
    #[arg(long, global = true, default_value_t = 100)]
    count: usize,

    /// Number of variables of random ideals.
    #[arg(long, global = true, default_value_t = 4)]
    vars: usize,

    /// Largest exponent of random ideals.
    #[arg(long, global = true, default_value_t = 4)]
    max_exp: u32,

    #[arg(long, global = true, conflicts_with_all = ["almost_generic", "semidominant"])]
    artinian: bool,

    #[arg(long, global = true, conflicts_with = "semidominant")]
    almost_generic: bool,

    /// Exactly `p` nondominant generators.
    #[arg(long, global = true, value_name = "p")]
    semidominant: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dominant and nondominant generators, and structural properties.
    Classify { input: String },
    /// The multigraded Betti table.
    Betti { input: String },
    /// Characteristic Betti numbers, also in minimal homological degrees.
    Characteristic { input: String },
    /// The first decomposition, or with `--tree` the recursive one.
    Decompose {
        input: String,
        #[arg(long)]
        tree: bool,
    },
    /// Projective dimension.
    Pd { input: String },
    /// Faces of the Scarf complex.
    Scarf { input: String },
    /// Compares all three methods on one ideal, or on `--count` random ideals.
    Verify { input: Option<String> },
    /// Prints random ideals.
    Random,
    /// Searches random ideals for a counterexample to one conjecture.
    Fuzz {
        #[arg(long, default_value = "C1")]
        conjecture: Conjecture,
    },
    /// Runs the search for all three conjectures.
    Conjectures,
}

/// Failures carrying their exit status.
#[derive(Debug)]
enum Failure {
    Usage(anyhow::Error),
    Resource(anyhow::Error),
}

impl From<monores::Error> for Failure {
    fn from(e: monores::Error) -> Self {
        match e {
            monores::Error::Resource(_) | monores::Error::Overflow => Failure::Resource(e.into()),
            _ => Failure::Usage(e.into()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

impl Opts {
    fn cap(&self) -> usize {
        self.max_gens.unwrap_or(DEFAULT_MAX_GENS)
    }

    fn constraint(&self) -> Constraint {
        if self.artinian {
            Constraint::Artinian
        } else if self.almost_generic {
            Constraint::AlmostGeneric
        } else if let Some(p) = self.semidominant {
            Constraint::Semidominant(p)
        } else {
            Constraint::None
        }
    }

    fn random_params(&self) -> RandomParams {
        RandomParams::new(self.vars, self.max_gens.unwrap_or(6), self.max_exp).with(self.constraint())
    }

    fn require_format(&self, allowed: &[Format]) -> Result<(), Failure> {
        if allowed.contains(&self.format) {
            Ok(())
        } else {
            let name = self.format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
            Err(Failure::Usage(anyhow!("--format {name} is not available for this command")))
        }
    }
}

fn read_input(input: &str) -> Result<MonomialIdeal, Failure> {
    let text = if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input").map_err(Failure::Usage)?;
        s
    } else if Path::new(input).is_file() {
        std::fs::read_to_string(input)
            .with_context(|| format!("reading {input}"))
            .map_err(Failure::Usage)?
    } else {
        input.to_string()
    };
    let parsed = parse_ideal_auto(&text)?;
    if !parsed.was_minimal() {
        eprintln!(
            "warning: {} input generators reduce to {} minimal generators",
            parsed.input_count,
            parsed.ideal.len()
        );
    }
    Ok(parsed.ideal)
}

fn text_or_json(opts: &Opts, text: String, json: serde_json::Value) -> Result<String, Failure> {
    opts.require_format(&[Format::Text, Format::Json])?;
    Ok(match opts.format {
        Format::Json => format!("{json}\n"),
        _ => text,
    })
}

fn run(command: &Command, opts: &Opts) -> Outcome {
    let out = match command {
        Command::Classify { input } => {
            let ideal = read_input(input)?;
            let (text, json) = render::classify(&ideal)?;
            text_or_json(opts, text, json)?
        }
        Command::Betti { input } => {
            let ideal = read_input(input)?;
            let table = betti_capped(&ideal, opts.method, opts.field, opts.cap())?;
            text_or_json(opts, table.to_text(ideal.vars()), table.to_json_value())?
        }
        Command::Characteristic { input } => {
            let ideal = read_input(input)?;
            let table = betti_capped(&ideal, opts.method, opts.field, opts.cap())?;
            let report = characteristic_check_capped(&ideal, &table, opts.cap())?;
            text_or_json(opts, render::characteristic(&ideal, &report), report.to_json())?
        }
        Command::Decompose { input, tree } => {
            let ideal = read_input(input)?;
            if *tree {
                let t = monores::decompose::second_decomposition(&ideal)?;
                match opts.format {
                    Format::Text => t.to_text(),
                    Format::Json => format!("{}\n", t.to_json()),
                    Format::Dot => t.to_dot(),
                }
            } else {
                let terms = monores::decompose::first_decomposition(&ideal)?;
                let (text, json) = render::terms(&ideal, &terms);
                text_or_json(opts, text, json)?
            }
        }
        Command::Pd { input } => {
            let ideal = read_input(input)?;
            let pd = betti_capped(&ideal, opts.method, opts.field, opts.cap())?.pd();
            text_or_json(opts, format!("{pd}\n"), serde_json::json!({ "pd": pd }))?
        }
        Command::Scarf { input } => {
            let ideal = read_input(input)?;
            let faces = monores::taylor::build_scarf(&ideal, opts.cap())?;
            let (text, json) = render::scarf(&ideal, &faces);
            text_or_json(opts, text, json)?
        }
        Command::Verify { input: Some(input) } => {
            let ideal = read_input(input)?;
            let v = verify(&ideal, opts.field, opts.cap())?;
            let (text, json) = render::verification(&ideal, &v);
            return Ok((text_or_json(opts, text, json)?, v.agree));
        }
        Command::Verify { input: None } => {
            let params = opts.random_params();
            let mut mismatches = Vec::new();
            for i in 0..opts.count as u64 {
                let seed = opts.seed.wrapping_add(i);
                let ideal = random_ideal(&params, seed)?;
                if !verify(&ideal, opts.field, opts.cap())?.agree {
                    mismatches.push((seed, ideal));
                }
            }
            let (text, json) = render::random_verification(opts.count, &mismatches);
            return Ok((text_or_json(opts, text, json)?, mismatches.is_empty()));
        }
        Command::Random => {
            let params = opts.random_params();
            let mut ideals = Vec::new();
            for i in 0..opts.count as u64 {
                let seed = opts.seed.wrapping_add(i);
                ideals.push((seed, random_ideal(&params, seed)?));
            }
            let (text, json) = render::random(&ideals);
            text_or_json(opts, text, json)?
        }
        Command::Fuzz { conjecture } => return fuzz(opts, &[*conjecture]),
        Command::Conjectures => return fuzz(opts, &Conjecture::ALL),
    };
    Ok((out, true))
}

/// Exits with status 1 if the default method and the oracle disagreed anywhere.
fn fuzz(opts: &Opts, which: &[Conjecture]) -> Outcome {
    let params = RandomParams::new(opts.vars, opts.max_gens.unwrap_or(6), opts.max_exp);
    let mut reports: Vec<FuzzReport> = Vec::new();
    for &c in which {
        let r = conjecture_fuzz(c, &params, opts.seed, opts.count, opts.field)?;
        for (seed, ideal) in &r.non_subcomplex {
            eprintln!("note: {c} seed {seed}: cancellation survivors of ({}) do not form a subcomplex", ideal.display());
        }
        if !r.skipped.is_empty() {
            eprintln!("note: {c}: {} seeds skipped, no ideal met the hypothesis", r.skipped.len());
        }
        for seed in &r.mismatches {
            eprintln!("warning: {c} seed {seed}: decomposition and oracle disagree");
        }
        reports.push(r);
    }
    let text: String = reports.iter().map(render::fuzz_report).collect();
    let json = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        serde_json::Value::Array(reports.iter().map(FuzzReport::to_json).collect())
    };
    let agree = reports.iter().all(|r| r.mismatches.is_empty());
    Ok((text_or_json(opts, text, json)?, agree))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command, &cli.opts) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
