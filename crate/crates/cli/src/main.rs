use std::path::PathBuf;
use std::process::ExitCode;

use betaforms::numerics::beta_value;
use betaforms::numtheory::carry_min_table;
use betaforms::{Error, Family, Mode, Profile};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

mod profile_file;
mod report;

use profile_file::{ProfileFile, PRESETS};
use report::{Ball, RunReport};

const LARGE_N: u64 = 6;

#[derive(Parser)]
#[command(name = "betaforms", version)]
#[command(about = "Exact rational linear forms in even Dirichlet beta values")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Preset name (section2-s17, theorem1) or a TOML profile path
    #[arg(long)]
    profile: String,

    /// Override the profile's n (repeatable)
    #[arg(long = "n")]
    n: Vec<u64>,

    /// Working precision in bits
    #[arg(long)]
    precision: Option<u32>,

    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a profile against the parameter conditions
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Build, decompose and certify every instance of a profile
    Run {
        #[command(flatten)]
        common: Common,

        /// Seed for the Monte Carlo cross-check
        #[arg(long)]
        seed: Option<u64>,

        /// Monte Carlo sample count (0 disables it)
        #[arg(long)]
        mc_samples: Option<u64>,

        /// Permit general-family runs with n >= 6
        #[arg(long)]
        allow_large: bool,
    },
    /// Exponent ledger and the certified cube maximum
    Asymptotics {
        #[command(flatten)]
        common: Common,
    },
    /// The piecewise table of the carry minimum and the Φ exponent
    PhiTable {
        #[command(flatten)]
        common: Common,
    },
    /// Dirichlet beta values β(i) as balls
    Beta {
        /// Indices i >= 1
        #[arg(required = true)]
        indices: Vec<u32>,

        #[arg(long, default_value_t = 128)]
        precision: u32,

        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidProfile(_) | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            other => Failure::Verification(other.to_string()),
        }
    }
}

#[derive(Serialize)]
struct ValidateReport<'a> {
    valid: bool,
    profiles: Vec<String>,
    errors: &'a [String],
}

fn emit<T: Serialize>(value: &T, out: Option<&PathBuf>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(common: &Common) -> Result<ProfileFile, Failure> {
    let mut file = profile_file::load(&common.profile).map_err(|e| Failure::Usage(e.to_string()))?;
    if !common.n.is_empty() {
        file.n = profile_file::NSpec::List(common.n.clone());
    }
    if let Some(p) = common.precision {
        file.precision = p;
    }
    Ok(file)
}

fn profiles(file: &ProfileFile) -> Result<Vec<Profile>, Failure> {
    file.profiles().map_err(|errs| Failure::Usage(errs.join("; ")))
}

fn validate(common: &Common) -> Result<bool, Failure> {
    let file = load(common)?;
    let (valid, labels, errors) = match file.profiles() {
        Ok(ps) => (true, ps.iter().map(Profile::label).collect(), vec![]),
        Err(errs) => (false, vec![], errs),
    };
    emit(&ValidateReport { valid, profiles: labels, errors: &errors }, common.out.as_ref())?;
    if valid {
        Ok(true)
    } else {
        Err(Failure::Usage(format!("{} violated condition(s)", errors.len())))
    }
}

fn run(common: &Common, seed: Option<u64>, mc_samples: Option<u64>, allow_large: bool) -> Result<bool, Failure> {
    let mut file = load(common)?;
    if let Some(s) = seed {
        file.checks.seed = s;
    }
    if let Some(m) = mc_samples {
        file.checks.mc_samples = m;
    }
    let ps = profiles(&file)?;
    if !allow_large && ps.iter().any(|p| p.family() == Family::General && p.n() >= LARGE_N) {
        return Err(Failure::Usage(format!(
            "general-family runs with n >= {LARGE_N} grow quickly in time and memory (n = 16 takes about 20 s on one core); pass --allow-large"
        )));
    }
    let precision = file.precision;
    let results = betaforms::exec::map_indexed(Mode::default(), ps.len(), |i| {
        report::run_instance(&ps[i], precision, &file.checks)
    });
    let mut instances = Vec::with_capacity(results.len());
    for r in results {
        instances.push(r?);
    }
    let asymptotics = if file.checks.asymptotics { Some(report::ledger(&ps[0], precision)?) } else { None };
    let passed = instances.iter().all(|i| i.passed) && asymptotics.as_ref().is_none_or(|l| l.passed);
    let report = RunReport { passed, family: file.family.clone(), precision, instances, asymptotics };
    emit(&report, common.out.as_ref())?;
    Ok(passed)
}

fn asymptotics(common: &Common) -> Result<bool, Failure> {
    let file = load(common)?;
    let ps = profiles(&file)?;
    let l = report::ledger(&ps[0], file.precision)?;
    emit(&l, common.out.as_ref())?;
    Ok(l.passed)
}

fn phi_table(common: &Common) -> Result<bool, Failure> {
    let file = load(common)?;
    let ps = profiles(&file)?;
    let table = carry_min_table(&ps[0].carry_spec())?;
    let with_phi = !common.n.is_empty();
    let t = report::phi_table(&ps[0], &table, file.precision, with_phi)?;
    emit(&t, common.out.as_ref())?;
    Ok(true)
}

#[derive(Serialize)]
struct BetaEntry {
    i: u32,
    value: Ball,
}

fn beta(indices: &[u32], precision: u32, out: Option<&PathBuf>) -> Result<bool, Failure> {
    let mut entries = Vec::new();
    for &i in indices {
        entries.push(BetaEntry { i, value: Ball::from(&beta_value(i, precision)?) });
    }
    emit(&entries, out)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match &cli.command {
        Command::Validate { common } => validate(common),
        Command::Run { common, seed, mc_samples, allow_large } => run(common, *seed, *mc_samples, *allow_large),
        Command::Asymptotics { common } => asymptotics(common),
        Command::PhiTable { common } => phi_table(common),
        Command::Beta { indices, precision, out } => beta(indices, *precision, out.as_ref()),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed; see the report");
            ExitCode::from(1)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            if m.starts_with("cannot read") {
                eprintln!("presets: {}", PRESETS.join(", "));
            }
            ExitCode::from(2)
        }
    }
}
