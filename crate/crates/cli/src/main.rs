//! `qstab`: build, search, decode and simulate qudit stabilizer codes.
//!
//! Exit codes: 0 success, 1 usage or input errors, 2 mathematical
//! precondition failures, 3 resource bounds.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qstab::decoders::{DecoderKind, QuantumDecoder};
use qstab::format::CodeSpecFile;
use qstab::sim::{run_exhaustive, run_trials, transcript, ChannelSpec};
use qstab::stabilizer::{search_codes, BuildOptions, SearchOptions, StabilizerCode};
use qstab::symplectic::SymplecticVector;
use qstab::{Error, Execution};

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "qstab", version, about = "Qudit stabilizer codes from classical codes over GF(p^2m)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code from a spec file and report [[n,k,d]].
    Build {
        #[arg(long)]
        spec: PathBuf,
        /// Write the spec with its derived record to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Run the error-correction cycle on sampled or enumerated errors.
    Simulate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of affected qudits per trial.
        #[arg(long, default_value_t = 1, conflicts_with = "rate")]
        weight: usize,
        /// Affect each qudit independently with this probability instead.
        #[arg(long)]
        rate: Option<f64>,
        /// Decode every error of exactly this weight instead of sampling.
        #[arg(long, conflicts_with_all = ["rate", "trials"])]
        exhaustive_weight: Option<usize>,
        #[arg(long, value_enum, default_value_t = Decoder::Table)]
        decoder: Decoder,
        #[command(flatten)]
        limits: Limits,
    },
    /// Decode one error given as `a|b` digit strings and print the transcript.
    Decode {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        error: String,
        #[arg(long, value_enum, default_value_t = Decoder::Table)]
        decoder: Decoder,
        #[command(flatten)]
        limits: Limits,
    },
    /// Search for [[n,k,d]]_{p^m} codes and emit a spec for the best one.
    Search {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Number of candidate classical codes to examine.
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write the best code's spec here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Args, Clone, Copy)]
struct Limits {
    /// Cap on codewords or table entries any enumeration may visit.
    #[arg(long, default_value_t = 1 << 24)]
    max_enum: u64,
    /// Run library enumerations on one thread.
    #[arg(long)]
    sequential: bool,
}

impl Limits {
    fn build_options(self) -> BuildOptions {
        BuildOptions {
            enum_bound: self.max_enum as u128,
            exec: if self.sequential { Execution::Sequential } else { Execution::Parallel },
            ..BuildOptions::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Decoder {
    Table,
    Bm,
}

impl From<Decoder> for DecoderKind {
    fn from(d: Decoder) -> Self {
        match d {
            Decoder::Table => DecoderKind::Table,
            Decoder::Bm => DecoderKind::Bm,
        }
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read_spec(path: &PathBuf) -> Result<CodeSpecFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    CodeSpecFile::parse(&text).map_err(|e| match e {
        Error::Parse { line, column, message } => {
            Failure::Usage(format!("{}:{line}:{column}: {message}", path.display()))
        }
        other => Failure::Lib(other),
    })
}

fn write_out(path: &PathBuf, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn describe(code: &StabilizerCode) -> String {
    let mut out = format!("{}\n", code.parameters());
    out.push_str(&format!("generators: {}\n", code.generators().len()));
    if let Some(origin) = code.origin() {
        out.push_str(&format!(
            "classical code: [{},{}] over GF({}), check code [{},{}]\n",
            origin.code.len(),
            origin.code.dim(),
            origin.field().order(),
            origin.code.len(),
            origin.code.len() - origin.code.dim()
        ));
        if let Some(pf) = &origin.punctured_from {
            out.push_str(&format!("check code punctured at coordinate {}\n", pf.position + 1));
        }
    }
    out
}

fn build(spec: &PathBuf, out: Option<&PathBuf>, limits: Limits) -> Result<(), Failure> {
    let file = read_spec(spec)?;
    let options = limits.build_options();
    let code = file.build(&options)?;
    print!("{}", describe(&code));
    if code.origin().is_some() && code.distance().is_exact() {
        match code.symplectic_distance(options.enum_bound, options.exec) {
            Ok(d) if d == code.distance().value() => println!("symplectic-side distance: {d} (agrees)"),
            Ok(d) => {
                return Err(Failure::Lib(Error::InvalidArgument(format!(
                    "symplectic-side distance {d} disagrees with the classical side {}",
                    code.distance().value()
                ))))
            }
            Err(Error::EnumerationBound { .. }) => println!("symplectic-side distance: skipped (enumeration bound)"),
            Err(e) => return Err(e.into()),
        }
    }
    if let Some(path) = out {
        write_out(path, &CodeSpecFile::from_code(&code).to_toml())?;
        println!("record written to {}", path.display());
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    spec: &PathBuf,
    trials: u64,
    seed: u64,
    weight: usize,
    rate: Option<f64>,
    exhaustive: Option<usize>,
    decoder: Decoder,
    limits: Limits,
) -> Result<(), Failure> {
    let options = limits.build_options();
    let code = read_spec(spec)?.build(&options)?;
    let decoder = QuantumDecoder::new(&code, decoder.into(), options.enum_bound)?;
    let report = match exhaustive {
        Some(t) => run_exhaustive(&decoder, t, options.exec, options.enum_bound)?,
        None => {
            let channel = match rate {
                Some(r) => ChannelSpec::iid(r, seed),
                None => ChannelSpec::fixed_weight(weight, seed),
            };
            run_trials(&decoder, &channel, trials, options.exec)?
        }
    };
    print!("{report}");
    eprintln!("elapsed: {:.3?}", report.elapsed);
    Ok(())
}

fn decode(spec: &PathBuf, error: &str, decoder: Decoder, limits: Limits) -> Result<(), Failure> {
    let options = limits.build_options();
    let code = read_spec(spec)?.build(&options)?;
    let e = SymplecticVector::parse(error, code.p(), code.m(), code.n()).map_err(|e| Failure::Usage(e.to_string()))?;
    let decoder = QuantumDecoder::new(&code, decoder.into(), options.enum_bound)?;
    print!("{}", transcript(&decoder, &e)?);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn search(p: u32, m: u32, n: usize, k: usize, budget: usize, seed: u64, out: Option<&PathBuf>, limits: Limits) -> Result<(), Failure> {
    let options = SearchOptions { budget, seed, build: limits.build_options() };
    let found = search_codes(p, m, n, k, &options)?;
    println!("seed: {seed}");
    println!("{:>4}  {:<40}  {:>5}", "rank", "parameters", "gens");
    for (i, code) in found.iter().enumerate() {
        println!("{:>4}  {:<40}  {:>5}", i + 1, code.parameters(), code.generators().len());
    }
    println!("found: {}", found.len());
    if let Some(best) = found.first() {
        let text = CodeSpecFile::from_code(best).to_toml();
        match out {
            Some(path) => {
                write_out(path, &text)?;
                println!("best spec written to {}", path.display());
            }
            None => print!("\n{text}"),
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Build { spec, out, limits } => build(spec, out.as_ref(), *limits),
        Command::Simulate { spec, trials, seed, weight, rate, exhaustive_weight, decoder, limits } => {
            simulate(spec, *trials, *seed, *weight, *rate, *exhaustive_weight, *decoder, *limits)
        }
        Command::Decode { spec, error, decoder, limits } => decode(spec, error, *decoder, *limits),
        Command::Search { p, m, n, k, budget, seed, out, limits } => {
            search(*p, *m, *n, *k, *budget, *seed, out.as_ref(), *limits)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
