//! Argument handling and the pipeline run.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::Parser as _;
use lgbwt::oracle::{oracle_variant, OracleLimits};
use lgbwt::{derive, render, variant_text, BuildOptions, BwtVariant, ComparisonStrategy, Error};
use thiserror::Error;

use crate::ingest::{ingest, InputFormat};
use crate::output::{write_bwt, OutputFormat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Strategy {
    Naive,
    LyndonArray,
    OrderedMarkers,
}

impl From<Strategy> for ComparisonStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::Naive => ComparisonStrategy::Naive,
            Strategy::LyndonArray => ComparisonStrategy::LyndonArray,
            Strategy::OrderedMarkers => ComparisonStrategy::OrderedMarkers,
        }
    }
}

fn parse_variant(s: &str) -> Result<BwtVariant, String> {
    s.parse()
}

/// Heavy/light threshold; `None` is `off`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Threshold(pub Option<usize>);

/// `off` or an integer above 1.
fn parse_threshold(s: &str) -> Result<Threshold, String> {
    if s == "off" {
        return Ok(Threshold(None));
    }
    let n: usize = s.parse().map_err(|_| format!("expected an integer or `off`, got `{s}`"))?;
    if n <= 1 {
        return Err(format!("threshold must exceed 1, got {n}"));
    }
    Ok(Threshold(Some(n)))
}

/// Run-length BWT variants through a Lyndon grammar.
#[derive(Debug, clap::Parser)]
#[command(name = "lgbwt", version)]
pub struct Args {
    /// Input file, `-` for standard input.
    pub input: PathBuf,
    /// bbwt, dollar-bwt, ebwt, dol-ebwt, mdol-bwt or conc-bwt.
    #[arg(long, value_parser = parse_variant, default_value = "bbwt")]
    pub variant: BwtVariant,
    #[arg(long, value_enum, default_value_t = Strategy::Naive)]
    pub strategy: Strategy,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,
    /// Heavy/light threshold, or `off`.
    #[arg(long, value_parser = parse_threshold, default_value = "31")]
    pub n_thres: Threshold,
    #[arg(long, value_enum, default_value_t = InputFormat::Raw)]
    pub input_format: InputFormat,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    pub output_format: OutputFormat,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Print `key value` statistics to standard error.
    #[arg(long)]
    pub stats: bool,
    /// Write statistics to this file instead.
    #[arg(long)]
    pub stats_file: Option<PathBuf>,
    /// Check the grammar expansion and, on small inputs, the brute-force result.
    #[arg(long)]
    pub verify: bool,
    /// Accept `#` and `$` bytes although separators render the same way.
    #[arg(long)]
    pub allow_sentinel_clash: bool,
    /// Longest grammar expansion `--verify` will materialize.
    #[arg(long, default_value_t = 1 << 26)]
    pub expansion_cap: u64,
}

#[derive(Debug, Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Mismatch(String),
    #[error("{0}")]
    Output(#[from] io::Error),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) => 2,
            AppError::Input(_) => 3,
            AppError::Mismatch(_) => 4,
            AppError::Output(_) => 1,
        }
    }
}

impl From<Error> for AppError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidThreshold(_) | Error::SingleTextRequired { .. } => AppError::Usage(e.to_string()),
            e => AppError::Input(e.to_string()),
        }
    }
}

fn read_input(path: &PathBuf) -> Result<Vec<u8>, AppError> {
    let mut buf = Vec::new();
    let res = if path.as_os_str() == "-" {
        io::stdin().lock().read_to_end(&mut buf)
    } else {
        File::open(path).and_then(|mut f| f.read_to_end(&mut buf))
    };
    res.map_err(|e| AppError::Input(format!("{}: {e}", path.display())))?;
    Ok(buf)
}

pub fn run(args: &Args) -> Result<(), AppError> {
    if args.input_format == InputFormat::Raw && !args.variant.is_single_text() {
        return Err(AppError::Usage(format!(
            "{} needs a collection; use --input-format fasta or lines",
            args.variant
        )));
    }
    let t0 = Instant::now();
    let data = read_input(&args.input)?;
    let coll = ingest(&data, args.input_format).map_err(|e| AppError::Input(e.to_string()))?;
    drop(data);
    let read = t0.elapsed();

    if args.variant.uses_sentinels()
        && !args.allow_sentinel_clash
        && coll.iter().any(|r| r.iter().any(|&b| b == b'#' || b == b'$'))
    {
        return Err(Error::SentinelClash.into());
    }

    let opts = BuildOptions {
        strategy: args.strategy.into(),
        n_thres: args.n_thres.0,
        threads: args.threads as usize,
        ..BuildOptions::default()
    };
    let d = derive(args.variant, &coll, &opts)?;

    let mut verify_time = Duration::ZERO;
    if args.verify {
        let t = Instant::now();
        let expected = variant_text(args.variant, &coll)?;
        let expanded = d.sorted.grammar.expand_roots(args.expansion_cap)?;
        if expanded != expected {
            return Err(AppError::Mismatch("grammar does not generate the input".into()));
        }
        match oracle_variant(args.variant, &coll, &OracleLimits::default()) {
            Ok(o) if o != d.bwt.to_vec() => {
                return Err(AppError::Mismatch("output differs from the brute-force transform".into()))
            }
            Ok(_) | Err(Error::TooLarge { .. }) => {}
            Err(e) => return Err(e.into()),
        }
        verify_time = t.elapsed();
    }

    let t = Instant::now();
    let rendered = render(args.variant, &d.bwt);
    match &args.output {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            write_bwt(&mut w, &rendered, args.output_format)?;
            w.flush()?;
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            write_bwt(&mut w, &rendered, args.output_format)?;
            w.flush()?;
        }
    }
    let write = t.elapsed();

    if args.stats || args.stats_file.is_some() {
        let secs = |d: Duration| format!("{:.6}", d.as_secs_f64());
        let lines = [
            ("variant", args.variant.to_string()),
            ("records", coll.len().to_string()),
            ("N", coll.total_len().to_string()),
            ("g", d.grammar_size().to_string()),
            ("r", d.bwt.num_runs().to_string()),
            ("time_read", secs(read)),
            ("time_build", secs(d.timings.build)),
            ("time_prune", secs(d.timings.prune)),
            ("time_sort", secs(d.timings.sort)),
            ("time_derive", secs(d.timings.derive)),
            ("time_verify", secs(verify_time)),
            ("time_write", secs(write)),
        ];
        let text: String = lines.iter().map(|(k, v)| format!("{k} {v}\n")).collect();
        match &args.stats_file {
            Some(p) => std::fs::write(p, text)?,
            None => io::stderr().write_all(text.as_bytes())?,
        }
    }
    Ok(())
}

pub fn main_with_args() -> i32 {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&args) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("lgbwt: {e}");
            e.exit_code()
        }
    }
}
