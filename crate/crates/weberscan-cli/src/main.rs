use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use weberscan::algebra::arith::euler_phi;
use weberscan::genus::{chevalley_order, MatrixMode};
use weberscan::golden::selftest;
use weberscan::record::{write_jsonl, CsvSink, OutputRecord};
use weberscan::scan::{
    genus_record, regulator_record, run_job, split_record, torsion_record, JobKind, Layers, ScanJob,
};
use weberscan::stickelberger::{MeasureMethod, PBound, SplitFilter};
use weberscan::{Error, Exec, LayerSpec};

const EXIT_EMPTY: u8 = 3;
const EXIT_MATH: u8 = 4;

#[derive(Parser)]
#[command(name = "weberscan", version, about = "p-torsion and genus scans for the layers Q(N) of the cyclotomic Z-hat extension")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Direct,
    Harmonic,
}

impl From<Method> for MeasureMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Auto => MeasureMethod::Auto,
            Method::Direct => MeasureMethod::Direct,
            Method::Harmonic => MeasureMethod::Harmonic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Torsion,
    Weber,
    Genus,
    Regulator,
}

impl From<Kind> for JobKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Torsion => JobKind::Torsion,
            Kind::Weber => JobKind::Weber,
            Kind::Genus => JobKind::Genus,
            Kind::Regulator => JobKind::Regulator,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Filter {
    All,
    #[value(name = "split-muN", alias = "split-mun")]
    SplitMuN,
    #[value(name = "split-K", alias = "split-k")]
    SplitK,
}

impl From<Filter> for SplitFilter {
    fn from(f: Filter) -> Self {
        match f {
            Filter::All => SplitFilter::All,
            Filter::SplitMuN => SplitFilter::SplitMuN,
            Filter::SplitK => SplitFilter::SplitK,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Circulant,
    Full,
}

impl From<Mode> for MatrixMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Circulant => MatrixMode::Circulant,
            Mode::Full => MatrixMode::Full,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Factors of Phi_N mod p dividing the twisted measure of Q(N)
    Annihilate {
        #[arg(long = "N", alias = "n")]
        n: u64,
        #[arg(long)]
        p: u64,
        /// smallest multiplier tried
        #[arg(long)]
        c: Option<u64>,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        #[arg(long, env = "WEBERSCAN_JOBS", default_value_t = 1)]
        jobs: usize,
    },
    /// Batch run over a range of N
    Scan {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 2)]
        nmin: u64,
        #[arg(long, default_value_t = 2)]
        nmax: u64,
        /// explicit pairs "N:p,N:p,..." instead of a range
        #[arg(long, value_delimiter = ',')]
        pairs: Vec<String>,
        #[arg(long, conflicts_with = "pbudget")]
        pmax: Option<u64>,
        /// p <= pbudget / N
        #[arg(long)]
        pbudget: Option<u64>,
        #[arg(long, default_value_t = 3)]
        pmin: u64,
        #[arg(long, value_enum, default_value = "all")]
        filter: Filter,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        #[arg(long, value_enum, default_value = "circulant")]
        mode: Mode,
        #[arg(long, env = "WEBERSCAN_JOBS", default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// resume from a damaged checkpoint, keeping its valid prefix
        #[arg(long)]
        force_resume: bool,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: Format,
        /// record elapsed milliseconds (makes output run-dependent)
        #[arg(long)]
        timing: bool,
    },
    /// Rank of the normic-symbol matrix for K = Q(l^n), p totally split
    Genus {
        #[arg(long = "N", alias = "n")]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "circulant")]
        mode: Mode,
        #[arg(long, env = "WEBERSCAN_JOBS", default_value_t = 1)]
        jobs: usize,
    },
    /// Decomposition of p in Q(N)
    Split {
        #[arg(long = "N", alias = "n")]
        n: u64,
        #[arg(long)]
        p: u64,
    },
    /// F_p-rank of the unit logarithms (p-adic regulator test)
    Regrank {
        #[arg(long = "N", alias = "n")]
        n: u64,
        #[arg(long)]
        p: u64,
    },
    /// Chevalley's fixed-point formula
    Chevalley {
        #[arg(long)]
        h: u64,
        /// ramification indices, comma separated
        #[arg(long, value_delimiter = ',')]
        ram: Vec<u64>,
        #[arg(long)]
        deg: u64,
        #[arg(long)]
        index: num_bigint::BigUint,
    },
    /// Recompute the embedded reference results
    Selftest {
        /// include the slow cases
        #[arg(long)]
        long: bool,
        #[arg(long, env = "WEBERSCAN_JOBS", default_value_t = 1)]
        jobs: usize,
    },
}

fn emit(rec: &OutputRecord) -> io::Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{}", rec.to_json())
}

/// Print a single-pair result; math failures become an error record.
fn single(kind: &str, n: u64, p: u64, start: Instant, res: weberscan::Result<OutputRecord>) -> ExitCode {
    match res {
        Ok(mut rec) => {
            rec.ms = start.elapsed().as_millis() as u64;
            if emit(&rec).is_err() {
                return ExitCode::FAILURE;
            }
            if rec.factors.as_ref().is_some_and(|f| f.is_empty()) {
                ExitCode::from(EXIT_EMPTY)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => math_error(kind, n, p, &e),
    }
}

fn math_error(kind: &str, n: u64, p: u64, e: &Error) -> ExitCode {
    if let Error::Io(_) = e {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }
    let _ = emit(&OutputRecord::from_error(kind, n, p, e));
    eprintln!("error: {e}");
    ExitCode::from(EXIT_MATH)
}

fn parse_pairs(items: &[String]) -> Result<Vec<(u64, u64)>, String> {
    items
        .iter()
        .map(|s| {
            let (n, p) = s.split_once(':').ok_or_else(|| format!("pair {s:?} is not N:p"))?;
            Ok((n.trim().parse().map_err(|_| format!("bad N in {s:?}"))?, p.trim().parse().map_err(|_| format!("bad p in {s:?}"))?))
        })
        .collect()
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match cli.command {
        Command::Annihilate { n, p, c, method, jobs } => {
            if let Ok(layer) = LayerSpec::new(n) {
                let half = euler_phi(layer.conductor().f_n) / 2;
                eprintln!("estimate: {} inner iterations (direct route)", half as u128 * p as u128);
            }
            let exec = Exec::with_workers(jobs);
            single("torsion", n, p, start, torsion_record(n, p, c, method.into(), &exec))
        }
        Command::Genus { n, p, mode, jobs } => {
            if let Ok(layer) = LayerSpec::new(n) {
                if let Some(c) = weberscan::genus::genus_cost(&layer) {
                    eprintln!("estimate: {c} coefficient operations");
                }
            }
            let exec = Exec::with_workers(jobs);
            single("genus", n, p, start, genus_record(n, p, mode.into(), &exec))
        }
        Command::Split { n, p } => single("split", n, p, start, split_record(n, p)),
        Command::Regrank { n, p } => single("regulator", n, p, start, regulator_record(n, p)),
        Command::Chevalley { h, ram, deg, index } => match chevalley_order(h, &ram, deg, &index) {
            Ok(v) => {
                println!("{v}");
                ExitCode::SUCCESS
            }
            Err(e @ Error::InvalidInput(_)) => usage(&e.to_string()),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_MATH)
            }
        },
        Command::Selftest { long, jobs } => {
            let exec = Exec::with_workers(jobs);
            let checks = selftest(long, &exec);
            let failed = checks.iter().filter(|c| !c.pass).count();
            for c in &checks {
                println!("{} {}{}", if c.pass { "PASS" } else { "FAIL" }, c.name, if c.pass { String::new() } else { format!(": {}", c.detail) });
            }
            println!("{} checks, {} failed", checks.len(), failed);
            if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Command::Scan {
            kind,
            nmin,
            nmax,
            pairs,
            pmax,
            pbudget,
            pmin,
            filter,
            method,
            mode,
            jobs,
            checkpoint,
            force_resume,
            format,
            timing,
        } => {
            let layers = if pairs.is_empty() {
                Layers::Range { nmin, nmax }
            } else {
                match parse_pairs(&pairs) {
                    Ok(v) => Layers::Pairs(v),
                    Err(m) => return usage(&m),
                }
            };
            let bound = match (pmax, pbudget) {
                (Some(b), None) => PBound::Absolute(b),
                (None, Some(b)) => PBound::Budget(b),
                (None, None) if !pairs.is_empty() => PBound::Absolute(0),
                _ => return usage("one of --pmax or --pbudget is required"),
            };
            let mut job = ScanJob::new(kind.into(), layers, bound);
            job.pmin = pmin;
            job.filter = filter.into();
            job.method = method.into();
            job.mode = mode.into();
            job.workers = jobs;
            job.checkpoint = checkpoint;
            job.force_resume = force_resume;
            job.timing = timing;
            if let Err(e) = job.validate() {
                return usage(&e.to_string());
            }
            eprintln!("estimate: {} operations", job.estimate());
            let stdout = io::stdout();
            let result = match format {
                Format::Jsonl => {
                    let mut out = io::BufWriter::new(stdout.lock());
                    let r = run_job(&job, &mut |rec| write_jsonl(&mut out, rec));
                    r.and_then(|s| out.flush().map(|_| s).map_err(Error::from))
                }
                Format::Csv => match CsvSink::new(stdout.lock()) {
                    Ok(mut sink) => {
                        let r = run_job(&job, &mut |rec| sink.write(rec));
                        r.and_then(|s| sink.flush().map(|_| s))
                    }
                    Err(e) => Err(e),
                },
            };
            match result {
                Ok(s) => {
                    eprintln!(
                        "{} layers, {} pairs, {} records, {} errors, {} layers resumed",
                        s.layers, s.pairs, s.records, s.errors, s.resumed_layers
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    match e {
                        Error::CheckpointCorrupt { .. } => ExitCode::from(2),
                        _ => ExitCode::FAILURE,
                    }
                }
            }
        }
    }
}
