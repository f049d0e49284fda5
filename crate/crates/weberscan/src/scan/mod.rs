//! Batch drivers: a job names a kind of computation and a set of (N, p)
//! pairs; results stream out in (N, p) order whatever the worker count.
//! With a checkpoint file, every completed N is appended together with a
//! completion marker, and a rerun resumes after the last completed N.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::arith::euler_phi;
use crate::exec::Exec;
use crate::genus::{
    genus_matrix, regulator_rank, unit_system, weber_pipeline, MatrixMode, Verdict, WeberOptions,
    CAVEAT_CLASS_NUMBER, CAVEAT_UNIT_INDEX,
};
use crate::layers::{split_profile, LayerSpec, SplitProfile};
use crate::record::{factors_to_arrays, ComponentFactors, OutputRecord};
use crate::stickelberger::scan::{primes_up_to, torsion_pair};
use crate::stickelberger::{MeasureMethod, PBound, SplitFilter, MAX_P};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JobKind {
    Torsion,
    Weber,
    Genus,
    Regulator,
}

impl JobKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            JobKind::Torsion => "torsion",
            JobKind::Weber => "weber",
            JobKind::Genus => "genus",
            JobKind::Regulator => "regulator",
        }
    }
}

impl FromStr for JobKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "torsion" => Ok(JobKind::Torsion),
            "weber" => Ok(JobKind::Weber),
            "genus" => Ok(JobKind::Genus),
            "regulator" => Ok(JobKind::Regulator),
            _ => Err(Error::InvalidInput(format!("unknown job kind {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Layers {
    /// every N in `[nmin, nmax]`, primes from the bound
    Range { nmin: u64, nmax: u64 },
    /// the listed N, primes from the bound
    List(Vec<u64>),
    /// explicit pairs; bound and filter are ignored
    Pairs(Vec<(u64, u64)>),
}

#[derive(Clone, Debug)]
pub struct ScanJob {
    pub kind: JobKind,
    pub layers: Layers,
    pub bound: PBound,
    pub pmin: u64,
    pub filter: SplitFilter,
    pub method: MeasureMethod,
    pub mode: MatrixMode,
    pub genus_cost_limit: u128,
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    /// resume from a checkpoint even if it is damaged, keeping its valid prefix
    pub force_resume: bool,
    /// record wall-clock milliseconds; off keeps the output byte-stable
    pub timing: bool,
}

impl ScanJob {
    pub fn new(kind: JobKind, layers: Layers, bound: PBound) -> Self {
        ScanJob {
            kind,
            layers,
            bound,
            pmin: 3,
            filter: SplitFilter::All,
            method: MeasureMethod::Auto,
            mode: MatrixMode::Circulant,
            genus_cost_limit: WeberOptions::default().genus_cost_limit,
            workers: 1,
            checkpoint: None,
            force_resume: false,
            timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ns: Vec<u64> = match &self.layers {
            Layers::Range { nmin, nmax } => {
                if nmin > nmax {
                    return Err(Error::InvalidInput(format!("empty range [{nmin}, {nmax}]")));
                }
                vec![*nmin, *nmax]
            }
            Layers::List(v) => v.clone(),
            Layers::Pairs(v) => v.iter().map(|&(n, _)| n).collect(),
        };
        if ns.is_empty() {
            return Err(Error::InvalidInput("no layers given".into()));
        }
        if let Some(&n) = ns.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidInput(format!("N = {n} must be at least 2")));
        }
        let top = match &self.layers {
            Layers::Pairs(v) => v.iter().map(|&(_, p)| p).max().unwrap_or(0),
            _ => ns.iter().map(|&n| self.bound.for_n(n)).max().unwrap_or(0),
        };
        if top >= MAX_P {
            return Err(Error::Overflow(format!("prime bound {top} exceeds 2^31")));
        }
        Ok(())
    }

    /// Identity of the job for checkpoint matching; excludes worker count
    /// and output options.
    pub fn fingerprint(&self) -> String {
        format!(
            "{}|{:?}|{:?}|{}|{:?}|{:?}|{:?}|{}",
            self.kind.as_str(),
            self.layers,
            self.bound,
            self.pmin,
            self.filter,
            self.method,
            self.mode,
            self.genus_cost_limit
        )
    }

    /// Distinct N of the job, ascending, with their primes ascending.
    pub fn plan(&self) -> Vec<(u64, Vec<u64>)> {
        match &self.layers {
            Layers::Pairs(pairs) => {
                let mut v = pairs.clone();
                v.sort_unstable();
                v.dedup();
                let mut out: Vec<(u64, Vec<u64>)> = Vec::new();
                for (n, p) in v {
                    match out.last_mut() {
                        Some((m, ps)) if *m == n => ps.push(p),
                        _ => out.push((n, vec![p])),
                    }
                }
                out
            }
            Layers::Range { nmin, nmax } => (*nmin..=*nmax).map(|n| (n, self.primes_for(n))).collect(),
            Layers::List(ns) => {
                let mut ns = ns.clone();
                ns.sort_unstable();
                ns.dedup();
                ns.into_iter().map(|n| (n, self.primes_for(n))).collect()
            }
        }
    }

    fn primes_for(&self, n: u64) -> Vec<u64> {
        let Ok(layer) = LayerSpec::new(n) else { return Vec::new() };
        let filter = match self.kind {
            JobKind::Genus => SplitFilter::SplitK,
            _ => self.filter,
        };
        primes_up_to(self.bound.for_n(n))
            .into_iter()
            .filter(|&p| p >= self.pmin && n % p != 0 && filter.admits(&layer, p))
            .filter(|&p| !(self.kind == JobKind::Genus || self.kind == JobKind::Regulator) || p > 2)
            .collect()
    }

    /// Number of coefficient operations of the job (inner-loop steps of
    /// the direct route for torsion and weber jobs).
    pub fn estimate(&self) -> u128 {
        let mut total = 0u128;
        for (n, ps) in self.plan() {
            let Ok(layer) = LayerSpec::new(n) else { continue };
            match self.kind {
                JobKind::Torsion | JobKind::Weber => {
                    let half = euler_phi(layer.conductor().f_n) as u128 / 2;
                    total += ps.iter().map(|&p| half * p as u128).sum::<u128>();
                }
                JobKind::Genus | JobKind::Regulator => {
                    total += crate::genus::genus_cost(&layer).unwrap_or(0) * ps.len() as u128;
                }
            }
        }
        total
    }

    fn weber_options(&self) -> WeberOptions {
        WeberOptions { method: self.method, mode: self.mode, genus_cost_limit: self.genus_cost_limit, run_genus: true }
    }
}

fn profile_fields(rec: &mut OutputRecord, s: &SplitProfile) {
    rec.d_k = Some(s.d_k);
    rec.s_p = Some(s.s_p);
    rec.totally_split = Some(s.totally_split);
    rec.rho_n = Some(s.rho_n);
    rec.w_rank = Some(s.w_rank);
}

pub fn split_record(n: u64, p: u64) -> Result<OutputRecord> {
    let s = split_profile(&LayerSpec::new(n)?, p)?;
    let mut rec = OutputRecord::new("split", n, p);
    profile_fields(&mut rec, &s);
    Ok(rec)
}

pub fn torsion_record(n: u64, p: u64, c: Option<u64>, method: MeasureMethod, exec: &Exec) -> Result<OutputRecord> {
    let rep = torsion_pair(n, p, c, method, exec)?;
    let mut rec = OutputRecord::new("torsion", n, p);
    rec.c = rep.c;
    rec.factors = Some(factors_to_arrays(&rep.factors));
    if rep.degenerate {
        rec.caveats.push("measure vanishes mod Phi_N".into());
    }
    Ok(rec)
}

pub fn genus_record(n: u64, p: u64, mode: MatrixMode, exec: &Exec) -> Result<OutputRecord> {
    let layer = LayerSpec::new(n)?;
    let us = unit_system(&layer, p)?;
    let m = genus_matrix(&us, mode, exec)?;
    let mut rec = OutputRecord::new("genus", n, p);
    rec.rank = Some(m.rank as u64);
    rec.genus_exponent = Some(m.genus_exponent as u64);
    profile_fields(&mut rec, &split_profile(&layer, p)?);
    rec.value = Some(format!("uniformizer {}", m.row.a));
    rec.caveats = vec![CAVEAT_CLASS_NUMBER.into(), CAVEAT_UNIT_INDEX.into()];
    Ok(rec)
}

pub fn regulator_record(n: u64, p: u64) -> Result<OutputRecord> {
    let layer = LayerSpec::new(n)?;
    let rank = regulator_rank(&layer, p)?;
    let mut rec = OutputRecord::new("regulator", n, p);
    rec.rank = Some(rank as u64);
    rec.value = Some(if rank + 1 < n as usize { "R_K = 0 mod p" } else { "R_K invertible" }.into());
    rec.caveats = vec![CAVEAT_UNIT_INDEX.into()];
    Ok(rec)
}

pub fn weber_record(n: u64, p: u64, opts: &WeberOptions, exec: &Exec) -> Result<OutputRecord> {
    let rep = weber_pipeline(&LayerSpec::new(n)?, p, opts, exec)?;
    let mut rec = OutputRecord::new("weber", n, p);
    profile_fields(&mut rec, &rep.profile);
    rec.reduced_n = Some(rep.reduced_n);
    if let Some(top) = rep.components.iter().find(|c| c.divisor == n) {
        rec.c = top.report.c;
        rec.factors = Some(factors_to_arrays(&top.report.factors));
    }
    rec.components = Some(
        rep.detected()
            .map(|c| ComponentFactors { divisor: c.divisor, factors: factors_to_arrays(&c.report.factors) })
            .collect(),
    );
    if let Some(best) = rep.genus.iter().filter(|g| g.genus_exponent.is_some()).max_by_key(|g| g.genus_exponent) {
        rec.rank = best.rank.map(|r| r as u64);
        rec.genus_exponent = best.genus_exponent.map(|e| e as u64);
    }
    let notes: Vec<String> =
        rep.genus.iter().filter_map(|g| g.note.as_ref().map(|s| format!("layer {}: {s}", g.layer))).collect();
    if !notes.is_empty() {
        rec.value = Some(notes.join("; "));
    }
    rec.verdict = Some(rep.verdict.as_str().into());
    rec.caveats = rep.caveats;
    Ok(rec)
}

/// The record for one pair, or `None` when the pair is not reported
/// (an empty annihilator in a torsion job, a trivial T_K in a weber range).
fn compute(job: &ScanJob, n: u64, p: u64) -> Option<OutputRecord> {
    let seq = Exec::sequential();
    let start = Instant::now();
    let kind = job.kind.as_str();
    let res = match job.kind {
        JobKind::Torsion => torsion_record(n, p, None, job.method, &seq),
        JobKind::Weber => weber_record(n, p, &job.weber_options(), &seq),
        JobKind::Genus => genus_record(n, p, job.mode, &seq),
        JobKind::Regulator => regulator_record(n, p),
    };
    let mut rec = match res {
        Ok(r) => r,
        Err(e) => OutputRecord::from_error(kind, n, p, &e),
    };
    let explicit = matches!(job.layers, Layers::Pairs(_));
    if !rec.is_error() && !explicit {
        let skip = match job.kind {
            JobKind::Torsion => rec.factors.as_ref().is_some_and(|f| f.is_empty()),
            JobKind::Weber => rec.verdict.as_deref() == Some(Verdict::TTrivial.as_str()),
            _ => false,
        };
        if skip {
            return None;
        }
    }
    rec.ms = if job.timing { start.elapsed().as_millis() as u64 } else { 0 };
    Some(rec)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JobSummary {
    pub layers: usize,
    pub pairs: usize,
    pub records: usize,
    pub errors: usize,
    /// layers taken from the checkpoint instead of being recomputed
    pub resumed_layers: usize,
}

const HEADER_KIND: &str = "job";
const DONE_KIND: &str = "done";

struct Checkpoint {
    file: File,
}

impl Checkpoint {
    fn append(&mut self, recs: &[OutputRecord], n: u64) -> Result<()> {
        let mut buf = String::new();
        for r in recs {
            buf.push_str(&r.to_json());
            buf.push('\n');
        }
        buf.push_str(&OutputRecord::new(DONE_KIND, n, 0).to_json());
        buf.push('\n');
        self.file.write_all(buf.as_bytes())?;
        self.file.flush()?;
        Ok(())
    }
}

/// Records of completed layers found in a checkpoint, keyed by N.
type Completed = std::collections::BTreeMap<u64, Vec<OutputRecord>>;

fn corrupt(path: &std::path::Path, reason: impl Into<String>) -> Error {
    Error::CheckpointCorrupt { path: path.display().to_string(), reason: reason.into() }
}

fn load_checkpoint(job: &ScanJob, path: &std::path::Path) -> Result<Completed> {
    let mut done = Completed::new();
    let Ok(file) = File::open(path) else { return Ok(done) };
    let mut pending: Vec<OutputRecord> = Vec::new();
    let mut header_seen = false;
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = match line {
            Ok(l) => l,
            Err(_) if job.force_resume => break,
            Err(e) => return Err(corrupt(path, format!("line {}: {e}", i + 1))),
        };
        if line.trim().is_empty() {
            continue;
        }
        let rec = match OutputRecord::from_json(&line) {
            Ok(r) => r,
            Err(_) if job.force_resume => break,
            Err(_) => return Err(corrupt(path, format!("line {} is not a record", i + 1))),
        };
        if !header_seen {
            if rec.kind != HEADER_KIND || rec.value.as_deref() != Some(job.fingerprint().as_str()) {
                if job.force_resume {
                    return Ok(Completed::new());
                }
                return Err(corrupt(path, "written by a different job"));
            }
            header_seen = true;
            continue;
        }
        if rec.kind == DONE_KIND {
            if pending.iter().any(|r| r.n != rec.n) {
                if job.force_resume {
                    break;
                }
                return Err(corrupt(path, format!("records of another layer before the marker of N = {}", rec.n)));
            }
            done.insert(rec.n, std::mem::take(&mut pending));
        } else {
            pending.push(rec);
        }
    }
    if !header_seen && path.metadata().map(|m| m.len() > 0).unwrap_or(false) && !job.force_resume {
        return Err(corrupt(path, "missing job header"));
    }
    Ok(done)
}

fn open_checkpoint(job: &ScanJob, path: &std::path::Path, done: &Completed) -> Result<Checkpoint> {
    // rewrite the valid prefix so a partial trailing layer is dropped
    let mut file = OpenOptions::new().create(true).write(true).truncate(true).open(path)?;
    let mut header = OutputRecord::new(HEADER_KIND, 0, 0);
    header.value = Some(job.fingerprint());
    writeln!(file, "{}", header.to_json())?;
    let mut ck = Checkpoint { file };
    for (&n, recs) in done {
        ck.append(recs, n)?;
    }
    Ok(ck)
}

/// Run the job, handing each record to `sink` in (N, p) order.
pub fn run_job(job: &ScanJob, sink: &mut dyn FnMut(&OutputRecord) -> Result<()>) -> Result<JobSummary> {
    job.validate()?;
    let exec = Exec::with_workers(job.workers);
    let plan = job.plan();
    let done = match &job.checkpoint {
        Some(path) => load_checkpoint(job, path)?,
        None => Completed::new(),
    };
    let mut ck = match &job.checkpoint {
        Some(path) => Some(open_checkpoint(job, path, &done)?),
        None => None,
    };
    let mut summary = JobSummary { layers: plan.len(), ..Default::default() };
    let target = 64 * exec.workers().max(1);
    let mut i = 0;
    while i < plan.len() {
        let (n, _) = plan[i];
        if let Some(recs) = done.get(&n) {
            for r in recs {
                summary.records += 1;
                summary.errors += r.is_error() as usize;
                sink(r)?;
            }
            summary.pairs += plan[i].1.len();
            summary.resumed_layers += 1;
            i += 1;
            continue;
        }
        // a batch of consecutive layers not yet done
        let mut j = i;
        let mut pairs = Vec::new();
        while j < plan.len() && !done.contains_key(&plan[j].0) && (j == i || pairs.len() < target) {
            pairs.extend(plan[j].1.iter().map(|&p| (plan[j].0, p)));
            j += 1;
        }
        let results = exec.map(&pairs, |&(n, p)| compute(job, n, p));
        let mut it = pairs.iter().zip(results).peekable();
        for (n, _) in &plan[i..j] {
            let mut recs = Vec::new();
            while let Some(((m, _), _)) = it.peek() {
                if m != n {
                    break;
                }
                let (_, r) = it.next().unwrap();
                recs.extend(r);
                summary.pairs += 1;
            }
            for r in &recs {
                summary.records += 1;
                summary.errors += r.is_error() as usize;
                sink(r)?;
            }
            if let Some(ck) = ck.as_mut() {
                ck.append(&recs, *n)?;
            }
        }
        i = j;
    }
    Ok(summary)
}

/// Collect all records of a job.
pub fn run_job_collect(job: &ScanJob) -> Result<(Vec<OutputRecord>, JobSummary)> {
    let mut out = Vec::new();
    let summary = run_job(job, &mut |r| {
        out.push(r.clone());
        Ok(())
    })?;
    Ok((out, summary))
}
