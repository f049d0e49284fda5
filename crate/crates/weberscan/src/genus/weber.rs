use serde::{Deserialize, Serialize};

use super::symbols::{genus_matrix, MatrixMode};
use super::units::unit_system;
use super::{CAVEAT_CLASS_NUMBER, CAVEAT_UNIT_INDEX};
use crate::algebra::arith::{divisors, euler_phi};
use crate::exec::Exec;
use crate::layers::{split_profile, LayerSpec, SplitProfile};
use crate::stickelberger::scan::torsion_pair;
use crate::stickelberger::{AnnihilatorReport, MeasureMethod};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// a genus computation gave a positive exponent: p divides the class
    /// number of K.Q(p)
    GenusCertified,
    /// every genus computation gave full rank at m = 1
    GenusInconclusive,
    /// components found at totally split layers, but no genus run possible
    GenusSkipped,
    /// components found, none at a layer where p totally splits
    NotTotallySplit,
    /// no component of T_K detected
    TTrivial,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::GenusCertified => "GenusCertified",
            Verdict::GenusInconclusive => "GenusInconclusive",
            Verdict::GenusSkipped => "GenusSkipped",
            Verdict::NotTotallySplit => "NotTotallySplit",
            Verdict::TTrivial => "TTrivial",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    /// the divisor N'' of N whose characters of order N'' are tested
    pub divisor: u64,
    pub report: AnnihilatorReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusOutcome {
    /// the prime-power layer Q(layer) the symbols were computed in
    pub layer: u64,
    pub uniformizer: Option<u64>,
    pub rank: Option<usize>,
    pub genus_exponent: Option<usize>,
    /// why the computation did not run or did not finish
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct WeberOptions {
    pub method: MeasureMethod,
    pub mode: MatrixMode,
    /// skip genus layers with `N^2 phi(f)^2` above this
    pub genus_cost_limit: u128,
    pub run_genus: bool,
}

impl Default for WeberOptions {
    fn default() -> Self {
        WeberOptions {
            method: MeasureMethod::Auto,
            mode: MatrixMode::Circulant,
            genus_cost_limit: 2_000_000_000,
            run_genus: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct WeberReport {
    pub n: u64,
    pub p: u64,
    pub profile: SplitProfile,
    /// degree of the splitting field of p in K
    pub reduced_n: u64,
    /// every divisor N'' > 1 of N, with its annihilator report
    pub components: Vec<ComponentReport>,
    pub genus: Vec<GenusOutcome>,
    pub verdict: Verdict,
    pub caveats: Vec<String>,
}

impl WeberReport {
    pub fn detected(&self) -> impl Iterator<Item = &ComponentReport> {
        self.components.iter().filter(|c| !c.report.is_empty())
    }
}

/// Rough count of coefficient operations for one genus run on Q(N).
pub fn genus_cost(layer: &LayerSpec) -> Option<u128> {
    let (l, e) = layer.prime_power()?;
    let f = if l == 2 { 1u64 << (e + 2) } else { l.pow(e + 1) };
    let phi = euler_phi(f) as u128;
    let n = layer.n as u128;
    Some(n * n * phi * phi)
}

fn run_genus(d: u64, p: u64, opts: &WeberOptions, exec: &Exec) -> GenusOutcome {
    let mut out = GenusOutcome { layer: d, uniformizer: None, rank: None, genus_exponent: None, note: None };
    let layer = match LayerSpec::new(d) {
        Ok(l) => l,
        Err(e) => {
            out.note = Some(e.to_string());
            return out;
        }
    };
    match genus_cost(&layer) {
        None => {
            out.note = Some("composite layer: no unit system".into());
            return out;
        }
        Some(c) if c > opts.genus_cost_limit => {
            out.note = Some(format!("cost {c} above limit {}", opts.genus_cost_limit));
            return out;
        }
        Some(_) => {}
    }
    match unit_system(&layer, p).and_then(|us| genus_matrix(&us, opts.mode, exec)) {
        Ok(m) => {
            out.uniformizer = Some(m.row.a);
            out.rank = Some(m.rank);
            out.genus_exponent = Some(m.genus_exponent);
        }
        Err(e) => out.note = Some(format!("{}: {e}", e.tag())),
    }
    out
}

/// Test every component of T_K, then look for a non-trivial genus part of
/// the class group of Q(N'').Q(p) at each detected prime-power layer N''
/// where p splits totally. Since [K : Q(N'')] is prime to p, a positive
/// genus exponent there shows that p divides the class number of K.Q(p).
pub fn weber_pipeline(layer: &LayerSpec, p: u64, opts: &WeberOptions, exec: &Exec) -> Result<WeberReport> {
    let profile = split_profile(layer, p)?;
    let mut components = Vec::new();
    for d in divisors(layer.n).into_iter().filter(|&d| d > 1) {
        let report = torsion_pair(d, p, None, opts.method, exec)?;
        components.push(ComponentReport { divisor: d, report });
    }
    let mut report = WeberReport {
        n: layer.n,
        p,
        reduced_n: profile.s_p,
        profile,
        components,
        genus: Vec::new(),
        verdict: Verdict::TTrivial,
        caveats: Vec::new(),
    };
    let detected: Vec<u64> = report.detected().map(|c| c.divisor).collect();
    if detected.is_empty() {
        return Ok(report);
    }
    let mut eligible = Vec::new();
    for &d in &detected {
        if split_profile(&LayerSpec::new(d)?, p)?.totally_split {
            eligible.push(d);
        }
    }
    if eligible.is_empty() {
        report.verdict = Verdict::NotTotallySplit;
        return Ok(report);
    }
    if opts.run_genus && p != 2 {
        report.genus = eligible.iter().map(|&d| run_genus(d, p, opts, exec)).collect();
    }
    let ran: Vec<usize> = report.genus.iter().filter_map(|g| g.genus_exponent).collect();
    report.verdict = if ran.iter().any(|&e| e > 0) {
        Verdict::GenusCertified
    } else if !ran.is_empty() {
        report.caveats.push("full rank at m = 1; larger m not supported".into());
        Verdict::GenusInconclusive
    } else {
        Verdict::GenusSkipped
    };
    if !ran.is_empty() {
        report.caveats.push(CAVEAT_CLASS_NUMBER.into());
        report.caveats.push(CAVEAT_UNIT_INDEX.into());
    }
    Ok(report)
}
