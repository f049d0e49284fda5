use serde::{Deserialize, Serialize};

use super::{annihilator_test, build_twist, measure_vector_with, AnnihilatorReport, MeasureMethod};
use crate::exec::Exec;
use crate::layers::{split_profile, LayerSpec};
use crate::Result;

/// Upper bound on p as a function of N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PBound {
    Absolute(u64),
    /// `floor(budget / N)`
    Budget(u64),
}

impl PBound {
    pub fn for_n(&self, n: u64) -> u64 {
        match *self {
            PBound::Absolute(b) => b,
            PBound::Budget(b) => b / n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SplitFilter {
    #[default]
    All,
    /// p = 1 mod N
    SplitMuN,
    /// p totally split in K
    SplitK,
}

impl SplitFilter {
    pub fn admits(&self, layer: &LayerSpec, p: u64) -> bool {
        match self {
            SplitFilter::All => true,
            SplitFilter::SplitMuN => p % layer.n == 1,
            SplitFilter::SplitK => split_profile(layer, p).map(|s| s.totally_split).unwrap_or(false),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionScan {
    pub nmin: u64,
    pub nmax: u64,
    /// smallest prime tried
    pub pmin: u64,
    pub bound: PBound,
    pub filter: SplitFilter,
    pub method: MeasureMethod,
}

impl TorsionScan {
    pub fn new(nmin: u64, nmax: u64, bound: PBound) -> Self {
        TorsionScan { nmin, nmax, pmin: 3, bound, filter: SplitFilter::All, method: MeasureMethod::Auto }
    }

    /// The primes examined for this N, ascending.
    pub fn primes_for(&self, layer: &LayerSpec) -> Vec<u64> {
        primes_up_to(self.bound.for_n(layer.n))
            .into_iter()
            .filter(|&p| p >= self.pmin && layer.n % p != 0 && self.filter.admits(layer, p))
            .collect()
    }

    /// Total inner-loop length of the direct route, for cost estimates.
    pub fn direct_cost(&self) -> u128 {
        let mut total = 0u128;
        for n in self.nmin.max(2)..=self.nmax {
            let Ok(layer) = LayerSpec::new(n) else { continue };
            let phi_half = crate::algebra::arith::euler_phi(layer.conductor().f_n) as u128 / 2;
            for p in self.primes_for(&layer) {
                total += phi_half * (p as u128 - 1);
            }
        }
        total
    }
}

pub fn primes_up_to(b: u64) -> Vec<u64> {
    if b < 2 {
        return Vec::new();
    }
    let b = b as usize;
    let mut sieve = vec![true; b + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= b {
        if sieve[i] {
            for j in (i * i..=b).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i as u64).collect()
}

/// Build the twist, accumulate the measure and test it, for one pair.
pub fn torsion_pair(n: u64, p: u64, c_hint: Option<u64>, method: MeasureMethod, exec: &Exec) -> Result<AnnihilatorReport> {
    let layer = LayerSpec::new(n)?;
    let setup = build_twist(&layer, p, c_hint)?;
    let vec = measure_vector_with(&setup, method, exec);
    let mut report = annihilator_test(&vec)?;
    report.c = Some(setup.c);
    Ok(report)
}

/// Outcome for one pair; `Err` entries are kept so a scan never aborts.
pub type TorsionOutcome = (u64, u64, Result<AnnihilatorReport>);

/// All non-empty reports and all failures, sorted by (N, p). The pairs are
/// distributed over `exec`; the order of the output does not depend on it.
pub fn scan_torsion(scan: &TorsionScan, exec: &Exec) -> Vec<TorsionOutcome> {
    let mut pairs = Vec::new();
    for n in scan.nmin.max(2)..=scan.nmax {
        let layer = LayerSpec::new(n).expect("n >= 2");
        pairs.extend(scan.primes_for(&layer).into_iter().map(|p| (n, p)));
    }
    let seq = Exec::sequential();
    let results = exec.map(&pairs, |&(n, p)| torsion_pair(n, p, None, scan.method, &seq));
    pairs
        .into_iter()
        .zip(results)
        .filter(|(_, r)| !matches!(r, Ok(rep) if rep.is_empty()))
        .map(|((n, p), r)| (n, p, r))
        .collect()
}
