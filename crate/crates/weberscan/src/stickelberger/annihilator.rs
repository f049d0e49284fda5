use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::MeasureVector;
use crate::algebra::arith::multiplicative_order;
use crate::algebra::cyclo::{cyclotomic_mod, equal_degree_factor, factor_cyclotomic_mod_p, sort_factors};
use crate::algebra::{poly_gcd_fp, resultant_fp, ModPoly};
use crate::{Error, Result};

/// Irreducible factors of Phi_N mod p dividing the measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorReport {
    pub n: u64,
    pub p: u64,
    pub c: Option<u64>,
    pub factors: Vec<ModPoly>,
    /// S vanishes mod Phi_N: every factor divides.
    pub degenerate: bool,
}

impl AnnihilatorReport {
    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

pub fn annihilator_test(vec: &MeasureVector) -> Result<AnnihilatorReport> {
    let (n, p) = (vec.n, vec.p);
    if n % p == 0 {
        return Err(Error::RamifiedPrime { n, p });
    }
    let phi = cyclotomic_mod(n, p);
    let s = vec.to_poly().rem(&phi)?;
    let mut report = AnnihilatorReport { n, p, c: None, factors: Vec::new(), degenerate: false };
    if s.is_zero() {
        report.degenerate = true;
        report.factors = factor_cyclotomic_mod_p(n, p)?;
        return Ok(report);
    }
    let g = poly_gcd_fp(&s, &phi)?;
    let res = resultant_fp(&phi, &s)?;
    if (res == 0) != !g.is_one() {
        return Err(Error::Internal(format!(
            "resultant {res} disagrees with gcd {g} for N = {n}, p = {p}"
        )));
    }
    if g.is_one() {
        return Ok(report);
    }
    let d = multiplicative_order(p % n, n) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(n.rotate_left(17) ^ p);
    let mut factors = equal_degree_factor(&g, d, &mut rng)?;
    sort_factors(&mut factors);
    report.factors = factors;
    Ok(report)
}
