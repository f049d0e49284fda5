use super::units::UnitSystem;
use crate::algebra::arith::sub_mod;
use crate::algebra::rank_mod_p;
use crate::layers::{split_profile, LayerSpec};
use crate::{Error, Result};

/// `(eta^(p^d - 1) - 1) / p mod p` in coordinates of Z[zeta_f] / p, where
/// `d` is the residue degree of p in K, so that the power is 1 mod p.
pub fn unit_log(us: &UnitSystem, d: u64) -> Result<Vec<u64>> {
    let mut y = us.unit.clone();
    for _ in 0..d {
        y = y.pow(us.p);
    }
    let y = y.mul(&us.unit.inv()?);
    let t = y.sub(&us.ring.one());
    if !t.is_divisible_by_p() {
        return Err(Error::Internal("unit power is not 1 mod p".into()));
    }
    Ok(t.div_p())
}

/// F_p-rank of the p-adic logarithms of the unit quotients
/// `sigma_j(eta) / eta`, j = 1..N-1. Rank N - 1 iff the normalized
/// p-adic regulator of K is a p-adic unit, provided the cyclotomic units
/// have index prime to p.
pub fn regulator_rank(layer: &LayerSpec, p: u64) -> Result<usize> {
    let us = UnitSystem::build(layer, p)?;
    let d = split_profile(layer, p)?.d_k;
    let log = unit_log(&us, d)?;
    let base = us.ring.from_coeffs(log.clone());
    let rows: Vec<Vec<u64>> = us.coset_reps[1..]
        .iter()
        .map(|&a| {
            base.sigma(a)
                .residue_mod_p()
                .iter()
                .zip(&log)
                .map(|(&x, &y)| sub_mod(x, y, p))
                .collect()
        })
        .collect();
    Ok(rank_mod_p(&rows, p))
}
