use num_bigint::BigUint;

use crate::{Error, Result};

/// Chevalley's fixed-point formula in a cyclic extension K/k:
/// `#(C_K)^G = h_k prod e_l / ([K : k] (E_k^pos : E_k^pos cap N(K^x)))`.
/// The quotient must be a positive integer.
pub fn chevalley_order(h_k: u64, ram_indices: &[u64], degree: u64, unit_norm_index: &BigUint) -> Result<BigUint> {
    if h_k == 0 || degree == 0 || ram_indices.contains(&0) || *unit_norm_index == BigUint::ZERO {
        return Err(Error::InvalidInput("Chevalley inputs must be positive".into()));
    }
    let num = ram_indices.iter().fold(BigUint::from(h_k), |acc, &e| acc * e);
    let den = unit_norm_index * degree;
    if &num % &den != BigUint::ZERO {
        return Err(Error::FormulaViolation(format!("{num} is not divisible by {den}")));
    }
    Ok(num / den)
}

/// The formula for K_1 = K.Q(p) over K when p splits into `s_p` places,
/// each totally ramified, and the local symbols have rank `rank`.
pub fn genus_order(p: u64, s_p: u64, rank: usize) -> Result<BigUint> {
    let ram = vec![p; s_p as usize];
    chevalley_order(1, &ram, p, &BigUint::from(p).pow(rank as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(chevalley_order(1, &[27], 27, &BigUint::from(1u8)).unwrap(), BigUint::from(1u8));
        assert_eq!(chevalley_order(7, &[], 1, &BigUint::from(1u8)).unwrap(), BigUint::from(7u8));
        assert_eq!(genus_order(73, 3, 1).unwrap(), BigUint::from(73u8));
        assert!(matches!(
            chevalley_order(1, &[2], 3, &BigUint::from(1u8)),
            Err(Error::FormulaViolation(_))
        ));
    }
}
