//! The layer K = Q(N): factorization of N, the conductor, the character
//! index map and the decomposition of a prime p in K.

use serde::{Deserialize, Serialize};

use crate::algebra::arith::{
    discrete_log, factorize, gcd, lcm, multiplicative_order, pow_mod, primitive_root_prime_power,
    valuation,
};
use crate::algebra::is_prime_u64;
use crate::{Error, Result};

/// The degree N of the layer with its factorization, primes ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerSpec {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl LayerSpec {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("N = {n} must be at least 2")));
        }
        Ok(LayerSpec { n, factors: factorize(n) })
    }

    pub fn is_even(&self) -> bool {
        self.n % 2 == 0
    }

    /// `(l, n)` when N = l^n.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }

    pub fn conductor(&self) -> ConductorData {
        conductor(self)
    }
}

/// Conductor data: `f_N = prod Q_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConductorData {
    pub f_n: u64,
    /// `Q_i = l^(n+1)` for odd l, `2^(n+2)` for l = 2.
    pub moduli: Vec<u64>,
    /// `q_i = l^n`
    pub prime_powers: Vec<u64>,
    /// `N_i = N / q_i`
    pub cofactors: Vec<u64>,
}

pub fn conductor(layer: &LayerSpec) -> ConductorData {
    let mut moduli = Vec::new();
    let mut prime_powers = Vec::new();
    let mut cofactors = Vec::new();
    for &(l, e) in &layer.factors {
        let q = l.pow(e);
        moduli.push(if l == 2 { q * 4 } else { q * l });
        prime_powers.push(q);
        cofactors.push(layer.n / q);
    }
    ConductorData { f_n: moduli.iter().product(), moduli, prime_powers, cofactors }
}

/// Decomposition of p in K and in Q(mu_N).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitProfile {
    pub p: u64,
    /// residue degree of p in K
    pub d_k: u64,
    /// number of places above p in K
    pub s_p: u64,
    pub totally_split: bool,
    /// order of p mod N, the residue degree in Q(mu_N)
    pub rho_n: u64,
    /// F_2-rank of W_K
    pub w_rank: u64,
}

pub fn split_profile(layer: &LayerSpec, p: u64) -> Result<SplitProfile> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if layer.n % p == 0 {
        return Err(Error::RamifiedPrime { n: layer.n, p });
    }
    let mut d_k = 1u64;
    for &(l, n) in &layer.factors {
        let d = if l == 2 {
            // p = +-5^u mod 2^(n+2) and v_2(p^2 - 1) = v_2(u) + 3
            let w = valuation((p as u128 * p as u128 - 1) as u64, 2);
            2u64.pow((n + 3).saturating_sub(w))
        } else {
            // v_l(p^(l-1) - 1), capped at n + 1
            let m = l.pow(n + 1);
            let r = pow_mod(p, l - 1, m);
            let v = if r == 1 { n + 1 } else { valuation(r - 1, l) };
            l.pow(n + 1 - v)
        };
        d_k = lcm(d_k, d);
    }
    let s_p = layer.n / d_k;
    let w_rank = if p == 2 { s_p - 1 } else { 0 };
    Ok(SplitProfile {
        p,
        d_k,
        s_p,
        totally_split: d_k == 1,
        rho_n: multiplicative_order(p % layer.n, layer.n),
        w_rank,
    })
}

pub fn w_rank(profile: &SplitProfile, p: u64) -> u64 {
    if p == 2 {
        profile.s_p - 1
    } else {
        0
    }
}

/// The character psi_N of order N on (Z/f_N)^x: `psi(a) = zeta_N^index(a)`
/// with `index(a) = sum u_i N_i mod N`, where `u_i` is the discrete log of
/// `a mod Q_i` with respect to the chosen generator (5 for the 2-part).
#[derive(Clone, Debug)]
pub struct LayerCharacter {
    pub n: u64,
    pub conductor: ConductorData,
    /// raw generators mod `Q_i`
    pub generators: Vec<u64>,
    group_orders: Vec<u64>,
    group_factors: Vec<Vec<(u64, u32)>>,
}

impl LayerCharacter {
    pub fn new(layer: &LayerSpec) -> Self {
        let conductor = conductor(layer);
        let mut generators = Vec::new();
        let mut group_orders = Vec::new();
        let mut group_factors = Vec::new();
        for (i, &(l, e)) in layer.factors.iter().enumerate() {
            let q = conductor.prime_powers[i];
            if l == 2 {
                generators.push(5);
                group_orders.push(q);
                group_factors.push(vec![(2, e)]);
            } else {
                let order = q * (l - 1);
                generators.push(primitive_root_prime_power(l, e + 1));
                group_orders.push(order);
                group_factors.push(factorize(order));
            }
        }
        LayerCharacter { n: layer.n, conductor, generators, group_orders, group_factors }
    }

    /// Component exponents `u_i` of `a`, each reduced mod `q_i`.
    pub fn components(&self, a: u64) -> Result<Vec<u64>> {
        let mut out = Vec::with_capacity(self.generators.len());
        for (i, &m) in self.conductor.moduli.iter().enumerate() {
            let mut r = a % m;
            if gcd(r, m) != 1 {
                return Err(Error::NotCoprime { a, m: self.conductor.f_n });
            }
            let q = self.conductor.prime_powers[i];
            if m % 2 == 0 && r % 4 == 3 {
                r = m - r;
            }
            let u = discrete_log(r, self.generators[i], m, self.group_orders[i], &self.group_factors[i])
                .ok_or_else(|| Error::Internal(format!("no discrete log of {r} mod {m}")))?;
            out.push(u % q);
        }
        Ok(out)
    }

    /// The exponent e with psi_N(sigma_a) = zeta_N^e.
    pub fn index(&self, a: u64) -> Result<u64> {
        let u = self.components(a)?;
        let n = self.n as u128;
        let e = u
            .iter()
            .zip(&self.conductor.cofactors)
            .fold(0u128, |acc, (&ui, &ni)| (acc + ui as u128 * ni as u128) % n);
        Ok(e as u64)
    }
}

/// Residue degree of p in K through the character: `N / gcd(N, index(p))`.
pub fn residue_degree_by_character(layer: &LayerSpec, p: u64) -> Result<u64> {
    let chi = LayerCharacter::new(layer);
    let e = chi.index(p)?;
    Ok(layer.n / gcd(layer.n, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conductors() {
        assert_eq!(conductor(&LayerSpec::new(3).unwrap()).f_n, 9);
        assert_eq!(conductor(&LayerSpec::new(12).unwrap()).f_n, 144);
        assert_eq!(conductor(&LayerSpec::new(2).unwrap()).f_n, 8);
        assert_eq!(conductor(&LayerSpec::new(1024).unwrap()).f_n, 4096);
    }

    #[test]
    fn split_examples() {
        let s = split_profile(&LayerSpec::new(25).unwrap(), 2251).unwrap();
        assert!(s.totally_split);
        assert_eq!(s.s_p, 25);
        let s = split_profile(&LayerSpec::new(2).unwrap(), 13).unwrap();
        assert_eq!((s.d_k, s.s_p, s.totally_split), (2, 1, false));
        assert!(split_profile(&LayerSpec::new(81).unwrap(), 487).unwrap().totally_split);
        assert!(matches!(
            split_profile(&LayerSpec::new(6).unwrap(), 3),
            Err(Error::RamifiedPrime { .. })
        ));
    }

    #[test]
    fn generator_has_index_one_on_prime_layers() {
        let chi = LayerCharacter::new(&LayerSpec::new(3).unwrap());
        assert_eq!(chi.index(chi.generators[0]).unwrap(), 1);
        assert_eq!(chi.index(1).unwrap(), 0);
        assert!(chi.index(6).is_err());
    }
}
