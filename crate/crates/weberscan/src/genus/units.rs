use std::sync::Arc;

use crate::algebra::arith::{add_mod, mul_mod, pow_mod, primitive_root_prime_power, sub_mod};
use crate::algebra::{is_prime_u64, CycloRing, CycloRingElem};
use crate::layers::{split_profile, LayerSpec};
use crate::{Error, Result};

/// A real cyclotomic unit eta of K = Q(l^n) inside (Z/p^2)[x]/(Phi_f),
/// with the coset representatives of Gal(Q(mu_f)/K) in Gal(Q(mu_f)/Q).
#[derive(Clone, Debug)]
pub struct UnitSystem {
    pub layer: LayerSpec,
    pub p: u64,
    pub l: u64,
    /// `l^(n+1)` for odd l, `2^(n+2)` for l = 2
    pub f: u64,
    pub ring: Arc<CycloRing>,
    pub unit: CycloRingElem,
    /// `a_j` with `sigma_j : x -> x^(a_j)`, `a_0 = 1`
    pub coset_reps: Vec<u64>,
    /// `sigma_j(eta)`
    pub conjugates: Vec<CycloRingElem>,
}

impl UnitSystem {
    pub fn n(&self) -> u64 {
        self.layer.n
    }

    /// `prod_j sigma_j(z)`; for z in K this is `Norm_{K/Q}(z)`, a constant.
    pub fn norm(&self, z: &CycloRingElem) -> Result<u64> {
        let mut acc = z.clone();
        for &a in &self.coset_reps[1..] {
            acc = acc.mul(&z.sigma(a));
        }
        acc.as_constant()
            .ok_or_else(|| Error::Internal("norm of an element of K is not a constant".into()))
    }

    /// Build the unit without asking p to split; used by the regulator test.
    pub(crate) fn build(layer: &LayerSpec, p: u64) -> Result<UnitSystem> {
        let (l, n) = layer
            .prime_power()
            .ok_or_else(|| Error::Unsupported(format!("N = {} is not a prime power", layer.n)))?;
        if !is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if p == 2 {
            return Err(Error::Unsupported("p = 2 has no odd Fermat quotient".into()));
        }
        if p == l {
            return Err(Error::RamifiedPrime { n: layer.n, p });
        }
        let nn = layer.n;
        let f = if l == 2 { 1u64 << (n + 2) } else { l.pow(n + 1) };
        let ring = CycloRing::new(f, p)?;
        let (unit, gen) = if l == 2 {
            // x^(f-2) (1 + x + x^2 + x^3 + x^4)
            let unit = (0..5u64).fold(ring.zero(), |acc, i| acc.add(&ring.x_pow(f - 2 + i)));
            (unit, 5)
        } else {
            let rho = primitive_root_prime_power(l, n + 1);
            let h = pow_mod(rho, nn, f);
            let mut unit = ring.one();
            let mut hj = 1u64;
            for _ in 0..(l - 1) / 2 {
                hj = mul_mod(hj, h, f);
                unit = unit.mul(&ring.x_pow(hj).add(&ring.x_pow(f - hj)));
            }
            (unit, pow_mod(rho, l - 1, f))
        };
        let mut coset_reps = Vec::with_capacity(nn as usize);
        let mut a = 1u64;
        for _ in 0..nn {
            coset_reps.push(a);
            a = mul_mod(a, gen, f);
        }
        let conjugates: Vec<CycloRingElem> = coset_reps.iter().map(|&a| unit.sigma(a)).collect();
        let residues: std::collections::HashSet<Vec<u64>> =
            conjugates.iter().map(|c| c.residue_mod_p()).collect();
        if residues.len() != conjugates.len() {
            return Err(Error::Unsupported(format!(
                "conjugates of the unit collide mod {p} for N = {nn}"
            )));
        }
        Ok(UnitSystem { layer: layer.clone(), p, l, f, ring, unit, coset_reps, conjugates })
    }
}

/// The unit system of K = Q(l^n) for a prime p totally split in K.
pub fn unit_system(layer: &LayerSpec, p: u64) -> Result<UnitSystem> {
    if p == 2 {
        return Err(Error::Unsupported("p = 2 has no odd Fermat quotient".into()));
    }
    if layer.prime_power().is_none() {
        return Err(Error::Unsupported(format!("N = {} is not a prime power", layer.n)));
    }
    if !split_profile(layer, p)?.totally_split {
        return Err(Error::NotTotallySplit { n: layer.n, p });
    }
    UnitSystem::build(layer, p)
}

/// Coefficients mod p^2 (ascending, monic) of `P(X) = prod_k (X - sigma_k(eta))`.
pub fn unit_min_poly(us: &UnitSystem) -> Result<Vec<u64>> {
    let ring = &us.ring;
    // coefficients in the ring, ascending in X
    let mut poly: Vec<CycloRingElem> = vec![ring.one()];
    for eta in &us.conjugates {
        let mut next = vec![ring.zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(eta));
        }
        poly = next;
    }
    poly.iter()
        .map(|c| {
            c.as_constant()
                .ok_or_else(|| Error::Internal("minimal polynomial of the unit is not rational".into()))
        })
        .collect()
}

fn eval_mod(coeffs: &[u64], x: u64, m: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, m), c, m))
}

/// Smallest `a >= start` in `[1, p-1]` with `v_p(Norm(eta - a)) = 1`.
pub fn find_uniformizer_from(us: &UnitSystem, start: u64) -> Result<u64> {
    let p = us.p;
    let m = p * p;
    let poly = unit_min_poly(us)?;
    (start.max(1)..p)
        .find(|&a| {
            let v = eval_mod(&poly, a, m);
            v % p == 0 && v != 0
        })
        .ok_or(Error::NoUniformizer { n: us.n(), p })
}

/// Smallest `a` in `[1, p-1]` with `v_p(Norm_{K/Q}(eta - a)) = 1`; the
/// primes above p are then `p_k = (p, sigma_k(eta) - a)`.
pub fn find_uniformizer(us: &UnitSystem) -> Result<u64> {
    find_uniformizer_from(us, 1)
}

/// Number of conjugates with `sigma_k(eta) = a` modulo some prime above p,
/// counted through the roots of `P(X)` mod p; equals `v_p(Norm(eta - a))`
/// when the roots are simple.
pub fn root_multiplicity(us: &UnitSystem, a: u64) -> Result<usize> {
    let p = us.p;
    let poly: Vec<u64> = unit_min_poly(us)?.into_iter().map(|c| c % p).collect();
    let mut count = 0;
    let mut cur = poly;
    // synthetic division by (X - a) as long as a is a root
    while cur.len() > 1 && eval_mod(&cur, a, p) == 0 {
        let mut q = vec![0u64; cur.len() - 1];
        let mut carry = 0u64;
        for i in (1..cur.len()).rev() {
            carry = add_mod(cur[i], mul_mod(carry, a, p), p);
            q[i - 1] = carry;
        }
        debug_assert_eq!(add_mod(cur[0], mul_mod(carry, a, p), p), 0);
        cur = q;
        count += 1;
    }
    Ok(count)
}

/// `((x^(p-1) mod p^2) - 1) / p mod p`, a homomorphism (Z/p^2)^x -> F_p.
pub fn fermat_quotient(x: u64, p: u64) -> u64 {
    let m = p * p;
    let y = pow_mod(x % m, p - 1, m);
    sub_mod(y, 1, m) / p
}
