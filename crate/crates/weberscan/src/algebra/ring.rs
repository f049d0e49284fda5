//! The quotient ring (Z/p^2)[x]/(Phi_f).

use std::fmt;
use std::sync::Arc;

use super::arith::{add_mod, euler_phi, gcd, is_prime_u64, mul_mod, sub_mod};
use super::cyclo::cyclotomic_poly;
use super::poly::{mul_coeffs, poly_xgcd_fp, ModPoly};
use crate::{Error, Result};

/// Shared description of the ring: conductor, prime, and the sparse tail
/// of Phi_f used for reduction.
pub struct CycloRing {
    f: u64,
    p: u64,
    modulus: u64,
    phi: usize,
    /// `x^phi = sum c_j x^j` in the ring: the (j, c_j) with c_j nonzero.
    tail: Vec<(usize, u64)>,
    phi_mod_p: ModPoly,
}

impl fmt::Debug for CycloRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloRing(f={}, p={})", self.f, self.p)
    }
}

impl CycloRing {
    pub fn new(f: u64, p: u64) -> Result<Arc<CycloRing>> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::Overflow(format!("p = {p} exceeds 2^31")));
        }
        if f < 1 {
            return Err(Error::InvalidInput("conductor must be positive".into()));
        }
        let modulus = p * p;
        let phi_int = cyclotomic_poly(f);
        let phi = euler_phi(f) as usize;
        debug_assert_eq!(phi_int.len(), phi + 1);
        let tail = phi_int[..phi]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, (-(c as i128)).rem_euclid(modulus as i128) as u64))
            .collect();
        Ok(Arc::new(CycloRing {
            f,
            p,
            modulus,
            phi,
            tail,
            phi_mod_p: ModPoly::from_i64(p, &phi_int),
        }))
    }

    pub fn conductor(&self) -> u64 {
        self.f
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Reduce an arbitrary-length coefficient vector modulo Phi_f in place.
    fn reduce(&self, v: &mut Vec<u64>) {
        let m = self.modulus;
        let phi = self.phi;
        for i in (phi..v.len()).rev() {
            let c = v[i];
            if c == 0 {
                continue;
            }
            let base = i - phi;
            for &(j, t) in &self.tail {
                v[base + j] = add_mod(v[base + j], mul_mod(c, t, m), m);
            }
        }
        v.truncate(phi);
        v.resize(phi, 0);
    }

    pub fn zero(self: &Arc<Self>) -> CycloRingElem {
        CycloRingElem { ring: self.clone(), c: vec![0; self.phi] }
    }

    pub fn constant(self: &Arc<Self>, a: u64) -> CycloRingElem {
        let mut e = self.zero();
        e.c[0] = a % self.modulus;
        e
    }

    pub fn one(self: &Arc<Self>) -> CycloRingElem {
        self.constant(1)
    }

    /// The class of `x^k`, `k` taken modulo `f`.
    pub fn x_pow(self: &Arc<Self>, k: u64) -> CycloRingElem {
        let k = (k % self.f) as usize;
        let mut v = vec![0u64; k.max(self.phi) + 1];
        v[k] = 1;
        self.from_coeffs(v)
    }

    /// Reduce a coefficient vector (any length, entries any size) into the ring.
    pub fn from_coeffs(self: &Arc<Self>, mut v: Vec<u64>) -> CycloRingElem {
        for c in v.iter_mut() {
            *c %= self.modulus;
        }
        self.reduce(&mut v);
        CycloRingElem { ring: self.clone(), c: v }
    }
}

/// Element of (Z/p^2)[x]/(Phi_f), stored as the canonical representative
/// of degree below phi(f).
#[derive(Clone)]
pub struct CycloRingElem {
    ring: Arc<CycloRing>,
    c: Vec<u64>,
}

impl PartialEq for CycloRingElem {
    fn eq(&self, other: &Self) -> bool {
        self.ring.f == other.ring.f && self.ring.p == other.ring.p && self.c == other.c
    }
}

impl Eq for CycloRingElem {}

impl fmt::Debug for CycloRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl CycloRingElem {
    pub fn ring(&self) -> &Arc<CycloRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn to_poly(&self) -> ModPoly {
        ModPoly::new(self.ring.modulus, self.c.clone())
    }

    fn same_ring(&self, o: &CycloRingElem) {
        assert!(
            Arc::ptr_eq(&self.ring, &o.ring)
                || (self.ring.f == o.ring.f && self.ring.p == o.ring.p),
            "elements of different rings"
        );
    }

    pub fn add(&self, o: &CycloRingElem) -> CycloRingElem {
        self.same_ring(o);
        let m = self.ring.modulus;
        let c = self.c.iter().zip(&o.c).map(|(&a, &b)| add_mod(a, b, m)).collect();
        CycloRingElem { ring: self.ring.clone(), c }
    }

    pub fn sub(&self, o: &CycloRingElem) -> CycloRingElem {
        self.same_ring(o);
        let m = self.ring.modulus;
        let c = self.c.iter().zip(&o.c).map(|(&a, &b)| sub_mod(a, b, m)).collect();
        CycloRingElem { ring: self.ring.clone(), c }
    }

    pub fn neg(&self) -> CycloRingElem {
        let m = self.ring.modulus;
        let c = self.c.iter().map(|&a| sub_mod(0, a, m)).collect();
        CycloRingElem { ring: self.ring.clone(), c }
    }

    pub fn scale(&self, s: u64) -> CycloRingElem {
        let m = self.ring.modulus;
        let s = s % m;
        let c = self.c.iter().map(|&a| mul_mod(a, s, m)).collect();
        CycloRingElem { ring: self.ring.clone(), c }
    }

    pub fn add_constant(&self, a: u64) -> CycloRingElem {
        let mut out = self.clone();
        let m = self.ring.modulus;
        out.c[0] = add_mod(out.c[0], a % m, m);
        out
    }

    pub fn mul(&self, o: &CycloRingElem) -> CycloRingElem {
        self.same_ring(o);
        let mut v = mul_coeffs(&self.c, &o.c, self.ring.modulus);
        self.ring.reduce(&mut v);
        CycloRingElem { ring: self.ring.clone(), c: v }
    }

    pub fn square(&self) -> CycloRingElem {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u64) -> CycloRingElem {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Inverse: extended gcd with Phi_f over F_p, then one Newton step
    /// `y <- y (2 - a y)` to lift to p^2.
    pub fn inv(&self) -> Result<CycloRingElem> {
        let ring = &self.ring;
        let p = ring.p;
        let a_p = ModPoly::new(p, self.c.iter().map(|&c| c % p).collect());
        let (g, s, _) = poly_xgcd_fp(&a_p, &ring.phi_mod_p)?;
        if !g.is_one() {
            return Err(Error::NotAUnit);
        }
        let y0 = ring.from_coeffs(s.into_coeffs());
        let two = ring.constant(2);
        let y = y0.mul(&two.sub(&self.mul(&y0)));
        debug_assert!(y.mul(self).is_one());
        Ok(y)
    }

    /// The automorphism `x -> x^a` for `a` coprime to `f`.
    pub fn sigma(&self, a: u64) -> CycloRingElem {
        let f = self.ring.f;
        debug_assert_eq!(gcd(a % f, f), 1);
        let a = a % f;
        let mut v = vec![0u64; f as usize];
        for (i, &c) in self.c.iter().enumerate() {
            if c != 0 {
                let k = (i as u128 * a as u128 % f as u128) as usize;
                v[k] = c;
            }
        }
        // exponents are distinct, so plain placement is enough
        self.ring.reduce(&mut v);
        CycloRingElem { ring: self.ring.clone(), c: v }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&c| c == 0)
    }

    /// `Some(c)` when the element is the constant `c`.
    pub fn as_constant(&self) -> Option<u64> {
        self.c[1..].iter().all(|&c| c == 0).then_some(self.c[0])
    }

    /// Coefficients reduced mod p.
    pub fn residue_mod_p(&self) -> Vec<u64> {
        let p = self.ring.p;
        self.c.iter().map(|&c| c % p).collect()
    }

    /// Is the element divisible by p in the ring?
    pub fn is_divisible_by_p(&self) -> bool {
        let p = self.ring.p;
        self.c.iter().all(|&c| c % p == 0)
    }

    /// For an element divisible by p, its quotient by p taken mod p.
    pub fn div_p(&self) -> Vec<u64> {
        let p = self.ring.p;
        debug_assert!(self.is_divisible_by_p());
        self.c.iter().map(|&c| c / p).collect()
    }
}
