//! Accumulation of the measure vector.
//!
//! Two production routes give identical vectors:
//!
//! * `Direct` walks the half-system as products of generator powers,
//!   `|half| = (phi(f_N)/2) (p-1)` steps.
//! * `Harmonic` sums each coset `a = r (mod f_N)` in closed form. On the
//!   coset, `a' = r' + f_N j` for `j` in `[0, p)`, `lambda` is a step
//!   function of `j` with `c - 1` jumps, and the weights `a^{-1} mod p`
//!   are consecutive inverses, so each coset costs `c` lookups into the
//!   prefix sums of `1/1, 1/2, ..., 1/(p-1)`.

use super::{TwistSetup, MAX_P};
use crate::algebra::arith::{add_mod, gcd, inv_mod, mul_mod, sub_mod, ShoupMul};
use crate::algebra::ModPoly;
use crate::exec::Exec;
use crate::{Error, Result};

/// Coefficients of `S(x) = sum coeffs[e] x^e` over F_p, `e` in `[0, N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureVector {
    pub p: u64,
    pub n: u64,
    pub coeffs: Vec<u64>,
}

impl MeasureVector {
    pub fn to_poly(&self) -> ModPoly {
        ModPoly::new(self.p, self.coeffs.clone())
    }

    pub fn scale(&self, s: u64) -> MeasureVector {
        let coeffs = self.coeffs.iter().map(|&x| mul_mod(x, s, self.p)).collect();
        MeasureVector { p: self.p, n: self.n, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&x| x == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MeasureMethod {
    /// `Harmonic` when the prefix table fits, `Direct` otherwise.
    #[default]
    Auto,
    Direct,
    Harmonic,
}

/// Largest p for which the harmonic route builds its table (64 MiB).
pub const HARMONIC_MAX_P: u64 = 1 << 24;

/// Largest conductor the brute-force oracle accepts.
pub const ORACLE_LIMIT: u64 = 1_000_000;

/// The measure with the default method, single-threaded.
pub fn measure_vector(setup: &TwistSetup) -> MeasureVector {
    measure_vector_with(setup, MeasureMethod::Auto, &Exec::sequential())
}

pub fn measure_vector_with(setup: &TwistSetup, method: MeasureMethod, exec: &Exec) -> MeasureVector {
    let outer = outer_elements(setup);
    let harmonic = setup.p != 2
        && match method {
            MeasureMethod::Auto => setup.p <= HARMONIC_MAX_P,
            MeasureMethod::Direct => false,
            MeasureMethod::Harmonic => true,
        };
    let n = setup.n() as usize;
    let p = setup.p;
    let chunk = (outer.len() / (4 * exec.workers()).max(1)).clamp(1, 1 << 14);
    let partials: Vec<Vec<u64>> = if harmonic {
        let table = HarmonicTable::new(p);
        exec.map_chunks(outer.len(), chunk, |r| harmonic_chunk(setup, &table, &outer[r]))
    } else if p == 2 {
        exec.map_chunks(outer.len(), chunk, |r| direct_chunk_p2(setup, &outer[r]))
    } else {
        exec.map_chunks(outer.len(), chunk, |r| direct_chunk(setup, &outer[r]))
    };
    let mut coeffs = vec![0u64; n];
    for part in partials {
        for (acc, x) in coeffs.iter_mut().zip(part) {
            *acc = add_mod(*acc, x, p);
        }
    }
    MeasureVector { p, n: setup.n(), coeffs }
}

/// The classes of the half-system modulo the (Z/p)^x factor: pairs
/// `(A mod f, e(A))` with `A = 1 mod p`.
pub fn outer_elements(setup: &TwistSetup) -> Vec<(u64, u32)> {
    let f = setup.f;
    let n = setup.n();
    let mut out: Vec<(u64, u32)> = vec![(1, 0)];
    for comp in &setup.components {
        let sign = comp.with_sign.then(|| super::adjust(comp.modulus - 1, comp.modulus, f));
        let h = ShoupMul::new(comp.adjusted, f);
        let mut next = Vec::with_capacity(out.len() * comp.range as usize * if sign.is_some() { 2 } else { 1 });
        for &(a, e) in &out {
            let mut cur = a;
            let mut idx = e as u64;
            for _ in 0..comp.range {
                cur = h.mul(cur);
                idx = (idx + comp.step) % n;
                next.push((cur, idx as u32));
                if let Some(s) = sign {
                    next.push((mul_mod(cur, s, f), idx as u32));
                }
            }
        }
        out = next;
    }
    out
}

/// `lambda = floor(a' c / f)` through the thresholds `ceil(k f / c)`.
struct LambdaFn {
    thresholds: Vec<u64>,
    c: u64,
    f: u64,
}

impl LambdaFn {
    fn new(c: u64, f: u64) -> Self {
        let thresholds = (1..c).map(|k| ((k as u128 * f as u128).div_ceil(c as u128)) as u64).collect();
        LambdaFn { thresholds, c, f }
    }

    #[inline(always)]
    fn eval(&self, a_prime: u64) -> usize {
        if self.thresholds.len() <= 16 {
            self.thresholds.iter().map(|&t| (a_prime >= t) as usize).sum()
        } else {
            (a_prime as u128 * self.c as u128 / self.f as u128) as usize
        }
    }
}

fn direct_chunk(setup: &TwistSetup, outer: &[(u64, u32)]) -> Vec<u64> {
    let (p, f, c) = (setup.p, setup.f, setup.c);
    let g = setup.g.expect("odd p has a generator");
    let g_inv_p = inv_mod(g % p, p).expect("generator is a unit");
    let c_inv = inv_mod(c, f).expect("c is prime to f");
    let step = ShoupMul::new(g, f);
    let wstep = ShoupMul::new(g_inv_p, p);
    let lam = LambdaFn::new(c, f);
    let mut out = vec![0u64; setup.n() as usize];
    let mut acc = vec![0u64; c as usize];
    for &(a, e) in outer {
        acc.iter_mut().for_each(|x| *x = 0);
        let mut ap = mul_mod(a, c_inv, f);
        let mut w = 1u64;
        for _ in 1..p {
            ap = step.mul(ap);
            w = wstep.mul(w);
            acc[lam.eval(ap)] += w;
        }
        let t = acc
            .iter()
            .enumerate()
            .skip(1)
            .fold(0u64, |t, (k, &s)| add_mod(t, mul_mod(k as u64, s % p, p), p));
        out[e as usize] = add_mod(out[e as usize], t, p);
    }
    out
}

fn direct_chunk_p2(setup: &TwistSetup, outer: &[(u64, u32)]) -> Vec<u64> {
    let (f, c) = (setup.f, setup.c);
    let c_inv = inv_mod(c, f).expect("c is prime to f");
    let lam = LambdaFn::new(c, f);
    let mut out = vec![0u64; setup.n() as usize];
    for &(a, e) in outer {
        let ap = mul_mod(a, c_inv, f);
        out[e as usize] ^= (lam.eval(ap) & 1) as u64;
    }
    out
}

/// Prefix sums `H[y] = sum_{i <= y} i^{-1} mod p`, with `0^{-1} := 0`.
pub(crate) struct HarmonicTable {
    p: u64,
    h: Vec<u32>,
}

impl HarmonicTable {
    pub(crate) fn new(p: u64) -> Self {
        assert!(p > 2 && p < MAX_P);
        let mut h = vec![0u32; p as usize];
        h[1] = 1;
        for i in 2..p as usize {
            let q = p / i as u64;
            let r = (p % i as u64) as usize;
            h[i] = sub_mod(0, mul_mod(q, h[r] as u64, p), p) as u32;
        }
        let mut s = 0u64;
        for x in h.iter_mut() {
            s = add_mod(s, *x as u64, p);
            *x = s as u32;
        }
        HarmonicTable { p, h }
    }

    /// `F(y) = sum_{i=0}^{y} (i mod p)^{-1}`, which equals `H[y mod p]`
    /// because the full sum of inverses vanishes.
    #[inline(always)]
    fn prefix(&self, y: i64) -> u64 {
        self.h[y.rem_euclid(self.p as i64) as usize] as u64
    }
}

fn harmonic_chunk(setup: &TwistSetup, table: &HarmonicTable, outer: &[(u64, u32)]) -> Vec<u64> {
    let (p, c, f_n) = (setup.p, setup.c, setup.f_n);
    let c_inv_fn = inv_mod(c % f_n, f_n).expect("c is prime to f_N");
    let fn_inv_p = inv_mod(f_n % p, p).expect("p does not divide f_N");
    let scale = mul_mod(inv_mod(c % p, p).expect("c is prime to p"), fn_inv_p, p);
    let den = c as i128 * f_n as i128;
    let top = p as i128;
    let mut out = vec![0u64; setup.n() as usize];
    for &(a, e) in outer {
        let r = a % f_n;
        let rp = mul_mod(r, c_inv_fn, f_n);
        let s = mul_mod(rp % p, fn_inv_p, p) as i64;
        let mut jumps = 0u64;
        for k in 1..c {
            let num = k as i128 * f_n as i128 * p as i128 - c as i128 * rp as i128;
            let j = num.div_euclid(den) + (num.rem_euclid(den) != 0) as i128;
            let j = j.clamp(0, top) as i64;
            jumps = add_mod(jumps, table.prefix(j + s - 1), p);
        }
        let full = mul_mod((c - 1) % p, table.prefix(s - 1 + p as i64), p);
        let t = mul_mod(sub_mod(full, jumps, p), scale, p);
        out[e as usize] = add_mod(out[e as usize], t, p);
    }
    out
}

/// Brute-force variants of the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OracleVariant {
    /// weights `lambda_a(c) a^{-1}` over `a` in `[1, f/2]`
    #[default]
    Literal,
    /// weights `(lambda_a(c) + (1 - c)/2) a^{-1}`, the exact restriction of
    /// the Spiegel transform; invariant under `a -> f - a`
    Symmetrized,
}

/// Reference measure over the literal interval `a` in `[1, f/2]`, with
/// `a'` stepped by `c^{-1}` and the index computed by discrete logs.
pub fn measure_vector_oracle(setup: &TwistSetup, variant: OracleVariant) -> Result<MeasureVector> {
    let (p, f, c) = (setup.p, setup.f, setup.c);
    if f > ORACLE_LIMIT {
        return Err(Error::OracleScaleExceeded { f, limit: ORACLE_LIMIT });
    }
    let n = setup.n();
    let c_inv = inv_mod(c, f).ok_or(Error::NotCoprime { a: c, m: f })?;
    let shift: u64 = match variant {
        OracleVariant::Literal => 0,
        OracleVariant::Symmetrized => {
            if p == 2 {
                // c is odd here, so (1 - c)/2 is an integer
                (((1 - c as i64) / 2).rem_euclid(2)) as u64
            } else {
                mul_mod(sub_mod(1, c % p, p), inv_mod(2, p).unwrap(), p)
            }
        }
    };
    let mut coeffs = vec![0u64; n as usize];
    let mut a_prime = 0u64;
    for a in 1..=f / 2 {
        a_prime = add_mod(a_prime, c_inv, f);
        if gcd(a, f) != 1 {
            continue;
        }
        let ap = if a_prime == 0 { f } else { a_prime };
        let lam = ((ap as u128 * c as u128 - a as u128) / f as u128) as u64;
        let weight = if p == 2 { 1 } else { inv_mod(a % p, p).unwrap() };
        let e = setup.character.index(a)? as usize;
        let term = mul_mod(add_mod(lam % p, shift, p), weight, p);
        coeffs[e] = add_mod(coeffs[e], term, p);
    }
    Ok(MeasureVector { p, n, coeffs })
}
