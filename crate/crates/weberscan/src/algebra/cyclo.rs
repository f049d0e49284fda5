//! Cyclotomic polynomials and their factorization over F_p.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::arith::{factorize, gcd, multiplicative_order, pow_mod, primitive_root_prime};
use super::poly::{poly_gcd_fp, ModPoly};
use crate::{Error, Result};

/// Phi_n with integer coefficients, ascending. Built on the squarefree
/// kernel r of n via `Phi_{rq}(x) = Phi_r(x^q) / Phi_r(x)`, then
/// `Phi_n(x) = Phi_r(x^(n/r))`.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    let mut poly: Vec<i64> = vec![-1, 1];
    let mut r = 1u64;
    for (q, _) in factorize(n) {
        let q = q as usize;
        let mut stretched = vec![0i64; (poly.len() - 1) * q + 1];
        for (i, &c) in poly.iter().enumerate() {
            stretched[i * q] = c;
        }
        poly = exact_div_int(&stretched, &poly);
        r *= q as u64;
    }
    let k = (n / r) as usize;
    if k == 1 {
        return poly;
    }
    let mut out = vec![0i64; (poly.len() - 1) * k + 1];
    for (i, &c) in poly.iter().enumerate() {
        out[i * k] = c;
    }
    out
}

/// Exact division by a monic integer polynomial.
fn exact_div_int(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut r = num.to_vec();
    let mut q = vec![0i64; num.len() - dd];
    for i in (dd..num.len()).rev() {
        let c = r[i];
        q[i - dd] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                r[i - dd + j] -= c * dj;
            }
        }
    }
    debug_assert!(r[..dd].iter().all(|&c| c == 0), "division was not exact");
    q
}

/// Phi_n reduced mod p.
pub fn cyclotomic_mod(n: u64, p: u64) -> ModPoly {
    ModPoly::from_i64(p, &cyclotomic_poly(n))
}

/// The monic irreducible factors of Phi_N over F_p, each of degree
/// `ord_N(p)`, sorted by ascending coefficient sequence.
pub fn factor_cyclotomic_mod_p(n: u64, p: u64) -> Result<Vec<ModPoly>> {
    if !super::arith::is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if n % p == 0 {
        return Err(Error::RamifiedPrime { n, p });
    }
    let mut factors = if n == 1 || p % n == 1 {
        split_factors(n, p)
    } else {
        let d = multiplicative_order(p % n, n) as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed(n, p));
        equal_degree_factor(&cyclotomic_mod(n, p), d, &mut rng)?
    };
    sort_factors(&mut factors);
    Ok(factors)
}

/// Linear factors `x - r^k`, `gcd(k, N) = 1`, for `p = 1 mod N`.
pub fn split_factors(n: u64, p: u64) -> Vec<ModPoly> {
    let r = pow_mod(primitive_root_prime(p), (p - 1) / n, p);
    (1..=n)
        .filter(|&k| gcd(k, n) == 1)
        .map(|k| ModPoly::linear_root(p, pow_mod(r, k, p)))
        .collect()
}

pub(crate) fn sort_factors(f: &mut [ModPoly]) {
    f.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
}

fn seed(n: u64, p: u64) -> u64 {
    n.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ p.rotate_left(32)
}

/// Cantor-Zassenhaus splitting of a squarefree monic `f` whose
/// irreducible factors all have degree `d`.
pub fn equal_degree_factor(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<ModPoly>> {
    let deg = f.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(Vec::new());
    }
    assert!(d >= 1 && deg % d == 0, "degree {deg} is not a multiple of {d}");
    let mut done = Vec::new();
    let mut todo = vec![f.monic()?];
    while let Some(g) = todo.pop() {
        if g.degree() == Some(d) {
            done.push(g);
            continue;
        }
        loop {
            let probe = splitting_probe(&g, d, rng)?;
            let h = poly_gcd_fp(&probe, &g)?;
            let dh = h.degree().unwrap_or(0);
            if dh > 0 && Some(dh) != g.degree() {
                let other = g.divrem(&h)?.0;
                todo.push(h);
                todo.push(other.monic()?);
                break;
            }
        }
    }
    Ok(done)
}

/// A polynomial whose gcd with `g` is a proper factor about half the time:
/// `a^((p^d - 1)/2) - 1` for odd p, the trace `a + a^2 + ... + a^(2^(d-1))`
/// for p = 2.
fn splitting_probe(g: &ModPoly, d: usize, rng: &mut ChaCha8Rng) -> Result<ModPoly> {
    let p = g.modulus();
    let n = g.degree().unwrap();
    let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
    let a = ModPoly::new(p, coeffs);
    if p == 2 {
        let mut t = a.clone();
        let mut acc = a;
        for _ in 1..d {
            t = t.mul(&t).rem(g)?;
            acc = acc.add(&t);
        }
        return Ok(acc);
    }
    // a^(1 + p + ... + p^(d-1)) by iterated Frobenius, then the (p-1)/2 power
    let mut t = a.clone();
    let mut acc = a;
    for _ in 1..d {
        t = t.pow_mod(p as u128, g)?;
        acc = acc.mul(&t).rem(g)?;
    }
    let b = acc.pow_mod(((p - 1) / 2) as u128, g)?;
    Ok(b.sub(&ModPoly::one(p)))
}
