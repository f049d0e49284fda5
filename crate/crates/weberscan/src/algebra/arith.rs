//! Word-sized modular arithmetic. Every product goes through a 128-bit
//! intermediate, so moduli up to 2^63 are safe.

use std::collections::HashMap;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, or `None` when they share a factor.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Exponent of the prime `l` in `n` (n > 0).
pub fn valuation(mut n: u64, l: u64) -> u32 {
    debug_assert!(n > 0 && l > 1);
    let mut v = 0;
    while n % l == 0 {
        n /= l;
        v += 1;
    }
    v
}

/// Deterministic Miller-Rabin. The first twelve primes as witnesses are
/// enough for every 64-bit input.
pub fn is_prime_u64(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &w in &WITNESSES {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Trial-division factorization, ascending primes. Intended for the
/// small integers the scans handle (N, p - 1, conductors).
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for l in [2u64, 3] {
        if n % l == 0 {
            let e = valuation(n, l);
            n /= l.pow(e);
            out.push((l, e));
        }
    }
    let mut l = 5u64;
    while l * l <= n {
        for cand in [l, l + 2] {
            if n % cand == 0 {
                let e = valuation(n, cand);
                n /= cand.pow(e);
                out.push((cand, e));
            }
        }
        l += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (l, e) in factorize(n) {
        let len = out.len();
        let mut pw = 1;
        for _ in 0..e {
            pw *= l;
            for i in 0..len {
                out.push(out[i] * pw);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(l, _)| acc / l * (l - 1))
}

/// Order of `a` in a group of order `group_order` whose factorization is
/// supplied. `a` must be a unit mod `m`.
pub fn order_in(a: u64, m: u64, group_order: u64, factors: &[(u64, u32)]) -> u64 {
    let mut ord = group_order;
    for &(l, _) in factors {
        while ord % l == 0 && pow_mod(a, ord / l, m) == 1 {
            ord /= l;
        }
    }
    ord
}

/// Multiplicative order of `a` modulo `m`; `a` must be coprime to `m`.
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    let phi = euler_phi(m);
    order_in(a, m, phi, &factorize(phi))
}

/// Smallest primitive root modulo an odd prime power `l^k` (or 2, 4).
pub fn primitive_root_prime_power(l: u64, k: u32) -> u64 {
    let m = l.pow(k);
    if m == 2 {
        return 1;
    }
    if m == 4 {
        return 3;
    }
    assert!(l != 2, "(Z/2^k)^x is not cyclic for k > 2");
    let pf = factorize(l - 1);
    let l2 = if k >= 2 { l * l } else { l };
    (2..m)
        .find(|&g| {
            g % l != 0
                && pf.iter().all(|&(q, _)| pow_mod(g, (l - 1) / q, l) != 1)
                && (k < 2 || pow_mod(g, l - 1, l2) != 1)
        })
        .expect("a primitive root exists")
}

pub fn primitive_root_prime(p: u64) -> u64 {
    primitive_root_prime_power(p, 1)
}

/// Solve `g^x = a (mod m)` where `g` has order `n` with the given
/// factorization. Pohlig-Hellman over the prime powers of `n`, baby-step
/// giant-step inside each prime.
pub fn discrete_log(a: u64, g: u64, m: u64, n: u64, n_factors: &[(u64, u32)]) -> Option<u64> {
    let mut residues = Vec::with_capacity(n_factors.len());
    for &(q, e) in n_factors {
        let qe = q.pow(e);
        let cof = n / qe;
        let gq = pow_mod(g, cof, m);
        let aq = pow_mod(a, cof, m);
        // gamma has order q
        let gamma = pow_mod(gq, qe / q, m);
        let gq_inv = inv_mod(gq, m)?;
        let mut x = 0u64;
        let mut qk = 1u64;
        for _ in 0..e {
            let h = pow_mod(mul_mod(aq, pow_mod(gq_inv, x, m), m), qe / qk / q, m);
            let d = bsgs(h, gamma, m, q)?;
            x += d * qk;
            qk *= q;
        }
        residues.push((x, qe));
    }
    let mut x = 0u64;
    let mut modulus = 1u64;
    for (r, qe) in residues {
        x = crt_pair(x, modulus, r, qe)?;
        modulus *= qe;
    }
    Some(x)
}

/// Baby-step giant-step for `g^x = h` with `g` of order `n`.
fn bsgs(h: u64, g: u64, m: u64, n: u64) -> Option<u64> {
    if n <= 64 {
        let mut cur = 1u64;
        for x in 0..n {
            if cur == h {
                return Some(x);
            }
            cur = mul_mod(cur, g, m);
        }
        return None;
    }
    let s = (n as f64).sqrt().ceil() as u64;
    let mut table = HashMap::with_capacity(s as usize);
    let mut cur = 1u64;
    for j in 0..s {
        table.entry(cur).or_insert(j);
        cur = mul_mod(cur, g, m);
    }
    let giant = inv_mod(pow_mod(g, s, m), m)?;
    let mut y = h;
    for i in 0..=s {
        if let Some(&j) = table.get(&y) {
            let x = i * s + j;
            if x < n {
                return Some(x);
            }
        }
        y = mul_mod(y, giant, m);
    }
    None
}

/// The `x` in `[0, m1*m2)` with `x = r1 mod m1`, `x = r2 mod m2`, for
/// coprime moduli.
pub fn crt_pair(r1: u64, m1: u64, r2: u64, m2: u64) -> Option<u64> {
    let m = m1 as u128 * m2 as u128;
    let inv = inv_mod(m1 % m2, m2)?;
    let t = mul_mod(sub_mod(r2 % m2, r1 % m2, m2), inv, m2);
    Some(((r1 as u128 + m1 as u128 * t as u128) % m) as u64)
}

/// Multiplication by a fixed constant modulo `m < 2^63` with Shoup's
/// precomputed quotient.
#[derive(Clone, Copy, Debug)]
pub struct ShoupMul {
    w: u64,
    w_pre: u64,
    m: u64,
}

impl ShoupMul {
    pub fn new(w: u64, m: u64) -> Self {
        assert!(m < 1 << 63 && w < m);
        let w_pre = (((w as u128) << 64) / m as u128) as u64;
        ShoupMul { w, w_pre, m }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64) -> u64 {
        let q = ((a as u128 * self.w_pre as u128) >> 64) as u64;
        let r = a.wrapping_mul(self.w).wrapping_sub(q.wrapping_mul(self.m));
        if r >= self.m {
            r - self.m
        } else {
            r
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes_match_sieve() {
        let mut sieve = vec![true; 5000];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..5000 {
            if sieve[i] {
                for j in (i * i..5000).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), sieve[n as usize], "{n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_rejected() {
        // strong pseudoprime to every base up to 23
        assert!(!is_prime_u64(3_825_123_056_546_413_051));
        assert!(!is_prime_u64(2_152_302_898_747));
        assert!(is_prime_u64((1 << 61) - 1));
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(81), vec![1, 3, 9, 27, 81]);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root_prime(7), 3);
        assert_eq!(primitive_root_prime(13), 2);
        assert_eq!(primitive_root_prime(41), 6);
        assert_eq!(primitive_root_prime_power(3, 2), 2);
        assert_eq!(primitive_root_prime_power(5, 3), 2);
        assert_eq!(primitive_root_prime_power(29, 2), 2);
        assert_eq!(multiplicative_order(primitive_root_prime_power(7, 3), 343), 294);
    }

    #[test]
    fn dlog_roundtrip() {
        let m = 1_000_003u64;
        let g = primitive_root_prime(m);
        let n = m - 1;
        let f = factorize(n);
        for x in [0u64, 1, 17, 500_000, 999_999] {
            let a = pow_mod(g, x, m);
            assert_eq!(discrete_log(a, g, m, n, &f), Some(x));
        }
    }

    #[test]
    fn shoup_agrees_with_u128() {
        let m = (1u64 << 62) + 135;
        for (w, a) in [(3u64, m - 1), (m - 2, m - 3), (12345, 678910)] {
            assert_eq!(ShoupMul::new(w, m).mul(a), mul_mod(w, a, m));
        }
    }
}
