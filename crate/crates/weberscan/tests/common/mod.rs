//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the library.
#![allow(dead_code)]

use std::collections::HashMap;

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn mulm(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

pub fn powm(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, m);
        }
        a = mulm(a, a, m);
        e >>= 1;
    }
    r
}

pub fn invm(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "{a} not invertible mod {m}");
    t0.rem_euclid(m as i128) as u64
}

pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Multiplicative order by repeated multiplication.
pub fn order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = mulm(x, a, m);
        k += 1;
    }
    k
}

pub fn phi(m: u64) -> u64 {
    (1..=m).filter(|&a| gcd(a, m) == 1).count() as u64
}

pub fn smallest_primitive_root(m: u64) -> u64 {
    let ph = phi(m);
    (2..m).find(|&g| gcd(g, m) == 1 && order(g, m) == ph).expect("cyclic group")
}

/// The character of order N of conductor f_N, by discrete-log tables.
pub struct BruteChar {
    pub n: u64,
    pub f_n: u64,
    moduli: Vec<u64>,
    qs: Vec<u64>,
    tables: Vec<HashMap<u64, u64>>,
}

impl BruteChar {
    pub fn new(n: u64) -> Self {
        let mut moduli = Vec::new();
        let mut qs = Vec::new();
        let mut tables = Vec::new();
        for (l, e) in factor(n) {
            let q = l.pow(e);
            let m = if l == 2 { 4 * q } else { l * q };
            let g = if l == 2 { 5 } else { smallest_primitive_root(m) };
            let mut table = HashMap::new();
            let mut x = 1u64;
            let mut k = 0u64;
            loop {
                table.insert(x, k);
                if l == 2 {
                    table.insert(m - x, k);
                }
                x = mulm(x, g, m);
                k += 1;
                if x == 1 {
                    break;
                }
            }
            moduli.push(m);
            qs.push(q);
            tables.push(table);
        }
        BruteChar { n, f_n: moduli.iter().product(), moduli, qs, tables }
    }

    pub fn index(&self, a: u64) -> u64 {
        let mut e = 0u64;
        for i in 0..self.moduli.len() {
            let u = self.tables[i][&(a % self.moduli[i])] % self.qs[i];
            e = (e + u * (self.n / self.qs[i])) % self.n;
        }
        e
    }
}

/// Smallest c >= 2 prime to f with non-trivial character value.
pub fn brute_multiplier(chi: &BruteChar, f: u64) -> u64 {
    (2..).find(|&c| gcd(c, f) == 1 && chi.index(c) != 0).unwrap()
}

pub fn lambda(a: u64, c: u64, f: u64) -> u64 {
    let ap = (1..=f).find(|&x| mulm(x, c, f) == a % f).unwrap();
    (ap * c - a) / f
}

/// The measure over the interval [1, f/2] with the weight
/// (lambda_a + (1 - c)/2) a^{-1}, odd p only.
pub fn interval_measure(n: u64, p: u64) -> (u64, Vec<u64>) {
    assert!(p > 2);
    let chi = BruteChar::new(n);
    let f = p * chi.f_n;
    let c = brute_multiplier(&chi, f);
    let c_inv = invm(c, f);
    let shift = mulm((1 + p - c % p) % p, invm(2, p), p);
    let mut s = vec![0u64; n as usize];
    for a in 1..=f / 2 {
        if gcd(a, f) != 1 {
            continue;
        }
        let mut ap = mulm(a, c_inv, f);
        if ap == 0 {
            ap = f;
        }
        let lam = ((ap as u128 * c as u128 - a as u128) / f as u128) as u64;
        let w = mulm((lam % p + shift) % p, invm(a % p, p), p);
        let e = chi.index(a) as usize;
        s[e] = (s[e] + w) % p;
    }
    (c, s)
}

/// The p = 2 measure: parity of lambda_a over a = 1 mod 4 in [1, 4 f_N].
pub fn measure_p2(n: u64) -> (u64, Vec<u64>) {
    let chi = BruteChar::new(n);
    let f = 4 * chi.f_n;
    let c = brute_multiplier(&chi, f);
    let mut s = vec![0u64; n as usize];
    for a in (1..f).step_by(4) {
        if gcd(a, f) != 1 {
            continue;
        }
        let lam = lambda(a, c, f);
        let e = chi.index(a) as usize;
        s[e] ^= lam & 1;
    }
    (c, s)
}

/// Integer cyclotomic polynomial by exact division of x^n - 1.
pub fn cyclotomic(n: u64) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        let den = cyclotomic(d);
        num = int_div_exact(&num, &den);
    }
    num
}

fn int_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    assert_eq!(b[db], 1);
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let t = r[i + db];
        q[i] = t;
        for j in 0..=db {
            r[i + j] -= t * b[j];
        }
    }
    assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn poly_mod(v: &[i64], p: u64) -> Vec<u64> {
    trim(v.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect())
}

pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn prem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let li = invm(b[db], p);
    while r.len() > db {
        let t = mulm(r[r.len() - 1], li, p);
        let off = r.len() - 1 - db;
        for j in 0..=db {
            r[off + j] = (r[off + j] + p - mulm(t, b[j], p)) % p;
        }
        r = trim(r);
    }
    r
}

pub fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulm(x, y, p)) % p;
        }
    }
    trim(out)
}

pub fn pmonic(a: &[u64], p: u64) -> Vec<u64> {
    let li = invm(*a.last().unwrap(), p);
    a.iter().map(|&c| mulm(c, li, p)).collect()
}

pub fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = prem(&x, &y, p);
        x = y;
        y = r;
    }
    pmonic(&x, p)
}

pub fn peval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (mulm(acc, x, p) + c) % p)
}

/// Determinant mod p by elimination.
pub fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| m[i][col] % p != 0) else { return 0 };
        if piv != col {
            m.swap(piv, col);
            det = (p - det) % p;
        }
        det = mulm(det, m[col][col], p);
        let inv = invm(m[col][col], p);
        for i in col + 1..n {
            let f = mulm(m[i][col], inv, p);
            let pivot = m[col].clone();
            for (x, &y) in m[i][col..].iter_mut().zip(&pivot[col..]) {
                *x = (*x + p - mulm(f, y, p)) % p;
            }
        }
    }
    det
}

/// Resultant from the Sylvester matrix.
pub fn sylvester_resultant(a: &[u64], b: &[u64], p: u64) -> u64 {
    let (da, db) = (a.len() - 1, b.len() - 1);
    let size = da + db;
    let mut m = vec![vec![0u64; size]; size];
    for i in 0..db {
        for (j, &c) in a.iter().rev().enumerate() {
            m[i][i + j] = c % p;
        }
    }
    for i in 0..da {
        for (j, &c) in b.iter().rev().enumerate() {
            m[db + i][i + j] = c % p;
        }
    }
    det_mod(m, p)
}

/// F_p-rank by elimination.
pub fn rank_mod(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][col] % p != 0) else { continue };
        m.swap(piv, r);
        let inv = invm(m[r][col], p);
        for i in 0..rows {
            if i != r && m[i][col] != 0 {
                let f = mulm(m[i][col], inv, p);
                let pivot = m[r].clone();
                for (x, &y) in m[i].iter_mut().zip(&pivot) {
                    *x = (*x + p - mulm(f, y, p)) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Arithmetic in Z[sqrt 2] / p^2 through the two embeddings
/// `sqrt 2 -> +-s`, with `s^2 = 2 mod p^2`; requires p = +-1 mod 8.
pub fn sqrt2_mod_p2(p: u64) -> u64 {
    let s0 = (1..p).find(|&s| mulm(s, s, p) == 2).expect("2 is a square mod p");
    let m = p * p;
    // Newton: s <- s - (s^2 - 2) / (2 s)
    let num = (mulm(s0, s0, m) + m - 2) % m;
    let corr = mulm(num, invm(2 * s0 % m, m), m);
    (s0 + m - corr) % m
}

pub fn fermat_quotient(x: u64, p: u64) -> u64 {
    let m = p * p;
    (powm(x, p - 1, m) + m - 1) % m / p
}
