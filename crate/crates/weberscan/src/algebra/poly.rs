//! Dense polynomials over Z/mZ.

use std::fmt;

use super::arith::{add_mod, inv_mod, is_prime_u64, mul_mod, pow_mod, sub_mod};
use crate::{Error, Result};

/// Largest modulus accepted by [`ModPoly`].
pub const MAX_MODULUS: u64 = 1 << 62;

/// Polynomial over Z/mZ, ascending coefficients, no trailing zeros. The
/// zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    pub fn new(modulus: u64, mut coeffs: Vec<u64>) -> Self {
        assert!((1..=MAX_MODULUS).contains(&modulus), "modulus out of range");
        for c in coeffs.iter_mut() {
            *c %= modulus;
        }
        let mut p = ModPoly { modulus, coeffs };
        p.trim();
        p
    }

    pub fn from_i64(modulus: u64, coeffs: &[i64]) -> Self {
        let m = modulus as i128;
        ModPoly::new(
            modulus,
            coeffs.iter().map(|&c| (c as i128).rem_euclid(m) as u64).collect(),
        )
    }

    pub fn zero(modulus: u64) -> Self {
        ModPoly::new(modulus, Vec::new())
    }

    pub fn constant(modulus: u64, c: u64) -> Self {
        ModPoly::new(modulus, vec![c])
    }

    pub fn one(modulus: u64) -> Self {
        ModPoly::constant(modulus, 1)
    }

    /// `c * x^k`
    pub fn monomial(modulus: u64, c: u64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        ModPoly::new(modulus, v)
    }

    /// `x - r`
    pub fn linear_root(modulus: u64, r: u64) -> Self {
        ModPoly::new(modulus, vec![sub_mod(0, r % modulus, modulus), 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    fn check_same(&self, other: &ModPoly) {
        assert_eq!(self.modulus, other.modulus, "mismatched moduli");
    }

    pub fn add(&self, other: &ModPoly) -> ModPoly {
        self.check_same(other);
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| add_mod(self.coeff(i), other.coeff(i), m)).collect();
        ModPoly::new(m, v)
    }

    pub fn sub(&self, other: &ModPoly) -> ModPoly {
        self.check_same(other);
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| sub_mod(self.coeff(i), other.coeff(i), m)).collect();
        ModPoly::new(m, v)
    }

    pub fn neg(&self) -> ModPoly {
        let m = self.modulus;
        ModPoly::new(m, self.coeffs.iter().map(|&c| sub_mod(0, c, m)).collect())
    }

    pub fn scale(&self, s: u64) -> ModPoly {
        let m = self.modulus;
        let s = s % m;
        ModPoly::new(m, self.coeffs.iter().map(|&c| mul_mod(c, s, m)).collect())
    }

    pub fn mul(&self, other: &ModPoly) -> ModPoly {
        self.check_same(other);
        ModPoly::new(self.modulus, mul_coeffs(&self.coeffs, &other.coeffs, self.modulus))
    }

    pub fn eval(&self, x: u64) -> u64 {
        let m = self.modulus;
        let x = x % m;
        self.coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, m), c, m))
    }

    /// Quotient and remainder; the divisor's leading coefficient must be a
    /// unit.
    pub fn divrem(&self, d: &ModPoly) -> Result<(ModPoly, ModPoly)> {
        self.check_same(d);
        let m = self.modulus;
        let dd = d
            .degree()
            .ok_or_else(|| Error::InvalidInput("division by the zero polynomial".into()))?;
        let lc_inv = inv_mod(d.lead(), m)
            .ok_or_else(|| Error::InvalidInput("leading coefficient is not a unit".into()))?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((ModPoly::zero(m), self.clone()));
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            let t = mul_mod(c, lc_inv, m);
            q[i - dd] = t;
            let base = i - dd;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[base + j] = sub_mod(r[base + j], mul_mod(t, dj, m), m);
            }
        }
        r.truncate(dd);
        Ok((ModPoly::new(m, q), ModPoly::new(m, r)))
    }

    pub fn rem(&self, d: &ModPoly) -> Result<ModPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Scale to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Result<ModPoly> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = inv_mod(self.lead(), self.modulus)
            .ok_or_else(|| Error::InvalidInput("leading coefficient is not a unit".into()))?;
        Ok(self.scale(inv))
    }

    /// `self^e mod m`
    pub fn pow_mod(&self, mut e: u128, modp: &ModPoly) -> Result<ModPoly> {
        let mut base = self.rem(modp)?;
        let mut acc = ModPoly::one(self.modulus).rem(modp)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modp)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(modp)?;
            }
        }
        Ok(acc)
    }
}

/// Schoolbook product of coefficient slices modulo `m`.
pub(crate) fn mul_coeffs(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len() + b.len() - 1;
    if m <= 1 << 48 {
        // products stay below 2^96, so 2^32 of them fit in a u128
        let mut acc = vec![0u128; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u128;
            for (slot, &y) in acc[i..].iter_mut().zip(b) {
                *slot += x * y as u128;
            }
        }
        acc.into_iter().map(|v| (v % m as u128) as u64).collect()
    } else {
        let mut acc = vec![0u64; n];
        for (i, &x) in a.iter().enumerate() {
            for (slot, &y) in acc[i..].iter_mut().zip(b) {
                *slot = add_mod(*slot, mul_mod(x, y, m), m);
            }
        }
        acc
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("modulus {p} is not prime")))
    }
}

/// Monic gcd over F_p. `gcd(a, 0)` is `a` made monic.
pub fn poly_gcd_fp(a: &ModPoly, b: &ModPoly) -> Result<ModPoly> {
    a.check_same(b);
    require_prime(a.modulus)?;
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y)?;
        x = y;
        y = r;
    }
    x.monic()
}

/// Extended Euclid over F_p: returns `(g, s, t)` with `s*a + t*b = g`
/// and `g` monic.
pub fn poly_xgcd_fp(a: &ModPoly, b: &ModPoly) -> Result<(ModPoly, ModPoly, ModPoly)> {
    a.check_same(b);
    let m = a.modulus;
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (ModPoly::one(m), ModPoly::zero(m));
    let (mut t0, mut t1) = (ModPoly::zero(m), ModPoly::one(m));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    if r0.is_zero() {
        return Ok((r0, s0, t0));
    }
    let inv = inv_mod(r0.lead(), m)
        .ok_or_else(|| Error::InvalidInput("leading coefficient is not a unit".into()))?;
    Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
}

/// Res(a, b) over F_p by the Euclidean recurrence
/// `Res(a, b) = (-1)^(deg a deg b) lc(b)^(deg a - deg r) Res(b, r)`, `r = a mod b`.
pub fn resultant_fp(a: &ModPoly, b: &ModPoly) -> Result<u64> {
    a.check_same(b);
    let p = a.modulus;
    require_prime(p)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidInput("resultant of two zero polynomials".into()));
    }
    let (mut f, mut g) = (a.clone(), b.clone());
    let mut acc = 1u64;
    loop {
        let (df, dg) = match (f.degree(), g.degree()) {
            (_, None) | (None, _) => {
                // a zero argument against a constant gives 1 by convention
                let other = if f.is_zero() { &g } else { &f };
                return Ok(if other.degree() == Some(0) { acc } else { 0 });
            }
            (Some(df), Some(dg)) => (df, dg),
        };
        if dg == 0 {
            return Ok(mul_mod(acc, pow_mod(g.lead(), df as u64, p), p));
        }
        if df == 0 {
            return Ok(mul_mod(acc, pow_mod(f.lead(), dg as u64, p), p));
        }
        let r = f.rem(&g)?;
        let Some(dr) = r.degree() else {
            return Ok(0);
        };
        if df % 2 == 1 && dg % 2 == 1 {
            acc = sub_mod(0, acc, p);
        }
        acc = mul_mod(acc, pow_mod(g.lead(), (df - dr) as u64, p), p);
        f = g;
        g = r;
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}*x^{i}")?,
            }
        }
        write!(f, " (mod {})", self.modulus)
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
