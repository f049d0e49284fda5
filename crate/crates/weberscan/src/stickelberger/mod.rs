//! The mod-p twisted Stickelberger measure of K = Q(N) and the test for
//! non-trivial components of the p-torsion group T_K.
//!
//! For the conductor f = q f_N of K(mu_q) (q = p, or 4 when p = 2) and a
//! multiplier c prime to f, the measure is
//!
//! ```text
//! S(x) = sum over a half-system of a in (Z/f)^x of  lambda_a(c) * a^{-1} * x^{e(a)}  (mod p)
//! ```
//!
//! with `lambda_a(c) = (a' c - a) / f`, `a' = a c^{-1} mod f` in `[1, f]`,
//! and `e(a)` the character index of `a`. An irreducible factor of Phi_N
//! mod p dividing S flags the corresponding component of T_K.

mod annihilator;
mod measure;
pub mod scan;

pub use annihilator::{annihilator_test, AnnihilatorReport};
pub use measure::{
    measure_vector, measure_vector_oracle, measure_vector_with, MeasureMethod, MeasureVector,
    OracleVariant, ORACLE_LIMIT,
};
pub use scan::{scan_torsion, PBound, SplitFilter, TorsionScan};

use crate::algebra::arith::{crt_pair, gcd, inv_mod, mul_mod, primitive_root_prime};
use crate::algebra::is_prime_u64;
use crate::layers::{LayerCharacter, LayerSpec};
use crate::{Error, Result};

/// Largest prime accepted by the measure routines.
pub const MAX_P: u64 = 1 << 31;

/// `lambda_a(c) = (a' c - a) / f` with `a' c = a (mod f)`, `a'` in `[1, f]`.
pub fn lambda(a: u64, c: u64, f: u64) -> Result<u64> {
    if gcd(a % f, f) != 1 {
        return Err(Error::NotCoprime { a, m: f });
    }
    let c_inv = inv_mod(c, f).ok_or(Error::NotCoprime { a: c, m: f })?;
    let mut a_prime = mul_mod(a % f, c_inv, f);
    if a_prime == 0 {
        a_prime = f;
    }
    let num = a_prime as u128 * c as u128 - a as u128;
    debug_assert_eq!(num % f as u128, 0);
    Ok((num / f as u128) as u64)
}

/// Which half-system the measure is summed over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum HalfSystem {
    /// Representatives modulo complex conjugation: odd N halves the first
    /// exponent range, even N keeps the classes a = 1 mod 4.
    #[default]
    Halved,
    /// Every class of (Z/f_N)^x. Doubles S for odd p; not available for p = 2.
    Full,
}

/// One factor of (Z/f_N)^x with its CRT-adjusted generator.
#[derive(Clone, Debug)]
pub struct Component {
    /// `Q_i`
    pub modulus: u64,
    /// generator of the relevant cyclic group mod `Q_i` (5 for the 2-part)
    pub raw: u64,
    /// `= raw mod Q_i`, `= 1 mod f / Q_i`
    pub adjusted: u64,
    /// exponent range enumerated for this component
    pub range: u64,
    /// `N / q_i`, the index step per unit of exponent
    pub step: u64,
    /// whether the sign class -1 mod 2^(n+2) is also enumerated
    pub with_sign: bool,
}

/// Everything the measure loop needs for one pair (N, p).
#[derive(Clone, Debug)]
pub struct TwistSetup {
    pub layer: LayerSpec,
    pub p: u64,
    /// p for odd p, 4 for p = 2
    pub q: u64,
    pub f_n: u64,
    /// `q f_N`
    pub f: u64,
    pub c: u64,
    pub components: Vec<Component>,
    /// primitive root mod p, adjusted to 1 mod f/p (odd p only)
    pub g: Option<u64>,
    pub g_raw: Option<u64>,
    pub half: HalfSystem,
    pub character: LayerCharacter,
}

impl TwistSetup {
    pub fn n(&self) -> u64 {
        self.layer.n
    }

    /// Character index of `a` (coprime to f).
    pub fn char_index(&self, a: u64) -> Result<u64> {
        if gcd(a % self.f, self.f) != 1 {
            return Err(Error::NotCoprime { a, m: self.f });
        }
        self.character.index(a)
    }

    /// Number of elements of the half-system.
    pub fn half_system_size(&self) -> u64 {
        let outer: u64 = self
            .components
            .iter()
            .map(|c| c.range * if c.with_sign { 2 } else { 1 })
            .product();
        outer * if self.p == 2 { 1 } else { self.p - 1 }
    }
}

/// Character index of `a`; see [`TwistSetup::char_index`].
pub fn char_index(a: u64, setup: &TwistSetup) -> Result<u64> {
    setup.char_index(a)
}

/// Lift `r mod m` to the residue mod `f` that is `1 mod f/m`.
fn adjust(r: u64, m: u64, f: u64) -> u64 {
    crt_pair(r % m, m, 1 % (f / m), f / m).expect("coprime moduli")
}

pub fn build_twist(layer: &LayerSpec, p: u64, c_hint: Option<u64>) -> Result<TwistSetup> {
    build_twist_with(layer, p, c_hint, HalfSystem::Halved)
}

pub fn build_twist_with(
    layer: &LayerSpec,
    p: u64,
    c_hint: Option<u64>,
    half: HalfSystem,
) -> Result<TwistSetup> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if p >= MAX_P {
        return Err(Error::Overflow(format!("p = {p} exceeds 2^31")));
    }
    if layer.n % p == 0 {
        return Err(Error::RamifiedPrime { n: layer.n, p });
    }
    if p == 2 && half == HalfSystem::Full {
        return Err(Error::Unsupported("the full system doubles S, which vanishes mod 2".into()));
    }
    let character = LayerCharacter::new(layer);
    let cd = &character.conductor;
    let q = if p == 2 { 4 } else { p };
    let f_n = cd.f_n;
    let f = (q as u128 * f_n as u128)
        .try_into()
        .ok()
        .filter(|&f: &u64| f < (1 << 62) / 64)
        .ok_or_else(|| Error::Overflow(format!("conductor q f_N too large for N = {}", layer.n)))?;

    let mut components = Vec::new();
    for (i, &(l, _)) in layer.factors.iter().enumerate() {
        let m = cd.moduli[i];
        let qi = cd.prime_powers[i];
        let raw = character.generators[i];
        let (range, with_sign) = if l == 2 {
            (qi, half == HalfSystem::Full)
        } else {
            let phi = qi * (l - 1);
            let halve = i == 0 && !layer.is_even() && p != 2 && half == HalfSystem::Halved;
            (if halve { phi / 2 } else { phi }, false)
        };
        components.push(Component {
            modulus: m,
            raw,
            adjusted: adjust(raw, m, f),
            range,
            step: cd.cofactors[i] % layer.n,
            with_sign,
        });
    }
    let (g, g_raw) = if p == 2 {
        (None, None)
    } else {
        let gr = primitive_root_prime(p);
        (Some(adjust(gr, p, f)), Some(gr))
    };

    let mut c = c_hint.unwrap_or(2).max(2);
    let mut setup = TwistSetup {
        layer: layer.clone(),
        p,
        q,
        f_n,
        f,
        c: 0,
        components,
        g,
        g_raw,
        half,
        character,
    };
    let limit = c + 10_000;
    loop {
        if c > limit {
            return Err(Error::Internal(format!("no multiplier c found for N = {}, p = {p}", layer.n)));
        }
        if gcd(c, f) == 1 && setup.character.index(c)? != 0 {
            break;
        }
        c += 1;
    }
    setup.c = c;
    Ok(setup)
}
