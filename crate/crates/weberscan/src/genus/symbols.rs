use serde::{Deserialize, Serialize};

use super::units::{fermat_quotient, find_uniformizer_from, UnitSystem};
use crate::algebra::arith::add_mod;
use crate::algebra::{poly_gcd_fp, rank_mod_p, CycloRingElem, ModPoly};
use crate::exec::Exec;
use crate::{Error, Result};

/// Images of the normic symbols of eta at the primes `p_k` above p, as
/// Fermat quotients of `Norm_{K/Q}(alpha_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolRow {
    pub p: u64,
    pub n: u64,
    /// the uniformizer defining `p_k = (p, sigma_k(eta) - a)`
    pub a: u64,
    pub entries: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum MatrixMode {
    /// rank from the row alone
    #[default]
    Circulant,
    /// every entry computed, circulant structure checked (N <= 32)
    Full,
}

/// Largest N for which the full matrix is computed.
pub const FULL_MATRIX_MAX_N: u64 = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolMatrix {
    pub row: SymbolRow,
    pub full: Option<Vec<Vec<u64>>>,
    pub rank: usize,
    /// `N - 1 - rank`: the genus group of K.Q(p) has order p^genus_exponent
    pub genus_exponent: usize,
}

/// For each k, the factor `t_k = m1 / (m1 + m2)` with `m1 = A_k^2` and
/// `m2 = (prod_{i != k} A_i)^2`, `A_i = sigma_i(eta) - a`. Then
/// `alpha = E + (1 - E) t_k` is `E` mod `p_k^2` and 1 at the other primes.
fn congruence_factors(us: &UnitSystem, a: u64, exec: &Exec) -> Result<Vec<CycloRingElem>> {
    let n = us.conjugates.len();
    let m = us.ring.modulus();
    let neg_a = (m - a % m) % m;
    let shifted: Vec<CycloRingElem> = us.conjugates.iter().map(|e| e.add_constant(neg_a)).collect();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(us.ring.one());
    for s in &shifted {
        let next = prefix.last().unwrap().mul(s);
        prefix.push(next);
    }
    let mut suffix = vec![us.ring.one(); n + 1];
    for k in (0..n).rev() {
        suffix[k] = suffix[k + 1].mul(&shifted[k]);
    }
    let ks: Vec<usize> = (0..n).collect();
    exec.map(&ks, |&k| {
        let m1 = shifted[k].square();
        let m2 = prefix[k].mul(&suffix[k + 1]).square();
        let inv = m1.add(&m2).inv().map_err(|e| match e {
            Error::NotAUnit => Error::DegenerateSplitting { k },
            other => other,
        })?;
        Ok(m1.mul(&inv))
    })
    .into_iter()
    .collect()
}

fn symbol_entry(us: &UnitSystem, e: &CycloRingElem, t: &CycloRingElem) -> Result<u64> {
    let one_minus_e = us.ring.one().sub(e);
    let alpha = e.add(&one_minus_e.mul(t));
    let norm = us.norm(&alpha)?;
    if norm % us.p == 0 {
        return Err(Error::Internal("norm of the congruence element is not a p-unit".into()));
    }
    Ok(fermat_quotient(norm, us.p))
}

fn check_zero_sum(values: impl Iterator<Item = u64>, p: u64, what: &str) -> Result<()> {
    let s = values.fold(0, |acc, x| add_mod(acc, x, p));
    if s != 0 {
        return Err(Error::FormulaViolation(format!("{what} sums to {s}, not 0, mod {p}")));
    }
    Ok(())
}

pub fn symbol_row(us: &UnitSystem, a: u64) -> Result<SymbolRow> {
    symbol_row_with(us, a, &Exec::sequential())
}

/// The row for the unit eta = sigma_0(eta); the product formula forces
/// the entries to sum to 0, which is checked.
pub fn symbol_row_with(us: &UnitSystem, a: u64, exec: &Exec) -> Result<SymbolRow> {
    let ts = congruence_factors(us, a, exec)?;
    let e = &us.conjugates[0];
    let entries = exec.map(&ts, |t| symbol_entry(us, e, t)).into_iter().collect::<Result<Vec<_>>>()?;
    check_zero_sum(entries.iter().copied(), us.p, "symbol row")?;
    Ok(SymbolRow { p: us.p, n: us.n(), a, entries })
}

/// `N - deg gcd(R(x), x^N - 1)` for the circulant with first row R.
pub fn circulant_rank(row: &[u64], p: u64) -> Result<usize> {
    let n = row.len();
    let r = ModPoly::new(p, row.to_vec());
    if r.is_zero() {
        return Ok(0);
    }
    let mut xn1 = vec![0u64; n + 1];
    xn1[0] = p - 1;
    xn1[n] = 1;
    let g = poly_gcd_fp(&r, &ModPoly::new(p, xn1))?;
    Ok(n - g.degree().unwrap_or(0))
}

pub fn symbol_matrix(us: &UnitSystem, row: SymbolRow, mode: MatrixMode) -> Result<SymbolMatrix> {
    symbol_matrix_with(us, row, mode, &Exec::sequential())
}

/// Rank of the matrix `M[j][k]` of symbols of `sigma_j(eta)` at `p_k`.
/// Galois equivariance makes it circulant, `M[j][k] = row[(k - j) mod N]`;
/// full mode recomputes every entry and checks this.
pub fn symbol_matrix_with(us: &UnitSystem, row: SymbolRow, mode: MatrixMode, exec: &Exec) -> Result<SymbolMatrix> {
    let n = row.entries.len();
    let p = row.p;
    let full = match mode {
        MatrixMode::Circulant => None,
        MatrixMode::Full => {
            if us.n() > FULL_MATRIX_MAX_N {
                return Err(Error::Unsupported(format!(
                    "full symbol matrix limited to N <= {FULL_MATRIX_MAX_N}"
                )));
            }
            let ts = congruence_factors(us, row.a, exec)?;
            let js: Vec<usize> = (0..n).collect();
            let m = exec
                .map(&js, |&j| {
                    ts.iter().map(|t| symbol_entry(us, &us.conjugates[j], t)).collect::<Result<Vec<u64>>>()
                })
                .into_iter()
                .collect::<Result<Vec<_>>>()?;
            for (j, mrow) in m.iter().enumerate() {
                for (k, &x) in mrow.iter().enumerate() {
                    if x != row.entries[(k + n - j) % n] {
                        return Err(Error::NonCirculant { j, k });
                    }
                }
                check_zero_sum(mrow.iter().copied(), p, "symbol matrix row")?;
            }
            for k in 0..n {
                check_zero_sum(m.iter().map(|r| r[k]), p, "symbol matrix column")?;
            }
            Some(m)
        }
    };
    let rank = match &full {
        Some(m) => rank_mod_p(m, p),
        None => circulant_rank(&row.entries, p)?,
    };
    if rank + 1 > n {
        return Err(Error::FormulaViolation(format!("symbol matrix rank {rank} exceeds N - 1")));
    }
    Ok(SymbolMatrix { genus_exponent: n - 1 - rank, row, full, rank })
}

/// Uniformizer, row and rank in one call. A degenerate congruence modulus
/// moves on to the next admissible uniformizer.
pub fn genus_matrix(us: &UnitSystem, mode: MatrixMode, exec: &Exec) -> Result<SymbolMatrix> {
    let mut start = 1;
    loop {
        let a = find_uniformizer_from(us, start)?;
        match symbol_row_with(us, a, exec) {
            Ok(row) => return symbol_matrix_with(us, row, mode, exec),
            Err(Error::DegenerateSplitting { .. }) => start = a + 1,
            Err(e) => return Err(e),
        }
    }
}
