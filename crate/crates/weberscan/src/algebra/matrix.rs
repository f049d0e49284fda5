//! Rank of matrices over F_p.

use super::arith::{inv_mod, mul_mod, sub_mod};

/// F_p-rank by Gaussian elimination; rows may have different lengths
/// (missing entries are zero).
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut v: Vec<u64> = r.iter().map(|&x| x % p).collect();
            v.resize(width, 0);
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][col], p).expect("nonzero pivot mod prime");
        for x in m[rank][col..].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = sub_mod(*x, mul_mod(factor, y, p), p);
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
