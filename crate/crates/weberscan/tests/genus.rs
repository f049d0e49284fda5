mod common;

use common::*;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weberscan::genus::{
    chevalley_order, find_uniformizer, genus_matrix, genus_order, regulator_rank, root_multiplicity, symbol_matrix,
    symbol_row, unit_min_poly, unit_system, weber_pipeline, MatrixMode, Verdict, WeberOptions,
};
use weberscan::golden::{genus_lookup, GENUS_ROWS, REGULATOR_ROWS};
use weberscan::{Error, Exec, LayerSpec};

fn layer(n: u64) -> LayerSpec {
    LayerSpec::new(n).unwrap()
}

/// Totally split primes for Q(N), by the brute character.
fn split_primes(n: u64, max: u64) -> Vec<u64> {
    let chi = BruteChar::new(n);
    (3..max).filter(|&p| is_prime(p) && n % p != 0 && chi.index(p % chi.f_n) == 0).collect()
}

#[test]
fn norms_of_field_elements_are_rational() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (n, p) in [(2u64, 31u64), (3, 73), (4, 113), (9, 163), (5, 101)] {
        let us = unit_system(&layer(n), p).unwrap();
        let ring = &us.ring;
        let m = ring.modulus();
        for _ in 0..100 {
            // a random polynomial in eta lies in K
            let mut z = ring.zero();
            let mut pow = ring.one();
            for _ in 0..n {
                z = z.add(&pow.scale(rng.gen_range(0..m)));
                pow = pow.mul(&us.unit);
            }
            let norm = us.norm(&z).unwrap();
            // multiplicativity against the constant 2
            assert_eq!(us.norm(&z.scale(2)).unwrap(), mulm(norm, powm(2, n, m), m));
        }
        // the unit has norm +-1
        let nu = us.norm(&us.unit).unwrap();
        assert!(nu == 1 || nu == m - 1, "N={n} p={p}");
    }
}

#[test]
fn symbol_rows_sum_to_zero() {
    for n in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25] {
        for p in split_primes(n, 4000).into_iter().filter(|&p| p > n).take(4) {
            let us = unit_system(&layer(n), p).unwrap();
            let m = genus_matrix(&us, MatrixMode::Circulant, &Exec::sequential()).unwrap();
            assert_eq!(m.row.entries.len() as u64, n);
            assert_eq!(m.row.entries.iter().fold(0, |a, &x| (a + x) % p), 0, "N={n} p={p}");
            assert!(m.row.entries.iter().all(|&x| x < p));
        }
    }
}

#[test]
fn full_matrix_is_the_circulant() {
    for n in [2u64, 3, 9, 25] {
        for p in split_primes(n, 6000).into_iter().take(3) {
            let us = unit_system(&layer(n), p).unwrap();
            let circ = genus_matrix(&us, MatrixMode::Circulant, &Exec::sequential()).unwrap();
            let full = genus_matrix(&us, MatrixMode::Full, &Exec::sequential()).unwrap();
            let mat = full.full.clone().unwrap();
            let nn = n as usize;
            for j in 0..nn {
                for (k, &x) in mat[j].iter().enumerate() {
                    assert_eq!(x, circ.row.entries[(k + nn - j) % nn]);
                }
                assert_eq!(mat[j].iter().fold(0, |a, &x| (a + x) % p), 0);
                assert_eq!(mat.iter().fold(0, |a, r| (a + r[j]) % p), 0);
            }
            assert_eq!(full.rank, rank_mod(mat, p));
            assert_eq!(full.rank, circ.rank, "N={n} p={p}");
        }
    }
}

#[test]
fn full_mode_is_limited() {
    let us = unit_system(&layer(81), 487).unwrap();
    let row = symbol_row(&us, find_uniformizer(&us).unwrap()).unwrap();
    assert!(matches!(symbol_matrix(&us, row, MatrixMode::Full), Err(Error::Unsupported(_))));
}

#[test]
fn reference_genus_ranks() {
    for row in GENUS_ROWS.iter().filter(|r| r.n <= 25) {
        let us = unit_system(&layer(row.n), row.p).unwrap();
        let m = genus_matrix(&us, MatrixMode::Circulant, &Exec::sequential()).unwrap();
        assert_eq!(m.rank, row.rank, "{}", row.provenance);
        assert_eq!(m.genus_exponent, row.n as usize - 1 - row.rank);
    }
    assert_eq!(genus_lookup(3, 73).unwrap().rank, 1);
}

#[test]
#[ignore = "about a second in release, long in debug"]
fn reference_genus_rank_81() {
    let us = unit_system(&layer(81), 487).unwrap();
    let m = genus_matrix(&us, MatrixMode::Circulant, &Exec::with_workers(2)).unwrap();
    assert_eq!(m.rank, 79);
}

#[test]
fn reference_regulator_ranks() {
    for row in REGULATOR_ROWS {
        assert_eq!(regulator_rank(&layer(row.n), row.p).unwrap(), row.rank, "{}", row.provenance);
    }
}

/// For K = Q(sqrt 2), eta = 1 + sqrt 2 and split p, both the symbol row
/// and the regulator reduce to the Fermat quotient of 1 + s, s^2 = 2 mod p^2.
#[test]
fn quadratic_field_oracle() {
    let mut nonzero = 0;
    for p in (3..5000u64).filter(|&p| is_prime(p) && (p % 8 == 1 || p % 8 == 7)) {
        let m = p * p;
        let a = (1..p).find(|&a| {
            let v = (mulm(a, a, m) + 2 * m - 2 * a - 1) % m;
            v % p == 0 && v != 0
        });
        let us = unit_system(&layer(2), p).unwrap();
        assert_eq!(find_uniformizer(&us).ok(), a, "p={p}");
        let a = a.unwrap();
        // orient sqrt 2 so that p_0 = (p, eta - a)
        let s = {
            let s = sqrt2_mod_p2(p);
            if (1 + s) % p == a % p { s } else { m - s }
        };
        let fq = fermat_quotient(1 + s, p);
        let row = symbol_row(&us, a).unwrap();
        assert_eq!(row.entries, vec![fq, (p - fq) % p], "p={p}");
        let rank = usize::from(fq != 0);
        nonzero += rank;
        assert_eq!(genus_matrix(&us, MatrixMode::Full, &Exec::sequential()).unwrap().rank, rank);
        assert_eq!(regulator_rank(&layer(2), p).unwrap(), rank, "p={p}");
    }
    assert!(nonzero > 100);
}

#[test]
fn minimal_polynomial_and_uniformizer() {
    for n in [2u64, 3, 4, 5, 9, 16, 25, 27] {
        for p in split_primes(n, 3000).into_iter().take(5) {
            let us = unit_system(&layer(n), p).unwrap();
            let poly = unit_min_poly(&us).unwrap();
            assert_eq!(poly.len() as u64, n + 1);
            assert_eq!(*poly.last().unwrap(), 1);
            // p splits, so P has N roots mod p counted with multiplicity
            let poly_p: Vec<u64> = poly.iter().map(|c| c % p).collect();
            let roots: Vec<u64> = (0..p).filter(|&x| peval(&poly_p, x, p) == 0).collect();
            let total: usize = roots.iter().map(|&r| root_multiplicity(&us, r).unwrap()).sum();
            assert_eq!(total as u64, n, "N={n} p={p}");
            if roots.len() as u64 != n {
                continue;
            }
            let a = find_uniformizer(&us).unwrap();
            let m = p * p;
            let v = poly.iter().rev().fold(0, |acc, &c| (mulm(acc, a, m) + c) % m);
            assert!(v % p == 0 && v != 0);
            assert!(roots.contains(&a));
            assert_eq!(root_multiplicity(&us, a).unwrap(), 1);
            assert_eq!(root_multiplicity(&us, (a + 1) % p).unwrap(), usize::from(roots.contains(&((a + 1) % p))));
        }
    }
}

#[test]
fn unit_system_preconditions() {
    assert!(matches!(unit_system(&layer(6), 37), Err(Error::Unsupported(_))));
    assert!(matches!(unit_system(&layer(3), 7), Err(Error::NotTotallySplit { .. })));
    assert!(matches!(unit_system(&layer(3), 2), Err(Error::Unsupported(_))));
    assert!(unit_system(&layer(3), 3).is_err());
}

#[test]
fn chevalley_formula() {
    let one = BigUint::from(1u8);
    assert_eq!(chevalley_order(3, &[5, 5], 5, &one).unwrap(), BigUint::from(15u8));
    assert_eq!(chevalley_order(1, &[7, 7, 7], 7, &BigUint::from(7u8)).unwrap(), BigUint::from(7u8));
    assert!(matches!(chevalley_order(1, &[3], 2, &one), Err(Error::FormulaViolation(_))));
    assert!(matches!(chevalley_order(0, &[3], 3, &one), Err(Error::InvalidInput(_))));
    // p^(s_p - 1 - rank)
    for (p, s, r) in [(73u64, 3u64, 1usize), (31, 2, 0), (2251, 25, 23), (487, 81, 79)] {
        let want = BigUint::from(p).pow((s as u32) - 1 - r as u32);
        assert_eq!(genus_order(p, s, r).unwrap(), want);
    }
}

#[test]
fn weber_verdicts() {
    let exec = Exec::sequential();
    let opts = WeberOptions::default();
    let cases = [
        (3u64, 73u64, Verdict::GenusCertified),
        (25, 2251, Verdict::GenusCertified),
        (2, 31, Verdict::GenusCertified),
        (2, 13, Verdict::NotTotallySplit),
        (7, 29, Verdict::TTrivial),
    ];
    for (n, p, want) in cases {
        let rep = weber_pipeline(&layer(n), p, &opts, &exec).unwrap();
        assert_eq!(rep.verdict, want, "N={n} p={p}");
        assert_eq!(rep.components.len(), (1..=n).filter(|d| n % d == 0 && *d > 1).count());
        if want == Verdict::GenusCertified {
            assert!(rep.genus.iter().any(|g| g.genus_exponent.unwrap_or(0) > 0));
            assert_eq!(rep.caveats.len(), 2);
        }
    }
    let mut limited = opts.clone();
    limited.genus_cost_limit = 10;
    let rep = weber_pipeline(&layer(3), 73, &limited, &exec).unwrap();
    assert_eq!(rep.verdict, Verdict::GenusSkipped);
}

/// A positive genus exponent gives a non-cyclic p-ramified abelian
/// p-extension of K, so T_K is not trivial and some component must be
/// detected.
#[test]
fn genus_and_annihilator_agree_on_detected_pairs() {
    let exec = Exec::sequential();
    for n in [2u64, 3, 4, 5, 8, 9] {
        for p in split_primes(n, 1500) {
            let us = unit_system(&layer(n), p).unwrap();
            let m = genus_matrix(&us, MatrixMode::Circulant, &exec).unwrap();
            if m.genus_exponent > 0 {
                let rep = weber_pipeline(&layer(n), p, &WeberOptions::default(), &exec).unwrap();
                assert!(rep.detected().count() > 0, "N={n} p={p} has genus but no component");
            }
        }
    }
}
