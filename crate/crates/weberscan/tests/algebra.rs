mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weberscan::algebra::arith::{discrete_log, factorize, inv_mod, multiplicative_order, primitive_root_prime};
use weberscan::algebra::{cyclotomic_poly, factor_cyclotomic_mod_p, poly_gcd_fp, resultant_fp, CycloRing, ModPoly};

#[test]
fn cyclotomic_matches_exact_division() {
    for n in 1..=120 {
        assert_eq!(cyclotomic_poly(n), cyclotomic(n), "Phi_{n}");
    }
}

#[test]
fn cyclotomic_factorization_is_complete_and_irreducible() {
    let primes = [2u64, 3, 5, 7, 11, 13, 31, 101];
    for n in 2..=60u64 {
        for &p in &primes {
            if n % p == 0 {
                continue;
            }
            let factors = factor_cyclotomic_mod_p(n, p).unwrap();
            let d = order(p % n, n) as usize;
            let mut prod = vec![1u64];
            for f in &factors {
                assert_eq!(f.degree(), Some(d), "N={n} p={p}");
                assert_eq!(f.lead(), 1);
                prod = pmul(&prod, f.coeffs(), p);
            }
            assert_eq!(prod, poly_mod(&cyclotomic(n), p), "product N={n} p={p}");
            // distinct factors: pairwise coprime
            for (i, a) in factors.iter().enumerate() {
                for b in &factors[i + 1..] {
                    assert_eq!(pgcd(a.coeffs(), b.coeffs(), p), vec![1]);
                }
            }
        }
    }
}

#[test]
fn linear_factors_are_the_primitive_roots_of_unity() {
    for (n, p) in [(5u64, 11u64), (8, 17), (12, 13), (40, 41), (52, 53)] {
        let factors = factor_cyclotomic_mod_p(n, p).unwrap();
        let mut roots: Vec<u64> = factors.iter().map(|f| (p - f.coeff(0)) % p).collect();
        roots.sort();
        let brute: Vec<u64> = (1..p).filter(|&r| order(r, p) == n).collect();
        assert_eq!(roots, brute);
    }
}

#[test]
fn resultant_matches_sylvester_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for &p in &[3u64, 5, 13, 101, 65537] {
        for _ in 0..60 {
            let da = rng.gen_range(1..7);
            let db = rng.gen_range(1..7);
            let mut a: Vec<u64> = (0..da).map(|_| rng.gen_range(0..p)).collect();
            a.push(rng.gen_range(1..p));
            let mut b: Vec<u64> = (0..db).map(|_| rng.gen_range(0..p)).collect();
            b.push(rng.gen_range(1..p));
            let r = resultant_fp(&ModPoly::new(p, a.clone()), &ModPoly::new(p, b.clone())).unwrap();
            assert_eq!(r, sylvester_resultant(&a, &b, p), "a={a:?} b={b:?} p={p}");
        }
    }
}

#[test]
fn gcd_matches_naive_euclid() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for &p in &[2u64, 7, 31] {
        for _ in 0..100 {
            let common: Vec<u64> = {
                let mut v: Vec<u64> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(0..p)).collect();
                v.push(1);
                v
            };
            let a = pmul(&common, &[rng.gen_range(0..p), rng.gen_range(0..p), 1], p);
            let b = pmul(&common, &[rng.gen_range(0..p), 1], p);
            let g = poly_gcd_fp(&ModPoly::new(p, a.clone()), &ModPoly::new(p, b.clone())).unwrap();
            assert_eq!(g.coeffs(), pgcd(&a, &b, p).as_slice());
            let r = resultant_fp(&ModPoly::new(p, a), &ModPoly::new(p, b)).unwrap();
            assert_eq!(r == 0, g.degree().unwrap() > 0);
        }
    }
}

/// Schoolbook product of two residues mod (p^2, Phi_f).
fn naive_ring_mul(a: &[u64], b: &[u64], f: u64, p: u64) -> Vec<u64> {
    let m = p * p;
    let phi = poly_mod(&cyclotomic(f), m);
    let prod = pmul_any(a, b, m);
    let mut r = prod;
    let d = phi.len() - 1;
    while r.len() > d {
        let t = r.pop().unwrap();
        let off = r.len() - d;
        for j in 0..d {
            r[off + j] = (r[off + j] + m - mulm(t, phi[j], m)) % m;
        }
    }
    r.resize(d, 0);
    r
}

/// Product mod a composite modulus (no inverses needed).
fn pmul_any(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulm(x, y, m)) % m;
        }
    }
    out
}

#[test]
fn ring_multiplication_matches_schoolbook() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for &(f, p) in &[(8u64, 17u64), (9, 19), (25, 11), (12, 7), (27, 73), (32, 97)] {
        let ring = CycloRing::new(f, p).unwrap();
        let d = ring.degree();
        let m = p * p;
        for _ in 0..20 {
            let a: Vec<u64> = (0..d).map(|_| rng.gen_range(0..m)).collect();
            let b: Vec<u64> = (0..d).map(|_| rng.gen_range(0..m)).collect();
            let x = ring.from_coeffs(a.clone()).mul(&ring.from_coeffs(b.clone()));
            assert_eq!(x.coeffs(), naive_ring_mul(&a, &b, f, p).as_slice(), "f={f} p={p}");
        }
    }
}

#[test]
fn ring_inverse_and_automorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for &(f, p) in &[(8u64, 17u64), (9, 19), (25, 101), (16, 13)] {
        let ring = CycloRing::new(f, p).unwrap();
        let d = ring.degree();
        let m = p * p;
        let mut tested = 0;
        while tested < 10 {
            let a = ring.from_coeffs((0..d).map(|_| rng.gen_range(0..m)).collect());
            let b = ring.from_coeffs((0..d).map(|_| rng.gen_range(0..m)).collect());
            if let Ok(ai) = a.inv() {
                assert!(a.mul(&ai).is_one());
                tested += 1;
            }
            for s in (1..f).filter(|&s| gcd(s, f) == 1) {
                // sigma_s is a ring homomorphism and sigma_s sigma_t = sigma_st
                assert_eq!(a.mul(&b).sigma(s).coeffs(), a.sigma(s).mul(&b.sigma(s)).coeffs());
                let t = (1..f).find(|&t| gcd(t, f) == 1 && t != s).unwrap();
                assert_eq!(a.sigma(s).sigma(t).coeffs(), a.sigma(s * t % f).coeffs());
            }
            let u = if f % 3 == 0 { 2 } else { 3 };
            assert_eq!(ring.x_pow(1).sigma(u).coeffs(), ring.x_pow(u).coeffs());
        }
    }
}

#[test]
fn discrete_logs_and_orders() {
    for p in [3u64, 5, 7, 11, 13, 31, 73, 487, 2251, 18433] {
        let g = primitive_root_prime(p);
        assert_eq!(order(g, p), p - 1);
        let fac = factorize(p - 1);
        for a in (1..p).step_by(((p / 50) as usize).max(1)) {
            let x = discrete_log(a, g, p, p - 1, &fac).unwrap();
            assert_eq!(powm(g, x, p), a);
            assert_eq!(multiplicative_order(a, p), order(a, p));
            assert_eq!(mulm(a, inv_mod(a, p).unwrap(), p), 1);
        }
    }
}
