//! Exact finite arithmetic: machine-word residues, polynomials over Z/mZ,
//! cyclotomic polynomials and the rings (Z/p^2)[x]/(Phi_f).

pub mod arith;
pub mod cyclo;
pub mod matrix;
pub mod poly;
pub mod ring;

pub use arith::is_prime_u64;
pub use cyclo::{cyclotomic_poly, factor_cyclotomic_mod_p};
pub use matrix::rank_mod_p;
pub use poly::{poly_gcd_fp, resultant_fp, ModPoly};
pub use ring::{CycloRing, CycloRingElem};
