//! Arithmetic in GF(4)[x], the divisor-sum functions sigma, sigma* and sigma**,
//! and bounded searches for bi-unitary perfect polynomials.

pub mod classify;
pub mod error;
pub mod factor;
pub mod gf4;
pub mod omega;
pub mod poly;
pub mod sigma;

pub use classify::{
    full_orbit_closure, full_symmetry_orbit, orbit_closure, search_general_bup, search_nonsplit_bup,
    search_perfect_splitting, search_splitting_bup, symmetry_orbit, verify_theorem, ExponentTuple, FactorBase, Hit,
    SearchOptions, SearchReport,
};
pub use error::{Error, Result};
pub use factor::{factorize, is_irreducible, omega_count, Factorization};
pub use gf4::Gf4;
pub use omega::{enumerate_omega, in_omega1, in_omega2, pk_family, OmegaSet};
pub use poly::{enumerate_monic, Poly};
pub use sigma::{
    divisors, gcd_unitary, is_biunitary_divisor, is_indecomposable_bup, is_perfect, is_unitarily_indecomposable_bup,
    sigma, sigma_bruteforce, sigma_prime_power, splits, SigmaKind,
};
