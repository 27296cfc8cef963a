//! The sets Omega1 (`P` and `P+1` irreducible) and Omega2 (additionally
//! `P^3+P+1` and `P^3+P^2+1` irreducible), and the explicit family
//! `P_k = x^(2*5^k) + x^(5^k) + a` of Omega2 members.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::is_irreducible;
use crate::gf4::Gf4;
use crate::poly::{enumerate_monic, Poly};

/// Default degree cap for `P_k` and Omega checks.
pub const DEFAULT_OMEGA_DEGREE_CAP: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum OmegaSet {
    One,
    Two,
}

impl OmegaSet {
    pub fn from_index(i: u8) -> Option<OmegaSet> {
        match i {
            1 => Some(OmegaSet::One),
            2 => Some(OmegaSet::Two),
            _ => None,
        }
    }
}

/// A member of Omega1 or Omega2 together with the irreducible companions that certify it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaWitness {
    pub poly: Poly,
    pub set: OmegaSet,
    pub companions: Vec<Poly>,
}

/// `P^3 + P + 1`
pub fn cubic_companion_r(p: &Poly) -> Poly {
    Poly::parse("x^3+x+1").expect("literal").compose(p)
}

/// `P^3 + P^2 + 1`
pub fn cubic_companion_s(p: &Poly) -> Poly {
    Poly::parse("x^3+x^2+1").expect("literal").compose(p)
}

fn irreducible(f: &Poly) -> bool {
    f.is_monic() && !f.is_constant() && is_irreducible(f).unwrap_or(false)
}

/// Membership in Omega1. Constants and non-monic inputs are not members.
pub fn in_omega1(p: &Poly) -> bool {
    irreducible(p) && irreducible(&(p + Gf4::ONE))
}

pub fn in_omega2(p: &Poly) -> bool {
    in_omega1(p) && irreducible(&cubic_companion_r(p)) && irreducible(&cubic_companion_s(p))
}

pub fn omega_witness(p: &Poly) -> Option<OmegaWitness> {
    if !in_omega1(p) {
        return None;
    }
    let q = p + Gf4::ONE;
    if in_omega2(p) {
        let companions = vec![q, cubic_companion_r(p), cubic_companion_s(p)];
        Some(OmegaWitness { poly: p.clone(), set: OmegaSet::Two, companions })
    } else {
        Some(OmegaWitness { poly: p.clone(), set: OmegaSet::One, companions: vec![q] })
    }
}

pub fn in_omega(p: &Poly, set: OmegaSet) -> bool {
    match set {
        OmegaSet::One => in_omega1(p),
        OmegaSet::Two => in_omega2(p),
    }
}

/// `x^(2*5^k) + x^(5^k) + a`, refusing degrees above `max_degree`.
pub fn pk_family(k: u32, max_degree: usize) -> Result<Poly> {
    let inner = 5u64.checked_pow(k).filter(|&d| d.saturating_mul(2) <= max_degree as u64);
    let Some(inner) = inner else {
        let degree = 5u64.checked_pow(k).map_or(u64::MAX, |d| d.saturating_mul(2));
        return Err(Error::Cap { what: "degree of P_k", value: degree, cap: max_degree as u64 });
    };
    let inner = inner as usize;
    let mut p = Poly::monomial(Gf4::ONE, 2 * inner);
    p += &Poly::monomial(Gf4::ONE, inner);
    p += &Poly::constant(Gf4::ALPHA);
    Ok(p)
}

/// Members of degree `1..=max_degree`, by degree and then in `enumerate_monic` order.
pub fn enumerate_omega(max_degree: usize, set: OmegaSet) -> Vec<Poly> {
    (1..=max_degree)
        .flat_map(|d| {
            let level: Vec<Poly> = enumerate_monic(d).collect();
            level.into_par_iter().filter(|p| in_omega(p, set)).collect::<Vec<_>>()
        })
        .collect()
}
