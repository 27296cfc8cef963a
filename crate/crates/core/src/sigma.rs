//! Divisor-sum functions over GF(4)[x].
//!
//! `sigma` sums all monic divisors, `sigma*` the unitary ones (`gcd(D, S/D) = 1`)
//! and `sigma**` the bi-unitary ones (`gcd_u(D, S/D) = 1`, where `gcd_u` is the
//! greatest common unitary divisor). All three are multiplicative, so the
//! closed forms work prime power by prime power. [`sigma_bruteforce`] sums the
//! divisors literally and serves as the oracle for the closed forms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::{factorize, is_irreducible, Factorization};
use crate::poly::Poly;

/// Default cap on the number of divisors any enumeration will visit.
pub const DEFAULT_DIVISOR_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SigmaKind {
    /// sigma: all divisors
    All,
    /// sigma*: unitary divisors
    Unitary,
    /// sigma**: bi-unitary divisors
    #[serde(rename = "biunitary")]
    BiUnitary,
}

impl SigmaKind {
    pub const KINDS: [SigmaKind; 3] = [SigmaKind::All, SigmaKind::Unitary, SigmaKind::BiUnitary];

    pub fn name(self) -> &'static str {
        match self {
            SigmaKind::All => "all",
            SigmaKind::Unitary => "unitary",
            SigmaKind::BiUnitary => "biunitary",
        }
    }
}

impl fmt::Display for SigmaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SigmaKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "all" => Ok(SigmaKind::All),
            "unitary" => Ok(SigmaKind::Unitary),
            "biunitary" => Ok(SigmaKind::BiUnitary),
            other => Err(format!("unknown sigma kind `{other}`")),
        }
    }
}

/// The value of a divisor-sum function on one prime power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerSigma {
    pub prime: Poly,
    pub exponent: u32,
    pub kind: SigmaKind,
    pub value: Poly,
}

impl PrimePowerSigma {
    pub fn new(prime: Poly, exponent: u32, kind: SigmaKind) -> Result<Self> {
        let value = sigma_prime_power(&prime, exponent, kind)?;
        Ok(PrimePowerSigma { prime, exponent, kind, value })
    }
}

/// `1 + p + p^2 + ... + p^n`
pub fn geometric_sum(p: &Poly, n: u32) -> Poly {
    let mut acc = Poly::one();
    for _ in 0..n {
        acc = acc.mul(p);
        acc += &Poly::one();
    }
    acc
}

/// Closed form on a prime power, after checking that `prime` is irreducible.
pub fn sigma_prime_power(prime: &Poly, exponent: u32, kind: SigmaKind) -> Result<Poly> {
    if !is_irreducible(prime)? {
        return Err(Error::Reducible(prime.to_string()));
    }
    Ok(sigma_prime_power_unchecked(prime, exponent, kind))
}

/// Closed form on a prime power; `prime` is trusted to be irreducible.
///
/// * all: `1 + P + ... + P^e`
/// * unitary: `1 + P^e`
/// * bi-unitary: `(1 + P) sigma(P^n) sigma(P^(n-1))` for `e = 2n`, and `sigma(P^e)` for odd `e`
pub fn sigma_prime_power_unchecked(prime: &Poly, exponent: u32, kind: SigmaKind) -> Poly {
    if exponent == 0 {
        return Poly::one();
    }
    match kind {
        SigmaKind::All => geometric_sum(prime, exponent),
        SigmaKind::Unitary => &prime.pow(u64::from(exponent)) + &Poly::one(),
        SigmaKind::BiUnitary if exponent % 2 == 1 => geometric_sum(prime, exponent),
        SigmaKind::BiUnitary => {
            let n = exponent / 2;
            let mut split = geometric_sum(prime, n);
            split = split.mul(&geometric_sum(prime, n - 1));
            split.mul(&(prime + &Poly::one()))
        }
    }
}

pub fn sigma_of_factorization(f: &Factorization, kind: SigmaKind) -> Poly {
    f.factors().iter().fold(Poly::one(), |acc, (p, e)| acc.mul(&sigma_prime_power_unchecked(p, *e, kind)))
}

/// Multiplicative evaluation through the factorization of `s`.
pub fn sigma(s: &Poly, kind: SigmaKind) -> Result<Poly> {
    Ok(sigma_of_factorization(&factorize(s)?, kind))
}

pub fn is_perfect(s: &Poly, kind: SigmaKind) -> Result<bool> {
    Ok(sigma(s, kind)? == *s)
}

/// Greatest common unitary divisor: the product of `p^e` over primes `p` with
/// the same positive exponent `e` in both inputs.
pub fn gcd_unitary(a: &Poly, b: &Poly) -> Result<Poly> {
    let fa = factorize(a)?;
    let fb = factorize(b)?;
    Ok(fa
        .factors()
        .iter()
        .filter(|(p, e)| fb.exponent_of(p) == *e)
        .fold(Poly::one(), |acc, (p, e)| acc.mul(&p.pow(u64::from(*e)))))
}

/// Iterator over the monic divisors of a factored polynomial. The exponent of
/// the first prime varies fastest.
#[derive(Debug, Clone)]
pub struct Divisors {
    powers: Vec<Vec<Poly>>,
    counter: Vec<u32>,
    done: bool,
}

impl Divisors {
    pub fn new(f: &Factorization, cap: u64) -> Result<Divisors> {
        let count = divisor_count(f);
        if count > u128::from(cap) {
            return Err(Error::DivisorCap { count, cap });
        }
        let powers = f
            .factors()
            .iter()
            .map(|(p, e)| {
                let mut row = vec![Poly::one()];
                for k in 0..*e as usize {
                    let next = row[k].mul(p);
                    row.push(next);
                }
                row
            })
            .collect::<Vec<_>>();
        let counter = vec![0; powers.len()];
        Ok(Divisors { powers, counter, done: false })
    }

    // odometer step over the exponent vector
    fn advance(&mut self) {
        for (i, c) in self.counter.iter_mut().enumerate() {
            if (*c as usize) + 1 < self.powers[i].len() {
                *c += 1;
                return;
            }
            *c = 0;
        }
        self.done = true;
    }
}

impl Iterator for Divisors {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.done {
            return None;
        }
        let d = self.counter.iter().zip(&self.powers).fold(Poly::one(), |acc, (&k, row)| acc.mul(&row[k as usize]));
        self.advance();
        Some(d)
    }
}

pub fn divisor_count(f: &Factorization) -> u128 {
    f.factors().iter().map(|(_, e)| u128::from(*e) + 1).product()
}

/// All monic divisors of `s`, failing when there are more than `cap` of them.
pub fn divisors(s: &Poly, cap: u64) -> Result<Divisors> {
    Divisors::new(&factorize(s)?, cap)
}

fn cofactor(d: &Poly, s: &Poly) -> Result<Poly> {
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    s.div_exact(d).ok_or_else(|| Error::NotADivisor { divisor: d.to_string(), dividend: s.to_string() })
}

pub fn is_unitary_divisor(d: &Poly, s: &Poly) -> Result<bool> {
    let q = cofactor(d, s)?;
    Ok(d.gcd(&q)?.is_one())
}

pub fn is_biunitary_divisor(d: &Poly, s: &Poly) -> Result<bool> {
    let q = cofactor(d, s)?;
    Ok(gcd_unitary(d, &q)?.is_one())
}

/// Literal sum of the divisors of `s` selected by `kind`.
pub fn sigma_bruteforce(s: &Poly, kind: SigmaKind, cap: u64) -> Result<Poly> {
    let mut acc = Poly::zero();
    for d in divisors(s, cap)? {
        let keep = match kind {
            SigmaKind::All => true,
            SigmaKind::Unitary => is_unitary_divisor(&d, s)?,
            SigmaKind::BiUnitary => is_biunitary_divisor(&d, s)?,
        };
        if keep {
            acc += &d;
        }
    }
    Ok(acc)
}

/// True iff `s` is bi-unitary perfect and no divisor `D` with `1 < D < s` is.
pub fn is_indecomposable_bup(s: &Poly, cap: u64) -> Result<bool> {
    let f = factorize(s)?;
    if sigma_of_factorization(&f, SigmaKind::BiUnitary) != *s {
        return Ok(false);
    }
    let count = divisor_count(&f);
    if count > u128::from(cap) {
        return Err(Error::DivisorCap { count, cap });
    }
    let table: Vec<Vec<(Poly, Poly)>> = f
        .factors()
        .iter()
        .map(|(p, e)| {
            (0..=*e).map(|k| (p.pow(u64::from(k)), sigma_prime_power_unchecked(p, k, SigmaKind::BiUnitary))).collect()
        })
        .collect();
    let full: Vec<u32> = f.factors().iter().map(|(_, e)| *e).collect();
    let mut exps = vec![0u32; full.len()];
    loop {
        // next exponent vector, first coordinate fastest
        let mut i = 0;
        while i < exps.len() && exps[i] == full[i] {
            exps[i] = 0;
            i += 1;
        }
        if i == exps.len() {
            break;
        }
        exps[i] += 1;
        if exps == full {
            continue;
        }
        let (d, sd) = exps.iter().zip(&table).fold((Poly::one(), Poly::one()), |(d, sd), (&k, row)| {
            (d.mul(&row[k as usize].0), sd.mul(&row[k as usize].1))
        });
        if d == sd {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `s` is bi-unitary perfect and no proper unitary divisor `D`
/// (`1 < D < s`, `gcd(D, s/D) = 1`) is.
///
/// This is the coprime-block notion of decomposition: `s = D * (s/D)` with both
/// parts bi-unitary perfect. It is weaker than [`is_indecomposable_bup`], which
/// also rejects `x^7 (x+1)^13 ...` because of the non-unitary divisor `x^7 (x+1)^7`.
pub fn is_unitarily_indecomposable_bup(s: &Poly) -> Result<bool> {
    let f = factorize(s)?;
    if sigma_of_factorization(&f, SigmaKind::BiUnitary) != *s {
        return Ok(false);
    }
    let blocks: Vec<(Poly, Poly)> = f
        .factors()
        .iter()
        .map(|(p, e)| (p.pow(u64::from(*e)), sigma_prime_power_unchecked(p, *e, SigmaKind::BiUnitary)))
        .collect();
    let n = blocks.len();
    if n >= 64 {
        return Err(Error::DivisorCap { count: 1u128 << n.min(127), cap: 1 << 63 });
    }
    for mask in 1..(1u64 << n) - 1 {
        let (d, sd) = blocks
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold((Poly::one(), Poly::one()), |(d, sd), (_, (pe, spe))| (d.mul(pe), sd.mul(spe)));
        if d == sd {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff every prime factor of `s` has degree 1.
pub fn splits(s: &Poly) -> Result<bool> {
    Ok(factorize(s)?.factors().iter().all(|(p, _)| p.deg() == 1))
}
