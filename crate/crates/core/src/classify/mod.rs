//! Family generators and bounded exhaustive searches for bi-unitary perfect
//! (and perfect) polynomials with a small number of prime factors.
//!
//! Searches over a fixed four-prime base work on exponent vectors: each
//! `sigma(T^e)` is reduced once to its valuation vector over the base (or to
//! "leaves the base"), and a tuple is a fixed point iff the vectors of its four
//! prime powers add up to the tuple itself. Every hit is then re-verified on
//! the expanded polynomial.

mod families;
mod general;
mod memo;
mod search;
mod tables;
mod theorem;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf4::Gf4;
use crate::omega::{cubic_companion_r, cubic_companion_s, in_omega1, in_omega2};
use crate::poly::Poly;

pub use families::{
    family_instances, family_tuples, BaseKind, Family, FamilyDescriptor, FamilyInstance, Params, MAX_PARAM_BOUND,
    SPORADIC_SPLITTING,
};
pub use general::{search_general_bup, search_general_bup_with, GeneralStrategy};
pub use memo::{base_valuation, SigmaMemo, SigmaProfile};
pub use search::{
    search_nonsplit_bup, search_pair_bup, search_perfect_splitting, search_splitting_bup, NonsplitBounds,
};
pub use tables::{
    expression_tables, expression_tables_for, monomial_text, sporadic_diff, sporadic_splitting_tuples, ExpressionRow,
    ExpressionTable,
};
pub use theorem::{verify_theorem, Theorem, TheoremBounds, TheoremCheck};

/// Largest exponent accepted by the splitting searches.
pub const MAX_SPLIT_EXP: u32 = 64;
/// Largest degree accepted by the structured general search.
pub const GENERAL_MAX_DEGREE_CAP: usize = 12;
/// Largest degree accepted by the exhaustive general search.
pub const EXHAUSTIVE_MAX_DEGREE_CAP: usize = 9;

/// Exponents `(a, b, c, d)` attached to an ordered four-prime base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentTuple(pub [u32; 4]);

impl ExponentTuple {
    pub const fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        ExponentTuple([a, b, c, d])
    }

    pub fn all_odd(&self) -> bool {
        self.0.iter().all(|e| e % 2 == 1)
    }

    pub fn not_all_odd(&self) -> bool {
        !self.all_odd()
    }

    pub fn in_box(&self, lo: u32, hi: u32) -> bool {
        self.0.iter().all(|&e| (lo..=hi).contains(&e))
    }

    /// Exponents of `A(x + c)` for `A` over the splitting base `(x, x+1, x+a, x+a+1)`.
    ///
    /// Position `i` holds the exponent of `x + code(i)`, so the substitution
    /// moves the exponent of `x + (mu + c)` onto `x + mu`.
    pub fn translate(&self, c: Gf4) -> Self {
        let k = c.code() as usize;
        ExponentTuple(std::array::from_fn(|i| self.0[i ^ k]))
    }

    /// Exponents of the image under the coefficient map `a -> a^2`, which fixes
    /// `x` and `x+1` and swaps `x+a` with `x+a+1`.
    pub fn conjugate(&self) -> Self {
        let [a, b, c, d] = self.0;
        ExponentTuple([a, b, d, c])
    }
}

impl fmt::Display for ExponentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl Serialize for ExponentTuple {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// Orbit of a splitting tuple under `x -> x + c`, `c` in GF(4): the Klein
/// four-group of double transpositions `{id, (ab)(cd), (ac)(bd), (ad)(bc)}`.
pub fn symmetry_orbit(t: ExponentTuple) -> BTreeSet<ExponentTuple> {
    Gf4::ALL.iter().map(|&c| t.translate(c)).collect()
}

/// Orbit under translations together with conjugation of coefficients
/// (a dihedral group of order 8 acting on the positions).
pub fn full_symmetry_orbit(t: ExponentTuple) -> BTreeSet<ExponentTuple> {
    symmetry_orbit(t).into_iter().chain(symmetry_orbit(t.conjugate())).collect()
}

pub fn full_orbit_closure<I: IntoIterator<Item = ExponentTuple>>(tuples: I) -> BTreeSet<ExponentTuple> {
    tuples.into_iter().flat_map(full_symmetry_orbit).collect()
}

pub fn orbit_closure<I: IntoIterator<Item = ExponentTuple>>(tuples: I) -> BTreeSet<ExponentTuple> {
    tuples.into_iter().flat_map(symmetry_orbit).collect()
}

/// An ordered list of distinct monic irreducibles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorBase {
    primes: Vec<Poly>,
}

impl FactorBase {
    /// `(x, x+1, x+a, x+a+1)`
    pub fn splitting() -> Self {
        FactorBase { primes: Gf4::ALL.iter().map(|&c| Poly::linear(c)).collect() }
    }

    /// `(P, P+1, P^3+P+1, P^3+P^2+1)` for `P` in Omega2.
    pub fn omega2(p: &Poly) -> Result<Self> {
        if !in_omega2(p) {
            return Err(Error::NotInOmega2(p.to_string()));
        }
        Ok(FactorBase { primes: vec![p.clone(), p + Gf4::ONE, cubic_companion_r(p), cubic_companion_s(p)] })
    }

    /// `(P, P+1, R, R+1)` for `P`, `R` in Omega1 with `R` not in `{P, P+1}`.
    pub fn omega1_pair(p: &Poly, r: &Poly) -> Result<Self> {
        for f in [p, r] {
            if !in_omega1(f) {
                return Err(Error::NotInOmega1(f.to_string()));
            }
        }
        let q = p + Gf4::ONE;
        if r == p || *r == q {
            return Err(Error::NotInOmega1(format!("{r} (same pair as {p})")));
        }
        Ok(FactorBase { primes: vec![p.clone(), q, r.clone(), r + Gf4::ONE] })
    }

    /// Any list of distinct monic irreducibles; not re-checked.
    pub fn from_primes_unchecked(primes: Vec<Poly>) -> Self {
        FactorBase { primes }
    }

    pub fn primes(&self) -> &[Poly] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn polynomial(&self, exps: &[u32]) -> Poly {
        self.primes.iter().zip(exps).fold(Poly::one(), |acc, (p, &e)| acc.mul(&p.pow(u64::from(e))))
    }

    pub fn degree(&self, exps: &[u32]) -> usize {
        self.primes.iter().zip(exps).map(|(p, &e)| p.deg() * e as usize).sum()
    }

    pub fn hit(&self, exps: &[u32]) -> Hit {
        Hit { base: self.primes.clone(), exps: exps.to_vec(), degree: self.degree(exps) }
    }
}

/// One fixed point found by a search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hit {
    pub base: Vec<Poly>,
    pub exps: Vec<u32>,
    pub degree: usize,
}

impl Hit {
    pub fn polynomial(&self) -> Poly {
        FactorBase::from_primes_unchecked(self.base.clone()).polynomial(&self.exps)
    }

    pub fn tuple(&self) -> Option<ExponentTuple> {
        <[u32; 4]>::try_from(self.exps.as_slice()).ok().map(ExponentTuple)
    }

    /// `(p1)^e1 (p2)^e2 ...`, omitting absent primes.
    pub fn factored_text(&self) -> String {
        let parts: Vec<String> = self
            .base
            .iter()
            .zip(&self.exps)
            .filter(|(_, &e)| e > 0)
            .map(|(p, &e)| if e == 1 { format!("({p})") } else { format!("({p})^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub search: String,
    pub bounds: serde_json::Map<String, serde_json::Value>,
    pub hits: Vec<Hit>,
    /// Fixed points that split into two coprime fixed points; kept apart from `hits`.
    pub decomposable: Vec<Hit>,
    pub candidates: u64,
    pub elapsed_ms: u64,
}

impl SearchReport {
    pub fn hit_tuples(&self) -> BTreeSet<ExponentTuple> {
        self.hits.iter().filter_map(Hit::tuple).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; results do not depend on this.
    pub threads: usize,
    /// Refuse searches that would evaluate more candidates than this.
    pub max_candidates: u64,
    /// Hits with at most this many divisors are also re-checked by brute-force summation.
    pub verify_divisor_cap: u64,
    /// When false, `elapsed_ms` is reported as 0 so that reports are byte-stable.
    pub record_timing: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { threads: 1, max_candidates: 50_000_000, verify_divisor_cap: 4096, record_timing: true }
    }
}

impl SearchOptions {
    pub(crate) fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> Result<T> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads.max(1))
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))?;
        Ok(pool.install(job))
    }

    pub(crate) fn check_candidates(&self, count: u64) -> Result<()> {
        if count > self.max_candidates {
            return Err(Error::Cap { what: "candidate count", value: count, cap: self.max_candidates });
        }
        Ok(())
    }

    pub(crate) fn elapsed(&self, start: std::time::Instant) -> u64 {
        if self.record_timing {
            start.elapsed().as_millis() as u64
        } else {
            0
        }
    }
}
