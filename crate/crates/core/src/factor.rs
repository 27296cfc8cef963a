//! Irreducibility testing and complete factorization over GF(4).
//!
//! The general path is squarefree decomposition (with the characteristic-2
//! square fallback), distinct-degree splitting, then equal-degree splitting
//! with the absolute trace map. Polynomials of degree at most 8 go through
//! trial division by a table of small irreducibles instead.

use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf4::Gf4;
use crate::poly::{enumerate_monic, Poly};

/// Inputs up to this degree are factored by trial division.
pub const TRIAL_DIVISION_MAX_DEGREE: usize = 8;

/// A monic polynomial as `(prime, exponent)` pairs in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Merges repeated primes, drops zero exponents and sorts into canonical order.
    pub fn from_factors(mut raw: Vec<(Poly, u32)>) -> Factorization {
        raw.retain(|(_, e)| *e > 0);
        raw.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        let mut factors: Vec<(Poly, u32)> = Vec::with_capacity(raw.len());
        for (p, e) in raw {
            match factors.last_mut() {
                Some((q, acc)) if *q == p => *acc += e,
                _ => factors.push((p, e)),
            }
        }
        Factorization { factors }
    }

    pub fn factors(&self) -> &[(Poly, u32)] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<(Poly, u32)> {
        self.factors
    }

    /// Number of distinct primes.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent_of(&self, prime: &Poly) -> u32 {
        self.factors.iter().find(|(p, _)| p == prime).map_or(0, |(_, e)| *e)
    }

    pub fn expand(&self) -> Poly {
        self.factors.iter().fold(Poly::one(), |acc, (p, e)| acc.mul(&p.pow(u64::from(*e))))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("factorization serializes")
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({p})")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct FactorEntry<'a> {
    prime: &'a Poly,
    exp: u32,
}

impl Serialize for Factorization {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<FactorEntry<'_>> =
            self.factors.iter().map(|(prime, exp)| FactorEntry { prime, exp: *exp }).collect();
        let mut st = serializer.serialize_struct("Factorization", 1)?;
        st.serialize_field("factors", &entries)?;
        st.end()
    }
}

fn require_monic_nonconstant(f: &Poly) -> Result<()> {
    if f.is_constant() {
        return Err(Error::Constant(f.to_string()));
    }
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    Ok(())
}

fn distinct_primes(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `h^4 mod m`
fn frobenius4(h: &Poly, m: &Poly) -> Poly {
    h.square_mod(m).and_then(|s| s.square_mod(m)).expect("nonzero modulus")
}

/// Rabin's test: `f` of degree `d` is irreducible iff `x^(4^d) = x mod f` and
/// `gcd(x^(4^(d/q)) - x, f) = 1` for every prime `q | d`.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    require_monic_nonconstant(f)?;
    let d = f.deg();
    if d == 1 {
        return Ok(true);
    }
    if f.coeff(0).is_zero() {
        return Ok(false);
    }
    let checkpoints: Vec<usize> = distinct_primes(d).into_iter().map(|q| d / q).collect();
    let x = Poly::x();
    let mut h = x.clone();
    for i in 1..=d {
        h = frobenius4(&h, f);
        if checkpoints.contains(&i) {
            let g = (&h + &x).gcd(f)?;
            if !g.is_one() {
                return Ok(false);
            }
        }
    }
    Ok(h == x)
}

/// Monic irreducibles of degree 1..=4, built by sieving out all products of
/// lower-degree monic polynomials.
pub fn small_irreducibles() -> &'static [Poly] {
    static TABLE: OnceLock<Vec<Poly>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let max = TRIAL_DIVISION_MAX_DEGREE / 2;
        let mut out = Vec::new();
        for n in 1..=max {
            let mut reducible = std::collections::HashSet::new();
            for da in 1..=n / 2 {
                for a in enumerate_monic(da) {
                    for b in enumerate_monic(n - da) {
                        reducible.insert(a.mul(&b));
                    }
                }
            }
            out.extend(enumerate_monic(n).filter(|f| !reducible.contains(f)));
        }
        out
    })
}

/// Factorization by trial division against [`small_irreducibles`].
/// Valid for monic inputs of degree at most 9.
pub fn factorize_trial(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    let mut rest = f.clone();
    let mut out = Vec::new();
    for p in small_irreducibles() {
        if 2 * p.deg() > rest.deg() {
            break;
        }
        let mut e = 0;
        while let Some(q) = rest.div_exact(p) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
    }
    if !rest.is_constant() {
        out.push((rest, 1));
    }
    Ok(Factorization::from_factors(out))
}

/// Canonical factorization of a monic polynomial.
pub fn factorize(f: &Poly) -> Result<Factorization> {
    if f.deg() <= TRIAL_DIVISION_MAX_DEGREE {
        factorize_trial(f)
    } else {
        factorize_general(f)
    }
}

/// The squarefree / distinct-degree / equal-degree path, for any degree.
pub fn factorize_general(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed_of(f));
    let mut squarefree = Vec::new();
    squarefree_decompose(f, 1, &mut squarefree)?;
    let mut out = Vec::new();
    for (part, mult) in squarefree {
        for (block, d) in distinct_degree(&part)? {
            let mut primes = Vec::new();
            equal_degree(&block, d, &mut rng, &mut primes)?;
            out.extend(primes.into_iter().map(|p| (p, mult)));
        }
    }
    Ok(Factorization::from_factors(out))
}

fn seed_of(f: &Poly) -> u64 {
    // FNV-1a over the coefficient codes
    f.coeffs().iter().fold(0xcbf2_9ce4_8422_2325u64, |h, c| (h ^ u64::from(c.code())).wrapping_mul(0x0100_0000_01b3))
}

/// Pushes `(g, m)` with `f = prod g^m`, each `g` squarefree and the `g` pairwise coprime.
fn squarefree_decompose(f: &Poly, mult: u32, out: &mut Vec<(Poly, u32)>) -> Result<()> {
    if f.is_constant() {
        return Ok(());
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        let root = f.sqrt().expect("zero derivative means a square in characteristic 2");
        return squarefree_decompose(&root, mult * 2, out);
    }
    let mut c = f.gcd(&deriv)?;
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c)?;
        let z = w.div_exact(&y).expect("gcd divides");
        if !z.is_constant() {
            out.push((z, i * mult));
        }
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    if !c.is_constant() {
        let root = c.sqrt().expect("remaining cofactor is a square");
        squarefree_decompose(&root, mult * 2, out)?;
    }
    Ok(())
}

/// Splits a squarefree monic polynomial into blocks whose primes share a degree.
fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let x = Poly::x();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = frobenius4(&h, &rest);
        let g = (&h + &x).gcd(&rest)?;
        if !g.is_one() {
            rest = rest.div_exact(&g).expect("gcd divides");
            h.reduce(&rest)?;
            out.push((g, d));
        }
    }
    if !rest.is_constant() {
        let d = rest.deg();
        out.push((rest, d));
    }
    Ok(out)
}

/// Splits a product of distinct primes of degree `d` using the absolute trace
/// `a + a^2 + a^4 + ... + a^(2^(2d-1))`, which lands in GF(2) on each component.
fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) -> Result<()> {
    if f.deg() == d {
        out.push(f.clone());
        return Ok(());
    }
    let n = f.deg();
    loop {
        let a = Poly::from_coeffs((0..n).map(|_| Gf4::from_code(rng.gen_range(0..4))).collect());
        if a.is_constant() {
            continue;
        }
        let mut term = a.clone();
        let mut trace = a;
        for _ in 1..2 * d {
            term = term.square_mod(f)?;
            trace += &term;
        }
        if trace.is_zero() {
            continue;
        }
        let g = f.gcd(&trace)?;
        if !g.is_constant() && g.deg() < n {
            let cofactor = f.div_exact(&g).expect("gcd divides");
            equal_degree(&g, d, rng, out)?;
            return equal_degree(&cofactor, d, rng, out);
        }
    }
}

/// Number of distinct prime factors.
pub fn omega_count(f: &Poly) -> Result<usize> {
    Ok(factorize(f)?.omega())
}
