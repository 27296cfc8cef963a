//! Dense polynomials over GF(4).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf4::Gf4;

/// A polynomial over GF(4); `coeffs[i]` is the coefficient of x^i.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Gf4>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Gf4::ONE)
    }

    pub fn x() -> Poly {
        Poly { coeffs: vec![Gf4::ZERO, Gf4::ONE] }
    }

    pub fn constant(c: Gf4) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `x + c`
    pub fn linear(c: Gf4) -> Poly {
        Poly { coeffs: vec![c, Gf4::ONE] }
    }

    /// `c * x^exp`
    pub fn monomial(c: Gf4, exp: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Gf4::ZERO; exp + 1];
        coeffs[exp] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Gf4>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_codes(codes: &[u8]) -> Poly {
        Poly::from_coeffs(codes.iter().map(|&c| Gf4::from_code(c)).collect())
    }

    pub fn coeffs(&self) -> &[Gf4] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Gf4 {
        self.coeffs.get(i).copied().unwrap_or(Gf4::ZERO)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Gf4::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Gf4 {
        self.coeffs.last().copied().unwrap_or(Gf4::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Gf4::ONE
    }

    pub fn scale(&self, c: Gf4) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|&a| a * c).collect() }
    }

    /// The monic associate; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading().inv() {
            Ok(inv) => self.scale(inv),
            Err(_) => Poly::zero(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Gf4::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (slot, &b) in out[i..].iter_mut().zip(&other.coeffs) {
                *slot += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    /// `self^2`, computed coefficient-wise through the Frobenius map.
    pub fn square(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Gf4::ZERO; 2 * self.coeffs.len() - 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[2 * i] = c.square();
        }
        Poly { coeffs: out }
    }

    pub fn pow(&self, mut exp: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let lead_inv = divisor.leading().inv().map_err(|_| Error::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Gf4::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let q = c * lead_inv;
            quot[i - dd] = q;
            for (slot, &d) in rem[i - dd..=i].iter_mut().zip(&divisor.coeffs) {
                *slot += q * d;
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, modulus: &Poly) -> Result<Poly> {
        let mut r = self.clone();
        r.reduce(modulus)?;
        Ok(r)
    }

    /// In-place reduction modulo `modulus`.
    pub fn reduce(&mut self, modulus: &Poly) -> Result<()> {
        let lead_inv = modulus.leading().inv().map_err(|_| Error::DivisionByZero)?;
        let dm = modulus.coeffs.len() - 1;
        let n = self.coeffs.len();
        if n <= dm {
            return Ok(());
        }
        for i in (dm..n).rev() {
            let c = self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let q = c * lead_inv;
            for (slot, &d) in self.coeffs[i - dm..=i].iter_mut().zip(&modulus.coeffs) {
                *slot += q * d;
            }
        }
        self.coeffs.truncate(dm);
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        Ok(())
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        match self.divrem(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            a.reduce(&b)?;
            std::mem::swap(&mut a, &mut b);
        }
        Ok(a.monic())
    }

    pub fn eval(&self, at: Gf4) -> Gf4 {
        self.coeffs.iter().rev().fold(Gf4::ZERO, |acc, &c| acc * at + c)
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(inner);
            acc += &Poly::constant(c);
        }
        acc
    }

    /// `self(x + c)`
    pub fn translate(&self, c: Gf4) -> Poly {
        self.compose(&Poly::linear(c))
    }

    /// Formal derivative. In characteristic 2 only odd-index coefficients survive.
    pub fn derivative(&self) -> Poly {
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| if i % 2 == 1 { c } else { Gf4::ZERO }).collect();
        Poly::from_coeffs(coeffs)
    }

    /// Square root, when `self` is a perfect square.
    pub fn sqrt(&self) -> Option<Poly> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        let coeffs = self.coeffs.iter().step_by(2).map(|c| c.sqrt()).collect();
        Some(Poly::from_coeffs(coeffs))
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Result<Poly> {
        let mut p = self.mul(other);
        p.reduce(modulus)?;
        Ok(p)
    }

    pub fn square_mod(&self, modulus: &Poly) -> Result<Poly> {
        let mut p = self.square();
        p.reduce(modulus)?;
        Ok(p)
    }

    /// Parses the polynomial text grammar, including parenthesised factors
    /// with exponents such as `x^2(x+1)^3`.
    pub fn parse(text: &str) -> Result<Poly> {
        Parser::new(text).parse()
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Canonical order: by degree, then by canonical text.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.to_string().cmp(&other.to_string()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Poly) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Poly) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        if rhs.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Gf4::ZERO);
        }
        for (slot, &c) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *slot += c;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add<Gf4> for &Poly {
    type Output = Poly;
    fn add(self, rhs: Gf4) -> Poly {
        self + &Poly::constant(rhs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exp, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if exp == 0 {
                write!(f, "{c}")?;
                continue;
            }
            if c != Gf4::ONE {
                write!(f, "{c}")?;
            }
            f.write_str("x")?;
            if exp > 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Poly> {
        Poly::parse(s)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Poly, D::Error> {
        let text = String::deserialize(deserializer)?;
        Poly::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Largest exponent and degree accepted by the parser.
pub const MAX_PARSE_DEGREE: u64 = 1 << 20;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

// expr    := product ('+' product)*
// product := atom atom*
// atom    := '(' expr ')' ('^' uint)? | term
// term    := '0' | coef | coef? 'x' ('^' uint)?
// coef    := '1' | 'a' | 'a1'
impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { src: text.as_bytes(), pos: 0 }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Poly> {
        if self.peek().is_none() {
            return self.error("empty input");
        }
        let p = self.expr()?;
        match self.peek() {
            None => Ok(p),
            Some(c) => self.error(format!("unexpected `{}`", c as char)),
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.product()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            acc += &self.product()?;
        }
        Ok(acc)
    }

    fn starts_atom(c: u8) -> bool {
        matches!(c, b'(' | b'0' | b'1' | b'a' | b'x')
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.atom()?;
        while let Some(c) = self.peek() {
            if !Self::starts_atom(c) {
                break;
            }
            let next = self.atom()?;
            if acc.deg() as u64 + next.deg() as u64 > MAX_PARSE_DEGREE {
                return self.error("degree too large");
            }
            acc = acc.mul(&next);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.error("expected `)`");
                }
                self.pos += 1;
                let exp = self.exponent()?.unwrap_or(1);
                if inner.deg() as u64 * exp > MAX_PARSE_DEGREE {
                    return self.error("degree too large");
                }
                Ok(inner.pow(exp))
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(Poly::zero())
            }
            Some(b'1' | b'a' | b'x') => self.term(),
            Some(c) => self.error(format!("unexpected `{}`", c as char)),
            None => self.error("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let coef = match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                Some(Gf4::ONE)
            }
            Some(b'a') => {
                self.pos += 1;
                if self.src.get(self.pos) == Some(&b'1') {
                    self.pos += 1;
                    Some(Gf4::ALPHA_PLUS_ONE)
                } else {
                    Some(Gf4::ALPHA)
                }
            }
            _ => None,
        };
        if self.peek() == Some(b'x') {
            self.pos += 1;
            let exp = self.exponent()?.unwrap_or(1);
            return Ok(Poly::monomial(coef.unwrap_or(Gf4::ONE), exp as usize));
        }
        match coef {
            Some(c) => Ok(Poly::constant(c)),
            None => self.error("expected a term"),
        }
    }

    fn exponent(&mut self) -> Result<Option<u64>> {
        if self.peek() != Some(b'^') {
            return Ok(None);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an exponent");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match digits.parse::<u64>() {
            Ok(e) if e <= MAX_PARSE_DEGREE => Ok(Some(e)),
            _ => {
                self.pos = start;
                self.error("exponent too large")
            }
        }
    }
}

/// Iterator over all monic polynomials of one degree.
///
/// Ordered lexicographically on the coefficient codes `(c0, c1, ..., c_{d-1})`,
/// constant coefficient first.
#[derive(Debug, Clone)]
pub struct MonicPolys {
    degree: usize,
    next: u64,
    end: u64,
}

impl Iterator for MonicPolys {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.next >= self.end {
            return None;
        }
        let idx = self.next;
        self.next += 1;
        let d = self.degree;
        let mut coeffs = Vec::with_capacity(d + 1);
        for j in 0..d {
            let shift = 2 * (d - 1 - j);
            coeffs.push(Gf4::from_code(((idx >> shift) & 3) as u8));
        }
        coeffs.push(Gf4::ONE);
        Some(Poly { coeffs })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for MonicPolys {}

/// All `4^degree` monic polynomials of exactly `degree`. Degrees above 31 are rejected.
pub fn enumerate_monic(degree: usize) -> MonicPolys {
    assert!(degree < 32, "enumerate_monic: degree {degree} is too large to enumerate");
    MonicPolys { degree, next: 0, end: 1u64 << (2 * degree) }
}

/// Monic polynomials of degree `0..=max_degree`, by degree.
pub fn enumerate_monic_up_to(max_degree: usize) -> impl Iterator<Item = Poly> {
    (0..=max_degree).flat_map(enumerate_monic)
}
