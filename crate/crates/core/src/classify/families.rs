use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::classify::{ExponentTuple, FactorBase};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Representatives listed for the sporadic splitting bi-unitary perfect tuples.
pub const SPORADIC_SPLITTING: [ExponentTuple; 14] = [
    ExponentTuple::new(4, 3, 3, 4),
    ExponentTuple::new(4, 3, 4, 3),
    ExponentTuple::new(4, 4, 3, 5),
    ExponentTuple::new(4, 4, 4, 4),
    ExponentTuple::new(4, 4, 5, 3),
    ExponentTuple::new(4, 4, 6, 6),
    ExponentTuple::new(5, 3, 4, 4),
    ExponentTuple::new(5, 3, 6, 6),
    ExponentTuple::new(5, 4, 4, 5),
    ExponentTuple::new(5, 4, 5, 4),
    ExponentTuple::new(6, 6, 3, 5),
    ExponentTuple::new(6, 6, 4, 4),
    ExponentTuple::new(6, 6, 5, 3),
    ExponentTuple::new(6, 6, 6, 6),
];

/// Largest accepted family parameter; keeps `6 * 2^r - 1` inside `u32`.
pub const MAX_PARAM_BOUND: u32 = 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    #[serde(rename = "T1.i")]
    T1i,
    #[serde(rename = "T1.ii")]
    T1ii,
    #[serde(rename = "T1.iii")]
    T1iii,
    #[serde(rename = "T1.iv-table")]
    T1Table,
    #[serde(rename = "T2.i")]
    T2i,
    #[serde(rename = "T2.ii")]
    T2ii,
    #[serde(rename = "T2.iii")]
    T2iii,
    #[serde(rename = "T2.iv")]
    T2iv,
    #[serde(rename = "L3.1.i")]
    L31i,
    #[serde(rename = "L3.1.ii")]
    L31ii,
    #[serde(rename = "L3.1.iii")]
    L31iii,
    #[serde(rename = "L3.1.iv")]
    L31iv,
}

/// Which four-prime base a family lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BaseKind {
    Splitting,
    Omega1Pair,
    Omega2,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::T1i,
        Family::T1ii,
        Family::T1iii,
        Family::T1Table,
        Family::T2i,
        Family::T2ii,
        Family::T2iii,
        Family::T2iv,
        Family::L31i,
        Family::L31ii,
        Family::L31iii,
        Family::L31iv,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Family::T1i => "T1.i",
            Family::T1ii => "T1.ii",
            Family::T1iii => "T1.iii",
            Family::T1Table => "T1.iv-table",
            Family::T2i => "T2.i",
            Family::T2ii => "T2.ii",
            Family::T2iii => "T2.iii",
            Family::T2iv => "T2.iv",
            Family::L31i => "L3.1.i",
            Family::L31ii => "L3.1.ii",
            Family::L31iii => "L3.1.iii",
            Family::L31iv => "L3.1.iv",
        }
    }

    pub fn base_kind(self) -> BaseKind {
        match self {
            Family::T2i | Family::T2ii | Family::T2iii => BaseKind::Omega1Pair,
            Family::T2iv => BaseKind::Omega2,
            _ => BaseKind::Splitting,
        }
    }

    /// Perfect (sigma) families rather than bi-unitary perfect ones.
    pub fn is_perfect_family(self) -> bool {
        matches!(self, Family::L31i | Family::L31ii | Family::L31iii | Family::L31iv)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Family::ALL
            .into_iter()
            .find(|f| f.id().eq_ignore_ascii_case(s) || (*f == Family::T1Table && s.eq_ignore_ascii_case("T1.iv")))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// A family together with the concrete primes it is instantiated on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub family: Family,
    /// `P` for the non-splitting families; `x` when absent.
    pub p: Option<Poly>,
    /// `R` for the Omega1-pair families; `x^2+x+a` when absent.
    pub r: Option<Poly>,
}

impl FamilyDescriptor {
    pub fn new(family: Family) -> Self {
        FamilyDescriptor { family, p: None, r: None }
    }

    pub fn parse(id: &str) -> Result<Self> {
        Ok(Self::new(id.parse()?))
    }

    pub fn with_p(mut self, p: Poly) -> Self {
        self.p = Some(p);
        self
    }

    pub fn with_r(mut self, r: Poly) -> Self {
        self.r = Some(r);
        self
    }

    pub fn base(&self) -> Result<FactorBase> {
        let p = self.p.clone().unwrap_or_else(Poly::x);
        match self.family.base_kind() {
            BaseKind::Splitting => Ok(FactorBase::splitting()),
            BaseKind::Omega2 => FactorBase::omega2(&p),
            BaseKind::Omega1Pair => {
                let r = match &self.r {
                    Some(r) => r.clone(),
                    None => Poly::parse("x^2+x+a")?,
                };
                FactorBase::omega1_pair(&p, &r)
            }
        }
    }
}

/// One member of a family: parameters, exponents and the base they sit on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyInstance {
    pub family: Family,
    /// `(name, value)` pairs, e.g. `[("n", 2)]`.
    pub params: Vec<(&'static str, u32)>,
    pub tuple: ExponentTuple,
    pub base: Vec<Poly>,
}

impl FamilyInstance {
    pub fn polynomial(&self) -> Poly {
        FactorBase::from_primes_unchecked(self.base.clone()).polynomial(&self.tuple.0)
    }

    pub fn degree(&self) -> usize {
        FactorBase::from_primes_unchecked(self.base.clone()).degree(&self.tuple.0)
    }
}

/// `(name, value)` parameter assignments of a family member.
pub type Params = Vec<(&'static str, u32)>;

fn m1(k: u32, shift: u32) -> u32 {
    k * (1u32 << shift) - 1
}

/// Exponent tuples of a family with every parameter in `0..=param_bound`,
/// in parameter order (duplicates kept, one per parameter choice).
pub fn family_tuples(family: Family, param_bound: u32) -> Result<Vec<(Params, ExponentTuple)>> {
    if param_bound > MAX_PARAM_BOUND {
        return Err(Error::Cap {
            what: "family parameter bound",
            value: u64::from(param_bound),
            cap: u64::from(MAX_PARAM_BOUND),
        });
    }
    let t = ExponentTuple::new;
    let range = 0..=param_bound;
    let out = match family {
        Family::T1i | Family::T2i => vec![(vec![], t(2, 2, 2, 2))],
        Family::T1ii | Family::T2ii => range.map(|n| (vec![("n", n)], t(2, 2, m1(1, n), m1(1, n)))).collect(),
        Family::T1iii | Family::T2iii => range.map(|n| (vec![("n", n)], t(m1(1, n), m1(1, n), 2, 2))).collect(),
        Family::T1Table => {
            SPORADIC_SPLITTING.iter().enumerate().map(|(i, &x)| (vec![("column", i as u32 + 1)], x)).collect()
        }
        Family::T2iv => vec![(vec![], t(7, 13, 2, 2)), (vec![], t(13, 7, 2, 2)), (vec![], t(14, 14, 2, 2))],
        Family::L31i => range
            .clone()
            .flat_map(|n| {
                range.clone().map(move |m| (vec![("n", n), ("m", m)], t(m1(1, n), m1(1, n), m1(1, m), m1(1, m))))
            })
            .collect(),
        Family::L31ii => [1u32, 3]
            .into_iter()
            .flat_map(|nn| {
                range.clone().map(move |n| {
                    let e = m1(nn, n);
                    (vec![("N", nn), ("n", n)], t(e, e, e, e))
                })
            })
            .collect(),
        Family::L31iii => range.map(|r| (vec![("r", r)], t(m1(3, r), m1(2, r), m1(3, r), m1(2, r)))).collect(),
        Family::L31iv => range.map(|r| (vec![("r", r)], t(m1(3, r), m1(3, r), m1(6, r), m1(4, r)))).collect(),
    };
    Ok(out)
}

/// Concrete members of a family with parameters in `0..=param_bound`.
pub fn family_instances(desc: &FamilyDescriptor, param_bound: u32) -> Result<Vec<FamilyInstance>> {
    let base = desc.base()?;
    Ok(family_tuples(desc.family, param_bound)?
        .into_iter()
        .map(|(params, tuple)| FamilyInstance { family: desc.family, params, tuple, base: base.primes().to_vec() })
        .collect())
}
