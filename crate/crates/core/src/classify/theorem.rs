use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::classify::families::{family_tuples, Family};
use crate::classify::search::{search_nonsplit_bup, search_pair_bup, NonsplitBounds};
use crate::classify::{
    full_orbit_closure, orbit_closure, search_perfect_splitting, search_splitting_bup, ExponentTuple, SearchOptions,
};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// The classification statements that can be checked against a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theorem {
    /// Splitting bi-unitary perfect polynomials.
    #[serde(rename = "T1")]
    Splitting,
    /// Non-splitting bi-unitary perfect polynomials with four prime factors.
    #[serde(rename = "T2")]
    NonSplitting,
    /// Splitting perfect polynomials.
    #[serde(rename = "L3.1")]
    PerfectSplitting,
}

impl Theorem {
    pub fn id(self) -> &'static str {
        match self {
            Theorem::Splitting => "T1",
            Theorem::NonSplitting => "T2",
            Theorem::PerfectSplitting => "L3.1",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "T1" => Ok(Theorem::Splitting),
            "T2" => Ok(Theorem::NonSplitting),
            "L3.1" => Ok(Theorem::PerfectSplitting),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremBounds {
    /// Exponent box `[1, max_exp]^4` for the splitting searches and the pair search.
    pub max_exp: u32,
    /// Omega2 members used for the `(7,13,2,2)`-type statement.
    pub omega2_bases: Vec<Poly>,
    /// Omega1 pairs `(P, R)` used for the `(2,2,2^n-1,2^n-1)`-type statements.
    pub omega1_pairs: Vec<(Poly, Poly)>,
    pub nonsplit: NonsplitBounds,
}

impl TheoremBounds {
    pub fn for_theorem(theorem: Theorem) -> Self {
        let p = |s: &str| Poly::parse(s).expect("literal");
        TheoremBounds {
            max_exp: match theorem {
                Theorem::Splitting => 31,
                Theorem::NonSplitting => 15,
                Theorem::PerfectSplitting => 23,
            },
            omega2_bases: vec![p("x"), p("x+a"), p("x^2+x+a"), p("x^10+x^5+a")],
            omega1_pairs: vec![(p("x"), p("x^2+x+a"))],
            nonsplit: NonsplitBounds::default(),
        }
    }
}

/// Outcome of comparing one search against the families it should produce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub theorem: Theorem,
    /// Which search this is, e.g. `"split-bup"` or `"nonsplit-bup x"`.
    pub label: String,
    pub holds: bool,
    /// Predicted but not found (after orbit closure where it applies).
    pub missing: Vec<ExponentTuple>,
    /// Found but not predicted.
    pub extra: Vec<ExponentTuple>,
    /// The same comparison without orbit closure; informational only.
    pub raw_missing: Vec<ExponentTuple>,
    pub raw_extra: Vec<ExponentTuple>,
    /// Found tuples outside the prediction even after also closing it under
    /// conjugation of coefficients; informational only.
    pub unexplained_extra: Vec<ExponentTuple>,
    pub hits: usize,
    pub candidates: u64,
}

fn tuples_in_box(families: &[Family], max_exp: u32) -> Result<BTreeSet<ExponentTuple>> {
    // exponents grow at least like 2^p - 1, so p <= log2(max_exp + 1) suffices
    let bound = (32 - (max_exp + 1).leading_zeros()).min(super::families::MAX_PARAM_BOUND);
    let mut out = BTreeSet::new();
    for &f in families {
        out.extend(family_tuples(f, bound)?.into_iter().map(|(_, t)| t));
    }
    Ok(out.into_iter().filter(|t| t.in_box(1, max_exp)).collect())
}

fn compare(
    theorem: Theorem,
    label: String,
    predicted: &BTreeSet<ExponentTuple>,
    found: &BTreeSet<ExponentTuple>,
    closed: bool,
    candidates: u64,
) -> TheoremCheck {
    let diff = |a: &BTreeSet<ExponentTuple>, b: &BTreeSet<ExponentTuple>| a.difference(b).copied().collect::<Vec<_>>();
    let (cp, cf) = if closed {
        (orbit_closure(predicted.iter().copied()), orbit_closure(found.iter().copied()))
    } else {
        (predicted.clone(), found.clone())
    };
    let missing = diff(&cp, &cf);
    let extra = diff(&cf, &cp);
    TheoremCheck {
        theorem,
        label,
        holds: missing.is_empty() && extra.is_empty(),
        missing,
        extra,
        raw_missing: diff(predicted, found),
        raw_extra: diff(found, predicted),
        unexplained_extra: diff(found, &full_orbit_closure(predicted.iter().copied())),
        hits: found.len(),
        candidates,
    }
}

/// Runs the searches behind a theorem and compares their hits with the
/// family instances inside the same bounds. Splitting statements are
/// compared up to translation `x -> x + c`; the others literally.
pub fn verify_theorem(theorem: Theorem, bounds: &TheoremBounds, opts: &SearchOptions) -> Result<Vec<TheoremCheck>> {
    let max = bounds.max_exp;
    match theorem {
        Theorem::Splitting => {
            let r = search_splitting_bup(max, opts)?;
            let predicted = tuples_in_box(&[Family::T1i, Family::T1ii, Family::T1iii, Family::T1Table], max)?;
            Ok(vec![compare(theorem, r.search.clone(), &predicted, &r.hit_tuples(), true, r.candidates)])
        }
        Theorem::PerfectSplitting => {
            let r = search_perfect_splitting(max, opts)?;
            let predicted = tuples_in_box(&[Family::L31i, Family::L31ii, Family::L31iii, Family::L31iv], max)?;
            Ok(vec![compare(theorem, r.search.clone(), &predicted, &r.hit_tuples(), true, r.candidates)])
        }
        Theorem::NonSplitting => {
            let mut checks = Vec::new();
            let four: BTreeSet<_> = tuples_in_box(&[Family::T2iv], u32::MAX >> 8)?;
            for p in &bounds.omega2_bases {
                let r = search_nonsplit_bup(p, &bounds.nonsplit, opts)?;
                let label = format!("{} {p}", r.search);
                checks.push(compare(theorem, label, &four, &r.hit_tuples(), false, r.candidates));
            }
            let pair = tuples_in_box(&[Family::T2i, Family::T2ii, Family::T2iii], max)?;
            for (p, q) in &bounds.omega1_pairs {
                let r = search_pair_bup(p, q, max, opts)?;
                let label = format!("{} {p} {q}", r.search);
                checks.push(compare(theorem, label, &pair, &r.hit_tuples(), false, r.candidates));
            }
            Ok(checks)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids() {
        for t in [Theorem::Splitting, Theorem::NonSplitting, Theorem::PerfectSplitting] {
            assert_eq!(t.id().parse::<Theorem>().unwrap(), t);
        }
        assert!("T3".parse::<Theorem>().is_err());
    }

    #[test]
    fn small_splitting_box() {
        let bounds = TheoremBounds { max_exp: 8, ..TheoremBounds::for_theorem(Theorem::Splitting) };
        let checks = verify_theorem(Theorem::Splitting, &bounds, &SearchOptions::default()).unwrap();
        assert!(checks[0].holds, "{:?}", checks[0]);
        // the listed representatives are not closed under translation
        assert!(checks[0].raw_extra.contains(&ExponentTuple::new(3, 4, 4, 3)));
    }

    #[test]
    fn small_perfect_box() {
        let bounds = TheoremBounds { max_exp: 7, ..TheoremBounds::for_theorem(Theorem::PerfectSplitting) };
        let checks = verify_theorem(Theorem::PerfectSplitting, &bounds, &SearchOptions::default()).unwrap();
        let c = &checks[0];
        assert!(c.missing.is_empty());
        // conjugates of (2,1,2,1) and (5,3,5,3) are perfect but not translates of a listed instance
        let t = ExponentTuple::new;
        assert_eq!(c.extra, vec![t(1, 2, 2, 1), t(2, 1, 1, 2), t(3, 5, 5, 3), t(5, 3, 3, 5)]);
        assert!(!c.holds);
        assert!(c.unexplained_extra.is_empty());
    }

    #[test]
    fn nonsplit_for_x_only() {
        let mut bounds = TheoremBounds::for_theorem(Theorem::NonSplitting);
        bounds.omega2_bases.truncate(1);
        bounds.max_exp = 7;
        let checks = verify_theorem(Theorem::NonSplitting, &bounds, &SearchOptions::default()).unwrap();
        assert_eq!(checks.len(), 2);
        assert!(checks.iter().all(|c| c.holds), "{checks:?}");
    }
}
