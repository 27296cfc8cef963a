use std::collections::BTreeSet;

use serde::Serialize;

use crate::classify::families::{family_tuples, Family, SPORADIC_SPLITTING};
use crate::classify::memo::base_valuation;
use crate::classify::{orbit_closure, search_splitting_bup, ExponentTuple, FactorBase, SearchOptions};
use crate::error::Result;
use crate::poly::Poly;
use crate::sigma::{sigma_prime_power_unchecked, SigmaKind};

const NAMES: [&str; 4] = ["P", "Q", "R", "S"];

/// One row: `sigma**(T^z)` over the base `(P, Q, R, S)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpressionRow {
    /// `"P"`, `"Q"`, `"R"` or `"S"`.
    pub prime: &'static str,
    pub exponent: u32,
    /// Shape of the exponent, e.g. `"7*2^r-1 (r=2)"`.
    pub pattern: String,
    pub computed: String,
    pub predicted: String,
}

impl ExpressionRow {
    pub fn matches(&self) -> bool {
        self.computed == self.predicted
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpressionTable {
    pub title: String,
    pub rows: Vec<ExpressionRow>,
}

impl ExpressionTable {
    pub fn mismatches(&self) -> Vec<&ExpressionRow> {
        self.rows.iter().filter(|r| !r.matches()).collect()
    }
}

/// `P^a Q^b R S`, powers of one written bare, zero powers omitted.
pub fn monomial_text(v: [u32; 4]) -> String {
    let parts: Vec<String> = v
        .iter()
        .zip(NAMES)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, n)| if e == 1 { n.to_string() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

fn row(base: &FactorBase, pos: usize, exponent: u32, pattern: String, predicted: [u32; 4]) -> ExpressionRow {
    let value = sigma_prime_power_unchecked(&base.primes()[pos], exponent, SigmaKind::BiUnitary);
    let computed = match base_valuation(&value, base) {
        Some(v) => monomial_text(v),
        None => format!("outside base: {value}"),
    };
    ExpressionRow { prime: NAMES[pos], exponent, pattern, computed, predicted: monomial_text(predicted) }
}

/// `sigma**` of the prime powers over `(P, P+1, P^3+P+1, P^3+P^2+1)`, for the
/// exponent shapes that survive the non-splitting analysis, next to the
/// predicted monomials. `P` is taken to be `x`.
pub fn expression_tables() -> Result<Vec<ExpressionTable>> {
    expression_tables_for(&Poly::x())
}

pub fn expression_tables_for(p: &Poly) -> Result<Vec<ExpressionTable>> {
    let base = FactorBase::omega2(p)?;
    let mut tables = Vec::new();

    // P and Q mirror each other with the first two positions swapped
    for (pos, other) in [(0usize, 1usize), (1, 0)] {
        let with = |q: u32, rs: u32| {
            let mut v = [0u32; 4];
            v[other] = q;
            v[2] = rs;
            v[3] = rs;
            v
        };
        let mut rows = vec![row(&base, pos, 2, "2".into(), with(2, 0)), row(&base, pos, 14, "14".into(), with(8, 1))];
        for r in 1..=6u32 {
            let e = (1 << r) - 1;
            rows.push(row(&base, pos, e, format!("2^r-1 (r={r})"), with(e, 0)));
        }
        for r in 1..=3u32 {
            let e = 7 * (1 << r) - 1;
            rows.push(row(&base, pos, e, format!("7*2^r-1 (r={r})"), with((1 << r) - 1, 1 << r)));
        }
        let title = format!("sigma**({}^{})", NAMES[pos], if pos == 0 { "h" } else { "k" });
        tables.push(ExpressionTable { title, rows });
    }

    // R and S: (P, Q) exponents (1, 2) and (2, 1) per unit of 2^e - 1
    for (pos, weights, var) in [(2usize, [1u32, 2], "l"), (3, [2, 1], "t")] {
        let mut rows = vec![row(&base, pos, 2, "2".into(), [2 * weights[0], 2 * weights[1], 0, 0])];
        for s in 1..=3u32 {
            let e = (1 << s) - 1;
            rows.push(row(&base, pos, e, format!("2^s-1 (s={s})"), [e * weights[0], e * weights[1], 0, 0]));
        }
        tables.push(ExpressionTable { title: format!("sigma**({}^{var})", NAMES[pos]), rows });
    }
    Ok(tables)
}

/// Splitting bi-unitary perfect tuples with exponents at most 6 that fall in
/// none of the one-parameter families, keeping those with `a >= b`.
pub fn sporadic_splitting_tuples(opts: &SearchOptions) -> Result<Vec<ExponentTuple>> {
    let report = search_splitting_bup(6, opts)?;
    let mut family: BTreeSet<ExponentTuple> = BTreeSet::new();
    for f in [Family::T1i, Family::T1ii, Family::T1iii] {
        family.extend(family_tuples(f, 3)?.into_iter().map(|(_, t)| t));
    }
    let family = orbit_closure(family);
    Ok(report.hit_tuples().into_iter().filter(|t| !family.contains(t) && t.0[0] >= t.0[1]).collect())
}

/// Differences between the computed and listed sporadic tuples, both ways.
pub fn sporadic_diff(computed: &[ExponentTuple]) -> (Vec<ExponentTuple>, Vec<ExponentTuple>) {
    let listed: BTreeSet<_> = SPORADIC_SPLITTING.iter().copied().collect();
    let got: BTreeSet<_> = computed.iter().copied().collect();
    (listed.difference(&got).copied().collect(), got.difference(&listed).copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials() {
        assert_eq!(monomial_text([0, 8, 1, 1]), "Q^8 R S");
        assert_eq!(monomial_text([2, 4, 0, 0]), "P^2 Q^4");
        assert_eq!(monomial_text([0; 4]), "1");
    }

    #[test]
    fn expression_tables_match_predictions() {
        let tables = expression_tables().unwrap();
        assert_eq!(tables.len(), 4);
        for t in &tables {
            assert!(t.mismatches().is_empty(), "{}: {:?}", t.title, t.mismatches());
        }
        let h14 = tables[0].rows.iter().find(|r| r.exponent == 14).unwrap();
        assert_eq!(h14.computed, "Q^8 R S");
        assert_eq!(tables[2].rows[0].computed, "P^2 Q^4");
        assert_eq!(tables[3].rows[0].computed, "P^4 Q^2");
    }

    #[test]
    fn tables_do_not_depend_on_p() {
        let pk = Poly::parse("x^2+x+a").unwrap();
        let a = expression_tables().unwrap();
        let b = expression_tables_for(&pk).unwrap();
        for (ta, tb) in a.iter().zip(&b) {
            let ca: Vec<_> = ta.rows.iter().map(|r| &r.computed).collect();
            let cb: Vec<_> = tb.rows.iter().map(|r| &r.computed).collect();
            assert_eq!(ca, cb);
        }
    }

    #[test]
    fn sporadic_tuples_are_regenerated() {
        let computed = sporadic_splitting_tuples(&SearchOptions::default()).unwrap();
        assert_eq!(sporadic_diff(&computed), (vec![], vec![]));
        assert_eq!(computed, SPORADIC_SPLITTING.to_vec());
    }
}
