use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use crate::classify::memo::SigmaProfile;
use crate::classify::{ExponentTuple, FactorBase, Hit, SearchOptions, SearchReport, MAX_SPLIT_EXP};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::sigma::{sigma, sigma_bruteforce, SigmaKind};

/// Exponent candidates for the non-splitting search over `(P, P+1, R, S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonsplitBounds {
    /// Candidates for the exponents of `P` and `P+1`.
    pub hk: Vec<u32>,
    /// Candidates for the exponents of `R` and `S`.
    pub lt: Vec<u32>,
}

impl NonsplitBounds {
    /// `h, k` in `{2, 14} u {2^r - 1 : 1 <= r <= 6} u {7*2^r - 1 : 1 <= r <= 3}` and
    /// `l, t` in `{2} u {2^s - 1 : 1 <= s <= 3}`.
    pub fn narrowed() -> Self {
        let mut hk: Vec<u32> = vec![2, 14];
        hk.extend((1..=6).map(|r| (1u32 << r) - 1));
        hk.extend((1..=3).map(|r| 7 * (1u32 << r) - 1));
        hk.sort_unstable();
        hk.dedup();
        let mut lt: Vec<u32> = vec![2];
        lt.extend((1..=3).map(|s| (1u32 << s) - 1));
        lt.sort_unstable();
        NonsplitBounds { hk, lt }
    }

    /// Every exponent `1..=hk_max` for `h, k` and `1..=lt_max` for `l, t`.
    pub fn raw(hk_max: u32, lt_max: u32) -> Self {
        NonsplitBounds { hk: (1..=hk_max).collect(), lt: (1..=lt_max).collect() }
    }
}

impl Default for NonsplitBounds {
    fn default() -> Self {
        Self::narrowed()
    }
}

struct ScanOutcome {
    hits: Vec<ExponentTuple>,
    candidates: u64,
    profile: SigmaProfile,
}

/// Scans the product of `ranges` for tuples fixed by `sigma_kind` over `base`.
fn scan(
    base: &FactorBase,
    kind: SigmaKind,
    ranges: [&[u32]; 4],
    not_all_odd_only: bool,
    opts: &SearchOptions,
) -> Result<ScanOutcome> {
    let total: u64 = ranges.iter().map(|r| r.len() as u64).product();
    opts.check_candidates(total)?;
    opts.run(|| {
        let profile = SigmaProfile::build(base, kind, ranges);
        let cols: Vec<Vec<Option<[u32; 4]>>> =
            (0..4).map(|i| ranges[i].iter().map(|&e| profile.get(i, e).flatten()).collect()).collect();
        let chunks: Vec<(Vec<ExponentTuple>, u64)> = (0..ranges[0].len())
            .into_par_iter()
            .map(|ia| {
                let mut hits = Vec::new();
                let mut candidates = 0u64;
                let a = ranges[0][ia];
                for (ib, &b) in ranges[1].iter().enumerate() {
                    for (ic, &c) in ranges[2].iter().enumerate() {
                        for (id, &d) in ranges[3].iter().enumerate() {
                            let t = ExponentTuple([a, b, c, d]);
                            if not_all_odd_only && t.all_odd() {
                                continue;
                            }
                            candidates += 1;
                            let (Some(va), Some(vb), Some(vc), Some(vd)) =
                                (cols[0][ia], cols[1][ib], cols[2][ic], cols[3][id])
                            else {
                                continue;
                            };
                            let sum: [u32; 4] = std::array::from_fn(|j| va[j] + vb[j] + vc[j] + vd[j]);
                            if sum == t.0 {
                                hits.push(t);
                            }
                        }
                    }
                }
                (hits, candidates)
            })
            .collect();
        let mut hits: Vec<ExponentTuple> = chunks.iter().flat_map(|(h, _)| h.iter().copied()).collect();
        hits.sort_unstable();
        let candidates = chunks.iter().map(|(_, c)| c).sum();
        ScanOutcome { hits, candidates, profile }
    })
}

/// Re-checks a hit on the expanded polynomial through full factorization, and
/// by literal divisor summation when it has few enough divisors.
pub(crate) fn verify_fixed_point(hit: &Hit, kind: SigmaKind, opts: &SearchOptions) -> Result<()> {
    let poly = hit.polynomial();
    let fail = || Error::Verification { poly: hit.factored_text() };
    if sigma(&poly, kind)? != poly {
        return Err(fail());
    }
    let divisor_count: u128 = hit.exps.iter().map(|&e| u128::from(e) + 1).product();
    if divisor_count <= u128::from(opts.verify_divisor_cap)
        && sigma_bruteforce(&poly, kind, opts.verify_divisor_cap)? != poly
    {
        return Err(fail());
    }
    Ok(())
}

pub(crate) fn verify_all(hits: &[Hit], kind: SigmaKind, opts: &SearchOptions) -> Result<()> {
    opts.run(|| hits.par_iter().try_for_each(|h| verify_fixed_point(h, kind, opts)))?
}

fn check_max_exp(max_exp: u32) -> Result<()> {
    if max_exp == 0 {
        return Err(Error::InvalidBound("max_exp must be at least 1".into()));
    }
    if max_exp > MAX_SPLIT_EXP {
        return Err(Error::Cap { what: "max_exp", value: u64::from(max_exp), cap: u64::from(MAX_SPLIT_EXP) });
    }
    Ok(())
}

fn splitting_report(
    name: &str,
    kind: SigmaKind,
    max_exp: u32,
    not_all_odd_only: bool,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    check_max_exp(max_exp)?;
    let start = Instant::now();
    let base = FactorBase::splitting();
    let range: Vec<u32> = (1..=max_exp).collect();
    let out = scan(&base, kind, [&range, &range, &range, &range], not_all_odd_only, opts)?;
    let hits: Vec<Hit> = out.hits.iter().map(|t| base.hit(&t.0)).collect();
    verify_all(&hits, kind, opts)?;
    let mut bounds = serde_json::Map::new();
    bounds.insert("max_exp".into(), json!(max_exp));
    Ok(SearchReport {
        search: name.into(),
        bounds,
        hits,
        decomposable: Vec::new(),
        candidates: out.candidates,
        elapsed_ms: opts.elapsed(start),
    })
}

/// All not-all-odd `(a, b, c, d)` in `[1, max_exp]^4` with
/// `sigma**(x^a (x+1)^b (x+a)^c (x+a+1)^d)` equal to the polynomial itself.
pub fn search_splitting_bup(max_exp: u32, opts: &SearchOptions) -> Result<SearchReport> {
    splitting_report("split-bup", SigmaKind::BiUnitary, max_exp, true, opts)
}

/// All `(h, k, l, t)` in `[1, max_exp]^4` with `x^h (x+1)^k (x+a)^l (x+a+1)^t` perfect.
pub fn search_perfect_splitting(max_exp: u32, opts: &SearchOptions) -> Result<SearchReport> {
    splitting_report("split-perfect", SigmaKind::All, max_exp, false, opts)
}

/// Non-splitting search over `(P, P+1, P^3+P+1, P^3+P^2+1)` for `P` in Omega2.
///
/// Hits that factor as a product of two coprime bi-unitary perfect blocks go
/// to `decomposable`.
pub fn search_nonsplit_bup(p: &Poly, bounds: &NonsplitBounds, opts: &SearchOptions) -> Result<SearchReport> {
    if bounds.hk.contains(&0) || bounds.lt.contains(&0) {
        return Err(Error::InvalidBound("exponent candidates must be positive".into()));
    }
    let start = Instant::now();
    let base = FactorBase::omega2(p)?;
    let out = scan(&base, SigmaKind::BiUnitary, [&bounds.hk, &bounds.hk, &bounds.lt, &bounds.lt], true, opts)?;
    let (mut hits, mut decomposable) = (Vec::new(), Vec::new());
    for t in &out.hits {
        let hit = base.hit(&t.0);
        if has_fixed_unitary_block(t, &out.profile) {
            decomposable.push(hit);
        } else {
            hits.push(hit);
        }
    }
    verify_all(&hits, SigmaKind::BiUnitary, opts)?;
    verify_all(&decomposable, SigmaKind::BiUnitary, opts)?;
    let mut json_bounds = serde_json::Map::new();
    json_bounds.insert("base".into(), json!(p.to_string()));
    json_bounds.insert("hk".into(), json!(bounds.hk));
    json_bounds.insert("lt".into(), json!(bounds.lt));
    Ok(SearchReport {
        search: "nonsplit-bup".into(),
        bounds: json_bounds,
        hits,
        decomposable,
        candidates: out.candidates,
        elapsed_ms: opts.elapsed(start),
    })
}

/// True when some proper nonempty subset of the prime powers of a fixed point
/// is itself fixed.
fn has_fixed_unitary_block(t: &ExponentTuple, profile: &SigmaProfile) -> bool {
    let present: Vec<usize> = (0..4).filter(|&i| t.0[i] > 0).collect();
    let n = present.len();
    (1..(1u32 << n) - 1).any(|mask| {
        let mut sub = [0u32; 4];
        let mut image = [0u32; 4];
        for (bit, &i) in present.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                sub[i] = t.0[i];
                let v = profile.get(i, t.0[i]).flatten().expect("hit exponents are profiled");
                for j in 0..4 {
                    image[j] += v[j];
                }
            }
        }
        sub == image
    })
}

/// Search over `(P, P+1, R, R+1)` for two Omega1 members `P`, `R`, exponents in `[1, max_exp]`.
pub fn search_pair_bup(p: &Poly, r: &Poly, max_exp: u32, opts: &SearchOptions) -> Result<SearchReport> {
    check_max_exp(max_exp)?;
    let start = Instant::now();
    let base = FactorBase::omega1_pair(p, r)?;
    let range: Vec<u32> = (1..=max_exp).collect();
    let out = scan(&base, SigmaKind::BiUnitary, [&range, &range, &range, &range], true, opts)?;
    let hits: Vec<Hit> = out.hits.iter().map(|t| base.hit(&t.0)).collect();
    verify_all(&hits, SigmaKind::BiUnitary, opts)?;
    let mut bounds = serde_json::Map::new();
    bounds.insert("base".into(), json!([p.to_string(), r.to_string()]));
    bounds.insert("max_exp".into(), json!(max_exp));
    Ok(SearchReport {
        search: "nonsplit-pair".into(),
        bounds,
        hits,
        decomposable: Vec::new(),
        candidates: out.candidates,
        elapsed_ms: opts.elapsed(start),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn t(a: u32, b: u32, c: u32, d: u32) -> ExponentTuple {
        ExponentTuple::new(a, b, c, d)
    }

    fn quiet() -> SearchOptions {
        SearchOptions { record_timing: false, ..SearchOptions::default() }
    }

    #[test]
    fn splitting_max_exp_2() {
        let r = search_splitting_bup(2, &quiet()).unwrap();
        assert_eq!(r.hit_tuples(), BTreeSet::from([t(1, 1, 2, 2), t(2, 2, 1, 1), t(2, 2, 2, 2)]));
        assert_eq!(r.candidates, 15);
    }

    #[test]
    fn perfect_max_exp_3() {
        let r = search_perfect_splitting(3, &quiet()).unwrap();
        let hits = r.hit_tuples();
        assert!(hits.contains(&t(1, 1, 3, 3)));
        assert!(hits.contains(&t(3, 3, 1, 1)));
        assert!(hits.contains(&t(2, 1, 2, 1)));
    }

    #[test]
    fn bounds_are_checked() {
        assert!(matches!(search_splitting_bup(0, &quiet()), Err(Error::InvalidBound(_))));
        assert!(matches!(search_splitting_bup(65, &quiet()), Err(Error::Cap { .. })));
        let tight = SearchOptions { max_candidates: 10, ..quiet() };
        assert!(matches!(search_splitting_bup(3, &tight), Err(Error::Cap { .. })));
        let p = Poly::parse("x^2+x+1").unwrap();
        assert!(matches!(search_nonsplit_bup(&p, &NonsplitBounds::default(), &quiet()), Err(Error::NotInOmega2(_))));
    }

    #[test]
    fn nonsplit_for_x() {
        let r = search_nonsplit_bup(&Poly::x(), &NonsplitBounds::default(), &quiet()).unwrap();
        assert_eq!(r.hit_tuples(), BTreeSet::from([t(7, 13, 2, 2), t(13, 7, 2, 2), t(14, 14, 2, 2)]));
        assert!(!r.hit_tuples().contains(&t(7, 7, 7, 7)));
    }

    #[test]
    fn narrowed_bounds_contents() {
        let b = NonsplitBounds::narrowed();
        assert_eq!(b.hk, vec![1, 2, 3, 7, 13, 14, 15, 27, 31, 55, 63]);
        assert_eq!(b.lt, vec![1, 2, 3, 7]);
    }

    #[test]
    fn pair_search_small() {
        let r = search_pair_bup(&Poly::x(), &Poly::parse("x^2+x+a").unwrap(), 3, &quiet()).unwrap();
        assert_eq!(
            r.hit_tuples(),
            BTreeSet::from([t(1, 1, 2, 2), t(2, 2, 1, 1), t(2, 2, 2, 2), t(2, 2, 3, 3), t(3, 3, 2, 2)])
        );
    }
}
