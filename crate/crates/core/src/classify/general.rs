use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use crate::classify::search::verify_all;
use crate::classify::{Hit, SearchOptions, SearchReport, EXHAUSTIVE_MAX_DEGREE_CAP, GENERAL_MAX_DEGREE_CAP};
use crate::error::{Error, Result};
use crate::factor::{factorize, is_irreducible};
use crate::gf4::Gf4;
use crate::poly::{enumerate_monic, Poly};
use crate::sigma::{sigma, sigma_prime_power_unchecked, SigmaKind};

/// How `search_general_bup` walks the space of polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GeneralStrategy {
    /// Prime sets closed under `T -> primes(T + 1)`, then exponents within the degree budget.
    #[default]
    Structured,
    /// Every monic polynomial of degree `1..=max_degree`.
    Exhaustive,
}

impl GeneralStrategy {
    pub fn name(self) -> &'static str {
        match self {
            GeneralStrategy::Structured => "structured",
            GeneralStrategy::Exhaustive => "exhaustive",
        }
    }
}

/// All bi-unitary perfect polynomials of degree `1..=max_degree`, optionally
/// only those with exactly `omega` distinct prime factors.
pub fn search_general_bup(max_degree: usize, omega: Option<usize>, opts: &SearchOptions) -> Result<SearchReport> {
    search_general_bup_with(GeneralStrategy::Structured, max_degree, omega, opts)
}

pub fn search_general_bup_with(
    strategy: GeneralStrategy,
    max_degree: usize,
    omega: Option<usize>,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    let cap = match strategy {
        GeneralStrategy::Structured => GENERAL_MAX_DEGREE_CAP,
        GeneralStrategy::Exhaustive => EXHAUSTIVE_MAX_DEGREE_CAP,
    };
    if max_degree > cap {
        return Err(Error::Cap { what: "max_degree", value: max_degree as u64, cap: cap as u64 });
    }
    let start = Instant::now();
    let (mut hits, candidates) = match strategy {
        GeneralStrategy::Structured => structured(max_degree, omega, opts)?,
        GeneralStrategy::Exhaustive => exhaustive(max_degree, omega, opts)?,
    };
    hits.sort_by_cached_key(|h| (h.degree, h.polynomial()));
    verify_all(&hits, SigmaKind::BiUnitary, opts)?;
    let mut bounds = serde_json::Map::new();
    bounds.insert("max_degree".into(), json!(max_degree));
    bounds.insert("omega".into(), json!(omega));
    bounds.insert("strategy".into(), json!(strategy.name()));
    Ok(SearchReport {
        search: "general".into(),
        bounds,
        hits,
        decomposable: Vec::new(),
        candidates,
        elapsed_ms: opts.elapsed(start),
    })
}

fn exhaustive(max_degree: usize, omega: Option<usize>, opts: &SearchOptions) -> Result<(Vec<Hit>, u64)> {
    let total: u64 = (1..=max_degree).map(|d| 4u64.pow(d as u32)).sum();
    opts.check_candidates(total)?;
    let hits = opts.run(|| {
        (1..=max_degree)
            .flat_map(|d| {
                let level: Vec<Poly> = enumerate_monic(d).collect();
                level
                    .into_par_iter()
                    .filter(|a| sigma(a, SigmaKind::BiUnitary).map(|s| &s == a).unwrap_or(false))
                    .collect::<Vec<_>>()
            })
            .map(|a| {
                let f = factorize(&a).expect("monic nonconstant");
                let (base, exps): (Vec<Poly>, Vec<u32>) = f.into_factors().into_iter().unzip();
                Hit { base, exps, degree: a.deg() }
            })
            .filter(|h| omega.is_none_or(|w| h.base.len() == w))
            .collect::<Vec<_>>()
    })?;
    Ok((hits, total))
}

/// Every prime `T` of a bi-unitary perfect `A` has `T + 1 | sigma**(T^e) | A`,
/// and `T + 1` is coprime to `T`, so the primes of `A` form a set closed under
/// `T -> primes(T + 1)` and each has degree at most `deg(A) / 2`.
/// Sparse valuation vector: `(prime index, exponent)` pairs.
type Valuation = Vec<(usize, u32)>;

fn structured(max_degree: usize, omega: Option<usize>, opts: &SearchOptions) -> Result<(Vec<Hit>, u64)> {
    let half = max_degree / 2;
    let primes: Vec<Poly> =
        (1..=half).flat_map(enumerate_monic).filter(|p| is_irreducible(p).unwrap_or(false)).collect();
    let index: HashMap<&Poly, usize> = primes.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let deg: Vec<usize> = primes.iter().map(Poly::deg).collect();

    let shift: Vec<Vec<usize>> = primes
        .iter()
        .map(|p| {
            let f = factorize(&(p + Gf4::ONE)).expect("monic nonconstant");
            f.factors().iter().map(|(q, _)| index[q]).collect()
        })
        .collect();
    let closures: Vec<BTreeSet<usize>> = (0..primes.len())
        .map(|i| {
            let mut set = BTreeSet::from([i]);
            let mut todo = vec![i];
            while let Some(j) = todo.pop() {
                for &k in &shift[j] {
                    if set.insert(k) {
                        todo.push(k);
                    }
                }
            }
            set
        })
        .collect();

    let weight = |s: &BTreeSet<usize>| s.iter().map(|&i| deg[i]).sum::<usize>();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut stack: Vec<(usize, BTreeSet<usize>)> = vec![(0, BTreeSet::new())];
    while let Some((from, cur)) = stack.pop() {
        for (j, closure) in closures.iter().enumerate().skip(from) {
            if cur.contains(&j) {
                continue;
            }
            let next: BTreeSet<usize> = cur.union(closure).copied().collect();
            if weight(&next) > max_degree {
                continue;
            }
            if seen.insert(next.iter().copied().collect()) {
                stack.push((j + 1, next));
            }
        }
    }
    let mut sets: Vec<Vec<usize>> = seen.into_iter().filter(|s| omega.is_none_or(|w| s.len() == w)).collect();
    sets.sort();

    // candidate exponent vectors per set: e_i >= 1 with sum e_i deg_i <= max_degree
    let tuples_of = |set: &[usize]| -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(set.len());
        fn rec(set: &[usize], deg: &[usize], budget: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            let Some((&p, rest)) = set.split_first() else {
                out.push(cur.clone());
                return;
            };
            let need: usize = rest.iter().map(|&q| deg[q]).sum();
            let mut e = 1;
            while e * deg[p] + need <= budget {
                cur.push(e as u32);
                rec(rest, deg, budget - e * deg[p], cur, out);
                cur.pop();
                e += 1;
            }
        }
        rec(set, &deg, max_degree, &mut cur, &mut out);
        out
    };
    let work: Vec<(&Vec<usize>, Vec<Vec<u32>>)> = sets.iter().map(|s| (s, tuples_of(s))).collect();
    let total: u64 = work.iter().map(|(_, t)| t.len() as u64).sum();
    opts.check_candidates(total)?;

    let used: BTreeSet<(usize, u32)> =
        work.iter().flat_map(|(s, ts)| ts.iter().flat_map(move |t| s.iter().copied().zip(t.iter().copied()))).collect();
    let (primes, index) = (&primes, &index);
    let hits = opts.run(|| {
        let memo: HashMap<(usize, u32), Option<Valuation>> = used
            .into_par_iter()
            .map(|(i, e)| {
                let v = sigma_prime_power_unchecked(&primes[i], e, SigmaKind::BiUnitary);
                let f = factorize(&v).expect("prime-power sigma values are monic");
                let vals: Option<Valuation> = f.factors().iter().map(|(q, m)| index.get(q).map(|&k| (k, *m))).collect();
                ((i, e), vals)
            })
            .collect();
        work.par_iter()
            .flat_map_iter(|(set, tuples)| {
                let memo = &memo;
                tuples.iter().filter_map(move |exps| {
                    let mut acc = vec![0u32; set.len()];
                    for (&i, &e) in set.iter().zip(exps) {
                        for &(q, m) in memo[&(i, e)].as_ref()? {
                            let pos = set.iter().position(|&s| s == q)?;
                            acc[pos] += m;
                        }
                    }
                    (&acc == exps).then(|| {
                        let mut pairs: Vec<(Poly, u32)> =
                            set.iter().map(|&i| primes[i].clone()).zip(exps.iter().copied()).collect();
                        pairs.sort();
                        let degree = pairs.iter().map(|(p, e)| p.deg() * *e as usize).sum();
                        let (base, exps) = pairs.into_iter().unzip();
                        Hit { base, exps, degree }
                    })
                })
            })
            .collect::<Vec<_>>()
    })?;
    Ok((hits, total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiet() -> SearchOptions {
        SearchOptions { record_timing: false, ..SearchOptions::default() }
    }

    fn polys(r: &SearchReport) -> Vec<Poly> {
        r.hits.iter().map(Hit::polynomial).collect()
    }

    #[test]
    fn strategies_agree_up_to_degree_7() {
        for d in 0..=7 {
            let a = search_general_bup_with(GeneralStrategy::Structured, d, None, &quiet()).unwrap();
            let b = search_general_bup_with(GeneralStrategy::Exhaustive, d, None, &quiet()).unwrap();
            assert_eq!(a.hits, b.hits, "max_degree {d}");
        }
    }

    #[test]
    fn prime_powers_are_never_fixed() {
        assert!(search_general_bup(4, Some(1), &quiet()).unwrap().hits.is_empty());
    }

    #[test]
    fn degree_8_two_primes() {
        let r = search_general_bup(8, Some(2), &quiet()).unwrap();
        let found = polys(&r);
        for want in ["x^2 (x+1)^2", "(x+a)^2 (x+a1)^2", "x (x+1)"] {
            assert!(found.contains(&Poly::parse(want).unwrap()), "{want}");
        }
        assert!(r.hits.iter().all(|h| h.base.len() == 2));
    }

    #[test]
    fn caps() {
        assert!(search_general_bup(13, None, &quiet()).is_err());
        assert!(search_general_bup_with(GeneralStrategy::Exhaustive, 10, None, &quiet()).is_err());
    }
}
