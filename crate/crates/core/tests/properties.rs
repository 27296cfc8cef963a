use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;
use rayon::prelude::*;

use bup4_core::classify::{search_nonsplit_bup, NonsplitBounds, SigmaMemo, SigmaProfile};
use bup4_core::factor::{factorize_general, factorize_trial};
use bup4_core::poly::enumerate_monic;
use bup4_core::sigma::{is_unitary_divisor, sigma_prime_power_unchecked};
use bup4_core::{
    factorize, gcd_unitary, is_irreducible, orbit_closure, search_splitting_bup, sigma, sigma_bruteforce,
    symmetry_orbit, ExponentTuple, FactorBase, Gf4, Poly, SearchOptions, SigmaKind,
};

fn monic(max_degree: usize) -> impl Strategy<Value = Poly> {
    (1..=max_degree).prop_flat_map(|d| {
        prop::collection::vec(0u8..4, d).prop_map(|mut codes| {
            codes.push(1);
            Poly::from_codes(&codes)
        })
    })
}

fn monic_up_to(max_degree: usize) -> impl Iterator<Item = Poly> {
    (1..=max_degree).flat_map(enumerate_monic)
}

fn quiet(threads: usize) -> SearchOptions {
    SearchOptions { threads, record_timing: false, ..SearchOptions::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn factorization_reconstructs(f in monic(24)) {
        let fac = factorize(&f).unwrap();
        prop_assert_eq!(fac.expand(), f);
        for (p, _) in fac.factors() {
            prop_assert!(is_irreducible(p).unwrap());
        }
    }

    #[test]
    fn irreducible_iff_single_simple_factor(f in monic(16)) {
        let fac = factorize(&f).unwrap();
        let single = fac.factors().len() == 1 && fac.factors()[0].1 == 1;
        prop_assert_eq!(is_irreducible(&f).unwrap(), single);
    }

    #[test]
    fn trial_and_general_paths_agree(f in monic(8)) {
        prop_assert_eq!(factorize_trial(&f).unwrap(), factorize_general(&f).unwrap());
    }

    #[test]
    fn multiplicative_on_coprime_pairs(a in monic(10), b in monic(10)) {
        prop_assume!(a.gcd(&b).unwrap().is_one());
        let ab = a.mul(&b);
        for kind in SigmaKind::KINDS {
            prop_assert_eq!(sigma(&ab, kind).unwrap(), sigma(&a, kind).unwrap().mul(&sigma(&b, kind).unwrap()));
        }
    }

    #[test]
    fn all_odd_exponents_give_equal_sums(f in monic(6), g in monic(6)) {
        // raise every prime of f*g to an odd power
        let fac = factorize(&f.mul(&g)).unwrap();
        let odd = fac.factors().iter().fold(Poly::one(), |acc, (p, e)| acc.mul(&p.pow(u64::from(2 * e + 1))));
        prop_assert_eq!(sigma(&odd, SigmaKind::BiUnitary).unwrap(), sigma(&odd, SigmaKind::All).unwrap());
    }

    #[test]
    fn translation_commutes_with_sigma(f in monic(12), code in 1u8..4) {
        let lambda = Gf4::from_code(code);
        for kind in SigmaKind::KINDS {
            prop_assert_eq!(sigma(&f.translate(lambda), kind).unwrap(), sigma(&f, kind).unwrap().translate(lambda));
        }
    }

    #[test]
    fn gcd_unitary_is_common_unitary_divisor(a in monic(12), b in monic(12)) {
        let g = gcd_unitary(&a, &b).unwrap();
        prop_assert!(is_unitary_divisor(&g, &a).unwrap());
        prop_assert!(is_unitary_divisor(&g, &b).unwrap());
    }

    #[test]
    fn memo_matches_direct(i in 0usize..80, e in 1u32..40, k in 0usize..3) {
        let primes: Vec<Poly> = monic_up_to(4).filter(|p| is_irreducible(p).unwrap()).collect();
        let p = &primes[i];
        let kind = SigmaKind::KINDS[k];
        let mut memo = SigmaMemo::new();
        prop_assert_eq!(memo.value(p, e, kind), &sigma_prime_power_unchecked(p, e, kind));
        prop_assert_eq!(memo.factored(p, e, kind).expand(), sigma_prime_power_unchecked(p, e, kind));
    }
}

#[test]
fn irreducibility_matches_trial_division_to_degree_4() {
    for f in monic_up_to(4) {
        let d = f.deg();
        let has_factor = monic_up_to(d / 2).any(|g| g.divides(&f));
        assert_eq!(is_irreducible(&f).unwrap(), !has_factor, "{f}");
    }
}

#[test]
fn cubics_are_irreducible_iff_rootless() {
    for f in enumerate_monic(3) {
        let rootless = Gf4::ALL.iter().all(|&a| !f.eval(a).is_zero());
        assert_eq!(is_irreducible(&f).unwrap(), rootless, "{f}");
    }
}

/// Common unitary divisors of a and b by enumeration, compared with gcd_unitary.
#[test]
fn gcd_unitary_matches_enumeration_to_degree_5() {
    let polys: Vec<Poly> = monic_up_to(5).collect();
    let unitary: HashMap<&Poly, BTreeSet<Poly>> = polys
        .par_iter()
        .map(|a| {
            let f = factorize(a).unwrap();
            let parts: Vec<Poly> = f.factors().iter().map(|(p, e)| p.pow(u64::from(*e))).collect();
            let set = (0..1u32 << parts.len())
                .map(|mask| {
                    parts
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .fold(Poly::one(), |acc, (_, q)| acc.mul(q))
                })
                .collect();
            (a, set)
        })
        .collect();
    polys.par_iter().for_each(|a| {
        for b in &polys {
            let common: Vec<&Poly> = unitary[a].intersection(&unitary[b]).collect();
            let best = common.iter().max_by_key(|d| d.deg()).unwrap();
            let g = gcd_unitary(a, b).unwrap();
            assert_eq!(&g, *best, "{a} / {b}");
            assert!(common.iter().all(|d| d.divides(&g)));
        }
    });
}

#[test]
fn splitting_hits_closed_under_translation() {
    let r = search_splitting_bup(12, &quiet(2)).unwrap();
    let hits = r.hit_tuples();
    assert_eq!(orbit_closure(hits.iter().copied()), hits);
    for t in &hits {
        assert!(symmetry_orbit(*t).iter().all(|u| hits.contains(u)));
    }
}

#[test]
fn odd_tuples_bup_iff_perfect() {
    let base = FactorBase::splitting();
    let odd: Vec<u32> = (1..=15).step_by(2).collect();
    let r = [odd.as_slice(); 4];
    let bu = SigmaProfile::build(&base, SigmaKind::BiUnitary, r);
    let all = SigmaProfile::build(&base, SigmaKind::All, r);
    for i in 0..4 {
        assert_eq!(bu.row(i), all.row(i));
    }
    // and on expanded polynomials
    for t in [ExponentTuple::new(1, 1, 3, 3), ExponentTuple::new(7, 7, 7, 7), ExponentTuple::new(1, 3, 5, 7)] {
        let a = base.polynomial(&t.0);
        assert_eq!(sigma(&a, SigmaKind::BiUnitary).unwrap(), sigma(&a, SigmaKind::All).unwrap());
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let one = search_splitting_bup(10, &quiet(1)).unwrap().to_json();
    let four = search_splitting_bup(10, &quiet(4)).unwrap().to_json();
    assert_eq!(one, four);
    let p = Poly::parse("x^2+x+a").unwrap();
    let a = search_nonsplit_bup(&p, &NonsplitBounds::default(), &quiet(1)).unwrap().to_json();
    let b = search_nonsplit_bup(&p, &NonsplitBounds::default(), &quiet(3)).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn raw_nonsplit_bounds_find_nothing_new() {
    let narrowed = search_nonsplit_bup(&Poly::x(), &NonsplitBounds::default(), &quiet(4)).unwrap();
    let raw = search_nonsplit_bup(&Poly::x(), &NonsplitBounds::raw(64, 15), &quiet(4)).unwrap();
    assert_eq!(narrowed.hit_tuples(), raw.hit_tuples());
}

#[test]
fn bruteforce_agrees_on_search_hits() {
    let r = search_splitting_bup(4, &quiet(1)).unwrap();
    for h in &r.hits {
        let a = h.polynomial();
        assert_eq!(sigma_bruteforce(&a, SigmaKind::BiUnitary, 1 << 16).unwrap(), a);
    }
}
