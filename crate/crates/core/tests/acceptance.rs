//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use bup4_core::classify::{
    family_tuples, full_orbit_closure, search_general_bup_with, search_pair_bup, Family, GeneralStrategy,
    NonsplitBounds, SPORADIC_SPLITTING,
};
use bup4_core::factor::factorize;
use bup4_core::omega::enumerate_omega;
use bup4_core::poly::enumerate_monic;
use bup4_core::sigma::sigma_prime_power;
use bup4_core::{
    in_omega2, orbit_closure, pk_family, search_general_bup, search_nonsplit_bup, search_perfect_splitting,
    search_splitting_bup, sigma, sigma_bruteforce, ExponentTuple, FactorBase, Gf4, Hit, OmegaSet, Poly, SearchOptions,
    SigmaKind,
};

type Outcome = Result<String, String>;

/// Monic polynomials of degree `1..=max_degree`.
fn monic_up_to(max_degree: usize) -> impl Iterator<Item = Poly> {
    (1..=max_degree).flat_map(enumerate_monic)
}

fn p(s: &str) -> Poly {
    Poly::parse(s).expect("literal")
}

fn opts() -> SearchOptions {
    SearchOptions { threads: 1, ..SearchOptions::default() }
}

fn tuples(families: &[Family], param_bound: u32) -> BTreeSet<ExponentTuple> {
    families.iter().flat_map(|&f| family_tuples(f, param_bound).unwrap().into_iter().map(|(_, t)| t)).collect()
}

fn show(set: &[ExponentTuple]) -> String {
    set.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn compare(found: &BTreeSet<ExponentTuple>, predicted: &BTreeSet<ExponentTuple>) -> Outcome {
    let missing: Vec<_> = predicted.difference(found).copied().collect();
    let extra: Vec<_> = found.difference(predicted).copied().collect();
    if missing.is_empty() && extra.is_empty() {
        Ok(format!("{} tuples", found.len()))
    } else {
        Err(format!("missing [{}] extra [{}]", show(&missing), show(&extra)))
    }
}

/// Hits collected by criteria 1 to 6, re-checked under translation in criterion 9.
#[derive(Default)]
struct Collected {
    bup: Vec<Hit>,
    perfect: Vec<Hit>,
}

fn criterion_1(c: &mut Collected) -> Outcome {
    let r = search_splitting_bup(6, &opts()).map_err(|e| e.to_string())?;
    c.bup.extend(r.hits.iter().cloned());
    // the n = 0 members have a zero exponent and lie outside [1, 6]^4
    let mut predicted = tuples(&[Family::T1i, Family::T1ii, Family::T1iii], 2);
    predicted.extend(SPORADIC_SPLITTING);
    let predicted: BTreeSet<_> = orbit_closure(predicted).into_iter().filter(|t| t.in_box(1, 6)).collect();
    compare(&orbit_closure(r.hit_tuples()), &predicted)?;
    for t in [ExponentTuple::new(2, 2, 0, 0), ExponentTuple::new(0, 0, 2, 2)] {
        let a = FactorBase::splitting().polynomial(&t.0);
        if sigma(&a, SigmaKind::BiUnitary).unwrap() != a {
            return Err(format!("degenerate member {t} is not fixed"));
        }
    }
    Ok(format!("{} hits, {} candidates", r.hits.len(), r.candidates))
}

fn criterion_2(c: &mut Collected) -> Outcome {
    let r = search_splitting_bup(31, &opts()).map_err(|e| e.to_string())?;
    c.bup.extend(r.hits.iter().cloned());
    let mut predicted = tuples(&[Family::T1i, Family::T1ii, Family::T1iii], 5);
    predicted.extend(SPORADIC_SPLITTING);
    let predicted: BTreeSet<_> = orbit_closure(predicted).into_iter().filter(|t| t.in_box(1, 31)).collect();
    compare(&orbit_closure(r.hit_tuples()), &predicted)?;
    Ok(format!("{} hits, {} candidates", r.hits.len(), r.candidates))
}

fn criterion_3(c: &mut Collected) -> Outcome {
    let want = tuples(&[Family::T2iv], 0);
    let mut lines = Vec::new();
    for base in ["x", "x+a", "x^2+x+a", "x^10+x^5+a"] {
        let r = search_nonsplit_bup(&p(base), &NonsplitBounds::default(), &opts()).map_err(|e| e.to_string())?;
        compare(&r.hit_tuples(), &want).map_err(|e| format!("P = {base}: {e}"))?;
        c.bup.extend(r.hits.iter().cloned());
        lines.push(format!("{base}: {} hits, {} decomposable", r.hits.len(), r.decomposable.len()));
    }
    Ok(lines.join("; "))
}

fn criterion_4(c: &mut Collected) -> Outcome {
    let base = FactorBase::omega1_pair(&Poly::x(), &p("x^2+x+a")).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for t in tuples(&[Family::T2i, Family::T2ii, Family::T2iii], 4) {
        let a = base.polynomial(&t.0);
        if sigma(&a, SigmaKind::BiUnitary).map_err(|e| e.to_string())? != a {
            return Err(format!("{t} is not fixed"));
        }
        if t.0.iter().all(|&e| e > 0) {
            c.bup.push(base.hit(&t.0));
        }
        checked += 1;
    }
    // the pair search finds nothing beyond these families in a small box
    let r = search_pair_bup(&Poly::x(), &p("x^2+x+a"), 8, &opts()).map_err(|e| e.to_string())?;
    let predicted: BTreeSet<_> =
        tuples(&[Family::T2i, Family::T2ii, Family::T2iii], 4).into_iter().filter(|t| t.in_box(1, 8)).collect();
    compare(&r.hit_tuples(), &predicted)?;
    Ok(format!("{checked} instances fixed, pair search over [1,8]^4 matches"))
}

fn criterion_5(c: &mut Collected) -> Outcome {
    let r = search_general_bup(12, Some(3), &opts()).map_err(|e| e.to_string())?;
    if !r.hits.is_empty() {
        return Err(format!("{} hits, first {}", r.hits.len(), r.hits[0].factored_text()));
    }
    // every monic polynomial up to degree 9, without the pruning argument
    let all = search_general_bup_with(GeneralStrategy::Exhaustive, 9, None, &opts()).map_err(|e| e.to_string())?;
    c.bup.extend(all.hits.iter().cloned());
    let three: Vec<_> = all.hits.iter().filter(|h| h.base.len() == 3).collect();
    if !three.is_empty() {
        return Err(format!("exhaustive degree 9 found {}", three[0].factored_text()));
    }
    Ok(format!(
        "0 hits among {} structured candidates; exhaustive to degree 9 ({} polynomials) agrees",
        r.candidates, all.candidates
    ))
}

fn criterion_6(c: &mut Collected) -> Outcome {
    let r = search_perfect_splitting(23, &opts()).map_err(|e| e.to_string())?;
    c.perfect.extend(r.hits.iter().cloned());
    let found = r.hit_tuples();
    for t in [ExponentTuple::new(2, 2, 5, 3), ExponentTuple::new(5, 5, 11, 7)] {
        if !found.contains(&t) {
            return Err(format!("{t} not found"));
        }
    }
    let families = tuples(&[Family::L31i, Family::L31ii, Family::L31iii, Family::L31iv], 5);
    let predicted: BTreeSet<_> = orbit_closure(families.clone()).into_iter().filter(|t| t.in_box(1, 23)).collect();
    compare(&orbit_closure(found.clone()), &predicted).map_err(|e| {
        let conj: BTreeSet<_> = full_orbit_closure(families).into_iter().filter(|t| t.in_box(1, 23)).collect();
        let with_conj = if conj == found { "equal" } else { "not equal" };
        format!("{e}; closed also under a -> a^2 the sets are {with_conj}")
    })
}

fn criterion_7() -> Outcome {
    let all: Vec<Poly> = monic_up_to(6).collect();
    let check = |s: &Poly| -> Result<(), String> {
        for kind in SigmaKind::KINDS {
            let closed = sigma(s, kind).map_err(|e| e.to_string())?;
            let brute = sigma_bruteforce(s, kind, 1 << 20).map_err(|e| e.to_string())?;
            if closed != brute {
                return Err(format!("{kind}({s}): {closed} vs {brute}"));
            }
        }
        Ok(())
    };
    all.par_iter().try_for_each(check)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let random: Vec<Poly> = (0..500).map(|_| random_monic(&mut rng, 12)).collect();
    random.par_iter().try_for_each(check)?;
    Ok(format!("{} exhaustive + {} random polynomials", all.len(), random.len()))
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    for t in ["x", "x+1", "x+a", "x^3+x+1"] {
        let t = p(t);
        let q = &t + Gf4::ONE;
        let ra = &t + Gf4::ALPHA;
        let rb = &t + Gf4::ALPHA_PLUS_ONE;
        let mut cases: Vec<(u32, Poly)> =
            vec![(2, q.pow(2)), (4, q.pow(2).mul(&ra).mul(&rb)), (6, q.pow(4).mul(&ra).mul(&rb))];
        for n in 1..=5u32 {
            let m = 1u64 << n;
            cases.push(((1 << n) - 1, q.pow(m - 1)));
            cases.push((3 * (1 << n) - 1, q.pow(m - 1).mul(&ra.pow(m)).mul(&rb.pow(m))));
        }
        for (e, want) in cases {
            let closed = sigma_prime_power(&t, e, SigmaKind::BiUnitary).map_err(|e| e.to_string())?;
            let brute =
                sigma_bruteforce(&t.pow(u64::from(e)), SigmaKind::BiUnitary, 1 << 20).map_err(|e| e.to_string())?;
            if closed != want || brute != want {
                return Err(format!("sigma**(({t})^{e})"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} identities"))
}

fn random_monic(rng: &mut ChaCha8Rng, max_degree: usize) -> Poly {
    let d = rng.gen_range(1..=max_degree);
    let mut codes: Vec<u8> = (0..d).map(|_| rng.gen_range(0..4)).collect();
    codes.push(1);
    Poly::from_codes(&codes)
}

fn criterion_9(c: &Collected) -> Outcome {
    // multiplicativity against the literal divisor sums
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut pairs = Vec::new();
    while pairs.len() < 1000 {
        let a = random_monic(&mut rng, 6);
        let b = random_monic(&mut rng, 6);
        if a.gcd(&b).map(|g| g.is_one()).unwrap_or(false) {
            pairs.push((a, b));
        }
    }
    pairs.par_iter().try_for_each(|(a, b)| {
        for kind in SigmaKind::KINDS {
            let ab = sigma_bruteforce(&a.mul(b), kind, 1 << 20).map_err(|e| e.to_string())?;
            let split = sigma(a, kind).unwrap().mul(&sigma(b, kind).unwrap());
            if ab != split {
                return Err(format!("{kind}: ({a})({b})"));
            }
        }
        Ok(())
    })?;

    // translation invariance of every collected hit
    let translated = |hits: &[Hit], kind: SigmaKind| -> Result<usize, String> {
        let unique: BTreeSet<Poly> = hits.iter().map(Hit::polynomial).collect();
        unique.par_iter().try_for_each(|h| {
            for lambda in [Gf4::ONE, Gf4::ALPHA, Gf4::ALPHA_PLUS_ONE] {
                let moved = h.translate(lambda);
                if sigma(&moved, kind).map_err(|e| e.to_string())? != moved {
                    return Err(format!("{h} at x + {lambda}"));
                }
            }
            Ok(())
        })?;
        Ok(unique.len())
    };
    let nb = translated(&c.bup, SigmaKind::BiUnitary)?;
    let np = translated(&c.perfect, SigmaKind::All)?;

    // all exponents odd: sigma** = sigma
    let odd: Vec<Poly> = monic_up_to(8).collect();
    let n_odd = odd
        .par_iter()
        .map(|s| {
            let f = factorize(s).unwrap();
            if f.factors().iter().all(|(_, e)| e % 2 == 1) {
                let ok = sigma(s, SigmaKind::BiUnitary).unwrap() == sigma(s, SigmaKind::All).unwrap();
                if ok {
                    Ok(1)
                } else {
                    Err(s.to_string())
                }
            } else {
                Ok(0)
            }
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
        .map_err(|s| format!("all-odd {s}"))?;

    // 1 + T divides sigma**(T^c) and T does not
    let mut n_div = 0;
    for t in monic_up_to(3).filter(|t| bup4_core::is_irreducible(t).unwrap()) {
        let t1 = &t + Gf4::ONE;
        for c in 1..=16u32 {
            let v = sigma_prime_power(&t, c, SigmaKind::BiUnitary).unwrap();
            if !t1.divides(&v) || t.divides(&v) {
                return Err(format!("divisibility for ({t})^{c}"));
            }
            n_div += 1;
        }
    }
    Ok(format!(
        "1000 coprime pairs; {} + {} hits translated; {n_odd} all-odd polynomials; {n_div} prime powers",
        nb, np
    ))
}

fn criterion_10() -> Outcome {
    for k in 0..=2 {
        let pk = pk_family(k, 200).map_err(|e| e.to_string())?;
        if !in_omega2(&pk) {
            return Err(format!("P_{k} = {pk} not in Omega2"));
        }
    }
    let linear = enumerate_omega(1, OmegaSet::Two);
    let want: Vec<Poly> = ["x", "x+1", "x+a", "x+a1"].into_iter().map(p).collect();
    if linear != want {
        return Err(format!("enumerate_omega(1, 2) = {linear:?}"));
    }
    Ok("P_0, P_1, P_2 in Omega2; four linear members".into())
}

fn main() -> ExitCode {
    let mut collected = Collected::default();
    let mut failed = 0;
    let mut report = |n: usize, name: &str, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {n:>2} {tag} {name} ({secs:.1}s): {detail}");
        if outcome.is_err() {
            failed += 1;
        }
    };
    report(1, "sporadic splitting tuples, max_exp 6", &mut || criterion_1(&mut collected));
    report(2, "splitting completeness, [1,31]^4", &mut || criterion_2(&mut collected));
    report(3, "non-splitting Omega2 tuples", &mut || criterion_3(&mut collected));
    report(4, "Omega1 pair families", &mut || criterion_4(&mut collected));
    report(5, "no fixed point with three primes, degree <= 12", &mut || criterion_5(&mut collected));
    report(6, "splitting perfect families, [1,23]^4", &mut || criterion_6(&mut collected));
    report(7, "closed forms against divisor summation", &mut criterion_7);
    report(8, "prime-power identities", &mut criterion_8);
    report(9, "property suite", &mut || criterion_9(&collected));
    report(10, "Omega membership", &mut criterion_10);
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
