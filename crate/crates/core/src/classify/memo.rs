use std::collections::HashMap;

use rayon::prelude::*;

use crate::classify::FactorBase;
use crate::factor::{factorize, Factorization};
use crate::poly::Poly;
use crate::sigma::{sigma_prime_power_unchecked, SigmaKind};

/// Cache of prime-power sigma values keyed by (prime text, exponent, kind).
#[derive(Debug, Default, Clone)]
pub struct SigmaMemo {
    values: HashMap<(String, u32, SigmaKind), Poly>,
    factored: HashMap<(String, u32, SigmaKind), Factorization>,
}

impl SigmaMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&mut self, prime: &Poly, exp: u32, kind: SigmaKind) -> &Poly {
        self.values
            .entry((prime.to_string(), exp, kind))
            .or_insert_with(|| sigma_prime_power_unchecked(prime, exp, kind))
    }

    pub fn factored(&mut self, prime: &Poly, exp: u32, kind: SigmaKind) -> &Factorization {
        let key = (prime.to_string(), exp, kind);
        if !self.factored.contains_key(&key) {
            let v = self.value(prime, exp, kind).clone();
            let f = factorize(&v).expect("prime-power sigma values are monic");
            self.factored.insert(key.clone(), f);
        }
        &self.factored[&key]
    }

    /// Looks up a factorization without computing it.
    pub fn cached_factored(&self, prime: &Poly, exp: u32, kind: SigmaKind) -> Option<&Factorization> {
        self.factored.get(&(prime.to_string(), exp, kind))
    }

    pub fn insert_factored(&mut self, prime: &Poly, exp: u32, kind: SigmaKind, f: Factorization) {
        self.factored.insert((prime.to_string(), exp, kind), f);
    }

    pub fn len(&self) -> usize {
        self.values.len().max(self.factored.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&mut self) {
        self.values.clear();
        self.factored.clear();
    }
}

/// Valuation vector of `f` over a four-prime base, or `None` when `f` has a
/// prime factor outside the base.
pub fn base_valuation(f: &Poly, base: &FactorBase) -> Option<[u32; 4]> {
    let mut rest = f.clone();
    let mut v = [0u32; 4];
    for (slot, p) in v.iter_mut().zip(base.primes()) {
        while let Some(q) = rest.div_exact(p) {
            rest = q;
            *slot += 1;
        }
    }
    rest.is_one().then_some(v)
}

/// For each base position `i` and listed exponent `e`, the valuation vector of
/// `sigma_kind(base[i]^e)` over the base. Built once, then read-only.
#[derive(Debug, Clone)]
pub struct SigmaProfile {
    kind: SigmaKind,
    rows: [Vec<(u32, Option<[u32; 4]>)>; 4],
}

impl SigmaProfile {
    pub fn build(base: &FactorBase, kind: SigmaKind, exps: [&[u32]; 4]) -> SigmaProfile {
        assert_eq!(base.len(), 4, "profiles are defined over four-prime bases");
        let jobs: Vec<(usize, u32)> = (0..4).flat_map(|i| exps[i].iter().map(move |&e| (i, e))).collect();
        let values: Vec<(usize, u32, Option<[u32; 4]>)> = jobs
            .into_par_iter()
            .map(|(i, e)| {
                let v = sigma_prime_power_unchecked(&base.primes()[i], e, kind);
                (i, e, base_valuation(&v, base))
            })
            .collect();
        let mut rows: [Vec<(u32, Option<[u32; 4]>)>; 4] = Default::default();
        for (i, e, v) in values {
            rows[i].push((e, v));
        }
        SigmaProfile { kind, rows }
    }

    pub fn kind(&self) -> SigmaKind {
        self.kind
    }

    pub fn get(&self, position: usize, exp: u32) -> Option<Option<[u32; 4]>> {
        self.rows[position].iter().find(|(e, _)| *e == exp).map(|(_, v)| *v)
    }

    /// Entries of one position in build order.
    pub fn row(&self, position: usize) -> &[(u32, Option<[u32; 4]>)] {
        &self.rows[position]
    }
}
