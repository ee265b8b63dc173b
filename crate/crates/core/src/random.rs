//! Seeded random monomial ideals.
//!
//! Exponents are drawn uniformly from `0..=max_exp`; drawn generators are
//! minimalized, so redundant ones are dropped. Constraints are met either by
//! construction followed by a check, or by rejection, and never more than
//! [`RETRY_CAP`] draws are made. The same parameters and seed always give
//! the same ideal.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ideal::{
    classify, is_almost_generic, is_artinian, is_generic_outside_two, minimalize, pairwise_lcm_divisor,
    MonomialIdeal,
};
use crate::monomial::{Monomial, VariableSet};

pub const RETRY_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Constraint {
    #[default]
    None,
    Artinian,
    AlmostGeneric,
    /// Exactly `p` nondominant generators.
    Semidominant(usize),
    Dominant,
    /// Generic outside two variables.
    GenericOutsideTwo,
    /// At least one nondominant generator, and the nondominant generators
    /// form an almost generic ideal.
    NondominantAlmostGeneric,
    /// At least two generators, one dividing every pairwise lcm.
    PairwiseLcmDivisor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomParams {
    pub nvars: usize,
    pub min_gens: usize,
    pub max_gens: usize,
    pub max_exp: u32,
    pub constraint: Constraint,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            nvars: 4,
            min_gens: 1,
            max_gens: 6,
            max_exp: 4,
            constraint: Constraint::None,
        }
    }
}

impl RandomParams {
    pub fn new(nvars: usize, max_gens: usize, max_exp: u32) -> Self {
        RandomParams {
            nvars,
            max_gens,
            max_exp,
            ..Default::default()
        }
    }

    pub fn with(mut self, constraint: Constraint) -> Self {
        self.constraint = constraint;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.nvars == 0 {
            return Err(Error::domain("at least one variable is needed"));
        }
        if self.max_exp == 0 {
            return Err(Error::domain("max_exp must be at least 1"));
        }
        if self.min_gens == 0 || self.min_gens > self.max_gens {
            return Err(Error::domain(format!(
                "generator range {}..={} is empty",
                self.min_gens, self.max_gens
            )));
        }
        Ok(())
    }
}

/// Whether `ideal` satisfies `constraint`.
pub fn satisfies(ideal: &MonomialIdeal, constraint: Constraint) -> bool {
    if !ideal.is_proper_nonzero() {
        return false;
    }
    match constraint {
        Constraint::None => true,
        Constraint::Artinian => is_artinian(ideal).0,
        Constraint::AlmostGeneric => is_almost_generic(ideal).0,
        Constraint::Semidominant(p) => classify(ideal).map(|r| r.p == p).unwrap_or(false),
        Constraint::Dominant => classify(ideal).map(|r| r.p == 0).unwrap_or(false),
        Constraint::GenericOutsideTwo => is_generic_outside_two(ideal).is_some(),
        Constraint::NondominantAlmostGeneric => nondominant_part(ideal)
            .map(|n| !n.is_zero() && is_almost_generic(&n).0)
            .unwrap_or(false),
        Constraint::PairwiseLcmDivisor => ideal.len() >= 2 && pairwise_lcm_divisor(ideal).is_some(),
    }
}

/// The ideal generated by the nondominant minimal generators.
pub fn nondominant_part(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    let report = classify(ideal)?;
    let gens: Vec<Monomial> = report
        .nondominant_indices()
        .into_iter()
        .map(|i| ideal.generators()[i].clone())
        .collect();
    minimalize(ideal.vars().clone(), &gens)
}

struct Draw<'a> {
    params: &'a RandomParams,
    rng: ChaCha8Rng,
}

impl Draw<'_> {
    fn exp(&mut self, lo: u32, hi: u32) -> u32 {
        self.rng.gen_range(lo..=hi)
    }

    fn count(&mut self, lo: usize) -> usize {
        let lo = lo.max(self.params.min_gens);
        self.rng.gen_range(lo..=self.params.max_gens.max(lo))
    }

    fn uniform(&mut self, q: usize) -> Vec<Monomial> {
        let (n, e) = (self.params.nvars, self.params.max_exp);
        (0..q).map(|_| Monomial::new((0..n).map(|_| self.exp(0, e)).collect())).collect()
    }

    fn artinian(&mut self) -> Vec<Monomial> {
        let (n, e) = (self.params.nvars, self.params.max_exp);
        let q = self.count(n);
        let mut gens: Vec<Monomial> = (0..n).map(|v| Monomial::pure_power(n, v, self.exp(1, e))).collect();
        gens.extend(self.uniform(q - n));
        gens
    }

    /// Every variable outside `exempt` takes pairwise distinct nonzero
    /// exponents across the generators (or zero).
    fn generic_outside(&mut self, exempt: &[usize]) -> Vec<Monomial> {
        let (n, e) = (self.params.nvars, self.params.max_exp);
        let q = self.count(1);
        let mut exps = vec![vec![0u32; n]; q];
        for v in 0..n {
            if exempt.contains(&v) {
                for row in exps.iter_mut() {
                    row[v] = self.exp(0, e);
                }
                continue;
            }
            let mut pool: Vec<u32> = (1..=e).collect();
            pool.shuffle(&mut self.rng);
            for row in exps.iter_mut() {
                if self.rng.gen_bool(0.75) {
                    row[v] = pool.pop().unwrap_or(0);
                }
            }
        }
        exps.into_iter().map(Monomial::new).collect()
    }

    /// Generators made dominant through distinct witness variables carrying
    /// the top exponent, followed by `extra` generators below the top everywhere.
    fn dominant_then(&mut self, extra: usize) -> Vec<Monomial> {
        let (n, e) = (self.params.nvars, self.params.max_exp);
        let dominant = (self.count(extra + 1) - extra).min(n);
        let mut witnesses: Vec<usize> = (0..n).collect();
        witnesses.shuffle(&mut self.rng);
        let mut exps = vec![vec![0u32; n]; dominant + extra];
        for (g, row) in exps.iter_mut().enumerate() {
            for x in row.iter_mut() {
                *x = self.exp(0, e.saturating_sub(1));
            }
            if g < dominant {
                row[witnesses[g]] = e;
            }
        }
        exps.into_iter().map(Monomial::new).collect()
    }

    /// A pivot generator `g` and others that fall below `g` in each
    /// variable at most once, so `g` divides every pairwise lcm.
    fn pairwise_divisor(&mut self) -> Vec<Monomial> {
        let (n, e) = (self.params.nvars, self.params.max_exp);
        let q = self.count(2);
        let pivot: Vec<u32> = (0..n).map(|_| self.exp(0, e)).collect();
        let mut exps = vec![vec![0u32; n]; q - 1];
        for v in 0..n {
            let deficient = self.rng.gen_range(0..q);
            for (k, row) in exps.iter_mut().enumerate() {
                row[v] = if k == deficient && pivot[v] > 0 {
                    self.exp(0, pivot[v] - 1)
                } else {
                    self.exp(pivot[v], e)
                };
            }
        }
        let mut gens = vec![Monomial::new(pivot)];
        gens.extend(exps.into_iter().map(Monomial::new));
        gens
    }

    fn candidate(&mut self, attempt: usize) -> Vec<Monomial> {
        let n = self.params.nvars;
        match self.params.constraint {
            Constraint::None | Constraint::NondominantAlmostGeneric => {
                let q = self.count(1);
                self.uniform(q)
            }
            Constraint::Artinian => self.artinian(),
            Constraint::AlmostGeneric => {
                let i = self.rng.gen_range(0..n);
                self.generic_outside(&[i])
            }
            Constraint::GenericOutsideTwo => {
                let mut vars: Vec<usize> = (0..n).collect();
                vars.shuffle(&mut self.rng);
                vars.truncate(2);
                self.generic_outside(&vars)
            }
            Constraint::Dominant => self.dominant_then(0),
            Constraint::Semidominant(p) => {
                if attempt % 2 == 0 {
                    self.dominant_then(p)
                } else {
                    let q = self.count(p + 1);
                    self.uniform(q)
                }
            }
            Constraint::PairwiseLcmDivisor => self.pairwise_divisor(),
        }
    }
}

/// A random ideal satisfying `params`, determined by `seed`.
pub fn random_ideal(params: &RandomParams, seed: u64) -> Result<MonomialIdeal> {
    params.validate()?;
    if params.constraint == Constraint::Artinian && params.max_gens < params.nvars {
        return Err(Error::domain("an Artinian ideal needs at least as many generators as variables"));
    }
    let vars = Arc::new(VariableSet::letters(params.nvars)?);
    let mut draw = Draw {
        params,
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    for attempt in 0..RETRY_CAP {
        let gens = draw.candidate(attempt);
        let ideal = minimalize(vars.clone(), &gens)?;
        if ideal.len() >= params.min_gens && ideal.len() <= params.max_gens && satisfies(&ideal, params.constraint) {
            return Ok(ideal);
        }
    }
    Err(Error::Resource(format!(
        "no ideal satisfying {:?} found in {RETRY_CAP} draws",
        params.constraint
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let p = RandomParams::new(4, 6, 4);
        assert_eq!(random_ideal(&p, 7).unwrap(), random_ideal(&p, 7).unwrap());
    }

    #[test]
    fn constraints_hold() {
        let cases = [
            (RandomParams::new(4, 6, 4), Constraint::None),
            (RandomParams::new(4, 7, 4), Constraint::Artinian),
            (RandomParams::new(4, 6, 4), Constraint::AlmostGeneric),
            (RandomParams::new(4, 6, 4), Constraint::Semidominant(2)),
            (RandomParams::new(5, 6, 4), Constraint::Dominant),
            (RandomParams::new(4, 6, 4), Constraint::GenericOutsideTwo),
            (RandomParams::new(4, 6, 4), Constraint::NondominantAlmostGeneric),
            (RandomParams::new(4, 6, 4), Constraint::PairwiseLcmDivisor),
        ];
        for (params, c) in cases {
            let params = params.with(c);
            for seed in 0..40 {
                let i = random_ideal(&params, seed).unwrap_or_else(|e| panic!("{c:?} seed {seed}: {e}"));
                assert!(satisfies(&i, c), "{c:?} seed {seed}");
                assert!(i.len() <= params.max_gens);
            }
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(random_ideal(&RandomParams::new(0, 3, 2), 0).is_err());
        assert!(random_ideal(&RandomParams::new(2, 3, 0), 0).is_err());
        assert!(random_ideal(&RandomParams::new(4, 3, 2).with(Constraint::Artinian), 0).is_err());
    }
}
