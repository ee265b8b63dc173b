//! Randomized search for counterexamples to three open statements:
//!
//! * `C1`: generic outside two variables implies characteristic Betti numbers.
//! * `C2`: if the nondominant generators form an almost generic ideal, the
//!   Betti numbers are characteristic in minimal homological degrees.
//! * `C3`: at least two generators, one of which divides every pairwise lcm,
//!   implies `pd = 2`.
//!
//! Nothing here asserts that they hold. A candidate found with the default
//! method is recomputed with the oracle and reported only if the oracle
//! agrees that the conclusion fails.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::engine::{betti, betti_cancel, characteristic_check, Method};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::random::{random_ideal, satisfies, Constraint, RandomParams};
use crate::table::BettiTable;
use crate::taylor::DEFAULT_MAX_GENS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Conjecture {
    C1,
    C2,
    C3,
}

impl Conjecture {
    pub const ALL: [Conjecture; 3] = [Conjecture::C1, Conjecture::C2, Conjecture::C3];

    pub fn hypothesis(&self) -> Constraint {
        match self {
            Conjecture::C1 => Constraint::GenericOutsideTwo,
            Conjecture::C2 => Constraint::NondominantAlmostGeneric,
            Conjecture::C3 => Constraint::PairwiseLcmDivisor,
        }
    }

    /// Whether the conclusion holds for `ideal` with Betti table `table`.
    pub fn conclusion(&self, ideal: &MonomialIdeal, table: &BettiTable) -> Result<bool> {
        Ok(match self {
            Conjecture::C1 => characteristic_check(ideal, table)?.is_characteristic,
            Conjecture::C2 => characteristic_check(ideal, table)?.min_hdeg_ok,
            Conjecture::C3 => table.pd() == 2,
        })
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conjecture::C1 => "C1",
            Conjecture::C2 => "C2",
            Conjecture::C3 => "C3",
        })
    }
}

impl FromStr for Conjecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "C1" | "1" => Ok(Conjecture::C1),
            "C2" | "2" => Ok(Conjecture::C2),
            "C3" | "3" => Ok(Conjecture::C3),
            _ => Err(Error::Invalid(format!("unknown conjecture `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub seed: u64,
    pub ideal: MonomialIdeal,
    /// Oracle table.
    pub betti: BettiTable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzReport {
    pub conjecture: Conjecture,
    pub tested: usize,
    pub counterexamples: Vec<Counterexample>,
    /// Seeds whose cancellation survivors do not form a subcomplex of the
    /// Taylor complex. Observational only.
    pub non_subcomplex: Vec<(u64, MonomialIdeal)>,
    /// Seeds where no ideal satisfying the hypothesis could be drawn.
    pub skipped: Vec<u64>,
    /// Seeds where the default method and the oracle disagreed.
    pub mismatches: Vec<u64>,
}

impl FuzzReport {
    pub fn to_json(&self) -> Value {
        json!({
            "conjecture": self.conjecture.to_string(),
            "tested": self.tested,
            "counterexamples": self
                .counterexamples
                .iter()
                .map(|c| json!({
                    "seed": c.seed,
                    "ideal": c.ideal.generators().iter().map(Monomial::exponents).collect::<Vec<_>>(),
                    "betti": c.betti.to_json_value(),
                }))
                .collect::<Vec<_>>(),
        })
    }
}

enum Outcome {
    Skipped,
    Tested {
        counterexample: Option<Counterexample>,
        mismatch: bool,
        non_subcomplex: Option<MonomialIdeal>,
    },
}

fn run_one(which: Conjecture, params: &RandomParams, seed: u64, field: FieldSpec) -> Result<Outcome> {
    let ideal = match random_ideal(params, seed) {
        Ok(i) => i,
        Err(Error::Resource(_)) => return Ok(Outcome::Skipped),
        Err(e) => return Err(e),
    };
    debug_assert!(satisfies(&ideal, which.hypothesis()));
    let table = betti(&ideal, Method::Decompose, field)?;
    let mut counterexample = None;
    let mut mismatch = false;
    if !which.conclusion(&ideal, &table)? {
        let oracle = betti(&ideal, Method::Oracle, field)?;
        if oracle != table {
            mismatch = true;
        }
        if satisfies(&ideal, which.hypothesis()) && !which.conclusion(&ideal, &oracle)? {
            counterexample = Some(Counterexample {
                seed,
                ideal: ideal.clone(),
                betti: oracle,
            });
        }
    }
    let (_, basis) = betti_cancel(&ideal, field, 0, DEFAULT_MAX_GENS)?;
    let non_subcomplex = (!basis.is_subcomplex).then_some(ideal);
    Ok(Outcome::Tested {
        counterexample,
        mismatch,
        non_subcomplex,
    })
}

/// Tests `budget` random instances with seeds `base_seed, base_seed + 1, ...`.
/// The constraint in `params` is replaced by the conjecture's hypothesis.
pub fn conjecture_fuzz(
    which: Conjecture,
    params: &RandomParams,
    base_seed: u64,
    budget: usize,
    field: FieldSpec,
) -> Result<FuzzReport> {
    let params = params.clone().with(which.hypothesis());
    let seeds: Vec<u64> = (0..budget as u64).map(|i| base_seed.wrapping_add(i)).collect();
    let outcomes: Vec<Result<Outcome>> = seeds.par_iter().map(|&s| run_one(which, &params, s, field)).collect();
    let mut report = FuzzReport {
        conjecture: which,
        tested: 0,
        counterexamples: Vec::new(),
        non_subcomplex: Vec::new(),
        skipped: Vec::new(),
        mismatches: Vec::new(),
    };
    for (seed, outcome) in seeds.into_iter().zip(outcomes) {
        match outcome? {
            Outcome::Skipped => report.skipped.push(seed),
            Outcome::Tested {
                counterexample,
                mismatch,
                non_subcomplex,
            } => {
                report.tested += 1;
                report.counterexamples.extend(counterexample);
                if mismatch {
                    report.mismatches.push(seed);
                }
                if let Some(i) = non_subcomplex {
                    report.non_subcomplex.push((seed, i));
                }
            }
        }
    }
    Ok(report)
}
