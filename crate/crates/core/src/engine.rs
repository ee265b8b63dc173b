//! Betti tables by decomposition, oracle or cancellation, and the checks
//! built on top of them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::decompose::{second_decomposition, NodeKind};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::ideal::{classify, is_artinian, DominanceClass, MonomialIdeal};
use crate::monomial::Monomial;
use crate::oracle::betti_oracle_capped;
use crate::table::BettiTable;
use crate::taylor::{cancel_minimize, check_cap, hdeg, MinimalBasis, TaylorComplex, DEFAULT_MAX_GENS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Method {
    #[default]
    Decompose,
    Oracle,
    Cancel,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Decompose, Method::Oracle, Method::Cancel];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Decompose => "decompose",
            Method::Oracle => "oracle",
            Method::Cancel => "cancel",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "decompose" => Ok(Method::Decompose),
            "oracle" => Ok(Method::Oracle),
            "cancel" => Ok(Method::Cancel),
            other => Err(Error::Invalid(format!("unknown method `{other}`"))),
        }
    }
}

fn trivial_table(ideal: &MonomialIdeal, field: FieldSpec) -> Option<BettiTable> {
    let mut t = BettiTable::new(field);
    if ideal.is_zero() {
        t.add(0, Monomial::one(ideal.nvars()), 1);
        return Some(t);
    }
    if ideal.is_unit() {
        return Some(t);
    }
    None
}

/// Betti numbers of a dominant ideal: its Taylor complex is minimal, so
/// `β_{i,l}` counts the `i`-subsets of generators with lcm `l`.
pub fn betti_dominant(ideal: &MonomialIdeal, field: FieldSpec) -> Result<BettiTable> {
    betti_dominant_capped(ideal, field, DEFAULT_MAX_GENS)
}

pub fn betti_dominant_capped(ideal: &MonomialIdeal, field: FieldSpec, cap: usize) -> Result<BettiTable> {
    if classify(ideal)?.class != DominanceClass::Dominant {
        return Err(Error::domain("betti_dominant needs a dominant ideal"));
    }
    let t = TaylorComplex::of_ideal(ideal, cap)?;
    let mut table = BettiTable::new(field);
    for face in t.faces() {
        table.add(face.hdeg(), face.mdeg, 1);
    }
    Ok(table)
}

pub fn betti(ideal: &MonomialIdeal, method: Method, field: FieldSpec) -> Result<BettiTable> {
    betti_capped(ideal, method, field, DEFAULT_MAX_GENS)
}

/// Betti table of `S/M` by the chosen method; `cap` bounds the number of
/// generators of any Taylor complex that gets built.
pub fn betti_capped(ideal: &MonomialIdeal, method: Method, field: FieldSpec, cap: usize) -> Result<BettiTable> {
    if let Some(t) = trivial_table(ideal, field) {
        return Ok(t);
    }
    match method {
        Method::Oracle => betti_oracle_capped(ideal, field, cap),
        Method::Cancel => Ok(betti_cancel(ideal, field, 0, cap)?.0),
        Method::Decompose => betti_decompose(ideal, field, cap),
    }
}

/// Sum over the leaves of the second decomposition, each shifted by its
/// accumulated `(j, m)`.
fn betti_decompose(ideal: &MonomialIdeal, field: FieldSpec, cap: usize) -> Result<BettiTable> {
    // Leaves are never larger than the root, so checking once up front
    // turns an oversized input into a resource error before any work.
    check_cap(ideal.len(), cap)?;
    let tree = second_decomposition(ideal)?;
    let leaves = tree.leaves();
    let parts: Vec<Result<Option<BettiTable>>> = leaves
        .par_iter()
        .map(|leaf| match leaf.kind {
            NodeKind::Unit => Ok(None),
            NodeKind::Dominant => betti_dominant_capped(&leaf.ideal, field, cap).map(Some),
            NodeKind::PurelyNondominant => betti_oracle_capped(&leaf.ideal, field, cap).map(Some),
            NodeKind::Internal => unreachable!("leaves are never internal"),
        })
        .collect();
    let mut table = BettiTable::new(field);
    for (leaf, part) in leaves.iter().zip(parts) {
        if let Some(part) = part? {
            for (k, l, c) in part.entries() {
                table.add(k + leaf.total_j, l.mul(&leaf.total_m)?, c);
            }
        }
    }
    Ok(table)
}

/// Cancellation on the Taylor complex of the minimal generators, with the
/// surviving basis for inspection.
pub fn betti_cancel(ideal: &MonomialIdeal, field: FieldSpec, order_seed: u64, cap: usize) -> Result<(BettiTable, MinimalBasis)> {
    let t = TaylorComplex::of_ideal(ideal, cap)?;
    let basis = cancel_minimize(&t, field, order_seed);
    let mut table = BettiTable::new(field);
    for ((i, l), c) in &basis.counts {
        table.add(*i, l.clone(), *c);
    }
    Ok((table, basis))
}

pub fn pd(ideal: &MonomialIdeal, method: Method, field: FieldSpec) -> Result<usize> {
    Ok(betti(ideal, method, field)?.pd())
}

/// Outcome of comparing the three methods on one ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub tables: Vec<(Method, BettiTable)>,
    pub agree: bool,
}

pub fn verify(ideal: &MonomialIdeal, field: FieldSpec, cap: usize) -> Result<Verification> {
    let tables = Method::ALL
        .iter()
        .map(|&m| Ok((m, betti_capped(ideal, m, field, cap)?)))
        .collect::<Result<Vec<_>>>()?;
    let agree = tables.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(Verification { tables, agree })
}

/// Result of testing for characteristic Betti numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicReport {
    pub is_characteristic: bool,
    /// Multidegrees carried by an odd number of Taylor faces.
    pub odd: BTreeSet<Monomial>,
    /// Multidegrees whose total Betti number is not 1 on `odd` and 0 elsewhere.
    pub violations: Vec<Monomial>,
    /// Characteristic, and each nonzero entry sits at `f(l)`.
    pub min_hdeg_ok: bool,
    /// `f(l)`: the smallest homological degree of a face with multidegree `l`.
    pub f_values: BTreeMap<Monomial, usize>,
}

impl CharacteristicReport {
    pub fn to_json(&self) -> Value {
        json!({
            "is_characteristic": self.is_characteristic,
            "min_hdeg_ok": self.min_hdeg_ok,
            "odd": self.odd.iter().map(Monomial::exponents).collect::<Vec<_>>(),
            "violations": self.violations.iter().map(Monomial::exponents).collect::<Vec<_>>(),
            "f": self
                .f_values
                .iter()
                .map(|(l, f)| json!({"mdeg": l.exponents(), "f": f}))
                .collect::<Vec<_>>(),
        })
    }
}

pub fn characteristic_check(ideal: &MonomialIdeal, table: &BettiTable) -> Result<CharacteristicReport> {
    characteristic_check_capped(ideal, table, DEFAULT_MAX_GENS)
}

pub fn characteristic_check_capped(ideal: &MonomialIdeal, table: &BettiTable, cap: usize) -> Result<CharacteristicReport> {
    let t = TaylorComplex::of_ideal(ideal, cap)?;
    let (classes, class_of) = t.multidegree_classes();
    let mut counts = vec![0u64; classes.len()];
    let mut min_h = vec![usize::MAX; classes.len()];
    for (s, &c) in class_of.iter().enumerate() {
        counts[c as usize] += 1;
        min_h[c as usize] = min_h[c as usize].min(hdeg(s as u32));
    }
    let odd: BTreeSet<Monomial> = classes
        .iter()
        .zip(&counts)
        .filter(|(_, &n)| n % 2 == 1)
        .map(|(l, _)| l.clone())
        .collect();
    let f_values: BTreeMap<Monomial, usize> = classes.iter().cloned().zip(min_h).collect();

    let sums = table.sum_by_multidegree();
    let mut candidates: BTreeSet<&Monomial> = classes.iter().collect();
    candidates.extend(sums.keys());
    let violations: Vec<Monomial> = candidates
        .into_iter()
        .filter(|l| {
            let expected = u64::from(odd.contains(*l));
            sums.get(*l).copied().unwrap_or(0) != expected
        })
        .cloned()
        .collect();
    let is_characteristic = violations.is_empty();
    let min_hdeg_ok = is_characteristic && table.entries().all(|(k, l, _)| f_values.get(l) == Some(&k));
    Ok(CharacteristicReport {
        is_characteristic,
        odd,
        violations,
        min_hdeg_ok,
        f_values,
    })
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn require_artinian(ideal: &MonomialIdeal) -> Result<()> {
    if !is_artinian(ideal).0 {
        return Err(Error::domain("the ideal is not Artinian"));
    }
    Ok(())
}

/// Whether `β_i >= C(n, i)` for `i = 0..=n`.
pub fn charalambous_check(ideal: &MonomialIdeal, table: &BettiTable) -> Result<bool> {
    require_artinian(ideal)?;
    let n = ideal.nvars();
    let totals = table.totals();
    Ok((0..=n).all(|i| BigUint::from(totals.get(i).copied().unwrap_or(0)) >= binomial(n, i)))
}

/// The smallest multidegree `l` with `β_{n,l} > 0` divisible by every variable.
pub fn full_support_witness(ideal: &MonomialIdeal, table: &BettiTable) -> Result<Monomial> {
    require_artinian(ideal)?;
    let n = ideal.nvars();
    table
        .entries()
        .find(|(k, l, _)| *k == n && l.support().len() == n)
        .map(|(_, l, _)| l.clone())
        .ok_or_else(|| Error::domain("no basis element in degree n has full support"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::minimalize;
    use crate::monomial::VariableSet;
    use std::sync::Arc;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        let vars = Arc::new(VariableSet::letters(n).unwrap());
        let gens: Vec<Monomial> = gens.iter().map(|g| mono(g)).collect();
        minimalize(vars, &gens).unwrap()
    }

    fn example() -> MonomialIdeal {
        ideal(4, &[&[3, 2, 0, 0], &[0, 0, 3, 1], &[1, 0, 2, 0], &[2, 0, 1, 0], &[0, 2, 0, 1], &[1, 1, 1, 0], &[0, 1, 1, 1]])
    }

    #[test]
    fn dominant_tables() {
        let cd = ideal(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let t = betti_dominant(&cd, FieldSpec::Rationals).unwrap();
        let expected: Vec<(usize, Monomial, u64)> = vec![
            (0, mono(&[0, 0, 0, 0]), 1),
            (1, mono(&[0, 0, 0, 1]), 1),
            (1, mono(&[0, 0, 1, 0]), 1),
            (2, mono(&[0, 0, 1, 1]), 1),
        ];
        assert_eq!(t.entries().map(|(i, l, c)| (i, l.clone(), c)).collect::<Vec<_>>(), expected);
        let two = ideal(4, &[&[1, 1, 1, 0], &[0, 1, 1, 1]]);
        assert_eq!(betti_dominant(&two, FieldSpec::Rationals).unwrap().get(2, &mono(&[1, 1, 1, 1])), 1);
        let tri = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert!(betti_dominant(&tri, FieldSpec::Rationals).is_err());
    }

    #[test]
    fn methods_agree_on_example() {
        for field in [FieldSpec::Rationals, FieldSpec::Prime(2)] {
            let v = verify(&example(), field, DEFAULT_MAX_GENS).unwrap();
            assert!(v.agree);
            let t = &v.tables[0].1;
            assert_eq!(t.len(), 20);
            assert_eq!(t.totals(), vec![1, 7, 9, 3]);
            assert!(t.entries().all(|(_, _, c)| c == 1));
        }
    }

    #[test]
    fn trivial_ideals() {
        let vars = Arc::new(VariableSet::letters(2).unwrap());
        for m in Method::ALL {
            let z = betti(&MonomialIdeal::zero(vars.clone()), m, FieldSpec::Rationals).unwrap();
            assert_eq!(z.totals(), vec![1]);
            assert!(betti(&MonomialIdeal::unit(vars.clone()), m, FieldSpec::Rationals).unwrap().is_empty());
        }
    }

    #[test]
    fn decompose_on_purely_nondominant_root() {
        let tri = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(betti(&tri, Method::Decompose, FieldSpec::Rationals).unwrap().totals(), vec![1, 3, 2]);
    }

    #[test]
    fn cap_is_a_resource_error() {
        let gens: Vec<Vec<u32>> = (0..6).map(|i| (0..6).map(|j| u32::from(i == j) * 2).collect()).collect();
        let refs: Vec<&[u32]> = gens.iter().map(Vec::as_slice).collect();
        let i = ideal(6, &refs);
        for m in Method::ALL {
            assert!(matches!(betti_capped(&i, m, FieldSpec::Rationals, 5), Err(Error::Resource(_))));
        }
    }

    #[test]
    fn characteristic_examples() {
        let m = example();
        let t = betti(&m, Method::Oracle, FieldSpec::Rationals).unwrap();
        let r = characteristic_check(&m, &t).unwrap();
        assert!(r.is_characteristic);
        // [a^3b^2, bcd] already has multidegree a^3b^2cd, which lives in degree 3.
        assert!(!r.min_hdeg_ok);
        assert_eq!(r.f_values[&mono(&[3, 2, 1, 1])], 2);
        assert_eq!(r.odd.len(), 20);

        let pn = ideal(3, &[&[2, 1, 1], &[0, 2, 2], &[2, 2, 0], &[1, 1, 2]]);
        assert_eq!(classify(&pn).unwrap().class, DominanceClass::PurelyNondominant);
        let t = betti(&pn, Method::Oracle, FieldSpec::Rationals).unwrap();
        assert!(characteristic_check(&pn, &t).unwrap().is_characteristic);

        let tri = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let t = betti(&tri, Method::Oracle, FieldSpec::Rationals).unwrap();
        let r = characteristic_check(&tri, &t).unwrap();
        assert!(!r.is_characteristic);
        assert_eq!(r.violations, vec![mono(&[1, 1, 1])]);
    }

    #[test]
    fn artinian_checks() {
        let koszul = ideal(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        let t = betti(&koszul, Method::Oracle, FieldSpec::Rationals).unwrap();
        assert!(charalambous_check(&koszul, &t).unwrap());
        assert_eq!(full_support_witness(&koszul, &t).unwrap(), mono(&[2, 2, 2]));

        let xy = ideal(2, &[&[2, 0], &[0, 3], &[1, 1]]);
        let t = betti(&xy, Method::Oracle, FieldSpec::Rationals).unwrap();
        assert_eq!(t.totals(), vec![1, 3, 2]);
        assert!(charalambous_check(&xy, &t).unwrap());
        let w = full_support_witness(&xy, &t).unwrap();
        assert!(w == mono(&[2, 1]) || w == mono(&[1, 3]));

        let tri = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert!(charalambous_check(&tri, &t).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(4, 0), BigUint::from(1u32));
        assert_eq!(binomial(3, 4), BigUint::from(0u32));
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }
}
