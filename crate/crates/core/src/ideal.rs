//! Monomial ideals in canonical form, dominance classification and the
//! hypothesis detectors used by the structure theorems.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, VariableSet};

/// A monomial ideal given by its minimal generating set.
///
/// Generators are deduplicated, pairwise non-dividing and sorted by
/// (total degree, exponent vector). `(1)` is the unit ideal and the empty
/// generator list is the zero ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    vars: Arc<VariableSet>,
    gens: Vec<Monomial>,
}

/// Reduces `gens` to the canonical minimal generating set of the ideal they generate.
pub fn minimalize(vars: Arc<VariableSet>, gens: &[Monomial]) -> Result<MonomialIdeal> {
    let n = vars.len();
    if let Some(bad) = gens.iter().find(|g| g.nvars() != n) {
        return Err(Error::Dimension {
            expected: n,
            found: bad.nvars(),
        });
    }
    let mut sorted: Vec<Monomial> = gens.to_vec();
    sorted.sort_by(|a, b| a.canonical_cmp(b));
    sorted.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(sorted.len());
    // Any proper divisor has strictly smaller degree, so it is already in `kept`.
    for g in sorted {
        if !kept.iter().any(|h| h.divides_unchecked(&g)) {
            kept.push(g);
        }
    }
    Ok(MonomialIdeal { vars, gens: kept })
}

impl MonomialIdeal {
    /// Same as [`minimalize`].
    pub fn from_generators(vars: Arc<VariableSet>, gens: &[Monomial]) -> Result<Self> {
        minimalize(vars, gens)
    }

    pub fn zero(vars: Arc<VariableSet>) -> Self {
        MonomialIdeal { vars, gens: Vec::new() }
    }

    pub fn unit(vars: Arc<VariableSet>) -> Self {
        let one = Monomial::one(vars.len());
        MonomialIdeal { vars, gens: vec![one] }
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_proper_nonzero(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }

    pub(crate) fn require_proper(&self, what: &str) -> Result<()> {
        if self.is_zero() {
            return Err(Error::domain(format!("{what} is undefined for the zero ideal")));
        }
        if self.is_unit() {
            return Err(Error::domain(format!("{what} is undefined for the unit ideal")));
        }
        Ok(())
    }

    /// Whether `m` lies in the ideal.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides_unchecked(m))
    }

    /// Reorders the variables: variable `i` of the result is variable `perm[i]` of `self`.
    pub fn permute_variables(&self, perm: &[usize]) -> Result<MonomialIdeal> {
        let n = self.nvars();
        if perm.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: perm.len(),
            });
        }
        let vars = VariableSet::new(perm.iter().map(|&p| self.vars.name(p).to_string()))?;
        let gens: Vec<Monomial> = self
            .gens
            .iter()
            .map(|g| Monomial::new(perm.iter().map(|&p| g.exp(p)).collect()))
            .collect();
        minimalize(Arc::new(vars), &gens)
    }

    pub fn display(&self) -> IdealDisplay<'_> {
        IdealDisplay(self)
    }

    /// Text form that parses back to exactly this ideal, including the
    /// variable order: a `# variables:` directive followed by the generators.
    pub fn to_text(&self) -> String {
        let mut out = format!("# variables: {}\n", self.vars.names().join(", "));
        if !self.gens.is_empty() {
            out.push_str(&self.display().to_string());
            out.push('\n');
        }
        out
    }
}

pub struct IdealDisplay<'a>(&'a MonomialIdeal);

impl fmt::Display for IdealDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ideal = self.0;
        if ideal.gens.is_empty() {
            return f.write_str("0");
        }
        for (i, g) in ideal.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", ideal.vars.display(g))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DominanceClass {
    /// Every generator is dominant.
    Dominant,
    /// No generator is dominant.
    PurelyNondominant,
    /// Exactly `p` generators are nondominant, with `0 < p < q`.
    Semidominant(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceReport {
    /// Witness variable per generator, `None` for nondominant generators.
    pub witnesses: Vec<Option<usize>>,
    /// Number of nondominant generators.
    pub p: usize,
    pub class: DominanceClass,
}

impl DominanceReport {
    pub fn is_dominant(&self, gen: usize) -> bool {
        self.witnesses[gen].is_some()
    }

    pub fn dominant_indices(&self) -> Vec<usize> {
        (0..self.witnesses.len()).filter(|&i| self.is_dominant(i)).collect()
    }

    pub fn nondominant_indices(&self) -> Vec<usize> {
        (0..self.witnesses.len()).filter(|&i| !self.is_dominant(i)).collect()
    }

    /// `p`-semidominant in the broad sense: exactly `p` nondominant generators.
    pub fn is_semidominant(&self, p: usize) -> bool {
        self.p == p
    }

    pub fn label(&self) -> String {
        match self.class {
            DominanceClass::Dominant => "dominant".to_string(),
            DominanceClass::PurelyNondominant => "purely nondominant".to_string(),
            DominanceClass::Semidominant(p) => format!("{p}-semidominant"),
        }
    }
}

/// Classifies each generator of a proper ideal as dominant or not.
///
/// The witness of a dominant generator is the first variable (in ambient
/// order) whose exponent strictly exceeds its exponent in every other
/// generator.
pub fn classify(ideal: &MonomialIdeal) -> Result<DominanceReport> {
    ideal.require_proper("dominance")?;
    let gens = ideal.generators();
    let q = gens.len();
    let n = ideal.nvars();
    let witnesses: Vec<Option<usize>> = if q == 1 {
        vec![gens[0].support().first().copied()]
    } else {
        // For each variable: the largest exponent, its holder, and whether it is unique.
        let mut top: Vec<Option<usize>> = vec![None; n];
        for (v, slot) in top.iter_mut().enumerate() {
            let max = gens.iter().map(|g| g.exp(v)).max().unwrap_or(0);
            let mut holders = gens.iter().enumerate().filter(|(_, g)| g.exp(v) == max);
            let first = holders.next().map(|(i, _)| i);
            if holders.next().is_none() {
                *slot = first;
            }
        }
        (0..q)
            .map(|i| (0..n).find(|&v| top[v] == Some(i)))
            .collect()
    };
    let p = witnesses.iter().filter(|w| w.is_none()).count();
    let class = if p == 0 {
        DominanceClass::Dominant
    } else if p == q {
        DominanceClass::PurelyNondominant
    } else {
        DominanceClass::Semidominant(p)
    };
    Ok(DominanceReport { witnesses, p, class })
}

pub fn is_dominant(ideal: &MonomialIdeal) -> bool {
    classify(ideal).map(|r| r.p == 0).unwrap_or(false)
}

/// Artinian test. The second component gives, per variable, the index of the
/// generator that is a pure power of it.
pub fn is_artinian(ideal: &MonomialIdeal) -> (bool, Vec<Option<usize>>) {
    let n = ideal.nvars();
    let powers: Vec<Option<usize>> = (0..n)
        .map(|v| {
            ideal
                .generators()
                .iter()
                .position(|g| g.exp(v) >= 1 && g.supported_in(&[v]))
        })
        .collect();
    let ok = !ideal.is_zero() && (ideal.is_unit() || powers.iter().all(Option::is_some));
    (ok, powers)
}

/// Variables whose nonzero exponent is shared by two distinct generators.
fn shared_exponent_variables(ideal: &MonomialIdeal) -> Vec<usize> {
    let gens = ideal.generators();
    (0..ideal.nvars())
        .filter(|&v| {
            let mut seen: Vec<u32> = gens.iter().map(|g| g.exp(v)).filter(|&e| e > 0).collect();
            let len = seen.len();
            seen.sort_unstable();
            seen.dedup();
            seen.len() != len
        })
        .collect()
}

/// Almost-generic test: returns the smallest exempt variable index `i` such
/// that no other variable appears with the same nonzero exponent in two
/// minimal generators.
pub fn is_almost_generic(ideal: &MonomialIdeal) -> (bool, Option<usize>) {
    let bad = shared_exponent_variables(ideal);
    match bad.len() {
        0 => (true, Some(0)),
        1 => (true, Some(bad[0])),
        _ => (false, None),
    }
}

/// The hypothesis of the first conjecture: two exempt variables suffice.
/// Returns the exempt pair `(i, j)` with `i < j`, smallest first.
pub fn is_generic_outside_two(ideal: &MonomialIdeal) -> Option<(usize, usize)> {
    let bad = shared_exponent_variables(ideal);
    let n = ideal.nvars();
    match bad.len() {
        0 if n >= 2 => Some((0, 1)),
        1 if n >= 2 => Some(if bad[0] == 0 { (0, 1) } else { (0, bad[0]) }),
        2 => Some((bad[0], bad[1])),
        _ => None,
    }
}

/// Index of the first generator dividing `lcm(g, h)` for every pair of distinct generators.
pub fn pairwise_lcm_divisor(ideal: &MonomialIdeal) -> Option<usize> {
    let gens = ideal.generators();
    let q = gens.len();
    let mut lcms = Vec::with_capacity(q * q.saturating_sub(1) / 2);
    for a in 0..q {
        for b in a + 1..q {
            lcms.push(gens[a].lcm_unchecked(&gens[b]));
        }
    }
    (0..q).find(|&i| lcms.iter().all(|l| gens[i].divides_unchecked(l)))
}

/// Hypothesis of the pd = 2 criterion: 2- or 3-semidominant, and some
/// generator divides the lcm of every pair of generators.
pub fn pd2_hypothesis(ideal: &MonomialIdeal) -> Result<bool> {
    if ideal.len() < 2 {
        return Err(Error::domain("the pd = 2 criterion needs at least two generators"));
    }
    let report = classify(ideal)?;
    if report.p != 2 && report.p != 3 {
        return Ok(false);
    }
    Ok(pairwise_lcm_divisor(ideal).is_some())
}

/// Hypothesis of the pd = n criterion: a pivot variable `v` such that every
/// variable `x_i` divides some generator of the form `v^a * x_i^b`, `b >= 1`.
pub fn pdn_hypothesis(ideal: &MonomialIdeal) -> Option<usize> {
    if !ideal.is_proper_nonzero() {
        return None;
    }
    let n = ideal.nvars();
    let gens = ideal.generators();
    (0..n).find(|&v| {
        (0..n).all(|i| gens.iter().any(|g| g.exp(i) >= 1 && g.supported_in(&[v, i])))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(n: usize) -> Arc<VariableSet> {
        Arc::new(VariableSet::letters(n).unwrap())
    }

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        let gens: Vec<Monomial> = gens.iter().map(|g| Monomial::new(g.to_vec())).collect();
        minimalize(vars(n), &gens).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn minimalize_examples() {
        // (c^2, c, d, c, cd) over a, b, c, d
        let i = ideal(4, &[&[0, 0, 2, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 0, 1, 1]]);
        assert_eq!(i.generators(), &[mono(&[0, 0, 0, 1]), mono(&[0, 0, 1, 0])]);
        // (a, a^2, b^2, ab, b)
        let i = ideal(4, &[&[1, 0, 0, 0], &[2, 0, 0, 0], &[0, 2, 0, 0], &[1, 1, 0, 0], &[0, 1, 0, 0]]);
        assert_eq!(i.generators(), &[mono(&[0, 1, 0, 0]), mono(&[1, 0, 0, 0])]);
        // (1, x, y^2)
        let i = ideal(2, &[&[0, 0], &[1, 0], &[0, 2]]);
        assert!(i.is_unit());
        let z = minimalize(vars(2), &[]).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn minimalize_rejects_mixed_dimensions() {
        assert!(minimalize(vars(2), &[mono(&[1, 0, 0])]).is_err());
    }

    #[test]
    fn classify_examples() {
        // {a^2, b^3, ab}
        let i = ideal(2, &[&[2, 0], &[0, 3], &[1, 1]]);
        let r = classify(&i).unwrap();
        assert_eq!(r.class, DominanceClass::Semidominant(1));
        let ab = i.generators().iter().position(|g| g == &mono(&[1, 1])).unwrap();
        assert!(!r.is_dominant(ab));
        assert_eq!(r.p, 1);
        // {ab, bc, ac}
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let r = classify(&i).unwrap();
        assert_eq!(r.class, DominanceClass::PurelyNondominant);
        assert_eq!(r.p, 3);
        // {a^2b, ab^3c, bc^2}
        let i = ideal(3, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 2]]);
        assert_eq!(classify(&i).unwrap().class, DominanceClass::Dominant);
    }

    #[test]
    fn classify_witness_is_strict_maximum() {
        let i = ideal(3, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 2]]);
        let r = classify(&i).unwrap();
        for (g, w) in r.witnesses.iter().enumerate() {
            let v = w.unwrap();
            let e = i.generators()[g].exp(v);
            for (h, other) in i.generators().iter().enumerate() {
                if h != g {
                    assert!(e > other.exp(v));
                }
            }
        }
    }

    #[test]
    fn classify_rejects_unit_and_zero() {
        assert!(classify(&MonomialIdeal::unit(vars(2))).is_err());
        assert!(classify(&MonomialIdeal::zero(vars(2))).is_err());
    }

    #[test]
    fn single_generator_is_dominant() {
        let i = ideal(3, &[&[0, 2, 1]]);
        let r = classify(&i).unwrap();
        assert_eq!(r.class, DominanceClass::Dominant);
        assert_eq!(r.witnesses, vec![Some(1)]);
    }

    #[test]
    fn artinian_examples() {
        let (ok, powers) = is_artinian(&ideal(2, &[&[2, 0], &[0, 3], &[1, 1]]));
        assert!(ok);
        assert!(powers.iter().all(Option::is_some));
        assert!(!is_artinian(&ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])).0);
        assert!(is_artinian(&ideal(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]])).0);
    }

    #[test]
    fn almost_generic_examples() {
        // (a^2b^2cd^2, a^3b^3c, cd^4): exempt c
        let i = ideal(4, &[&[2, 2, 1, 2], &[3, 3, 1, 0], &[0, 0, 1, 4]]);
        assert_eq!(is_almost_generic(&i), (true, Some(2)));
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(is_almost_generic(&i), (false, None));
        let i = ideal(3, &[&[1, 1, 1]]);
        assert!(is_almost_generic(&i).0);
    }

    #[test]
    fn generic_outside_two() {
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(is_generic_outside_two(&i), None);
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 2], &[1, 0, 1]]);
        assert_eq!(is_generic_outside_two(&i), Some((0, 1)));
    }

    #[test]
    fn pd2_examples() {
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert!(pd2_hypothesis(&i).unwrap());
        let i = ideal(2, &[&[2, 0], &[0, 1]]);
        assert!(!pd2_hypothesis(&i).unwrap());
        assert!(pd2_hypothesis(&ideal(2, &[&[1, 1]])).is_err());
    }

    #[test]
    fn pdn_examples() {
        // (x1^3, x1x2, x1x3, x1x4, x1x5, x2x4, x3x5)
        let i = ideal(
            5,
            &[
                &[3, 0, 0, 0, 0],
                &[1, 1, 0, 0, 0],
                &[1, 0, 1, 0, 0],
                &[1, 0, 0, 1, 0],
                &[1, 0, 0, 0, 1],
                &[0, 1, 0, 1, 0],
                &[0, 0, 1, 0, 1],
            ],
        );
        assert_eq!(pdn_hypothesis(&i), Some(0));
        let i = ideal(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        assert_eq!(pdn_hypothesis(&i), None);
        let i = ideal(2, &[&[2, 0], &[0, 3], &[1, 1]]);
        assert!(pdn_hypothesis(&i).is_some());
    }

    #[test]
    fn variable_permutation() {
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        let p = i.permute_variables(&[1, 0]).unwrap();
        assert_eq!(p.vars().names(), &["b".to_string(), "a".to_string()]);
        assert!(p.generators().contains(&mono(&[0, 2])));
    }
}
