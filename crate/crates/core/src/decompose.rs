//! Structural decompositions.
//!
//! Split the minimal generators of `M` into a chosen set of dominant
//! generators `m_1..m_d` and the rest `H`. For every subset of the chosen
//! dominant generators with lcm `m` (size `j`), the contract
//! `M_m = (lcm(m, h)/m : h in H)` satisfies
//!
//! `β_{k,l}(S/M) = Σ_{(j,m)} β_{k-j, l/m}(S/M_m)`.
//!
//! Taking all dominant generators gives the first decomposition, a single
//! one gives the third, and recursing on every contract that is neither
//! dominant, purely nondominant, nor the unit ideal gives the tree of the
//! second decomposition.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ideal::{classify, minimalize, DominanceClass, MonomialIdeal};
use crate::monomial::Monomial;

/// A contract together with its homological and multidegree shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedIdeal {
    pub j: usize,
    pub m: Monomial,
    pub ideal: MonomialIdeal,
}

/// The index set: `(j, lcm of a j-subset)` over subsets of the first `d`
/// dominant generators, plus `(0, 1)`, sorted by `(j, m)`.
///
/// When every generator is among the chosen ones there is no H-part and the
/// result is just `{(0, 1)}`. Two different subsets never share a pair
/// (a dominant generator is recovered from the lcm through its witness
/// variable); an instance where they do is reported as an error.
pub fn build_c(ideal: &MonomialIdeal, d: usize) -> Result<Vec<(usize, Monomial)>> {
    let (chosen, rest) = split(ideal, d)?;
    let n = ideal.nvars();
    if rest.is_empty() {
        return Ok(vec![(0, Monomial::one(n))]);
    }
    let gens = ideal.generators();
    let mut seen: BTreeMap<(usize, Monomial), u64> = BTreeMap::new();
    for subset in 0u64..(1u64 << chosen.len()) {
        let mut m = Monomial::one(n);
        for (k, &g) in chosen.iter().enumerate() {
            if subset >> k & 1 == 1 {
                m.lcm_assign(&gens[g]);
            }
        }
        let key = (subset.count_ones() as usize, m);
        if let Some(prev) = seen.insert(key.clone(), subset) {
            return Err(Error::domain(format!(
                "dominant subsets {prev:#b} and {subset:#b} share shift (j = {}, m = {})",
                key.0,
                ideal.vars().display(&key.1)
            )));
        }
    }
    Ok(seen.into_keys().collect())
}

/// Generator indices of the first `d` dominant generators and of the rest.
fn split(ideal: &MonomialIdeal, d: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let report = classify(ideal)?;
    let dominant = report.dominant_indices();
    if d == 0 || d > dominant.len() {
        return Err(Error::domain(format!(
            "d = {d} is out of range: the ideal has {} dominant generators",
            dominant.len()
        )));
    }
    let chosen: Vec<usize> = dominant[..d].to_vec();
    let rest: Vec<usize> = (0..ideal.len()).filter(|i| !chosen.contains(i)).collect();
    Ok((chosen, rest))
}

/// `lcm(m, h)/m` for each `h` in `h_part`, in order and without minimalizing.
pub fn contract_sequence(ideal: &MonomialIdeal, m: &Monomial, h_part: &[usize]) -> Result<Vec<Monomial>> {
    h_part
        .iter()
        .map(|&i| {
            let h = ideal
                .generators()
                .get(i)
                .ok_or_else(|| Error::domain(format!("generator {i} out of range")))?;
            m.lcm(h)?.quotient(m)
        })
        .collect()
}

/// The contract `M_m` over the generators `h_part`, minimalized. The ambient
/// variables are kept even when some no longer occur.
pub fn contract(ideal: &MonomialIdeal, m: &Monomial, h_part: &[usize]) -> Result<MonomialIdeal> {
    if h_part.is_empty() {
        return Err(Error::domain("a contract needs a nonempty H-part"));
    }
    let seq = contract_sequence(ideal, m, h_part)?;
    minimalize(ideal.vars().clone(), &seq)
}

/// Decomposition with respect to the first `d` dominant generators.
pub fn decomposition_with(ideal: &MonomialIdeal, d: usize) -> Result<Vec<ShiftedIdeal>> {
    let c = build_c(ideal, d)?;
    let (_, rest) = split(ideal, d)?;
    if rest.is_empty() {
        return Ok(vec![ShiftedIdeal {
            j: 0,
            m: Monomial::one(ideal.nvars()),
            ideal: ideal.clone(),
        }]);
    }
    c.into_iter()
        .map(|(j, m)| {
            let contracted = contract(ideal, &m, &rest)?;
            Ok(ShiftedIdeal { j, m, ideal: contracted })
        })
        .collect()
}

/// First decomposition: all dominant generators are chosen and `H` is the
/// set of nondominant generators.
pub fn first_decomposition(ideal: &MonomialIdeal) -> Result<Vec<ShiftedIdeal>> {
    let report = classify(ideal)?;
    if report.class == DominanceClass::PurelyNondominant {
        return Err(Error::domain("a purely nondominant ideal has no first decomposition"));
    }
    decomposition_with(ideal, report.dominant_indices().len())
}

/// Third decomposition: only the first dominant generator is chosen.
pub fn third_decomposition(ideal: &MonomialIdeal) -> Result<Vec<ShiftedIdeal>> {
    decomposition_with(ideal, 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    Dominant,
    PurelyNondominant,
    Unit,
    Internal,
}

impl NodeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            NodeKind::Dominant => "dominant",
            NodeKind::PurelyNondominant => "purely_nondominant",
            NodeKind::Unit => "unit",
            NodeKind::Internal => "internal",
        }
    }

    pub fn is_leaf(&self) -> bool {
        *self != NodeKind::Internal
    }
}

/// One node of the second decomposition.
///
/// `j`, `m` are the shift relative to the parent; `total_j`, `total_m`
/// accumulate along the path from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionNode {
    pub j: usize,
    pub m: Monomial,
    pub total_j: usize,
    pub total_m: Monomial,
    pub ideal: MonomialIdeal,
    pub kind: NodeKind,
    pub children: Vec<DecompositionNode>,
}

pub type DecompositionTree = DecompositionNode;

fn leaf_kind(ideal: &MonomialIdeal) -> Result<Option<NodeKind>> {
    if ideal.is_unit() {
        return Ok(Some(NodeKind::Unit));
    }
    Ok(match classify(ideal)?.class {
        DominanceClass::Dominant => Some(NodeKind::Dominant),
        DominanceClass::PurelyNondominant => Some(NodeKind::PurelyNondominant),
        DominanceClass::Semidominant(_) => None,
    })
}

/// Recursive second decomposition of a proper nonzero ideal.
pub fn second_decomposition(ideal: &MonomialIdeal) -> Result<DecompositionTree> {
    if ideal.is_zero() {
        return Err(Error::domain("the zero ideal has no decomposition"));
    }
    let depth_cap = if ideal.is_unit() { 0 } else { classify(ideal)?.p };
    let one = Monomial::one(ideal.nvars());
    build_node(ideal.clone(), 0, one.clone(), 0, one, depth_cap)
}

fn build_node(
    ideal: MonomialIdeal,
    j: usize,
    m: Monomial,
    total_j: usize,
    total_m: Monomial,
    depth_left: usize,
) -> Result<DecompositionNode> {
    if let Some(kind) = leaf_kind(&ideal)? {
        return Ok(DecompositionNode {
            j,
            m,
            total_j,
            total_m,
            ideal,
            kind,
            children: Vec::new(),
        });
    }
    if depth_left == 0 {
        return Err(Error::Resource("decomposition recursion exceeded its depth bound".into()));
    }
    let mut children = Vec::new();
    for term in first_decomposition(&ideal)? {
        let child_total_m = total_m.mul(&term.m)?;
        children.push(build_node(
            term.ideal,
            term.j,
            term.m,
            total_j + term.j,
            child_total_m,
            depth_left - 1,
        )?);
    }
    Ok(DecompositionNode {
        j,
        m,
        total_j,
        total_m,
        ideal,
        kind: NodeKind::Internal,
        children,
    })
}

impl DecompositionNode {
    /// Leaves in depth-first order.
    pub fn leaves(&self) -> Vec<&DecompositionNode> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a DecompositionNode>) {
        if self.kind.is_leaf() {
            out.push(self);
        }
        for c in &self.children {
            c.collect_leaves(out);
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(DecompositionNode::depth).max().unwrap_or(0)
    }

    pub fn has_purely_nondominant_leaf(&self) -> bool {
        self.leaves().iter().any(|l| l.kind == NodeKind::PurelyNondominant)
    }

    /// Nested JSON with the shift of each node relative to its parent.
    pub fn to_json(&self) -> Value {
        json!({
            "j": self.j,
            "m": self.m.exponents(),
            "ideal": self.ideal.generators().iter().map(Monomial::exponents).collect::<Vec<_>>(),
            "kind": self.kind.as_str(),
            "children": self.children.iter().map(DecompositionNode::to_json).collect::<Vec<_>>(),
        })
    }

    /// Graphviz rendering; edges are labeled with the relative shift.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph decomposition {\n  node [shape=box];\n");
        let mut next = 0usize;
        self.write_dot(&mut out, &mut next);
        out.push_str("}\n");
        out
    }

    fn write_dot(&self, out: &mut String, next: &mut usize) -> usize {
        let id = *next;
        *next += 1;
        let vars = self.ideal.vars();
        let _ = writeln!(
            out,
            "  n{id} [label=\"({})\\n{}\"];",
            self.ideal.display(),
            self.kind.as_str()
        );
        for c in &self.children {
            let child = c.write_dot(out, next);
            let _ = writeln!(out, "  n{id} -> n{child} [label=\"({}, {})\"];", c.j, vars.display(&c.m));
        }
        id
    }

    /// Indented text rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, indent: usize) {
        let vars = self.ideal.vars();
        let _ = writeln!(
            out,
            "{:indent$}({}, {}) -> ({}) [{}]",
            "",
            self.j,
            vars.display(&self.m),
            self.ideal.display(),
            self.kind.as_str(),
            indent = indent
        );
        for c in &self.children {
            c.write_text(out, indent + 2);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
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

    fn nondominant(i: &MonomialIdeal) -> Vec<usize> {
        classify(i).unwrap().nondominant_indices()
    }

    #[test]
    fn index_set_of_example() {
        let c = build_c(&example(), 2).unwrap();
        let expected = vec![
            (0, mono(&[0, 0, 0, 0])),
            (1, mono(&[0, 0, 3, 1])),
            (1, mono(&[3, 2, 0, 0])),
            (2, mono(&[3, 2, 3, 1])),
        ];
        assert_eq!(c, expected);
    }

    #[test]
    fn index_set_with_one_dominant_generator() {
        let i = example();
        let c = build_c(&i, 1).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0], (0, Monomial::one(4)));
        assert_eq!(c[1].0, 1);
    }

    #[test]
    fn index_set_rejects_bad_d() {
        let tri = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert!(build_c(&tri, 1).is_err());
        assert!(build_c(&example(), 3).is_err());
        assert!(build_c(&example(), 0).is_err());
    }

    #[test]
    fn contracts_of_example() {
        let i = example();
        let h = nondominant(&i);
        assert_eq!(h.len(), 5);
        let seq = contract_sequence(&i, &mono(&[3, 2, 0, 0]), &h).unwrap();
        let mut sorted = seq.clone();
        sorted.sort();
        // c^2, c, d, c, cd in some order
        let mut expected = vec![mono(&[0, 0, 2, 0]), mono(&[0, 0, 1, 0]), mono(&[0, 0, 0, 1]), mono(&[0, 0, 1, 0]), mono(&[0, 0, 1, 1])];
        expected.sort();
        assert_eq!(sorted, expected);
        let cd = contract(&i, &mono(&[3, 2, 0, 0]), &h).unwrap();
        assert_eq!(cd.generators(), &[mono(&[0, 0, 0, 1]), mono(&[0, 0, 1, 0])]);
        let ab = contract(&i, &mono(&[0, 0, 3, 1]), &h).unwrap();
        assert_eq!(ab.generators(), &[mono(&[0, 1, 0, 0]), mono(&[1, 0, 0, 0])]);
        let unit = contract(&i, &mono(&[3, 2, 3, 1]), &h).unwrap();
        assert!(unit.is_unit());
    }

    #[test]
    fn first_decomposition_of_inner_ideal() {
        // M_1 = (ac^2, a^2c, b^2d, abc, bcd)
        let m1 = ideal(4, &[&[1, 0, 2, 0], &[2, 0, 1, 0], &[0, 2, 0, 1], &[1, 1, 1, 0], &[0, 1, 1, 1]]);
        let terms = first_decomposition(&m1).unwrap();
        let got: Vec<(usize, Monomial, Vec<Monomial>)> =
            terms.iter().map(|t| (t.j, t.m.clone(), t.ideal.generators().to_vec())).collect();
        let b = vec![mono(&[0, 1, 0, 0])];
        let c = vec![mono(&[0, 0, 1, 0])];
        let expected_nonunit = vec![
            (2, mono(&[2, 0, 2, 0]), b.clone()),
            (1, mono(&[1, 0, 2, 0]), b.clone()),
            (1, mono(&[2, 0, 1, 0]), b.clone()),
            (1, mono(&[0, 2, 0, 1]), c.clone()),
            (0, mono(&[0, 0, 0, 0]), vec![mono(&[0, 1, 1, 1]), mono(&[1, 1, 1, 0])]),
        ];
        for e in &expected_nonunit {
            assert!(got.contains(e), "missing {e:?}");
        }
        // Every other term is a unit contract.
        for (t, g) in terms.iter().zip(&got) {
            if !expected_nonunit.contains(g) {
                assert!(t.ideal.is_unit(), "unexpected term {g:?}");
            }
        }
    }

    #[test]
    fn first_decomposition_edge_cases() {
        let dom = ideal(2, &[&[2, 0], &[0, 3]]);
        let terms = first_decomposition(&dom).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].ideal, dom);
        assert_eq!(terms[0].j, 0);
        let tri = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert!(first_decomposition(&tri).is_err());
    }

    #[test]
    fn third_decomposition_two_terms() {
        // (x^2, y^2): m_1 is the first dominant generator in canonical order.
        let i = ideal(2, &[&[2, 0], &[0, 2]]);
        let terms = third_decomposition(&i).unwrap();
        assert_eq!(terms.len(), 2);
        let m1 = i.generators()[0].clone();
        let other = i.generators()[1].clone();
        assert_eq!((terms[0].j, terms[0].m.is_one()), (0, true));
        assert_eq!(terms[0].ideal.generators(), std::slice::from_ref(&other));
        assert_eq!((terms[1].j, terms[1].m.clone()), (1, m1));
        assert_eq!(terms[1].ideal.generators(), &[other]);
        let single = ideal(2, &[&[1, 1]]);
        assert_eq!(third_decomposition(&single).unwrap().len(), 1);
    }

    #[test]
    fn second_decomposition_of_example() {
        let tree = second_decomposition(&example()).unwrap();
        assert!(!tree.has_purely_nondominant_leaf());
        let mut nonunit: Vec<Vec<Monomial>> = tree
            .leaves()
            .iter()
            .filter(|l| l.kind != NodeKind::Unit)
            .map(|l| l.ideal.generators().to_vec())
            .collect();
        nonunit.sort();
        let b = vec![mono(&[0, 1, 0, 0])];
        let mut expected = vec![
            vec![mono(&[0, 0, 0, 1]), mono(&[0, 0, 1, 0])],
            vec![mono(&[0, 1, 0, 0]), mono(&[1, 0, 0, 0])],
            b.clone(),
            b.clone(),
            b,
            vec![mono(&[0, 0, 1, 0])],
            vec![mono(&[0, 1, 1, 1]), mono(&[1, 1, 1, 0])],
        ];
        expected.sort();
        assert_eq!(nonunit, expected);
        for leaf in tree.leaves() {
            assert!(leaf.kind != NodeKind::PurelyNondominant);
        }
    }

    #[test]
    fn second_decomposition_base_cases() {
        let tri = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let t = second_decomposition(&tri).unwrap();
        assert_eq!(t.kind, NodeKind::PurelyNondominant);
        assert!(t.children.is_empty());
        assert_eq!((t.total_j, t.total_m.is_one()), (0, true));
        let dom = ideal(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(second_decomposition(&dom).unwrap().kind, NodeKind::Dominant);
    }

    #[test]
    fn tree_json_shape() {
        let tree = second_decomposition(&ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        let v = tree.to_json();
        assert_eq!(v["kind"], "internal");
        assert_eq!(v["j"], 0);
        assert!(v["children"].as_array().unwrap().len() >= 2);
        assert!(tree.to_dot().starts_with("digraph"));
    }
}
