//! Taylor complexes, Scarf complexes, the face bijection between a contract
//! and its parent, and minimization by consecutive cancellations.
//!
//! Faces are subsets of generator positions stored as `u32` bitmasks; the
//! face with mask `s` has homological degree `s.count_ones()` and multidegree
//! the lcm of its members. Multidegrees are memoized for all `2^q` faces at
//! construction, each one computed from the face without its lowest member.
//!
//! The differential sends a face `[g_{i_1}, ..., g_{i_s}]` to
//! `sum_j (-1)^(j+1) lcm(σ)/lcm(σ \ g_{i_j}) [σ \ g_{i_j}]`, where `j` is the
//! 1-based position of the removed member in increasing index order.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// Default upper bound on the number of generators of a Taylor complex.
pub const DEFAULT_MAX_GENS: usize = 20;

/// Masks are `u32`, so no configuration may go beyond this.
const HARD_MAX_GENS: usize = 30;

pub type FaceMask = u32;

pub fn members(mask: FaceMask) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn mask_of(members: &[usize]) -> FaceMask {
    members.iter().fold(0, |acc, &i| acc | 1 << i)
}

pub fn hdeg(mask: FaceMask) -> usize {
    mask.count_ones() as usize
}

/// Sign of the facet `face \ {member}` in the boundary of `face`.
pub fn facet_sign(face: FaceMask, member: usize) -> i8 {
    let below = (face & ((1u32 << member) - 1)).count_ones();
    if below % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub mask: FaceMask,
    pub mdeg: Monomial,
}

impl Face {
    pub fn hdeg(&self) -> usize {
        hdeg(self.mask)
    }

    pub fn members(&self) -> Vec<usize> {
        members(self.mask)
    }
}

/// One term of a boundary: `sign * coefficient * [facet]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryTerm {
    pub facet: FaceMask,
    pub sign: i8,
    pub coefficient: Monomial,
}

pub(crate) fn check_cap(q: usize, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_MAX_GENS);
    if q > cap {
        return Err(Error::Resource(format!(
            "{q} generators would need 2^{q} Taylor faces; the limit is {cap} generators"
        )));
    }
    Ok(())
}

/// The Taylor complex of a generating sequence (not necessarily minimal).
#[derive(Debug, Clone)]
pub struct TaylorComplex {
    nvars: usize,
    gens: Vec<Monomial>,
    /// Exponents of face `s` live at `mdegs[s * nvars..(s + 1) * nvars]`.
    mdegs: Vec<u32>,
}

impl TaylorComplex {
    pub fn build(gens: &[Monomial], nvars: usize, cap: usize) -> Result<Self> {
        check_cap(gens.len(), cap)?;
        if let Some(bad) = gens.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::Dimension {
                expected: nvars,
                found: bad.nvars(),
            });
        }
        let q = gens.len();
        let nfaces = 1usize << q;
        let mut mdegs = vec![0u32; nfaces * nvars];
        for s in 1..nfaces {
            let low = s.trailing_zeros() as usize;
            let rest = s & (s - 1);
            let (done, todo) = mdegs.split_at_mut(s * nvars);
            let prev = &done[rest * nvars..(rest + 1) * nvars];
            let out = &mut todo[..nvars];
            for v in 0..nvars {
                out[v] = prev[v].max(gens[low].exp(v));
            }
        }
        Ok(TaylorComplex {
            nvars,
            gens: gens.to_vec(),
            mdegs,
        })
    }

    /// Taylor complex on the minimal generators of `ideal`.
    pub fn of_ideal(ideal: &MonomialIdeal, cap: usize) -> Result<Self> {
        Self::build(ideal.generators(), ideal.nvars(), cap)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn nfaces(&self) -> usize {
        1 << self.gens.len()
    }

    pub fn full_mask(&self) -> FaceMask {
        ((1u64 << self.gens.len()) - 1) as FaceMask
    }

    pub fn mdeg_exps(&self, mask: FaceMask) -> &[u32] {
        let s = mask as usize;
        &self.mdegs[s * self.nvars..(s + 1) * self.nvars]
    }

    pub fn mdeg(&self, mask: FaceMask) -> Monomial {
        Monomial::new(self.mdeg_exps(mask).to_vec())
    }

    pub fn face(&self, mask: FaceMask) -> Face {
        Face {
            mask,
            mdeg: self.mdeg(mask),
        }
    }

    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        (0..self.nfaces() as u64).map(move |s| self.face(s as FaceMask))
    }

    pub fn faces_of_hdeg(&self, i: usize) -> impl Iterator<Item = FaceMask> + '_ {
        (0..self.nfaces() as u64)
            .map(|s| s as FaceMask)
            .filter(move |&s| hdeg(s) == i)
    }

    /// The boundary of a face, facets in increasing order of the removed member.
    pub fn boundary(&self, mask: FaceMask) -> Vec<BoundaryTerm> {
        let top = self.mdeg(mask);
        members(mask)
            .into_iter()
            .enumerate()
            .map(|(pos, g)| {
                let facet = mask & !(1 << g);
                let coefficient = top
                    .quotient(&self.mdeg(facet))
                    .expect("facet multidegree divides face multidegree");
                BoundaryTerm {
                    facet,
                    sign: if pos % 2 == 0 { 1 } else { -1 },
                    coefficient,
                }
            })
            .collect()
    }

    /// The differential entry from `face` to `target`, `None` when `target`
    /// is not a facet of `face`.
    pub fn entry(&self, face: FaceMask, target: FaceMask) -> Option<(i8, Monomial)> {
        if target & !face != 0 || hdeg(face) != hdeg(target) + 1 {
            return None;
        }
        let removed = (face & !target).trailing_zeros() as usize;
        let coefficient = self.mdeg(face).quotient(&self.mdeg(target)).ok()?;
        Some((facet_sign(face, removed), coefficient))
    }

    /// Groups all faces by multidegree. Returns the distinct multidegrees in
    /// increasing exponent-vector order and, per face, the index of its class.
    pub fn multidegree_classes(&self) -> (Vec<Monomial>, Vec<u32>) {
        let mut ids: HashMap<&[u32], u32> = HashMap::new();
        let mut first_seen: Vec<FaceMask> = Vec::new();
        let mut class = vec![0u32; self.nfaces()];
        for s in 0..self.nfaces() {
            let key = self.mdeg_exps(s as FaceMask);
            let next = ids.len() as u32;
            let id = *ids.entry(key).or_insert_with(|| {
                first_seen.push(s as FaceMask);
                next
            });
            class[s] = id;
        }
        let mut order: Vec<u32> = (0..first_seen.len() as u32).collect();
        order.sort_by(|&a, &b| {
            self.mdeg_exps(first_seen[a as usize])
                .cmp(self.mdeg_exps(first_seen[b as usize]))
        });
        let mut rank = vec![0u32; order.len()];
        for (r, &id) in order.iter().enumerate() {
            rank[id as usize] = r as u32;
        }
        for c in class.iter_mut() {
            *c = rank[*c as usize];
        }
        let distinct = order
            .iter()
            .map(|&id| self.mdeg(first_seen[id as usize]))
            .collect();
        (distinct, class)
    }
}

pub fn build_taylor(gens: &[Monomial], nvars: usize) -> Result<TaylorComplex> {
    TaylorComplex::build(gens, nvars, DEFAULT_MAX_GENS)
}

/// Faces whose multidegree no other face shares, in increasing mask order.
pub fn build_scarf(ideal: &MonomialIdeal, cap: usize) -> Result<Vec<Face>> {
    let t = TaylorComplex::of_ideal(ideal, cap)?;
    let (classes, class_of) = t.multidegree_classes();
    let mut counts = vec![0u32; classes.len()];
    for &c in &class_of {
        counts[c as usize] += 1;
    }
    let unique = |s: FaceMask| counts[class_of[s as usize] as usize] == 1;
    let scarf: Vec<FaceMask> = (0..t.nfaces() as u64)
        .map(|s| s as FaceMask)
        .filter(|&s| unique(s))
        .collect();
    for &s in &scarf {
        for g in members(s) {
            if !unique(s & !(1 << g)) {
                return Err(Error::domain(format!(
                    "Scarf faces are not closed under facets (face {s:#b})"
                )));
            }
        }
    }
    Ok(scarf.into_iter().map(|s| t.face(s)).collect())
}

/// The face bijection from the Taylor complex of a contract into the parent
/// Taylor complex: the contract face over H-positions is sent to its
/// H-generators joined with the dominant part.
///
/// `h_positions[k]` is the parent generator index of the k-th H-generator.
pub fn face_map_f(dominant_part: FaceMask, contract_face: FaceMask, h_positions: &[usize]) -> Result<FaceMask> {
    let mut out = dominant_part;
    for k in members(contract_face) {
        let g = *h_positions
            .get(k)
            .ok_or_else(|| Error::domain(format!("contract generator {k} out of range")))?;
        if g >= 32 {
            return Err(Error::domain(format!("generator index {g} out of range")));
        }
        if out & (1 << g) != 0 {
            return Err(Error::domain(format!("generator {g} used twice in the mapped face")));
        }
        out |= 1 << g;
    }
    Ok(out)
}

/// Survivors of a minimization: one `(hdeg, mdeg)` basis element each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalBasis {
    /// Surviving faces, increasing mask order.
    pub faces: Vec<FaceMask>,
    /// Count per `(hdeg, mdeg)`.
    pub counts: BTreeMap<(usize, Monomial), u64>,
    /// Whether every facet of a surviving face also survived.
    pub is_subcomplex: bool,
}

/// Sparse differential `F_i -> F_{i-1}` with row and column access.
struct WorkingMap<E> {
    cols: HashMap<FaceMask, BTreeMap<FaceMask, E>>,
    rows: HashMap<FaceMask, BTreeSet<FaceMask>>,
}

impl<E: Clone> WorkingMap<E> {
    fn new() -> Self {
        WorkingMap {
            cols: HashMap::new(),
            rows: HashMap::new(),
        }
    }

    fn get(&self, row: FaceMask, col: FaceMask) -> Option<&E> {
        self.cols.get(&col).and_then(|c| c.get(&row))
    }

    fn set<F: Field<Elem = E>>(&mut self, field: &F, row: FaceMask, col: FaceMask, value: E) {
        if field.is_zero(&value) {
            if let Some(c) = self.cols.get_mut(&col) {
                c.remove(&row);
            }
            if let Some(r) = self.rows.get_mut(&row) {
                r.remove(&col);
            }
        } else {
            self.cols.entry(col).or_default().insert(row, value);
            self.rows.entry(row).or_default().insert(col);
        }
    }

    fn remove_col(&mut self, col: FaceMask) {
        if let Some(c) = self.cols.remove(&col) {
            for row in c.keys() {
                if let Some(r) = self.rows.get_mut(row) {
                    r.remove(&col);
                }
            }
        }
    }

    fn remove_row(&mut self, row: FaceMask) {
        if let Some(r) = self.rows.remove(&row) {
            for col in r {
                if let Some(c) = self.cols.get_mut(&col) {
                    c.remove(&row);
                }
            }
        }
    }
}

fn lex_key(a: FaceMask, b: FaceMask) -> (Vec<usize>, Vec<usize>) {
    (members(a), members(b))
}

/// Minimizes the Taylor complex by consecutive cancellations over `field`.
///
/// At each step an invertible entry (equal multidegrees, nonzero scalar) in
/// the lowest homological degree that has one is chosen: the lexicographically
/// smallest `(face, facet)` pair when `order_seed == 0`, otherwise one drawn
/// uniformly with a generator seeded by `order_seed`. The pair is removed and
/// every entry `b[τ][σ]` of the same differential becomes
/// `b[τ][σ] - b[τ][θ] * b[π][σ] / b[π][θ]`.
///
/// Entries carry only their scalar: the monomial part from `σ` to `τ` is
/// always `mdeg(σ) / mdeg(τ)`, and the update preserves that.
pub fn cancel_minimize(t: &TaylorComplex, field: FieldSpec, order_seed: u64) -> MinimalBasis {
    match field {
        FieldSpec::Rationals => cancel_minimize_in(t, &Rationals, order_seed),
        FieldSpec::Prime(p) => cancel_minimize_in(t, &PrimeField::new(p), order_seed),
    }
}

pub fn cancel_minimize_in<F: Field>(t: &TaylorComplex, field: &F, order_seed: u64) -> MinimalBasis {
    let q = t.ngens();
    let (classes, class_of) = t.multidegree_classes();
    let same = |a: FaceMask, b: FaceMask| class_of[a as usize] == class_of[b as usize];

    // maps[i] is the differential F_i -> F_{i-1}, for i = 1..=q.
    let mut maps: Vec<WorkingMap<F::Elem>> = (0..=q).map(|_| WorkingMap::new()).collect();
    for s in 1..t.nfaces() as u64 {
        let s = s as FaceMask;
        let i = hdeg(s);
        for g in members(s) {
            let facet = s & !(1 << g);
            let v = field.from_i64(i64::from(facet_sign(s, g)));
            maps[i].set(field, facet, s, v);
        }
    }

    let mut alive = vec![true; t.nfaces()];
    let mut rng = ChaCha8Rng::seed_from_u64(order_seed);
    loop {
        let mut chosen = None;
        for i in 1..=q {
            let mut candidates: Vec<(FaceMask, FaceMask)> = Vec::new();
            for (&col, entries) in &maps[i].cols {
                for &row in entries.keys() {
                    if same(col, row) {
                        candidates.push((col, row));
                    }
                }
            }
            if candidates.is_empty() {
                continue;
            }
            candidates.sort_by_key(|&(a, b)| lex_key(a, b));
            let pick = if order_seed == 0 {
                candidates[0]
            } else {
                candidates[rng.gen_range(0..candidates.len())]
            };
            chosen = Some((i, pick));
            break;
        }
        let Some((i, (theta, pi))) = chosen else { break };

        let map = &mut maps[i];
        let pivot = map.get(pi, theta).cloned().expect("pivot entry present");
        let col_theta: Vec<(FaceMask, F::Elem)> = map.cols[&theta]
            .iter()
            .filter(|(&r, _)| r != pi)
            .map(|(&r, v)| (r, v.clone()))
            .collect();
        let row_pi: Vec<FaceMask> = map.rows[&pi].iter().copied().filter(|&c| c != theta).collect();
        for sigma in row_pi {
            let factor = field.div(map.get(pi, sigma).expect("row entry present"), &pivot);
            for (tau, b_tau_theta) in &col_theta {
                let old = map.get(*tau, sigma).cloned().unwrap_or_else(|| field.zero());
                let new = field.sub(&old, &field.mul(b_tau_theta, &factor));
                map.set(field, *tau, sigma, new);
            }
        }
        map.remove_col(theta);
        map.remove_row(pi);
        if i < q {
            maps[i + 1].remove_row(theta);
        }
        if i > 1 {
            maps[i - 1].remove_col(pi);
        }
        alive[theta as usize] = false;
        alive[pi as usize] = false;
    }

    let faces: Vec<FaceMask> = (0..t.nfaces() as u64)
        .map(|s| s as FaceMask)
        .filter(|&s| alive[s as usize])
        .collect();
    let mut counts = BTreeMap::new();
    for &s in &faces {
        *counts
            .entry((hdeg(s), classes[class_of[s as usize] as usize].clone()))
            .or_insert(0) += 1;
    }
    let is_subcomplex = faces
        .iter()
        .all(|&s| members(s).into_iter().all(|g| alive[(s & !(1 << g)) as usize]));
    MinimalBasis {
        faces,
        counts,
        is_subcomplex,
    }
}
