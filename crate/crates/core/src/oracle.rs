//! Ground-truth Betti numbers from strand homology of the Taylor complex.
//!
//! Tensoring the Taylor resolution with the residue field kills every entry
//! whose monomial coefficient is not 1, so the complex splits into strands:
//! the strand at `l` has as basis the faces with multidegree exactly `l`,
//! and its boundary keeps only the signs between faces of equal multidegree.
//! Then `β_{i,l} = dim C_i - rank ∂_i - rank ∂_{i+1}` on that strand.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::Result;
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::ideal::MonomialIdeal;
use crate::linalg::{rank, SparseMatrix};
use crate::monomial::Monomial;
use crate::table::BettiTable;
use crate::taylor::{facet_sign, hdeg, members, FaceMask, TaylorComplex, DEFAULT_MAX_GENS};

/// The chain complex of faces with one fixed multidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandComplex {
    pub mdeg: Monomial,
    /// Faces per homological degree, increasing mask order.
    pub basis: Vec<Vec<FaceMask>>,
    /// `boundaries[i]` has one row per face of `basis[i]`, holding
    /// `(index into basis[i - 1], sign)`. `boundaries[0]` is empty.
    pub boundaries: Vec<Vec<Vec<(usize, i8)>>>,
}

impl StrandComplex {
    fn from_faces(t: &TaylorComplex, mdeg: Monomial, faces: &[FaceMask]) -> Self {
        let top = faces.iter().map(|&s| hdeg(s)).max().unwrap_or(0);
        let mut basis: Vec<Vec<FaceMask>> = vec![Vec::new(); top + 1];
        for &s in faces {
            basis[hdeg(s)].push(s);
        }
        for b in basis.iter_mut() {
            b.sort_unstable();
        }
        let target = t.mdeg_exps(faces[0]);
        let mut boundaries = vec![Vec::new()];
        for i in 1..=top {
            let rows = basis[i]
                .iter()
                .map(|&s| {
                    members(s)
                        .into_iter()
                        .filter_map(|g| {
                            let facet = s & !(1 << g);
                            if t.mdeg_exps(facet) != target {
                                return None;
                            }
                            let col = basis[i - 1].binary_search(&facet).expect("facet lies in the strand");
                            Some((col, facet_sign(s, g)))
                        })
                        .collect()
                })
                .collect();
            boundaries.push(rows);
        }
        StrandComplex { mdeg, basis, boundaries }
    }

    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    /// `∂_i` as a sparse matrix over `field`.
    pub fn boundary_matrix<F: Field>(&self, field: &F, i: usize) -> SparseMatrix<F::Elem> {
        let ncols = if i == 0 { 0 } else { self.basis[i - 1].len() };
        let mut m = SparseMatrix::new(ncols);
        if i == 0 || i > self.top_degree() {
            return m;
        }
        for row in &self.boundaries[i] {
            m.push_row(field, row.iter().map(|&(c, s)| (c, field.from_i64(i64::from(s)))));
        }
        m
    }

    /// Homology dimensions per homological degree.
    pub fn homology<F: Field>(&self, field: &F) -> Vec<u64> {
        let top = self.top_degree();
        let ranks: Vec<usize> = (0..=top + 1)
            .map(|i| if i == 0 || i > top { 0 } else { rank(field, &self.boundary_matrix(field, i)) })
            .collect();
        (0..=top)
            .map(|i| (self.basis[i].len() - ranks[i] - ranks[i + 1]) as u64)
            .collect()
    }

    /// Face counts per homological degree.
    pub fn face_counts(&self) -> Vec<u64> {
        self.basis.iter().map(|b| b.len() as u64).collect()
    }
}

/// All strands of the Taylor complex, in increasing multidegree order.
pub fn strands(t: &TaylorComplex) -> Vec<StrandComplex> {
    let (classes, class_of) = t.multidegree_classes();
    let mut faces: Vec<Vec<FaceMask>> = vec![Vec::new(); classes.len()];
    for (s, &c) in class_of.iter().enumerate() {
        faces[c as usize].push(s as FaceMask);
    }
    classes
        .into_iter()
        .zip(faces)
        .map(|(l, f)| StrandComplex::from_faces(t, l, &f))
        .collect()
}

/// The strand of `t` at multidegree `l`, or `None` if no face has that multidegree.
pub fn strand_at(t: &TaylorComplex, l: &Monomial) -> Option<StrandComplex> {
    let faces: Vec<FaceMask> = (0..t.nfaces() as u64)
        .map(|s| s as FaceMask)
        .filter(|&s| t.mdeg_exps(s) == l.exponents())
        .collect();
    if faces.is_empty() {
        return None;
    }
    Some(StrandComplex::from_faces(t, l.clone(), &faces))
}

/// Betti numbers of `S / (gens)` for an arbitrary generating sequence.
pub fn betti_of_taylor(t: &TaylorComplex, field: FieldSpec) -> BettiTable {
    match field {
        FieldSpec::Rationals => betti_of_taylor_in(t, &Rationals, field),
        FieldSpec::Prime(p) => betti_of_taylor_in(t, &PrimeField::new(p), field),
    }
}

fn betti_of_taylor_in<F: Field>(t: &TaylorComplex, field: &F, spec: FieldSpec) -> BettiTable {
    let strands = strands(t);
    let per_strand: Vec<Vec<u64>> = strands.par_iter().map(|s| s.homology(field)).collect();
    let mut table = BettiTable::new(spec);
    for (s, h) in strands.iter().zip(per_strand) {
        for (i, c) in h.into_iter().enumerate() {
            table.add(i, s.mdeg.clone(), c);
        }
    }
    table
}

/// Multigraded Betti numbers of `S/M` over `field`, with the default generator cap.
pub fn betti_oracle(ideal: &MonomialIdeal, field: FieldSpec) -> Result<BettiTable> {
    betti_oracle_capped(ideal, field, DEFAULT_MAX_GENS)
}

pub fn betti_oracle_capped(ideal: &MonomialIdeal, field: FieldSpec, cap: usize) -> Result<BettiTable> {
    let t = TaylorComplex::of_ideal(ideal, cap)?;
    Ok(betti_of_taylor(&t, field))
}

/// The lcm lattice: lcms of all subsets of the minimal generators, including 1.
pub fn lcm_lattice(ideal: &MonomialIdeal, cap: usize) -> Result<BTreeSet<Monomial>> {
    let t = TaylorComplex::of_ideal(ideal, cap)?;
    Ok(t.multidegree_classes().0.into_iter().collect())
}
