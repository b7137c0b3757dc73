//! Matrices over the integral group ring `Z[pi_1]`, in the generators of a
//! presentation: the equivariant boundary of a universal cover, and the
//! direct-input route the one-cell-per-dimension models use.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::complexes::{FundamentalGroupData, GroupPresentation, SimplicialComplex, Word};
use crate::error::Error;
use crate::linalg::IntMatrix;
use crate::Result;

/// A formal finite sum of `(integer coefficient, group word)` pairs, kept
/// sorted by word with like terms combined; the zero entry is the empty sum.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupRingEntry(Vec<(BigInt, Word)>);

impl GroupRingEntry {
    pub fn zero() -> Self {
        GroupRingEntry(Vec::new())
    }

    pub fn term(coeff: i64, word: Word) -> Self {
        Self::from_terms(vec![(BigInt::from(coeff), word)])
    }

    pub fn from_terms(terms: Vec<(BigInt, Word)>) -> Self {
        let mut map: BTreeMap<Word, BigInt> = BTreeMap::new();
        for (c, w) in terms {
            *map.entry(w).or_insert_with(BigInt::zero) += c;
        }
        GroupRingEntry(
            map.into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(w, c)| (c, w))
                .collect(),
        )
    }

    pub fn terms(&self) -> &[(BigInt, Word)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &GroupRingEntry) -> GroupRingEntry {
        Self::from_terms(self.0.iter().chain(other.0.iter()).cloned().collect())
    }

    pub fn mul(&self, other: &GroupRingEntry) -> GroupRingEntry {
        let mut terms = Vec::new();
        for (c1, w1) in &self.0 {
            for (c2, w2) in &other.0 {
                terms.push((c1 * c2, w1.concat(w2)));
            }
        }
        Self::from_terms(terms)
    }

    pub fn scale(&self, c: i64) -> GroupRingEntry {
        Self::from_terms(
            self.0
                .iter()
                .map(|(x, w)| (x * BigInt::from(c), w.clone()))
                .collect(),
        )
    }

    /// Evaluation at "every group word = 1".
    pub fn augmentation(&self) -> BigInt {
        self.0.iter().map(|(c, _)| c.clone()).sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().filter_map(|(_, w)| w.max_generator()).max()
    }

    /// Parses `3*a.b^-1 + 1*1`; `0` is the zero entry.
    pub fn parse(s: &str) -> Result<GroupRingEntry> {
        let s = s.trim();
        if s == "0" {
            return Ok(GroupRingEntry::zero());
        }
        let mut terms = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            let (coeff, word) = match part.split_once('*') {
                Some((c, w)) => {
                    let c: BigInt = c
                        .trim()
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad coefficient in {part:?}")))?;
                    (c, Word::parse(w)?)
                }
                None => {
                    return Err(Error::InvalidInput(format!(
                        "group-ring term {part:?} needs the form coeff*word"
                    )))
                }
            };
            terms.push((coeff, word));
        }
        Ok(GroupRingEntry::from_terms(terms))
    }
}

impl fmt::Display for GroupRingEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(c, w)| format!("{c}*{w}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A matrix over `Z[pi_1]` in the generators of an ambient presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingMatrix {
    pub generators: usize,
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingEntry>,
}

impl GroupRingMatrix {
    pub fn new(
        generators: usize,
        rows: usize,
        cols: usize,
        entries: Vec<GroupRingEntry>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if let Some(g) = e.max_generator() {
                if g >= generators {
                    return Err(Error::InvalidInput(format!(
                        "entry {e} uses generator index {g} outside the presentation"
                    )));
                }
            }
        }
        Ok(GroupRingMatrix {
            generators,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(generators: usize, rows: usize, cols: usize) -> Self {
        GroupRingMatrix {
            generators,
            rows,
            cols,
            entries: vec![GroupRingEntry::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingEntry {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: GroupRingEntry) {
        self.entries[i * self.cols + j] = e;
    }

    pub fn add_term(&mut self, i: usize, j: usize, coeff: i64, word: Word) {
        let cur = self.get(i, j).clone();
        self.set(i, j, cur.add(&GroupRingEntry::term(coeff, word)));
    }

    /// Sends every word to 1, recovering an integer matrix.
    pub fn augmentation(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).augmentation())
    }

    /// Matrix product over the group ring.
    pub fn mul(&self, other: &GroupRingMatrix) -> Result<GroupRingMatrix> {
        if self.generators != other.generators {
            return Err(Error::PresentationMismatch(
                "group-ring matrices over different presentations".into(),
            ));
        }
        if self.cols != other.rows {
            return Err(Error::InvalidInput("shape mismatch".into()));
        }
        let mut out = GroupRingMatrix::zero(self.generators, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur.add(&a.mul(b)));
                }
            }
        }
        Ok(out)
    }
}

/// A chain complex of free `Z[pi_1]`-modules: one matrix per dimension, plus
/// the ambient presentation. `d . d = 0` holds modulo the relators, so it is
/// checked per twist rather than at the free-word level.
#[derive(Debug, Clone)]
pub struct GroupRingComplex {
    pub presentation: GroupPresentation,
    matrices: Vec<GroupRingMatrix>,
    labels: Vec<Vec<String>>,
}

impl GroupRingComplex {
    pub fn new(presentation: GroupPresentation, matrices: Vec<GroupRingMatrix>) -> Result<Self> {
        for m in &matrices {
            if m.generators != presentation.generators {
                return Err(Error::PresentationMismatch(
                    "matrix generator count differs from the presentation".into(),
                ));
            }
        }
        for w in matrices.windows(2) {
            if w[1].rows() != w[0].cols() {
                return Err(Error::InvalidInput(
                    "group-ring boundary shapes disagree".into(),
                ));
            }
        }
        let dims = Self::dims_of(&matrices);
        let labels = dims
            .iter()
            .map(|&n| (0..n).map(|i| format!("e{i}")).collect())
            .collect();
        Ok(GroupRingComplex {
            presentation,
            matrices,
            labels,
        })
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self> {
        let dims = self.dims();
        if labels.len() != dims.len() || labels.iter().zip(&dims).any(|(l, &n)| l.len() != n) {
            return Err(Error::InvalidInput("labels do not match dims".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    fn dims_of(matrices: &[GroupRingMatrix]) -> Vec<usize> {
        if matrices.is_empty() {
            return vec![];
        }
        let mut d = vec![matrices[0].rows()];
        for m in matrices {
            d.push(m.cols());
        }
        d
    }

    pub fn dims(&self) -> Vec<usize> {
        Self::dims_of(&self.matrices)
    }

    pub fn dimension(&self) -> usize {
        self.dims().len().saturating_sub(1)
    }

    pub fn boundary(&self, k: usize) -> Option<&GroupRingMatrix> {
        if k == 0 {
            None
        } else {
            self.matrices.get(k - 1)
        }
    }

    pub fn labels(&self, k: usize) -> &[String] {
        self.labels.get(k).map_or(&[], |v| v.as_slice())
    }

    /// The underlying integer complex at the trivial holonomy.
    pub fn augmentation(&self) -> Result<crate::complexes::IntegerChainComplex> {
        crate::complexes::IntegerChainComplex::new(
            self.matrices.iter().map(|m| m.augmentation()).collect(),
            self.labels.clone(),
        )
    }
}

/// The equivariant boundary of the universal cover, expressed on the
/// distinguished lifts: face 0 of a simplex carries the spanning-tree label
/// of its leading edge, all other faces the identity. Evaluating every word
/// at 1 recovers the base boundary matrices.
pub fn equivariant_boundary(
    k: &SimplicialComplex,
    fg: &FundamentalGroupData,
) -> Result<GroupRingComplex> {
    let m = fg.presentation.generators;
    let dim = k.dimension();
    let mut matrices = Vec::new();
    for kk in 1..=dim {
        let mut mat = GroupRingMatrix::zero(m, k.cell_count(kk - 1), k.cell_count(kk));
        for (j, cell) in k.cells(kk).iter().enumerate() {
            for drop in 0..cell.len() {
                let mut face = cell.to_vec();
                face.remove(drop);
                let i = k.index_of(&face).expect("face-closed");
                let sign = if drop % 2 == 0 { 1 } else { -1 };
                let word = if drop == 0 {
                    fg.edge_word(cell[0], cell[1])
                } else {
                    Word::identity()
                };
                mat.add_term(i, j, sign, word);
            }
        }
        matrices.push(mat);
    }
    let labels: Vec<Vec<String>> = (0..=dim)
        .map(|kk| {
            k.cells(kk)
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(".")
                })
                .collect()
        })
        .collect();
    GroupRingComplex::new(fg.presentation.clone(), matrices)?.with_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::fundamental_group;

    #[test]
    fn entry_parse_display_round_trip() {
        let e = GroupRingEntry::parse("3*a.b^-1 + 1*1").unwrap();
        assert_eq!(e.to_string(), "1*1 + 3*a.b^-1");
        let e2 = GroupRingEntry::parse(&e.to_string()).unwrap();
        assert_eq!(e, e2);
        assert_eq!(GroupRingEntry::parse("0").unwrap(), GroupRingEntry::zero());
        // like terms combine, zeros vanish
        let z = GroupRingEntry::parse("2*a + -2*a").unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn circle_loop_edge_boundary() {
        // hollow triangle: the unique non-tree edge {1,2} has boundary
        // (a - 1) * vertex up to which vertices it runs between
        let k = SimplicialComplex::from_simplices(vec![vec![0, 1], vec![0, 2], vec![1, 2]])
            .unwrap();
        let fg = fundamental_group(&k, 0).unwrap();
        let eq = equivariant_boundary(&k, &fg).unwrap();
        let d1 = eq.boundary(1).unwrap();
        // augmentation recovers the simplicial boundary
        let base = k.boundary_matrices();
        assert_eq!(d1.augmentation(), *base.boundary(1).unwrap());
        // exactly one entry mentions the generator
        let mut with_word = 0;
        for i in 0..d1.rows() {
            for j in 0..d1.cols() {
                for (_, w) in d1.get(i, j).terms() {
                    if !w.is_identity() {
                        with_word += 1;
                    }
                }
            }
        }
        assert_eq!(with_word, 1);
    }

    #[test]
    fn rp2_equivariant_augmentation() {
        let k = crate::catalog::rp2_complex();
        let fg = fundamental_group(&k, 0).unwrap();
        let eq = equivariant_boundary(&k, &fg).unwrap();
        let base = k.boundary_matrices();
        for kk in 1..=2 {
            assert_eq!(
                eq.boundary(kk).unwrap().augmentation(),
                *base.boundary(kk).unwrap()
            );
        }
        // some d2 entries carry a nontrivial group element
        let d2 = eq.boundary(2).unwrap();
        let nontrivial = (0..d2.rows())
            .flat_map(|i| (0..d2.cols()).map(move |j| (i, j)))
            .any(|(i, j)| d2.get(i, j).terms().iter().any(|(_, w)| !w.is_identity()));
        assert!(nontrivial);
    }

    #[test]
    fn simply_connected_base_gives_constant_entries() {
        let k = SimplicialComplex::from_simplices(vec![
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![1, 2, 3],
        ])
        .unwrap();
        let fg = fundamental_group(&k, 0).unwrap();
        let eq = equivariant_boundary(&k, &fg).unwrap();
        // after coset enumeration the group is trivial, but even the free
        // words here must evaluate to constants under every character,
        // which for the boundary means: every word is killed by relators.
        // At the matrix level, augmentation equals the base boundary.
        let base = k.boundary_matrices();
        for kk in 1..=2 {
            assert_eq!(
                eq.boundary(kk).unwrap().augmentation(),
                *base.boundary(kk).unwrap()
            );
        }
    }
}
