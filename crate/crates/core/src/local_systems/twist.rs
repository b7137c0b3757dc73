//! Twisting: evaluation of group-ring matrices at a holonomy character,
//! producing chain complexes over `Q(zeta_l)`.

use crate::arith::CyclotomicNumber;
use crate::complexes::{EquivariantComplex, EquivariantKind};
use crate::error::Error;
use crate::linalg::CycMatrix;
use crate::local_systems::{equivariant_boundary, GroupRingComplex, GroupRingMatrix, LocalSystem};
use crate::Result;

/// A chain complex of `Q(zeta_l)` vector spaces; consecutive matrices
/// compose to zero.
#[derive(Debug, Clone)]
pub struct TwistedChainComplex {
    pub ell: u64,
    dims: Vec<usize>,
    matrices: Vec<CycMatrix>,
}

impl TwistedChainComplex {
    /// Validates shapes and `d . d = 0` over the field.
    pub fn new(ell: u64, matrices: Vec<CycMatrix>) -> Result<Self> {
        let dims = if matrices.is_empty() {
            vec![]
        } else {
            let mut d = vec![matrices[0].nrows()];
            for m in &matrices {
                d.push(m.ncols());
            }
            d
        };
        for w in matrices.windows(2) {
            if w[1].nrows() != w[0].ncols() {
                return Err(Error::InvalidInput("twisted boundary shapes disagree".into()));
            }
        }
        for (k, w) in matrices.windows(2).enumerate() {
            if !w[0].composes_to_zero_with(&w[1])? {
                return Err(Error::BoundaryCondition(k + 1, k + 2));
            }
        }
        Ok(TwistedChainComplex {
            ell,
            dims,
            matrices,
        })
    }

    /// A complex with only degree-0 cells.
    pub fn degree_zero(ell: u64, cells: usize) -> Self {
        TwistedChainComplex {
            ell,
            dims: vec![cells],
            matrices: vec![],
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dimension(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn cells(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    pub fn boundary(&self, k: usize) -> Option<&CycMatrix> {
        if k == 0 {
            None
        } else {
            self.matrices.get(k - 1)
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// Entrywise evaluation of a group-ring matrix: each word `w` becomes
/// `zeta^{L(w)}`, sums taken in `Q(zeta_l)`. Twisting by the trivial system
/// is the augmentation embedded into the field.
pub fn twist(m: &GroupRingMatrix, sys: &LocalSystem) -> Result<CycMatrix> {
    if m.generators != sys.generators() {
        return Err(Error::PresentationMismatch(format!(
            "matrix over {} generators, system over {}",
            m.generators,
            sys.generators()
        )));
    }
    let ell = sys.modulus();
    let mut cols = Vec::with_capacity(m.cols());
    for j in 0..m.cols() {
        let mut col = Vec::new();
        for i in 0..m.rows() {
            let entry = m.get(i, j);
            if entry.is_zero() {
                continue;
            }
            let mut acc = CyclotomicNumber::zero(ell);
            for (c, w) in entry.terms() {
                let e = sys.evaluate(w);
                let zc = CyclotomicNumber::root_of_unity(ell, e as i64)
                    .scale(&crate::arith::Rational::from_integer(c.clone()));
                acc = acc.checked_add(&zc)?;
            }
            if !acc.is_zero() {
                col.push((i, acc));
            }
        }
        cols.push(col);
    }
    Ok(CycMatrix::from_columns(ell, m.rows(), cols))
}

impl GroupRingComplex {
    /// Twists the whole complex by a system on the same presentation,
    /// checking `d . d = 0` over `Q(zeta_l)`.
    pub fn twist(&self, sys: &LocalSystem) -> Result<TwistedChainComplex> {
        if sys.generators() != self.presentation.generators {
            return Err(Error::PresentationMismatch(
                "system lives on a different presentation".into(),
            ));
        }
        let mats: Result<Vec<CycMatrix>> = (1..=self.dimension())
            .map(|k| twist(self.boundary(k).unwrap(), sys))
            .collect();
        let mats = mats?;
        if self.dimension() == 0 {
            return Ok(TwistedChainComplex::degree_zero(
                sys.modulus(),
                self.dims().first().copied().unwrap_or(0),
            ));
        }
        TwistedChainComplex::new(sys.modulus(), mats)
    }
}

/// Twisted chain complex of a covered simplicial complex: the equivariant
/// boundary of the cover, evaluated at the character.
pub fn twisted_complex_of_cover(
    base: &crate::complexes::SimplicialComplex,
    fg: &crate::complexes::FundamentalGroupData,
    sys: &LocalSystem,
) -> Result<TwistedChainComplex> {
    equivariant_boundary(base, fg)?.twist(sys)
}

impl EquivariantComplex {
    /// Twisted complex of the base by a system on its presentation. For
    /// products, the Koszul tensor of the factor twists.
    pub fn twisted(&self, sys: &LocalSystem) -> Result<TwistedChainComplex> {
        if sys.generators() != self.presentation.generators {
            return Err(Error::PresentationMismatch(
                "system does not match the presentation".into(),
            ));
        }
        match &self.kind {
            EquivariantKind::Cover { base, fg } => twisted_complex_of_cover(base, fg, sys),
            EquivariantKind::Product(a, b) => {
                let ga = a.presentation.generators;
                let sys_a = LocalSystem::new(
                    &a.presentation,
                    sys.modulus(),
                    sys.exponents()[..ga].to_vec(),
                )?;
                let sys_b = LocalSystem::new(
                    &b.presentation,
                    sys.modulus(),
                    sys.exponents()[ga..].to_vec(),
                )?;
                let ta = a.twisted(&sys_a)?;
                let tb = b.twisted(&sys_b)?;
                tensor_twisted(&ta, &tb)
            }
        }
    }
}

/// Graded tensor product over `Q(zeta_l)` with Koszul signs; same cell
/// layout as the integer tensor product.
pub fn tensor_twisted(
    a: &TwistedChainComplex,
    b: &TwistedChainComplex,
) -> Result<TwistedChainComplex> {
    if a.ell != b.ell {
        return Err(Error::ModulusMismatch(a.ell, b.ell));
    }
    let ell = a.ell;
    let da = a.dimension();
    let db = b.dimension();
    if a.dims.is_empty() || b.dims.is_empty() {
        return Ok(TwistedChainComplex {
            ell,
            dims: vec![],
            matrices: vec![],
        });
    }
    let dim = da + db;
    let block_offset = |k: usize, p: usize| -> usize {
        (0..p)
            .filter(|&pp| pp <= da && k - pp <= db)
            .map(|pp| a.cells(pp) * b.cells(k - pp))
            .sum()
    };
    let dim_size = |k: usize| -> usize {
        (0..=k)
            .filter(|&p| p <= da && k - p <= db)
            .map(|p| a.cells(p) * b.cells(k - p))
            .sum()
    };
    let mut matrices = Vec::new();
    for k in 1..=dim {
        let rows = dim_size(k - 1);
        let mut columns: Vec<Vec<(usize, CyclotomicNumber)>> = Vec::with_capacity(dim_size(k));
        for p in 0..=k {
            let q = k - p;
            if p > da || q > db {
                continue;
            }
            let nb = b.cells(q);
            for ia in 0..a.cells(p) {
                for ib in 0..nb {
                    let mut col: Vec<(usize, CyclotomicNumber)> = Vec::new();
                    if p >= 1 {
                        let row_base = block_offset(k - 1, p - 1);
                        let nbt = b.cells(q);
                        for (ra, v) in a.boundary(p).unwrap().column(ia) {
                            col.push((row_base + ra * nbt + ib, v.clone()));
                        }
                    }
                    if q >= 1 {
                        let row_base = block_offset(k - 1, p);
                        let nbt = b.cells(q - 1);
                        for (rb, v) in b.boundary(q).unwrap().column(ib) {
                            let signed = if p % 2 == 0 { v.clone() } else { v.neg() };
                            col.push((row_base + ia * nbt + rb, signed));
                        }
                    }
                    col.sort_by_key(|(r, _)| *r);
                    columns.push(col);
                }
            }
        }
        matrices.push(CycMatrix::from_columns(ell, rows, columns));
    }
    TwistedChainComplex::new(ell, matrices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::complexes::{fundamental_group, GroupPresentation, SimplicialComplex, Word};
    use crate::local_systems::GroupRingEntry;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn circle_edge_twists_to_zeta_minus_one() {
        let p = GroupPresentation::free(1);
        let m = GroupRingMatrix::new(
            1,
            1,
            1,
            vec![GroupRingEntry::parse("1*a + -1*1").unwrap()],
        )
        .unwrap();
        let sys = LocalSystem::new(&p, 3, vec![1]).unwrap();
        let t = twist(&m, &sys).unwrap();
        let expect = CyclotomicNumber::root_of_unity(3, 1)
            .checked_sub(&CyclotomicNumber::one(3))
            .unwrap();
        assert_eq!(t.get(0, 0), expect);
    }

    #[test]
    fn trivial_twist_is_augmentation() {
        let m = GroupRingMatrix::new(
            2,
            2,
            2,
            vec![
                GroupRingEntry::parse("1*a + 1*b^-1").unwrap(),
                GroupRingEntry::zero(),
                GroupRingEntry::parse("3*a.b").unwrap(),
                GroupRingEntry::parse("-1*1").unwrap(),
            ],
        )
        .unwrap();
        let p = GroupPresentation::free(2);
        let sys = LocalSystem::trivial(2, 5);
        let _ = &p;
        let t = twist(&m, &sys).unwrap();
        let aug = m.augmentation();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(
                    t.get(i, j),
                    CyclotomicNumber::from_rational(
                        5,
                        Rational::from_integer(aug.get(i, j).clone())
                    )
                );
            }
        }
    }

    #[test]
    fn rpn_direct_complex_alternates() {
        // d_k = 1 + (-1)^k a over <a | a^2>; twisting at a:1, l=2 gives
        // matrices (2), (0), (2), ...
        let p = GroupPresentation::new(1, vec![Word::parse("a^2").unwrap()]).unwrap();
        let n = 4;
        let mats: Vec<GroupRingMatrix> = (1..=n)
            .map(|k| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                GroupRingMatrix::new(
                    1,
                    1,
                    1,
                    vec![GroupRingEntry::from_terms(vec![
                        (BigInt::from(1), Word::identity()),
                        (BigInt::from(sign), Word::generator(0)),
                    ])],
                )
                .unwrap()
            })
            .collect();
        let complex = GroupRingComplex::new(p.clone(), mats).unwrap();
        let sys = LocalSystem::new(&p, 2, vec![1]).unwrap();
        let t = complex.twist(&sys).unwrap();
        for k in 1..=n {
            let v = t.boundary(k).unwrap().get(0, 0);
            let expect = if k % 2 == 1 {
                CyclotomicNumber::from_integer(2, 2)
            } else {
                CyclotomicNumber::zero(2)
            };
            assert_eq!(v, expect, "degree {k}");
        }
    }

    #[test]
    fn twist_is_multiplicative() {
        use crate::util::SplitMix64;
        let mut rng = SplitMix64::new(5);
        let p = GroupPresentation::free(2);
        for _ in 0..20 {
            let rand_entry = |rng: &mut SplitMix64| {
                let mut terms = Vec::new();
                for _ in 0..rng.below(3) {
                    let c = rng.range_i64(-2, 2);
                    let len = rng.below(3);
                    let letters: Vec<i32> = (0..len)
                        .map(|_| {
                            let g = rng.below(2) as i32 + 1;
                            if rng.below(2) == 0 {
                                g
                            } else {
                                -g
                            }
                        })
                        .collect();
                    terms.push((BigInt::from(c), Word::from_letters(letters)));
                }
                GroupRingEntry::from_terms(terms)
            };
            let a = GroupRingMatrix::new(
                2,
                2,
                2,
                (0..4).map(|_| rand_entry(&mut rng)).collect(),
            )
            .unwrap();
            let b = GroupRingMatrix::new(
                2,
                2,
                2,
                (0..4).map(|_| rand_entry(&mut rng)).collect(),
            )
            .unwrap();
            let sys = LocalSystem::new(&p, 5, vec![rng.below(5), rng.below(5)]).unwrap();
            let lhs = twist(&a.mul(&b).unwrap(), &sys).unwrap();
            let ta = twist(&a, &sys).unwrap();
            let tb = twist(&b, &sys).unwrap();
            // multiply the two twisted matrices densely
            for i in 0..2 {
                for j in 0..2 {
                    let mut acc = CyclotomicNumber::zero(5);
                    for k in 0..2 {
                        acc = acc
                            .checked_add(&ta.get(i, k).checked_mul(&tb.get(k, j)).unwrap())
                            .unwrap();
                    }
                    assert_eq!(acc, lhs.get(i, j));
                }
            }
        }
    }

    #[test]
    fn twisted_dd_zero_on_rp2_for_all_systems() {
        let k = crate::catalog::rp2_complex();
        let fg = fundamental_group(&k, 0).unwrap();
        let eq = equivariant_boundary(&k, &fg).unwrap();
        for ell in [2u64, 3, 5] {
            for sys in crate::local_systems::enumerate_local_systems(&fg.presentation, ell)
                .unwrap()
            {
                // construction fails if dd != 0 over the field
                let t = eq.twist(&sys).unwrap();
                assert_eq!(t.dims(), &[6, 15, 10]);
            }
        }
    }

    #[test]
    fn presentation_mismatch_rejected() {
        let m = GroupRingMatrix::new(1, 1, 1, vec![GroupRingEntry::term(1, Word::generator(0))])
            .unwrap();
        let sys = LocalSystem::trivial(2, 3);
        assert!(matches!(
            twist(&m, &sys),
            Err(Error::PresentationMismatch(_))
        ));
    }

    #[test]
    fn tensor_of_twisted_circles() {
        // circle as hollow triangle, trivial systems at l=3: tensor should
        // reproduce the torus dims
        let k = SimplicialComplex::from_simplices(vec![vec![0, 1], vec![0, 2], vec![1, 2]])
            .unwrap();
        let fg = fundamental_group(&k, 0).unwrap();
        let eq = equivariant_boundary(&k, &fg).unwrap();
        let sys = LocalSystem::trivial(1, 3);
        let t = eq.twist(&sys).unwrap();
        let tt = tensor_twisted(&t, &t).unwrap();
        assert_eq!(tt.dims(), &[9, 18, 9]);
        assert_eq!(tt.euler_characteristic(), 0);
    }

    #[test]
    fn nontrivial_rational_coefficient_twist() {
        // coefficients like 1/2 never arise from group rings, but the
        // cyclotomic matrices support them; sanity-check scale
        let z = CyclotomicNumber::root_of_unity(3, 1).scale(&rat(1, 2));
        assert_eq!(z.coefficients()[1], rat(1, 2));
    }
}
