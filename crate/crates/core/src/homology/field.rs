//! Field-coefficient homology and cohomology: ranks mod p, twisted Betti
//! numbers over `Q(zeta_l)` by fraction-free elimination, cohomology bases
//! with tracked representatives, and invariant subspaces of group actions.

use crate::arith::CyclotomicNumber;
use crate::complexes::IntegerChainComplex;
use crate::error::Error;
use crate::homology::{AbelianGroup, FieldLabel, HomologySummary};
use crate::linalg::{cyc_nullspace, fp_nullspace, fp_rank, CycEliminator, FpEchelon, FpMatrix};
use crate::local_systems::TwistedChainComplex;
use crate::Result;

/// Betti numbers of an integer complex reduced mod p.
pub fn betti_over_fp(c: &IntegerChainComplex, p: u64) -> HomologySummary {
    let d = c.dimension();
    let ranks: Vec<usize> = (1..=d)
        .map(|k| {
            let m = c.boundary(k).unwrap();
            fp_rank(&FpMatrix::new(p, m.to_fp_rows(p), m.cols()))
        })
        .collect();
    let rank = |k: usize| -> usize {
        if k == 0 || k > d {
            0
        } else {
            ranks[k - 1]
        }
    };
    let groups = (0..=d)
        .map(|k| AbelianGroup::free(c.cells(k) - rank(k) - rank(k + 1)))
        .collect();
    HomologySummary {
        field: FieldLabel::Fp(p),
        groups,
    }
}

/// Betti numbers of a twisted complex over `Q(zeta_l)`, by sparse
/// fraction-free elimination. Ranks are computed bottom-up; since
/// `d . d = 0` was verified at construction, `rank d_{k+1}` is capped by
/// `dim ker d_k`, which lets the eliminator stop early.
pub fn betti_twisted(t: &TwistedChainComplex) -> Result<HomologySummary> {
    let d = t.dimension();
    let mut ranks = vec![0usize; d + 2];
    for k in 1..=d {
        let m = t.boundary(k).unwrap();
        let cap = t.cells(k - 1) - ranks[k - 1];
        let mut elim = CycEliminator::new(t.ell, m.nrows());
        for j in 0..m.ncols() {
            elim.insert_cyc_row(m.column(j))?;
            if elim.rank() == cap {
                break;
            }
        }
        ranks[k] = elim.rank();
    }
    let groups = (0..=d)
        .map(|k| AbelianGroup::free(t.cells(k) - ranks[k] - ranks[k + 1]))
        .collect();
    Ok(HomologySummary {
        field: FieldLabel::Cyclotomic(t.ell),
        groups,
    })
}

/// `dim H^k(C; F_p)` by transposing and computing ranks.
pub fn cohomology_field(c: &IntegerChainComplex, p: u64, k: usize) -> usize {
    let cells = c.cells(k);
    if cells == 0 {
        return 0;
    }
    // delta^k = transpose of d_{k+1}, delta^{k-1} = transpose of d_k
    let rank_delta = |kk: usize| -> usize {
        match c.boundary(kk) {
            None => 0,
            Some(m) => {
                let t = FpMatrix::new(p, m.to_fp_rows(p), m.cols()).transpose();
                fp_rank(&t)
            }
        }
    };
    cells - rank_delta(k + 1) - rank_delta(k)
}

/// `dim H^k` of a twisted complex over `Q(zeta_l)` (transpose-and-rank;
/// equal to the homology dimension over a field).
pub fn cohomology_field_cyc(t: &TwistedChainComplex, k: usize) -> Result<usize> {
    let cells = t.cells(k);
    if cells == 0 {
        return Ok(0);
    }
    let rank_of = |kk: usize| -> Result<usize> {
        match t.boundary(kk) {
            None => Ok(0),
            Some(m) => {
                let mut elim = CycEliminator::new(t.ell, m.nrows());
                for j in 0..m.ncols() {
                    elim.insert_cyc_row(m.column(j))?;
                }
                Ok(elim.rank())
            }
        }
    };
    Ok(cells - rank_of(k + 1)? - rank_of(k)?)
}

/// A basis of `H^k(C; F_p)` with representative cocycles and a coordinate
/// map, built from nullspaces and echelon reduction.
#[derive(Debug, Clone)]
pub struct FpCohomology {
    pub p: u64,
    /// Number of k-cells (width of cochain vectors).
    pub width: usize,
    coboundaries: FpEchelon,
    basis: FpEchelon,
}

impl FpCohomology {
    /// Builds the degree-k cohomology of an integer complex mod p.
    pub fn new(c: &IntegerChainComplex, p: u64, k: usize) -> FpCohomology {
        let width = c.cells(k);
        // span of the coboundaries: columns of transpose(d_k)
        let mut coboundaries = FpEchelon::new(p, width);
        if let Some(dk) = c.boundary(k) {
            let rows = dk.to_fp_rows(p);
            for row in rows {
                coboundaries.insert(row);
            }
        }
        // cocycles: nullspace of transpose(d_{k+1}) acting on cochains
        let cocycles: Vec<Vec<u64>> = match c.boundary(k + 1) {
            None => (0..width)
                .map(|i| {
                    let mut v = vec![0u64; width];
                    v[i] = 1;
                    v
                })
                .collect(),
            Some(dk1) => {
                let t = FpMatrix::new(p, dk1.to_fp_rows(p), dk1.cols()).transpose();
                fp_nullspace(&t)
            }
        };
        let mut basis = FpEchelon::new(p, width);
        for z in cocycles {
            let mut v = z;
            if coboundaries.reduce(&mut v).is_some() {
                basis.insert(v);
            }
        }
        FpCohomology {
            p,
            width,
            coboundaries,
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    /// Representative cocycles for the basis, in pivot order.
    pub fn representatives(&self) -> Vec<Vec<u64>> {
        self.basis.rows().to_vec()
    }

    /// Coordinates of a cocycle in the basis. Errors if the vector is not a
    /// cocycle class of this space.
    pub fn coordinates(&self, cocycle: &[u64]) -> Result<Vec<u64>> {
        let mut v = cocycle.to_vec();
        self.coboundaries.reduce(&mut v);
        let mut coords = vec![0u64; self.dim()];
        for (i, (pivot, row)) in self.basis.entries().iter().enumerate() {
            let c = v[*pivot] % self.p;
            if c != 0 {
                coords[i] = c;
                let neg = self.p - c;
                for (x, r) in v.iter_mut().zip(row.iter()) {
                    *x = (*x + neg * r) % self.p;
                }
            }
        }
        if v.iter().any(|&x| x % self.p != 0) {
            return Err(Error::InvalidInput(
                "vector is not a cocycle of this space".into(),
            ));
        }
        Ok(coords)
    }
}

/// The matrix of a cochain-level map on cohomology: columns are the
/// coordinates (in `dst`) of the images of `src`'s basis representatives.
pub fn induced_cohomology_map(
    src: &FpCohomology,
    dst: &FpCohomology,
    cochain_map: impl Fn(&[u64]) -> Vec<u64>,
) -> Result<Vec<Vec<u64>>> {
    let mut cols = Vec::with_capacity(src.dim());
    for rep in src.representatives() {
        let image = cochain_map(&rep);
        cols.push(dst.coordinates(&image)?);
    }
    Ok(cols)
}

/// Dimension and basis of the simultaneous fixed space of square invertible
/// matrices over F_p (given as row-major `Vec<Vec<u64>>`).
pub fn invariant_subspace_fp(p: u64, actions: &[Vec<Vec<u64>>]) -> Result<(usize, Vec<Vec<u64>>)> {
    let Some(first) = actions.first() else {
        return Err(Error::InvalidInput("no action matrices given".into()));
    };
    let n = first.len();
    for m in actions {
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        if fp_rank(&FpMatrix::new(p, m.clone(), n)) != n {
            return Err(Error::NotInvertible);
        }
    }
    if n == 0 {
        return Ok((0, vec![]));
    }
    // stack (M - I) for all actions
    let mut rows = Vec::new();
    for m in actions {
        for (i, r) in m.iter().enumerate() {
            let mut row = r.clone();
            row[i] = (row[i] + p - 1) % p;
            rows.push(row);
        }
    }
    let ns = fp_nullspace(&FpMatrix::new(p, rows, n));
    Ok((ns.len(), ns))
}

/// Fixed space over `Q(zeta_l)` for dense square invertible matrices.
pub fn invariant_subspace_cyc(
    ell: u64,
    actions: &[Vec<Vec<CyclotomicNumber>>],
) -> Result<(usize, Vec<Vec<CyclotomicNumber>>)> {
    let Some(first) = actions.first() else {
        return Err(Error::InvalidInput("no action matrices given".into()));
    };
    let n = first.len();
    for m in actions {
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        if crate::linalg::cyc_rank(ell, m.clone())? != n {
            return Err(Error::NotInvertible);
        }
    }
    if n == 0 {
        return Ok((0, vec![]));
    }
    let one = CyclotomicNumber::one(ell);
    let mut rows = Vec::new();
    for m in actions {
        for (i, r) in m.iter().enumerate() {
            let mut row = r.clone();
            row[i] = row[i].checked_sub(&one)?;
            rows.push(row);
        }
    }
    let basis = cyc_nullspace(ell, rows, n)?;
    Ok((basis.len(), basis))
}
