//! Dense matrices and elimination over `Q(zeta_l)`. Used for the small
//! matrices of the theorem layer (deck actions on cohomology, twisted
//! complexes of modest size); the large twisted complexes go through the
//! sparse eliminator instead.

use crate::arith::CyclotomicNumber;
use crate::error::Error;
use crate::Result;

/// Sparse-by-column matrix over `Q(zeta_l)`. Columns hold sorted
/// `(row, value)` pairs with nonzero values.
#[derive(Debug, Clone)]
pub struct CycMatrix {
    ell: u64,
    rows: usize,
    cols: Vec<Vec<(usize, CyclotomicNumber)>>,
}

impl CycMatrix {
    pub fn zero(ell: u64, rows: usize, cols: usize) -> Self {
        CycMatrix {
            ell,
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    pub fn from_columns(
        ell: u64,
        rows: usize,
        columns: Vec<Vec<(usize, CyclotomicNumber)>>,
    ) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        CycMatrix {
            ell,
            rows,
            cols: columns,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.ell
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, CyclotomicNumber)] {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> CyclotomicNumber {
        self.cols[j]
            .iter()
            .find(|(r, _)| *r == i)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| CyclotomicNumber::zero(self.ell))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// Checks that `self * other = 0`, exploiting sparsity.
    pub fn composes_to_zero_with(&self, other: &CycMatrix) -> Result<bool> {
        if self.ell != other.ell {
            return Err(Error::ModulusMismatch(self.ell, other.ell));
        }
        if self.ncols() != other.nrows() {
            return Err(Error::InvalidInput(format!(
                "shape mismatch: {}x{} . {}x{}",
                self.rows,
                self.ncols(),
                other.nrows(),
                other.ncols()
            )));
        }
        for j in 0..other.ncols() {
            // accumulate self * (column j of other)
            let mut acc: std::collections::BTreeMap<usize, CyclotomicNumber> =
                std::collections::BTreeMap::new();
            for (k, w) in other.column(j) {
                for (i, v) in self.column(*k) {
                    let prod = v.checked_mul(w)?;
                    match acc.get_mut(i) {
                        Some(e) => *e = e.checked_add(&prod)?,
                        None => {
                            acc.insert(*i, prod);
                        }
                    }
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Rank over `Q(zeta_l)` by dense Gaussian elimination (exact rationals).
pub fn cyc_rank(_ell: u64, rows: Vec<Vec<CyclotomicNumber>>) -> Result<usize> {
    let mut pivots: Vec<(usize, Vec<CyclotomicNumber>)> = Vec::new();
    for mut row in rows {
        loop {
            let Some(lead) = row.iter().position(|v| !v.is_zero()) else {
                break;
            };
            if let Some((_, prow)) = pivots.iter().find(|(c, _)| *c == lead) {
                let factor = row[lead].clone();
                for (x, p) in row.iter_mut().zip(prow.iter()) {
                    if !p.is_zero() {
                        *x = x.checked_sub(&factor.checked_mul(p)?)?;
                    }
                }
            } else {
                let inv = row[lead].inverse()?;
                for x in row.iter_mut() {
                    if !x.is_zero() {
                        *x = x.checked_mul(&inv)?;
                    }
                }
                pivots.push((lead, row));
                break;
            }
        }
    }
    Ok(pivots.len())
}

/// Basis of the right nullspace of a dense matrix over `Q(zeta_l)`.
/// Deterministic: free columns ascending, unit coordinate at the free column.
pub fn cyc_nullspace(
    ell: u64,
    rows: Vec<Vec<CyclotomicNumber>>,
    ncols: usize,
) -> Result<Vec<Vec<CyclotomicNumber>>> {
    let mut work: Vec<Vec<CyclotomicNumber>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (col, row)
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(sel) = (rank..work.len()).find(|&r| !work[r][col].is_zero()) else {
            continue;
        };
        work.swap(rank, sel);
        let inv = work[rank][col].inverse()?;
        for x in work[rank].iter_mut() {
            if !x.is_zero() {
                *x = x.checked_mul(&inv)?;
            }
        }
        for r in 0..work.len() {
            if r != rank && !work[r][col].is_zero() {
                let factor = work[r][col].clone();
                for j in 0..ncols {
                    if !work[rank][j].is_zero() {
                        let sub = factor.checked_mul(&work[rank][j])?;
                        work[r][j] = work[r][j].checked_sub(&sub)?;
                    }
                }
            }
        }
        pivots.push((col, rank));
        rank += 1;
        if rank == work.len() {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(c, _)| c).collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![CyclotomicNumber::zero(ell); ncols];
        v[free] = CyclotomicNumber::one(ell);
        for &(c, r) in &pivots {
            if !work[r][free].is_zero() {
                v[c] = work[r][free].neg();
            }
        }
        basis.push(v);
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(ell: u64, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(ell, k)
    }

    fn n(ell: u64, v: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_integer(ell, v)
    }

    #[test]
    fn rank_of_zeta_minus_one() {
        // (zeta - 1) is invertible, so a 1x1 matrix holding it has rank 1.
        let e = z(3, 1).checked_sub(&n(3, 1)).unwrap();
        assert_eq!(cyc_rank(3, vec![vec![e]]).unwrap(), 1);
    }

    #[test]
    fn dependent_rows() {
        let r1 = vec![n(3, 1), z(3, 1)];
        let r2 = vec![z(3, 1), z(3, 2)]; // zeta * r1
        assert_eq!(cyc_rank(3, vec![r1, r2]).unwrap(), 1);
    }

    #[test]
    fn nullspace_matches_rank() {
        let rows = vec![vec![n(5, 1), z(5, 1), n(5, 0)], vec![n(5, 0), n(5, 1), z(5, 3)]];
        let ns = cyc_nullspace(5, rows.clone(), 3).unwrap();
        assert_eq!(ns.len(), 3 - cyc_rank(5, rows.clone()).unwrap());
        // each basis vector is killed by every row
        for v in &ns {
            for row in &rows {
                let mut acc = CyclotomicNumber::zero(5);
                for (a, b) in row.iter().zip(v) {
                    acc = acc.checked_add(&a.checked_mul(b).unwrap()).unwrap();
                }
                assert!(acc.is_zero());
            }
        }
    }
}
