//! Dense linear algebra over the prime fields F_p, p small.

/// Dense matrix over F_p, rows of `u64` values already reduced mod p.
#[derive(Debug, Clone)]
pub struct FpMatrix {
    pub p: u64,
    pub rows: Vec<Vec<u64>>,
    pub cols: usize,
}

impl FpMatrix {
    pub fn new(p: u64, rows: Vec<Vec<u64>>, cols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        FpMatrix { p, rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut rows = vec![vec![0u64; self.nrows()]; self.cols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                rows[j][i] = v;
            }
        }
        FpMatrix::new(self.p, rows, self.nrows())
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: p prime, a != 0 mod p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Incremental echelon basis over F_p: pivot rows normalized to leading 1,
/// kept fully reduced. Deterministic given the insertion order.
#[derive(Debug, Clone)]
pub struct FpEchelon {
    p: u64,
    width: usize,
    /// (pivot column, row) sorted by pivot column.
    rows: Vec<(usize, Vec<u64>)>,
}

impl FpEchelon {
    pub fn new(p: u64, width: usize) -> Self {
        FpEchelon {
            p,
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    /// The reduced pivot rows, in pivot-column order.
    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    /// `(pivot column, row)` pairs, in pivot-column order.
    pub fn entries(&self) -> &[(usize, Vec<u64>)] {
        &self.rows
    }

    /// Reduces `v` against the basis in place; returns its leading column if
    /// the residue is nonzero.
    pub fn reduce(&self, v: &mut [u64]) -> Option<usize> {
        debug_assert_eq!(v.len(), self.width);
        let p = self.p;
        for (c, row) in &self.rows {
            let coeff = v[*c] % p;
            if coeff != 0 {
                let neg = p - coeff;
                for (x, &r) in v.iter_mut().zip(row.iter()) {
                    *x = (*x + neg * r) % p;
                }
            }
        }
        v.iter().position(|&x| x % p != 0)
    }

    /// Reduces and, if independent, inserts. Returns true when the vector
    /// enlarged the span.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        match self.reduce(&mut v) {
            None => false,
            Some(lead) => {
                let inv = inv_mod(v[lead], self.p);
                for x in v.iter_mut() {
                    *x = *x * inv % self.p;
                }
                // Back-substitute into existing rows to keep them reduced.
                for (_, row) in self.rows.iter_mut() {
                    let coeff = row[lead];
                    if coeff != 0 {
                        let neg = self.p - coeff;
                        for (r, &x) in row.iter_mut().zip(v.iter()) {
                            *r = (*r + neg * x) % self.p;
                        }
                    }
                }
                let pos = self.rows.partition_point(|(c, _)| *c < lead);
                self.rows.insert(pos, (lead, v));
                true
            }
        }
    }

    /// Membership test for the span.
    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w).is_none()
    }
}

/// Rank of a dense matrix mod p.
pub fn fp_rank(m: &FpMatrix) -> usize {
    let mut ech = FpEchelon::new(m.p, m.cols);
    for row in &m.rows {
        ech.insert(row.clone());
    }
    ech.rank()
}

/// Basis of the right nullspace `{x : M x = 0}` over F_p, deterministic
/// (free columns in ascending order, each basis vector has 1 at its free
/// column).
pub fn fp_nullspace(m: &FpMatrix) -> Vec<Vec<u64>> {
    let p = m.p;
    let ncols = m.cols;
    // Row-reduce a working copy to RREF.
    let mut rows: Vec<Vec<u64>> = m.rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (col, row index)
    let mut rank = 0;
    for col in 0..ncols {
        // find a row at or below `rank` with nonzero entry in col
        let Some(sel) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, sel);
        let inv = inv_mod(rows[rank][col] % p, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] % p != 0 {
                let coeff = rows[r][col] % p;
                let neg = p - coeff;
                for j in 0..ncols {
                    rows[r][j] = (rows[r][j] + neg * rows[rank][j]) % p;
                }
            }
        }
        pivots.push((col, rank));
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(c, _)| c).collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for &(c, r) in &pivots {
            let coeff = rows[r][free] % p;
            if coeff != 0 {
                v[c] = (p - coeff) % p;
            }
        }
        basis.push(v);
    }
    basis
}


/// Incremental sparse echelon over F_p: rows are sorted `(col, value)`
/// lists, reduced at their leftmost column. Suited to the wide, very sparse
/// bar coboundaries, where dense rows would not fit in memory.
#[derive(Debug)]
pub struct FpSparseEliminator {
    p: u64,
    pivots: Vec<Option<Vec<(u32, u64)>>>,
    rank: usize,
}

impl FpSparseEliminator {
    pub fn new(p: u64, width: usize) -> Self {
        FpSparseEliminator {
            p,
            pivots: vec![None; width],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Feeds one sparse row (sorted by column, values reduced mod p).
    /// Returns whether the rank increased.
    pub fn insert(&mut self, mut row: Vec<(u32, u64)>) -> bool {
        let p = self.p;
        row.retain(|&(_, v)| v % p != 0);
        loop {
            let Some(&(lead, val)) = row.first() else {
                return false;
            };
            match &self.pivots[lead as usize] {
                None => {
                    // normalize to leading 1
                    let inv = inv_mod(val % p, p);
                    for (_, v) in row.iter_mut() {
                        *v = *v * inv % p;
                    }
                    self.pivots[lead as usize] = Some(row);
                    self.rank += 1;
                    return true;
                }
                Some(pivot) => {
                    // row -= val * pivot (pivot is monic)
                    let neg = p - val % p;
                    let mut out = Vec::with_capacity(row.len() + pivot.len());
                    let mut i = 1; // skip the cancelled lead
                    let mut j = 1;
                    while i < row.len() || j < pivot.len() {
                        let rc = row.get(i).map_or(u32::MAX, |&(c, _)| c);
                        let pc = pivot.get(j).map_or(u32::MAX, |&(c, _)| c);
                        if rc < pc {
                            out.push(row[i]);
                            i += 1;
                        } else if pc < rc {
                            out.push((pc, pivot[j].1 * neg % p));
                            j += 1;
                        } else {
                            let v = (row[i].1 + pivot[j].1 * neg) % p;
                            if v != 0 {
                                out.push((rc, v));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    row = out;
                }
            }
        }
    }
}

#[cfg(test)]
mod sparse_tests {
    use super::*;

    #[test]
    fn sparse_rank_agrees_with_dense() {
        use crate::util::SplitMix64;
        let mut rng = SplitMix64::new(321);
        for p in [2u64, 3, 5] {
            for _ in 0..30 {
                let rows = 1 + rng.below(6) as usize;
                let cols = 1 + rng.below(6) as usize;
                let data: Vec<Vec<u64>> = (0..rows)
                    .map(|_| (0..cols).map(|_| rng.below(p)).collect())
                    .collect();
                let dense = fp_rank(&FpMatrix::new(p, data.clone(), cols));
                let mut se = FpSparseEliminator::new(p, cols);
                for r in &data {
                    let sparse: Vec<(u32, u64)> = r
                        .iter()
                        .enumerate()
                        .filter(|(_, &v)| v != 0)
                        .map(|(c, &v)| (c as u32, v))
                        .collect();
                    se.insert(sparse);
                }
                assert_eq!(se.rank(), dense);
            }
        }
    }
}
