//! Abstract chain complexes of free abelian groups, given by their integer
//! boundary matrices, and the graded tensor product with Koszul signs.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::linalg::IntMatrix;
use crate::Result;

/// A chain complex `C_0 <- C_1 <- ... <- C_d` of free abelian groups.
/// `boundary(k)` has shape `cells(k-1) x cells(k)`.
#[derive(Debug, Clone)]
pub struct IntegerChainComplex {
    /// Cell counts per dimension `0..=d`.
    dims: Vec<usize>,
    /// `boundaries[k-1]` is the matrix of `d_k`, for `k = 1..=d`.
    boundaries: Vec<IntMatrix>,
    /// Cell labels per dimension (same lengths as `dims`).
    labels: Vec<Vec<String>>,
}

impl IntegerChainComplex {
    /// Validates shapes and `d . d = 0`.
    pub fn new(boundaries: Vec<IntMatrix>, labels: Vec<Vec<String>>) -> Result<Self> {
        let dims: Vec<usize> = if boundaries.is_empty() {
            match labels.len() {
                0 => vec![],
                1 => vec![labels[0].len()],
                n => {
                    return Err(Error::InvalidInput(format!(
                        "no boundaries but {n} label dimensions"
                    )))
                }
            }
        } else {
            let mut d = Vec::with_capacity(boundaries.len() + 1);
            d.push(boundaries[0].rows());
            for m in &boundaries {
                d.push(m.cols());
            }
            d
        };
        for (k, w) in boundaries.windows(2).enumerate() {
            if w[1].rows() != w[0].cols() {
                return Err(Error::InvalidInput(format!(
                    "boundary shapes disagree between dimensions {} and {}",
                    k + 1,
                    k + 2
                )));
            }
        }
        if labels.len() != dims.len() || labels.iter().zip(&dims).any(|(l, &n)| l.len() != n) {
            return Err(Error::InvalidInput("cell labels do not match dims".into()));
        }
        let c = IntegerChainComplex {
            dims,
            boundaries,
            labels,
        };
        c.check_dd_zero()?;
        Ok(c)
    }

    /// Automatic numeric labels.
    pub fn with_numeric_labels(boundaries: Vec<IntMatrix>) -> Result<Self> {
        let dims: Vec<usize> = if boundaries.is_empty() {
            vec![]
        } else {
            let mut d = vec![boundaries[0].rows()];
            for m in &boundaries {
                d.push(m.cols());
            }
            d
        };
        let labels = dims
            .iter()
            .map(|&n| (0..n).map(|i| i.to_string()).collect())
            .collect();
        Self::new(boundaries, labels)
    }

    fn check_dd_zero(&self) -> Result<()> {
        for k in 1..self.boundaries.len() {
            let a = &self.boundaries[k - 1];
            let b = &self.boundaries[k];
            // sparse check: for each column of b, accumulate a * column
            for j in 0..b.cols() {
                let mut acc = vec![BigInt::zero(); a.rows()];
                for (mid, w) in b.sparse_col(j) {
                    for (i, v) in a.sparse_col(mid) {
                        acc[i] += &v * &w;
                    }
                }
                if acc.iter().any(|x| !x.is_zero()) {
                    return Err(Error::BoundaryCondition(k, k + 1));
                }
            }
        }
        Ok(())
    }

    /// Top dimension.
    pub fn dimension(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn cells(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self, k: usize) -> &[String] {
        self.labels.get(k).map_or(&[], |v| v.as_slice())
    }

    /// The boundary `d_k: C_k -> C_{k-1}` for `1 <= k <= d`.
    pub fn boundary(&self, k: usize) -> Option<&IntMatrix> {
        if k == 0 {
            None
        } else {
            self.boundaries.get(k - 1)
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn total_cells(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// Graded tensor product with Koszul signs:
/// `d(a (x) b) = da (x) b + (-1)^|a| a (x) db`.
///
/// Cells of dimension k are pairs (a-cell of dim p, b-cell of dim q) with
/// p + q = k, ordered by p ascending then (a index, b index).
pub fn tensor_complex(a: &IntegerChainComplex, b: &IntegerChainComplex) -> IntegerChainComplex {
    if a.dims.is_empty() || b.dims.is_empty() {
        return IntegerChainComplex::new(vec![], vec![]).unwrap();
    }
    let da = a.dimension();
    let db = b.dimension();
    let dim = da + db;
    // index layout per total dimension
    let block_offset = |k: usize, p: usize| -> usize {
        // offset of block (p, k-p) within dimension k
        let mut off = 0;
        for pp in 0..p {
            let qq = k - pp;
            if pp <= da && qq <= db {
                off += a.cells(pp) * b.cells(qq);
            }
        }
        off
    };
    let dim_size = |k: usize| -> usize {
        (0..=k)
            .filter(|&p| p <= da && k - p <= db)
            .map(|p| a.cells(p) * b.cells(k - p))
            .sum()
    };
    let mut boundaries = Vec::new();
    for k in 1..=dim {
        let rows = dim_size(k - 1);
        let cols = dim_size(k);
        let mut m = IntMatrix::zero(rows, cols);
        for p in 0..=k {
            let q = k - p;
            if p > da || q > db {
                continue;
            }
            let col_base = block_offset(k, p);
            let na = a.cells(p);
            let nb = b.cells(q);
            for ia in 0..na {
                for ib in 0..nb {
                    let col = col_base + ia * nb + ib;
                    // da part: (p-1, q) block
                    if p >= 1 {
                        let row_base = block_offset(k - 1, p - 1);
                        let nb_target = b.cells(q);
                        for (ra, v) in a.boundary(p).unwrap().sparse_col(ia) {
                            m.add_assign_at(row_base + ra * nb_target + ib, col, &v);
                        }
                    }
                    // db part: (p, q-1) block with sign (-1)^p
                    if q >= 1 {
                        let row_base = block_offset(k - 1, p);
                        let nb_target = b.cells(q - 1);
                        let sign = if p % 2 == 0 { 1 } else { -1 };
                        for (rb, v) in b.boundary(q).unwrap().sparse_col(ib) {
                            let signed = &v * BigInt::from(sign);
                            m.add_assign_at(row_base + ia * nb_target + rb, col, &signed);
                        }
                    }
                }
            }
        }
        boundaries.push(m);
    }
    let labels: Vec<Vec<String>> = (0..=dim)
        .map(|k| {
            let mut l = Vec::new();
            for p in 0..=k {
                let q = k - p;
                if p > da || q > db {
                    continue;
                }
                for la in a.labels(p) {
                    for lb in b.labels(q) {
                        l.push(format!("{la}*{lb}"));
                    }
                }
            }
            l
        })
        .collect();
    IntegerChainComplex::new(boundaries, labels).expect("tensor of complexes satisfies dd=0")
}
