//! Finite groups as multiplication tables, with the character enumeration
//! the theorem layer needs.

use crate::error::Error;
use crate::linalg::{fp_nullspace, FpMatrix};
use crate::Result;

/// A finite group given by its multiplication table; element 0 is the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    n: usize,
    mul_table: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn new(mul_table: Vec<Vec<usize>>) -> Result<Self> {
        let n = mul_table.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty multiplication table".into()));
        }
        for row in &mul_table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidInput("malformed multiplication table".into()));
            }
        }
        let g = GroupTable { n, mul_table };
        g.check_axioms()?;
        Ok(g)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.n;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(Error::InvalidInput("element 0 is not an identity".into()));
            }
        }
        // each row and column is a permutation, and every element has an inverse
        for x in 0..n {
            let mut seen_r = vec![false; n];
            let mut seen_c = vec![false; n];
            let mut has_inv = false;
            for y in 0..n {
                let r = self.mul(x, y);
                let c = self.mul(y, x);
                if seen_r[r] || seen_c[c] {
                    return Err(Error::InvalidInput("table rows/columns not bijective".into()));
                }
                seen_r[r] = true;
                seen_c[c] = true;
                if r == 0 {
                    has_inv = true;
                }
            }
            if !has_inv {
                return Err(Error::InvalidInput(format!("element {x} has no inverse")));
            }
        }
        // associativity (desk-scale groups only)
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidInput("multiplication not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Cyclic-product group from invariant factors, e.g. `[2, 2]` for the
    /// Klein four-group. Element index is mixed-radix, first factor most
    /// significant.
    pub fn from_invariant_factors(factors: &[u64]) -> Result<Self> {
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::InvalidInput(
                "invariant factors must be at least 2".into(),
            ));
        }
        let n: usize = factors.iter().map(|&d| d as usize).product::<usize>().max(1);
        let decode = |mut i: usize| -> Vec<usize> {
            let mut t = vec![0usize; factors.len()];
            for k in (0..factors.len()).rev() {
                t[k] = i % factors[k] as usize;
                i /= factors[k] as usize;
            }
            t
        };
        let encode = |t: &[usize]| -> usize {
            let mut i = 0usize;
            for (k, &x) in t.iter().enumerate() {
                i = i * factors[k] as usize + x;
            }
            i
        };
        let mul_table = (0..n)
            .map(|i| {
                let ti = decode(i);
                (0..n)
                    .map(|j| {
                        let tj = decode(j);
                        let s: Vec<usize> = ti
                            .iter()
                            .zip(&tj)
                            .zip(factors)
                            .map(|((&a, &b), &d)| (a + b) % d as usize)
                            .collect();
                        encode(&s)
                    })
                    .collect()
            })
            .collect();
        GroupTable::new(mul_table)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.n).find(|&b| self.mul(a, b) == 0).unwrap()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Direct product; index of (a, b) is `a * other.order() + b`.
    pub fn direct_product(&self, other: &GroupTable) -> GroupTable {
        let n2 = other.n;
        let n = self.n * n2;
        let mul_table = (0..n)
            .map(|i| {
                let (a1, b1) = (i / n2, i % n2);
                (0..n)
                    .map(|j| {
                        let (a2, b2) = (j / n2, j % n2);
                        self.mul(a1, a2) * n2 + other.mul(b1, b2)
                    })
                    .collect()
            })
            .collect();
        GroupTable::new(mul_table).expect("product of groups is a group")
    }

    /// All homomorphisms `G -> Z/l` as exponent vectors indexed by element,
    /// in lexicographic order. Solved as a linear system over F_l.
    pub fn characters_mod(&self, ell: u64) -> Vec<Vec<u64>> {
        let n = self.n;
        // unknowns chi(x); equations chi(xy) - chi(x) - chi(y) = 0, chi(e) = 0
        let mut rows = Vec::new();
        let mut e0 = vec![0u64; n];
        e0[0] = 1;
        rows.push(e0);
        for x in 0..n {
            for y in 0..n {
                let mut row = vec![0u64; n];
                let p = self.mul(x, y);
                row[p] = (row[p] + 1) % ell;
                row[x] = (row[x] + ell - 1) % ell;
                row[y] = (row[y] + ell - 1) % ell;
                if row.iter().any(|&v| v != 0) {
                    rows.push(row);
                }
            }
        }
        let basis = fp_nullspace(&FpMatrix::new(ell, rows, n));
        // enumerate the span, lexicographically sorted
        let mut out: Vec<Vec<u64>> = Vec::new();
        let dim = basis.len();
        let mut counter = vec![0u64; dim];
        loop {
            let mut chi = vec![0u64; n];
            for (c, b) in counter.iter().zip(&basis) {
                for (x, v) in chi.iter_mut().zip(b) {
                    *x = (*x + c * v) % ell;
                }
            }
            out.push(chi);
            // increment
            let mut i = 0;
            loop {
                if i == dim {
                    out.sort();
                    out.dedup();
                    return out;
                }
                counter[i] += 1;
                if counter[i] < ell {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
        }
    }
}
