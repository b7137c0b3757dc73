//! Smith normal form over the integers with optional unimodular transforms.
//!
//! Pivoting rule: smallest nonzero absolute value, ties broken by row then
//! column order. Entries of absolute value 1 are tracked in a worklist so the
//! common case (boundary matrices, whose pivots are almost always units)
//! avoids rescanning the submatrix; the worklist pops in (row, column) order,
//! which coincides with the stated rule whenever units exist.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::int_matrix::IntMatrix;

/// Which transforms to track during the reduction.
#[derive(Debug, Clone, Copy, Default)]
pub struct SnfOptions {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl SnfOptions {
    pub fn none() -> Self {
        SnfOptions::default()
    }

    pub fn all() -> Self {
        SnfOptions {
            u: true,
            u_inv: true,
            v: true,
            v_inv: true,
        }
    }
}

/// Result of the reduction: `u * a * v = d`, diagonal with a divisibility
/// chain, all requested transforms unimodular.
#[derive(Debug, Clone)]
pub struct Snf {
    pub d: IntMatrix,
    pub rank: usize,
    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_rank`, all positive.
    pub diag: Vec<BigInt>,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

struct Reducer {
    a: IntMatrix,
    u: Option<IntMatrix>,
    u_inv: Option<IntMatrix>,
    v: Option<IntMatrix>,
    v_inv: Option<IntMatrix>,
    /// Known positions of +-1 entries, popped in (row, col) order. May hold
    /// stale positions; validated on pop.
    units: BinaryHeap<Reverse<(usize, usize)>>,
}

impl Reducer {
    fn new(a: &IntMatrix, opts: SnfOptions) -> Self {
        let mut units = BinaryHeap::new();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if a.get(i, j).abs().is_one() {
                    units.push(Reverse((i, j)));
                }
            }
        }
        Reducer {
            a: a.clone(),
            u: opts.u.then(|| IntMatrix::identity(a.rows())),
            u_inv: opts.u_inv.then(|| IntMatrix::identity(a.rows())),
            v: opts.v.then(|| IntMatrix::identity(a.cols())),
            v_inv: opts.v_inv.then(|| IntMatrix::identity(a.cols())),
            units,
        }
    }

    fn note(&mut self, i: usize, j: usize) {
        if self.a.get(i, j).abs().is_one() {
            self.units.push(Reverse((i, j)));
        }
    }

    /// row_i -= q * row_t on `a` (active columns only) and on the transforms.
    fn row_op(&mut self, i: usize, t: usize, q: &BigInt, from_col: usize) {
        for j in from_col..self.a.cols() {
            let src = self.a.get(t, j);
            if src.is_zero() {
                continue;
            }
            let v = self.a.get(i, j) - q * src;
            self.a.set(i, j, v);
            self.note(i, j);
        }
        if let Some(u) = &mut self.u {
            for j in 0..u.cols() {
                let src = u.get(t, j).clone();
                if src.is_zero() {
                    continue;
                }
                let v = u.get(i, j) - q * &src;
                u.set(i, j, v);
            }
        }
        if let Some(ui) = &mut self.u_inv {
            // column t += q * column i
            for r in 0..ui.rows() {
                let src = ui.get(r, i).clone();
                if src.is_zero() {
                    continue;
                }
                let v = ui.get(r, t) + q * &src;
                ui.set(r, t, v);
            }
        }
    }

    /// col_j -= q * col_t on `a` and the transforms.
    fn col_op(&mut self, j: usize, t: usize, q: &BigInt, from_row: usize) {
        for i in from_row..self.a.rows() {
            let src = self.a.get(i, t);
            if src.is_zero() {
                continue;
            }
            let v = self.a.get(i, j) - q * src;
            self.a.set(i, j, v);
            self.note(i, j);
        }
        if let Some(v) = &mut self.v {
            for i in 0..v.rows() {
                let src = v.get(i, t).clone();
                if src.is_zero() {
                    continue;
                }
                let val = v.get(i, j) - q * &src;
                v.set(i, j, val);
            }
        }
        if let Some(vi) = &mut self.v_inv {
            // row t += q * row j
            for c in 0..vi.cols() {
                let src = vi.get(j, c).clone();
                if src.is_zero() {
                    continue;
                }
                let val = vi.get(t, c) + q * &src;
                vi.set(t, c, val);
            }
        }
    }

    fn swap_rows(&mut self, i: usize, t: usize) {
        if i == t {
            return;
        }
        for j in 0..self.a.cols() {
            let x = self.a.get(i, j).clone();
            let y = self.a.get(t, j).clone();
            self.a.set(i, j, y);
            self.a.set(t, j, x);
            self.note(i, j);
            self.note(t, j);
        }
        if let Some(u) = &mut self.u {
            for j in 0..u.cols() {
                let x = u.get(i, j).clone();
                let y = u.get(t, j).clone();
                u.set(i, j, y);
                u.set(t, j, x);
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for r in 0..ui.rows() {
                let x = ui.get(r, i).clone();
                let y = ui.get(r, t).clone();
                ui.set(r, i, y);
                ui.set(r, t, x);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, t: usize) {
        if j == t {
            return;
        }
        for i in 0..self.a.rows() {
            let x = self.a.get(i, j).clone();
            let y = self.a.get(i, t).clone();
            self.a.set(i, j, y);
            self.a.set(i, t, x);
            self.note(i, j);
            self.note(i, t);
        }
        if let Some(v) = &mut self.v {
            for i in 0..v.rows() {
                let x = v.get(i, j).clone();
                let y = v.get(i, t).clone();
                v.set(i, j, y);
                v.set(i, t, x);
            }
        }
        if let Some(vi) = &mut self.v_inv {
            for c in 0..vi.cols() {
                let x = vi.get(j, c).clone();
                let y = vi.get(t, c).clone();
                vi.set(j, c, y);
                vi.set(t, c, x);
            }
        }
    }

    fn negate_row(&mut self, t: usize) {
        for j in 0..self.a.cols() {
            let v = -self.a.get(t, j);
            self.a.set(t, j, v);
        }
        if let Some(u) = &mut self.u {
            for j in 0..u.cols() {
                let v = -u.get(t, j);
                u.set(t, j, v);
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for r in 0..ui.rows() {
                let v = -ui.get(r, t);
                ui.set(r, t, v);
            }
        }
    }

    /// Smallest-|value| pivot in the submatrix at (t, t), ties by row then
    /// column. Tries the unit worklist first.
    fn find_pivot(&mut self, t: usize) -> Option<(usize, usize)> {
        while let Some(&Reverse((i, j))) = self.units.peek() {
            if i < t || j < t || !self.a.get(i, j).abs().is_one() {
                self.units.pop();
                continue;
            }
            return Some((i, j));
        }
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = self.a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let av = v.abs();
                match &best {
                    Some((b, _, _)) if *b <= av => {}
                    _ => best = Some((av, i, j)),
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

/// Smith normal form with selectable transform tracking.
pub fn smith_with_options(a: &IntMatrix, opts: SnfOptions) -> Snf {
    let mut r = Reducer::new(a, opts);
    let n = a.rows().min(a.cols());
    let mut rank = 0;
    'pivots: for t in 0..n {
        loop {
            let Some((pi, pj)) = r.find_pivot(t) else {
                break 'pivots;
            };
            r.swap_rows(pi, t);
            r.swap_cols(pj, t);
            // Clear column t with Euclidean steps.
            let mut dirty = false;
            for i in t + 1..r.a.rows() {
                let v = r.a.get(i, t);
                if v.is_zero() {
                    continue;
                }
                let q = v / r.a.get(t, t); // truncated: |rem| < |pivot|
                if !q.is_zero() {
                    r.row_op(i, t, &q, t);
                }
                if !r.a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue; // smaller remainders exist; re-select pivot
            }
            // Clear row t.
            for j in t + 1..r.a.cols() {
                let v = r.a.get(t, j);
                if v.is_zero() {
                    continue;
                }
                let q = v / r.a.get(t, t);
                if !q.is_zero() {
                    r.col_op(j, t, &q, t);
                }
                if !r.a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility: pull in the first entry the pivot does not divide.
            let d = r.a.get(t, t).clone();
            let mut fixed = true;
            'scan: for i in t + 1..r.a.rows() {
                for j in t + 1..r.a.cols() {
                    if !(r.a.get(i, j) % &d).is_zero() {
                        let one = BigInt::from(-1);
                        r.row_op(t, i, &one, t); // row t += row i
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if r.a.get(t, t).is_negative() {
            r.negate_row(t);
        }
        rank += 1;
    }
    let diag: Vec<BigInt> = (0..rank).map(|t| r.a.get(t, t).clone()).collect();
    Snf {
        d: r.a,
        rank,
        diag,
        u: r.u,
        u_inv: r.u_inv,
        v: r.v,
        v_inv: r.v_inv,
    }
}

/// Full Smith decomposition `u * a * v = d` with both transforms.
pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    smith_with_options(
        a,
        SnfOptions {
            u: true,
            u_inv: false,
            v: true,
            v_inv: false,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::SplitMix64;
    use num_integer::Integer;

    /// Independent oracle: d_1 * ... * d_k = gcd of all k x k minors.
    fn minor_gcd_diag(a: &IntMatrix) -> Vec<BigInt> {
        fn minors(a: &IntMatrix, k: usize) -> BigInt {
            // gcd over all k x k minors, by enumeration.
            fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
                if k == 0 {
                    return vec![vec![]];
                }
                if k > n {
                    return vec![];
                }
                let mut out = Vec::new();
                let mut idx: Vec<usize> = (0..k).collect();
                loop {
                    out.push(idx.clone());
                    let mut i = k;
                    while i > 0 {
                        i -= 1;
                        if idx[i] != i + n - k {
                            idx[i] += 1;
                            for j in i + 1..k {
                                idx[j] = idx[j - 1] + 1;
                            }
                            break;
                        }
                        if i == 0 {
                            return out;
                        }
                    }
                }
            }
            fn det(a: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
                if rows.is_empty() {
                    return BigInt::one();
                }
                let mut acc = BigInt::zero();
                let sub_rows = &rows[1..];
                for (c, &j) in cols.iter().enumerate() {
                    let v = a.get(rows[0], j);
                    if v.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols
                        .iter()
                        .enumerate()
                        .filter(|&(cc, _)| cc != c)
                        .map(|(_, &x)| x)
                        .collect();
                    let minor = det(a, sub_rows, &rest);
                    if c % 2 == 0 {
                        acc += v * minor;
                    } else {
                        acc -= v * minor;
                    }
                }
                acc
            }
            let mut g = BigInt::zero();
            for rows in combos(a.rows(), k) {
                for cols in combos(a.cols(), k) {
                    g = g.gcd(&det(a, &rows, &cols));
                }
            }
            g
        }
        let mut out = Vec::new();
        let mut prev = BigInt::one();
        for k in 1..=a.rows().min(a.cols()) {
            let g = minors(a, k);
            if g.is_zero() {
                break;
            }
            out.push(&g / &prev);
            prev = g;
        }
        out
    }

    fn check_snf(a: &IntMatrix) {
        let snf = smith_normal_form(a);
        let u = snf.u.as_ref().unwrap();
        let v = snf.v.as_ref().unwrap();
        assert_eq!(u.mul(a).mul(v), snf.d, "U*A*V != D");
        for t in 0..snf.rank.saturating_sub(1) {
            assert!(
                (&snf.diag[t + 1] % &snf.diag[t]).is_zero(),
                "divisibility chain broken"
            );
        }
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn identity_is_fixed() {
        let a = IntMatrix::identity(4);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.d, a);
        assert_eq!(snf.rank, 4);
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::zero(3, 2);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.rank, 0);
        assert!(snf.d.is_zero());
    }

    #[test]
    fn worked_example() {
        // gcd of entries is 2, |det| = 8, so D = diag(2, 4).
        let a = IntMatrix::from_rows(vec![vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diag, vec![BigInt::from(2), BigInt::from(4)]);
        check_snf(&a);
        assert_eq!(minor_gcd_diag(&a), snf.diag);
    }

    #[test]
    fn random_matrices_against_minor_oracle() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..60 {
            let rows = 1 + (rng.below(4) as usize);
            let cols = 1 + (rng.below(4) as usize);
            let a = IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.range_i64(-6, 6)));
            let snf = smith_normal_form(&a);
            check_snf(&a);
            assert_eq!(minor_gcd_diag(&a), snf.diag, "oracle mismatch for {a:?}");
        }
    }

    #[test]
    fn transforms_and_inverses() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..20 {
            let a = IntMatrix::from_fn(5, 4, |_, _| BigInt::from(rng.range_i64(-9, 9)));
            let snf = smith_with_options(&a, SnfOptions::all());
            let u = snf.u.as_ref().unwrap();
            let ui = snf.u_inv.as_ref().unwrap();
            let v = snf.v.as_ref().unwrap();
            let vi = snf.v_inv.as_ref().unwrap();
            assert_eq!(u.mul(ui), IntMatrix::identity(5));
            assert_eq!(v.mul(vi), IntMatrix::identity(4));
            assert_eq!(u.mul(&a).mul(v), snf.d);
        }
    }
}
