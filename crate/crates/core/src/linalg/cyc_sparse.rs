//! Sparse fraction-free elimination over `Z[zeta_l]`, used for ranks of the
//! large twisted complexes (bar complexes of groups of order up to 9 reach
//! tens of thousands of columns).
//!
//! Rows live over the ring `Z[zeta_l]`: denominators are cleared on entry and
//! every admitted pivot row is divided by the gcd of its integer coordinates.
//! When a pivot's leading coefficient is a unit of `Z[zeta_l]` (the common
//! case: roots of unity and their negatives), the row is scaled by the exact
//! integral inverse so reductions against it are plain subtract-multiples;
//! non-unit leads get an exact-division path through the conjugate product
//! and fall back to cross-multiplication. Scaling rows by nonzero ring
//! elements never changes the row-space rank over the fraction field, so the
//! computed rank is the exact rank over `Q(zeta_l)`.
//!
//! The row being reduced sits in a dense accumulator with `i64` coordinates;
//! every mutation is preceded by a magnitude check, and rows that outgrow the
//! machine range escalate to an exact `BigInt` sparse path. There is no
//! floating point and no modular shortcut anywhere.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::CyclotomicNumber;
use crate::Result;

const MAX_ELL: usize = 16;

/// Coordinate block product in `Z[zeta_l]` (checked i64): cyclic convolution
/// mod `x^l - 1`, then `zeta^{l-1} = -(1 + ... + zeta^{l-2})`.
#[inline]
fn zmul_small(a: &[i128], b: &[i128], ell: usize, out: &mut [i128]) -> Option<()> {
    match ell {
        2 => {
            out[0] = a[0].checked_mul(b[0])?;
            Some(())
        }
        3 => {
            // (a0 + a1 z)(b0 + b1 z) with z^2 = -1 - z
            let t = a[1].checked_mul(b[1])?;
            out[0] = a[0].checked_mul(b[0])?.checked_sub(t)?;
            out[1] = a[0]
                .checked_mul(b[1])?
                .checked_add(a[1].checked_mul(b[0])?)?
                .checked_sub(t)?;
            Some(())
        }
        _ => {
            let d = ell - 1;
            let mut tmp = [0i128; MAX_ELL];
            for i in 0..d {
                let ai = a[i];
                if ai == 0 {
                    continue;
                }
                for j in 0..d {
                    let bj = b[j];
                    if bj == 0 {
                        continue;
                    }
                    let k = (i + j) % ell;
                    tmp[k] = tmp[k].checked_add(ai.checked_mul(bj)?)?;
                }
            }
            let top = tmp[ell - 1];
            for k in 0..d {
                out[k] = tmp[k].checked_sub(top)?;
            }
            Some(())
        }
    }
}

fn zmul_big(a: &[BigInt], b: &[BigInt], ell: usize, out: &mut [BigInt]) {
    let d = ell - 1;
    let mut tmp = vec![BigInt::zero(); ell];
    for i in 0..d {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..d {
            if b[j].is_zero() {
                continue;
            }
            tmp[(i + j) % ell] += &a[i] * &b[j];
        }
    }
    let top = tmp[ell - 1].clone();
    for k in 0..d {
        out[k] = std::mem::take(&mut tmp[k]) - &top;
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let mut x = a.unsigned_abs();
    let mut y = b.unsigned_abs();
    while y != 0 {
        let t = x % y;
        x = y;
        y = t;
    }
    x as i128
}

fn max_abs(v: &[i128]) -> u128 {
    v.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
}

/// Galois conjugate `sigma_k: zeta -> zeta^k` of a coordinate block.
fn conjugate_small(a: &[i128], k: usize, ell: usize) -> [i128; MAX_ELL] {
    let d = ell - 1;
    let mut acc = [0i128; MAX_ELL];
    for (i, &c) in a.iter().enumerate().take(d) {
        acc[(i * k) % ell] += c;
    }
    let top = acc[ell - 1];
    let mut out = [0i128; MAX_ELL];
    for i in 0..d {
        out[i] = acc[i] - top;
    }
    out
}

/// Product of the Galois conjugates `sigma_2(a) * ... * sigma_{l-1}(a)` and
/// the field norm `a * that` (a rational integer). `None` on i64 overflow.
fn conjugate_product_and_norm(a: &[i128], ell: usize) -> Option<(Vec<i128>, i128)> {
    let d = ell - 1;
    let mut prod = [0i128; MAX_ELL];
    prod[0] = 1;
    for k in 2..ell {
        let conj = conjugate_small(a, k, ell);
        let mut next = [0i128; MAX_ELL];
        zmul_small(&prod[..d], &conj[..d], ell, &mut next[..d])?;
        prod = next;
    }
    let mut norm = [0i128; MAX_ELL];
    zmul_small(a, &prod[..d], ell, &mut norm[..d])?;
    if norm[1..d].iter().any(|&x| x != 0) {
        return None;
    }
    Some((prod[..d].to_vec(), norm[0]))
}

/// Field norm of a block (a positive rational integer for nonzero input
/// when l is odd; for l = 2 it is the value itself).
fn norm_of(a: &[i128], ell: usize) -> Option<i128> {
    let (_, n) = conjugate_product_and_norm(a, ell)?;
    Some(n)
}

/// If `a` is a unit of `Z[zeta_l]`, returns its exact integral inverse.
fn try_unit_inverse(a: &[i128], ell: usize) -> Option<Vec<i128>> {
    let (prod, norm) = conjugate_product_and_norm(a, ell)?;
    match norm {
        1 => Some(prod),
        -1 => Some(prod.iter().map(|&x| -x).collect()),
        _ => None,
    }
}

#[derive(Debug, Clone)]
enum Pivot {
    /// Leading coefficient exactly 1; tail columns strictly greater than the
    /// pivot column.
    Monic {
        tail_cols: Vec<u32>,
        tail: Vec<i128>,
        tail_max: u128,
    },
    /// General small row, with the conjugate product and field norm of the
    /// lead precomputed for the exact-division reduction path.
    Small {
        lead: Vec<i128>,
        lead_conj: Vec<i128>,
        lead_norm: i128,
        tail_cols: Vec<u32>,
        tail: Vec<i128>,
        tail_max: u128,
    },
    /// Escalated row.
    Big {
        lead: Vec<BigInt>,
        tail_cols: Vec<u32>,
        tail: Vec<BigInt>,
    },
}

enum Reduce {
    Done,
    /// A Euclidean step left a smaller-norm remainder at the column; the
    /// caller swaps the working row with the pivot and continues.
    Remainder,
    Shrink,
    Escalate,
}

/// Incremental sparse echelon over `Z[zeta_l]`. The pivot of a row is its
/// leftmost nonzero column; the pivot table is indexed by column.
pub struct CycEliminator {
    ell: usize,
    d: usize,
    width: usize,
    pivots: Vec<Option<Pivot>>,
    rank: usize,
    /// Dense accumulator for the row under reduction, `width * d`
    /// coordinates, zero between insertions.
    dense: Vec<i128>,
    /// Columns whose blocks may be nonzero, min-heap (lazily deduplicated).
    agenda: BinaryHeap<Reverse<u32>>,
    /// Every column ever written during the current insertion (no
    /// duplicates; `in_row` tracks membership).
    touched: Vec<u32>,
    in_row: Vec<bool>,
    /// Conservative upper bound on |coordinate| in the accumulator.
    cur_max: u128,
    #[doc(hidden)]
    pub stats: [u64; 7], // monic, exactdiv, general, shrink, big-entries, tail-entries, monic-pivots
}

impl CycEliminator {
    pub fn new(ell: u64, width: usize) -> Self {
        let ell = ell as usize;
        assert!((2..=MAX_ELL - 2).contains(&ell));
        let d = ell - 1;
        CycEliminator {
            ell,
            d,
            width,
            pivots: vec![None; width],
            rank: 0,
            dense: vec![0i128; width * d],
            agenda: BinaryHeap::new(),
            touched: Vec::new(),
            in_row: vec![false; width],
            cur_max: 0,
            stats: [0; 7],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Feeds one sparse row of `Q(zeta_l)` values. Returns whether the rank
    /// increased.
    pub fn insert_cyc_row(&mut self, entries: &[(usize, CyclotomicNumber)]) -> Result<bool> {
        // Clear denominators: multiply the row by the lcm of all coordinate
        // denominators (a nonzero rational, rank-neutral).
        let mut lcm = BigInt::from(1);
        for (_, v) in entries {
            for c in v.coefficients() {
                lcm = lcm.lcm(c.denom());
            }
        }
        let mut cols = Vec::with_capacity(entries.len());
        let mut flat: Vec<BigInt> = Vec::with_capacity(entries.len() * self.d);
        for (c, v) in entries {
            if v.is_zero() {
                continue;
            }
            cols.push(*c as u32);
            for coord in v.coefficients() {
                flat.push(coord.numer() * (&lcm / coord.denom()));
            }
        }
        debug_assert!(cols.windows(2).all(|w| w[0] < w[1]));
        // fast path: machine-sized coordinates go through the dense engine
        if flat.iter().all(|x| x.to_i64().is_some()) {
            let d = self.d;
            let blocks: Vec<(usize, Vec<i128>)> = cols
                .iter()
                .enumerate()
                .map(|(bi, &c)| {
                    (
                        c as usize,
                        flat[bi * d..(bi + 1) * d]
                            .iter()
                            .map(|x| x.to_i64().unwrap() as i128)
                            .collect(),
                    )
                })
                .collect();
            return Ok(self.insert_int_row(blocks));
        }
        Ok(self.insert_big(cols, flat))
    }

    /// Feeds a row of integer `Z[zeta_l]` coordinate blocks `(col, coords)`,
    /// sorted by column.
    pub fn insert_int_row(&mut self, entries: Vec<(usize, Vec<i128>)>) -> bool {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        let d = self.d;
        if entries.is_empty() {
            return false;
        }
        self.begin_row();
        for (c, block) in &entries {
            debug_assert_eq!(block.len(), d);
            if block.iter().all(|&x| x == 0) {
                continue;
            }
            let dst = &mut self.dense[c * d..(c + 1) * d];
            dst.copy_from_slice(block);
            self.cur_max = self.cur_max.max(max_abs(dst));
            self.agenda.push(Reverse(*c as u32));
            self.touched.push(*c as u32);
            self.in_row[*c] = true;
        }
        self.run_dense()
    }

    fn begin_row(&mut self) {
        debug_assert!(self.agenda.is_empty());
        self.cur_max = 0;
        self.touched.clear();
    }

    /// Zeroes every touched block and empties the agenda.
    fn wipe(&mut self) {
        let d = self.d;
        for &c in &self.touched {
            self.dense[c as usize * d..(c as usize + 1) * d].fill(0);
            self.in_row[c as usize] = false;
        }
        self.touched.clear();
        self.agenda.clear();
    }

    /// Heap-driven reduction pass. The accumulator and agenda must already
    /// hold the row. Leaves both empty.
    fn run_dense(&mut self) -> bool {
        let d = self.d;
        let mut shrunk_at: Option<u32> = None;
        while let Some(Reverse(c)) = self.agenda.pop() {
            while self.agenda.peek() == Some(&Reverse(c)) {
                self.agenda.pop();
            }
            let cu = c as usize;
            if self.dense[cu * d..(cu + 1) * d].iter().all(|&x| x == 0) {
                continue;
            }
            let Some(pivot) = self.pivots[cu].take() else {
                let row = self.extract_remaining(c);
                self.wipe();
                self.pivots[cu] = Some(self.normalize_pivot(row));
                self.rank += 1;
                return true;
            };
            let outcome = self.reduce_at(cu, &pivot);
            match outcome {
                Reduce::Remainder => {
                    // swap: the working row (smaller lead norm) becomes the
                    // pivot; the old pivot becomes the working row
                    let row = self.extract_remaining(c);
                    self.wipe();
                    self.pivots[cu] = Some(self.normalize_pivot(row));
                    if !self.load_pivot(cu, pivot) {
                        // big old pivot: hand it to the big path
                        unreachable!("monic/small pivots only reach Remainder");
                    }
                    shrunk_at = None;
                    continue;
                }
                _ => {
                    self.pivots[cu] = Some(pivot);
                }
            }
            match outcome {
                Reduce::Remainder => unreachable!(),
                Reduce::Done => {}
                Reduce::Shrink if shrunk_at != Some(c) => {
                    self.stats[3] += 1;
                    self.content_reduce();
                    shrunk_at = Some(c);
                    self.agenda.push(Reverse(c)); // retry once after shrinking
                }
                Reduce::Shrink | Reduce::Escalate => {
                    let (cols, flat) = self.extract_remaining_big(c);
                    self.wipe();
                    return self.insert_big(cols, flat);
                }
            }
        }
        self.wipe();
        false
    }

    /// One reduction step at column `c`. Mutates the accumulator only when
    /// the magnitude pre-check guarantees no overflow, so the accumulator
    /// always holds an exact (scaled) partial reduction of the input row.
    fn reduce_at(&mut self, c: usize, pivot: &Pivot) -> Reduce {
        let d = self.d;
        let ell = self.ell;
        match pivot {
            Pivot::Monic {
                tail_cols,
                tail,
                tail_max,
            } => {
                let alpha_max = max_abs(&self.dense[c * d..(c + 1) * d]);
                let grow = (2 * d as u128)
                    .saturating_mul(alpha_max)
                    .saturating_mul(*tail_max);
                let bound = self.cur_max.saturating_add(grow);
                if bound >= i128::MAX as u128 / 2 {
                    return Reduce::Shrink;
                }
                let mut alpha = [0i128; MAX_ELL];
                alpha[..d].copy_from_slice(&self.dense[c * d..(c + 1) * d]);
                self.dense[c * d..(c + 1) * d].fill(0);
                self.apply_tail(&alpha[..d], tail_cols, tail);
                self.cur_max = bound;
                self.stats[0] += 1;
                self.stats[5] += tail_cols.len() as u64;
                Reduce::Done
            }
            Pivot::Small {
                lead,
                lead_conj,
                lead_norm,
                tail_cols,
                tail,
                tail_max,
            } => {
                // Exact-division fast path: when lead | alpha in Z[zeta_l],
                // subtract (alpha / lead) * pivot locally.
                let alpha_max = max_abs(&self.dense[c * d..(c + 1) * d]);
                let conj_max = max_abs(lead_conj);
                if (2 * d as u128).saturating_mul(alpha_max).saturating_mul(conj_max)
                    < i128::MAX as u128 / 2
                {
                    let mut qnum = [0i128; MAX_ELL];
                    zmul_small(
                        &self.dense[c * d..(c + 1) * d],
                        lead_conj,
                        ell,
                        &mut qnum[..d],
                    )
                    .expect("pre-checked multiply");
                    if qnum[..d].iter().all(|x| x % lead_norm == 0) {
                        let mut q = [0i128; MAX_ELL];
                        for k in 0..d {
                            q[k] = qnum[k] / lead_norm;
                        }
                        let grow = (2 * d as u128)
                            .saturating_mul(max_abs(&q[..d]))
                            .saturating_mul(*tail_max);
                        let bound = self.cur_max.saturating_add(grow);
                        if bound < i128::MAX as u128 / 2 {
                            self.dense[c * d..(c + 1) * d].fill(0);
                            self.apply_tail(&q[..d], tail_cols, tail);
                            self.cur_max = bound;
                            self.stats[1] += 1;
                            self.stats[5] += tail_cols.len() as u64;
                            return Reduce::Done;
                        }
                    }
                }
                // Euclidean step: alpha = q * lead + r with N(r) < N(lead);
                // subtract q * pivot locally and report the remainder so the
                // caller can swap rows (classical Euclidean elimination).
                if let Some(done) = self.try_euclid_step(
                    c, lead, lead_conj, *lead_norm, tail_cols, tail, *tail_max,
                ) {
                    return done;
                }
                // General path: row <- lead * row - alpha * pivot.
                let lead_max = max_abs(lead);
                let scaled_max = (2 * d as u128)
                    .saturating_mul(self.cur_max)
                    .saturating_mul(lead_max);
                let grow = (2 * d as u128)
                    .saturating_mul(alpha_max)
                    .saturating_mul(*tail_max);
                let bound = scaled_max.saturating_add(grow);
                if bound >= i128::MAX as u128 / 2 {
                    return Reduce::Shrink;
                }
                let mut alpha = [0i128; MAX_ELL];
                alpha[..d].copy_from_slice(&self.dense[c * d..(c + 1) * d]);
                let mut buf = [0i128; MAX_ELL];
                for ti in 0..self.touched.len() {
                    let tc = self.touched[ti] as usize;
                    if tc < c {
                        continue;
                    }
                    let src = &self.dense[tc * d..(tc + 1) * d];
                    if src.iter().all(|&x| x == 0) {
                        continue;
                    }
                    zmul_small(lead, src, ell, &mut buf[..d]).expect("pre-checked multiply");
                    self.dense[tc * d..(tc + 1) * d].copy_from_slice(&buf[..d]);
                }
                self.dense[c * d..(c + 1) * d].fill(0);
                self.apply_tail(&alpha[..d], tail_cols, tail);
                self.cur_max = bound;
                self.stats[2] += 1;
                self.stats[5] += tail_cols.len() as u64;
                Reduce::Done
            }
            Pivot::Big { .. } => Reduce::Escalate,
        }
    }

    /// Rounded division of the accumulator block at `c` by the pivot lead:
    /// `alpha = q * lead + r`. When the remainder has strictly smaller norm
    /// the multiple of the pivot is subtracted locally and `Some(Remainder)`
    /// (or `Some(Done)` when r = 0) is returned; `None` falls back to the
    /// general path.
    #[allow(clippy::too_many_arguments)]
    fn try_euclid_step(
        &mut self,
        c: usize,
        lead: &[i128],
        lead_conj: &[i128],
        lead_norm: i128,
        tail_cols: &[u32],
        tail: &[i128],
        tail_max: u128,
    ) -> Option<Reduce> {
        let d = self.d;
        let ell = self.ell;
        let alpha_max = max_abs(&self.dense[c * d..(c + 1) * d]);
        let conj_max = max_abs(lead_conj);
        if (2 * d as u128)
            .saturating_mul(alpha_max)
            .saturating_mul(conj_max)
            >= i128::MAX as u128 / 2
        {
            return None;
        }
        let mut qnum = [0i128; MAX_ELL];
        zmul_small(
            &self.dense[c * d..(c + 1) * d],
            lead_conj,
            ell,
            &mut qnum[..d],
        )?;
        // round each coordinate of qnum / lead_norm to the nearest integer
        let n = lead_norm;
        let (nabs, half) = (n.checked_abs()?, n.checked_abs()? / 2);
        let mut q = [0i128; MAX_ELL];
        for k in 0..d {
            let x = if n > 0 { qnum[k] } else { qnum[k].checked_neg()? };
            q[k] = (x.checked_add(half)?).div_euclid(nabs);
        }
        if q[..d].iter().all(|&x| x == 0) {
            return None; // no progress possible
        }
        // r = alpha - q * lead
        let mut qlead = [0i128; MAX_ELL];
        zmul_small(&q[..d], lead, ell, &mut qlead[..d])?;
        let mut r = [0i128; MAX_ELL];
        for k in 0..d {
            r[k] = self.dense[c * d + k].checked_sub(qlead[k])?;
        }
        // require a genuine norm drop (guaranteed for the norm-Euclidean
        // small cyclotomics; checked for safety everywhere)
        if r[..d].iter().any(|&x| x != 0) {
            let rn = norm_of(&r[..d], ell)?.checked_abs()?;
            if rn >= lead_norm.checked_abs()? {
                return None;
            }
        }
        let grow = (2 * d as u128)
            .saturating_mul(max_abs(&q[..d]))
            .saturating_mul(tail_max);
        let bound = self.cur_max.saturating_add(grow);
        if bound >= i128::MAX as u128 / 2 {
            return Some(Reduce::Shrink);
        }
        self.dense[c * d..(c + 1) * d].copy_from_slice(&r[..d]);
        self.apply_tail(&q[..d], tail_cols, tail);
        self.cur_max = bound.max(max_abs(&r[..d]));
        if r[..d].iter().all(|&x| x == 0) {
            Some(Reduce::Done)
        } else {
            Some(Reduce::Remainder)
        }
    }

    /// Loads a pivot row into the (empty) accumulator as the working row.
    fn load_pivot(&mut self, c: usize, pivot: Pivot) -> bool {
        let d = self.d;
        debug_assert!(self.agenda.is_empty() && self.touched.is_empty());
        self.cur_max = 0;
        match pivot {
            Pivot::Monic { tail_cols, tail, .. } => {
                self.dense[c * d] = 1;
                self.seed_col(c as u32);
                for (bi, &tc) in tail_cols.iter().enumerate() {
                    self.dense[tc as usize * d..(tc as usize + 1) * d]
                        .copy_from_slice(&tail[bi * d..(bi + 1) * d]);
                    self.seed_col(tc);
                }
                self.cur_max = max_abs(&tail).max(1);
                true
            }
            Pivot::Small {
                lead,
                tail_cols,
                tail,
                tail_max,
                ..
            } => {
                self.dense[c * d..(c + 1) * d].copy_from_slice(&lead);
                self.seed_col(c as u32);
                for (bi, &tc) in tail_cols.iter().enumerate() {
                    self.dense[tc as usize * d..(tc as usize + 1) * d]
                        .copy_from_slice(&tail[bi * d..(bi + 1) * d]);
                    self.seed_col(tc);
                }
                self.cur_max = tail_max.max(max_abs(&lead));
                true
            }
            Pivot::Big { .. } => false,
        }
    }

    fn seed_col(&mut self, c: u32) {
        self.agenda.push(Reverse(c));
        if !self.in_row[c as usize] {
            self.touched.push(c);
            self.in_row[c as usize] = true;
        }
    }

    /// `dense -= factor * tail`, pushing newly touched columns onto the
    /// agenda.
    #[inline]
    fn apply_tail(&mut self, factor: &[i128], tail_cols: &[u32], tail: &[i128]) {
        let d = self.d;
        let ell = self.ell;
        let mut buf = [0i128; MAX_ELL];
        for (bi, &tc) in tail_cols.iter().enumerate() {
            let pb = &tail[bi * d..(bi + 1) * d];
            zmul_small(factor, pb, ell, &mut buf[..d]).expect("pre-checked multiply");
            let dst = &mut self.dense[tc as usize * d..(tc as usize + 1) * d];
            let was_zero = dst.iter().all(|&x| x == 0);
            for k in 0..d {
                dst[k] -= buf[k];
            }
            if was_zero {
                self.agenda.push(Reverse(tc));
                if !self.in_row[tc as usize] {
                    self.touched.push(tc);
                    self.in_row[tc as usize] = true;
                }
            }
        }
    }

    /// Divides the whole touched region by its coordinate gcd and refreshes
    /// the exact magnitude bound.
    fn content_reduce(&mut self) {
        let d = self.d;
        let mut g: i128 = 0;
        'gcd: for &c in &self.touched {
            for &x in &self.dense[c as usize * d..(c as usize + 1) * d] {
                if x != 0 {
                    g = gcd_i128(g, x);
                    if g == 1 {
                        break 'gcd;
                    }
                }
            }
        }
        let mut exact: u128 = 0;
        for &c in &self.touched {
            for x in self.dense[c as usize * d..(c as usize + 1) * d].iter_mut() {
                if *x != 0 && g > 1 {
                    *x /= g;
                }
                exact = exact.max(x.unsigned_abs());
            }
        }
        self.cur_max = exact;
    }

    /// Extracts the still-pending part of the accumulator (block `c` plus
    /// whatever the agenda holds), sorted by column.
    fn extract_remaining(&mut self, c: u32) -> (Vec<u32>, Vec<i128>) {
        let d = self.d;
        let mut cols: Vec<u32> = vec![c];
        while let Some(Reverse(x)) = self.agenda.pop() {
            if cols.last() != Some(&x) {
                cols.push(x);
            }
        }
        let mut out_cols = Vec::with_capacity(cols.len());
        let mut flat = Vec::with_capacity(cols.len() * d);
        for &cc in &cols {
            let block = &self.dense[cc as usize * d..(cc as usize + 1) * d];
            if block.iter().any(|&x| x != 0) {
                out_cols.push(cc);
                flat.extend_from_slice(block);
            }
        }
        (out_cols, flat)
    }

    fn extract_remaining_big(&mut self, c: u32) -> (Vec<u32>, Vec<BigInt>) {
        let (cols, flat) = self.extract_remaining(c);
        (cols, flat.into_iter().map(BigInt::from).collect())
    }

    /// Content-reduce an extracted row and normalize the lead to 1 when it
    /// is a unit of the ring.
    fn normalize_pivot(&self, (cols, mut flat): (Vec<u32>, Vec<i128>)) -> Pivot {
        let d = self.d;
        let mut g: i128 = 0;
        for &x in &flat {
            g = gcd_i128(g, x);
            if g == 1 {
                break;
            }
        }
        if g > 1 {
            for x in flat.iter_mut() {
                *x /= g;
            }
        }
        let lead: Vec<i128> = flat[..d].to_vec();
        if lead[0] == 1 && lead[1..].iter().all(|&x| x == 0) {
            let tail = flat[d..].to_vec();
            return Pivot::Monic {
                tail_cols: cols[1..].to_vec(),
                tail_max: max_abs(&tail),
                tail,
            };
        }
        if let Some(inv) = try_unit_inverse(&lead, self.ell) {
            let mut buf = [0i128; MAX_ELL];
            let mut scaled = Vec::with_capacity(flat.len());
            let mut ok = true;
            for bi in 0..cols.len() {
                if zmul_small(&inv, &flat[bi * d..(bi + 1) * d], self.ell, &mut buf[..d]).is_none()
                {
                    ok = false;
                    break;
                }
                scaled.extend_from_slice(&buf[..d]);
            }
            if ok && scaled[0] == 1 && scaled[1..d].iter().all(|&x| x == 0) {
                let tail = scaled[d..].to_vec();
                return Pivot::Monic {
                    tail_cols: cols[1..].to_vec(),
                    tail_max: max_abs(&tail),
                    tail,
                };
            }
        }
        if let Some((conj, norm)) = conjugate_product_and_norm(&lead, self.ell) {
            let tail = flat[d..].to_vec();
            return Pivot::Small {
                lead,
                lead_conj: conj,
                lead_norm: norm,
                tail_cols: cols[1..].to_vec(),
                tail_max: max_abs(&tail),
                tail,
            };
        }
        // conjugate product overflowed; keep the row exact on the big path
        Pivot::Big {
            lead: lead.iter().map(|&x| BigInt::from(x)).collect(),
            tail_cols: cols[1..].to_vec(),
            tail: flat[d..].iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    /// Sparse `BigInt` path: exact fallback for rows that left i64 range or
    /// met a Big pivot. `cols`/`flat` sorted, lead first. Once here, a row
    /// stays big until resolved; admitted pivots demote when they fit.
    fn insert_big(&mut self, mut cols: Vec<u32>, mut flat: Vec<BigInt>) -> bool {
        self.stats[4] += 1;
        let d = self.d;
        loop {
            // content reduction, dropping zero blocks
            let mut keep_cols = Vec::with_capacity(cols.len());
            let mut keep: Vec<BigInt> = Vec::with_capacity(flat.len());
            for (bi, &c) in cols.iter().enumerate() {
                let block = &flat[bi * d..(bi + 1) * d];
                if block.iter().any(|x| !x.is_zero()) {
                    keep_cols.push(c);
                    keep.extend_from_slice(block);
                }
            }
            if keep_cols.is_empty() {
                return false;
            }
            let mut g = BigInt::zero();
            for x in &keep {
                g = g.gcd(x);
                if g == BigInt::from(1) {
                    break;
                }
            }
            if g > BigInt::from(1) {
                for x in keep.iter_mut() {
                    *x = &*x / &g;
                }
            }
            let lead_col = keep_cols[0] as usize;
            match self.pivots[lead_col].take() {
                None => {
                    if keep.iter().all(|x| x.to_i128().is_some()) {
                        let small: Vec<i128> = keep.iter().map(|x| x.to_i128().unwrap()).collect();
                        self.pivots[lead_col] = Some(self.normalize_pivot((keep_cols, small)));
                    } else {
                        self.pivots[lead_col] = Some(Pivot::Big {
                            lead: keep[..d].to_vec(),
                            tail_cols: keep_cols[1..].to_vec(),
                            tail: keep[d..].to_vec(),
                        });
                    }
                    self.rank += 1;
                    return true;
                }
                Some(pivot) => {
                    let (pl, pc, pt) = pivot_to_big(&pivot, d);
                    self.pivots[lead_col] = Some(pivot);
                    let (nc, nf) = combine_big(d, self.ell, &keep_cols, &keep, (&pl, &pc, &pt));
                    cols = nc;
                    flat = nf;
                }
            }
        }
    }
}

fn pivot_to_big(p: &Pivot, d: usize) -> (Vec<BigInt>, Vec<u32>, Vec<BigInt>) {
    match p {
        Pivot::Monic {
            tail_cols, tail, ..
        } => {
            let mut lead = vec![BigInt::zero(); d];
            lead[0] = BigInt::from(1);
            (
                lead,
                tail_cols.clone(),
                tail.iter().map(|&x| BigInt::from(x)).collect(),
            )
        }
        Pivot::Small {
            lead,
            tail_cols,
            tail,
            ..
        } => (
            lead.iter().map(|&x| BigInt::from(x)).collect(),
            tail_cols.clone(),
            tail.iter().map(|&x| BigInt::from(x)).collect(),
        ),
        Pivot::Big {
            lead,
            tail_cols,
            tail,
        } => (lead.clone(), tail_cols.clone(), tail.clone()),
    }
}

/// `pivot_lead * row - row_lead * pivot`; both share the same lead column,
/// which cancels exactly. Row given with lead first, pivot as (lead, tail).
fn combine_big(
    d: usize,
    ell: usize,
    rcols: &[u32],
    rflat: &[BigInt],
    (plead, pcols, ptail): (&[BigInt], &[u32], &[BigInt]),
) -> (Vec<u32>, Vec<BigInt>) {
    let a = plead; // scales the row tail
    let b = &rflat[0..d]; // row lead, scales the pivot tail
    let mut cols = Vec::new();
    let mut flat: Vec<BigInt> = Vec::new();
    let mut i = 1usize;
    let mut j = 0usize;
    let mut buf1 = vec![BigInt::zero(); d];
    let mut buf2 = vec![BigInt::zero(); d];
    while i < rcols.len() || j < pcols.len() {
        let rc = rcols.get(i).copied().unwrap_or(u32::MAX);
        let pc = pcols.get(j).copied().unwrap_or(u32::MAX);
        if rc < pc {
            zmul_big(a, &rflat[i * d..(i + 1) * d], ell, &mut buf1);
            if buf1.iter().any(|x| !x.is_zero()) {
                cols.push(rc);
                flat.extend(buf1.iter().cloned());
            }
            i += 1;
        } else if pc < rc {
            zmul_big(b, &ptail[j * d..(j + 1) * d], ell, &mut buf2);
            if buf2.iter().any(|x| !x.is_zero()) {
                cols.push(pc);
                flat.extend(buf2.iter().map(|x| -x));
            }
            j += 1;
        } else {
            zmul_big(a, &rflat[i * d..(i + 1) * d], ell, &mut buf1);
            zmul_big(b, &ptail[j * d..(j + 1) * d], ell, &mut buf2);
            let mut any = false;
            for k in 0..d {
                buf1[k] = std::mem::take(&mut buf1[k]) - &buf2[k];
                any |= !buf1[k].is_zero();
            }
            if any {
                cols.push(rc);
                flat.extend(buf1.iter().cloned());
            }
            i += 1;
            j += 1;
        }
    }
    (cols, flat)
}

impl std::fmt::Debug for CycEliminator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CycEliminator(l={}, width={}, rank={})",
            self.ell, self.width, self.rank
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cyc_dense::cyc_rank;
    use crate::util::SplitMix64;

    fn rank_via_sparse(ell: u64, rows: &[Vec<CyclotomicNumber>]) -> usize {
        let width = rows.first().map_or(0, |r| r.len());
        let mut e = CycEliminator::new(ell, width);
        for row in rows {
            let entries: Vec<(usize, CyclotomicNumber)> = row
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect();
            e.insert_cyc_row(&entries).unwrap();
        }
        e.rank()
    }

    #[test]
    fn agrees_with_dense_on_random_matrices() {
        let mut rng = SplitMix64::new(2024);
        for ell in [2u64, 3, 5, 7] {
            for _ in 0..30 {
                let rows = 1 + rng.below(5) as usize;
                let cols = 1 + rng.below(5) as usize;
                let m: Vec<Vec<CyclotomicNumber>> = (0..rows)
                    .map(|_| {
                        (0..cols)
                            .map(|_| {
                                let mut v = CyclotomicNumber::zero(ell);
                                for k in 0..(ell - 1) {
                                    if rng.below(2) == 0 {
                                        let c = CyclotomicNumber::from_integer(
                                            ell,
                                            rng.range_i64(-3, 3),
                                        );
                                        let zk = CyclotomicNumber::root_of_unity(ell, k as i64);
                                        v = v.checked_add(&c.checked_mul(&zk).unwrap()).unwrap();
                                    }
                                }
                                v
                            })
                            .collect()
                    })
                    .collect();
                let dense = cyc_rank(ell, m.clone()).unwrap();
                let sparse = rank_via_sparse(ell, &m);
                assert_eq!(dense, sparse, "rank mismatch at l={ell}");
            }
        }
    }

    #[test]
    fn int_row_feed_agrees_with_cyc_feed() {
        let mut rng = SplitMix64::new(77);
        for _ in 0..20 {
            let rows = 1 + rng.below(6) as usize;
            let cols = 1 + rng.below(6) as usize;
            let data: Vec<Vec<(i64, i64)>> = (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| (rng.range_i64(-4, 4), rng.range_i64(-4, 4)))
                        .collect()
                })
                .collect();
            let mut a = CycEliminator::new(3, cols);
            let mut b = CycEliminator::new(3, cols);
            for r in &data {
                let ints: Vec<(usize, Vec<i128>)> = r
                    .iter()
                    .enumerate()
                    .filter(|(_, &(x, y))| x != 0 || y != 0)
                    .map(|(i, &(x, y))| (i, vec![x as i128, y as i128]))
                    .collect();
                a.insert_int_row(ints);
                let cycs: Vec<(usize, CyclotomicNumber)> = r
                    .iter()
                    .enumerate()
                    .filter(|(_, &(x, y))| x != 0 || y != 0)
                    .map(|(i, &(x, y))| {
                        let v = CyclotomicNumber::from_integer(3, x)
                            .checked_add(
                                &CyclotomicNumber::from_integer(3, y)
                                    .checked_mul(&CyclotomicNumber::root_of_unity(3, 1))
                                    .unwrap(),
                            )
                            .unwrap();
                        (i, v)
                    })
                    .collect();
                b.insert_cyc_row(&cycs).unwrap();
            }
            assert_eq!(a.rank(), b.rank());
        }
    }

    #[test]
    fn unit_inverse_detection() {
        let z = [0i128, 1]; // zeta at l=3
        let inv = try_unit_inverse(&z, 3).unwrap();
        let mut out = [0i128; MAX_ELL];
        zmul_small(&z, &inv, 3, &mut out[..2]).unwrap();
        assert_eq!(&out[..2], &[1, 0]);
        assert!(try_unit_inverse(&[1, -1], 3).is_none()); // 1 - zeta, norm 3
        assert!(try_unit_inverse(&[1, 1], 3).is_some()); // 1 + zeta = -zeta^2
        assert!(try_unit_inverse(&[2, 0], 3).is_none());
    }

    #[test]
    fn big_coefficients_escalate_and_stay_exact() {
        let huge = i128::MAX / 3;
        let mut e = CycEliminator::new(3, 2);
        assert!(e.insert_int_row(vec![(0, vec![huge, huge - 1]), (1, vec![1, 0])]));
        assert!(e.insert_int_row(vec![(0, vec![huge - 2, huge]), (1, vec![0, 1])]));
        assert_eq!(e.rank(), 2);
        // a dependent combination must be recognized exactly
        assert!(!e.insert_int_row(vec![(0, vec![huge, huge - 1]), (1, vec![1, 0])]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn mixed_scale_rows() {
        // rows differing by a huge scalar are dependent
        let mut e = CycEliminator::new(2, 3);
        assert!(e.insert_int_row(vec![(0, vec![3]), (2, vec![7])]));
        let m = 1i128 << 90;
        assert!(!e.insert_int_row(vec![(0, vec![3 * m]), (2, vec![7 * m])]));
        assert_eq!(e.rank(), 1);
    }
}
