//! Coset enumeration (HLT-style scan and fill with coincidence handling)
//! over the trivial subgroup, realizing a finite quotient of a presented
//! group as a permutation table.
//!
//! Strategy, fixed for determinism: cosets are processed in definition
//! order; at each coset every relator is scanned and filled in presentation
//! order, then any undefined generator column is filled by definition.
//! Coincidences merge toward the smaller coset index. The closed table is
//! standardized by breadth-first renumbering from coset 0, scanning columns
//! in the order g0, g0^-1, g1, g1^-1, ...

use std::collections::VecDeque;

use crate::complexes::group::GroupTable;
use crate::complexes::presentation::{GroupPresentation, Word};
use crate::error::Error;
use crate::Result;

/// A transitive permutation action of a presented group (on itself, i.e.
/// cosets of the trivial subgroup): one permutation per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    pub n_generators: usize,
    /// Group order.
    pub order: usize,
    /// `forward[g][c]` = image of coset `c` under generator `g`.
    pub forward: Vec<Vec<usize>>,
    /// `backward[g][c]` = image under the inverse of `g`.
    pub backward: Vec<Vec<usize>>,
}

impl CosetTable {
    /// Image of a coset under a signed letter.
    pub fn apply_letter(&self, coset: usize, letter: i32) -> usize {
        let g = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            self.forward[g][coset]
        } else {
            self.backward[g][coset]
        }
    }

    pub fn apply_word(&self, mut coset: usize, w: &Word) -> usize {
        for &l in w.letters() {
            coset = self.apply_letter(coset, l);
        }
        coset
    }

    /// Representative words, one per coset, from the standardizing BFS.
    pub fn representative_words(&self) -> Vec<Word> {
        let mut words: Vec<Option<Word>> = vec![None; self.order];
        words[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            let base = words[c].clone().unwrap();
            for g in 0..self.n_generators {
                for (dir, letter) in [(self.forward[g][c], g as i32 + 1), (self.backward[g][c], -(g as i32 + 1))] {
                    if words[dir].is_none() {
                        words[dir] = Some(base.concat(&Word::from_letters([letter])));
                        queue.push_back(dir);
                    }
                }
            }
        }
        words.into_iter().map(|w| w.unwrap()).collect()
    }

    /// Multiplication table of the realized group (cosets = elements,
    /// coset 0 = identity): `m(i, j)` applies j's representative word to i.
    pub fn to_group_table(&self) -> GroupTable {
        let words = self.representative_words();
        let mul: Vec<Vec<usize>> = (0..self.order)
            .map(|i| (0..self.order).map(|j| self.apply_word(i, &words[j])).collect())
            .collect();
        GroupTable::new(mul).expect("coset table yields a group")
    }

    /// Checks the defining invariants directly: bijectivity, transitivity,
    /// and that every relator acts as the identity.
    pub fn validate(&self, p: &GroupPresentation) -> Result<()> {
        if p.generators != self.n_generators {
            return Err(Error::PresentationMismatch(format!(
                "{} generators vs table with {}",
                p.generators, self.n_generators
            )));
        }
        for g in 0..self.n_generators {
            let mut seen = vec![false; self.order];
            for c in 0..self.order {
                let img = self.forward[g][c];
                if seen[img] {
                    return Err(Error::InvalidInput("generator action not a bijection".into()));
                }
                seen[img] = true;
                if self.backward[g][img] != c {
                    return Err(Error::InvalidInput("inverse action inconsistent".into()));
                }
            }
        }
        // transitivity
        let mut seen = vec![false; self.order];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(c) = queue.pop_front() {
            for g in 0..self.n_generators {
                for n in [self.forward[g][c], self.backward[g][c]] {
                    if !seen[n] {
                        seen[n] = true;
                        count += 1;
                        queue.push_back(n);
                    }
                }
            }
        }
        if count != self.order {
            return Err(Error::InvalidInput("action not transitive".into()));
        }
        for r in &p.relators {
            for c in 0..self.order {
                if self.apply_word(c, r) != c {
                    return Err(Error::InvalidInput(format!(
                        "relator {r} does not act trivially"
                    )));
                }
            }
        }
        Ok(())
    }
}

struct Enumerator {
    ncols: usize,
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    defined: usize,
    budget: usize,
}

#[inline]
fn col_of(letter: i32) -> usize {
    let g = letter.unsigned_abs() as usize - 1;
    2 * g + if letter > 0 { 0 } else { 1 }
}

#[inline]
fn inv_col(col: usize) -> usize {
    col ^ 1
}

impl Enumerator {
    fn new(m: usize, budget: usize) -> Self {
        Enumerator {
            ncols: 2 * m,
            table: vec![vec![None; 2 * m]],
            parent: vec![0],
            defined: 1,
            budget,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            let up = self.parent[x];
            self.parent[x] = self.parent[up];
            x = up;
        }
        x
    }

    fn get(&mut self, a: usize, col: usize) -> Option<usize> {
        self.table[a][col].map(|x| self.find(x))
    }

    fn define(&mut self, a: usize, col: usize) -> Result<usize> {
        if self.defined >= self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        let n = self.table.len();
        self.table.push(vec![None; self.ncols]);
        self.parent.push(n);
        self.defined += 1;
        self.table[a][col] = Some(n);
        self.table[n][inv_col(col)] = Some(a);
        Ok(n)
    }

    /// Records `a . col = b`, propagating coincidences.
    fn deduce(&mut self, a: usize, col: usize, b: usize) {
        let a = self.find(a);
        let b = self.find(b);
        match self.get(a, col) {
            None => {
                self.table[a][col] = Some(b);
                match self.get(b, inv_col(col)) {
                    None => self.table[b][inv_col(col)] = Some(a),
                    Some(c) if c != a => self.coincide(c, a),
                    _ => {}
                }
            }
            Some(c) if c != b => self.coincide(c, b),
            _ => {}
        }
    }

    fn coincide(&mut self, a: usize, b: usize) {
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, dead) = if a < b { (a, b) } else { (b, a) };
            self.parent[dead] = keep;
            for col in 0..self.ncols {
                if let Some(x) = self.table[dead][col] {
                    let x = self.find(x);
                    match self.table[keep][col].map(|y| self.find(y)) {
                        None => {
                            self.table[keep][col] = Some(x);
                            match self.table[x][inv_col(col)].map(|y| self.find(y)) {
                                None => self.table[x][inv_col(col)] = Some(keep),
                                Some(y) if y != keep => queue.push((y, keep)),
                                _ => {}
                            }
                        }
                        Some(y) if y != x => queue.push((x, y)),
                        _ => {}
                    }
                }
            }
        }
    }

    /// Scans relator `w` at coset `a`, defining cosets to close the scan.
    fn scan_and_fill(&mut self, a: usize, w: &Word) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        loop {
            let a = self.find(a);
            let letters = w.letters();
            let mut f = a;
            let mut i = 0usize;
            // forward
            while i < letters.len() {
                match self.get(f, col_of(letters[i])) {
                    Some(next) => {
                        f = next;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == letters.len() {
                if f != a {
                    self.coincide(f, a);
                }
                return Ok(());
            }
            // backward
            let mut b = a;
            let mut j = letters.len();
            while j > i {
                match self.get(b, inv_col(col_of(letters[j - 1]))) {
                    Some(prev) => {
                        b = prev;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j == i {
                // full overlap: forward reached f, backward reached b at the
                // same position; f . (nothing) should equal b
                if f != b {
                    self.coincide(f, b);
                }
                return Ok(());
            }
            if j == i + 1 {
                self.deduce(f, col_of(letters[i]), b);
                return Ok(());
            }
            // gap: define one coset and rescan
            self.define(f, col_of(letters[i]))?;
        }
    }

    fn live_cosets(&mut self) -> Vec<usize> {
        (0..self.table.len())
            .filter(|&c| self.find(c) == c)
            .collect()
    }
}

/// Enumerates the cosets of the trivial subgroup. `budget` bounds the total
/// number of cosets ever defined; exceeding it reports the group as possibly
/// infinite or too large, distinct from malformed-presentation errors.
pub fn todd_coxeter(p: &GroupPresentation, budget: usize) -> Result<CosetTable> {
    if budget == 0 {
        return Err(Error::InvalidInput("budget must be positive".into()));
    }
    let m = p.generators;
    if m == 0 {
        return Ok(CosetTable {
            n_generators: 0,
            order: 1,
            forward: vec![],
            backward: vec![],
        });
    }
    let mut e = Enumerator::new(m, budget);
    let mut a = 0usize;
    while a < e.table.len() {
        if e.find(a) != a {
            a += 1;
            continue;
        }
        for r in &p.relators {
            e.scan_and_fill(a, r)?;
            if e.find(a) != a {
                break;
            }
        }
        let live = e.find(a);
        if live == a {
            for col in 0..e.ncols {
                if e.get(a, col).is_none() {
                    e.define(a, col)?;
                }
            }
        }
        a += 1;
    }
    // compact + standardize
    let live = e.live_cosets();
    let order = live.len();
    let mut compact = vec![usize::MAX; e.table.len()];
    for (i, &c) in live.iter().enumerate() {
        compact[c] = i;
    }
    let mut fwd = vec![vec![usize::MAX; order]; m];
    let mut bwd = vec![vec![usize::MAX; order]; m];
    for (i, &c) in live.iter().enumerate() {
        for g in 0..m {
            let f = e.get(c, 2 * g).expect("closed table");
            let b = e.get(c, 2 * g + 1).expect("closed table");
            fwd[g][i] = compact[f];
            bwd[g][i] = compact[b];
        }
    }
    // BFS renumbering from the identity coset for a canonical table
    let root = compact[e.find(0)];
    let mut number = vec![usize::MAX; order];
    number[root] = 0;
    let mut next = 1usize;
    let mut queue = VecDeque::from([root]);
    while let Some(c) = queue.pop_front() {
        for g in 0..m {
            for n in [fwd[g][c], bwd[g][c]] {
                if number[n] == usize::MAX {
                    number[n] = next;
                    next += 1;
                    queue.push_back(n);
                }
            }
        }
    }
    debug_assert_eq!(next, order);
    let mut forward = vec![vec![usize::MAX; order]; m];
    let mut backward = vec![vec![usize::MAX; order]; m];
    for c in 0..order {
        for g in 0..m {
            forward[g][number[c]] = number[fwd[g][c]];
            backward[g][number[c]] = number[bwd[g][c]];
        }
    }
    let out = CosetTable {
        n_generators: m,
        order,
        forward,
        backward,
    };
    out.validate(p)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(m: usize, relators: &[&str]) -> GroupPresentation {
        GroupPresentation::new(
            m,
            relators.iter().map(|r| Word::parse(r).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn cyclic_two() {
        let t = todd_coxeter(&pres(1, &["a^2"]), 100).unwrap();
        assert_eq!(t.order, 2);
        assert_eq!(t.forward[0], vec![1, 0]);
    }

    #[test]
    fn klein_four() {
        let t = todd_coxeter(&pres(2, &["a^2", "b^2", "a.b.a.b"]), 100).unwrap();
        assert_eq!(t.order, 4);
        // brute-force check: all elements square to the identity
        let g = t.to_group_table();
        for x in 0..4 {
            assert_eq!(g.mul(x, x), 0);
        }
        assert!(g.is_abelian());
    }

    #[test]
    fn symmetric_three() {
        let t = todd_coxeter(&pres(2, &["a^3", "b^2", "a.b.a.b"]), 100).unwrap();
        assert_eq!(t.order, 6);
        assert!(!t.to_group_table().is_abelian());
    }

    #[test]
    fn cyclic_nine() {
        let t = todd_coxeter(&pres(1, &["a^9"]), 100).unwrap();
        assert_eq!(t.order, 9);
    }

    #[test]
    fn free_group_exceeds_budget() {
        let err = todd_coxeter(&pres(1, &[]), 50).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 50 }));
    }

    #[test]
    fn trivial_presentations() {
        assert_eq!(todd_coxeter(&pres(0, &[]), 10).unwrap().order, 1);
        assert_eq!(todd_coxeter(&pres(1, &["a"]), 10).unwrap().order, 1);
        // <a, b | a, b, ...> with redundant relators
        assert_eq!(todd_coxeter(&pres(2, &["a", "b", "a.b"]), 10).unwrap().order, 1);
    }

    #[test]
    fn quaternion_group() {
        // <a, b | a^4, a^2 b^-2, b^-1 a b a>
        let t = todd_coxeter(&pres(2, &["a^4", "a^2.b^-2", "b^-1.a.b.a"]), 200).unwrap();
        assert_eq!(t.order, 8);
        assert!(!t.to_group_table().is_abelian());
    }

    #[test]
    fn representative_words_act_correctly() {
        let t = todd_coxeter(&pres(2, &["a^3", "b^2", "a.b.a.b"]), 100).unwrap();
        let words = t.representative_words();
        for (i, w) in words.iter().enumerate() {
            assert_eq!(t.apply_word(0, w), i);
        }
    }
}
