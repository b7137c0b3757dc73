//! Group presentations by generators and relators, and the edge-path
//! presentation of the fundamental group of a connected simplicial complex.

use std::collections::BTreeMap;
use std::collections::VecDeque;
use std::fmt;

use crate::complexes::SimplicialComplex;
use crate::error::Error;
use crate::util::{generator_index, generator_name};
use crate::Result;

/// A freely reduced word in signed generators. Letter `+(g+1)` means
/// generator `g`, `-(g+1)` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![g as i32 + 1])
    }

    /// Builds from signed letters, freely reducing.
    pub fn from_letters<I: IntoIterator<Item = i32>>(letters: I) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Largest generator index mentioned, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.unsigned_abs() as usize - 1).max()
    }

    /// Signed exponent sum per generator, for `m` generators.
    pub fn exponent_sums(&self, m: usize) -> Vec<i64> {
        let mut sums = vec![0i64; m];
        for &l in &self.0 {
            let g = l.unsigned_abs() as usize - 1;
            sums[g] += if l > 0 { 1 } else { -1 };
        }
        sums
    }

    /// Shifts every generator index by `offset`.
    pub fn shift(&self, offset: usize) -> Word {
        Word(
            self.0
                .iter()
                .map(|&l| {
                    if l > 0 {
                        l + offset as i32
                    } else {
                        l - offset as i32
                    }
                })
                .collect(),
        )
    }

    /// Textual form: dot-joined powers, `1` for the identity. Runs of equal
    /// letters are grouped: `a.a.b^-1` prints as `a^2.b^-1`.
    pub fn display(&self) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            let name = generator_name(l.unsigned_abs() as usize - 1);
            let exp = if l > 0 { run as i64 } else { -(run as i64) };
            if exp == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{exp}"));
            }
            i += run;
        }
        parts.join(".")
    }

    /// Parses the dot-joined form.
    pub fn parse(s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        for atom in s.split('.') {
            let atom = atom.trim();
            let (name, exp) = match atom.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad exponent in {atom}")))?;
                    (n.trim(), e)
                }
                None => (atom, 1),
            };
            let g = generator_index(name)
                .ok_or_else(|| Error::InvalidInput(format!("bad generator name {name}")))?;
            let letter = g as i32 + 1;
            let (letter, count) = if exp >= 0 { (letter, exp) } else { (-letter, -exp) };
            for _ in 0..count {
                letters.push(letter);
            }
        }
        Ok(Word::from_letters(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// A finite presentation: `generators` generators, a list of freely reduced
/// relator words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g >= generators {
                    return Err(Error::InvalidInput(format!(
                        "relator {} uses generator {} but only {} exist",
                        r,
                        generator_name(g),
                        generators
                    )));
                }
            }
        }
        Ok(GroupPresentation {
            generators,
            relators,
        })
    }

    pub fn free(generators: usize) -> Self {
        GroupPresentation {
            generators,
            relators: Vec::new(),
        }
    }

    /// Rank of the abelianization: generators minus the rank of the relator
    /// exponent matrix over Q.
    pub fn abelianization_rank(&self) -> usize {
        use crate::linalg::IntMatrix;
        if self.generators == 0 {
            return 0;
        }
        if self.relators.is_empty() {
            return self.generators;
        }
        let m = IntMatrix::from_rows(
            self.relators
                .iter()
                .map(|r| r.exponent_sums(self.generators))
                .collect(),
        );
        let rank = crate::linalg::smith_with_options(&m, crate::linalg::SnfOptions::none()).rank;
        self.generators - rank
    }

    /// Direct product: generators concatenated, relators of both factors
    /// plus commutators between factors.
    pub fn direct_product(&self, other: &GroupPresentation) -> GroupPresentation {
        let mut relators: Vec<Word> = self.relators.clone();
        for r in &other.relators {
            relators.push(r.shift(self.generators));
        }
        for a in 0..self.generators {
            for b in 0..other.generators {
                let wa = Word::generator(a);
                let wb = Word::generator(b + self.generators);
                let comm = wa
                    .concat(&wb)
                    .concat(&wa.inverse())
                    .concat(&wb.inverse());
                relators.push(comm);
            }
        }
        GroupPresentation {
            generators: self.generators + other.generators,
            relators,
        }
    }
}

/// The edge-path presentation of `pi_1` together with the spanning-tree edge
/// labeling the covering-space constructions need.
#[derive(Debug, Clone)]
pub struct FundamentalGroupData {
    pub presentation: GroupPresentation,
    pub basepoint: usize,
    /// For each edge (u, v) with u < v: `None` for tree edges, otherwise the
    /// generator index.
    pub edge_labels: BTreeMap<(usize, usize), Option<usize>>,
}

impl FundamentalGroupData {
    /// Label of the directed edge u -> v as a word (empty for tree edges).
    pub fn edge_word(&self, u: usize, v: usize) -> Word {
        let (key, invert) = if u < v { ((u, v), false) } else { ((v, u), true) };
        match self.edge_labels.get(&key) {
            Some(Some(g)) => {
                let w = Word::generator(*g);
                if invert {
                    w.inverse()
                } else {
                    w
                }
            }
            _ => Word::identity(),
        }
    }
}

/// Edge-path group of a connected complex: a breadth-first spanning tree
/// from the basepoint (neighbors visited in ascending vertex order), one
/// generator per non-tree edge, one relator per 2-simplex.
pub fn fundamental_group(k: &SimplicialComplex, basepoint: usize) -> Result<FundamentalGroupData> {
    if k.vertex_count() == 0 {
        return Ok(FundamentalGroupData {
            presentation: GroupPresentation::free(0),
            basepoint,
            edge_labels: BTreeMap::new(),
        });
    }
    if basepoint >= k.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "basepoint {basepoint} out of range"
        )));
    }
    if !k.is_connected() {
        return Err(Error::Disconnected);
    }
    // adjacency, ascending
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k.vertex_count()];
    for (u, v) in k.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
    }
    // BFS tree
    let mut in_tree: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let mut seen = vec![false; k.vertex_count()];
    let mut queue = VecDeque::new();
    seen[basepoint] = true;
    queue.push_back(basepoint);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                in_tree.insert((u.min(v), u.max(v)), true);
                queue.push_back(v);
            }
        }
    }
    // generators: non-tree edges in lexicographic order
    let mut edge_labels: BTreeMap<(usize, usize), Option<usize>> = BTreeMap::new();
    let mut next_gen = 0usize;
    for (u, v) in k.edges() {
        let label = if in_tree.contains_key(&(u, v)) {
            None
        } else {
            let g = next_gen;
            next_gen += 1;
            Some(g)
        };
        edge_labels.insert((u, v), label);
    }
    // relators: one per 2-simplex (a < b < c): w(ab) w(bc) w(ac)^-1
    let data = FundamentalGroupData {
        presentation: GroupPresentation::free(next_gen),
        basepoint,
        edge_labels,
    };
    let mut relators = Vec::new();
    for t in k.cells(2) {
        let (a, b, c) = (t[0], t[1], t[2]);
        let w = data
            .edge_word(a, b)
            .concat(&data.edge_word(b, c))
            .concat(&data.edge_word(a, c).inverse());
        relators.push(w);
    }
    Ok(FundamentalGroupData {
        presentation: GroupPresentation::new(next_gen, relators)?,
        ..data
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_reduction_and_parse() {
        let w = Word::from_letters(vec![1, -1, 2, 2, -1]);
        assert_eq!(w.letters(), &[2, 2, -1]);
        assert_eq!(w.display(), "b^2.a^-1");
        assert_eq!(Word::parse("b^2.a^-1").unwrap(), w);
        assert_eq!(Word::parse("1").unwrap(), Word::identity());
        assert_eq!(Word::parse("a.a^-1").unwrap(), Word::identity());
    }

    #[test]
    fn free_loop_presentation() {
        // hollow triangle: one loop, no 2-cells -> free of rank 1
        let k = SimplicialComplex::from_simplices(vec![vec![0, 1], vec![0, 2], vec![1, 2]])
            .unwrap();
        let fg = fundamental_group(&k, 0).unwrap();
        assert_eq!(fg.presentation.generators, 1);
        assert!(fg.presentation.relators.is_empty());
        assert_eq!(fg.presentation.abelianization_rank(), 1);
    }

    #[test]
    fn sphere_presentation_trivializes() {
        // boundary of the 3-simplex
        let k = SimplicialComplex::from_simplices(vec![
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![1, 2, 3],
        ])
        .unwrap();
        let fg = fundamental_group(&k, 0).unwrap();
        // relator count = number of 2-simplices
        assert_eq!(fg.presentation.relators.len(), 4);
        assert_eq!(fg.presentation.abelianization_rank(), 0);
    }

    #[test]
    fn disconnected_rejected() {
        let k = SimplicialComplex::from_simplices(vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(matches!(fundamental_group(&k, 0), Err(Error::Disconnected)));
    }

    #[test]
    fn product_presentation_counts() {
        let a = GroupPresentation::new(1, vec![Word::parse("a^2").unwrap()]).unwrap();
        let p = a.direct_product(&a);
        assert_eq!(p.generators, 2);
        assert_eq!(p.relators.len(), 3); // a^2, b^2, [a,b]
    }
}
