//! Finite abstract simplicial complexes: strictly increasing vertex tuples,
//! closed under taking faces.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::complexes::chain::IntegerChainComplex;
use crate::error::Error;
use crate::linalg::IntMatrix;
use crate::Result;

/// A finite simplicial complex on vertices `0..n`. Simplices per dimension
/// are kept sorted lexicographically, which fixes all matrix layouts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: usize,
    /// `simplices[k]` = sorted list of (k+1)-vertex tuples, each strictly
    /// increasing.
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Builds the downward closure of the given simplices. Vertices are the
    /// integers that appear; every vertex `0..=max` must appear.
    pub fn from_simplices<I>(simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in simplices {
            validate_tuple(&s)?;
            // insert all subsets (faces)
            let m = s.len();
            for mask in 1u64..(1 << m) {
                let face: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                all.insert(face);
            }
        }
        Self::from_closed_set(all)
    }

    /// Builds from an explicitly face-closed set; a missing face is an error
    /// naming it.
    pub fn from_closed_simplices<I>(simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let all: BTreeSet<Vec<usize>> = simplices.into_iter().collect();
        for s in &all {
            validate_tuple(s)?;
            if s.len() > 1 {
                for drop in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(drop);
                    if !all.contains(&face) {
                        return Err(Error::NotFaceClosed {
                            missing: format_tuple(&face),
                            simplex: format_tuple(s),
                        });
                    }
                }
            }
        }
        Self::from_closed_set(all)
    }

    fn from_closed_set(all: BTreeSet<Vec<usize>>) -> Result<Self> {
        if all.is_empty() {
            return Ok(SimplicialComplex {
                vertices: 0,
                simplices: Vec::new(),
            });
        }
        let max_v = all.iter().flatten().copied().max().unwrap();
        let mut present = vec![false; max_v + 1];
        for s in &all {
            for &v in s {
                present[v] = true;
            }
        }
        if let Some(missing) = present.iter().position(|&p| !p) {
            return Err(Error::InvalidInput(format!(
                "vertex {missing} does not appear in any simplex (vertices must be 0..={max_v})"
            )));
        }
        let dim = all.iter().map(|s| s.len() - 1).max().unwrap();
        let mut simplices = vec![Vec::new(); dim + 1];
        for s in all {
            simplices[s.len() - 1].push(s);
        }
        // BTreeSet iteration is sorted; per-dimension lists stay sorted.
        Ok(SimplicialComplex {
            vertices: max_v + 1,
            simplices,
        })
    }

    /// The one-point complex.
    pub fn point() -> Self {
        SimplicialComplex {
            vertices: 1,
            simplices: vec![vec![vec![0]]],
        }
    }

    /// The empty complex.
    pub fn empty() -> Self {
        SimplicialComplex {
            vertices: 0,
            simplices: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Dimension; the empty complex reports 0 cells everywhere.
    pub fn dimension(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn cells(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn cell_count(&self, k: usize) -> usize {
        self.cells(k).len()
    }

    pub fn total_cells(&self) -> usize {
        self.simplices.iter().map(|v| v.len()).sum()
    }

    /// Index of a simplex within its dimension's sorted list.
    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let k = simplex.len().checked_sub(1)?;
        self.simplices
            .get(k)?
            .binary_search_by(|probe| probe.as_slice().cmp(simplex))
            .ok()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                sign * v.len() as i64
            })
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices <= 1 {
            return true;
        }
        let mut joined = vec![usize::MAX; self.vertices];
        for (i, j) in self.edges() {
            union(&mut joined, i, j);
        }
        let root = find(&mut joined, 0);
        (1..self.vertices).all(|v| find(&mut joined, v) == root)
    }

    /// Edges as (u, v) with u < v.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cells(1).iter().map(|e| (e[0], e[1]))
    }

    /// Standard simplicial boundary matrices with alternating signs:
    /// `d(v_0..v_k) = sum_i (-1)^i (v_0..v_i-hat..v_k)`.
    pub fn boundary_matrices(&self) -> IntegerChainComplex {
        let dim = if self.simplices.is_empty() {
            return IntegerChainComplex::new(vec![], vec![]).unwrap();
        } else {
            self.dimension()
        };
        let mut boundaries = Vec::new();
        for k in 1..=dim {
            let rows = self.cell_count(k - 1);
            let cols = self.cell_count(k);
            let mut m = IntMatrix::zero(rows, cols);
            for (j, s) in self.cells(k).iter().enumerate() {
                for drop in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(drop);
                    let i = self
                        .index_of(&face)
                        .expect("face-closed complex is missing a face");
                    let sign = if drop % 2 == 0 { 1i64 } else { -1i64 };
                    m.set(i, j, BigInt::from(sign));
                }
            }
            boundaries.push(m);
        }
        let labels: Vec<Vec<String>> = (0..=dim)
            .map(|k| self.cells(k).iter().map(|s| format_tuple(s)).collect())
            .collect();
        IntegerChainComplex::new(boundaries, labels).expect("simplicial boundary satisfies dd=0")
    }
}

fn validate_tuple(s: &[usize]) -> Result<()> {
    if s.is_empty() {
        return Err(Error::InvalidInput("empty simplex".into()));
    }
    if !s.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput(format!(
            "simplex {} is not strictly increasing",
            format_tuple(s)
        )));
    }
    Ok(())
}

pub(crate) fn format_tuple(s: &[usize]) -> String {
    s.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(".")
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != usize::MAX && parent[x] != x {
        let up = parent[x];
        if parent[up] != usize::MAX && parent[up] != up {
            parent[x] = parent[up];
        }
        x = up;
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let ra = find(parent, a);
    let rb = find(parent, b);
    if ra != rb {
        parent[ra] = rb;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_full_triangle() {
        let k = SimplicialComplex::from_simplices(vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(k.cell_count(0), 3);
        assert_eq!(k.cell_count(1), 3);
        assert_eq!(k.cell_count(2), 1);
        assert!(k.is_connected());
    }

    #[test]
    fn boundary_of_full_triangle() {
        // d2 column against edges {0,1},{0,2},{1,2} is (+1, -1, +1)
        let k = SimplicialComplex::from_simplices(vec![vec![0, 1, 2]]).unwrap();
        let c = k.boundary_matrices();
        let d2 = c.boundary(2).unwrap();
        assert_eq!(
            (0..3)
                .map(|i| i64::try_from(d2.get(i, 0).clone()).unwrap())
                .collect::<Vec<_>>(),
            vec![1, -1, 1]
        );
    }

    #[test]
    fn missing_face_is_named() {
        let err = SimplicialComplex::from_closed_simplices(vec![
            vec![0],
            vec![1],
            vec![2],
            vec![0, 1, 2],
        ])
        .unwrap_err();
        match err {
            Error::NotFaceClosed { missing, .. } => assert_eq!(missing, "1.2"),
            other => panic!("wrong error {other:?}"),
        }
    }

    #[test]
    fn disconnected_detected() {
        let k =
            SimplicialComplex::from_simplices(vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(!k.is_connected());
    }

    #[test]
    fn degenerate_complexes() {
        let p = SimplicialComplex::point();
        assert_eq!(p.total_cells(), 1);
        assert_eq!(p.euler_characteristic(), 1);
        assert!(p.is_connected());
        let e = SimplicialComplex::empty();
        assert_eq!(e.total_cells(), 0);
        assert_eq!(e.euler_characteristic(), 0);
        assert!(e.is_connected());
        assert_eq!(e.boundary_matrices().dimension(), 0);
    }
}
