//! Integral homology via Smith normal form, with tracked generators so that
//! induced maps (covering projections on H_2, Hopf cokernels) come out at
//! chain level rather than from dimension counts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::complexes::IntegerChainComplex;
use crate::homology::{AbelianGroup, FieldLabel, HomologySummary};
use crate::linalg::{smith_with_options, IntMatrix, SnfOptions};

/// Classical cellular homology: Betti numbers and torsion coefficients per
/// dimension, in Smith-canonical form.
pub fn homology_integral(c: &IntegerChainComplex) -> HomologySummary {
    let d = c.dimension();
    // one SNF per boundary, reused for ranks and torsion
    let snfs: Vec<_> = (1..=d)
        .map(|k| smith_with_options(c.boundary(k).unwrap(), SnfOptions::none()))
        .collect();
    let rank = |k: usize| -> usize {
        if k == 0 || k > d {
            0
        } else {
            snfs[k - 1].rank
        }
    };
    let groups = (0..=d)
        .map(|k| {
            let betti = c.cells(k) - rank(k) - rank(k + 1);
            let torsion: Vec<BigInt> = if k < d {
                snfs[k]
                    .diag
                    .iter()
                    .filter(|x| !x.is_one())
                    .cloned()
                    .collect()
            } else {
                vec![]
            };
            AbelianGroup {
                free_rank: betti,
                torsion,
            }
        })
        .collect();
    HomologySummary {
        field: FieldLabel::Integer,
        groups,
    }
}

/// A presentation of `H_k` with tracked generators: columns of `generators`
/// are cycles representing the generators; `coord_map * z` gives the
/// coordinates of any cycle `z`; `invariants[i]` is the order of generator
/// `i` (0 for free generators; 1-entries are dropped).
#[derive(Debug, Clone)]
pub struct HomologyPresentation {
    pub invariants: Vec<BigInt>,
    pub generators: IntMatrix,
    coord_map: IntMatrix,
}

impl HomologyPresentation {
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup {
            free_rank: self.invariants.iter().filter(|d| d.is_zero()).count(),
            torsion: self
                .invariants
                .iter()
                .filter(|d| !d.is_zero() && !d.is_one())
                .cloned()
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Coordinates of a cycle in the presentation, torsion coordinates
    /// reduced into `[0, d)`.
    pub fn coordinates(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        let raw = self.coord_map.mul_vec(cycle);
        raw.into_iter()
            .zip(&self.invariants)
            .map(|(x, d)| if d.is_zero() { x } else { x.mod_floor(d) })
            .collect()
    }
}

/// Presents `H_k` of an integer chain complex.
pub fn homology_presentation(c: &IntegerChainComplex, k: usize) -> HomologyPresentation {
    let cells = c.cells(k);
    if cells == 0 {
        return HomologyPresentation {
            invariants: vec![],
            generators: IntMatrix::zero(0, 0),
            coord_map: IntMatrix::zero(0, 0),
        };
    }
    // kernel of d_k
    let (kernel, kernel_coord) = match c.boundary(k) {
        None => (IntMatrix::identity(cells), IntMatrix::identity(cells)),
        Some(dk) => {
            let snf = smith_with_options(
                dk,
                SnfOptions {
                    u: false,
                    u_inv: false,
                    v: true,
                    v_inv: true,
                },
            );
            let v = snf.v.unwrap();
            let vinv = snf.v_inv.unwrap();
            let r = snf.rank;
            let s = cells - r;
            let kernel = IntMatrix::from_fn(cells, s, |i, j| v.get(i, r + j).clone());
            let coord = IntMatrix::from_fn(s, cells, |i, j| vinv.get(r + i, j).clone());
            (kernel, coord)
        }
    };
    let s = kernel.cols();
    // relations: image of d_{k+1} in kernel coordinates
    let relations = match c.boundary(k + 1) {
        None => IntMatrix::zero(s, 0),
        Some(dk1) => kernel_coord.mul(dk1),
    };
    let snf_x = smith_with_options(
        &relations,
        SnfOptions {
            u: true,
            u_inv: true,
            v: false,
            v_inv: false,
        },
    );
    let ux = snf_x.u.unwrap();
    let uxinv = snf_x.u_inv.unwrap();
    let mut invariants: Vec<BigInt> = snf_x.diag.clone();
    invariants.resize(s, BigInt::zero());
    let generators_full = kernel.mul(&uxinv);
    let coord_full = ux.mul(&kernel_coord);
    // drop generators of order 1
    let keep: Vec<usize> = (0..s).filter(|&i| !invariants[i].is_one()).collect();
    let generators = IntMatrix::from_fn(cells, keep.len(), |i, j| {
        generators_full.get(i, keep[j]).clone()
    });
    let coord_map = IntMatrix::from_fn(keep.len(), cells, |i, j| {
        coord_full.get(keep[i], j).clone()
    });
    let invariants: Vec<BigInt> = keep.into_iter().map(|i| invariants[i].clone()).collect();
    HomologyPresentation {
        invariants,
        generators,
        coord_map,
    }
}

/// The matrix of a chain map between presented homology groups.
#[derive(Debug, Clone)]
pub struct InducedMap {
    /// `target.rank() x source.rank()`, torsion rows reduced mod their
    /// invariant.
    pub matrix: IntMatrix,
    pub source: Vec<BigInt>,
    pub target: Vec<BigInt>,
}

impl InducedMap {
    /// Zero as a map into the target group (mod the target invariants).
    pub fn is_zero(&self) -> bool {
        for i in 0..self.matrix.rows() {
            for j in 0..self.matrix.cols() {
                let v = self.matrix.get(i, j);
                let d = &self.target[i];
                let nz = if d.is_zero() {
                    !v.is_zero()
                } else {
                    !v.mod_floor(d).is_zero()
                };
                if nz {
                    return false;
                }
            }
        }
        true
    }
}

/// The map induced on `H_k` by a chain map given as a matrix in dimension k.
pub fn induced_map(
    source: &HomologyPresentation,
    target: &HomologyPresentation,
    chain_map_k: &IntMatrix,
) -> InducedMap {
    let pushed = chain_map_k.mul(&source.generators);
    let mut matrix = IntMatrix::zero(target.rank(), source.rank());
    for j in 0..source.rank() {
        let col: Vec<BigInt> = (0..pushed.rows()).map(|i| pushed.get(i, j).clone()).collect();
        let coords = target.coordinates(&col);
        for (i, v) in coords.into_iter().enumerate() {
            matrix.set(i, j, v);
        }
    }
    InducedMap {
        matrix,
        source: source.invariants.clone(),
        target: target.invariants.clone(),
    }
}

/// `pi_*: H_2(cover) -> H_2(base)` for an equivariant complex, computed from
/// the cell-level projection chain map.
pub fn induced_map_h2(eq: &crate::complexes::EquivariantComplex) -> InducedMap {
    let src = homology_presentation(&eq.cover, 2);
    let dst = homology_presentation(&eq.base, 2);
    let p2 = eq.projection_matrix(2);
    induced_map(&src, &dst, &p2)
}

/// The cokernel of an induced map: `target / (relations + image)`, in
/// Smith-canonical form.
pub fn quotient_by_image(map: &InducedMap) -> AbelianGroup {
    let s = map.target.len();
    let torsion_cols: Vec<usize> = (0..s).filter(|&i| !map.target[i].is_zero()).collect();
    let cols = torsion_cols.len() + map.matrix.cols();
    let mut rel = IntMatrix::zero(s, cols);
    for (j, &i) in torsion_cols.iter().enumerate() {
        rel.set(i, j, map.target[i].clone());
    }
    for j in 0..map.matrix.cols() {
        for i in 0..s {
            rel.set(i, torsion_cols.len() + j, map.matrix.get(i, j).clone());
        }
    }
    let snf = smith_with_options(&rel, SnfOptions::none());
    let free_rank = s - snf.rank;
    let torsion: Vec<BigInt> = snf
        .diag
        .iter()
        .filter(|d| !d.is_one())
        .cloned()
        .collect();
    AbelianGroup { free_rank, torsion }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::complexes::{tensor_complex, SimplicialComplex};

    fn group(free: usize, torsion: &[i64]) -> AbelianGroup {
        AbelianGroup {
            free_rank: free,
            torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    #[test]
    fn rp2_homology() {
        let h = homology_integral(&catalog::rp2_complex().boundary_matrices());
        assert_eq!(h.groups, vec![group(1, &[]), group(0, &[2]), group(0, &[])]);
    }

    #[test]
    fn sphere_homology() {
        let h = homology_integral(&catalog::sphere_complex(2).unwrap().boundary_matrices());
        assert_eq!(h.groups, vec![group(1, &[]), group(0, &[]), group(1, &[])]);
        let h3 = homology_integral(&catalog::sphere_complex(3).unwrap().boundary_matrices());
        assert_eq!(
            h3.groups,
            vec![group(1, &[]), group(0, &[]), group(0, &[]), group(1, &[])]
        );
    }

    #[test]
    fn torus_and_klein_homology() {
        let torus = homology_integral(&catalog::torus_complex().boundary_matrices());
        assert_eq!(
            torus.groups,
            vec![group(1, &[]), group(2, &[]), group(1, &[])]
        );
        let klein = homology_integral(&catalog::klein_bottle_complex().boundary_matrices());
        assert_eq!(
            klein.groups,
            vec![group(1, &[]), group(1, &[2]), group(0, &[])]
        );
    }

    #[test]
    fn rp3_homology() {
        let h = homology_integral(&catalog::rp3_complex().boundary_matrices());
        assert_eq!(
            h.groups,
            vec![group(1, &[]), group(0, &[2]), group(0, &[]), group(1, &[])]
        );
    }

    #[test]
    fn rp2_times_rp2_h2_is_z2() {
        let rp2 = catalog::rp2_complex().boundary_matrices();
        let prod = tensor_complex(&rp2, &rp2);
        let h = homology_integral(&prod);
        assert_eq!(h.groups[2], group(0, &[2]));
        // Kunneth cross-check of the full range
        assert_eq!(h.groups[0], group(1, &[]));
        assert_eq!(h.groups[1], group(0, &[2, 2]));
    }

    #[test]
    fn torus_as_product_of_circles() {
        let circle = SimplicialComplex::from_simplices(vec![vec![0, 1], vec![0, 2], vec![1, 2]])
            .unwrap()
            .boundary_matrices();
        let torus = tensor_complex(&circle, &circle);
        let h = homology_integral(&torus);
        assert_eq!(h.betti(), vec![1, 2, 1]);
    }

    #[test]
    fn presentation_coordinates_are_consistent() {
        let c = catalog::rp2_complex().boundary_matrices();
        let pres = homology_presentation(&c, 1);
        assert_eq!(pres.group(), group(0, &[2]));
        // the generator is a cycle and its own coordinate is 1
        let g: Vec<BigInt> = (0..c.cells(1))
            .map(|i| pres.generators.get(i, 0).clone())
            .collect();
        let coords = pres.coordinates(&g);
        assert_eq!(coords, vec![BigInt::from(1)]);
        // twice the generator is trivial
        let double: Vec<BigInt> = g.iter().map(|x| x * 2).collect();
        assert!(pres.coordinates(&double)[0].is_zero());
    }

    #[test]
    fn sphere_h2_generator_is_fundamental_class() {
        let c = catalog::sphere_complex(2).unwrap().boundary_matrices();
        let pres = homology_presentation(&c, 2);
        assert_eq!(pres.group(), group(1, &[]));
        // generator entries are all +-1 (orientation classes of the facets)
        for i in 0..c.cells(2) {
            let v = pres.generators.get(i, 0);
            assert_eq!(v.magnitude(), BigInt::from(1).magnitude());
        }
    }
}
