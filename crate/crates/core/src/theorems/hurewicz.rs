//! The Hurewicz criterion and the Hopf exact sequence, through finite
//! covers: for finite `pi_1`, `pi_2(M) = H_2(M~; Z)`, the Hurewicz image in
//! `H_2(M; Z)` is the image of the covering projection, and its cokernel is
//! `H_2(pi_1; Z)`.

use crate::complexes::EquivariantComplex;
use crate::homology::{
    induced_map_h2, quotient_by_image, AbelianGroup, InducedMap,
};

/// Result of the Hurewicz test: the evidence is the matrix of
/// `pi_*: H_2(cover) -> H_2(base)` between the Smith-presented groups.
#[derive(Debug, Clone)]
pub struct HurewiczReport {
    pub nonzero: bool,
    pub map: InducedMap,
}

/// Whether the Hurewicz map `pi_2(M) -> H_2(M; Z)` is nonzero, decided via
/// the finite cover.
pub fn hurewicz_nonzero(eq: &EquivariantComplex) -> HurewiczReport {
    let map = induced_map_h2(eq);
    HurewiczReport {
        nonzero: !map.is_zero(),
        map,
    }
}

/// `coker(pi_*: H_2(cover) -> H_2(base))`, which the Hopf sequence
/// identifies with `H_2(pi_1(M); Z)`.
pub fn hopf_h2_group(eq: &EquivariantComplex) -> AbelianGroup {
    quotient_by_image(&induced_map_h2(eq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::complexes::equivariant_of_simplicial;
    use num_bigint::BigInt;

    #[test]
    fn sphere_hurewicz_is_identity() {
        let eq = equivariant_of_simplicial(&catalog::sphere_complex(2).unwrap(), 10_000).unwrap();
        let rep = hurewicz_nonzero(&eq);
        assert!(rep.nonzero);
        assert_eq!(rep.map.matrix.rows(), 1);
        assert_eq!(rep.map.matrix.cols(), 1);
        // identity on Z up to sign
        assert_eq!(rep.map.matrix.get(0, 0).magnitude(), BigInt::from(1).magnitude());
        assert!(hopf_h2_group(&eq).is_trivial());
    }

    #[test]
    fn rp2_hurewicz_vanishes() {
        let eq = equivariant_of_simplicial(&catalog::rp2_complex(), 10_000).unwrap();
        let rep = hurewicz_nonzero(&eq);
        // H_2(S^2) = Z maps to H_2(RP^2) = 0
        assert!(!rep.nonzero);
        assert_eq!(rep.map.source.len(), 1);
        assert_eq!(rep.map.target.len(), 0);
        // Schur multiplier of Z/2 is trivial
        assert!(hopf_h2_group(&eq).is_trivial());
    }

    #[test]
    fn rp3_hurewicz_vanishes() {
        let eq = equivariant_of_simplicial(&catalog::rp3_complex(), 10_000).unwrap();
        let rep = hurewicz_nonzero(&eq);
        // H_2(S^3) = 0
        assert!(!rep.nonzero);
        assert_eq!(rep.map.source.len(), 0);
    }

    #[test]
    fn product_hopf_is_schur_multiplier_of_klein_group() {
        let rp2 = equivariant_of_simplicial(&catalog::rp2_complex(), 10_000).unwrap();
        let prod = EquivariantComplex::product(&rp2, &rp2);
        let hopf = hopf_h2_group(&prod);
        assert_eq!(hopf.free_rank, 0);
        assert_eq!(hopf.torsion, vec![BigInt::from(2)]);
        // image of pi_* in H_2 = Z/2 is zero
        let rep = hurewicz_nonzero(&prod);
        assert!(!rep.nonzero);
    }

    #[test]
    fn infinite_pi1_is_not_decidable() {
        let err =
            equivariant_of_simplicial(&catalog::torus_complex(), 10_000).unwrap_err();
        assert!(err.is_resource_limit());
    }
}
