//! The loop-space local-system census: `Z/l` systems on the contractible
//! component of the free loop space are counted by `l^(a+b)` with
//! `a = dim H^2_inv(M~; F_l)` and `b = dim H^1(M; F_l)`, and a nontrivial
//! system restricting trivially to the constant loops exists exactly when
//! `a > 0`.

use crate::complexes::EquivariantComplex;
use crate::homology::cohomology_field;
use crate::theorems::cartan_leray::invariant_cover_cohomology;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub ell: u64,
    /// `dim H^2_inv(M~; F_l)`.
    pub invariant_dim: usize,
    /// `dim H^1(M; F_l)`.
    pub base_h1: usize,
    /// `l^(a+b)`.
    pub count: u128,
    /// A nontrivial system on the loop space restricting trivially to `M`.
    pub existence: bool,
}

pub fn loop_census(eq: &EquivariantComplex, ell: u64) -> Result<CensusReport> {
    let (a, _, _) = invariant_cover_cohomology(eq, ell, 2)?;
    let b = cohomology_field(&eq.base, ell, 1);
    let count = (ell as u128).pow((a + b) as u32);
    Ok(CensusReport {
        ell,
        invariant_dim: a,
        base_h1: b,
        count,
        existence: a > 0,
    })
}
