//! The constructive vanishing theorem for H-spaces, at desk scale: for the
//! nerve of a finite abelian group with a nontrivial character into `Z/l`,
//! the twisted bar homology vanishes, and the unit is bounded explicitly by
//! `(1 - g^{-1})^{-1} [g]` for any `g` with nontrivial holonomy.

use crate::arith::{CyclotomicNumber, RootOfUnity};
use crate::complexes::GroupTable;
use crate::error::Error;
use crate::homology::betti_twisted;
use crate::theorems::bar::{twisted_nerve_complex, validate_character};
use crate::Result;

/// The explicit degree-1 bounding chain together with the verified Betti
/// table.
#[derive(Debug, Clone)]
pub struct VanishingWitness {
    pub ell: u64,
    /// The chosen group element `g` with `chi(g) != 0`.
    pub element: usize,
    pub chi_of_element: u64,
    /// `(1 - zeta^{-chi(g)})^{-1}`, the coefficient of `[g]`.
    pub coefficient: CyclotomicNumber,
    /// Twisted Betti numbers in degrees `0..=max_degree`, all zero.
    pub betti: Vec<usize>,
}

/// Builds and verifies the witness: checks `d(coefficient * [g]) = [e]`
/// exactly, then verifies that the twisted bar homology vanishes in all
/// degrees up to `max_degree`.
pub fn vanishing_witness(
    g: &GroupTable,
    chi: &[u64],
    ell: u64,
    max_degree: usize,
) -> Result<VanishingWitness> {
    validate_character(g, chi, ell)?;
    if !g.is_abelian() {
        return Err(Error::InvalidInput(
            "the vanishing witness is stated for abelian groups".into(),
        ));
    }
    let Some(element) = (0..g.order()).find(|&x| chi[x] % ell != 0) else {
        return Err(Error::TrivialCharacter);
    };
    let exp = chi[element] % ell;
    // (1 - g^{-1})^{-1} where g^{-1} acts by zeta^{-chi(g)}
    let g_inv = RootOfUnity::new(ell, -(exp as i64))?;
    let coefficient = g_inv.unit_one_minus()?;
    // the complex up to one degree above what we report
    let complex = twisted_nerve_complex(g, chi, ell, max_degree + 1)?;
    // d(c * [g]) must be exactly [e]
    let d1 = complex.boundary(1).unwrap();
    let col = d1.column(element - 1); // cells are nonidentity elements, 1-based
    if col.len() != 1 || col[0].0 != 0 {
        return Err(Error::InvalidInput(
            "unexpected shape of the degree-1 boundary".into(),
        ));
    }
    let bounded = coefficient.checked_mul(&col[0].1)?;
    if !bounded.is_one() {
        return Err(Error::InvalidInput(format!(
            "witness failed: d({coefficient} * [g]) = {bounded} * [e], expected 1 * [e]"
        )));
    }
    let betti_all = betti_twisted(&complex)?;
    let betti: Vec<usize> = betti_all.betti()[..=max_degree].to_vec();
    if betti.iter().any(|&b| b != 0) {
        return Err(Error::InvalidInput(format!(
            "twisted bar homology did not vanish: {betti:?}"
        )));
    }
    Ok(VanishingWitness {
        ell,
        element,
        chi_of_element: exp,
        coefficient,
        betti,
    })
}
