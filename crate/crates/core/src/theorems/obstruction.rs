//! The H-space obstruction: a nontrivial rank-1 system with nonzero twisted
//! homology rules out any H-space structure, since over `Q(zeta_l)` every
//! `1 - zeta^k` with `k != 0` is invertible.

use crate::error::Error;
use crate::homology::betti_twisted;
use crate::local_systems::{LocalSystem, TwistedChainComplex};
use crate::Result;

/// A witness: the system and the degree where twisted homology is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionCertificate {
    pub ell: u64,
    pub system: LocalSystem,
    pub degree: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ObstructionOutcome {
    Certificate(ObstructionCertificate),
    NoneFound {
        primes: Vec<u64>,
        systems_checked: usize,
    },
}

/// Deterministic search: primes in the given order, systems in
/// lexicographic exponent order, degrees ascending; the first nonzero
/// twisted Betti number wins.
pub fn search_obstruction(
    primes: &[u64],
    systems_of: impl Fn(u64) -> Result<Vec<LocalSystem>>,
    twist: impl Fn(&LocalSystem) -> Result<TwistedChainComplex>,
) -> Result<ObstructionOutcome> {
    let mut checked = 0usize;
    for &ell in primes {
        for sys in systems_of(ell)? {
            if sys.is_trivial() {
                continue;
            }
            checked += 1;
            let t = twist(&sys)?;
            let betti = betti_twisted(&t)?.betti();
            if let Some(degree) = betti.iter().position(|&b| b > 0) {
                return Ok(ObstructionOutcome::Certificate(ObstructionCertificate {
                    ell,
                    system: sys,
                    degree,
                    rank: betti[degree],
                }));
            }
        }
    }
    Ok(ObstructionOutcome::NoneFound {
        primes: primes.to_vec(),
        systems_checked: checked,
    })
}

/// Re-verifies a certificate: recomputing the twisted Betti numbers must
/// reproduce the recorded nonzero rank in the recorded degree.
pub fn verify_certificate(
    cert: &ObstructionCertificate,
    twist: impl Fn(&LocalSystem) -> Result<TwistedChainComplex>,
) -> Result<bool> {
    if cert.system.is_trivial() {
        return Err(Error::InvalidInput(
            "certificate carries a trivial system".into(),
        ));
    }
    let betti = betti_twisted(&twist(&cert.system)?)?.betti();
    Ok(betti.get(cert.degree) == Some(&cert.rank) && cert.rank > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::local_systems::enumerate_local_systems;

    #[test]
    fn rp2_certificate() {
        let k = catalog::rp2_complex();
        let fg = crate::complexes::fundamental_group(&k, 0).unwrap();
        let eqb = crate::local_systems::equivariant_boundary(&k, &fg).unwrap();
        let out = search_obstruction(
            &[2],
            |ell| enumerate_local_systems(&fg.presentation, ell),
            |sys| eqb.twist(sys),
        )
        .unwrap();
        match out {
            ObstructionOutcome::Certificate(c) => {
                assert_eq!((c.ell, c.degree, c.rank), (2, 2, 1));
                assert!(verify_certificate(&c, |sys| eqb.twist(sys)).unwrap());
            }
            other => panic!("expected a certificate, got {other:?}"),
        }
    }

    #[test]
    fn odd_projective_spaces_clear() {
        for n in [1usize, 3, 5, 7] {
            let c = catalog::rpn_twisted_complex(n).unwrap();
            let out = search_obstruction(
                &[2],
                |ell| enumerate_local_systems(&c.presentation, ell),
                |sys| c.twist(sys),
            )
            .unwrap();
            assert!(
                matches!(out, ObstructionOutcome::NoneFound { .. }),
                "n = {n}"
            );
        }
        for n in [2usize, 4, 6] {
            let c = catalog::rpn_twisted_complex(n).unwrap();
            let out = search_obstruction(
                &[2],
                |ell| enumerate_local_systems(&c.presentation, ell),
                |sys| c.twist(sys),
            )
            .unwrap();
            match out {
                ObstructionOutcome::Certificate(cert) => {
                    assert_eq!((cert.degree, cert.rank), (n, 1), "n = {n}");
                }
                other => panic!("expected a certificate for n = {n}, got {other:?}"),
            }
        }
    }

    #[test]
    fn circle_is_clear_at_three() {
        // one loop, no relators: both nontrivial systems kill homology
        use crate::complexes::GroupPresentation;
        use crate::local_systems::{GroupRingComplex, GroupRingEntry, GroupRingMatrix};
        let p = GroupPresentation::free(1);
        let m = GroupRingMatrix::new(1, 1, 1, vec![GroupRingEntry::parse("1*a + -1*1").unwrap()])
            .unwrap();
        let c = GroupRingComplex::new(p.clone(), vec![m]).unwrap();
        let out = search_obstruction(
            &[3],
            |ell| enumerate_local_systems(&p, ell),
            |sys| c.twist(sys),
        )
        .unwrap();
        assert_eq!(
            out,
            ObstructionOutcome::NoneFound {
                primes: vec![3],
                systems_checked: 2
            }
        );
    }
}
