//! Rank-1 local systems with holonomy in `Z/l`: enumeration from a
//! presentation, triviality, and the twisting of equivariant chain
//! complexes into cyclotomic matrices.

mod group_ring;
mod twist;

pub use group_ring::{equivariant_boundary, GroupRingComplex, GroupRingEntry, GroupRingMatrix};
pub use twist::{tensor_twisted, twist, twisted_complex_of_cover, TwistedChainComplex};

use std::fmt;

use crate::arith::is_prime;
use crate::complexes::{GroupPresentation, Word};
use crate::error::Error;
use crate::linalg::{fp_nullspace, FpMatrix};
use crate::util::{generator_index, generator_name};
use crate::Result;

/// A holonomy character `pi_1 -> Z/l`, recorded by its exponents on the
/// presentation generators. Since the target is abelian, gauge classes of
/// rank-1 systems are exactly these homomorphisms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LocalSystem {
    ell: u64,
    exponents: Vec<u64>,
}

impl LocalSystem {
    /// Builds a system, checking that every relator evaluates to 0 mod l.
    pub fn new(p: &GroupPresentation, ell: u64, exponents: Vec<u64>) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        if exponents.len() != p.generators {
            return Err(Error::PresentationMismatch(format!(
                "{} exponents for {} generators",
                exponents.len(),
                p.generators
            )));
        }
        let sys = LocalSystem {
            ell,
            exponents: exponents.into_iter().map(|e| e % ell).collect(),
        };
        for r in &p.relators {
            if sys.evaluate(r) != 0 {
                return Err(Error::InvalidInput(format!(
                    "relator {r} does not map to 0 mod {ell}"
                )));
            }
        }
        Ok(sys)
    }

    /// The all-zero (trivial) system.
    pub fn trivial(generators: usize, ell: u64) -> Self {
        LocalSystem {
            ell,
            exponents: vec![0; generators],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.ell
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn generators(&self) -> usize {
        self.exponents.len()
    }

    /// Exponent of `zeta` a word maps to.
    pub fn evaluate(&self, w: &Word) -> u64 {
        let ell = self.ell as i64;
        let mut acc = 0i64;
        for &l in w.letters() {
            let g = l.unsigned_abs() as usize - 1;
            let e = self.exponents[g] as i64;
            acc = (acc + if l > 0 { e } else { -e }).rem_euclid(ell);
        }
        acc as u64
    }

    /// True exactly when every generator exponent is 0.
    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Pointwise sum (the group law on characters).
    pub fn add(&self, other: &LocalSystem) -> Result<LocalSystem> {
        if self.ell != other.ell {
            return Err(Error::ModulusMismatch(self.ell, other.ell));
        }
        if self.exponents.len() != other.exponents.len() {
            return Err(Error::PresentationMismatch("generator counts differ".into()));
        }
        Ok(LocalSystem {
            ell: self.ell,
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| (a + b) % self.ell)
                .collect(),
        })
    }

    /// Parses `l=2; a:1 b:0`. Generators not mentioned default to 0.
    pub fn parse(s: &str, p: &GroupPresentation) -> Result<LocalSystem> {
        let s = s.trim();
        let (head, body) = s
            .split_once(';')
            .ok_or_else(|| Error::InvalidInput(format!("missing ';' in system {s:?}")))?;
        let ell: u64 = head
            .trim()
            .strip_prefix("l=")
            .and_then(|t| t.trim().parse().ok())
            .ok_or_else(|| Error::InvalidInput(format!("bad modulus in {s:?}")))?;
        let mut exponents = vec![0u64; p.generators];
        for tok in body.split_whitespace() {
            let (name, val) = tok
                .split_once(':')
                .ok_or_else(|| Error::InvalidInput(format!("bad assignment {tok:?}")))?;
            let g = generator_index(name)
                .filter(|&g| g < p.generators)
                .ok_or_else(|| Error::InvalidInput(format!("unknown generator {name:?}")))?;
            let v: u64 = val
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad exponent {val:?}")))?;
            exponents[g] = v;
        }
        LocalSystem::new(p, ell, exponents)
    }
}

impl fmt::Display for LocalSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l={};", self.ell)?;
        for (g, e) in self.exponents.iter().enumerate() {
            write!(f, " {}:{}", generator_name(g), e)?;
        }
        Ok(())
    }
}

/// All `Z/l` local systems on a presented group: the solutions of the
/// relator constraints over F_l, in lexicographic exponent order. Always
/// contains the trivial system and is closed under pointwise addition.
pub fn enumerate_local_systems(p: &GroupPresentation, ell: u64) -> Result<Vec<LocalSystem>> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    let m = p.generators;
    if m == 0 {
        return Ok(vec![LocalSystem::trivial(0, ell)]);
    }
    let rows: Vec<Vec<u64>> = p
        .relators
        .iter()
        .map(|r| {
            r.exponent_sums(m)
                .into_iter()
                .map(|e| e.rem_euclid(ell as i64) as u64)
                .collect()
        })
        .collect();
    let basis = if rows.is_empty() {
        (0..m)
            .map(|i| {
                let mut v = vec![0u64; m];
                v[i] = 1;
                v
            })
            .collect()
    } else {
        fp_nullspace(&FpMatrix::new(ell, rows, m))
    };
    let mut out = Vec::new();
    let dim = basis.len();
    let mut counter = vec![0u64; dim];
    loop {
        let mut exps = vec![0u64; m];
        for (c, b) in counter.iter().zip(&basis) {
            for (x, v) in exps.iter_mut().zip(b) {
                *x = (*x + c * v) % ell;
            }
        }
        out.push(LocalSystem {
            ell,
            exponents: exps,
        });
        let mut i = 0;
        loop {
            if i == dim {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            counter[i] += 1;
            if counter[i] < ell {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp2_like() -> GroupPresentation {
        GroupPresentation::new(1, vec![Word::parse("a^2").unwrap()]).unwrap()
    }

    #[test]
    fn rp2_systems_mod_2_and_3() {
        let p = rp2_like();
        let two = enumerate_local_systems(&p, 2).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two[0].is_trivial());
        assert_eq!(two[1].exponents(), &[1]);
        // relator a^2 forces 2x = 0 mod 3, so only the trivial system
        let three = enumerate_local_systems(&p, 3).unwrap();
        assert_eq!(three.len(), 1);
        assert!(three[0].is_trivial());
    }

    #[test]
    fn trivial_group_has_one_system() {
        let p = GroupPresentation::new(1, vec![Word::parse("a").unwrap()]).unwrap();
        for ell in [2u64, 3, 5] {
            assert_eq!(enumerate_local_systems(&p, ell).unwrap().len(), 1);
        }
    }

    #[test]
    fn closed_under_addition() {
        let p = GroupPresentation::free(2);
        let systems = enumerate_local_systems(&p, 3).unwrap();
        assert_eq!(systems.len(), 9);
        for a in &systems {
            for b in &systems {
                let s = a.add(b).unwrap();
                assert!(systems.contains(&s));
            }
        }
    }

    #[test]
    fn sum_with_itself_ell_times_is_trivial() {
        let p = GroupPresentation::free(1);
        let sys = LocalSystem::new(&p, 5, vec![2]).unwrap();
        let mut acc = LocalSystem::trivial(1, 5);
        for _ in 0..5 {
            acc = acc.add(&sys).unwrap();
        }
        assert!(acc.is_trivial());
    }

    #[test]
    fn parse_display_round_trip() {
        let p = GroupPresentation::free(2);
        let sys = LocalSystem::new(&p, 2, vec![1, 0]).unwrap();
        assert_eq!(sys.to_string(), "l=2; a:1 b:0");
        assert_eq!(LocalSystem::parse("l=2; a:1 b:0", &p).unwrap(), sys);
        assert_eq!(LocalSystem::parse("l=2; a:1", &p).unwrap(), sys);
        assert!(LocalSystem::parse("l=2; z:1", &p).is_err());
    }

    #[test]
    fn invalid_relator_assignment_rejected() {
        let p = rp2_like();
        assert!(LocalSystem::new(&p, 3, vec![1]).is_err());
        assert!(LocalSystem::new(&p, 2, vec![1]).is_ok());
    }
}
