//! The Eilenberg-MacLane shuffle product on twisted chains of the nerve of
//! an abelian group: `B(alpha (x) sigma (x) beta (x) tau)` summed over
//! `(p,q)`-shuffles with the signature sign, composed with the coordinatewise
//! multiplication of the nerve. For the bar cells of an abelian group this
//! interleaves the letter tuples.

use std::collections::BTreeMap;

use crate::arith::CyclotomicNumber;
use crate::complexes::GroupTable;
use crate::error::Error;
use crate::theorems::bar::validate_character;
use crate::Result;

/// A finite chain of bar cells in a fixed degree with `Q(zeta_l)`
/// coefficients; keys are tuples of nonidentity element indices.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedBarChain {
    pub ell: u64,
    pub degree: usize,
    pub terms: BTreeMap<Vec<usize>, CyclotomicNumber>,
}

impl TwistedBarChain {
    pub fn zero(ell: u64, degree: usize) -> Self {
        TwistedBarChain {
            ell,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The class of the basepoint: the empty 0-cell with coefficient 1.
    pub fn unit(ell: u64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), CyclotomicNumber::one(ell));
        TwistedBarChain {
            ell,
            degree: 0,
            terms,
        }
    }

    pub fn cell(ell: u64, tuple: Vec<usize>) -> Self {
        let mut terms = BTreeMap::new();
        let degree = tuple.len();
        terms.insert(tuple, CyclotomicNumber::one(ell));
        TwistedBarChain { ell, degree, terms }
    }

    pub fn add_term(&mut self, tuple: Vec<usize>, coeff: CyclotomicNumber) -> Result<()> {
        debug_assert_eq!(tuple.len(), self.degree);
        match self.terms.get_mut(&tuple) {
            Some(c) => {
                *c = c.checked_add(&coeff)?;
                if c.is_zero() {
                    self.terms.remove(&tuple);
                }
            }
            None => {
                if !coeff.is_zero() {
                    self.terms.insert(tuple, coeff);
                }
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Result<TwistedBarChain> {
        let mut out = TwistedBarChain::zero(self.ell, self.degree);
        for (t, v) in &self.terms {
            out.add_term(t.clone(), v.checked_mul(c)?)?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &TwistedBarChain) -> Result<TwistedBarChain> {
        if self.degree != other.degree {
            return Err(Error::InvalidInput("degrees differ".into()));
        }
        let mut out = self.clone();
        for (t, v) in &other.terms {
            out.add_term(t.clone(), v.clone())?;
        }
        Ok(out)
    }
}

/// The twisted bar differential of a chain (same convention as the nerve
/// complex: the character rides on the last face, inverted).
pub fn bar_boundary_chain(
    g: &GroupTable,
    chi: &[u64],
    chain: &TwistedBarChain,
) -> Result<TwistedBarChain> {
    let ell = chain.ell;
    let k = chain.degree;
    let mut out = TwistedBarChain::zero(ell, k.saturating_sub(1));
    if k == 0 {
        return Ok(out);
    }
    for (tuple, coeff) in &chain.terms {
        // face 0
        out.add_term(tuple[1..].to_vec(), coeff.clone())?;
        // middle faces
        for i in 1..k {
            let p = g.mul(tuple[i - 1], tuple[i]);
            if p != 0 {
                let mut face = Vec::with_capacity(k - 1);
                face.extend_from_slice(&tuple[..i - 1]);
                face.push(p);
                face.extend_from_slice(&tuple[i + 1..]);
                let signed = if i % 2 == 0 {
                    coeff.clone()
                } else {
                    coeff.neg()
                };
                out.add_term(face, signed)?;
            }
        }
        // twisted last face
        let e = (ell - chi[tuple[k - 1]] % ell) % ell;
        let z = CyclotomicNumber::root_of_unity(ell, e as i64);
        let mut last = coeff.checked_mul(&z)?;
        if k % 2 == 1 {
            last = last.neg();
        }
        out.add_term(tuple[..k - 1].to_vec(), last)?;
    }
    Ok(out)
}

/// The shuffle product `a . b`. Bilinear; on basis cells it interleaves the
/// letter tuples over all `(p,q)`-shuffles with the signature sign. Requires
/// an abelian group, a shared character, and `p + q <= degree_cap`.
pub fn shuffle_product(
    g: &GroupTable,
    chi: &[u64],
    a: &TwistedBarChain,
    b: &TwistedBarChain,
    degree_cap: usize,
) -> Result<TwistedBarChain> {
    if a.ell != b.ell {
        return Err(Error::ModulusMismatch(a.ell, b.ell));
    }
    validate_character(g, chi, a.ell)?;
    if !g.is_abelian() {
        return Err(Error::InvalidInput(
            "the shuffle product needs an abelian group".into(),
        ));
    }
    let (p, q) = (a.degree, b.degree);
    if p + q > degree_cap {
        return Err(Error::CapExceeded {
            what: format!("shuffle product in degree {}", p + q),
            cap: degree_cap,
        });
    }
    let mut out = TwistedBarChain::zero(a.ell, p + q);
    for (ta, ca) in &a.terms {
        for (tb, cb) in &b.terms {
            let coeff = ca.checked_mul(cb)?;
            for (positions, sign) in shuffles(p, q) {
                // interleave: a-letters at `positions` (ascending), b-letters
                // at the complement, both in their original order
                let mut tuple = vec![0usize; p + q];
                let mut ai = 0usize;
                let mut bi = 0usize;
                for (slot, t) in tuple.iter_mut().enumerate() {
                    if positions.contains(&slot) {
                        *t = ta[ai];
                        ai += 1;
                    } else {
                        *t = tb[bi];
                        bi += 1;
                    }
                }
                let signed = if sign {
                    coeff.neg()
                } else {
                    coeff.clone()
                };
                out.add_term(tuple, signed)?;
            }
        }
    }
    Ok(out)
}

/// All `(p, q)`-shuffles as the positions of the first block, with the
/// parity of the permutation (`true` = odd).
fn shuffles(p: usize, q: usize) -> Vec<(Vec<usize>, bool)> {
    let n = p + q;
    let mut out = Vec::new();
    // iterate subsets of size p in lexicographic order
    let mut idx: Vec<usize> = (0..p).collect();
    loop {
        // parity: number of pairs (i in I, j in J) with j < i
        let mut inversions = 0usize;
        for (a_pos, &i) in idx.iter().enumerate() {
            // positions before i not in I are J-positions crossed by this a
            inversions += i - a_pos;
        }
        out.push((idx.clone(), inversions % 2 == 1));
        if p == 0 {
            break;
        }
        // next combination
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - p {
                idx[i] += 1;
                for j in i + 1..p {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
    out
}
