//! Elements of `Q(zeta_l)` for prime `l`, reduced modulo
//! `Phi_l(x) = 1 + x + ... + x^{l-1}`.
//!
//! An element is a vector of `l-1` rationals `a_0 + a_1 z + ... + a_{l-2}
//! z^{l-2}`. Working modulo `Phi_l` rather than `x^l - 1` forces a canonical
//! form, so two elements are equal exactly when their coefficient vectors
//! are. For `l = 2` this degenerates to `Q` itself with `zeta = -1`, which is
//! how the real-fiber computations (holonomy in `{±1}`) are carried.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{is_prime, Rational};
use crate::error::Error;
use crate::Result;

/// An element of `Q(zeta_l)`, `l` prime, in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    ell: u64,
    /// Exactly `l - 1` coefficients, ascending powers of `zeta`.
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    /// Builds an element from raw coefficients (length must be `l - 1`).
    pub fn new(ell: u64, coeffs: Vec<Rational>) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        if coeffs.len() != (ell - 1) as usize {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients for l={}, got {}",
                ell - 1,
                ell,
                coeffs.len()
            )));
        }
        Ok(CyclotomicNumber { ell, coeffs })
    }

    pub fn zero(ell: u64) -> Self {
        CyclotomicNumber {
            ell,
            coeffs: vec![Rational::zero(); (ell - 1) as usize],
        }
    }

    pub fn one(ell: u64) -> Self {
        Self::from_rational(ell, Rational::one())
    }

    pub fn from_rational(ell: u64, r: Rational) -> Self {
        let mut c = vec![Rational::zero(); (ell - 1) as usize];
        c[0] = r;
        CyclotomicNumber { ell, coeffs: c }
    }

    pub fn from_integer(ell: u64, n: i64) -> Self {
        Self::from_rational(ell, Rational::from_integer(BigInt::from(n)))
    }

    /// `zeta^k`, reduced. `k` is taken modulo `l`.
    pub fn root_of_unity(ell: u64, k: i64) -> Self {
        let l = ell as i64;
        let k = k.rem_euclid(l) as u64;
        let mut c = vec![Rational::zero(); (ell - 1) as usize];
        if k == ell - 1 {
            // zeta^{l-1} = -(1 + zeta + ... + zeta^{l-2})
            for v in c.iter_mut() {
                *v = -Rational::one();
            }
        } else {
            c[k as usize] = Rational::one();
        }
        CyclotomicNumber { ell, coeffs: c }
    }

    pub fn modulus(&self) -> u64 {
        self.ell
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// `true` if the element lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ell != other.ell {
            return Err(Error::ModulusMismatch(self.ell, other.ell));
        }
        Ok(())
    }

    /// Exact sum. Rejects mismatched moduli.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CyclotomicNumber {
            ell: self.ell,
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CyclotomicNumber {
            ell: self.ell,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            ell: self.ell,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Exact product: polynomial multiplication reduced modulo `Phi_l`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let l = self.ell as usize;
        // Accumulate modulo x^l - 1 first, then push zeta^{l-1} down into the
        // canonical basis.
        let mut acc = vec![Rational::zero(); l];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % l;
                acc[k] += a * b;
            }
        }
        let top = acc.pop().expect("l >= 2");
        let coeffs = acc.into_iter().map(|c| c - &top).collect();
        Ok(CyclotomicNumber {
            ell: self.ell,
            coeffs,
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CyclotomicNumber {
            ell: self.ell,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse, via the extended Euclidean algorithm for the
    /// coefficient polynomial against `Phi_l`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(self.ell));
        }
        let l = self.ell as usize;
        // Phi_l = 1 + x + ... + x^{l-1}
        let phi: Vec<Rational> = vec![Rational::one(); l];
        let f: Vec<Rational> = self.coeffs.clone();
        // Extended gcd: maintain (r0, s0), (r1, s1) with si * f = ri mod Phi.
        let mut r0 = phi;
        let mut s0 = vec![];
        let mut r1 = poly_trim(f);
        let mut s1 = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, rem) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            s0 = s1;
            r1 = rem;
            s1 = s2;
        }
        // r0 is a nonzero constant gcd (Phi_l is irreducible over Q).
        debug_assert_eq!(r0.len(), 1);
        let inv_gcd = Rational::one() / r0[0].clone();
        let mut coeffs: Vec<Rational> = s0.iter().map(|c| c * &inv_gcd).collect();
        // s0 has degree < deg Phi - deg f + something; reduce mod Phi to be safe.
        coeffs = poly_mod_phi(coeffs, self.ell);
        coeffs.resize((self.ell - 1) as usize, Rational::zero());
        let result = CyclotomicNumber {
            ell: self.ell,
            coeffs,
        };
        debug_assert!(result.checked_mul(self).unwrap().is_one());
        Ok(result)
    }

    pub fn pow(&self, mut n: u64) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::one(self.ell);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            base = base.checked_mul(&base)?;
            n >>= 1;
        }
        Ok(acc)
    }
}

/// Drops trailing zero coefficients.
fn poly_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

/// Division with remainder of polynomials over Q.
fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    if a.len() < b.len() {
        return (vec![], poly_trim(rem));
    }
    let mut quo = vec![Rational::zero(); a.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    for k in (0..quo.len()).rev() {
        let idx = k + b.len() - 1;
        if rem.len() <= idx || rem[idx].is_zero() {
            continue;
        }
        let q = &rem[idx] / &lead;
        for (j, c) in b.iter().enumerate() {
            let v = &q * c;
            rem[k + j] -= v;
        }
        quo[k] = q;
    }
    (poly_trim(quo), poly_trim(rem))
}

/// Reduces a polynomial modulo `Phi_l` into the canonical basis.
fn poly_mod_phi(p: Vec<Rational>, ell: u64) -> Vec<Rational> {
    let l = ell as usize;
    let mut acc = vec![Rational::zero(); l];
    for (i, c) in p.into_iter().enumerate() {
        acc[i % l] += c;
    }
    let top = acc.pop().unwrap();
    acc.into_iter().map(|c| c - &top).collect()
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CyclotomicNumber {
    /// Textual form `cyc(l=3; 1/2 + 2*z^1)`: nonzero terms only, ascending
    /// exponents, coefficients as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cyc(l={}; ", self.ell)?;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{}", c)?;
            } else {
                write!(f, "{}*z^{}", c, k)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl FromStr for CyclotomicNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix("cyc(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidInput(format!("not a cyc(...) literal: {s}")))?;
        let (head, body) = inner
            .split_once(';')
            .ok_or_else(|| Error::InvalidInput(format!("missing ';' in {s}")))?;
        let ell: u64 = head
            .trim()
            .strip_prefix("l=")
            .ok_or_else(|| Error::InvalidInput(format!("missing l= in {s}")))?
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad modulus in {s}")))?;
        if !is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        let mut out = CyclotomicNumber::zero(ell);
        let body = body.trim();
        if body == "0" {
            return Ok(out);
        }
        for term in body.split('+') {
            let term = term.trim();
            let (coeff_str, exp) = match term.split_once("*z^") {
                Some((c, e)) => {
                    let e: usize = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad exponent in {term}")))?;
                    (c.trim(), e)
                }
                None => (term, 0usize),
            };
            if exp >= (ell - 1) as usize {
                return Err(Error::InvalidInput(format!(
                    "exponent {exp} outside canonical basis for l={ell}"
                )));
            }
            let c: Rational = coeff_str
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad coefficient {coeff_str}")))?;
            out.coeffs[exp] += c;
        }
        Ok(out)
    }
}

/// A root of unity `zeta^k` in the cyclic group of order `l` inside
/// `Q(zeta_l)^*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    ell: u64,
    exponent: u64,
}

impl RootOfUnity {
    pub fn new(ell: u64, exponent: i64) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        Ok(RootOfUnity {
            ell,
            exponent: exponent.rem_euclid(ell as i64) as u64,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.ell
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_identity(&self) -> bool {
        self.exponent == 0
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ell != other.ell {
            return Err(Error::ModulusMismatch(self.ell, other.ell));
        }
        Ok(RootOfUnity {
            ell: self.ell,
            exponent: (self.exponent + other.exponent) % self.ell,
        })
    }

    pub fn inverse(&self) -> Self {
        RootOfUnity {
            ell: self.ell,
            exponent: (self.ell - self.exponent) % self.ell,
        }
    }

    pub fn to_cyclotomic(&self) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(self.ell, self.exponent as i64)
    }

    /// The unit `(1 - zeta^k)^{-1}` certifying the vanishing hypothesis for
    /// `G = Z/l` in `C^*`. Requires `g != 1`.
    pub fn unit_one_minus(&self) -> Result<CyclotomicNumber> {
        if self.is_identity() {
            return Err(Error::OneMinusIdentity);
        }
        let one = CyclotomicNumber::one(self.ell);
        let g = self.to_cyclotomic();
        one.checked_sub(&g)?.inverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn cyc(ell: u64, coeffs: &[(i64, i64)]) -> CyclotomicNumber {
        CyclotomicNumber::new(ell, coeffs.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    /// Independent reduction oracle: multiply in Z[x]/(x^l - 1) by brute
    /// force, then substitute zeta^{l-1} = -(1 + ... + zeta^{l-2}) by hand.
    fn mul_oracle(a: &CyclotomicNumber, b: &CyclotomicNumber) -> Vec<Rational> {
        let l = a.modulus() as usize;
        let mut acc = vec![Rational::zero(); l];
        for i in 0..l - 1 {
            for j in 0..l - 1 {
                let v = &a.coefficients()[i] * &b.coefficients()[j];
                acc[(i + j) % l] += v;
            }
        }
        (0..l - 1).map(|i| &acc[i] - &acc[l - 1]).collect()
    }

    #[test]
    fn add_coefficientwise() {
        // (1 + z) + z = 1 + 2z at l = 3
        let a = cyc(3, &[(1, 1), (1, 1)]);
        let b = cyc(3, &[(0, 1), (1, 1)]);
        assert_eq!(a.checked_add(&b).unwrap(), cyc(3, &[(1, 1), (2, 1)]));
    }

    #[test]
    fn add_identity() {
        let a = cyc(5, &[(2, 3), (0, 1), (-1, 7), (4, 1)]);
        assert_eq!(a.checked_add(&CyclotomicNumber::zero(5)).unwrap(), a);
    }

    #[test]
    fn zeta_plus_zeta_squared_reduces() {
        // z + z^2 = -1 at l = 3, since z^2 = -1 - z.
        let z = CyclotomicNumber::root_of_unity(3, 1);
        let z2 = CyclotomicNumber::root_of_unity(3, 2);
        assert_eq!(z.checked_add(&z2).unwrap(), cyc(3, &[(-1, 1), (0, 1)]));
    }

    #[test]
    fn root_order() {
        for ell in [2u64, 3, 5, 7, 11, 13] {
            let z = CyclotomicNumber::root_of_unity(ell, 1);
            let zl1 = CyclotomicNumber::root_of_unity(ell, ell as i64 - 1);
            assert!(z.checked_mul(&zl1).unwrap().is_one());
        }
    }

    #[test]
    fn one_minus_zeta_product() {
        // (1 - z)(1 - z^2) = 3 at l = 3.
        let one = CyclotomicNumber::one(3);
        let a = one
            .checked_sub(&CyclotomicNumber::root_of_unity(3, 1))
            .unwrap();
        let b = one
            .checked_sub(&CyclotomicNumber::root_of_unity(3, 2))
            .unwrap();
        let p = a.checked_mul(&b).unwrap();
        assert_eq!(p, CyclotomicNumber::from_integer(3, 3));
        assert_eq!(p.coefficients().to_vec(), mul_oracle(&a, &b));
    }

    #[test]
    fn mul_identity() {
        let a = cyc(7, &[(1, 2), (0, 1), (3, 1), (-1, 5), (0, 1), (2, 9)]);
        assert_eq!(a.checked_mul(&CyclotomicNumber::one(7)).unwrap(), a);
    }

    #[test]
    fn modulus_mismatch_rejected() {
        let a = CyclotomicNumber::one(3);
        let b = CyclotomicNumber::one(5);
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::ModulusMismatch(3, 5))
        ));
        assert!(matches!(
            a.checked_mul(&b),
            Err(Error::ModulusMismatch(3, 5))
        ));
    }

    #[test]
    fn inverse_rational() {
        let two = CyclotomicNumber::from_integer(3, 2);
        assert_eq!(two.inverse().unwrap(), cyc(3, &[(1, 2), (0, 1)]));
    }

    #[test]
    fn inverse_one_minus_zeta() {
        // From (1 - z)(1 - z^2) = 3: inv(1 - z) = (1 - z^2)/3 = (2 + z)/3.
        let one = CyclotomicNumber::one(3);
        let a = one
            .checked_sub(&CyclotomicNumber::root_of_unity(3, 1))
            .unwrap();
        assert_eq!(a.inverse().unwrap(), cyc(3, &[(2, 3), (1, 3)]));
    }

    #[test]
    fn inverse_of_root_is_negated_exponent() {
        for ell in [3u64, 5, 7] {
            for k in 1..ell {
                let z = CyclotomicNumber::root_of_unity(ell, k as i64);
                let expect = CyclotomicNumber::root_of_unity(ell, (ell - k) as i64);
                assert_eq!(z.inverse().unwrap(), expect);
            }
        }
    }

    #[test]
    fn zero_inverse_rejected() {
        assert!(matches!(
            CyclotomicNumber::zero(5).inverse(),
            Err(Error::DivisionByZero(5))
        ));
    }

    #[test]
    fn unit_one_minus_small_cases() {
        // l = 2: g = -1, so 1 - g = 2 and the unit is 1/2.
        let g = RootOfUnity::new(2, 1).unwrap();
        assert_eq!(g.unit_one_minus().unwrap(), cyc(2, &[(1, 2)]));
        // l = 3: (1 - z)^{-1} = (2 + z)/3.
        let g = RootOfUnity::new(3, 1).unwrap();
        assert_eq!(g.unit_one_minus().unwrap(), cyc(3, &[(2, 3), (1, 3)]));
        // l = 5, g = z^2: self-checked through multiplication.
        let g = RootOfUnity::new(5, 2).unwrap();
        let u = g.unit_one_minus().unwrap();
        let one_minus = CyclotomicNumber::one(5)
            .checked_sub(&g.to_cyclotomic())
            .unwrap();
        assert!(one_minus.checked_mul(&u).unwrap().is_one());
    }

    #[test]
    fn unit_one_minus_rejects_identity() {
        let g = RootOfUnity::new(7, 0).unwrap();
        assert!(matches!(g.unit_one_minus(), Err(Error::OneMinusIdentity)));
    }

    #[test]
    fn units_for_all_primes_up_to_13() {
        for ell in [2u64, 3, 5, 7, 11, 13] {
            for k in 1..ell {
                let g = RootOfUnity::new(ell, k as i64).unwrap();
                let u = g.unit_one_minus().unwrap();
                let lhs = CyclotomicNumber::one(ell)
                    .checked_sub(&g.to_cyclotomic())
                    .unwrap()
                    .checked_mul(&u)
                    .unwrap();
                assert!(lhs.is_one(), "failed at l={ell}, k={k}");
            }
        }
    }

    #[test]
    fn display_round_trip_examples() {
        let a = cyc(3, &[(1, 2), (2, 1)]);
        assert_eq!(a.to_string(), "cyc(l=3; 1/2 + 2*z^1)");
        let parsed: CyclotomicNumber = a.to_string().parse().unwrap();
        assert_eq!(parsed, a);
        assert_eq!(CyclotomicNumber::zero(5).to_string(), "cyc(l=5; 0)");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_cyc(ell: u64) -> impl Strategy<Value = CyclotomicNumber> {
            proptest::collection::vec((-20i64..=20, 1i64..=9), (ell - 1) as usize)
                .prop_map(move |cs| cyc(ell, &cs))
        }

        proptest! {
            #[test]
            fn field_axioms_l3(a in arb_cyc(3), b in arb_cyc(3), c in arb_cyc(3)) {
                let ab_c = a.checked_mul(&b).unwrap().checked_mul(&c).unwrap();
                let a_bc = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
                prop_assert_eq!(&ab_c, &a_bc);
                let lhs = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
                let rhs = a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap();
                prop_assert_eq!(&lhs, &rhs);
                if !a.is_zero() {
                    prop_assert!(a.checked_mul(&a.inverse().unwrap()).unwrap().is_one());
                }
            }

            #[test]
            fn field_axioms_l7(a in arb_cyc(7), b in arb_cyc(7)) {
                prop_assert_eq!(
                    a.checked_mul(&b).unwrap(),
                    b.checked_mul(&a).unwrap()
                );
                if !a.is_zero() {
                    prop_assert!(a.checked_mul(&a.inverse().unwrap()).unwrap().is_one());
                }
            }

            #[test]
            fn serialize_parse_identity(a in arb_cyc(5)) {
                let s = a.to_string();
                let back: CyclotomicNumber = s.parse().unwrap();
                prop_assert_eq!(back, a);
            }
        }
    }
}
