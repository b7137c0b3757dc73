//! Exact scalar arithmetic: rationals and the cyclotomic fields `Q(zeta_l)`
//! for prime `l`.
//!
//! The rational layer is `num-rational`'s `BigRational`, which already keeps
//! values in lowest terms with a positive denominator. The cyclotomic layer
//! is ours: elements are stored canonically modulo the minimal polynomial
//! `Phi_l = 1 + x + ... + x^{l-1}`, so equality is literal coefficient
//! equality and zero-testing is trivial.

mod cyclotomic;

pub use cyclotomic::{CyclotomicNumber, RootOfUnity};

/// Arbitrary-precision rational number, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Trial-division primality test. Good for the desk-scale moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
