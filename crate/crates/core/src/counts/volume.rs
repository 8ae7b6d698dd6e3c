use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numeric::{factorial, weak_compositions, Rational};

/// Genus zero volume polynomial
/// `V_{0,n}(b) = (n-3)! / 2^{2n-7} sum_{|k| = n-3} prod (b_i^{k_i} / k_i!)^2`.
pub fn volume_poly(bs: &[Rational]) -> Rational {
    let n = bs.len();
    assert!(n >= 3, "volume polynomial needs n >= 3");
    let k = (n - 3) as u32;
    let mut sum = Rational::zero();
    for ks in weak_compositions(k, n) {
        let mut term = Rational::one();
        for (b, &ki) in bs.iter().zip(&ks) {
            let f = Rational::from_integer(factorial(ki));
            let x = num_traits::pow(b.clone(), ki as usize) / f;
            term *= &x * &x;
        }
        sum += term;
    }
    // 2^{2n-7} is 1/2 at n = 3
    let scale = if n == 3 {
        Rational::from_integer(BigInt::from(2))
    } else {
        Rational::new(BigInt::one(), BigInt::from(2).pow(2 * n as u32 - 7))
    };
    sum * scale * Rational::from_integer(factorial(k))
}
