//! Exact arithmetic primitives: half-integers, rationals, binomials.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

/// Exact rational number, always reduced.
pub type Rational = BigRational;

/// A half-integer `m`, stored as `2m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(m: i64) -> Self {
        HalfInt { twice: 2 * m }
    }

    /// The half-integer `d/2` attached to a boundary of length `d`.
    pub const fn from_length(d: u32) -> Self {
        HalfInt { twice: d as i64 }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn is_half_odd(self) -> bool {
        self.twice % 2 != 0
    }

    /// The integer value, if any.
    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(BigInt::from(self.twice), BigInt::from(2))
    }
}

impl PartialOrd for HalfInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HalfInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.twice.cmp(&other.twice)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `n!` for a nonnegative machine integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `x(x-1)...(x-k+1)` for a rational `x`.
pub fn falling_rat(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut y = x.clone();
    for _ in 0..k {
        acc *= &y;
        y -= Rational::one();
    }
    acc
}

pub fn falling(x: HalfInt, k: u32) -> Rational {
    falling_rat(&x.to_rational(), k)
}

/// `binom(x, k) = falling(x, k) / k!`, defined for every rational `x`.
pub fn binom_rat(x: &Rational, k: u32) -> Rational {
    falling_rat(x, k) / Rational::from_integer(factorial(k))
}

pub fn binom(x: HalfInt, k: u32) -> Rational {
    binom_rat(&x.to_rational(), k)
}

/// Binomial coefficient with a half-integer lower index.
///
/// Returns 0 unless `k` is a nonnegative integer.
pub fn binom_hk(x: HalfInt, k: HalfInt) -> Rational {
    match k.to_int() {
        Some(k) if k >= 0 => binom(x, k as u32),
        _ => Rational::zero(),
    }
}

/// Integer binomial `C(n, k)` with `n, k` nonnegative; zero when `k > n`.
pub fn binom_int(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `n! / prod(parts_i!)`, or 0 when some part is negative.
pub fn multinomial(n: i64, parts: &[i64]) -> Result<BigInt, Error> {
    let total: i64 = parts.iter().sum();
    if total != n {
        return Err(Error::MultinomialSum { n, total });
    }
    if parts.iter().any(|&p| p < 0) {
        return Ok(BigInt::zero());
    }
    let mut acc = BigInt::one();
    let mut used = 0i64;
    for &p in parts {
        acc *= binom_int(used + p, p);
        used += p;
    }
    Ok(acc)
}

/// Converts a rational the caller knows to be integral.
///
/// Panics otherwise: a fractional value here is an implementation bug.
pub fn expect_integer(x: Rational, what: &str) -> BigInt {
    assert!(x.is_integer(), "{what} is not an integer: {x}");
    x.to_integer()
}

/// Renders a rational as `n` or `n/d`.
pub fn rat_to_string(x: &Rational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn sign_pow(e: i64) -> BigInt {
    if e.is_even() {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// All weak compositions of `total` into `parts` nonnegative summands, lexicographic.
pub fn weak_compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0u32; parts];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
    }
    rec(0, total, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binom_examples() {
        assert_eq!(binom(HalfInt::from_int(-1), 0), rat(1));
        assert_eq!(binom(HalfInt::from_int(5), 2), rat(10));
        assert_eq!(binom(HalfInt::HALF, 1), rat_frac(1, 2));
    }

    #[test]
    fn falling_examples() {
        assert_eq!(falling(HalfInt::from_int(3), 3), rat(6));
        assert_eq!(falling(HalfInt::from_int(2), 0), rat(1));
        assert_eq!(falling(HalfInt::from_int(1), 3), rat(0));
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(4, &[2, 2, 0, 0]).unwrap(), BigInt::from(6));
        assert_eq!(multinomial(3, &[-1, 2, 1, 1]).unwrap(), BigInt::zero());
        assert_eq!(multinomial(0, &[]).unwrap(), BigInt::one());
        assert!(multinomial(3, &[1, 1]).is_err());
    }

    #[test]
    fn halfint_display_and_parity() {
        assert_eq!(HalfInt::from_twice(3).to_string(), "3/2");
        assert_eq!(HalfInt::from_twice(4).to_string(), "2");
        assert!(HalfInt::from_twice(-3).is_half_odd());
        assert!(HalfInt::from_twice(-4).is_integer());
    }

    #[test]
    fn compositions_count() {
        assert_eq!(weak_compositions(3, 3).len(), 10);
        assert_eq!(weak_compositions(0, 0).len(), 1);
        assert_eq!(weak_compositions(2, 0).len(), 0);
        assert_eq!(
            weak_compositions(2, 2),
            vec![vec![0, 2], vec![1, 1], vec![2, 0]]
        );
    }

    proptest! {
        #[test]
        fn binom_times_factorial_is_falling(t in -20i64..20, k in 0u32..8) {
            let x = HalfInt::from_twice(t);
            prop_assert_eq!(binom(x, k) * Rational::from_integer(factorial(k)), falling(x, k));
        }

        #[test]
        fn pascal(t in -20i64..20, k in 1u32..8) {
            let x = HalfInt::from_twice(t);
            prop_assert_eq!(binom(x, k), binom(x - HalfInt::ONE, k) + binom(x - HalfInt::ONE, k - 1));
        }

        #[test]
        fn integer_binomials_are_integers(m in -15i64..15, k in 0u32..8) {
            prop_assert!(binom(HalfInt::from_int(m), k).is_integer());
        }

        #[test]
        fn binom_int_matches_rational(n in 0i64..20, k in 0i64..20) {
            let r = binom(HalfInt::from_int(n), k as u32);
            prop_assert_eq!(Rational::from_integer(binom_int(n, k)), r);
        }

        #[test]
        fn halfint_order_matches_rational(a in -50i64..50, b in -50i64..50) {
            let (x, y) = (HalfInt::from_twice(a), HalfInt::from_twice(b));
            prop_assert_eq!(x.cmp(&y), x.to_rational().cmp(&y.to_rational()));
            prop_assert_eq!((x + y).to_rational(), x.to_rational() + y.to_rational());
        }
    }
}
