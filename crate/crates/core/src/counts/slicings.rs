use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::index::{aggregate, Choice};
use super::tight::count_tight;
use super::{lengths_of, BoundarySpec};
use crate::error::Error;
use crate::numeric::{
    binom, binom_hk, binom_rat, expect_integer, factorial, falling, falling_rat, multinomial,
    sign_pow, weak_compositions, HalfInt, Rational,
};
use crate::polys::{p_k, pi_rse, ptilde_k, q_k};
use crate::report::Report;

/// `M(l)`: number of planar maps (not necessarily tight) with faces of degree `2 l_i`,
/// zero-degree entries being marked vertices.
pub fn slicings(spec: &BoundarySpec) -> Result<BigInt, Error> {
    spec.require_n(3)?;
    let ls = spec.ms();
    let n = ls.len();
    let odd = spec.odd_count();
    if odd % 2 == 1 {
        return Ok(BigInt::zero());
    }
    if odd >= 4 {
        return Ok(extended_slicings(&ls));
    }
    let total = ls.iter().fold(HalfInt::ZERO, |a, &b| a + b);
    let mut acc = falling(total - HalfInt::ONE, (n - 3) as u32);
    for &l in &ls {
        let bottom = if l.is_half_odd() {
            l - HalfInt::HALF
        } else {
            l
        };
        acc *= binom_hk(l + l - HalfInt::ONE, bottom);
    }
    Ok(expect_integer(acc, "slicings count"))
}

/// Multinomial weight of one face in the census of non-bipartite slicings.
///
/// A face of degree 0 is a marked vertex and contributes exactly when
/// `eps = 1, r = s = 0`, like `pi^(1)_{0,0}(0) = 1`.
fn face_weight(l: HalfInt, eps: i64, r: u32, s: u32) -> BigInt {
    if l == HalfInt::ZERO {
        return if eps == 1 && r == 0 && s == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    let (r, s) = (r as i64, s as i64);
    let t = l.twice();
    let a2 = t - (s + 1 + eps);
    let b2 = t - 2 * r - (s + 1 - eps);
    if a2 % 2 != 0 {
        return BigInt::zero();
    }
    multinomial(t - 1, &[a2 / 2, b2 / 2, r, s]).expect("parts sum to 2l - 1")
}

fn extended_slicings(ls: &[HalfInt]) -> BigInt {
    let n = ls.len();
    let k = (n - 3) as u32;
    let choices: Vec<Vec<Choice>> = ls
        .iter()
        .map(|&l| {
            let mut c = Vec::new();
            for eps in [0, 1] {
                for r in 0..=k {
                    for s in 0..=k - r {
                        let w = face_weight(l, eps, r, s);
                        if !w.is_zero() {
                            c.push(Choice { eps, r, s, w });
                        }
                    }
                }
            }
            c
        })
        .collect();
    let mut acc = BigInt::zero();
    for ((r, s, e), t) in aggregate(&choices, k) {
        if s >= 1 && e == r as i64 + 1 && n as i64 - e == s as i64 + 2 {
            acc += factorial(r) * &t.eps_s * factorial(s - 1);
        }
    }
    acc
}

/// `(l_1 + ... + l_4 - 2) prod binom(2 l_i - 1, l_i - 1/2)` for four half-odd `l_i`.
pub fn four_odd_slicings(ls: [HalfInt; 4]) -> BigInt {
    assert!(
        ls.iter().all(|l| l.is_half_odd() && l.twice() > 0),
        "need positive half-odd values"
    );
    let total = ls.iter().fold(HalfInt::ZERO, |a, &b| a + b) - HalfInt::from_int(2);
    let mut acc = total.to_rational();
    for l in ls {
        acc *= binom_hk(l + l - HalfInt::ONE, l - HalfInt::HALF);
    }
    expect_integer(acc, "four-odd slicings")
}

/// `A_{l,m} = (2m / 2l) binom(2l, l - m)`, with `A_{0,0} = 1`.
pub fn subst_a(l: HalfInt, m: HalfInt) -> BigInt {
    let diff = l - m;
    if m.twice() < 0 || !diff.is_integer() || diff.twice() < 0 {
        return BigInt::zero();
    }
    if l == HalfInt::ZERO {
        return BigInt::one();
    }
    let v = Rational::new(BigInt::from(m.twice()), BigInt::from(l.twice())) * binom_hk(l + l, diff);
    expect_integer(v, "A coefficient")
}

/// `B_{m,l} = (-1)^{m-l} binom(m + l - 1, m - l)`, the inverse of `A`.
pub fn subst_b(m: HalfInt, l: HalfInt) -> BigInt {
    let diff = m - l;
    if l.twice() < 0 || !diff.is_integer() || diff.twice() < 0 {
        return BigInt::zero();
    }
    let k = (diff.twice() / 2) as u32;
    sign_pow(k as i64) * expect_integer(binom(m + l - HalfInt::ONE, k), "B coefficient")
}

/// Values `x <= top` with `top - x` a nonnegative integer and `x >= 0`.
fn ladder(top: HalfInt) -> Vec<HalfInt> {
    let mut out = Vec::new();
    let mut x = top;
    while x.twice() >= 0 {
        out.push(x);
        x = x - HalfInt::ONE;
    }
    out.reverse();
    out
}

/// Sum over `x_i <= top_i` (same parity class) of `prod coeff(top_i, x_i) * f(x)`.
fn triangular_sum<C, F>(tops: &[HalfInt], coeff: C, mut f: F) -> Result<BigInt, Error>
where
    C: Fn(HalfInt, HalfInt) -> BigInt,
    F: FnMut(&BoundarySpec) -> Result<BigInt, Error>,
{
    let ranges: Vec<Vec<HalfInt>> = tops.iter().map(|&t| ladder(t)).collect();
    let mut idx = vec![0usize; tops.len()];
    let mut acc = BigInt::zero();
    loop {
        let xs: Vec<HalfInt> = idx.iter().zip(&ranges).map(|(&i, r)| r[i]).collect();
        if xs.iter().any(|x| x.twice() != 0) {
            let mut w = BigInt::one();
            for (&t, &x) in tops.iter().zip(&xs) {
                w *= coeff(t, x);
                if w.is_zero() {
                    break;
                }
            }
            if !w.is_zero() {
                acc += w * f(&BoundarySpec::new(lengths_of(&xs))?)?;
            }
        }
        let mut i = 0;
        loop {
            if i == idx.len() {
                return Ok(acc);
            }
            idx[i] += 1;
            if idx[i] < ranges[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Tight counts recovered from slicings: `N(2m) = sum prod B_{m_i,l_i} M(l)`.
pub fn tight_from_slicings(spec: &BoundarySpec) -> Result<BigInt, Error> {
    spec.require_n(3)?;
    triangular_sum(&spec.ms(), subst_b, slicings)
}

/// Slicings recovered from tight counts: `M(l) = sum prod A_{l_i,m_i} N(2m)`.
pub fn slicings_from_tight(spec: &BoundarySpec) -> Result<BigInt, Error> {
    spec.require_n(3)?;
    triangular_sum(&spec.ms(), subst_a, count_tight)
}

/// Checks the substitution identities relating `A`, `B`, tight counts and slicings:
/// `A B = 1` on indices `<= 2 l <= bound`, the one-face convolutions of `p_k`, `q_k`
/// (integer `l`) and `p~_k` (half-integer `l`), the petal-tree convolution into
/// multinomials, and the falling-factorial expansion for `n <= 6`.
pub fn substitution_identities_check(bound: u32, k_max: u32) -> Report {
    let mut rep = Report::new("substitution");
    let idx: Vec<HalfInt> = (0..=bound as i64).map(HalfInt::from_twice).collect();
    for &l in &idx {
        for &l2 in &idx {
            let sum: BigInt = idx.iter().map(|&m| subst_a(l, m) * subst_b(m, l2)).sum();
            let want = BigInt::from((l == l2) as u8);
            rep.check(|| format!("(AB)[{l},{l2}]"), want, sum);
        }
    }

    for k in 0..=k_max {
        for &l in &idx {
            let lhs = |f: fn(u32, HalfInt) -> Rational| -> Rational {
                ladder(l)
                    .into_iter()
                    .map(|m| Rational::from_integer(subst_a(l, m)) * f(k, m))
                    .sum()
            };
            if l.is_integer() {
                let c = binom(l + l - HalfInt::ONE, l.to_int().unwrap() as u32);
                rep.check(
                    || format!("conv p_{k} at l={l}"),
                    binom(l - HalfInt::ONE, k) * &c,
                    lhs(p_k),
                );
                rep.check(
                    || format!("conv q_{k} at l={l}"),
                    binom(l, k) * &c,
                    lhs(q_k),
                );
            } else {
                let c = binom_hk(l + l - HalfInt::ONE, l - HalfInt::HALF);
                rep.check(
                    || format!("conv p~_{k} at l={l}"),
                    binom(l - HalfInt::HALF, k) * c,
                    lhs(ptilde_k),
                );
            }
        }
    }

    for r in 0..=k_max as i64 {
        for s in 0..=k_max as i64 {
            for eps in [0, 1] {
                for &l in idx.iter().skip(1) {
                    if (l.twice() - (s + 1 + eps)) % 2 != 0 {
                        continue;
                    }
                    let lhs: Rational = ladder(l)
                        .into_iter()
                        .map(|m| Rational::from_integer(subst_a(l, m)) * pi_rse(r, s, eps, m))
                        .sum();
                    let t = l.twice();
                    let parts = [(t - s - 1 - eps) / 2, (t - 2 * r - s - 1 + eps) / 2, r, s];
                    let want = multinomial(t - 1, &parts).expect("parts sum to 2l - 1");
                    rep.check(
                        || format!("petal convolution r={r} s={s} eps={eps} l={l}"),
                        Rational::from_integer(want),
                        lhs,
                    );
                }
            }
        }
    }

    for n in 3..=6usize {
        let k = (n - 3) as u32;
        let side = n as i64 - 1;
        let mut ls = vec![0i64; n];
        loop {
            let total: i64 = ls.iter().sum();
            let lhs = falling_rat(&Rational::from_integer(BigInt::from(total - 1)), k);
            let mut rhs = Rational::zero();
            for ks in weak_compositions(k, n) {
                let mut t = binom_rat(&Rational::from_integer(BigInt::from(ls[0] - 1)), ks[0]);
                for i in 1..n {
                    t *= binom_rat(&Rational::from_integer(BigInt::from(ls[i])), ks[i]);
                }
                rhs += t;
            }
            rhs *= Rational::from_integer(factorial(k));
            rep.check(
                || format!("falling-factorial expansion at {ls:?}"),
                lhs,
                rhs,
            );
            let mut i = 0;
            while i < n && ls[i] == side - 1 {
                ls[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            ls[i] += 1;
        }
    }
    rep
}
