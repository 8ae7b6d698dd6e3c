//! The polynomial families `p_k`, `q_k`, `p~_k`, `p_{k,e}`, the quasi-polynomials
//! `pi^(eps)_{r,s}`, their multivariate extensions, and an identity checker.
//!
//! Multivariate values are coefficients of products of generating series
//! `sum_k f_k(m) x^k`, which is the composition sum computed by convolution.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numeric::{binom_int, factorial, rat, weak_compositions, HalfInt, Rational};
use crate::report::Report;

/// `(1/(k!)^2) prod_{i=1..k} (m^2 - (i - e/2)^2)`.
pub fn p_ke(k: u32, e: i64, m: HalfInt) -> Rational {
    let t = m.twice();
    let t2 = BigInt::from(t) * t;
    let mut num = BigInt::one();
    for i in 1..=k as i64 {
        let c = 2 * i - e;
        num *= &t2 - BigInt::from(c * c);
        if num.is_zero() {
            return Rational::zero();
        }
    }
    let kf = factorial(k);
    let den = (BigInt::one() << (2 * k as usize)) * &kf * &kf;
    Rational::new(num, den)
}

pub fn p_k(k: u32, m: HalfInt) -> Rational {
    p_ke(k, 0, m)
}

pub fn q_k(k: u32, m: HalfInt) -> Rational {
    p_ke(k, 2, m)
}

pub fn ptilde_k(k: u32, m: HalfInt) -> Rational {
    p_ke(k, 1, m)
}

/// `p_k` with the convention `p_{-1} = 0`.
pub fn p_k_ext(k: i64, m: HalfInt) -> Rational {
    if k < 0 {
        Rational::zero()
    } else {
        p_k(k as u32, m)
    }
}

/// Support test for `pi^(eps)_{r,s}(m)`: `m - (s+1+eps)/2` is an integer.
pub fn pi_supported(s: i64, eps: i64, m: HalfInt) -> bool {
    (m.twice() - (s + 1 + eps)).rem_euclid(2) == 0
}

/// `pi^(eps)_{r,s}(m)`; zero for negative `r` or `s` and off its parity support.
pub fn pi_rse(r: i64, s: i64, eps: i64, m: HalfInt) -> Rational {
    if r < 0 || s < 0 || !pi_supported(s, eps, m) {
        return Rational::zero();
    }
    let k = (r + s) as u32;
    Rational::from_integer(binom_int(r + s, s)) * p_ke(k, s + 1 + eps, m)
}

/// Evaluation of a family member, mostly for reports and the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyFamily {
    P { k: u32 },
    Q { k: u32 },
    PTilde { k: u32 },
    Pke { k: u32, e: i64 },
    Pi { r: u32, s: u32, eps: i64 },
}

impl PolyFamily {
    pub fn eval(self, m: HalfInt) -> Rational {
        match self {
            PolyFamily::P { k } => p_k(k, m),
            PolyFamily::Q { k } => q_k(k, m),
            PolyFamily::PTilde { k } => ptilde_k(k, m),
            PolyFamily::Pke { k, e } => p_ke(k, e, m),
            PolyFamily::Pi { r, s, eps } => pi_rse(r as i64, s as i64, eps, m),
        }
    }
}

/// Truncated series `[f(0), ..., f(kmax)]`.
fn series(kmax: u32, f: impl Fn(u32) -> Rational) -> Vec<Rational> {
    (0..=kmax).map(f).collect()
}

/// Product of truncated series, keeping degrees `<= kmax`.
pub(crate) fn series_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let len = a.len().min(b.len());
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn coefficient(factors: Vec<Vec<Rational>>, k: u32) -> Rational {
    let mut acc = factors.into_iter().reduce(|a, b| series_mul(&a, &b));
    match acc.as_mut() {
        Some(s) => s[k as usize].clone(),
        None => {
            if k == 0 {
                Rational::one()
            } else {
                Rational::zero()
            }
        }
    }
}

/// `p_k(m_1, ..., m_n) = sum p_{k_1}(m_1) prod_{i>=2} q_{k_i}(m_i)`.
pub fn p_multi(k: u32, ms: &[HalfInt]) -> Rational {
    let factors = ms
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            if i == 0 {
                series(k, |j| p_k(j, m))
            } else {
                series(k, |j| q_k(j, m))
            }
        })
        .collect();
    coefficient(factors, k)
}

pub fn q_multi(k: u32, ms: &[HalfInt]) -> Rational {
    let factors = ms.iter().map(|&m| series(k, |j| q_k(j, m))).collect();
    coefficient(factors, k)
}

/// `p~_k(m_1, m_2; m_3, ..., m_n)`.
pub fn ptilde_multi(k: u32, m1: HalfInt, m2: HalfInt, rest: &[HalfInt]) -> Rational {
    let mut factors = vec![
        series(k, |j| ptilde_k(j, m1)),
        series(k, |j| ptilde_k(j, m2)),
    ];
    factors.extend(rest.iter().map(|&m| series(k, |j| q_k(j, m))));
    coefficient(factors, k)
}

/// `p_multi` as a literal sum over weak compositions.
pub fn p_multi_compositions(k: u32, ms: &[HalfInt]) -> Rational {
    weak_compositions(k, ms.len())
        .into_iter()
        .map(|ks| {
            ks.iter()
                .zip(ms)
                .enumerate()
                .map(|(i, (&ki, &m))| if i == 0 { p_k(ki, m) } else { q_k(ki, m) })
                .product::<Rational>()
        })
        .sum()
}

/// The manifestly symmetric form `sum_{k_0+...+k_n=k} C(n-1,k_0) prod p_{k_i}(m_i)`.
pub fn p_multi_symmetric(k: u32, ms: &[HalfInt]) -> Rational {
    let n = ms.len();
    weak_compositions(k, n + 1)
        .into_iter()
        .map(|ks| {
            let lead = Rational::from_integer(binom_int(n as i64 - 1, ks[0] as i64));
            lead * ks[1..]
                .iter()
                .zip(ms)
                .map(|(&ki, &m)| p_k(ki, m))
                .product::<Rational>()
        })
        .sum()
}

/// Two-face petal-necklace sums `pi^(0)_{r,s}(m1,m2)` (`eps0 = 0`) and
/// `pi^(1)_{r,s}(m1,m2)` (`eps0 = 1`).
pub fn pi_twoface(eps0: i64, r0: i64, s0: i64, m1: HalfInt, m2: HalfInt) -> Rational {
    if r0 < 0 || s0 < 0 {
        return Rational::zero();
    }
    let pairs: [(i64, i64); 2] = if eps0 == 0 {
        [(-1, 1), (0, 0)]
    } else {
        [(0, 1), (1, 0)]
    };
    let mut acc = Rational::zero();
    for r1 in 0..=r0 {
        for s1 in 0..=s0 {
            let (r2, s2) = (r0 - r1, s0 - s1);
            for (e1, e2) in pairs {
                acc += pi_rse(r1, s1, e1, m1) * pi_rse(r2, s2, e2, m2);
            }
        }
    }
    acc
}

/// All half-integers `j` with `0 < j < m` and `m - j` an integer.
fn below(m: HalfInt) -> impl Iterator<Item = HalfInt> {
    let t = m.twice();
    let start = if t % 2 == 0 { 2 } else { 1 };
    (start..t).step_by(2).map(HalfInt::from_twice)
}

fn hs(ms: &[HalfInt]) -> String {
    let parts: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Every tuple in `{0, .., max}^n`, as doubled values `2m` stepping by `step`.
pub(crate) fn grid(n: usize, lo: i64, hi: i64, step: i64) -> Vec<Vec<HalfInt>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            let mut t = lo;
            while t <= hi {
                let mut w = v.clone();
                w.push(HalfInt::from_twice(t));
                next.push(w);
                t += step;
            }
        }
        out = next;
    }
    out
}

/// Checks the univariate and multivariate identities of the polynomial families.
///
/// Univariate checks run for `k <= k_max` and `2m <= 2 m_max`; multivariate ones
/// for up to four variables with `2m_i <= min(2 m_max, 5)`.
pub fn verify_poly_identities(k_max: u32, m_max: u32) -> Report {
    let mut rep = Report::new("polys");
    let tmax = 2 * m_max as i64;
    let univ: Vec<HalfInt> = (0..=tmax).map(HalfInt::from_twice).collect();

    for &m in &univ {
        for k in 0..=k_max {
            rep.check(
                || format!("q_k = p_k + p_{{k-1}} k={k} m={m}"),
                q_k(k, m),
                p_k(k, m) + p_k_ext(k as i64 - 1, m),
            );
            rep.check(|| format!("p even k={k} m={m}"), p_k(k, m), p_k(k, -m));
            rep.check(|| format!("q even k={k} m={m}"), q_k(k, m), q_k(k, -m));
            rep.check(
                || format!("ptilde even k={k} m={m}"),
                ptilde_k(k, m),
                ptilde_k(k, -m),
            );
            if m.is_integer() {
                rep.check_true(|| format!("p integral k={k} m={m}"), p_k(k, m).is_integer());
                rep.check_true(|| format!("q integral k={k} m={m}"), q_k(k, m).is_integer());
            } else {
                rep.check_true(
                    || format!("ptilde integral k={k} m={m}"),
                    ptilde_k(k, m).is_integer(),
                );
            }
            let kk = rat(k as i64 + 1);
            if m.is_integer() && m > HalfInt::ZERO {
                let mr = m.to_rational();
                let sum_p: Rational = below(m).map(|j| j.to_rational() * rat(2) * p_k(k, j)).sum();
                rep.check(
                    || format!("p string equation k={k} m={m}"),
                    &kk * p_k(k + 1, m),
                    (&mr - rat(k as i64 + 1)) * p_k(k, m) + sum_p,
                );
                let sum_q: Rational = below(m).map(|j| j.to_rational() * rat(2) * q_k(k, j)).sum();
                rep.check(
                    || format!("q string equation k={k} m={m}"),
                    &kk * q_k(k + 1, m),
                    (&mr - rat(k as i64)) * q_k(k, m) + sum_q,
                );
            }
            if m.is_half_odd() && m > HalfInt::ZERO {
                let mr = m.to_rational();
                let sum: Rational = below(m)
                    .map(|j| j.to_rational() * rat(2) * ptilde_k(k, j))
                    .sum();
                rep.check(
                    || format!("p~ string equation k={k} m={m}"),
                    &kk * ptilde_k(k + 1, m),
                    (mr - rat(k as i64) - crate::numeric::rat_frac(1, 2)) * ptilde_k(k, m) + sum,
                );
            }
            for e in -2..=4i64 {
                if k >= 1 {
                    let kr = rat(k as i64);
                    rep.check(
                        || format!("pke dilaton k={k} e={e} m={m}"),
                        &kr * p_ke(k, e + 2, m),
                        &kr * p_ke(k, e, m) + rat(k as i64 - e) * p_ke(k - 1, e, m),
                    );
                }
            }
        }
        pi_relations(&mut rep, k_max as i64, m);
    }

    multivariate_identities(&mut rep, k_max, tmax.min(5));
    twoface_identities(&mut rep, k_max as i64, tmax.min(5));
    rep
}

fn pi_relations(rep: &mut Report, bound: i64, m: HalfInt) {
    for r in 0..=bound {
        for s in 0..=bound {
            for eps in -2..=2 {
                let v = pi_rse(r, s, eps, m);
                if (-1..=1).contains(&eps) && m.twice() >= 0 && v != Rational::zero() {
                    rep.check_true(
                        || format!("pi integral r={r} s={s} eps={eps} m={m}"),
                        v.is_integer(),
                    );
                }
                rep.check(
                    || format!("nspieps r={r} s={s} eps={eps} m={m}"),
                    rat(s) * v,
                    rat(r + 1) * pi_rse(r + 1, s - 1, eps + 1, m),
                );
            }
            rep.check(
                || format!("npi1 r={r} s={s} m={m}"),
                pi_rse(r, s, 1, m),
                pi_rse(r, s, -1, m) + pi_rse(r - 1, s, -1, m),
            );
            rep.check(
                || format!("nspi1 r={r} s={s} m={m}"),
                rat(s) * pi_rse(r, s, 1, m),
                rat(r + 1) * pi_rse(r + 1, s - 1, 0, m) + rat(r) * pi_rse(r, s - 1, 0, m),
            );
        }
    }
}

fn multivariate_identities(rep: &mut Report, k_max: u32, tmax: i64) {
    let two = rat(2);
    for n in 1..=4usize {
        let int_grid = grid(n, 0, tmax, 2);
        let all_grid = grid(n, 0, tmax, 1);
        for ms in &all_grid {
            for k in 0..=k_max {
                let p = p_multi(k, ms);
                let q = q_multi(k, ms);
                rep.check(
                    || format!("p compositions k={k} ms={}", hs(ms)),
                    p_multi_compositions(k, ms),
                    p.clone(),
                );
                rep.check(
                    || format!("alternativepk k={k} ms={}", hs(ms)),
                    p_multi_symmetric(k, ms),
                    p.clone(),
                );
                for i in 0..n.saturating_sub(1) {
                    let mut sw = ms.clone();
                    sw.swap(i, i + 1);
                    rep.check(
                        || format!("p symmetric k={k} ms={} swap {i}", hs(ms)),
                        p.clone(),
                        p_multi(k, &sw),
                    );
                    rep.check(
                        || format!("q symmetric k={k} ms={} swap {i}", hs(ms)),
                        q.clone(),
                        q_multi(k, &sw),
                    );
                }
                let mut with_zero = ms.clone();
                with_zero.push(HalfInt::ZERO);
                rep.check(
                    || format!("p with zero k={k} ms={}", hs(ms)),
                    p.clone(),
                    p_multi(k, &with_zero),
                );
                rep.check(
                    || format!("q with zero k={k} ms={}", hs(ms)),
                    q.clone(),
                    q_multi(k, &with_zero),
                );
                let mut rooted = vec![HalfInt::ONE];
                rooted.extend_from_slice(ms);
                rep.check(
                    || format!("addingroot k={k} ms={}", hs(ms)),
                    q.clone(),
                    p_multi(k, &rooted),
                );
                if k >= 1 {
                    let mut one = ms.clone();
                    one.push(HalfInt::ONE);
                    rep.check(
                        || format!("pdil k={k} ms={}", hs(ms)),
                        p_multi(k - 1, ms),
                        p_multi(k, &one) - p_multi(k, &with_zero),
                    );
                }
            }
        }
        for ms in &int_grid {
            let total: Rational = ms.iter().map(|m| m.to_rational()).sum();
            for k in 0..k_max {
                let mut rhs = (&total - rat(k as i64 + 1)) * p_multi(k, ms);
                for i in 0..n {
                    for j in below(ms[i]) {
                        let mut v = ms.clone();
                        v[i] = j;
                        rhs += j.to_rational() * &two * p_multi(k, &v);
                    }
                }
                rep.check(
                    || format!("pstr k={k} ms={}", hs(ms)),
                    rat(k as i64 + 1) * p_multi(k + 1, ms),
                    rhs,
                );
            }
        }
    }
    // p~ identities: two half-odd arguments followed by integers.
    let odd: Vec<HalfInt> = (1..=tmax).step_by(2).map(HalfInt::from_twice).collect();
    for extra in 0..=2usize {
        for rest in grid(extra, 0, tmax, 2) {
            for &m1 in &odd {
                for &m2 in &odd {
                    for k in 0..=k_max {
                        let v = ptilde_multi(k, m1, m2, &rest);
                        let tag = || format!("k={k} m1={m1} m2={m2} rest={}", hs(&rest));
                        rep.check(
                            || format!("ptilde symmetric {}", tag()),
                            v.clone(),
                            ptilde_multi(k, m2, m1, &rest),
                        );
                        if m2 == HalfInt::HALF && rest.is_empty() {
                            rep.check(
                                || format!("ptilde one-var {}", tag()),
                                ptilde_k(k, m1),
                                v.clone(),
                            );
                        }
                        if m1 == HalfInt::HALF && m2 == HalfInt::HALF {
                            rep.check(
                                || format!("ptilde to q {}", tag()),
                                q_multi(k, &rest),
                                v.clone(),
                            );
                        }
                        if k >= 1 {
                            let mut one = rest.clone();
                            one.push(HalfInt::ONE);
                            let mut zero = rest.clone();
                            zero.push(HalfInt::ZERO);
                            rep.check(
                                || format!("tildepdil {}", tag()),
                                ptilde_multi(k - 1, m1, m2, &rest),
                                ptilde_multi(k, m1, m2, &one) - ptilde_multi(k, m1, m2, &zero),
                            );
                        }
                        if k < k_max {
                            let total: Rational =
                                [m1, m2].iter().chain(&rest).map(|m| m.to_rational()).sum();
                            let mut rhs = (total - rat(k as i64 + 1)) * &v;
                            for j in below(m1) {
                                rhs += j.to_rational() * &two * ptilde_multi(k, j, m2, &rest);
                            }
                            for j in below(m2) {
                                rhs += j.to_rational() * &two * ptilde_multi(k, m1, j, &rest);
                            }
                            for i in 0..rest.len() {
                                for j in below(rest[i]) {
                                    let mut w = rest.clone();
                                    w[i] = j;
                                    rhs += j.to_rational() * &two * ptilde_multi(k, m1, m2, &w);
                                }
                            }
                            rep.check(
                                || format!("tildepstr {}", tag()),
                                rat(k as i64 + 1) * ptilde_multi(k + 1, m1, m2, &rest),
                                rhs,
                            );
                        }
                    }
                }
            }
        }
    }
}

fn twoface_identities(rep: &mut Report, bound: i64, tmax: i64) {
    for t1 in 1..=tmax {
        for t2 in 1..=tmax {
            let (m1, m2) = (HalfInt::from_twice(t1), HalfInt::from_twice(t2));
            for r in 1..=bound {
                for s in 1..=bound {
                    let lhs = Rational::from_integer(factorial(r as u32 - 1) * factorial(s as u32))
                        * pi_twoface(0, r - 1, s, m1, m2);
                    let rhs = Rational::from_integer(factorial(r as u32) * factorial(s as u32 - 1))
                        * pi_twoface(1, r, s - 1, m1, m2);
                    rep.check(
                        || format!("two-face pi forms agree r={r} s={s} m1={m1} m2={m2}"),
                        lhs,
                        rhs,
                    );
                }
            }
            if m1.is_integer() && m2.is_integer() {
                for k in 0..=bound {
                    rep.check(
                        || format!("twoface bipartite k={k} m1={m1} m2={m2}"),
                        p_multi(k as u32, &[m1, m2]),
                        pi_twoface(0, k, 0, m1, m2),
                    );
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat_frac;
    use proptest::prelude::*;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn frozen_values() {
        for k in 0..6 {
            let d = if k == 0 { rat(1) } else { rat(0) };
            assert_eq!(p_k(k, HalfInt::ONE), d);
            assert_eq!(q_k(k, HalfInt::ZERO), d);
            assert_eq!(ptilde_k(k, HalfInt::HALF), d);
        }
        for n in 3..9u32 {
            let sign = if (n - 3) % 2 == 0 { 1 } else { -1 };
            assert_eq!(p_k(n - 3, HalfInt::ZERO), rat(sign));
        }
        assert_eq!(p_k(1, h(4)), rat(3));
        assert_eq!(q_k(1, h(2)), rat(1));
        assert_eq!(q_k(2, h(4)), rat(3));
        assert_eq!(ptilde_k(0, h(7)), rat(1));
        assert_eq!(ptilde_k(1, h(3)), rat(2));
        assert_eq!(p_ke(1, 3, h(3)), rat(2));
        assert_eq!(p_ke(2, 3, h(3)), rat(1));
        assert_eq!(pi_rse(0, 1, 1, h(3)), rat(2));
    }

    #[test]
    fn pke_recovers_families() {
        for t in -9..10 {
            for k in 0..5 {
                assert_eq!(p_ke(k, 0, h(t)), p_k(k, h(t)));
                assert_eq!(p_ke(k, 1, h(t)), ptilde_k(k, h(t)));
                assert_eq!(p_ke(k, 2, h(t)), q_k(k, h(t)));
            }
        }
    }

    #[test]
    fn pi_at_zero_and_half() {
        for r in 0..5 {
            for s in 0..5 {
                let delta = if r == 0 && s == 0 { rat(1) } else { rat(0) };
                assert_eq!(pi_rse(r, s, 1, HalfInt::ZERO), delta);
                assert_eq!(pi_rse(r, s, 0, HalfInt::ZERO), rat(0));
                assert_eq!(pi_rse(r, s, 0, HalfInt::HALF), delta);
                assert_eq!(pi_rse(r, s, 1, HalfInt::HALF), rat(0));
                assert_eq!(pi_rse(r, s, -1, HalfInt::HALF), rat(0));
            }
        }
    }

    #[test]
    fn multivariate_examples() {
        let ones = [HalfInt::ONE; 4];
        assert_eq!(p_multi(1, &ones), rat(3));
        assert_eq!(q_multi(1, &ones[..2]), rat(2));
        assert_eq!(ptilde_multi(0, h(3), h(5), &[h(4)]), rat(1));
        for k in 0..4 {
            for t in 0..7 {
                assert_eq!(
                    p_multi(k, &[h(t), HalfInt::ZERO, HalfInt::ZERO]),
                    p_k(k, h(t))
                );
                assert_eq!(q_multi(k, &[h(t)]), q_k(k, h(t)));
            }
        }
    }

    #[test]
    fn twoface_examples() {
        assert_eq!(pi_twoface(0, 0, 0, HalfInt::HALF, HalfInt::HALF), rat(1));
        // Total degree 2 + 2 + 1 is odd, so no such necklace exists.
        assert_eq!(pi_twoface(1, 0, 0, HalfInt::ONE, HalfInt::ONE), rat(0));
        assert_eq!(pi_twoface(0, 2, 0, h(4), h(2)), p_multi(2, &[h(4), h(2)]));
    }

    #[test]
    fn identity_suite_small() {
        let rep = verify_poly_identities(3, 3);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(rep.cases > 1000);
    }

    #[test]
    fn pi_relation_instance() {
        assert_eq!(pi_rse(0, 1, 0, HalfInt::ONE), rat(1));
        assert_eq!(pi_rse(1, 0, 1, HalfInt::ONE), rat(1));
        assert_eq!(q_k(2, h(4)), p_k(2, h(4)) + p_k(1, h(4)));
        assert_eq!(rat_frac(4, 2), rat(2));
    }

    proptest! {
        #[test]
        fn p_multi_is_symmetric(ts in proptest::collection::vec(0i64..9, 1..5), k in 0u32..4, seed in 0usize..24) {
            let ms: Vec<HalfInt> = ts.iter().map(|&t| h(t)).collect();
            let mut perm = ms.clone();
            let n = perm.len();
            for i in 0..n {
                perm.swap(i, (seed + i * 7) % n);
            }
            prop_assert_eq!(p_multi(k, &ms), p_multi(k, &perm));
            prop_assert_eq!(q_multi(k, &ms), q_multi(k, &perm));
        }

        #[test]
        fn alternative_form_agrees(ts in proptest::collection::vec(-6i64..9, 1..5), k in 0u32..4) {
            let ms: Vec<HalfInt> = ts.iter().map(|&t| h(t)).collect();
            prop_assert_eq!(p_multi(k, &ms), p_multi_symmetric(k, &ms));
        }

        #[test]
        fn families_are_even(t in -30i64..30, k in 0u32..6, e in -3i64..4) {
            prop_assert_eq!(p_ke(k, e, h(t)), p_ke(k, e, h(-t)));
        }
    }
}
