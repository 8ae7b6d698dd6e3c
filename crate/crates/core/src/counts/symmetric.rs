//! Sums over the index set `I` and its restrictions `I^{(e1,e2)}`, used for the
//! symmetric rewritings of the tight count and the transmutation relations.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::index::fixed_pair_choices;
use crate::error::Error;
use crate::numeric::{expect_integer, factorial, HalfInt};
use crate::polys::pi_rse;
use crate::report::Report;

/// Restriction on `r = sum r_i` and `s = sum s_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Range {
    SGe1,
    RGe1,
    S0,
    R0,
}

/// Factorial prefactor.
#[derive(Clone, Copy, Debug)]
enum Fact {
    /// `r! (s-1)!`
    RSm1,
    /// `(r-1)! s!`
    Rm1S,
    /// `r! s!`
    RS,
}

/// Per-coordinate statistic `(i, eps_i, r_i, s_i) -> contribution`; the summand
/// carries `sum_i stat(i, ...)` as a linear multiplier.
type Stat<'a> = &'a dyn Fn(usize, i64, u32, u32) -> i64;

/// `sum over tuples in I (eps_i restricted to eps[i]) within range of fact * stat * prod pi`.
fn family_sum(
    ms: &[HalfInt],
    eps: &[Vec<i64>],
    range: Range,
    fact: Fact,
    stat: Option<Stat>,
) -> BigInt {
    let n = ms.len();
    let k = (n - 3) as u32;
    let mut states: HashMap<(u32, u32, i64), (BigInt, BigInt)> = HashMap::new();
    states.insert((0, 0, 0), (BigInt::from(1), BigInt::zero()));
    for (i, &m) in ms.iter().enumerate() {
        let mut opts = Vec::new();
        for &e in &eps[i] {
            for r in 0..=k {
                for s in 0..=k - r {
                    if (range == Range::S0 && s > 0) || (range == Range::R0 && r > 0) {
                        continue;
                    }
                    let v = pi_rse(r as i64, s as i64, e, m);
                    if !v.is_zero() {
                        let st = stat.map_or(0, |f| f(i, e, r, s));
                        opts.push((e, r, s, expect_integer(v, "pi value"), st));
                    }
                }
            }
        }
        let mut next: HashMap<(u32, u32, i64), (BigInt, BigInt)> = HashMap::new();
        for (&(r0, s0, e0), (w0, st0)) in &states {
            for (e, r, s, w, st) in &opts {
                if r0 + s0 + r + s > k {
                    continue;
                }
                let entry = next.entry((r0 + r, s0 + s, e0 + e)).or_default();
                let w1 = w0 * w;
                entry.1 += st0 * w + &w1 * *st;
                entry.0 += w1;
            }
        }
        states = next;
    }

    let mut acc = BigInt::zero();
    for ((r, s, e), (w, st)) in states {
        if e != r as i64 + 1 || n as i64 - e != s as i64 + 2 {
            continue;
        }
        let keep = match range {
            Range::SGe1 => s >= 1,
            Range::RGe1 => r >= 1,
            Range::S0 => s == 0,
            Range::R0 => r == 0,
        };
        if !keep {
            continue;
        }
        let mult = if stat.is_some() { st } else { w };
        if mult.is_zero() {
            continue;
        }
        let (a, b) = match fact {
            Fact::RSm1 => (r as i64, s as i64 - 1),
            Fact::Rm1S => (r as i64 - 1, s as i64),
            Fact::RS => (r as i64, s as i64),
        };
        assert!(
            a >= 0 && b >= 0,
            "negative factorial with nonzero multiplier"
        );
        acc += mult * factorial(a as u32) * factorial(b as u32);
    }
    acc
}

fn free(n: usize) -> Vec<Vec<i64>> {
    vec![vec![0, 1]; n]
}

fn pair(n: usize, e1: i64, e2: i64) -> Vec<Vec<i64>> {
    fixed_pair_choices(n, e1, e2)
}

fn with_third(mut c: Vec<Vec<i64>>, e3: i64) -> Vec<Vec<i64>> {
    c[2] = vec![e3];
    c
}

fn require(ms: &[HalfInt]) -> Result<(), Error> {
    if ms.len() < 3 {
        return Err(Error::TooFewBoundaries {
            min: 3,
            got: ms.len(),
        });
    }
    Ok(())
}

/// The two-distinguished-face form of the tight count (needs `m_1, m_2 > 0`).
pub fn gennonbip(ms: &[HalfInt]) -> Result<BigInt, Error> {
    require(ms)?;
    if ms[0].twice() == 0 || ms[1].twice() == 0 {
        return Err(Error::Precondition(
            "the first two lengths must be positive",
        ));
    }
    let n = ms.len();
    let mut acc = BigInt::zero();
    for e3 in [0, 1] {
        // eps_3 (s_1 + s_2) + sum_{j >= 3} eps_j s_j
        let sa = move |i: usize, e: i64, _r: u32, s: u32| {
            if i < 2 {
                e3 * s as i64
            } else {
                e * s as i64
            }
        };
        // (1 - eps_3)(r_1 + r_2) + sum_{j >= 3} (1 - eps_j) r_j
        let sb = move |i: usize, e: i64, r: u32, _s: u32| {
            if i < 2 {
                (1 - e3) * r as i64
            } else {
                (1 - e) * r as i64
            }
        };
        for (e1, e2) in [(-1, 1), (0, 0)] {
            acc += family_sum(
                ms,
                &with_third(pair(n, e1, e2), e3),
                Range::SGe1,
                Fact::RSm1,
                Some(&sa),
            );
        }
        for (e1, e2) in [(0, 1), (1, 0)] {
            acc += family_sum(
                ms,
                &with_third(pair(n, e1, e2), e3),
                Range::RGe1,
                Fact::Rm1S,
                Some(&sb),
            );
        }
    }
    for (e1, e2) in [(-1, 1), (0, 0)] {
        acc += family_sum(ms, &pair(n, e1, e2), Range::S0, Fact::RS, None);
    }
    for (e1, e2) in [(0, 1), (1, 0)] {
        acc += family_sum(ms, &pair(n, e1, e2), Range::R0, Fact::RS, None);
    }
    Ok(acc)
}

/// `sum_{I_{s>=1}} r!(s-1)! (sum eps_j s_j) prod pi + sum_{I^{(-1,1)}_{s=0} u I_{s=0}} r! s! prod pi`.
pub fn pifin(ms: &[HalfInt]) -> Result<BigInt, Error> {
    require(ms)?;
    let n = ms.len();
    let stat = |_: usize, e: i64, _: u32, s: u32| e * s as i64;
    Ok(
        family_sum(ms, &free(n), Range::SGe1, Fact::RSm1, Some(&stat))
            + family_sum(ms, &pair(n, -1, 1), Range::S0, Fact::RS, None)
            + family_sum(ms, &free(n), Range::S0, Fact::RS, None),
    )
}

/// `sum_{I_{r>=1}} (r-1)! s! (sum (1-eps_j) r_j) prod pi + sum_{I^{(-1,1)}_{s=0} u I_{r=0}} r! s! prod pi`.
pub fn piinter(ms: &[HalfInt]) -> Result<BigInt, Error> {
    require(ms)?;
    let n = ms.len();
    let stat = |_: usize, e: i64, r: u32, _: u32| (1 - e) * r as i64;
    Ok(
        family_sum(ms, &free(n), Range::RGe1, Fact::Rm1S, Some(&stat))
            + family_sum(ms, &pair(n, -1, 1), Range::S0, Fact::RS, None)
            + family_sum(ms, &free(n), Range::R0, Fact::RS, None),
    )
}

/// Multiplier `s_j` (or `r_j`) at coordinate `j`.
fn at(j: usize, use_s: bool) -> impl Fn(usize, i64, u32, u32) -> i64 {
    move |i, _, r, s| match (i == j, use_s) {
        (false, _) => 0,
        (true, true) => s as i64,
        (true, false) => r as i64,
    }
}

/// Checks the transmutation relations for one tuple `ms` (`n >= 3`).
pub fn transmutation_check(ms: &[HalfInt]) -> Report {
    let mut rep = Report::new("transmutation");
    if ms.len() < 3 {
        return rep;
    }
    let n = ms.len();
    let show = ms
        .iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(",");

    for j in 0..n {
        let lhs_stat =
            move |i: usize, e: i64, _: u32, s: u32| if i == j { (1 - e) * s as i64 } else { 0 };
        let rhs_stat =
            move |i: usize, e: i64, r: u32, _: u32| if i == j { e * r as i64 } else { 0 };
        rep.check(
            || format!("single-face transmutation j={} at ({show})", j + 1),
            family_sum(ms, &free(n), Range::SGe1, Fact::RSm1, Some(&lhs_stat)),
            family_sum(ms, &free(n), Range::RGe1, Fact::Rm1S, Some(&rhs_stat)),
        );
    }

    // eps_3 = 1 restricts to the eps_3-weighted terms, eps_3 = 0 to the (1 - eps_3) ones.
    // In the eps3 = 0 pairs the r >= 1 side is the one carrying (r-1)!.
    let one = |e1, e2| with_third(pair(n, e1, e2), 1);
    let zero = |e1, e2| with_third(pair(n, e1, e2), 0);
    let (s1, s2, r1, r2) = (at(0, true), at(1, true), at(0, false), at(1, false));
    let pairs: [(&str, BigInt, BigInt); 5] = [
        (
            "paired transmutation s1 vs r1",
            family_sum(ms, &one(-1, 1), Range::SGe1, Fact::RSm1, Some(&s1)),
            family_sum(ms, &one(0, 1), Range::RGe1, Fact::Rm1S, Some(&r1)),
        ),
        (
            "paired transmutation s2, swapped tilts",
            family_sum(ms, &one(-1, 1), Range::SGe1, Fact::RSm1, Some(&s2)),
            family_sum(ms, &one(1, -1), Range::SGe1, Fact::RSm1, Some(&s2)),
        ),
        (
            "paired transmutation s2 vs r2",
            family_sum(ms, &one(1, -1), Range::SGe1, Fact::RSm1, Some(&s2)),
            family_sum(ms, &one(1, 0), Range::RGe1, Fact::Rm1S, Some(&r2)),
        ),
        (
            "paired transmutation r1 vs s1, eps3 = 0",
            family_sum(ms, &zero(1, 0), Range::RGe1, Fact::Rm1S, Some(&r1)),
            family_sum(ms, &zero(0, 0), Range::SGe1, Fact::RSm1, Some(&s1)),
        ),
        (
            "paired transmutation r2 vs s2, eps3 = 0",
            family_sum(ms, &zero(0, 1), Range::RGe1, Fact::Rm1S, Some(&r2)),
            family_sum(ms, &zero(0, 0), Range::SGe1, Fact::RSm1, Some(&s2)),
        ),
    ];
    for (name, lhs, rhs) in pairs {
        rep.check(|| format!("{name} at ({show})"), lhs, rhs);
    }

    for j in 2..n {
        let lhs_stat =
            move |i: usize, e: i64, _: u32, s: u32| if i == j { e * s as i64 } else { 0 };
        let rhs_stat =
            move |i: usize, e: i64, r: u32, _: u32| if i == j { (1 - e) * r as i64 } else { 0 };
        rep.check(
            || format!("pinned transmutation j={} at ({show})", j + 1),
            family_sum(
                ms,
                &pair(n, -1, 1),
                Range::SGe1,
                Fact::RSm1,
                Some(&lhs_stat),
            ),
            family_sum(ms, &pair(n, 1, 1), Range::RGe1, Fact::Rm1S, Some(&rhs_stat)),
        );
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counts::index::{index_family, QuasiIndexTuple};
    use crate::counts::{count_tight, lengths_of, BoundarySpec};

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    /// Term-by-term evaluation over the explicit tuple list.
    fn literal(
        ms: &[HalfInt],
        eps: &[Vec<i64>],
        keep: impl Fn(u32, u32) -> bool,
        weight: impl Fn(&QuasiIndexTuple, i64, i64) -> Option<BigInt>,
    ) -> BigInt {
        let mut acc = BigInt::zero();
        for t in index_family(eps) {
            let (r, s) = (t.sum_r(), t.sum_s());
            if !keep(r, s) {
                continue;
            }
            if let Some(w) = weight(&t, r as i64, s as i64) {
                acc += w * t.pi_product(ms);
            }
        }
        acc
    }

    fn fact(x: i64) -> BigInt {
        factorial(x as u32)
    }

    fn pifin_literal(ms: &[HalfInt]) -> BigInt {
        let n = ms.len();
        let first = literal(
            ms,
            &free(n),
            |_, s| s >= 1,
            |t, r, s| {
                let st: i64 = (0..n).map(|i| t.eps[i] * t.s[i] as i64).sum();
                Some(fact(r) * fact(s - 1) * st)
            },
        );
        let second = literal(ms, &pair(n, -1, 1), |_, s| s == 0, |_, r, _| Some(fact(r)));
        let third = literal(ms, &free(n), |_, s| s == 0, |_, r, _| Some(fact(r)));
        first + second + third
    }

    fn gennonbip_literal(ms: &[HalfInt]) -> BigInt {
        let n = ms.len();
        let mut acc = BigInt::zero();
        for (e1, e2) in [(-1, 1), (0, 0)] {
            acc += literal(
                ms,
                &pair(n, e1, e2),
                |_, _| true,
                |t, r, s| {
                    if s == 0 {
                        return Some(fact(r));
                    }
                    let st = t.eps[2] * (t.s[0] + t.s[1]) as i64
                        + (2..n).map(|i| t.eps[i] * t.s[i] as i64).sum::<i64>();
                    Some(fact(r) * st * fact(s - 1))
                },
            );
        }
        for (e1, e2) in [(0, 1), (1, 0)] {
            acc += literal(
                ms,
                &pair(n, e1, e2),
                |_, _| true,
                |t, r, s| {
                    if r == 0 {
                        return Some(fact(s));
                    }
                    let st = (1 - t.eps[2]) * (t.r[0] + t.r[1]) as i64
                        + (2..n).map(|i| (1 - t.eps[i]) * t.r[i] as i64).sum::<i64>();
                    Some(fact(s) * st * fact(r - 1))
                },
            );
        }
        acc
    }

    fn samples() -> Vec<Vec<HalfInt>> {
        vec![
            vec![h(2), h(2), h(2)],
            vec![h(1), h(1), h(1), h(3)],
            vec![h(3), h(1), h(2), h(0)],
            vec![h(2), h(4), h(1), h(1), h(2)],
            vec![h(5), h(1), h(3), h(0), h(1)],
            vec![h(1), h(3), h(1), h(1), h(1), h(1)],
            vec![h(2), h(1), h(0), h(3), h(2), h(4)],
        ]
    }

    #[test]
    fn aggregated_matches_literal() {
        for ms in samples() {
            assert_eq!(pifin(&ms).unwrap(), pifin_literal(&ms), "{ms:?}");
            assert_eq!(gennonbip(&ms).unwrap(), gennonbip_literal(&ms), "{ms:?}");
        }
    }

    #[test]
    fn three_forms_agree_with_count() {
        for ms in samples() {
            let n = count_tight(&BoundarySpec::new(lengths_of(&ms)).unwrap()).unwrap();
            assert_eq!(pifin(&ms).unwrap(), n, "{ms:?}");
            assert_eq!(piinter(&ms).unwrap(), n, "{ms:?}");
            assert_eq!(gennonbip(&ms).unwrap(), n, "{ms:?}");
        }
    }

    #[test]
    fn transmutations_hold() {
        for ms in samples() {
            let rep = transmutation_check(&ms);
            assert!(rep.passed(), "{:?}", rep.failures);
        }
    }

    #[test]
    fn gennonbip_needs_positive_pair() {
        assert!(gennonbip(&[h(0), h(2), h(2)]).is_err());
        assert!(pifin(&[h(2), h(2)]).is_err());
    }
}
