use num_bigint::BigInt;
use num_traits::Zero;

use super::index::{aggregate, pi_choices};
use super::tight::{count_tight, pointed_rooted_count};
use super::{lengths_of, BoundarySpec};
use crate::error::Error;
use crate::numeric::{factorial, HalfInt};
use crate::report::Report;

/// Number of elementary tight slices of tilt `eps` whose inner boundaries have
/// lengths `2 m_i`, i.e. the cardinality of the decorated-tree set `T_eps(m)`.
pub fn decorated_tree_count(eps: i64, ms: &[HalfInt]) -> Result<BigInt, Error> {
    assert!(eps == 0 || eps == 1, "tilt must be 0 or 1");
    if ms.is_empty() {
        return Err(Error::TooFewBoundaries { min: 1, got: 0 });
    }
    if ms.iter().all(|m| m.twice() == 0) {
        return Err(Error::AllZero);
    }
    Ok(card(eps, ms))
}

fn card(eps: i64, ms: &[HalfInt]) -> BigInt {
    let n = ms.len();
    let k = (n - 1) as u32;
    let choices: Vec<_> = ms
        .iter()
        .map(|&m| pi_choices(m, &[0, 1], k, false))
        .collect();
    let mut acc = BigInt::zero();
    for ((r, s, e), t) in aggregate(&choices, k) {
        if e != eps + r as i64 || n as i64 - e != (1 - eps) + s as i64 {
            continue;
        }
        if e == 0 || e == n as i64 {
            // single-type tree: the three leading factors collapse to the
            // number of labeled rooted plane trees with prescribed outdegrees
            acc += factorial(k) * &t.w;
        } else {
            let stat = if eps == 1 { &t.eps_s } else { &t.epsbar_r };
            acc += stat * factorial(e as u32 - 1) * factorial((n as i64 - e - 1) as u32);
        }
    }
    acc
}

fn tight_with(ms: &[HalfInt], extra: &[u32]) -> BigInt {
    let mut lengths = lengths_of(ms);
    lengths.extend_from_slice(extra);
    count_tight(&BoundarySpec::new(lengths).expect("nonzero extra boundary")).expect("n >= 3")
}

/// Checks, for one tuple `ms`, the slice identities
/// `N(2m, 1, eps) = Card T_eps(m)`,
/// `N(2m, 2, 0) = Card T_1(m) + sum_{1 in I} Card T_0(m_I) Card T_0(m_{I^c})`,
/// and in the bipartite case `N(2m, 2, 0) = (n-1)! q_{n-1}(m)`.
pub fn slice_identities_check(ms: &[HalfInt]) -> Report {
    let mut rep = Report::new("slices");
    if ms.is_empty() || ms.iter().all(|m| m.twice() == 0) {
        return rep;
    }
    let show = || {
        ms.iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    for eps in [0, 1] {
        rep.check(
            || format!("N({}, 1, {eps}) = Card T_{eps}", show()),
            tight_with(ms, &[1, eps as u32]),
            card(eps, ms),
        );
    }

    let n = ms.len();
    let lhs = tight_with(ms, &[2, 0]);
    let mut rhs = card(1, ms);
    for mask in 0u32..(1 << (n - 1)) {
        if mask == (1 << (n - 1)) - 1 {
            continue;
        }
        let mut inside = vec![ms[0]];
        let mut outside = Vec::new();
        for (i, &m) in ms.iter().enumerate().skip(1) {
            if mask >> (i - 1) & 1 == 1 {
                inside.push(m);
            } else {
                outside.push(m);
            }
        }
        rhs += card(0, &inside) * card(0, &outside);
    }
    rep.check(
        || format!("N({}, 2, 0) by subset split", show()),
        lhs.clone(),
        rhs,
    );

    if ms.iter().all(|m| m.is_integer()) {
        rep.check(
            || format!("N({}, 2, 0) = (n-1)! q_(n-1)", show()),
            lhs,
            pointed_rooted_count(ms),
        );
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn single_boundary() {
        for m in 1..6 {
            assert_eq!(
                decorated_tree_count(1, &[h(2 * m)]).unwrap(),
                BigInt::from(1)
            );
        }
        assert_eq!(
            decorated_tree_count(0, &[h(3)]).unwrap(),
            count_tight(&BoundarySpec::new(vec![3, 1, 0]).unwrap()).unwrap()
        );
        assert_eq!(
            decorated_tree_count(1, &[h(2), h(2)]).unwrap(),
            count_tight(&BoundarySpec::new(vec![2, 2, 1, 1]).unwrap()).unwrap()
        );
    }

    #[test]
    fn rejects_degenerate() {
        assert_eq!(
            decorated_tree_count(0, &[]),
            Err(Error::TooFewBoundaries { min: 1, got: 0 })
        );
        assert_eq!(decorated_tree_count(1, &[h(0), h(0)]), Err(Error::AllZero));
    }

    #[test]
    fn identities_small() {
        for ms in [
            vec![h(2)],
            vec![h(2), h(2)],
            vec![h(3), h(1)],
            vec![h(1), h(0), h(3)],
            vec![h(4), h(0)],
        ] {
            let rep = slice_identities_check(&ms);
            assert!(rep.passed(), "{:?}", rep.failures);
        }
    }
}
