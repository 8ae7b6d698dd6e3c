//! Index tuples `(eps_i, r_i, s_i)` and aggregated sums over them.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::numeric::{expect_integer, HalfInt};
use crate::polys::pi_rse;

/// One element of an index family: per-coordinate `(eps_i, r_i, s_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiIndexTuple {
    pub eps: Vec<i64>,
    pub r: Vec<u32>,
    pub s: Vec<u32>,
}

impl QuasiIndexTuple {
    pub fn sum_r(&self) -> u32 {
        self.r.iter().sum()
    }

    pub fn sum_s(&self) -> u32 {
        self.s.iter().sum()
    }

    /// `prod_i pi^(eps_i)_{r_i,s_i}(m_i)`.
    pub fn pi_product(&self, ms: &[HalfInt]) -> BigInt {
        let mut acc = BigInt::from(1);
        for (i, &m) in ms.iter().enumerate() {
            let v = pi_rse(self.r[i] as i64, self.s[i] as i64, self.eps[i], m);
            if v.is_zero() {
                return BigInt::zero();
            }
            acc *= expect_integer(v, "pi value");
        }
        acc
    }
}

/// The three named families used by the unified counting formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexVariant {
    /// `I_n`: `eps in {0,1}^n`, `sum s >= 1`.
    In,
    /// `I_{s=0}`.
    S0,
    /// `I^{(-1,1)}_{s=0}`.
    M11S0,
}

/// Every tuple with `eps_i` drawn from `eps_choices[i]`, satisfying
/// `sum eps = sum r + 1` and `sum (1 - eps) = sum s + 2`, in lexicographic order.
pub fn index_family(eps_choices: &[Vec<i64>]) -> Vec<QuasiIndexTuple> {
    let n = eps_choices.len();
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    let budget = (n - 3) as u32;
    let mut cur = QuasiIndexTuple {
        eps: vec![0; n],
        r: vec![0; n],
        s: vec![0; n],
    };
    fn rec(
        i: usize,
        used: u32,
        eps_sum: i64,
        choices: &[Vec<i64>],
        budget: u32,
        cur: &mut QuasiIndexTuple,
        out: &mut Vec<QuasiIndexTuple>,
    ) {
        let n = choices.len();
        if i == n {
            let (r, s) = (cur.sum_r() as i64, cur.sum_s() as i64);
            if eps_sum == r + 1 && n as i64 - eps_sum == s + 2 {
                out.push(cur.clone());
            }
            return;
        }
        for &e in &choices[i] {
            cur.eps[i] = e;
            for r in 0..=budget - used {
                for s in 0..=budget - used - r {
                    cur.r[i] = r;
                    cur.s[i] = s;
                    rec(i + 1, used + r + s, eps_sum + e, choices, budget, cur, out);
                }
            }
        }
        cur.r[i] = 0;
        cur.s[i] = 0;
    }
    rec(0, 0, 0, eps_choices, budget, &mut cur, &mut out);
    out
}

/// `eps_1 = e1`, `eps_2 = e2`, remaining `eps_i in {0,1}`.
pub fn fixed_pair_choices(n: usize, e1: i64, e2: i64) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0, 1]; n];
    c[0] = vec![e1];
    c[1] = vec![e2];
    c
}

/// Tuples of the named family for `n >= 3`.
pub fn index_set(n: usize, variant: IndexVariant) -> impl Iterator<Item = QuasiIndexTuple> {
    let tuples = match variant {
        IndexVariant::In => index_family(&vec![vec![0, 1]; n])
            .into_iter()
            .filter(|t| t.sum_s() >= 1)
            .collect(),
        IndexVariant::S0 => index_family(&vec![vec![0, 1]; n])
            .into_iter()
            .filter(|t| t.sum_s() == 0)
            .collect(),
        IndexVariant::M11S0 => index_family(&fixed_pair_choices(n, -1, 1))
            .into_iter()
            .filter(|t| t.sum_s() == 0)
            .collect::<Vec<_>>(),
    };
    tuples.into_iter()
}

/// Aggregated statistics of all partial tuples sharing `(sum r, sum s, sum eps)`.
#[derive(Clone, Debug, Default)]
pub(crate) struct Totals {
    /// `sum prod w_i`.
    pub w: BigInt,
    /// `sum (sum_i eps_i s_i) prod w_i`.
    pub eps_s: BigInt,
    /// `sum (sum_i (1 - eps_i) r_i) prod w_i`.
    pub epsbar_r: BigInt,
}

/// A nonzero per-coordinate weight.
#[derive(Clone, Debug)]
pub(crate) struct Choice {
    pub eps: i64,
    pub r: u32,
    pub s: u32,
    pub w: BigInt,
}

/// Dynamic programme over coordinates: combines per-coordinate choices into
/// totals keyed by `(sum r, sum s, sum eps)`, with `sum r + sum s <= budget`.
pub(crate) fn aggregate(choices: &[Vec<Choice>], budget: u32) -> HashMap<(u32, u32, i64), Totals> {
    let mut states: HashMap<(u32, u32, i64), Totals> = HashMap::new();
    states.insert(
        (0, 0, 0),
        Totals {
            w: BigInt::from(1),
            ..Default::default()
        },
    );
    for coord in choices {
        let mut next: HashMap<(u32, u32, i64), Totals> = HashMap::new();
        for (&(r, s, e), t) in &states {
            for c in coord {
                if r + s + c.r + c.s > budget {
                    continue;
                }
                let key = (r + c.r, s + c.s, e + c.eps);
                let entry = next.entry(key).or_default();
                let w = &t.w * &c.w;
                entry.eps_s += (&t.eps_s * &c.w) + &w * (c.eps * c.s as i64);
                entry.epsbar_r += (&t.epsbar_r * &c.w) + &w * ((1 - c.eps) * c.r as i64);
                entry.w += w;
            }
        }
        states = next;
    }
    states
}

/// Nonzero values `pi^(eps)_{r,s}(m)` with `eps` in `eps_set` and `r + s <= budget`.
pub(crate) fn pi_choices(m: HalfInt, eps_set: &[i64], budget: u32, s_zero: bool) -> Vec<Choice> {
    let mut out = Vec::new();
    for &eps in eps_set {
        for r in 0..=budget {
            let s_max = if s_zero { 0 } else { budget - r };
            for s in 0..=s_max {
                let v = pi_rse(r as i64, s as i64, eps, m);
                if !v.is_zero() {
                    out.push(Choice {
                        eps,
                        r,
                        s,
                        w: expect_integer(v, "pi value"),
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_sizes() {
        assert_eq!(index_set(3, IndexVariant::In).count(), 0);
        assert_eq!(index_set(4, IndexVariant::In).count(), 16);
        let m11: Vec<_> = index_set(3, IndexVariant::M11S0).collect();
        assert_eq!(m11.len(), 1);
        assert_eq!(m11[0].eps, vec![-1, 1, 1]);
        assert_eq!(m11[0].r, vec![0, 0, 0]);
    }

    #[test]
    fn membership_rules() {
        for n in 3..7 {
            for t in index_set(n, IndexVariant::In) {
                assert_eq!(t.sum_r() + t.sum_s(), n as u32 - 3);
                assert!(t.sum_s() >= 1);
                assert!(t.eps.iter().all(|&e| e == 0 || e == 1));
            }
            for t in index_set(n, IndexVariant::S0) {
                assert_eq!(t.eps.iter().filter(|&&e| e == 0).count(), 2);
                assert_eq!(t.sum_r(), n as u32 - 3);
            }
            for t in index_set(n, IndexVariant::M11S0) {
                assert!(t.eps[1..].iter().all(|&e| e == 1));
            }
        }
    }

    #[test]
    fn stream_has_no_duplicates() {
        let all: Vec<_> = index_set(6, IndexVariant::In).collect();
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(all.len(), set.len());
    }
}
