use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

/// Lattice path with steps in `{-1, 0, +1}` and a set of marked steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedPath {
    pub steps: Vec<i8>,
    pub marked: Vec<bool>,
}

impl MarkedPath {
    /// Every flat step is marked, every up step right after a down step is
    /// marked, and only flat or up steps are marked.
    pub fn is_valid(&self) -> bool {
        if self.steps.len() != self.marked.len() {
            return false;
        }
        for (i, (&s, &m)) in self.steps.iter().zip(&self.marked).enumerate() {
            if !(-1..=1).contains(&s) || (m && s == -1) || (s == 0 && !m) {
                return false;
            }
            if s == 1 && i > 0 && self.steps[i - 1] == -1 && !m {
                return false;
            }
        }
        true
    }

    pub fn end(&self) -> i64 {
        self.steps.iter().map(|&s| s as i64).sum()
    }

    /// Increments at the marked steps, in order.
    pub fn marks(&self) -> Vec<u8> {
        self.steps
            .iter()
            .zip(&self.marked)
            .filter(|(_, &m)| m)
            .map(|(&s, _)| s as u8)
            .collect()
    }
}

/// Number of valid marked paths with `d - 1` steps from height 0 to `eps` whose
/// marked-step increments are exactly `marks`.
pub fn count_marked_paths(d: u32, eps: i64, marks: &[u8]) -> BigInt {
    assert!(d >= 1, "length must be positive");
    assert!(marks.iter().all(|&x| x <= 1), "marks are increments 0 or 1");
    let steps = (d - 1) as i64;
    // (height, marks consumed, last step was down) -> count
    let mut states: HashMap<(i64, usize, bool), BigInt> = HashMap::new();
    states.insert((0, 0, false), BigInt::from(1));
    for _ in 0..steps {
        let mut next: HashMap<(i64, usize, bool), BigInt> = HashMap::new();
        for ((h, used, down), c) in states {
            // unmarked down, unmarked up (not after a down)
            *next.entry((h - 1, used, true)).or_default() += &c;
            if !down {
                *next.entry((h + 1, used, false)).or_default() += &c;
            }
            if let Some(&inc) = marks.get(used) {
                *next.entry((h + inc as i64, used + 1, false)).or_default() += &c;
            }
        }
        states = next;
    }
    states
        .into_iter()
        .filter(|&((h, used, _), _)| h == eps && used == marks.len())
        .fold(BigInt::zero(), |acc, (_, c)| acc + c)
}

/// All valid marked paths with `len` steps ending at height `end`, by brute force.
pub fn enumerate_marked_paths(len: usize, end: i64) -> Vec<MarkedPath> {
    let mut out = Vec::new();
    let mut steps = vec![0i8; len];
    let total = 3usize.pow(len as u32);
    for code in 0..total {
        let mut c = code;
        for s in steps.iter_mut() {
            *s = (c % 3) as i8 - 1;
            c /= 3;
        }
        if steps.iter().map(|&s| s as i64).sum::<i64>() != end {
            continue;
        }
        let free: Vec<usize> = (0..len)
            .filter(|&i| steps[i] == 1 && !(i > 0 && steps[i - 1] == -1))
            .collect();
        for mask in 0u32..(1 << free.len()) {
            let mut marked: Vec<bool> = (0..len)
                .map(|i| steps[i] == 0 || (steps[i] == 1 && i > 0 && steps[i - 1] == -1))
                .collect();
            for (b, &i) in free.iter().enumerate() {
                marked[i] = mask >> b & 1 == 1;
            }
            out.push(MarkedPath {
                steps: steps.clone(),
                marked,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{expect_integer, HalfInt};
    use crate::polys::p_ke;

    #[test]
    fn small_counts() {
        assert_eq!(count_marked_paths(2, 1, &[]), BigInt::from(1));
        assert_eq!(count_marked_paths(2, 1, &[1]), BigInt::from(1));
        assert_eq!(count_marked_paths(3, 0, &[]), BigInt::from(1));
    }

    #[test]
    fn dp_matches_brute_force() {
        for d in 1..=7u32 {
            for eps in [-1i64, 0, 1] {
                let all = enumerate_marked_paths(d as usize - 1, eps);
                let mut by_marks: HashMap<Vec<u8>, usize> = HashMap::new();
                for p in &all {
                    assert!(p.is_valid());
                    *by_marks.entry(p.marks()).or_default() += 1;
                }
                for (marks, c) in by_marks {
                    assert_eq!(
                        count_marked_paths(d, eps, &marks),
                        BigInt::from(c),
                        "d={d} {marks:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn matches_pke_and_ignores_mark_order() {
        for d in 1..=9u32 {
            let m = HalfInt::from_twice(d as i64);
            for eps in [0i64, 1] {
                for r in 0..=3u32 {
                    for s in 0..=3u32 {
                        let mut marks = vec![1u8; r as usize];
                        marks.extend(vec![0u8; s as usize]);
                        let base = count_marked_paths(d, eps, &marks);
                        let e = s as i64 + 1 + eps;
                        if (d as i64 - e) % 2 == 0 {
                            let want = expect_integer(p_ke(r + s, e, m), "");
                            assert_eq!(base, want, "d={d} eps={eps} r={r} s={s}");
                        }
                        marks.reverse();
                        assert_eq!(count_marked_paths(d, eps, &marks), base);
                    }
                }
            }
        }
    }
}
