//! Labeled one-type and two-type plane forests with prescribed child-type sequences.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::Error;
use crate::numeric::factorial;
use crate::report::Report;

/// Largest forest handled by [`enumerate_forests`].
pub const FOREST_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// The super-root.
    O,
    A,
    B,
}

/// `w[i][0]` is the type of vertex `i` (`O` for the super-root `0`) and
/// `w[i][1..]` the types of its children in planar order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeArray {
    pub w: Vec<Vec<Kind>>,
}

/// Statistics of a type array.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stats {
    pub a: usize,
    pub b: usize,
    pub a_o: usize,
    pub b_o: usize,
    pub a_b: usize,
    pub b_a: usize,
}

impl TypeArray {
    pub fn new(w: Vec<Vec<Kind>>) -> Self {
        TypeArray { w }
    }

    /// One-type array (all vertices `A`) with child counts `k`; roots fill up to `n` children in total.
    pub fn onetype(k: &[usize]) -> Option<Self> {
        let n = k.len();
        let k0 = n.checked_sub(k.iter().sum())?;
        let mut w = vec![std::iter::once(Kind::O)
            .chain(vec![Kind::A; k0])
            .collect::<Vec<_>>()];
        w.extend(k.iter().map(|&ki| vec![Kind::A; ki + 1]));
        Some(TypeArray { w })
    }

    /// Number of labeled vertices.
    pub fn n(&self) -> usize {
        self.w.len() - 1
    }

    fn well_formed(&self) -> Result<(), Error> {
        if self.w.is_empty() || self.w[0].first() != Some(&Kind::O) {
            return Err(Error::Precondition(
                "type array must start with the super-root O",
            ));
        }
        let stray = self.w.iter().enumerate().any(|(i, wi)| {
            wi.is_empty()
                || wi
                    .iter()
                    .enumerate()
                    .any(|(j, &t)| (t == Kind::O) != (i == 0 && j == 0))
        });
        if stray {
            return Err(Error::Precondition("only the super-root has type O"));
        }
        Ok(())
    }

    /// Recomputes the statistics, checking both consistency equations.
    pub fn stats(&self) -> Result<Stats, Error> {
        self.well_formed()?;
        let own = |t: Kind| self.w[1..].iter().filter(|wi| wi[0] == t).count();
        let kids = |t: Kind| {
            self.w
                .iter()
                .flat_map(|wi| &wi[1..])
                .filter(|&&x| x == t)
                .count()
        };
        let (a, b) = (own(Kind::A), own(Kind::B));
        if a != kids(Kind::A) {
            return Err(Error::InconsistentTypeArray {
                equation: "A-consistency",
                lhs: a,
                rhs: kids(Kind::A),
            });
        }
        if b != kids(Kind::B) {
            return Err(Error::InconsistentTypeArray {
                equation: "B-consistency",
                lhs: b,
                rhs: kids(Kind::B),
            });
        }
        let roots = |t: Kind| self.w[0][1..].iter().filter(|&&x| x == t).count();
        let cross = |p: Kind, c: Kind| {
            self.w[1..]
                .iter()
                .filter(|wi| wi[0] == p)
                .flat_map(|wi| &wi[1..])
                .filter(|&&x| x == c)
                .count()
        };
        Ok(Stats {
            a,
            b,
            a_o: roots(Kind::A),
            b_o: roots(Kind::B),
            a_b: cross(Kind::B, Kind::A),
            b_a: cross(Kind::A, Kind::B),
        })
    }

    /// The array with the root sequence rotated left by `j`.
    pub fn rotate_roots(&self, j: usize) -> Self {
        let mut w = self.w.clone();
        w[0][1..].rotate_left(j);
        TypeArray { w }
    }
}

fn fact(n: usize) -> BigInt {
    factorial(n as u32)
}

/// Plane forests on vertices `1..=n` where vertex `i` has `k[i-1]` children and
/// vertex 1 lies in the first tree.
pub fn count_onetype(k: &[usize]) -> BigInt {
    let n = k.len();
    if n == 0 || k.iter().sum::<usize>() >= n {
        return BigInt::zero();
    }
    fact(n - 1)
}

/// Two-type labeled plane forests with type array `w`.
pub fn count_twotype(w: &TypeArray) -> Result<BigInt, Error> {
    let s = w.stats()?;
    Ok(match (s.a, s.b) {
        (0, 0) => BigInt::one(),
        (a, 0) => s.a_o * fact(a - 1),
        (0, b) => s.b_o * fact(b - 1),
        (a, b) => (s.a_o * s.b_o + s.a_o * s.b_a + s.a_b * s.b_o) * fact(a - 1) * fact(b - 1),
    })
}

/// Two-type forests with type array `w` having vertex 1 in the first tree.
/// Vertex 1 must have type `A`.
pub fn count_twotype_constrained(w: &TypeArray) -> Result<BigInt, Error> {
    let s = w.stats()?;
    if w.n() == 0 || w.w[1][0] != Kind::A {
        return Err(Error::Precondition("vertex 1 must have type A"));
    }
    if w.w[0].len() == 1 {
        return Ok(BigInt::zero());
    }
    if s.b == 0 {
        return Ok(fact(s.a - 1));
    }
    let lead = match w.w[0].get(1) {
        Some(Kind::A) => s.b_o + s.b_a,
        Some(Kind::B) => s.a_b,
        _ => return Ok(BigInt::zero()),
    };
    Ok(lead * fact(s.a - 1) * fact(s.b - 1))
}

/// A labeled plane forest: `children[0]` lists the roots, `children[i]` the
/// children of vertex `i`; `kinds[i]` is the type of vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Forest {
    pub children: Vec<Vec<usize>>,
    pub kinds: Vec<Kind>,
}

impl Forest {
    pub fn type_array(&self) -> TypeArray {
        TypeArray {
            w: self
                .children
                .iter()
                .zip(&self.kinds)
                .map(|(cs, &t)| {
                    std::iter::once(t)
                        .chain(cs.iter().map(|&c| self.kinds[c]))
                        .collect()
                })
                .collect(),
        }
    }

    /// Preorder `(label, type, child count)` triples.
    pub fn serialize(&self) -> Vec<(usize, Kind, usize)> {
        let mut out = Vec::with_capacity(self.children.len());
        let mut stack = vec![0usize];
        while let Some(u) = stack.pop() {
            out.push((u, self.kinds[u], self.children[u].len()));
            stack.extend(self.children[u].iter().rev());
        }
        out
    }

    pub fn first_tree_contains(&self, v: usize) -> bool {
        let Some(&r) = self.children[0].first() else {
            return false;
        };
        let mut stack = vec![r];
        while let Some(u) = stack.pop() {
            if u == v {
                return true;
            }
            stack.extend(&self.children[u]);
        }
        false
    }
}

/// Every forest with type array `w` (with vertex 1 in the first tree if `constrained`),
/// by assigning vertices to child slots and keeping the acyclic assignments.
pub fn enumerate_forests(w: &TypeArray, constrained: bool) -> Result<BTreeSet<Forest>, Error> {
    let n = w.n();
    if n > FOREST_CAP {
        return Err(Error::SizeCap {
            size: n,
            cap: FOREST_CAP,
        });
    }
    w.stats()?;
    let kinds: Vec<Kind> = w.w.iter().map(|wi| wi[0]).collect();
    let slots: Vec<(usize, Kind)> =
        w.w.iter()
            .enumerate()
            .flat_map(|(i, wi)| wi[1..].iter().map(move |&t| (i, t)))
            .collect();
    let mut out = BTreeSet::new();
    let mut used = vec![false; n + 1];
    let mut assign = Vec::with_capacity(slots.len());
    place(&slots, &kinds, &mut used, &mut assign, &mut |assign| {
        let mut children = vec![Vec::new(); n + 1];
        for (&(p, _), &c) in slots.iter().zip(assign) {
            children[p].push(c);
        }
        let f = Forest {
            children,
            kinds: kinds.clone(),
        };
        if f.serialize().len() == n + 1 && (!constrained || f.first_tree_contains(1)) {
            out.insert(f);
        }
    });
    Ok(out)
}

fn place(
    slots: &[(usize, Kind)],
    kinds: &[Kind],
    used: &mut [bool],
    assign: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    let i = assign.len();
    if i == slots.len() {
        emit(assign);
        return;
    }
    for c in 1..kinds.len() {
        if !used[c] && kinds[c] == slots[i].1 {
            used[c] = true;
            assign.push(c);
            place(slots, kinds, used, assign, emit);
            assign.pop();
            used[c] = false;
        }
    }
}

/// Every consistent type array on `n` labeled vertices.
pub fn consistent_arrays(n: usize) -> Vec<TypeArray> {
    let mut out = Vec::new();
    let mut comp = Vec::new();
    let mut comps = Vec::new();
    compositions(n, n + 1, &mut comp, &mut comps);
    for mask in 0u32..(1 << n) {
        let own: Vec<Kind> = (0..n)
            .map(|i| if mask >> i & 1 == 1 { Kind::B } else { Kind::A })
            .collect();
        let a = own.iter().filter(|&&t| t == Kind::A).count();
        for word in words_with(n, a) {
            for k in &comps {
                let mut w = Vec::with_capacity(n + 1);
                let mut pos = 0;
                for (i, &ki) in k.iter().enumerate() {
                    let head = if i == 0 { Kind::O } else { own[i - 1] };
                    w.push(
                        std::iter::once(head)
                            .chain(word[pos..pos + ki].iter().copied())
                            .collect(),
                    );
                    pos += ki;
                }
                out.push(TypeArray { w });
            }
        }
    }
    out
}

fn compositions(total: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if parts == 1 {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for x in 0..=total {
        cur.push(x);
        compositions(total - x, parts - 1, cur, out);
        cur.pop();
    }
}

fn words_with(len: usize, a: usize) -> Vec<Vec<Kind>> {
    (0u32..(1 << len))
        .filter(|m| m.count_ones() as usize == len - a)
        .map(|m| {
            (0..len)
                .map(|i| if m >> i & 1 == 1 { Kind::B } else { Kind::A })
                .collect()
        })
        .collect()
}

/// Preorder children lists of every plane forest with `n` vertices (ids `1..=n`, `0` the super-root).
fn forest_shapes(n: usize) -> Vec<Vec<Vec<usize>>> {
    // subtree sizes in preorder
    fn sizes(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in 1..=n {
            for sub in sizes(first - 1) {
                for rest in sizes(n - first) {
                    let mut f = vec![first];
                    f.extend(&sub);
                    f.extend(rest);
                    out.push(f);
                }
            }
        }
        out
    }
    sizes(n)
        .into_iter()
        .map(|pre| {
            let mut children = vec![Vec::new(); n + 1];
            // (vertex, descendants still to place)
            let mut stack = vec![(0usize, n)];
            for (i, &sz) in pre.iter().enumerate() {
                while stack.last().unwrap().1 == 0 {
                    stack.pop();
                }
                let top = stack.last_mut().unwrap();
                top.1 -= sz;
                children[top.0].push(i + 1);
                stack.push((i + 1, sz - 1));
            }
            children
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (1..=n).collect();
    heap_permute(n, &mut p, &mut out);
    out
}

fn heap_permute(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, p, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}

/// Number of forests and of forests with vertex 1 in the first tree, for every
/// type array realized on `n` labeled vertices.
pub fn tally_forests(n: usize) -> HashMap<TypeArray, (u64, u64)> {
    let shapes = forest_shapes(n);
    let perms = permutations(n);
    let maps: Vec<HashMap<TypeArray, (u64, u64)>> = shapes
        .par_iter()
        .map(|shape| {
            let mut tally: HashMap<TypeArray, (u64, u64)> = HashMap::new();
            let mut first = vec![false; n + 1];
            if let Some(&r) = shape[0].first() {
                let mut stack = vec![r];
                while let Some(u) = stack.pop() {
                    first[u] = true;
                    stack.extend(&shape[u]);
                }
            }
            for perm in &perms {
                // perm[id - 1] is the label of shape vertex id
                let one = (1..=n).find(|&id| perm[id - 1] == 1).unwrap();
                for mask in 0u32..(1 << n) {
                    let kind = |id: usize| match id {
                        0 => Kind::O,
                        _ if mask >> (id - 1) & 1 == 1 => Kind::B,
                        _ => Kind::A,
                    };
                    let mut w = vec![Vec::new(); n + 1];
                    for (id, cs) in shape.iter().enumerate() {
                        let label = if id == 0 { 0 } else { perm[id - 1] };
                        w[label] = std::iter::once(kind(id))
                            .chain(cs.iter().map(|&c| kind(c)))
                            .collect();
                    }
                    let e = tally.entry(TypeArray { w }).or_default();
                    e.0 += 1;
                    e.1 += u64::from(first[one]);
                }
            }
            tally
        })
        .collect();
    let mut total: HashMap<TypeArray, (u64, u64)> = HashMap::new();
    for m in maps {
        for (k, (g, c)) in m {
            let e = total.entry(k).or_default();
            e.0 += g;
            e.1 += c;
        }
    }
    total
}

/// Closed forms against brute-force tallies on every consistent array with `n <= n_max`.
pub fn verify_forests(n_max: usize) -> Report {
    let mut rep = Report::new("forests");
    for n in 1..=n_max {
        let tally = tally_forests(n);
        let arrays = consistent_arrays(n);
        let bad: Vec<String> = arrays
            .par_iter()
            .flat_map_iter(|w| {
                let (g, c) = tally.get(w).copied().unwrap_or((0, 0));
                let mut errs = Vec::new();
                if count_twotype(w).unwrap() != BigInt::from(g) {
                    errs.push(format!("general {w:?}: brute {g}"));
                }
                if w.w[1][0] == Kind::A {
                    if count_twotype_constrained(w).unwrap() != BigInt::from(c) {
                        errs.push(format!("constrained {w:?}: brute {c}"));
                    }
                    let k0 = w.w[0].len() - 1;
                    let summed: BigInt = (0..k0)
                        .map(|j| count_twotype_constrained(&w.rotate_roots(j)).unwrap())
                        .sum();
                    if summed != count_twotype(w).unwrap() {
                        errs.push(format!("circular sum {w:?}"));
                    }
                }
                errs
            })
            .collect();
        rep.check(|| format!("forest arrays n={n}"), 0usize, bad.len());
        for e in bad.into_iter().take(5) {
            rep.check_true(|| e.clone(), false);
        }
        for k in onetype_sequences(n) {
            let w = TypeArray::onetype(&k).unwrap();
            let c = tally.get(&w).map_or(0, |v| v.1);
            rep.check(
                || format!("onetype {k:?}"),
                count_onetype(&k),
                BigInt::from(c),
            );
        }
    }
    rep
}

fn onetype_sequences(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for t in 0..n {
        let mut cur = Vec::new();
        let mut all = Vec::new();
        compositions(t, n, &mut cur, &mut all);
        out.extend(all);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Kind::{A, B, O};

    #[test]
    fn onetype_examples() {
        assert_eq!(count_onetype(&[2, 0, 0]), BigInt::from(2));
        assert_eq!(count_onetype(&[1, 1, 1]), BigInt::zero());
        assert_eq!(count_onetype(&[0, 0, 0, 0]), BigInt::from(6));
        for k in [vec![2, 0, 0], vec![0, 0, 0, 0], vec![1, 0, 1, 0]] {
            let w = TypeArray::onetype(&k).unwrap();
            assert_eq!(
                BigInt::from(enumerate_forests(&w, true).unwrap().len()),
                count_onetype(&k),
                "{k:?}"
            );
        }
    }

    #[test]
    fn twotype_degenerate_cases() {
        let empty = TypeArray::new(vec![vec![O]]);
        assert_eq!(count_twotype(&empty).unwrap(), BigInt::one());
        // three A vertices, two roots: a^O (a-1)! = 2 * 2
        let w = TypeArray::new(vec![vec![O, A, A], vec![A, A], vec![A], vec![A]]);
        assert_eq!(count_twotype(&w).unwrap(), BigInt::from(4));
        assert_eq!(enumerate_forests(&w, false).unwrap().len(), 4);
        assert_eq!(count_twotype_constrained(&w).unwrap(), BigInt::from(2));
    }

    #[test]
    fn mixed_small_arrays() {
        let w = TypeArray::new(vec![vec![O, A], vec![A, B], vec![B]]);
        assert_eq!(count_twotype(&w).unwrap(), BigInt::one());
        assert_eq!(enumerate_forests(&w, false).unwrap().len(), 1);
        let w = TypeArray::new(vec![
            vec![O, B, A],
            vec![A, B],
            vec![B],
            vec![B, A],
            vec![A],
        ]);
        for constrained in [false, true] {
            let brute = enumerate_forests(&w, constrained).unwrap().len();
            let closed = if constrained {
                count_twotype_constrained(&w)
            } else {
                count_twotype(&w)
            };
            assert_eq!(
                BigInt::from(brute),
                closed.unwrap(),
                "constrained={constrained}"
            );
        }
    }

    #[test]
    fn inconsistent_arrays_are_named() {
        let w = TypeArray::new(vec![vec![O, A], vec![A, A]]);
        assert_eq!(
            count_twotype(&w),
            Err(Error::InconsistentTypeArray {
                equation: "A-consistency",
                lhs: 1,
                rhs: 2
            })
        );
        let w = TypeArray::new(vec![vec![O, A], vec![A], vec![B]]);
        assert!(matches!(
            count_twotype(&w),
            Err(Error::InconsistentTypeArray {
                equation: "B-consistency",
                ..
            })
        ));
        let w = TypeArray::new(vec![vec![O, B], vec![B]]);
        assert!(matches!(
            count_twotype_constrained(&w),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn size_cap() {
        let w = TypeArray::onetype(&[0; 9]).unwrap();
        assert_eq!(
            enumerate_forests(&w, false),
            Err(Error::SizeCap { size: 9, cap: 8 })
        );
    }

    #[test]
    fn shapes_are_catalan() {
        let sizes: Vec<usize> = (0..6).map(|n| forest_shapes(n).len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn tally_matches_enumerator() {
        let tally = tally_forests(4);
        for w in consistent_arrays(4) {
            let (g, c) = tally.get(&w).copied().unwrap_or((0, 0));
            assert_eq!(
                enumerate_forests(&w, false).unwrap().len() as u64,
                g,
                "{w:?}"
            );
            assert_eq!(
                enumerate_forests(&w, true).unwrap().len() as u64,
                c,
                "{w:?}"
            );
        }
    }

    #[test]
    fn closed_forms_up_to_five() {
        let rep = verify_forests(5);
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn single_a_vertex_constrained() {
        // a = 1: vertex 1 is the only A vertex
        for w in consistent_arrays(4) {
            let s = w.stats().unwrap();
            if s.a == 1 && w.w[1][0] == A {
                let brute = enumerate_forests(&w, true).unwrap().len();
                assert_eq!(
                    BigInt::from(brute),
                    count_twotype_constrained(&w).unwrap(),
                    "{w:?}"
                );
            }
        }
    }

    #[test]
    fn all_a_reduces_to_onetype() {
        for k in onetype_sequences(4) {
            let w = TypeArray::onetype(&k).unwrap();
            assert_eq!(count_twotype_constrained(&w).unwrap(), count_onetype(&k));
        }
    }
}
