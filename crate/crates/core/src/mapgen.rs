//! Exhaustive genus-0 map generation from rotation systems.
//!
//! Darts `0..D` carry the face permutation `phi`, whose cycles are consecutive
//! blocks `(0..d_1)(d_1..d_1+d_2)...` in boundary order. Every fixed-point-free
//! involution `alpha` is tried, vertices are the cycles of `sigma = alpha . phi`
//! (`sigma(x) = alpha(phi(x))`), and zero-length boundaries are labeled marked
//! vertices placed injectively. Dividing the number of valid configurations by
//! `prod d_i` gives the automorphism-weighted count.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::Error;
use crate::numeric::Rational;

pub const DEFAULT_DART_CAP: usize = 16;
pub const DART_CAP_ENV: &str = "TIGHTMAPS_DART_CAP";

/// Dart cap from the environment, falling back to [`DEFAULT_DART_CAP`].
pub fn dart_cap_from_env() -> usize {
    std::env::var(DART_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DART_CAP)
}

/// A rotation system with labeled faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DartMap {
    pub phi: Vec<usize>,
    pub alpha: Vec<usize>,
    pub sigma: Vec<usize>,
    /// Face label of each dart.
    pub face: Vec<usize>,
}

/// Face permutation with consecutive cycles of the given positive degrees.
pub fn canonical_phi(degrees: &[u32]) -> (Vec<usize>, Vec<usize>) {
    let mut phi = Vec::new();
    let mut face = Vec::new();
    let mut start = 0usize;
    for (f, &d) in degrees.iter().filter(|&&d| d > 0).enumerate() {
        let d = d as usize;
        for i in 0..d {
            phi.push(start + (i + 1) % d);
            face.push(f);
        }
        start += d;
    }
    (phi, face)
}

fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x);
            x = perm[x];
        }
        out.push(cyc);
    }
    out
}

impl DartMap {
    pub fn new(degrees: &[u32], alpha: Vec<usize>) -> Self {
        let (phi, face) = canonical_phi(degrees);
        assert_eq!(phi.len(), alpha.len(), "alpha must act on all darts");
        let sigma = phi.iter().map(|&x| alpha[x]).collect();
        DartMap {
            phi,
            alpha,
            sigma,
            face,
        }
    }

    pub fn n_darts(&self) -> usize {
        self.phi.len()
    }

    pub fn vertices(&self) -> Vec<Vec<usize>> {
        cycles(&self.sigma)
    }

    pub fn faces(&self) -> Vec<Vec<usize>> {
        cycles(&self.phi)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n_darts();
        let mut uf = UnionFind::new(n);
        for x in 0..n {
            uf.union(x, self.phi[x]);
            uf.union(x, self.alpha[x]);
        }
        (0..n).all(|x| uf.find(x) == uf.find(0))
    }

    /// `V - E + F = 2`.
    pub fn is_planar(&self) -> bool {
        let v = self.vertices().len() as i64;
        let f = self.faces().len() as i64;
        v - self.n_darts() as i64 / 2 + f == 2
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Calls `visit` on every fixed-point-free involution of `0..n` whose partner
/// of dart 0 is `first`.
fn for_each_involution_from<F: FnMut(&[usize])>(n: usize, first: usize, visit: &mut F) {
    let mut alpha = vec![usize::MAX; n];
    alpha[0] = first;
    alpha[first] = 0;
    fn rec<F: FnMut(&[usize])>(alpha: &mut Vec<usize>, visit: &mut F) {
        let Some(a) = alpha.iter().position(|&x| x == usize::MAX) else {
            visit(alpha);
            return;
        };
        for b in a + 1..alpha.len() {
            if alpha[b] == usize::MAX {
                alpha[a] = b;
                alpha[b] = a;
                rec(alpha, visit);
                alpha[a] = usize::MAX;
                alpha[b] = usize::MAX;
            }
        }
    }
    rec(&mut alpha, visit);
}

/// All `(n-1)!!` fixed-point-free involutions of `0..n`, grouped by the partner of dart 0.
pub fn enumerate_involutions(n: usize, cap: usize) -> Result<Vec<Vec<usize>>, Error> {
    if n > cap {
        return Err(Error::DartCap { darts: n, cap });
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return Ok(out);
    }
    if n % 2 == 1 {
        return Ok(out);
    }
    for first in 1..n {
        for_each_involution_from(n, first, &mut |a| out.push(a.to_vec()));
    }
    Ok(out)
}

/// Histogram of valid genus-0 connected maps keyed by (vertex count, leaf count).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MapProfile {
    pub darts: usize,
    pub involutions: u64,
    pub by_vertices_leaves: BTreeMap<(usize, usize), u64>,
}

impl MapProfile {
    fn merge(mut self, other: MapProfile) -> MapProfile {
        self.involutions += other.involutions;
        for (k, v) in other.by_vertices_leaves {
            *self.by_vertices_leaves.entry(k).or_default() += v;
        }
        self
    }

    /// Number of (map, marking) pairs with `zeros` labeled marked vertices.
    pub fn configurations(&self, zeros: usize, tight: bool) -> BigInt {
        let mut total = BigInt::from(0);
        for (&(v, l), &count) in &self.by_vertices_leaves {
            let ways = if tight {
                if zeros < l {
                    continue;
                }
                falling_u(zeros, l) * falling_u(v - l, zeros - l)
            } else {
                falling_u(v, zeros)
            };
            total += ways * count;
        }
        total
    }
}

fn falling_u(x: usize, k: usize) -> BigInt {
    if k > x {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (x - i))
}

fn scan(degrees: &[u32], phi: &[usize], face: &[usize], first: usize) -> MapProfile {
    let n = phi.len();
    let n_faces = degrees.len();
    let mut prof = MapProfile {
        darts: n,
        ..Default::default()
    };
    let mut sigma = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut parent = vec![0usize; n_faces];
    for_each_involution_from(n, first, &mut |alpha| {
        prof.involutions += 1;
        // Faces joined by edges must form one component.
        for (f, p) in parent.iter_mut().enumerate() {
            *p = f;
        }
        let find = |parent: &mut Vec<usize>, mut x: usize| {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        };
        let mut comps = n_faces;
        for x in 0..n {
            let (a, b) = (
                find(&mut parent, face[x]),
                find(&mut parent, face[alpha[x]]),
            );
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        if comps != 1 {
            return;
        }
        for x in 0..n {
            sigma[x] = alpha[phi[x]];
            seen[x] = false;
        }
        let (mut v, mut leaves) = (0usize, 0usize);
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = sigma[x];
            }
            v += 1;
            if len == 1 {
                leaves += 1;
            }
        }
        if v as i64 - (n / 2) as i64 + n_faces as i64 != 2 {
            return;
        }
        *prof.by_vertices_leaves.entry((v, leaves)).or_default() += 1;
    });
    prof
}

/// Scans every involution for the positive degrees, optionally on a pool of `jobs` threads.
pub fn map_profile(positive: &[u32], cap: usize, jobs: Option<usize>) -> Result<MapProfile, Error> {
    let positive: Vec<u32> = positive.iter().copied().filter(|&d| d > 0).collect();
    if positive.is_empty() {
        return Err(Error::AllZero);
    }
    let (phi, face) = canonical_phi(&positive);
    let n = phi.len();
    if n > cap {
        return Err(Error::DartCap { darts: n, cap });
    }
    let empty = MapProfile {
        darts: n,
        ..Default::default()
    };
    if n % 2 == 1 {
        return Ok(empty);
    }
    let work = || {
        (1..n)
            .into_par_iter()
            .map(|first| scan(&positive, &phi, &face, first))
            .reduce(|| empty.clone(), MapProfile::merge)
    };
    Ok(match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("thread pool")
            .install(work),
        None => work(),
    })
}

/// Result of one oracle run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub value: Rational,
    pub darts: usize,
    pub involutions: u64,
}

/// Automorphism-weighted number of genus-0 maps with the given boundary lengths;
/// with `tight` every unmarked vertex must have degree at least 2.
pub fn oracle_count(
    lengths: &[u32],
    tight: bool,
    cap: usize,
    jobs: Option<usize>,
) -> Result<OracleResult, Error> {
    let positive: Vec<u32> = lengths.iter().copied().filter(|&d| d > 0).collect();
    let zeros = lengths.len() - positive.len();
    let prof = map_profile(&positive, cap, jobs)?;
    Ok(OracleResult {
        value: weighted(&prof, &positive, zeros, tight),
        darts: prof.darts,
        involutions: prof.involutions,
    })
}

fn weighted(prof: &MapProfile, positive: &[u32], zeros: usize, tight: bool) -> Rational {
    let weight: BigInt = positive.iter().map(|&d| BigInt::from(d)).product();
    Rational::new(prof.configurations(zeros, tight), weight)
}

/// One row of an oracle sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub lengths: Vec<u32>,
    pub value: Rational,
}

/// Nonincreasing sequences of positive integers with sum at most `max_total`.
pub fn positive_multisets(max_total: u32) -> Vec<Vec<u32>> {
    fn rec(left: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for p in (1..=max_part.min(left)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_total, max_total, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Oracle values for every multiset of positive lengths with total at most
/// `max_total`, extended by `0..=max_zeros` zero lengths, keeping `n >= min_n`.
pub fn oracle_sweep(
    max_total: u32,
    max_zeros: usize,
    min_n: usize,
    tight: bool,
    cap: usize,
) -> Result<Vec<SweepRow>, Error> {
    let mut rows = Vec::new();
    for positive in positive_multisets(max_total) {
        let wanted: Vec<usize> = (0..=max_zeros)
            .filter(|z| positive.len() + z >= min_n)
            .collect();
        if wanted.is_empty() {
            continue;
        }
        let prof = map_profile(&positive, cap, None)?;
        for z in wanted {
            let mut lengths = positive.clone();
            lengths.extend(std::iter::repeat_n(0, z));
            let value = weighted(&prof, &positive, z, tight);
            rows.push(SweepRow { lengths, value });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_frac};

    fn count(lengths: &[u32], tight: bool) -> Rational {
        oracle_count(lengths, tight, 16, None).unwrap().value
    }

    #[test]
    fn involution_counts() {
        assert_eq!(enumerate_involutions(2, 16).unwrap().len(), 1);
        assert_eq!(enumerate_involutions(4, 16).unwrap().len(), 3);
        assert_eq!(enumerate_involutions(12, 16).unwrap().len(), 10395);
        assert!(enumerate_involutions(18, 16).is_err());
        for a in enumerate_involutions(8, 16).unwrap() {
            assert!((0..8).all(|x| a[x] != x && a[a[x]] == x));
        }
    }

    #[test]
    fn frozen_oracle_values() {
        assert_eq!(count(&[2, 2], false), rat_frac(1, 2));
        assert_eq!(count(&[2, 2, 2], true), rat(1));
        assert_eq!(count(&[1, 1, 1, 3], true), rat(2));
        assert_eq!(count(&[1, 1, 1, 1], true), rat(0));
        assert_eq!(count(&[2, 2, 2, 2], true), rat(3));
        assert_eq!(count(&[3, 1, 1, 1], false), rat(2));
        assert_eq!(count(&[3, 1, 0], true), rat(1));
    }

    #[test]
    fn result_reports_work() {
        let r = oracle_count(&[2, 2, 2], true, 16, Some(2)).unwrap();
        assert_eq!(r.darts, 6);
        assert_eq!(r.involutions, 15);
        assert!(matches!(
            oracle_count(&[9, 9], true, 16, None),
            Err(Error::DartCap { .. })
        ));
        assert!(matches!(
            oracle_count(&[0, 0], true, 16, None),
            Err(Error::AllZero)
        ));
    }

    #[test]
    fn phi_cycles_follow_degrees() {
        let m = DartMap::new(&[3, 0, 1], vec![1, 0, 3, 2]);
        let lens: Vec<usize> = m.faces().iter().map(|c| c.len()).collect();
        assert_eq!(lens, vec![3, 1]);
        assert_eq!(m.face, vec![0, 0, 0, 1]);
    }

    #[test]
    fn filters_agree_with_darts_map() {
        let degrees = [2u32, 2, 2];
        let (phi, face) = canonical_phi(&degrees);
        let mut total = 0;
        for first in 1..6 {
            total += scan(&degrees, &phi, &face, first)
                .by_vertices_leaves
                .values()
                .sum::<u64>();
        }
        let direct = enumerate_involutions(6, 16)
            .unwrap()
            .into_iter()
            .map(|a| DartMap::new(&degrees, a))
            .filter(|m| m.is_connected() && m.is_planar())
            .count() as u64;
        assert_eq!(total, direct);
    }

    #[test]
    fn parallel_matches_serial() {
        let serial = map_profile(&[3, 2, 2, 1], 16, Some(1)).unwrap();
        let parallel = map_profile(&[3, 2, 2, 1], 16, Some(4)).unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn multisets_small() {
        assert_eq!(
            positive_multisets(3),
            vec![
                vec![1],
                vec![1, 1],
                vec![1, 1, 1],
                vec![2],
                vec![2, 1],
                vec![3]
            ]
        );
    }
}
