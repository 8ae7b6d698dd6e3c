use super::paths::{enumerate_marked_paths, MarkedPath};
use crate::error::Error;
use crate::numeric::HalfInt;

/// A labeled two-type rooted plane tree with one marked path per vertex:
/// an element of the decorated-tree family of elementary tight slices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedTree {
    pub root: usize,
    /// Children of each vertex in planar order (vertex `i` is boundary `i + 1`).
    pub children: Vec<Vec<usize>>,
    pub types: Vec<u8>,
    pub paths: Vec<MarkedPath>,
}

/// Exhaustive list of the decorated trees of tilt `eps` for boundary half-lengths `ms`.
pub fn enumerate_decorated_families(
    eps: u8,
    ms: &[HalfInt],
    size_cap: usize,
) -> Result<Vec<DecoratedTree>, Error> {
    assert!(eps <= 1, "tilt must be 0 or 1");
    let n = ms.len();
    if n == 0 {
        return Err(Error::TooFewBoundaries { min: 1, got: 0 });
    }
    if n > size_cap {
        return Err(Error::SizeCap {
            size: n,
            cap: size_cap,
        });
    }
    if ms.iter().all(|m| m.twice() == 0) {
        return Err(Error::AllZero);
    }
    let options: Vec<Vec<(u8, MarkedPath)>> = ms
        .iter()
        .map(|m| {
            if m.twice() == 0 {
                return vec![(
                    1,
                    MarkedPath {
                        steps: vec![],
                        marked: vec![],
                    },
                )];
            }
            let len = m.twice() as usize - 1;
            let mut v = Vec::new();
            for t in [0u8, 1] {
                v.extend(
                    enumerate_marked_paths(len, t as i64)
                        .into_iter()
                        .map(|p| (t, p)),
                );
            }
            v
        })
        .collect();

    let mut out = Vec::new();
    let mut pick = vec![0usize; n];
    loop {
        let chosen: Vec<&(u8, MarkedPath)> =
            pick.iter().zip(&options).map(|(&i, o)| &o[i]).collect();
        assemble(eps, &chosen, &mut out);
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            pick[i] += 1;
            if pick[i] < options[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Adds every tree compatible with the chosen vertex types and child-type sequences.
fn assemble(eps: u8, chosen: &[&(u8, MarkedPath)], out: &mut Vec<DecoratedTree>) {
    let n = chosen.len();
    let types: Vec<u8> = chosen.iter().map(|c| c.0).collect();
    let slots: Vec<Vec<u8>> = chosen.iter().map(|c| c.1.marks()).collect();
    let ones = types.iter().filter(|&&t| t == 1).count();
    let slot_ones: usize = slots.iter().flatten().filter(|&&t| t == 1).count();
    let slot_total: usize = slots.iter().map(Vec::len).sum();
    if slot_total != n - 1 || ones != slot_ones + eps as usize {
        return;
    }
    let flat: Vec<(usize, u8)> = slots
        .iter()
        .enumerate()
        .flat_map(|(v, s)| s.iter().map(move |&t| (v, t)))
        .collect();
    for root in (0..n).filter(|&v| types[v] == eps) {
        let mut used = vec![false; n];
        used[root] = true;
        let mut assign = Vec::with_capacity(flat.len());
        fill(
            &flat,
            &types,
            &mut used,
            &mut assign,
            &mut |assign: &[usize]| {
                let mut children = vec![Vec::new(); n];
                for (&(v, _), &c) in flat.iter().zip(assign) {
                    children[v].push(c);
                }
                if reaches_all(root, &children) {
                    out.push(DecoratedTree {
                        root,
                        children,
                        types: types.clone(),
                        paths: chosen.iter().map(|c| c.1.clone()).collect(),
                    });
                }
            },
        );
    }
}

fn fill(
    flat: &[(usize, u8)],
    types: &[u8],
    used: &mut [bool],
    assign: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    let i = assign.len();
    if i == flat.len() {
        emit(assign);
        return;
    }
    for c in 0..types.len() {
        if !used[c] && types[c] == flat[i].1 {
            used[c] = true;
            assign.push(c);
            fill(flat, types, used, assign, emit);
            assign.pop();
            used[c] = false;
        }
    }
}

fn reaches_all(root: usize, children: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; children.len()];
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        if std::mem::replace(&mut seen[u], true) {
            return false;
        }
        stack.extend(&children[u]);
    }
    seen.iter().all(|&b| b)
}
