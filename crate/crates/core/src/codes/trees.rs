use std::collections::{BTreeSet, VecDeque};

use super::words::{DressedWord, Letter};
use crate::error::Error;

/// One item around a vertex, in planar order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Child(usize),
    Petal,
}

/// Which distinguished elements a tree carries, and hence how it is coded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Vertices 1 and 2; the root is vertex 2 and its first child lies towards vertex 1.
    P,
    /// Vertex 1 and a root edge; the root is the endpoint of the root edge away from
    /// vertex 1 and the root edge is its last child.
    Q,
    /// Vertex 1 and an arbitrary root corner (the corner left of the removed loop).
    Quasi,
    /// Rooted petal tree: root corner in the exterior face, root vertex unmarked.
    Petal,
}

/// A plane tree with marked vertices and a root corner.
///
/// Vertices are numbered in preorder from the root `0`; the root corner precedes
/// the first slot of the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedTree {
    pub slots: Vec<Vec<Slot>>,
    /// Vertex 1; always `0` for petal trees.
    pub pointed: usize,
    /// Unlabeled marks (vertices 1 and 2 are marked implicitly and never listed).
    pub marked: Vec<bool>,
}

impl MarkedTree {
    pub fn vertices(&self) -> usize {
        self.slots.len()
    }

    pub fn edges(&self) -> usize {
        self.vertices() - 1
    }

    pub fn petals(&self) -> usize {
        self.slots
            .iter()
            .flatten()
            .filter(|s| **s == Slot::Petal)
            .count()
    }

    pub fn mark_count(&self) -> usize {
        self.marked.iter().filter(|&&b| b).count()
    }

    pub fn children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.slots[v].iter().filter_map(|s| match s {
            Slot::Child(c) => Some(*c),
            Slot::Petal => None,
        })
    }

    fn degree(&self, v: usize) -> usize {
        self.slots[v].len() + usize::from(v != 0)
    }

    fn check_shape(&self) -> Result<Vec<Option<usize>>, Error> {
        let n = self.vertices();
        if n == 0 {
            return Err(Error::MalformedTree("no vertices"));
        }
        if self.marked.len() != n || self.pointed >= n {
            return Err(Error::MalformedTree("marking does not match vertex count"));
        }
        let mut parent = vec![None; n];
        let mut next = 0;
        let mut stack = vec![0usize];
        while let Some(u) = stack.pop() {
            if u != next || u >= n {
                return Err(Error::MalformedTree("vertices are not in preorder"));
            }
            next += 1;
            let kids: Vec<usize> = self.children(u).collect();
            for &c in &kids {
                if c >= n || parent[c].is_some() || c == 0 {
                    return Err(Error::MalformedTree("vertices are not in preorder"));
                }
                parent[c] = Some(u);
            }
            stack.extend(kids.iter().rev());
        }
        if next != n {
            return Err(Error::MalformedTree("vertices are not in preorder"));
        }
        Ok(parent)
    }

    /// Checks the shape and the marking rules of a variant.
    pub fn validate(&self, variant: Variant) -> Result<(), Error> {
        let parent = self.check_shape()?;
        let has_petal = self.petals() > 0;
        if variant != Variant::Petal && has_petal {
            return Err(Error::MalformedTree("petals only occur in petal trees"));
        }
        let toward = |first: bool| -> Option<usize> {
            let kids: Vec<usize> = self.children(0).collect();
            let c = if first { kids.first() } else { kids.last() }?;
            is_ancestor(&parent, *c, self.pointed).then_some(*c)
        };
        let exempt: Vec<usize> = match variant {
            Variant::P => {
                if self.pointed == 0 || toward(true).is_none() {
                    return Err(Error::MalformedTree(
                        "root must be vertex 2 with first child towards vertex 1",
                    ));
                }
                if self.marked[0] || self.marked[self.pointed] {
                    return Err(Error::MalformedTree("labeled vertices carry no extra mark"));
                }
                vec![0, self.pointed]
            }
            Variant::Q => {
                let Some(r0) = toward(false).filter(|_| self.pointed != 0) else {
                    return Err(Error::MalformedTree(
                        "root edge must end at the root's last child towards vertex 1",
                    ));
                };
                if self.marked[self.pointed] {
                    return Err(Error::MalformedTree("vertex 1 carries no extra mark"));
                }
                vec![0, r0, self.pointed]
            }
            Variant::Quasi => {
                if self.marked[self.pointed] {
                    return Err(Error::MalformedTree("vertex 1 carries no extra mark"));
                }
                vec![0, self.pointed]
            }
            Variant::Petal => {
                if self.pointed != 0 || self.marked[0] {
                    return Err(Error::MalformedTree("petal tree root must be unmarked"));
                }
                vec![0]
            }
        };
        for v in 0..self.vertices() {
            if self.degree(v) == 1 && !self.marked[v] && !exempt.contains(&v) {
                return Err(Error::MalformedTree("unmarked leaf"));
            }
        }
        Ok(())
    }
}

fn is_ancestor(parent: &[Option<usize>], a: usize, mut v: usize) -> bool {
    loop {
        if v == a {
            return true;
        }
        match parent[v] {
            Some(p) => v = p,
            None => return false,
        }
    }
}

/// Graph distance from `from` in a tree given by children lists.
fn distances(children: &[Vec<usize>], from: usize) -> Vec<usize> {
    let n = children.len();
    let mut adj = vec![Vec::new(); n];
    for (u, cs) in children.iter().enumerate() {
        for &c in cs {
            adj[u].push(c);
            adj[c].push(u);
        }
    }
    let mut dist = vec![usize::MAX; n];
    dist[from] = 0;
    let mut q = VecDeque::from([from]);
    while let Some(u) = q.pop_front() {
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                q.push_back(w);
            }
        }
    }
    dist
}

/// Cyclic neighbour order `[parent, children...]` of a rooted plane tree.
pub(crate) fn rotation(children: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut nb: Vec<Vec<usize>> = vec![Vec::new(); children.len()];
    for (u, cs) in children.iter().enumerate() {
        for &c in cs {
            nb[c].push(u);
        }
    }
    for (u, cs) in children.iter().enumerate() {
        nb[u].extend(cs);
    }
    nb
}

/// Re-roots a plane tree at the corner of `v` preceding the edge to `first`
/// (or at the single corner of a one-vertex tree). Returns preorder children lists
/// and the map old id -> new id.
pub(crate) fn reroot(
    nb: &[Vec<usize>],
    v: usize,
    first: Option<usize>,
) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = nb.len();
    let mut map = vec![usize::MAX; n];
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    // (vertex, parent)
    let mut stack = vec![(v, None::<usize>)];
    while let Some((u, p)) = stack.pop() {
        map[u] = order.len();
        order.push(u);
        let ring = &nb[u];
        let start = match p {
            Some(p) => (ring.iter().position(|&x| x == p).unwrap() + 1) % ring.len(),
            None => first.map_or(0, |f| {
                ring.iter()
                    .position(|&x| x == f)
                    .expect("neighbour of root")
            }),
        };
        let cs: Vec<usize> = (0..ring.len())
            .map(|i| ring[(start + i) % ring.len()])
            .filter(|&x| Some(x) != p)
            .collect();
        for &c in cs.iter().rev() {
            stack.push((c, Some(u)));
        }
        kids[u] = cs;
    }
    let mut out = vec![Vec::new(); n];
    for &u in &order {
        out[map[u]] = kids[u].iter().map(|&c| map[c]).collect();
    }
    (out, map)
}

fn plain_children(t: &MarkedTree) -> Vec<Vec<usize>> {
    (0..t.vertices()).map(|v| t.children(v).collect()).collect()
}

/// Contour coding of a tree.
pub fn tree_to_word(t: &MarkedTree, variant: Variant) -> Result<DressedWord, Error> {
    t.validate(variant)?;
    let mut out = Vec::new();
    if variant == Variant::Petal {
        petal_contour(t, 0, &mut out);
        return Ok(DressedWord::new(out));
    }
    let children = plain_children(t);
    let dist = distances(&children, t.pointed);
    let marked = |v: usize| t.marked[v] || (variant == Variant::P && v == 0);
    let down = |v: usize| {
        if marked(v) {
            Letter::DMark
        } else {
            Letter::DPlain
        }
    };
    fn walk(
        u: usize,
        ch: &[Vec<usize>],
        dist: &[usize],
        down: &dyn Fn(usize) -> Letter,
        out: &mut Vec<Letter>,
    ) {
        for &c in &ch[u] {
            out.push(if dist[c] > dist[u] {
                Letter::U
            } else {
                down(u)
            });
            walk(c, ch, dist, down, out);
            out.push(if dist[u] > dist[c] {
                Letter::U
            } else {
                down(c)
            });
        }
    }
    walk(0, &children, &dist, &down, &mut out);
    Ok(DressedWord::new(out))
}

fn petal_contour(t: &MarkedTree, u: usize, out: &mut Vec<Letter>) {
    for s in &t.slots[u] {
        match *s {
            Slot::Petal => out.push(Letter::E),
            Slot::Child(c) => {
                out.push(Letter::U);
                petal_contour(t, c, out);
                out.push(if t.marked[c] {
                    Letter::DMark
                } else {
                    Letter::DPlain
                });
            }
        }
    }
}

fn bad(index: usize, reason: &'static str) -> Error {
    Error::MalformedWord { index, reason }
}

/// Inverse of [`tree_to_word`].
pub fn word_to_tree(w: &DressedWord, variant: Variant) -> Result<MarkedTree, Error> {
    let ls = &w.letters;
    if variant != Variant::Petal {
        if let Some(i) = ls.iter().position(|&l| l == Letter::E) {
            return Err(bad(i, "petal letter outside the petal coding"));
        }
    }
    if let Some(i) = w.forbidden_factor() {
        return Err(bad(i, "factor U D• is forbidden"));
    }
    match variant {
        Variant::P if ls.first() != Some(&Letter::DMark) => {
            return Err(bad(0, "must start with D∘"))
        }
        Variant::Q if ls.last() != Some(&Letter::U) => {
            return Err(bad(ls.len().saturating_sub(1), "must end with U"))
        }
        _ => {}
    }
    let mut h = 0i64;
    for (i, l) in ls.iter().enumerate() {
        h += l.step();
        if variant == Variant::Petal && h < 0 {
            return Err(bad(i, "negative excursion"));
        }
    }
    if h != 0 {
        return Err(bad(ls.len(), "word does not return to its starting height"));
    }
    let t = if variant == Variant::Petal {
        decode_petal(ls)
    } else {
        decode_bridge(ls, variant)
    };
    t.validate(variant)?;
    Ok(t)
}

fn decode_petal(ls: &[Letter]) -> MarkedTree {
    let mut slots = vec![Vec::new()];
    let mut marked = vec![false];
    let mut stack = vec![0usize];
    for &l in ls {
        let u = *stack.last().unwrap();
        match l {
            Letter::E => slots[u].push(Slot::Petal),
            Letter::U => {
                let c = slots.len();
                slots.push(Vec::new());
                marked.push(false);
                slots[u].push(Slot::Child(c));
                stack.push(c);
            }
            Letter::DMark | Letter::DPlain => {
                marked[u] = l == Letter::DMark;
                stack.pop();
            }
        }
    }
    MarkedTree {
        slots,
        pointed: 0,
        marked,
    }
}

fn decode_bridge(ls: &[Letter], variant: Variant) -> MarkedTree {
    let len = ls.len();
    if len == 0 {
        return MarkedTree {
            slots: vec![Vec::new()],
            pointed: 0,
            marked: vec![false],
        };
    }
    let mut h = 0i64;
    let (mut best, mut j) = (0i64, 0usize);
    for (i, l) in ls.iter().enumerate() {
        h += l.step();
        if h < best {
            best = h;
            j = i + 1;
        }
    }
    let j = j % len;
    // Excursion from a corner of vertex 1 (temporary id 0).
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    let mut parent = vec![usize::MAX];
    let mut mark = vec![false];
    let mut corner = vec![0usize; len];
    let mut dest = vec![0usize; len];
    let mut u = 0usize;
    for i in 0..len {
        let l = ls[(j + i) % len];
        corner[i] = u;
        if l == Letter::U {
            let c = children.len();
            children.push(Vec::new());
            parent.push(u);
            mark.push(false);
            children[u].push(c);
            u = c;
        } else {
            mark[u] = l == Letter::DMark;
            u = parent[u];
        }
        dest[i] = u;
    }
    let start = (len - j) % len;
    let nb = rotation(&children);
    let (kids, map) = reroot(&nb, corner[start], Some(dest[start]));
    let n = kids.len();
    let mut marked = vec![false; n];
    for (old, &m) in mark.iter().enumerate() {
        marked[map[old]] = m;
    }
    if variant == Variant::P {
        marked[0] = false;
    }
    MarkedTree {
        slots: kids
            .into_iter()
            .map(|cs| cs.into_iter().map(Slot::Child).collect())
            .collect(),
        pointed: map[0],
        marked,
    }
}

/// All rooted plane trees with `edges` edges, as preorder children lists.
pub fn plane_trees(edges: usize) -> Vec<Vec<Vec<usize>>> {
    fn shapes(e: usize) -> Vec<Vec<Shape>> {
        // forests of total size e (each tree counts its edge to the parent)
        if e == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in 1..=e {
            for sub in shapes(first - 1) {
                for rest in shapes(e - first) {
                    let mut f = vec![Shape(sub.clone())];
                    f.extend(rest);
                    out.push(f);
                }
            }
        }
        out
    }
    shapes(edges)
        .into_iter()
        .map(|f| flatten(&Shape(f)))
        .collect()
}

#[derive(Clone)]
struct Shape(Vec<Shape>);

fn flatten(root: &Shape) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    fn go(s: &Shape, out: &mut Vec<Vec<usize>>) -> usize {
        let id = out.len();
        out.push(Vec::new());
        for c in &s.0 {
            let cid = go(c, out);
            out[id].push(cid);
        }
        id
    }
    go(root, &mut out);
    out
}

fn subsets(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in pool.iter().enumerate() {
        for mut rest in subsets(&pool[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Every tree of a one-face variant with `edges` edges and `k` unlabeled marks
/// satisfying the marking rules, built by re-rooting all plane trees
/// (independently of the word coding).
pub fn enumerate_marked_trees(variant: Variant, edges: usize, k: usize) -> BTreeSet<MarkedTree> {
    assert!(variant != Variant::Petal, "use enumerate_petal_trees");
    let mut out = BTreeSet::new();
    for base in plane_trees(edges) {
        let nb = rotation(&base);
        let n = base.len();
        let dist_from = |v: usize| distances(&base, v);
        for v1 in 0..n {
            let d1 = dist_from(v1);
            let corners: Vec<(usize, Option<usize>)> = match variant {
                Variant::P => (0..n)
                    .filter(|&v2| v2 != v1)
                    .map(|v2| (v2, nb[v2].iter().copied().find(|&x| d1[x] < d1[v2])))
                    .collect(),
                Variant::Q => (0..n)
                    .flat_map(|a| nb[a].iter().map(move |&b| (a, b)))
                    .filter(|&(r0, r1)| d1[r1] > d1[r0])
                    .map(|(r0, r1)| {
                        let ring = &nb[r1];
                        let i = ring.iter().position(|&x| x == r0).unwrap();
                        (r1, Some(ring[(i + 1) % ring.len()]))
                    })
                    .collect(),
                Variant::Quasi => {
                    if n == 1 {
                        vec![(0, None)]
                    } else {
                        (0..n)
                            .flat_map(|a| nb[a].iter().map(move |&b| (a, Some(b))))
                            .collect()
                    }
                }
                Variant::Petal => unreachable!(),
            };
            for (root, first) in corners {
                let (kids, map) = reroot(&nb, root, first);
                let pointed = map[v1];
                let pool: Vec<usize> = (0..n)
                    .filter(|&v| v != pointed && !(variant == Variant::P && v == 0))
                    .collect();
                for chosen in subsets(&pool, k) {
                    let mut marked = vec![false; n];
                    for v in chosen {
                        marked[v] = true;
                    }
                    let t = MarkedTree {
                        slots: kids
                            .iter()
                            .map(|cs| cs.iter().map(|&c| Slot::Child(c)).collect())
                            .collect(),
                        pointed,
                        marked,
                    };
                    if t.validate(variant).is_ok() {
                        out.insert(t);
                    }
                }
            }
        }
    }
    out
}

/// Every rooted petal tree whose exterior face has degree `degree`
/// (twice the tree edges plus the petals), with unmarked root and marked non-root leaves.
pub fn enumerate_petal_trees(degree: usize) -> BTreeSet<MarkedTree> {
    #[derive(Clone)]
    enum P {
        Petal,
        Child(Vec<P>),
    }
    // sequences of slots with total contour length d
    fn seqs(d: usize) -> Vec<Vec<P>> {
        if d == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for rest in seqs(d - 1) {
            let mut s = vec![P::Petal];
            s.extend(rest);
            out.push(s);
        }
        for inner in 0..=d.saturating_sub(2) {
            if inner + 2 > d {
                break;
            }
            for sub in seqs(inner) {
                for rest in seqs(d - 2 - inner) {
                    let mut s = vec![P::Child(sub.clone())];
                    s.extend(rest);
                    out.push(s);
                }
            }
        }
        out
    }
    fn build(items: &[P], slots: &mut Vec<Vec<Slot>>) -> usize {
        let id = slots.len();
        slots.push(Vec::new());
        for it in items {
            let s = match it {
                P::Petal => Slot::Petal,
                P::Child(sub) => Slot::Child(build(sub, slots)),
            };
            slots[id].push(s);
        }
        id
    }
    let mut out = BTreeSet::new();
    for s in seqs(degree) {
        let mut slots = Vec::new();
        build(&s, &mut slots);
        let n = slots.len();
        for mask in 0u32..(1 << (n - 1)) {
            let marked: Vec<bool> = (0..n).map(|v| v > 0 && mask >> (v - 1) & 1 == 1).collect();
            let t = MarkedTree {
                slots: slots.clone(),
                pointed: 0,
                marked,
            };
            if t.validate(Variant::Petal).is_ok() {
                out.insert(t);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::words::{enumerate_words, WordForm};
    use crate::numeric::{expect_integer, HalfInt};
    use crate::polys::{p_k, ptilde_k, q_k};

    #[test]
    fn catalan_counts() {
        let sizes: Vec<usize> = (0..6).map(|e| plane_trees(e).len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 5, 14, 42]);
    }

    fn words_of(ts: &BTreeSet<MarkedTree>, v: Variant) -> BTreeSet<DressedWord> {
        ts.iter().map(|t| tree_to_word(t, v).unwrap()).collect()
    }

    #[test]
    fn case_p_matches_words() {
        for m in 1..=4u32 {
            for k in 0..=3u32 {
                let trees = enumerate_marked_trees(Variant::P, m as usize, k as usize);
                let want = expect_integer(p_k(k, HalfInt::from_int(m as i64)), "");
                assert_eq!(trees.len().to_string(), want.to_string(), "m={m} k={k}");
                let words: BTreeSet<_> = enumerate_words(WordForm::UdForm1 { m, k })
                    .into_iter()
                    .collect();
                assert_eq!(words_of(&trees, Variant::P), words);
                for t in &trees {
                    let w = tree_to_word(t, Variant::P).unwrap();
                    assert_eq!(&word_to_tree(&w, Variant::P).unwrap(), t);
                }
            }
        }
    }

    #[test]
    fn case_q_and_quasi_match_words() {
        for m in 1..=4u32 {
            for k in 0..=3u32 {
                let trees = enumerate_marked_trees(Variant::Q, m as usize, k as usize);
                let want = expect_integer(q_k(k, HalfInt::from_int(m as i64)), "");
                assert_eq!(trees.len().to_string(), want.to_string(), "q m={m} k={k}");
                let words: BTreeSet<_> = enumerate_words(WordForm::UdForm2 { m, k })
                    .into_iter()
                    .collect();
                assert_eq!(words_of(&trees, Variant::Q), words);

                let mh = HalfInt::from_twice(2 * m as i64 - 1);
                let trees = enumerate_marked_trees(Variant::Quasi, m as usize - 1, k as usize);
                let want = expect_integer(ptilde_k(k, mh), "");
                assert_eq!(
                    trees.len().to_string(),
                    want.to_string(),
                    "quasi m={mh} k={k}"
                );
                let words: BTreeSet<_> = enumerate_words(WordForm::UdForm3 { m: mh, k })
                    .into_iter()
                    .collect();
                assert_eq!(words_of(&trees, Variant::Quasi), words);
            }
        }
    }

    #[test]
    fn petal_roundtrip() {
        for d in 0..=6 {
            for t in enumerate_petal_trees(d) {
                let w = tree_to_word(&t, Variant::Petal).unwrap();
                assert_eq!(w.len(), d);
                assert_eq!(word_to_tree(&w, Variant::Petal).unwrap(), t);
            }
        }
    }

    #[test]
    fn malformed_words_name_the_index() {
        let w = DressedWord::new(vec![Letter::DMark, Letter::U, Letter::DPlain, Letter::U]);
        assert_eq!(
            word_to_tree(&w, Variant::P),
            Err(bad(2, "factor U D• is forbidden"))
        );
        let w = DressedWord::new(vec![Letter::DPlain, Letter::U]);
        assert!(matches!(
            word_to_tree(&w, Variant::P),
            Err(Error::MalformedWord { index: 0, .. })
        ));
        let w = DressedWord::new(vec![Letter::DMark, Letter::U]);
        assert!(matches!(
            word_to_tree(&w, Variant::Petal),
            Err(Error::MalformedWord { index: 0, .. })
        ));
        let w = DressedWord::new(vec![Letter::U, Letter::U, Letter::DMark]);
        assert!(matches!(
            word_to_tree(&w, Variant::Quasi),
            Err(Error::MalformedWord { index: 3, .. })
        ));
    }

    #[test]
    fn malformed_trees_rejected() {
        let t = MarkedTree {
            slots: vec![vec![Slot::Child(1)], vec![]],
            pointed: 0,
            marked: vec![false, false],
        };
        assert!(tree_to_word(&t, Variant::P).is_err());
        assert!(tree_to_word(&t, Variant::Quasi).is_err());
        let t = MarkedTree {
            slots: vec![vec![Slot::Child(2)], vec![], vec![]],
            pointed: 0,
            marked: vec![false; 3],
        };
        assert!(tree_to_word(&t, Variant::Quasi).is_err());
    }
}
