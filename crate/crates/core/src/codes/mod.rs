//! Word and lattice-path codings of tight trees, petal trees and slices.

mod families;
mod paths;
mod trees;
mod words;

pub use families::{enumerate_decorated_families, DecoratedTree};
pub use paths::{count_marked_paths, enumerate_marked_paths, MarkedPath};
pub use trees::{
    enumerate_marked_trees, enumerate_petal_trees, plane_trees, tree_to_word, word_to_tree,
    MarkedTree, Slot, Variant,
};
pub use words::{enumerate_words, DressedWord, Letter, WordForm};

use num_bigint::BigInt;

use crate::numeric::{expect_integer, HalfInt, Rational};
use crate::polys::{p_k, pi_rse, ptilde_k, q_k};
use crate::report::Report;

fn as_int(x: Rational) -> BigInt {
    expect_integer(x, "word count")
}

/// Word-count agreement with the polynomials for `2m <= 2 * m_max`, `k <= k_max`,
/// and tree/word round-trips for trees with at most `tree_edges` edges.
pub fn verify_codes(m_max: u32, k_max: u32, tree_edges: usize) -> Report {
    let mut rep = Report::new("codes");
    for m in 1..=m_max {
        let mh = HalfInt::from_int(m as i64);
        for k in 0..=k_max {
            let n1 = enumerate_words(WordForm::UdForm1 { m, k }).len();
            rep.check(
                || format!("#UDFORM1 m={m} k={k}"),
                as_int(p_k(k, mh)),
                BigInt::from(n1),
            );
            let n2 = enumerate_words(WordForm::UdForm2 { m, k }).len();
            rep.check(
                || format!("#UDFORM2 m={m} k={k}"),
                as_int(q_k(k, mh)),
                BigInt::from(n2),
            );
        }
    }
    for t in (1..2 * m_max as i64).step_by(2) {
        let mh = HalfInt::from_twice(t);
        for k in 0..=k_max {
            let n3 = enumerate_words(WordForm::UdForm3 { m: mh, k }).len();
            rep.check(
                || format!("#UDFORM3 m={mh} k={k}"),
                as_int(ptilde_k(k, mh)),
                BigInt::from(n3),
            );
        }
    }
    for t in 1..=2 * m_max as i64 {
        let mh = HalfInt::from_twice(t);
        for r in 0..=k_max {
            for s in 0..=k_max - r {
                for eps in [-1i64, 0, 1] {
                    let n = enumerate_words(WordForm::Petal { m: mh, r, s, eps }).len();
                    let want = as_int(pi_rse(r as i64, s as i64, eps, mh));
                    rep.check(
                        || format!("#PETAL m={mh} r={r} s={s} eps={eps}"),
                        want,
                        BigInt::from(n),
                    );
                }
            }
        }
    }

    for edges in 0..=tree_edges {
        for k in 0..=edges + 1 {
            for variant in [Variant::P, Variant::Q, Variant::Quasi] {
                if edges == 0 && variant != Variant::Quasi {
                    continue;
                }
                let trees = enumerate_marked_trees(variant, edges, k);
                let form = match variant {
                    Variant::P => WordForm::UdForm1 {
                        m: edges as u32,
                        k: k as u32,
                    },
                    Variant::Q => WordForm::UdForm2 {
                        m: edges as u32,
                        k: k as u32,
                    },
                    _ => WordForm::UdForm3 {
                        m: HalfInt::from_twice(2 * edges as i64 + 1),
                        k: k as u32,
                    },
                };
                let words = enumerate_words(form);
                rep.check(
                    || format!("#trees {variant:?} edges={edges} k={k}"),
                    words.len(),
                    trees.len(),
                );
                for t in &trees {
                    let back = tree_to_word(t, variant).and_then(|w| word_to_tree(&w, variant));
                    rep.check_true(
                        || format!("tree round-trip {variant:?} {t:?}"),
                        back.as_ref() == Ok(t),
                    );
                }
                for w in &words {
                    let back = word_to_tree(w, variant).and_then(|t| tree_to_word(&t, variant));
                    rep.check_true(
                        || format!("word round-trip {variant:?} {w}"),
                        back.as_ref() == Ok(w),
                    );
                }
            }
        }
    }
    for degree in 0..=2 * tree_edges {
        for t in enumerate_petal_trees(degree) {
            let back =
                tree_to_word(&t, Variant::Petal).and_then(|w| word_to_tree(&w, Variant::Petal));
            rep.check_true(
                || format!("petal round-trip {t:?}"),
                back.as_ref() == Ok(&t),
            );
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let rep = verify_codes(4, 3, 3);
        assert!(rep.passed(), "{:?}", rep.failures);
    }
}
