//! Finite binary trees and the expansion order used by tree-pair algebra.
//!
//! A tree is either a leaf or a caret with two subtrees. Trees are written
//! in a bracket form where `.` is a leaf and `(LR)` is a caret, e.g.
//! `((..).)` is the three-leaf tree whose left child is a caret.
//!
//! A tree `t` *refines* a tree `s` when `t` can be obtained from `s` by
//! attaching a forest (one subtree per leaf). [`BinTree::join`] computes the
//! least common refinement of two trees; [`BinTree::forest_between`] and
//! [`BinTree::attach_forest`] convert between the two views.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum BinTree {
    Leaf,
    Caret(Box<BinTree>, Box<BinTree>),
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum TreeParseError {
    #[error("invalid tree literal `{0}`")]
    Invalid(String),
}

impl BinTree {
    pub fn caret(left: BinTree, right: BinTree) -> BinTree {
        BinTree::Caret(Box::new(left), Box::new(right))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, BinTree::Leaf)
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            BinTree::Leaf => 1,
            BinTree::Caret(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn caret_count(&self) -> usize {
        self.leaf_count() - 1
    }

    /// Least common refinement: the smallest tree refining both inputs.
    pub fn join(a: &BinTree, b: &BinTree) -> BinTree {
        match (a, b) {
            (BinTree::Leaf, t) | (t, BinTree::Leaf) => t.clone(),
            (BinTree::Caret(al, ar), BinTree::Caret(bl, br)) => {
                BinTree::caret(BinTree::join(al, bl), BinTree::join(ar, br))
            }
        }
    }

    /// The forest `f` with `attach_forest(self, f) == refined`, if `refined`
    /// refines `self`.
    pub fn forest_between(&self, refined: &BinTree) -> Option<Vec<BinTree>> {
        let mut forest = Vec::with_capacity(self.leaf_count());
        self.collect_forest(refined, &mut forest)?;
        Some(forest)
    }

    fn collect_forest(&self, refined: &BinTree, out: &mut Vec<BinTree>) -> Option<()> {
        match (self, refined) {
            (BinTree::Leaf, t) => {
                out.push(t.clone());
                Some(())
            }
            (BinTree::Caret(..), BinTree::Leaf) => None,
            (BinTree::Caret(al, ar), BinTree::Caret(bl, br)) => {
                al.collect_forest(bl, out)?;
                ar.collect_forest(br, out)
            }
        }
    }

    /// Replaces leaf `i` (left to right) by `forest[i]`.
    ///
    /// Panics if the forest length differs from the leaf count.
    pub fn attach_forest(&self, forest: &[BinTree]) -> BinTree {
        assert_eq!(forest.len(), self.leaf_count(), "forest length mismatch");
        let mut next = 0;
        self.attach_from(forest, &mut next)
    }

    fn attach_from(&self, forest: &[BinTree], next: &mut usize) -> BinTree {
        match self {
            BinTree::Leaf => {
                let t = forest[*next].clone();
                *next += 1;
                t
            }
            BinTree::Caret(l, r) => {
                let nl = l.attach_from(forest, next);
                let nr = r.attach_from(forest, next);
                BinTree::caret(nl, nr)
            }
        }
    }

    /// Indices `i` (0-based) such that leaves `i` and `i + 1` are the two
    /// children of a single caret.
    pub fn sibling_pairs(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.sibling_pairs_from(0, &mut out);
        out
    }

    fn sibling_pairs_from(&self, first_leaf: usize, out: &mut Vec<usize>) -> usize {
        match self {
            BinTree::Leaf => first_leaf + 1,
            BinTree::Caret(l, r) => {
                if l.is_leaf() && r.is_leaf() {
                    out.push(first_leaf);
                    return first_leaf + 2;
                }
                let after_left = l.sibling_pairs_from(first_leaf, out);
                r.sibling_pairs_from(after_left, out)
            }
        }
    }

    /// Contracts the caret whose children are the sibling leaves `i, i + 1`
    /// into a single leaf.
    ///
    /// Panics if leaves `i` and `i + 1` are not siblings.
    pub fn contract_sibling(&self, i: usize) -> BinTree {
        let (t, done) = self.contract_from(i, 0);
        assert!(done, "leaves {i} and {} are not siblings", i + 1);
        t
    }

    fn contract_from(&self, target: usize, first_leaf: usize) -> (BinTree, bool) {
        match self {
            BinTree::Leaf => (BinTree::Leaf, false),
            BinTree::Caret(l, r) => {
                if l.is_leaf() && r.is_leaf() && first_leaf == target {
                    return (BinTree::Leaf, true);
                }
                let nl = l.leaf_count();
                if target < first_leaf + nl {
                    let (t, done) = l.contract_from(target, first_leaf);
                    (BinTree::caret(t, (**r).clone()), done)
                } else {
                    let (t, done) = r.contract_from(target, first_leaf + nl);
                    (BinTree::caret((**l).clone(), t), done)
                }
            }
        }
    }

    /// For every caret, the 1-based leaf span `(a, i, b)`: the caret covers
    /// leaves `a..=b` and its left child covers `a..=i`.
    pub fn caret_spans(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        self.caret_spans_from(1, &mut out);
        out
    }

    fn caret_spans_from(&self, first: usize, out: &mut Vec<(usize, usize, usize)>) -> usize {
        match self {
            BinTree::Leaf => first + 1,
            BinTree::Caret(l, r) => {
                let after_left = l.caret_spans_from(first, out);
                let after_right = r.caret_spans_from(after_left, out);
                out.push((first, after_left - 1, after_right - 1));
                after_right
            }
        }
    }
}

impl fmt::Display for BinTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinTree::Leaf => write!(f, "."),
            BinTree::Caret(l, r) => write!(f, "({l}{r})"),
        }
    }
}

impl fmt::Debug for BinTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for BinTree {
    type Err = TreeParseError;

    fn from_str(s: &str) -> Result<BinTree, TreeParseError> {
        let bytes = s.as_bytes();
        let bad = || TreeParseError::Invalid(s.to_string());
        let (tree, used) = parse_tree(bytes, 0).ok_or_else(bad)?;
        if used != bytes.len() {
            return Err(bad());
        }
        Ok(tree)
    }
}

fn parse_tree(bytes: &[u8], at: usize) -> Option<(BinTree, usize)> {
    match bytes.get(at)? {
        b'.' => Some((BinTree::Leaf, at + 1)),
        b'(' => {
            let (l, after_l) = parse_tree(bytes, at + 1)?;
            let (r, after_r) = parse_tree(bytes, after_l)?;
            if bytes.get(after_r) == Some(&b')') {
                Some((BinTree::caret(l, r), after_r + 1))
            } else {
                None
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> BinTree {
        s.parse().unwrap()
    }

    #[test]
    fn parse_display_round_trip() {
        for s in [".", "(..)", "((..).)", "(.(..))", "((.((..).))(..))"] {
            assert_eq!(t(s).to_string(), s);
        }
        for s in ["", "(", "(.)", "(...)", "(..))", "x", "(..)."] {
            assert!(s.parse::<BinTree>().is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn leaf_count_and_spans() {
        let x0_plus = t("((..).)");
        assert_eq!(x0_plus.leaf_count(), 3);
        // root covers 1..=3 splitting after leaf 2; inner caret covers 1..=2
        let mut spans = x0_plus.caret_spans();
        spans.sort_unstable();
        assert_eq!(spans, vec![(1, 1, 2), (1, 2, 3)]);

        let x0_minus = t("(.(..))");
        let mut spans = x0_minus.caret_spans();
        spans.sort_unstable();
        assert_eq!(spans, vec![(1, 1, 3), (2, 2, 3)]);
    }

    #[test]
    fn join_refines_both_sides() {
        let a = t("(.(..))");
        let b = t("(.((..).))");
        let j = BinTree::join(&a, &b);
        assert_eq!(j, t("(.((..).))"));
        assert!(a.forest_between(&j).is_some());
        assert!(b.forest_between(&j).is_some());
        // join of incomparable trees
        let c = t("((..).)");
        assert_eq!(BinTree::join(&a, &c), t("((..)(..))"));
    }

    #[test]
    fn forest_round_trip() {
        let base = t("(.(..))");
        let refined = t("((..)((..)(.(..))))");
        let forest = base.forest_between(&refined).unwrap();
        assert_eq!(forest.len(), base.leaf_count());
        assert_eq!(base.attach_forest(&forest), refined);
        // a non-refinement yields no forest
        assert!(t("((..).)").forest_between(&base).is_none());
    }

    #[test]
    fn sibling_pairs_and_contraction() {
        let tree = t("((..)((..)(.(..))))");
        assert_eq!(tree.sibling_pairs(), vec![0, 2, 5]);
        let contracted = tree.contract_sibling(2);
        assert_eq!(contracted, t("((..)(.(.(..))))"));
        let again = contracted.contract_sibling(0);
        assert_eq!(again, t("(.(.(.(..))))"));
    }
}
