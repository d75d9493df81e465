//! n-ary tree pairs: elements of the generalised Thompson group F_n, and
//! the standard embedding of F_n into F.
//!
//! Everything mirrors [`crate::tree`]/[`crate::element`] with carets of a
//! fixed arity `n ≥ 2`. The embedding [`phi_embed`] replaces every n-ary
//! caret by a right comb of `n - 1` binary carets (the root's first child
//! in the first slot, the remaining slots nested down the right spine) and
//! reduces the resulting binary pair. It is a homomorphism F_n → F.
//!
//! Text form: `.` is a leaf and `(c1 c2 ... cn)` (without spaces) is a
//! caret, so the arity-3 tree with one caret is `(...)`.

use std::fmt;

use thiserror::Error;

use crate::element::Element;
use crate::tree::BinTree;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum NaryError {
    #[error("arity must be at least 2, got {0}")]
    BadArity(u32),
    #[error("invalid {arity}-ary tree literal `{text}`")]
    Parse { arity: u32, text: String },
    #[error("tree pair has mismatched leaf counts ({0} vs {1})")]
    LeafMismatch(usize, usize),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum NaryTree {
    Leaf,
    Node(Vec<NaryTree>),
}

impl NaryTree {
    pub fn node(children: Vec<NaryTree>) -> NaryTree {
        NaryTree::Node(children)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, NaryTree::Leaf)
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            NaryTree::Leaf => 1,
            NaryTree::Node(cs) => cs.iter().map(NaryTree::leaf_count).sum(),
        }
    }

    /// Checks that every node has exactly `arity` children.
    pub fn has_arity(&self, arity: u32) -> bool {
        match self {
            NaryTree::Leaf => true,
            NaryTree::Node(cs) => {
                cs.len() == arity as usize && cs.iter().all(|c| c.has_arity(arity))
            }
        }
    }

    pub fn join(a: &NaryTree, b: &NaryTree) -> NaryTree {
        match (a, b) {
            (NaryTree::Leaf, t) | (t, NaryTree::Leaf) => t.clone(),
            (NaryTree::Node(ca), NaryTree::Node(cb)) => NaryTree::Node(
                ca.iter()
                    .zip(cb.iter())
                    .map(|(x, y)| NaryTree::join(x, y))
                    .collect(),
            ),
        }
    }

    pub fn forest_between(&self, refined: &NaryTree) -> Option<Vec<NaryTree>> {
        let mut out = Vec::new();
        self.collect_forest(refined, &mut out)?;
        Some(out)
    }

    fn collect_forest(&self, refined: &NaryTree, out: &mut Vec<NaryTree>) -> Option<()> {
        match (self, refined) {
            (NaryTree::Leaf, t) => {
                out.push(t.clone());
                Some(())
            }
            (NaryTree::Node(_), NaryTree::Leaf) => None,
            (NaryTree::Node(ca), NaryTree::Node(cb)) => {
                if ca.len() != cb.len() {
                    return None;
                }
                for (x, y) in ca.iter().zip(cb.iter()) {
                    x.collect_forest(y, out)?;
                }
                Some(())
            }
        }
    }

    pub fn attach_forest(&self, forest: &[NaryTree]) -> NaryTree {
        assert_eq!(forest.len(), self.leaf_count(), "forest length mismatch");
        let mut next = 0;
        self.attach_from(forest, &mut next)
    }

    fn attach_from(&self, forest: &[NaryTree], next: &mut usize) -> NaryTree {
        match self {
            NaryTree::Leaf => {
                let t = forest[*next].clone();
                *next += 1;
                t
            }
            NaryTree::Node(cs) => {
                NaryTree::Node(cs.iter().map(|c| c.attach_from(forest, next)).collect())
            }
        }
    }

    /// First-leaf indices of carets whose children are all leaves.
    pub fn sibling_runs(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.sibling_runs_from(0, &mut out);
        out
    }

    fn sibling_runs_from(&self, first: usize, out: &mut Vec<usize>) -> usize {
        match self {
            NaryTree::Leaf => first + 1,
            NaryTree::Node(cs) => {
                if cs.iter().all(NaryTree::is_leaf) {
                    out.push(first);
                    return first + cs.len();
                }
                let mut at = first;
                for c in cs {
                    at = c.sibling_runs_from(at, out);
                }
                at
            }
        }
    }

    /// Contracts the all-leaf caret starting at leaf index `i`.
    pub fn contract_run(&self, i: usize) -> NaryTree {
        let (t, done) = self.contract_from(i, 0);
        assert!(done, "no all-leaf caret at leaf {i}");
        t
    }

    fn contract_from(&self, target: usize, first: usize) -> (NaryTree, bool) {
        match self {
            NaryTree::Leaf => (NaryTree::Leaf, false),
            NaryTree::Node(cs) => {
                if cs.iter().all(NaryTree::is_leaf) && first == target {
                    return (NaryTree::Leaf, true);
                }
                let mut at = first;
                let mut out = Vec::with_capacity(cs.len());
                let mut done = false;
                for c in cs {
                    let n = c.leaf_count();
                    if !done && target >= at && target < at + n {
                        let (t, d) = c.contract_from(target, at);
                        out.push(t);
                        done = d;
                    } else {
                        out.push(c.clone());
                    }
                    at += n;
                }
                (NaryTree::Node(out), done)
            }
        }
    }

    fn parse(bytes: &[u8], at: usize, arity: u32) -> Option<(NaryTree, usize)> {
        match bytes.get(at)? {
            b'.' => Some((NaryTree::Leaf, at + 1)),
            b'(' => {
                let mut children = Vec::with_capacity(arity as usize);
                let mut pos = at + 1;
                for _ in 0..arity {
                    let (c, next) = NaryTree::parse(bytes, pos, arity)?;
                    children.push(c);
                    pos = next;
                }
                if bytes.get(pos) == Some(&b')') {
                    Some((NaryTree::Node(children), pos + 1))
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn from_text(s: &str, arity: u32) -> Result<NaryTree, NaryError> {
        if arity < 2 {
            return Err(NaryError::BadArity(arity));
        }
        let bad = || NaryError::Parse {
            arity,
            text: s.to_string(),
        };
        let (t, used) = NaryTree::parse(s.as_bytes(), 0, arity).ok_or_else(bad)?;
        if used != s.len() {
            return Err(bad());
        }
        Ok(t)
    }
}

impl fmt::Display for NaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NaryTree::Leaf => write!(f, "."),
            NaryTree::Node(cs) => {
                write!(f, "(")?;
                for c in cs {
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// An element of F_n as a reduced n-ary tree pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NaryElement {
    arity: u32,
    plus: NaryTree,
    minus: NaryTree,
}

impl NaryElement {
    pub fn identity(arity: u32) -> NaryElement {
        NaryElement {
            arity,
            plus: NaryTree::Leaf,
            minus: NaryTree::Leaf,
        }
    }

    pub fn reduce(arity: u32, mut plus: NaryTree, mut minus: NaryTree) -> Result<NaryElement, NaryError> {
        if arity < 2 {
            return Err(NaryError::BadArity(arity));
        }
        if !plus.has_arity(arity) || !minus.has_arity(arity) {
            return Err(NaryError::Parse {
                arity,
                text: format!("{plus}|{minus}"),
            });
        }
        if plus.leaf_count() != minus.leaf_count() {
            return Err(NaryError::LeafMismatch(
                plus.leaf_count(),
                minus.leaf_count(),
            ));
        }
        loop {
            let pp = plus.sibling_runs();
            let pm = minus.sibling_runs();
            match pp.iter().find(|i| pm.contains(i)).copied() {
                Some(i) => {
                    plus = plus.contract_run(i);
                    minus = minus.contract_run(i);
                }
                None => return Ok(NaryElement { arity, plus, minus }),
            }
        }
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn plus(&self) -> &NaryTree {
        &self.plus
    }

    pub fn minus(&self) -> &NaryTree {
        &self.minus
    }

    pub fn leaf_count(&self) -> usize {
        self.plus.leaf_count()
    }

    pub fn is_identity(&self) -> bool {
        self.plus.is_leaf()
    }

    pub fn invert(&self) -> NaryElement {
        NaryElement {
            arity: self.arity,
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }

    pub fn multiply(&self, other: &NaryElement) -> NaryElement {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let common = NaryTree::join(&self.minus, &other.plus);
        let f1 = self
            .minus
            .forest_between(&common)
            .expect("join refines its arguments");
        let f2 = other
            .plus
            .forest_between(&common)
            .expect("join refines its arguments");
        NaryElement::reduce(
            self.arity,
            self.plus.attach_forest(&f1),
            other.minus.attach_forest(&f2),
        )
        .expect("lifted trees have equal leaf counts")
    }

    /// The generator `y_i` of F_n. Writing `i = q(n-1) + r` with
    /// `0 <= r < n-1`, both trees descend `q` carets down the right spine;
    /// there the plus tree carries one extra caret in slot `r` and the
    /// minus tree carries it in the last slot. These satisfy
    /// `y_j^{-1} y_i y_j = y_{i+n-1}` for `j < i`, and for arity 2 the
    /// family is exactly `x_i`.
    pub fn generator(arity: u32, i: u32) -> Result<NaryElement, NaryError> {
        if arity < 2 {
            return Err(NaryError::BadArity(arity));
        }
        let n = arity as usize;
        let q = i / (arity - 1);
        let r = (i % (arity - 1)) as usize;
        let leaves = |k: usize| vec![NaryTree::Leaf; k];
        let base = NaryTree::Node(leaves(n));
        let mut plus = {
            let mut cs = leaves(n);
            cs[r] = base.clone();
            NaryTree::Node(cs)
        };
        let mut minus = {
            let mut cs = leaves(n);
            cs[n - 1] = base.clone();
            NaryTree::Node(cs)
        };
        for _ in 0..q {
            let wrap = |t: NaryTree| {
                let mut cs = leaves(n - 1);
                cs.push(t);
                NaryTree::Node(cs)
            };
            plus = wrap(plus);
            minus = wrap(minus);
        }
        NaryElement::reduce(arity, plus, minus)
    }

    pub fn pow(&self, k: i32) -> NaryElement {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut out = NaryElement::identity(self.arity);
        for _ in 0..k.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    pub fn conjugate(&self, other: &NaryElement) -> NaryElement {
        other.invert().multiply(self).multiply(other)
    }

    pub fn from_text(s: &str, arity: u32) -> Result<NaryElement, NaryError> {
        let bad = || NaryError::Parse {
            arity,
            text: s.to_string(),
        };
        let (p, m) = s.split_once('|').ok_or_else(bad)?;
        NaryElement::reduce(
            arity,
            NaryTree::from_text(p, arity)?,
            NaryTree::from_text(m, arity)?,
        )
    }
}

impl fmt::Display for NaryElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.plus, self.minus)
    }
}

/// The right-comb translation of an n-ary tree into a binary tree.
pub fn comb_tree(tree: &NaryTree) -> BinTree {
    match tree {
        NaryTree::Leaf => BinTree::Leaf,
        NaryTree::Node(cs) => {
            let mut it = cs.iter().rev().map(comb_tree);
            let mut acc = it.next().expect("nodes are nonempty");
            for t in it {
                acc = BinTree::caret(t, acc);
            }
            acc
        }
    }
}

/// The embedding F_n → F: both trees are comb-translated, then the binary
/// pair is reduced.
pub fn phi_embed(e: &NaryElement) -> Element {
    Element::reduce(comb_tree(e.plus()), comb_tree(e.minus()))
        .expect("comb translation preserves leaf counts")
}
