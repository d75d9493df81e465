//! Elements of Thompson's group F as reduced binary tree pairs.
//!
//! An element is a pair `(plus, minus)` of binary trees with the same leaf
//! count, reduced so that no index carries a sibling leaf pair in both trees
//! at once (no dipoles). The pair is the diagram of the element: `plus` is
//! the domain subdivision, `minus` the range subdivision, and the element
//! maps the i-th leaf interval of `plus` affinely onto the i-th leaf
//! interval of `minus`.
//!
//! Multiplication composes left to right: `a.multiply(&b)` is the map
//! "apply `a`, then `b`". The sum `a ⊕ b` places the two diagrams side by
//! side under a fresh caret; `1 ⊕ 1 = 1`.
//!
//! Elements serialise as `plus|minus` in the bracket notation of
//! [`crate::tree`], e.g. `x0` is `((..).)|(.(..))`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::tree::{BinTree, TreeParseError};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ElementError {
    #[error("tree pair has mismatched leaf counts ({0} vs {1})")]
    LeafMismatch(usize, usize),
    #[error("invalid element literal: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    plus: BinTree,
    minus: BinTree,
}

impl Element {
    pub fn identity() -> Element {
        Element {
            plus: BinTree::Leaf,
            minus: BinTree::Leaf,
        }
    }

    /// Reduces a tree pair to an element by contracting dipoles (sibling
    /// leaf pairs present at the same index in both trees).
    pub fn reduce(plus: BinTree, minus: BinTree) -> Result<Element, ElementError> {
        let (e, _) = Element::reduce_counting(plus, minus)?;
        Ok(e)
    }

    /// Like [`Element::reduce`], also reporting how many dipoles were
    /// contracted.
    pub fn reduce_counting(
        mut plus: BinTree,
        mut minus: BinTree,
    ) -> Result<(Element, usize), ElementError> {
        if plus.leaf_count() != minus.leaf_count() {
            return Err(ElementError::LeafMismatch(
                plus.leaf_count(),
                minus.leaf_count(),
            ));
        }
        let mut removed = 0;
        loop {
            let pp = plus.sibling_pairs();
            let pm = minus.sibling_pairs();
            let common = pp.iter().find(|i| pm.contains(i)).copied();
            match common {
                Some(i) => {
                    plus = plus.contract_sibling(i);
                    minus = minus.contract_sibling(i);
                    removed += 1;
                }
                None => return Ok((Element { plus, minus }, removed)),
            }
        }
    }

    pub fn plus(&self) -> &BinTree {
        &self.plus
    }

    pub fn minus(&self) -> &BinTree {
        &self.minus
    }

    pub fn is_identity(&self) -> bool {
        self.plus.is_leaf()
    }

    /// Leaf count of either tree of the reduced pair.
    pub fn leaf_count(&self) -> usize {
        self.plus.leaf_count()
    }

    /// Vertex count of the reduced diagram: `leaf_count + 1`.
    pub fn diagram_vertex_count(&self) -> usize {
        self.leaf_count() + 1
    }

    pub fn invert(&self) -> Element {
        Element {
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }

    /// Group product, composing left to right.
    pub fn multiply(&self, other: &Element) -> Element {
        let common = BinTree::join(&self.minus, &other.plus);
        let f1 = self
            .minus
            .forest_between(&common)
            .expect("join refines its arguments");
        let f2 = other
            .plus
            .forest_between(&common)
            .expect("join refines its arguments");
        let plus = self.plus.attach_forest(&f1);
        let minus = other.minus.attach_forest(&f2);
        Element::reduce(plus, minus).expect("lifted trees have equal leaf counts")
    }

    /// The sum `self ⊕ other`: both trees of the pair are joined under a
    /// fresh root caret, then reduced (so `1 ⊕ 1 = 1`).
    pub fn oplus(&self, other: &Element) -> Element {
        let plus = BinTree::caret(self.plus.clone(), other.plus.clone());
        let minus = BinTree::caret(self.minus.clone(), other.minus.clone());
        Element::reduce(plus, minus).expect("summands have matching leaf counts")
    }

    /// The generator `x_i`; `x_0` maps `[0,1/4] → [0,1/2]` doubling,
    /// `[1/4,1/2] → [1/2,3/4]`, `[1/2,1] → [3/4,1]` halving, and
    /// `x_{i+1} = 1 ⊕ x_i`.
    pub fn generator(i: u32) -> Element {
        let mut g = Element {
            plus: BinTree::caret(BinTree::caret(BinTree::Leaf, BinTree::Leaf), BinTree::Leaf),
            minus: BinTree::caret(BinTree::Leaf, BinTree::caret(BinTree::Leaf, BinTree::Leaf)),
        };
        for _ in 0..i {
            g = Element::identity().oplus(&g);
        }
        g
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, n: i32) -> Element {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = Element::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// Conjugate `self^other = other⁻¹ · self · other`.
    pub fn conjugate(&self, other: &Element) -> Element {
        other.invert().multiply(self).multiply(other)
    }

    pub fn commutes_with(&self, other: &Element) -> bool {
        self.multiply(other) == other.multiply(self)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.plus, self.minus)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Element {
    type Err = ElementError;

    fn from_str(s: &str) -> Result<Element, ElementError> {
        let (p, m) = s
            .split_once('|')
            .ok_or_else(|| ElementError::Parse(format!("missing `|` in `{s}`")))?;
        let to_err = |e: TreeParseError| ElementError::Parse(e.to_string());
        let plus: BinTree = p.parse().map_err(to_err)?;
        let minus: BinTree = m.parse().map_err(to_err)?;
        Element::reduce(plus, minus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> BinTree {
        s.parse().unwrap()
    }

    #[test]
    fn generator_trees() {
        let x0 = Element::generator(0);
        assert_eq!(x0.to_string(), "((..).)|(.(..))");
        let x1 = Element::generator(1);
        assert_eq!(x1.to_string(), "(.((..).))|(.(.(..)))");
        // leaf_count(x_i) = i + 3
        for i in 0..8 {
            assert_eq!(Element::generator(i).leaf_count(), i as usize + 3);
        }
    }

    #[test]
    fn reduce_contracts_dipoles() {
        // expand both trees of x0 by the same forest, reduce recovers x0
        let x0 = Element::generator(0);
        let forest = [t("(..)"), t("."), t("((..).)")];
        let plus = x0.plus().attach_forest(&forest);
        let minus = x0.minus().attach_forest(&forest);
        let (e, removed) = Element::reduce_counting(plus, minus).unwrap();
        assert_eq!(e, x0);
        assert_eq!(removed, 3);
    }

    #[test]
    fn reduce_rejects_mismatch() {
        assert_eq!(
            Element::reduce(t("(..)"), t(".")),
            Err(ElementError::LeafMismatch(2, 1))
        );
    }

    #[test]
    fn group_axioms_on_generators() {
        let x0 = Element::generator(0);
        let x1 = Element::generator(1);
        assert_eq!(x0.multiply(&x0.invert()), Element::identity());
        assert_eq!(x0.invert().multiply(&x0), Element::identity());
        assert_eq!(x0.multiply(&Element::identity()), x0);
        // associativity spot check
        let a = x0.multiply(&x1);
        let b = x1.multiply(&x0.invert());
        assert_eq!(a.multiply(&b), x0.multiply(&x1.multiply(&b)));
    }

    #[test]
    fn oplus_basics() {
        let one = Element::identity();
        let x0 = Element::generator(0);
        assert_eq!(one.oplus(&one), one);
        assert_eq!(one.oplus(&x0), Element::generator(1));
        // x_{i+1} = 1 ⊕ x_i
        for i in 0..6 {
            assert_eq!(
                one.oplus(&Element::generator(i)),
                Element::generator(i + 1)
            );
        }
    }

    #[test]
    fn basic_relation() {
        // x_i^{x_j} = x_{i+1} for j < i
        let x0 = Element::generator(0);
        let x2 = Element::generator(2);
        assert_eq!(x2.conjugate(&x0), Element::generator(3));
        assert!(!x0.commutes_with(&Element::generator(1)));
    }

    #[test]
    fn parse_reduces() {
        // an unreduced pair parses to its reduced form
        let e: Element = "(..)|(..)".parse().unwrap();
        assert_eq!(e, Element::identity());
        assert!("((..).)".parse::<Element>().is_err());
        assert!("(..)|.".parse::<Element>().is_err());
    }
}
