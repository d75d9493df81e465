//! Words in the generators `x0, x1, x2, ...` and the unique normal form.
//!
//! Every element of F has a unique normal form
//! `x_{i1}^{s1} ... x_{im}^{sm} · (x_{j1}^{t1} ... x_{jn}^{tn})⁻¹` with
//! `i1 < ... < im`, `j1 < ... < jn`, positive exponents, and the occurrence
//! condition: whenever some index `i` appears in both halves, index `i + 1`
//! appears in at least one of them.
//!
//! The positive half is read off the `plus` tree by repeatedly expanding the
//! leftmost caret on a growing frontier: if the caret's top edge has `l`
//! frontier edges to its left and at least one to its right, it contributes
//! `x_l`; with nothing to its right it contributes the identity. The
//! negative half is the same computation on the `minus` tree, inverted.
//!
//! Text forms: words are written `x0 x1^3 x5^-1`, the empty word as `1`,
//! and normal forms as `u / v` meaning `u · v⁻¹` (both halves written with
//! positive exponents, e.g. `x0 x1^3 x4 / x0^2 x1 x2^2 x5`).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::element::Element;
use crate::tree::BinTree;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum WordParseError {
    #[error("invalid word token `{0}`")]
    Token(String),
    #[error("more than one `/` in word")]
    ExtraSlash,
}

/// A word in the generators: factors `x_index^exponent` multiplied left to
/// right. Exponents are nonzero but otherwise unconstrained.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GroupWord(pub Vec<(u32, i32)>);

impl GroupWord {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Evaluates the word as an element, multiplying left to right.
    pub fn to_element(&self) -> Element {
        let mut out = Element::identity();
        for &(i, e) in &self.0 {
            out = out.multiply(&Element::generator(i).pow(e));
        }
        out
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|&(i, e)| (i, -e)).collect())
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GroupWord(v)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, &(i, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for GroupWord {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<GroupWord, WordParseError> {
        let mut halves = s.split('/');
        let head = halves.next().unwrap_or("");
        let tail = halves.next();
        if halves.next().is_some() {
            return Err(WordParseError::ExtraSlash);
        }
        let mut word = parse_factors(head)?;
        if let Some(tail) = tail {
            word = word.concat(&parse_factors(tail)?.inverse());
        }
        Ok(word)
    }
}

fn parse_factors(s: &str) -> Result<GroupWord, WordParseError> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let bad = || WordParseError::Token(tok.to_string());
        let rest = tok.strip_prefix('x').ok_or_else(bad)?;
        let (idx, exp) = match rest.split_once('^') {
            Some((i, e)) => (
                i.parse::<u32>().map_err(|_| bad())?,
                e.parse::<i32>().map_err(|_| bad())?,
            ),
            None => (rest.parse::<u32>().map_err(|_| bad())?, 1),
        };
        if exp == 0 {
            return Err(bad());
        }
        out.push((idx, exp));
    }
    Ok(GroupWord(out))
}

/// The normal form of an element: `pos · neg⁻¹` where both halves are
/// products `x_i^e` with strictly increasing indices and exponents ≥ 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalForm {
    pub pos: Vec<(u32, u32)>,
    pub neg: Vec<(u32, u32)>,
}

impl NormalForm {
    /// Computes the normal form by the leftmost-cell traversal of both
    /// trees of the reduced pair.
    pub fn of(e: &Element) -> NormalForm {
        let nf = NormalForm {
            pos: group_runs(&positive_word(e.plus())),
            neg: group_runs(&positive_word(e.minus())),
        };
        debug_assert!(nf.is_valid(), "extraction produced a non-normal form");
        nf
    }

    /// The word `pos · neg⁻¹` spelt out left to right.
    pub fn to_word(&self) -> GroupWord {
        let mut v: Vec<(u32, i32)> = self.pos.iter().map(|&(i, e)| (i, e as i32)).collect();
        v.extend(self.neg.iter().rev().map(|&(i, e)| (i, -(e as i32))));
        GroupWord(v)
    }

    pub fn to_element(&self) -> Element {
        self.to_word().to_element()
    }

    pub fn is_identity(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    /// Checks strict monotonicity, positive exponents, and the occurrence
    /// condition (which also forces the two maximal indices to differ).
    pub fn is_valid(&self) -> bool {
        let increasing = |half: &[(u32, u32)]| {
            half.windows(2).all(|w| w[0].0 < w[1].0) && half.iter().all(|&(_, e)| e >= 1)
        };
        if !increasing(&self.pos) || !increasing(&self.neg) {
            return false;
        }
        let occurs = |i: u32| {
            self.pos.iter().any(|&(j, _)| j == i) || self.neg.iter().any(|&(j, _)| j == i)
        };
        self.pos
            .iter()
            .map(|&(i, _)| i)
            .filter(|&i| self.neg.iter().any(|&(j, _)| j == i))
            .all(|i| occurs(i + 1))
    }

    /// All generator indices are shifted by `delta` (used for `1 ⊕ ·`).
    pub fn shift(&self, delta: u32) -> NormalForm {
        NormalForm {
            pos: self.pos.iter().map(|&(i, e)| (i + delta, e)).collect(),
            neg: self.neg.iter().map(|&(i, e)| (i + delta, e)).collect(),
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = |h: &[(u32, u32)]| {
            GroupWord(h.iter().map(|&(i, e)| (i, e as i32)).collect()).to_string()
        };
        if self.neg.is_empty() {
            write!(f, "{}", half(&self.pos))
        } else {
            write!(f, "{} / {}", half(&self.pos), half(&self.neg))
        }
    }
}

/// The positive word of a tree, read off by expanding the leftmost caret of
/// the frontier; emits one (possibly trivial) letter per caret.
fn positive_word(tree: &BinTree) -> Vec<u32> {
    let mut frontier: Vec<&BinTree> = vec![tree];
    let mut word = Vec::new();
    loop {
        let Some(j) = frontier.iter().position(|t| !t.is_leaf()) else {
            break;
        };
        let BinTree::Caret(l, r) = frontier[j] else {
            unreachable!()
        };
        if j + 1 < frontier.len() {
            word.push(j as u32);
        }
        frontier.splice(j..=j, [&**l, &**r]);
    }
    word
}

fn group_runs(indices: &[u32]) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = Vec::new();
    for &i in indices {
        match out.last_mut() {
            Some((j, e)) if *j == i => *e += 1,
            _ => out.push((i, 1)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    #[test]
    fn word_parse_display_round_trip() {
        for s in ["1", "x0", "x0 x1^3 x4", "x5^-1 x2^-2", "x10^2 x0^-1"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert_eq!(w("x0 x1 / x2 x3").to_string(), "x0 x1 x3^-1 x2^-1");
        for s in ["y0", "x", "x0^0", "x-1", "x0 / x1 / x2", "x0^"] {
            assert!(s.parse::<GroupWord>().is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn normal_form_of_generators() {
        for i in 0..5 {
            let nf = NormalForm::of(&Element::generator(i));
            assert_eq!(nf.pos, vec![(i, 1)]);
            assert!(nf.neg.is_empty());
            assert_eq!(nf.to_element(), Element::generator(i));
        }
        assert!(NormalForm::of(&Element::identity()).is_identity());
        assert_eq!(NormalForm::of(&Element::identity()).to_string(), "1");
        let nf = NormalForm::of(&Element::generator(0).invert());
        assert_eq!(nf.to_string(), "1 / x0");
    }

    #[test]
    fn eight_leaf_pair_normal_form() {
        // A reduced pair with 8 leaves per tree whose normal form exercises
        // repeated exponents in both halves.
        let e: Element = "((.(((..).)(..)))(..))|(((.(.((..).)))(..)).)"
            .parse()
            .unwrap();
        assert_eq!(e.leaf_count(), 8);
        let nf = NormalForm::of(&e);
        assert_eq!(nf.pos, vec![(0, 1), (1, 3), (4, 1)]);
        assert_eq!(nf.neg, vec![(0, 2), (1, 1), (2, 2), (5, 1)]);
        assert_eq!(nf.to_string(), "x0 x1^3 x4 / x0^2 x1 x2^2 x5");
        assert_eq!(nf.to_word().to_string(), "x0 x1^3 x4 x5^-1 x2^-2 x1^-1 x0^-2");
        // and the word evaluates back to the same reduced pair
        assert_eq!(nf.to_element(), e);
    }

    #[test]
    fn normal_form_round_trips_products() {
        let x0 = Element::generator(0);
        let x1 = Element::generator(1);
        let samples = [
            x0.multiply(&x1),
            x1.multiply(&x0.invert()),
            x0.pow(3).multiply(&x1.pow(-2)),
            x0.invert().multiply(&x1).multiply(&x0),
        ];
        for e in samples {
            let nf = NormalForm::of(&e);
            assert!(nf.is_valid());
            assert_eq!(nf.to_element(), e);
        }
    }

    #[test]
    fn shift_matches_oplus() {
        let e = w("x0 x1^2 / x2").to_element();
        let shifted = Element::identity().oplus(&e);
        assert_eq!(NormalForm::of(&shifted), NormalForm::of(&e).shift(1));
    }

    #[test]
    fn occurrence_condition_checker() {
        let good = NormalForm {
            pos: vec![(0, 1), (1, 1)],
            neg: vec![(0, 1)],
        };
        assert!(good.is_valid());
        let bad = NormalForm {
            pos: vec![(0, 1)],
            neg: vec![(0, 1)],
        };
        assert!(!bad.is_valid());
        let unsorted = NormalForm {
            pos: vec![(1, 1), (0, 1)],
            neg: vec![],
        };
        assert!(!unsorted.is_valid());
    }
}
