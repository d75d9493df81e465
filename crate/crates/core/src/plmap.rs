//! Elements of F as piecewise-linear homeomorphisms of `[0, 1]`.
//!
//! The leaves of a binary tree subdivide `[0, 1]` by repeated halving; an
//! element maps the i-th leaf interval of its `plus` tree affinely onto the
//! i-th leaf interval of its `minus` tree. Everything here is exact dyadic
//! arithmetic — no floating point and no explicit affine pieces.

use crate::dyadic::{Dyadic, DyadicError};
use crate::element::Element;
use crate::tree::BinTree;

/// The leaf intervals of a tree under repeated halving of `[0, 1]`.
pub fn leaf_intervals(tree: &BinTree) -> Result<Vec<(Dyadic, Dyadic)>, DyadicError> {
    let mut out = Vec::with_capacity(tree.leaf_count());
    collect_intervals(tree, Dyadic::ZERO, Dyadic::ONE, &mut out)?;
    Ok(out)
}

fn collect_intervals(
    tree: &BinTree,
    lo: Dyadic,
    hi: Dyadic,
    out: &mut Vec<(Dyadic, Dyadic)>,
) -> Result<(), DyadicError> {
    match tree {
        BinTree::Leaf => {
            out.push((lo, hi));
            Ok(())
        }
        BinTree::Caret(l, r) => {
            let mid = lo.midpoint(hi)?;
            collect_intervals(l, lo, mid, out)?;
            collect_intervals(r, mid, hi, out)
        }
    }
}

/// Inner breakpoints of the domain (`plus`) and range (`minus`)
/// subdivisions: each list has `leaf_count - 1` entries in `(0, 1)`.
pub fn breakpoints(e: &Element) -> Result<(Vec<Dyadic>, Vec<Dyadic>), DyadicError> {
    let inner = |tree: &BinTree| -> Result<Vec<Dyadic>, DyadicError> {
        Ok(leaf_intervals(tree)?
            .iter()
            .skip(1)
            .map(|&(lo, _)| lo)
            .collect())
    };
    Ok((inner(e.plus())?, inner(e.minus())?))
}

/// Evaluates the homeomorphism at a dyadic point, exactly.
pub fn evaluate(e: &Element, t: Dyadic) -> Result<Dyadic, DyadicError> {
    // descend the plus tree to the leaf interval containing t
    let mut node = e.plus();
    let mut lo = Dyadic::ZERO;
    let mut hi = Dyadic::ONE;
    let mut index = 0usize;
    let mut depth = 0i32;
    while let BinTree::Caret(l, r) = node {
        let mid = lo.midpoint(hi)?;
        if t < mid {
            node = l;
            hi = mid;
        } else {
            index += l.leaf_count();
            node = r;
            lo = mid;
        }
        depth += 1;
    }
    // offset of t inside the leaf interval, scaled to [0, 1]
    let frac = t.sub(lo)?.mul_pow2(depth)?;
    // the matching leaf interval of the minus tree
    let (lo2, hi2) = leaf_intervals(e.minus())?[index];
    let width_exp = hi2.sub(lo2)?.exponent() as i32;
    lo2.add(frac.mul_pow2(-width_exp)?)
}

/// Checks `evaluate(a·b, t) == evaluate(b, evaluate(a, t))` at the given
/// sample points (composition is left to right, like multiplication).
pub fn compose_check(a: &Element, b: &Element, samples: &[Dyadic]) -> Result<bool, DyadicError> {
    let product = a.multiply(b);
    for &t in samples {
        if evaluate(&product, t)? != evaluate(b, evaluate(a, t)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn x0_breakpoints_and_formula() {
        let x0 = Element::generator(0);
        let (top, bottom) = breakpoints(&x0).unwrap();
        assert_eq!(top, vec![d("1/4"), d("1/2")]);
        assert_eq!(bottom, vec![d("1/2"), d("3/4")]);
        // 2t on [0,1/4]; t + 1/4 on [1/4,1/2]; t/2 + 1/2 on [1/2,1]
        let cases = [
            ("0", "0"),
            ("1/8", "1/4"),
            ("1/4", "1/2"),
            ("3/8", "5/8"),
            ("1/2", "3/4"),
            ("3/4", "7/8"),
            ("1", "1"),
        ];
        for (t, want) in cases {
            assert_eq!(evaluate(&x0, d(t)).unwrap(), d(want), "x0({t})");
        }
    }

    #[test]
    fn x1_breakpoints_and_formula() {
        let x1 = Element::generator(1);
        let (top, bottom) = breakpoints(&x1).unwrap();
        assert_eq!(top, vec![d("1/2"), d("5/8"), d("3/4")]);
        assert_eq!(bottom, vec![d("1/2"), d("3/4"), d("7/8")]);
        // identity on [0,1/2], then the x0 shape squeezed into [1/2,1]
        let cases = [
            ("1/4", "1/4"),
            ("1/2", "1/2"),
            ("9/16", "5/8"),
            ("5/8", "3/4"),
            ("11/16", "13/16"),
            ("3/4", "7/8"),
            ("7/8", "15/16"),
        ];
        for (t, want) in cases {
            assert_eq!(evaluate(&x1, d(t)).unwrap(), d(want), "x1({t})");
        }
    }

    #[test]
    fn inverse_undoes_evaluation() {
        let e = Element::generator(0).multiply(&Element::generator(1));
        let inv = e.invert();
        for s in ["0", "1/8", "5/16", "1/2", "11/16", "7/8", "1"] {
            let t = d(s);
            assert_eq!(evaluate(&inv, evaluate(&e, t).unwrap()).unwrap(), t);
        }
    }

    #[test]
    fn composition_matches_product() {
        let x0 = Element::generator(0);
        let x1 = Element::generator(1);
        let samples: Vec<Dyadic> = ["0", "1/8", "1/4", "3/8", "1/2", "5/8", "3/4", "15/16", "1"]
            .iter()
            .map(|s| d(s))
            .collect();
        assert!(compose_check(&x0, &x1, &samples).unwrap());
        assert!(compose_check(&x1, &x0.invert(), &samples).unwrap());
        assert!(compose_check(&x0.pow(2), &x1.pow(-1), &samples).unwrap());
    }

    /// Prefix-substitution oracle for the action of x0·x1 on binary
    /// expansions: .00a → .0a, .010a → .10a, .011a → .110a, .1a → .111a.
    fn table_x0x1(bits: &str) -> String {
        if let Some(a) = bits.strip_prefix("00") {
            format!("0{a}")
        } else if let Some(a) = bits.strip_prefix("010") {
            format!("10{a}")
        } else if let Some(a) = bits.strip_prefix("011") {
            format!("110{a}")
        } else if let Some(a) = bits.strip_prefix("1") {
            format!("111{a}")
        } else {
            unreachable!("padded string matches some prefix")
        }
    }

    #[test]
    fn x0x1_acts_by_prefix_substitution() {
        let e = Element::generator(0).multiply(&Element::generator(1));
        // all binary strings of length <= 6 here; the acceptance suite
        // extends this to length 10
        for len in 0..=6usize {
            for bits in 0..(1u32 << len) {
                let s: String = (0..len)
                    .map(|i| {
                        if bits >> (len - 1 - i) & 1 == 1 { '1' } else { '0' }
                    })
                    .collect();
                let padded = format!("{s}000");
                let t: Dyadic = format!(".{padded}").parse().unwrap();
                let want: Dyadic = format!(".{}", table_x0x1(&padded)).parse().unwrap();
                assert_eq!(evaluate(&e, t).unwrap(), want, "bits .{s}");
            }
        }
    }
}
