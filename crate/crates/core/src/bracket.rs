//! Kauffman bracket evaluation on PD codes, used as the verification
//! oracle for the link pipelines.
//!
//! The bracket is computed as the plain 2^n state sum with loop factor
//! δ = −A² − A⁻² and ⟨unknot⟩ = 1: every crossing is smoothed two ways,
//! the resulting loops are counted, and each state contributes
//! A^(a−b) δ^(loops−1). The code path is deliberately simple — no skein
//! memoization — so it stays auditable; a hard cap keeps it fast.
//!
//! [`equiv_up_to_units`] compares two brackets up to the unit ±A^{3k}
//! picked up by kinks and up to a bounded number of δ factors, which is
//! exactly the ambiguity left by tracked unknot additions and removals.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::pd::PDCode;

/// Largest crossing number accepted by the state sum.
pub const CROSSING_CAP: usize = 14;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum BracketError {
    #[error("the empty diagram has no bracket")]
    EmptyDiagram,
    #[error("diagram has {0} crossings; the state sum is capped at {CROSSING_CAP}")]
    TooManyCrossings(usize),
}

/// An integer Laurent polynomial in the variable A.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(0, 1)
    }

    pub fn monomial(exp: i32, coeff: i64) -> LaurentPoly {
        let mut coeffs = BTreeMap::new();
        if coeff != 0 {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { coeffs }
    }

    /// The loop factor δ = −A² − A⁻².
    pub fn delta() -> LaurentPoly {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(2, -1);
        coeffs.insert(-2, -1);
        LaurentPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    /// Exponent of the highest-degree term.
    pub fn leading_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        for (&e, &c) in &other.coeffs {
            let v = coeffs.entry(e).or_insert(0);
            *v += c;
            if *v == 0 {
                coeffs.remove(&e);
            }
        }
        LaurentPoly { coeffs }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut coeffs: BTreeMap<i32, i64> = BTreeMap::new();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &other.coeffs {
                let v = coeffs.entry(e1 + e2).or_insert(0);
                *v += c1 * c2;
            }
        }
        coeffs.retain(|_, c| *c != 0);
        LaurentPoly { coeffs }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Multiplies by A^shift.
    pub fn shift(&self, shift: i32) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + shift, c)).collect(),
        }
    }

    /// Substitutes A ↦ A⁻¹.
    pub fn mirror(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&exp, &coeff)) in self.coeffs.iter().rev().enumerate() {
            let magnitude = coeff.unsigned_abs();
            if i == 0 {
                if coeff < 0 {
                    write!(f, "-")?;
                }
            } else if coeff < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (magnitude, exp) {
                (_, 0) => write!(f, "{magnitude}")?,
                (1, _) => {}
                (_, _) => write!(f, "{magnitude}")?,
            }
            match exp {
                0 => {}
                1 => write!(f, "A")?,
                _ => write!(f, "A^{exp}")?,
            }
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// End pairs joined by each smoothing choice: `true` is the A-smoothing.
fn smoothing_pairs(choose_a: bool) -> [(usize, usize); 2] {
    if choose_a {
        [(1, 2), (3, 0)]
    } else {
        [(0, 1), (2, 3)]
    }
}

/// The Kauffman bracket of a diagram, by exhaustive state enumeration.
pub fn kauffman_bracket(pd: &PDCode) -> Result<LaurentPoly, BracketError> {
    let n = pd.crossing_count();
    if n == 0 && pd.unknots() == 0 {
        return Err(BracketError::EmptyDiagram);
    }
    if n > CROSSING_CAP {
        return Err(BracketError::TooManyCrossings(n));
    }
    let partner = pd.partner_table();
    let dart = |c: usize, s: usize| 4 * c + s;

    let mut total = LaurentPoly::zero();
    for state in 0u32..(1 << n) {
        let mut uf = UnionFind::new(4 * n);
        for c in 0..n {
            for s in 0..4 {
                let (pc, ps) = partner[c][s];
                uf.union(dart(c, s), dart(pc, ps));
            }
            for (s1, s2) in smoothing_pairs(state >> c & 1 == 1) {
                uf.union(dart(c, s1), dart(c, s2));
            }
        }
        let mut loops = 0usize;
        for d in 0..4 * n {
            if uf.find(d) == d {
                loops += 1;
            }
        }
        let a_count = state.count_ones() as i32;
        let exponent = 2 * a_count - n as i32;
        let delta_exp = (loops + pd.unknots()) as u32 - 1;
        total = total.add(&LaurentPoly::monomial(exponent, 1).mul(&LaurentPoly::delta().pow(delta_exp)));
    }
    Ok(total)
}

fn unit_multiple(p: &LaurentPoly, q: &LaurentPoly) -> bool {
    if p.is_zero() || q.is_zero() {
        return p.is_zero() && q.is_zero();
    }
    let shift = p.leading_exp().unwrap() - q.leading_exp().unwrap();
    if shift.rem_euclid(3) != 0 {
        return false;
    }
    let shifted = q.shift(shift);
    *p == shifted || *p == shifted.neg()
}

/// True when p = ±A^{3k} · δ^j · q with |j| ≤ delta_slack; with
/// `allow_mirror`, q may additionally be mirrored (A ↦ A⁻¹) first.
pub fn equiv_up_to_units(
    p: &LaurentPoly,
    q: &LaurentPoly,
    delta_slack: u32,
    allow_mirror: bool,
) -> bool {
    let mut candidates = vec![q.clone()];
    if allow_mirror {
        candidates.push(q.mirror());
    }
    for q in candidates {
        for j in 0..=delta_slack {
            let dj = LaurentPoly::delta().pow(j);
            if unit_multiple(&p.mul(&dj), &q) || unit_multiple(p, &q.mul(&dj)) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pd::Dart;

    fn pd(text: &str) -> PDCode {
        text.parse().unwrap()
    }

    fn poly(terms: &[(i32, i64)]) -> LaurentPoly {
        terms
            .iter()
            .fold(LaurentPoly::zero(), |acc, &(e, c)| {
                acc.add(&LaurentPoly::monomial(e, c))
            })
    }

    /// Independent evaluation: resolve crossings one at a time by skein
    /// recursion, then count loops by walking the closed curves.
    fn bracket_by_resolution(pd: &PDCode) -> LaurentPoly {
        fn walk_loops(
            n: usize,
            partner: &[[Dart; 4]],
            joins: &std::collections::HashMap<Dart, Dart>,
        ) -> usize {
            let mut visited = vec![[false; 4]; n];
            let mut loops = 0;
            for c in 0..n {
                for s in 0..4 {
                    if visited[c][s] {
                        continue;
                    }
                    loops += 1;
                    // alternate arc steps and smoothing steps
                    let start = (c, s);
                    let mut d = start;
                    loop {
                        visited[d.0][d.1] = true;
                        let across = partner[d.0][d.1];
                        visited[across.0][across.1] = true;
                        d = joins[&across];
                        if d == start {
                            break;
                        }
                    }
                }
            }
            loops
        }

        fn rec(
            remaining: usize,
            pd: &PDCode,
            partner: &[[Dart; 4]],
            joins: &mut std::collections::HashMap<Dart, Dart>,
        ) -> LaurentPoly {
            if remaining == 0 {
                let loops = walk_loops(pd.crossing_count(), partner, joins);
                return LaurentPoly::delta().pow((loops + pd.unknots()) as u32 - 1);
            }
            let c = remaining - 1;
            let mut total = LaurentPoly::zero();
            for (choose_a, coeff_exp) in [(true, 1), (false, -1)] {
                for (s1, s2) in smoothing_pairs(choose_a) {
                    joins.insert((c, s1), (c, s2));
                    joins.insert((c, s2), (c, s1));
                }
                let sub = rec(remaining - 1, pd, partner, joins);
                total = total.add(&sub.shift(coeff_exp));
            }
            total
        }

        let partner = pd.partner_table();
        let mut joins = std::collections::HashMap::new();
        rec(pd.crossing_count(), pd, &partner, &mut joins)
    }

    #[test]
    fn display_style() {
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::one().to_string(), "1");
        assert_eq!(LaurentPoly::delta().to_string(), "-A^2 - A^-2");
        assert_eq!(
            poly(&[(5, -1), (-3, -1), (-7, 1)]).to_string(),
            "-A^5 - A^-3 + A^-7"
        );
        assert_eq!(LaurentPoly::delta().pow(2).to_string(), "A^4 + 2 + A^-4");
    }

    #[test]
    fn unknot_conventions() {
        assert_eq!(kauffman_bracket(&pd("U")).unwrap(), LaurentPoly::one());
        assert_eq!(
            kauffman_bracket(&pd("U\nU")).unwrap(),
            LaurentPoly::delta()
        );
        // a single kink is a unit times the unknot
        let kink = kauffman_bracket(&pd("X 1 1 2 2")).unwrap();
        assert!(equiv_up_to_units(&kink, &LaurentPoly::one(), 0, false));
        assert_eq!(
            kauffman_bracket(&pd("")).unwrap_err(),
            BracketError::EmptyDiagram
        );
    }

    #[test]
    fn literature_values() {
        let trefoil = kauffman_bracket(&pd(crate::pd::standard::TREFOIL)).unwrap();
        let classic = poly(&[(-5, -1), (3, -1), (7, 1)]);
        assert!(trefoil == classic || trefoil == classic.mirror());

        let hopf = kauffman_bracket(&pd(crate::pd::standard::HOPF)).unwrap();
        assert_eq!(hopf, poly(&[(4, -1), (-4, -1)]));

        let fig8 = kauffman_bracket(&pd(crate::pd::standard::FIGURE_EIGHT)).unwrap();
        assert_eq!(fig8, poly(&[(8, 1), (4, -1), (0, 1), (-4, -1), (-8, 1)]));
    }

    #[test]
    fn trefoil_regression_constant() {
        let trefoil = kauffman_bracket(&pd(crate::pd::standard::TREFOIL)).unwrap();
        assert_eq!(trefoil.to_string(), "-A^5 - A^-3 + A^-7");
    }

    #[test]
    fn matches_recursive_resolution() {
        for text in [
            "X 1 1 2 2",
            crate::pd::standard::TREFOIL,
            crate::pd::standard::HOPF,
            crate::pd::standard::FIGURE_EIGHT,
            "X 1 1 2 2\nX 3 3 4 4",
            "X 1 1 2 2\nU",
        ] {
            let code = pd(text);
            assert_eq!(
                kauffman_bracket(&code).unwrap(),
                bracket_by_resolution(&code),
                "state sum and skein recursion disagree on {text:?}"
            );
        }
    }

    #[test]
    fn multiplicative_under_distant_union() {
        let trefoil = pd(crate::pd::standard::TREFOIL);
        let hopf_renamed = "X b4 b2 b3 b1\nX b1 b3 b2 b4";
        let union = pd(&format!("{}{}", crate::pd::standard::TREFOIL, hopf_renamed));
        let product = kauffman_bracket(&trefoil)
            .unwrap()
            .mul(&kauffman_bracket(&pd(hopf_renamed)).unwrap())
            .mul(&LaurentPoly::delta());
        assert_eq!(kauffman_bracket(&union).unwrap(), product);
    }

    #[test]
    fn equivalence_up_to_units() {
        let p = poly(&[(7, 1), (3, -1), (-5, -1)]);
        assert!(equiv_up_to_units(&p, &p, 0, false));
        assert!(equiv_up_to_units(&p, &p.shift(6).neg(), 0, false));
        assert!(equiv_up_to_units(&p.mul(&LaurentPoly::delta()), &p, 1, false));
        assert!(!equiv_up_to_units(&p.mul(&LaurentPoly::delta()), &p, 0, false));
        assert!(!equiv_up_to_units(&p, &p.shift(1), 0, false));
        assert!(!equiv_up_to_units(&p, &LaurentPoly::one(), 3, false));
        assert!(!equiv_up_to_units(&p, &p.mirror(), 0, false));
        assert!(equiv_up_to_units(&p, &p.mirror(), 0, true));
        assert!(equiv_up_to_units(&LaurentPoly::zero(), &LaurentPoly::zero(), 0, false));
        assert!(!equiv_up_to_units(&LaurentPoly::zero(), &p, 2, true));
    }

    #[test]
    fn crossing_cap() {
        let mut lines = String::new();
        for i in 0..15 {
            lines.push_str(&format!("X k{i}a k{i}a k{i}b k{i}b\n"));
        }
        assert_eq!(
            kauffman_bracket(&pd(&lines)).unwrap_err(),
            BracketError::TooManyCrossings(15)
        );
    }
}
