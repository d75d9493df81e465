//! Planar-diagram (PD) codes for link diagrams: parsing, face tracing,
//! and checkerboard coloring.
//!
//! A PD code lists one `X a b c d` line per crossing, naming the four
//! incident arc-ends in counterclockwise order; slots 0 and 2 are the
//! under-strand, slots 1 and 3 the over-strand. `U` lines add 0-crossing
//! unknot components, and optional `OUTER a b ...` lines pin the unbounded
//! face of a connected component by listing its boundary arcs in cyclic
//! order. Every arc label must occur exactly twice among the crossings.
//!
//! Faces are traced from the rotation implied by tuple order; the trace is
//! validated by Euler's formula per connected component, which rejects
//! codes that do not describe a plane diagram.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PdError {
    #[error("cannot parse PD line `{0}`")]
    Parse(String),
    #[error("arc `{label}` occurs {count} times; every arc must occur exactly twice")]
    ArcCount { label: String, count: usize },
    #[error("Euler check failed on a component: V={v}, E={e}, F={f}")]
    Euler { v: usize, e: usize, f: usize },
    #[error("OUTER line mentions unknown arc `{0}`")]
    UnknownOuterArc(String),
    #[error("OUTER line matches no face of the diagram")]
    OuterUnmatched,
    #[error("two OUTER lines select faces of the same component")]
    OuterClash,
    #[error("checkerboard coloring conflict; the embedding is malformed")]
    ColoringConflict,
}

/// An arc-end: (crossing index, slot 0..=3).
pub type Dart = (usize, usize);

/// A link diagram as a PD code.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PDCode {
    arc_names: Vec<String>,
    crossings: Vec<[usize; 4]>,
    unknots: usize,
    outer_lines: Vec<Vec<usize>>,
}

impl PDCode {
    /// Builds a code from crossings given as arc-label tuples, plus
    /// `unknots` extra 0-crossing components.
    pub fn build(
        crossings: Vec<[String; 4]>,
        unknots: usize,
        outer_lines: Vec<Vec<String>>,
    ) -> Result<PDCode, PdError> {
        let mut arc_names: Vec<String> = Vec::new();
        let mut ids: HashMap<String, usize> = HashMap::new();
        let mut intern = |label: &str, arc_names: &mut Vec<String>| {
            *ids.entry(label.to_string()).or_insert_with(|| {
                arc_names.push(label.to_string());
                arc_names.len() - 1
            })
        };
        let crossings: Vec<[usize; 4]> = crossings
            .iter()
            .map(|t| {
                [
                    intern(&t[0], &mut arc_names),
                    intern(&t[1], &mut arc_names),
                    intern(&t[2], &mut arc_names),
                    intern(&t[3], &mut arc_names),
                ]
            })
            .collect();
        let mut counts = vec![0usize; arc_names.len()];
        for t in &crossings {
            for &a in t {
                counts[a] += 1;
            }
        }
        for (a, &count) in counts.iter().enumerate() {
            if count != 2 {
                return Err(PdError::ArcCount {
                    label: arc_names[a].clone(),
                    count,
                });
            }
        }
        let outer_lines = outer_lines
            .iter()
            .map(|line| {
                line.iter()
                    .map(|label| {
                        ids.get(label.as_str())
                            .copied()
                            .ok_or_else(|| PdError::UnknownOuterArc(label.clone()))
                    })
                    .collect::<Result<Vec<usize>, PdError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PDCode {
            arc_names,
            crossings,
            unknots,
            outer_lines,
        })
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn unknots(&self) -> usize {
        self.unknots
    }

    pub fn arc_count(&self) -> usize {
        self.arc_names.len()
    }

    pub fn arc_name(&self, arc: usize) -> &str {
        &self.arc_names[arc]
    }

    pub fn arc_at(&self, d: Dart) -> usize {
        self.crossings[d.0][d.1]
    }

    /// The other end of the arc at `d`.
    pub fn arc_partner(&self, d: Dart) -> Dart {
        let arc = self.arc_at(d);
        for (c, t) in self.crossings.iter().enumerate() {
            for (s, &a) in t.iter().enumerate() {
                if a == arc && (c, s) != d {
                    return (c, s);
                }
            }
        }
        unreachable!("validated codes have two ends per arc")
    }

    /// For every dart, the other end of its arc.
    pub fn partner_table(&self) -> Vec<[Dart; 4]> {
        let n = self.crossings.len();
        let mut partner: Vec<[Dart; 4]> = vec![[(0, 0); 4]; n];
        let mut first_end: HashMap<usize, Dart> = HashMap::new();
        for (c, t) in self.crossings.iter().enumerate() {
            for (s, &a) in t.iter().enumerate() {
                if let Some(&d) = first_end.get(&a) {
                    partner[c][s] = d;
                    partner[d.0][d.1] = (c, s);
                    first_end.remove(&a);
                } else {
                    first_end.insert(a, (c, s));
                }
            }
        }
        partner
    }

    /// Traces the faces of the diagram and locates each component's
    /// unbounded face.
    pub fn trace(&self) -> Result<PdFaces, PdError> {
        let n = self.crossings.len();
        let partner = self.partner_table();

        // orbit of d -> next-counterclockwise slot of d's partner
        let mut face_of: Vec<[usize; 4]> = vec![[usize::MAX; 4]; n];
        let mut faces: Vec<Vec<Dart>> = Vec::new();
        for c in 0..n {
            for s in 0..4 {
                if face_of[c][s] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut orbit = Vec::new();
                let mut d = (c, s);
                loop {
                    face_of[d.0][d.1] = id;
                    orbit.push(d);
                    let p = partner[d.0][d.1];
                    d = (p.0, (p.1 + 1) % 4);
                    if d == (c, s) {
                        break;
                    }
                }
                faces.push(orbit);
            }
        }

        // connected components of the crossing map
        let mut component_of = vec![usize::MAX; n];
        let mut components: Vec<Vec<usize>> = Vec::new();
        for c in 0..n {
            if component_of[c] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut stack = vec![c];
            let mut members = Vec::new();
            component_of[c] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for s in 0..4 {
                    let (w, _) = partner[v][s];
                    if component_of[w] == usize::MAX {
                        component_of[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }

        // Euler check per component
        for members in &components {
            let v = members.len();
            let e = 2 * v; // 4 ends per crossing, 2 per arc
            let f = {
                let mut seen = vec![false; faces.len()];
                for &c in members {
                    for s in 0..4 {
                        seen[face_of[c][s]] = true;
                    }
                }
                seen.iter().filter(|&&b| b).count()
            };
            if v + f != e + 2 {
                return Err(PdError::Euler { v, e, f });
            }
        }

        // outer face per component: explicit OUTER lines first, longest
        // boundary as the default
        let mut outer_faces: Vec<Option<usize>> = vec![None; components.len()];
        for line in &self.outer_lines {
            let face = (0..faces.len())
                .find(|&fid| {
                    let cycle: Vec<usize> =
                        faces[fid].iter().map(|&d| self.arc_at(d)).collect();
                    cyclic_equal(&cycle, line)
                })
                .ok_or(PdError::OuterUnmatched)?;
            let comp = component_of[faces[face][0].0];
            if outer_faces[comp].is_some() {
                return Err(PdError::OuterClash);
            }
            outer_faces[comp] = Some(face);
        }
        let outer_faces: Vec<usize> = components
            .iter()
            .enumerate()
            .map(|(id, members)| {
                outer_faces[id].unwrap_or_else(|| {
                    let mut best = usize::MAX;
                    let mut best_len = 0;
                    for &c in members {
                        for s in 0..4 {
                            let fid = face_of[c][s];
                            let len = faces[fid].len();
                            if len > best_len || (len == best_len && fid < best) {
                                best = fid;
                                best_len = len;
                            }
                        }
                    }
                    best
                })
            })
            .collect();

        Ok(PdFaces {
            faces,
            face_of,
            components,
            component_of,
            outer_faces,
        })
    }

    /// Checkerboard-colors the regions, unbounded region white.
    pub fn checkerboard(&self) -> Result<Checkerboard, PdError> {
        let traced = self.trace()?;
        let mut colors: Vec<Option<FaceColor>> = vec![None; traced.faces.len()];
        for &start in &traced.outer_faces {
            if colors[start].is_some() {
                continue;
            }
            colors[start] = Some(FaceColor::White);
            let mut queue = vec![start];
            while let Some(fid) = queue.pop() {
                let here = colors[fid].unwrap();
                for &d in &traced.faces[fid] {
                    // the face on the other side of d's arc
                    let p = self.arc_partner(d);
                    let other = traced.face_of[p.0][p.1];
                    let expected = here.flip();
                    match colors[other] {
                        None => {
                            colors[other] = Some(expected);
                            queue.push(other);
                        }
                        Some(c) if c == expected => {}
                        Some(_) => return Err(PdError::ColoringConflict),
                    }
                }
            }
        }
        let colors = colors
            .into_iter()
            .map(|c| c.ok_or(PdError::ColoringConflict))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Checkerboard { traced, colors })
    }
}

/// Cyclic sequences equal up to rotation and reversal.
fn cyclic_equal(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let forward: Vec<usize> = b.to_vec();
    let mut backward = forward.clone();
    backward.reverse();
    for rot in 0..a.len() {
        let rotated = |i: usize| a[(i + rot) % a.len()];
        if (0..a.len()).all(|i| rotated(i) == forward[i])
            || (0..a.len()).all(|i| rotated(i) == backward[i])
        {
            return true;
        }
    }
    false
}

/// The traced face structure of a PD code.
#[derive(Clone, Debug)]
pub struct PdFaces {
    /// Dart orbits; `faces[i]` walks face `i`'s boundary.
    pub faces: Vec<Vec<Dart>>,
    /// Face index of each dart, per crossing and slot.
    pub face_of: Vec<[usize; 4]>,
    /// Crossing indices of each connected component.
    pub components: Vec<Vec<usize>>,
    /// Component index of each crossing.
    pub component_of: Vec<usize>,
    /// Per component, the face designated as its unbounded region.
    pub outer_faces: Vec<usize>,
}

impl PdFaces {
    /// Total region count including one inner region per 0-crossing
    /// unknot component and the unbounded region when there are no
    /// crossings at all.
    pub fn region_count(&self, unknots: usize) -> usize {
        // components each traced their own copy of the unbounded region;
        // geometrically those all merge into one
        let merged = self.faces.len() + 1 - self.components.len().max(1);
        let base = if self.faces.is_empty() { 1 } else { merged };
        base + unknots
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FaceColor {
    White,
    Gray,
}

impl FaceColor {
    pub fn flip(self) -> FaceColor {
        match self {
            FaceColor::White => FaceColor::Gray,
            FaceColor::Gray => FaceColor::White,
        }
    }
}

/// A face trace together with a checkerboard coloring (outer face white).
#[derive(Clone, Debug)]
pub struct Checkerboard {
    pub traced: PdFaces,
    pub colors: Vec<FaceColor>,
}

/// PD codes of small standard diagrams, used by tests and as CLI examples.
pub mod standard {
    /// The standard 3-crossing trefoil diagram.
    pub const TREFOIL: &str = "X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n";
    /// The standard 2-crossing Hopf link diagram.
    pub const HOPF: &str = "X 4 2 3 1\nX 1 3 2 4\n";
    /// The standard 4-crossing figure-eight knot diagram.
    pub const FIGURE_EIGHT: &str = "X 4 2 5 1\nX 8 6 1 5\nX 6 3 7 4\nX 2 7 3 8\n";
}

impl FromStr for PDCode {
    type Err = PdError;

    fn from_str(s: &str) -> Result<PDCode, PdError> {
        let mut crossings = Vec::new();
        let mut unknots = 0usize;
        let mut outer_lines = Vec::new();
        for raw in s.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let head = tokens.next().unwrap();
            let rest: Vec<&str> = tokens.collect();
            match head {
                "X" => {
                    if rest.len() != 4 {
                        return Err(PdError::Parse(raw.to_string()));
                    }
                    crossings.push([
                        rest[0].to_string(),
                        rest[1].to_string(),
                        rest[2].to_string(),
                        rest[3].to_string(),
                    ]);
                }
                "U" => {
                    if !rest.is_empty() {
                        return Err(PdError::Parse(raw.to_string()));
                    }
                    unknots += 1;
                }
                "OUTER" => {
                    if rest.is_empty() {
                        return Err(PdError::Parse(raw.to_string()));
                    }
                    outer_lines.push(rest.iter().map(|t| t.to_string()).collect());
                }
                _ => return Err(PdError::Parse(raw.to_string())),
            }
        }
        PDCode::build(crossings, unknots, outer_lines)
    }
}

impl fmt::Display for PDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.crossings {
            writeln!(
                f,
                "X {} {} {} {}",
                self.arc_names[t[0]], self.arc_names[t[1]], self.arc_names[t[2]], self.arc_names[t[3]]
            )?;
        }
        for _ in 0..self.unknots {
            writeln!(f, "U")?;
        }
        for line in &self.outer_lines {
            write!(f, "OUTER")?;
            for &a in line {
                write!(f, " {}", self.arc_names[a])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    use super::standard::{FIGURE_EIGHT, HOPF, TREFOIL};

    #[test]
    fn parse_and_display_round_trip() {
        let pd: PDCode = TREFOIL.parse().unwrap();
        assert_eq!(pd.crossing_count(), 3);
        assert_eq!(pd.to_string().parse::<PDCode>().unwrap(), pd);

        let with_extras = "# a comment\nU\nX 1 1 2 2\nOUTER 2\n";
        let pd: PDCode = with_extras.parse().unwrap();
        assert_eq!(pd.unknots(), 1);
        assert_eq!(pd.crossing_count(), 1);
    }

    #[test]
    fn bad_codes_are_rejected() {
        assert!(matches!(
            "X 1 2 3".parse::<PDCode>(),
            Err(PdError::Parse(_))
        ));
        assert!(matches!(
            "X 1 1 2 3".parse::<PDCode>(),
            Err(PdError::ArcCount { .. })
        ));
        assert!(matches!(
            "X 1 1 2 2\nOUTER 9".parse::<PDCode>(),
            Err(PdError::UnknownOuterArc(_))
        ));
    }

    #[test]
    fn face_counts() {
        let trefoil: PDCode = TREFOIL.parse().unwrap();
        let traced = trefoil.trace().unwrap();
        assert_eq!(traced.faces.len(), 5);
        assert_eq!(traced.components.len(), 1);
        assert_eq!(traced.region_count(0), 5);

        let kink: PDCode = "X 1 1 2 2".parse().unwrap();
        assert_eq!(kink.trace().unwrap().faces.len(), 3);

        let hopf: PDCode = HOPF.parse().unwrap();
        assert_eq!(hopf.trace().unwrap().faces.len(), 4);

        let fig8: PDCode = FIGURE_EIGHT.parse().unwrap();
        assert_eq!(fig8.trace().unwrap().faces.len(), 6);

        let unknot: PDCode = "U".parse().unwrap();
        assert_eq!(unknot.trace().unwrap().region_count(1), 2);
    }

    #[test]
    fn two_far_apart_components() {
        // two kinks, arcs disjoint
        let pd: PDCode = "X 1 1 2 2\nX 3 3 4 4".parse().unwrap();
        let traced = pd.trace().unwrap();
        assert_eq!(traced.components.len(), 2);
        assert_eq!(traced.faces.len(), 6);
        // the two unbounded copies merge into one shared region
        assert_eq!(traced.region_count(0), 5);
    }

    #[test]
    fn checkerboard_unknot_and_trefoil() {
        let kink: PDCode = "X 1 1 2 2".parse().unwrap();
        let colored = kink.checkerboard().unwrap();
        let outer = colored.traced.outer_faces[0];
        assert_eq!(colored.colors[outer], FaceColor::White);

        let trefoil: PDCode = TREFOIL.parse().unwrap();
        let colored = trefoil.checkerboard().unwrap();
        let outer = colored.traced.outer_faces[0];
        assert_eq!(colored.colors[outer], FaceColor::White);
        let grays = colored
            .colors
            .iter()
            .filter(|&&c| c == FaceColor::Gray)
            .count();
        assert!(grays == 2 || grays == 3, "trefoil has 2 or 3 gray faces");
        // adjacent faces always differ
        for c in 0..trefoil.crossing_count() {
            for s in 0..4 {
                let here = colored.traced.face_of[c][s];
                let p = trefoil.arc_partner((c, s));
                let there = colored.traced.face_of[p.0][p.1];
                assert_ne!(colored.colors[here], colored.colors[there]);
            }
        }
    }

    #[test]
    fn outer_marker_is_respected() {
        // kink: faces are the loop of arc 1, the loop of arc 2, and the
        // face meeting both arcs
        let free: PDCode = "X 1 1 2 2".parse().unwrap();
        let default_outer = free.trace().unwrap().outer_faces[0];
        let pinned: PDCode = "X 1 1 2 2\nOUTER 1".parse().unwrap();
        let pinned_outer = pinned.trace().unwrap().outer_faces[0];
        assert_ne!(default_outer, pinned_outer);
        let boundary: Vec<usize> = pinned.trace().unwrap().faces[pinned_outer]
            .iter()
            .map(|&d| pinned.arc_at(d))
            .collect();
        assert_eq!(boundary, vec![0]); // arc "1" interned as id 0
    }
}
