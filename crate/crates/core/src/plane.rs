//! Signed plane graphs with combinatorial rotation systems, the Tait
//! graph of a checkerboard-colored link diagram, and the reverse medial
//! construction that turns a signed plane graph back into a diagram.
//!
//! A graph is stored as vertices, ±-signed edges, and for every vertex
//! the counterclockwise cyclic order of its incident edge-ends. Faces
//! are traced from the rotation system and validated by Euler's formula
//! per connected component; each component with at least one edge
//! designates one face as its unbounded region via an anchor dart.
//!
//! Three local moves (and their inverses) transform graphs without
//! changing the link type of their medial diagrams: removing a pendant
//! vertex, contracting a two-edge path with opposite signs through a
//! bivalent vertex, and erasing an empty bigon of opposite signs.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::pd::{FaceColor, PDCode, PdError};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PlaneError {
    #[error("edge {0} has an endpoint out of range")]
    EdgeEndpoint(usize),
    #[error("rotation system mismatch at vertex {0}")]
    Rotation(usize),
    #[error("Euler check failed on a component: V={v}, E={e}, F={f}")]
    Euler { v: usize, e: usize, f: usize },
    #[error("component of vertex {vertex} must carry exactly one outer anchor, found {count}")]
    Anchor { vertex: usize, count: usize },
    #[error("outer anchor ({0}, {1}) is not a dart of the graph")]
    AnchorRange(usize, usize),
    #[error("corner ({0}, {1}) out of range")]
    CornerRange(usize, usize),
    #[error("corners must lie on a common face")]
    NotSameFace,
    #[error("chord endpoints must be distinct vertices")]
    LoopChord,
    #[error("move pattern mismatch: {0}")]
    Pattern(&'static str),
    #[error("cannot parse plane-graph line `{0}`")]
    Parse(String),
    #[error(transparent)]
    Pd(#[from] PdError),
}

/// Edge sign: the two crossing types a link diagram can induce.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = PlaneError;

    fn from_str(s: &str) -> Result<Sign, PlaneError> {
        match s {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            other => Err(PlaneError::Parse(other.to_string())),
        }
    }
}

/// An edge-end: (edge index, end 0 or 1). Loops contribute both ends at
/// the same vertex.
pub type EdgeEnd = (usize, usize);

/// A corner: (vertex, index), the wedge between rotation entries
/// `index` and `index + 1` (cyclically) at the vertex.
pub type Corner = (usize, usize);

#[derive(Clone, PartialEq, Eq, Debug)]
struct EdgeRec {
    ends: [usize; 2],
    sign: Sign,
}

/// A plane graph with ±-signed edges, given by a rotation system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedPlaneGraph {
    vertex_count: usize,
    edges: Vec<EdgeRec>,
    rot: Vec<Vec<EdgeEnd>>,
    outer: Vec<EdgeEnd>,
}

/// The traced face structure of a signed plane graph.
#[derive(Clone, Debug)]
pub struct PlaneFaces {
    /// Corner cycles; `faces[i]` walks face `i`'s boundary.
    pub faces: Vec<Vec<Corner>>,
    /// Face index of each corner: `face_at[v][i]` for corner `(v, i)`.
    pub face_at: Vec<Vec<usize>>,
    /// Vertex lists of the connected components, each sorted.
    pub components: Vec<Vec<usize>>,
    /// Component index of each vertex.
    pub component_of: Vec<usize>,
    /// Per component, the face designated as unbounded (`None` for a
    /// component with no edges).
    pub outer_of: Vec<Option<usize>>,
}

impl SignedPlaneGraph {
    /// Builds and validates a graph. `edges` lists `(u, v, sign)`;
    /// `rot[v]` lists the incident edge-ends counterclockwise; `outer`
    /// carries one anchor dart per component with edges, whose
    /// following corner lies on that component's unbounded face.
    pub fn new(
        vertex_count: usize,
        edges: Vec<(usize, usize, Sign)>,
        rot: Vec<Vec<EdgeEnd>>,
        outer: Vec<EdgeEnd>,
    ) -> Result<SignedPlaneGraph, PlaneError> {
        let edges: Vec<EdgeRec> = edges
            .into_iter()
            .map(|(u, v, sign)| EdgeRec { ends: [u, v], sign })
            .collect();
        for (e, rec) in edges.iter().enumerate() {
            if rec.ends[0] >= vertex_count || rec.ends[1] >= vertex_count {
                return Err(PlaneError::EdgeEndpoint(e));
            }
        }
        if rot.len() != vertex_count {
            return Err(PlaneError::Rotation(rot.len().min(vertex_count)));
        }
        // every dart exactly once, at the vertex its edge-end names
        let mut seen: Vec<[bool; 2]> = vec![[false; 2]; edges.len()];
        for (v, darts) in rot.iter().enumerate() {
            for &(e, k) in darts {
                if e >= edges.len() || k > 1 || edges[e].ends[k] != v || seen[e][k] {
                    return Err(PlaneError::Rotation(v));
                }
                seen[e][k] = true;
            }
        }
        for (e, ends) in seen.iter().enumerate() {
            if !ends[0] || !ends[1] {
                return Err(PlaneError::Rotation(edges[e].ends[0]));
            }
        }
        let g = SignedPlaneGraph {
            vertex_count,
            edges,
            rot,
            outer,
        };
        for &(e, k) in &g.outer {
            if e >= g.edges.len() || k > 1 {
                return Err(PlaneError::AnchorRange(e, k));
            }
        }
        let faces = g.trace_faces()?;
        // exactly one anchor per component with edges, none elsewhere
        let mut counts = vec![0usize; faces.components.len()];
        for &(e, k) in &g.outer {
            counts[faces.component_of[g.edges[e].ends[k]]] += 1;
        }
        for (comp, members) in faces.components.iter().enumerate() {
            let has_edges = members.iter().any(|&v| !g.rot[v].is_empty());
            let expect = usize::from(has_edges);
            if counts[comp] != expect {
                return Err(PlaneError::Anchor {
                    vertex: members[0],
                    count: counts[comp],
                });
            }
        }
        Ok(g)
    }

    /// The one-vertex, no-edge graph (the Tait graph of an unknot).
    pub fn single_vertex() -> SignedPlaneGraph {
        SignedPlaneGraph {
            vertex_count: 1,
            edges: Vec::new(),
            rot: vec![Vec::new()],
            outer: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        (self.edges[e].ends[0], self.edges[e].ends[1])
    }

    pub fn sign(&self, e: usize) -> Sign {
        self.edges[e].sign
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e].ends[0] == self.edges[e].ends[1]
    }

    pub fn rotation(&self, v: usize) -> &[EdgeEnd] {
        &self.rot[v]
    }

    pub fn outer_anchors(&self) -> &[EdgeEnd] {
        &self.outer
    }

    /// Position of every dart: dart -> (vertex, rotation index).
    pub(crate) fn dart_positions(&self) -> HashMap<EdgeEnd, (usize, usize)> {
        let mut pos = HashMap::new();
        for (v, darts) in self.rot.iter().enumerate() {
            for (i, &d) in darts.iter().enumerate() {
                pos.insert(d, (v, i));
            }
        }
        pos
    }

    /// The corner following a dart: dart `rot[v][i]` yields corner `(v, i)`.
    fn corner_after(&self, pos: &HashMap<EdgeEnd, (usize, usize)>, d: EdgeEnd) -> Corner {
        pos[&d]
    }

    fn trace_faces(&self) -> Result<PlaneFaces, PlaneError> {
        let pos = self.dart_positions();
        let mut face_at: Vec<Vec<usize>> = self.rot.iter().map(|r| vec![usize::MAX; r.len()]).collect();
        let mut faces: Vec<Vec<Corner>> = Vec::new();
        for v in 0..self.vertex_count {
            for i in 0..self.rot[v].len() {
                if face_at[v][i] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut orbit = Vec::new();
                let (mut cv, mut ci) = (v, i);
                loop {
                    face_at[cv][ci] = id;
                    orbit.push((cv, ci));
                    let deg = self.rot[cv].len();
                    let d = self.rot[cv][(ci + 1) % deg];
                    let (nv, ni) = pos[&(d.0, 1 - d.1)];
                    cv = nv;
                    ci = ni;
                    if (cv, ci) == (v, i) {
                        break;
                    }
                }
                faces.push(orbit);
            }
        }

        // connected components over vertices
        let mut component_of = vec![usize::MAX; self.vertex_count];
        let mut components: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.vertex_count {
            if component_of[v] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut stack = vec![v];
            let mut members = Vec::new();
            component_of[v] = id;
            while let Some(x) = stack.pop() {
                members.push(x);
                for &(e, k) in &self.rot[x] {
                    let y = self.edges[e].ends[1 - k];
                    if component_of[y] == usize::MAX {
                        component_of[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }

        // Euler check per component
        for members in &components {
            let v = members.len();
            let e = members
                .iter()
                .map(|&x| self.rot[x].len())
                .sum::<usize>()
                / 2;
            if e == 0 {
                continue;
            }
            let mut seen = vec![false; faces.len()];
            for &x in members {
                for i in 0..self.rot[x].len() {
                    seen[face_at[x][i]] = true;
                }
            }
            let f = seen.iter().filter(|&&b| b).count();
            if v + f != e + 2 {
                return Err(PlaneError::Euler { v, e, f });
            }
        }

        let mut outer_of = vec![None; components.len()];
        for &(e, k) in &self.outer {
            let (v, i) = pos[&(e, k)];
            outer_of[component_of[v]] = Some(face_at[v][i]);
        }

        Ok(PlaneFaces {
            faces,
            face_at,
            components,
            component_of,
            outer_of,
        })
    }

    /// Traces the faces. Panics only if the stored graph is corrupt;
    /// construction validates every public path.
    pub fn faces(&self) -> PlaneFaces {
        self.trace_faces()
            .expect("constructed graphs always trace consistently")
    }

    /// Attaches a fresh pendant vertex into corner `(vertex, corner)`
    /// (corner 0 for an isolated vertex). Returns the new graph, the
    /// new vertex id, and the new edge id.
    pub fn add_pendant(
        &self,
        vertex: usize,
        corner: usize,
        sign: Sign,
    ) -> Result<(SignedPlaneGraph, usize, usize), PlaneError> {
        if vertex >= self.vertex_count {
            return Err(PlaneError::CornerRange(vertex, corner));
        }
        let deg = self.rot[vertex].len();
        if (deg == 0 && corner != 0) || (deg > 0 && corner >= deg) {
            return Err(PlaneError::CornerRange(vertex, corner));
        }
        let w = self.vertex_count;
        let e = self.edges.len();
        let mut edges = self.edges.clone();
        edges.push(EdgeRec {
            ends: [vertex, w],
            sign,
        });
        let mut rot = self.rot.clone();
        let at = if deg == 0 { 0 } else { corner + 1 };
        rot[vertex].insert(at, (e, 0));
        rot.push(vec![(e, 1)]);
        let mut outer = self.outer.clone();
        if deg == 0 && self.component_is_edgeless(vertex) {
            outer.push((e, 0));
        }
        let g = SignedPlaneGraph {
            vertex_count: self.vertex_count + 1,
            edges,
            rot,
            outer,
        };
        g.trace_faces().expect("pendant attachment preserves validity");
        Ok((g, w, e))
    }

    /// Adds an edge between two corners on a common face. Returns the
    /// new graph and the new edge id.
    pub fn add_chord(
        &self,
        a: Corner,
        b: Corner,
        sign: Sign,
    ) -> Result<(SignedPlaneGraph, usize), PlaneError> {
        self.check_corner(a)?;
        self.check_corner(b)?;
        if a.0 == b.0 {
            return Err(PlaneError::LoopChord);
        }
        let faces = self.faces();
        if faces.face_at[a.0][a.1] != faces.face_at[b.0][b.1] {
            return Err(PlaneError::NotSameFace);
        }
        let e = self.edges.len();
        let mut edges = self.edges.clone();
        edges.push(EdgeRec {
            ends: [a.0, b.0],
            sign,
        });
        let mut rot = self.rot.clone();
        rot[a.0].insert(a.1 + 1, (e, 0));
        rot[b.0].insert(b.1 + 1, (e, 1));
        let g = SignedPlaneGraph {
            vertex_count: self.vertex_count,
            edges,
            rot,
            outer: self.outer.clone(),
        };
        g.trace_faces().expect("chords on a common face preserve validity");
        Ok((g, e))
    }

    fn check_corner(&self, c: Corner) -> Result<(), PlaneError> {
        if c.0 >= self.vertex_count || c.1 >= self.rot[c.0].len() {
            return Err(PlaneError::CornerRange(c.0, c.1));
        }
        Ok(())
    }

    fn component_is_edgeless(&self, v: usize) -> bool {
        let faces = self.faces();
        let comp = faces.component_of[v];
        faces.components[comp]
            .iter()
            .all(|&x| self.rot[x].is_empty())
    }

    /// Removes the given edges, keeping all vertices. Outer anchors are
    /// re-seated on the surviving portion of each unbounded face; a
    /// component split off by the removal takes the merged face at the
    /// removal site as its unbounded face.
    fn remove_edges_impl(&self, dead: &BTreeSet<usize>) -> SignedPlaneGraph {
        let old_faces = self.faces();
        let pos = self.dart_positions();
        // faces flanking the removed edges
        let mut site: BTreeSet<usize> = BTreeSet::new();
        for &e in dead {
            for end in 0..2 {
                let (v, i) = pos[&(e, end)];
                let deg = self.rot[v].len();
                site.insert(old_faces.face_at[v][i]);
                site.insert(old_faces.face_at[v][(i + deg - 1) % deg]);
            }
        }
        let mut edge_map: Vec<Option<usize>> = vec![None; self.edges.len()];
        let mut new_edges: Vec<(usize, usize, Sign)> = Vec::new();
        for (e, rec) in self.edges.iter().enumerate() {
            if !dead.contains(&e) {
                edge_map[e] = Some(new_edges.len());
                new_edges.push((rec.ends[0], rec.ends[1], rec.sign));
            }
        }
        let new_rot: Vec<Vec<EdgeEnd>> = self
            .rot
            .iter()
            .map(|darts| {
                darts
                    .iter()
                    .filter_map(|&(e, k)| edge_map[e].map(|ne| (ne, k)))
                    .collect()
            })
            .collect();
        let vertex_map: Vec<Option<usize>> = (0..self.vertex_count).map(Some).collect();
        let outer = self.repair_anchors(
            &old_faces,
            &pos,
            &site,
            &edge_map,
            &vertex_map,
            self.vertex_count,
            &new_edges,
            &new_rot,
        );
        SignedPlaneGraph::new(self.vertex_count, new_edges, new_rot, outer)
            .expect("edge removal preserves validity")
    }

    /// Re-seats outer anchors after a surgery described by `edge_map` /
    /// `vertex_map`. For each surviving component, prefers a surviving
    /// dart whose corner lay on the old unbounded face, then any whose
    /// corner lay on a face flanking the surgery site.
    #[allow(clippy::too_many_arguments)]
    fn repair_anchors(
        &self,
        old_faces: &PlaneFaces,
        old_pos: &HashMap<EdgeEnd, (usize, usize)>,
        site: &BTreeSet<usize>,
        edge_map: &[Option<usize>],
        vertex_map: &[Option<usize>],
        new_vertex_count: usize,
        new_edges: &[(usize, usize, Sign)],
        _new_rot: &[Vec<EdgeEnd>],
    ) -> Vec<EdgeEnd> {
        // components of the new graph
        let mut comp_of = vec![usize::MAX; new_vertex_count];
        let mut comp_count = 0;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); new_vertex_count];
        for &(u, v, _) in new_edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for v in 0..new_vertex_count {
            if comp_of[v] != usize::MAX {
                continue;
            }
            let id = comp_count;
            comp_count += 1;
            let mut stack = vec![v];
            comp_of[v] = id;
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if comp_of[y] == usize::MAX {
                        comp_of[y] = id;
                        stack.push(y);
                    }
                }
            }
        }
        let mut has_edges = vec![false; comp_count];
        for &(u, _, _) in new_edges {
            has_edges[comp_of[u]] = true;
        }
        // the old unbounded face relevant to each new component
        let mut old_outer_for: Vec<Option<usize>> = vec![None; comp_count];
        for old_v in 0..self.vertex_count {
            if let Some(new_v) = vertex_map[old_v] {
                let target = &mut old_outer_for[comp_of[new_v]];
                if target.is_none() {
                    *target = old_faces.outer_of[old_faces.component_of[old_v]];
                }
            }
        }
        let mut anchors = vec![None; comp_count];
        // pass 1: surviving darts from the old unbounded face
        // pass 2: surviving darts from faces flanking the surgery
        for pass in 0..2 {
            for (e, rec) in self.edges.iter().enumerate() {
                let Some(ne) = edge_map[e] else { continue };
                for end in 0..2 {
                    let new_base = vertex_map[rec.ends[end]]
                        .expect("surviving edges keep surviving endpoints");
                    let comp = comp_of[new_base];
                    if anchors[comp].is_some() || !has_edges[comp] {
                        continue;
                    }
                    let (ov, oi) = self.corner_after(old_pos, (e, end));
                    let old_face = old_faces.face_at[ov][oi];
                    let hit = match pass {
                        0 => Some(old_face) == old_outer_for[comp],
                        _ => site.contains(&old_face),
                    };
                    if hit {
                        anchors[comp] = Some((ne, end));
                    }
                }
            }
        }
        let mut outer = Vec::new();
        for comp in 0..comp_count {
            if has_edges[comp] {
                outer.push(
                    anchors[comp].expect("every surviving component retains an unbounded face"),
                );
            }
        }
        outer
    }

    /// Drops vertices that have no incident edges, compacting ids.
    fn drop_isolated(&self, dead: &BTreeSet<usize>) -> SignedPlaneGraph {
        for &v in dead {
            assert!(self.rot[v].is_empty(), "only isolated vertices can be dropped");
        }
        let mut vertex_map = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for v in 0..self.vertex_count {
            if !dead.contains(&v) {
                vertex_map[v] = next;
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|rec| (vertex_map[rec.ends[0]], vertex_map[rec.ends[1]], rec.sign))
            .collect();
        let rot = (0..self.vertex_count)
            .filter(|v| !dead.contains(v))
            .map(|v| self.rot[v].clone())
            .collect();
        SignedPlaneGraph::new(next, edges, rot, self.outer.clone())
            .expect("dropping isolated vertices preserves validity")
    }

    /// Removes every loop edge (a nugatory crossing in the medial
    /// diagram); returns the loop-free graph and the number removed.
    pub fn remove_loops(&self) -> (SignedPlaneGraph, usize) {
        let dead: BTreeSet<usize> = (0..self.edges.len()).filter(|&e| self.is_loop(e)).collect();
        if dead.is_empty() {
            return (self.clone(), 0);
        }
        let count = dead.len();
        (self.remove_edges_impl(&dead), count)
    }

    /// Vertices of degree one (sites for pendant removal).
    pub fn pendant_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Bivalent vertices whose two edges have opposite signs and
    /// distinct far endpoints (sites for contraction).
    pub fn contractible_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count)
            .filter(|&v| self.contract_site(v).is_ok())
            .collect()
    }

    fn contract_site(&self, v: usize) -> Result<(EdgeEnd, EdgeEnd, usize, usize), PlaneError> {
        if self.degree(v) != 2 {
            return Err(PlaneError::Pattern("vertex is not bivalent"));
        }
        let d1 = self.rot[v][0];
        let d2 = self.rot[v][1];
        if d1.0 == d2.0 {
            return Err(PlaneError::Pattern("the two edge-ends belong to one loop"));
        }
        if self.edges[d1.0].sign == self.edges[d2.0].sign {
            return Err(PlaneError::Pattern("the two edges must have opposite signs"));
        }
        let u = self.edges[d1.0].ends[1 - d1.1];
        let w = self.edges[d2.0].ends[1 - d2.1];
        if u == w {
            return Err(PlaneError::Pattern("the far endpoints must be distinct"));
        }
        Ok((d1, d2, u, w))
    }

    /// Pairs of parallel opposite-signed edges bounding an empty bigon
    /// (sites for bigon removal).
    pub fn removable_bigons(&self) -> Vec<(usize, usize)> {
        let faces = self.faces();
        let mut found = Vec::new();
        for orbit in &faces.faces {
            if orbit.len() != 2 {
                continue;
            }
            let crossed: Vec<EdgeEnd> = orbit
                .iter()
                .map(|&(v, i)| self.rot[v][(i + 1) % self.rot[v].len()])
                .collect();
            let (e1, e2) = (crossed[0].0, crossed[1].0);
            if e1 == e2 || self.is_loop(e1) || self.is_loop(e2) {
                continue;
            }
            if self.edges[e1].sign == self.edges[e2].sign {
                continue;
            }
            let mut ends1 = self.edges[e1].ends;
            let mut ends2 = self.edges[e2].ends;
            ends1.sort_unstable();
            ends2.sort_unstable();
            if ends1 == ends2 {
                found.push((e1.min(e2), e1.max(e2)));
            }
        }
        found.sort_unstable();
        found.dedup();
        found
    }

    /// Applies one of the three moves (or an inverse).
    pub fn apply_move(&self, mv: &Move) -> Result<SignedPlaneGraph, PlaneError> {
        match *mv {
            Move::RemovePendant { vertex } => {
                if vertex >= self.vertex_count || self.degree(vertex) != 1 {
                    return Err(PlaneError::Pattern("vertex is not pendant"));
                }
                let e = self.rot[vertex][0].0;
                let dead: BTreeSet<usize> = [e].into();
                let removed = self.remove_edges_impl(&dead);
                Ok(removed.drop_isolated(&[vertex].into()))
            }
            Move::AddPendant { vertex, corner, sign } => {
                let (g, _, _) = self.add_pendant(vertex, corner, sign)?;
                Ok(g)
            }
            Move::ContractBivalent { vertex } => self.contract_bivalent(vertex),
            Move::SplitVertex {
                vertex,
                cut,
                sign_first,
            } => self.split_vertex(vertex, cut, sign_first),
            Move::RemoveBigon { edges } => {
                let (e1, e2) = edges;
                let pair = (e1.min(e2), e1.max(e2));
                if !self.removable_bigons().contains(&pair) {
                    return Err(PlaneError::Pattern(
                        "edges do not bound an empty bigon of opposite signs",
                    ));
                }
                Ok(self.remove_edges_impl(&[e1, e2].into()))
            }
            Move::AddBigon { corners, sign_first } => self.add_bigon(corners.0, corners.1, sign_first),
        }
    }

    fn contract_bivalent(&self, v: usize) -> Result<SignedPlaneGraph, PlaneError> {
        if v >= self.vertex_count {
            return Err(PlaneError::Pattern("vertex is not bivalent"));
        }
        let (d1, d2, u, w) = self.contract_site(v)?;
        let old_faces = self.faces();
        let pos = self.dart_positions();
        let dead: BTreeSet<usize> = [d1.0, d2.0].into();
        let mut site: BTreeSet<usize> = BTreeSet::new();
        for &e in &dead {
            for end in 0..2 {
                let (x, i) = pos[&(e, end)];
                let deg = self.rot[x].len();
                site.insert(old_faces.face_at[x][i]);
                site.insert(old_faces.face_at[x][(i + deg - 1) % deg]);
            }
        }

        // splice w's rotation into u's in place of the contracted path
        let rev1 = (d1.0, 1 - d1.1);
        let rev2 = (d2.0, 1 - d2.1);
        let p = pos[&rev1].1;
        let q = pos[&rev2].1;
        let mut merged: Vec<EdgeEnd> = Vec::new();
        merged.extend_from_slice(&self.rot[u][..p]);
        let deg_w = self.rot[w].len();
        for step in 1..deg_w {
            merged.push(self.rot[w][(q + step) % deg_w]);
        }
        merged.extend_from_slice(&self.rot[u][p + 1..]);

        // compact vertices (v and w disappear) and edges
        let mut vertex_map: Vec<Option<usize>> = vec![None; self.vertex_count];
        let mut next = 0;
        for x in 0..self.vertex_count {
            if x != v && x != w {
                vertex_map[x] = Some(next);
                next += 1;
            }
        }
        vertex_map[w] = vertex_map[u];
        let mut edge_map: Vec<Option<usize>> = vec![None; self.edges.len()];
        let mut new_edges: Vec<(usize, usize, Sign)> = Vec::new();
        for (e, rec) in self.edges.iter().enumerate() {
            if !dead.contains(&e) {
                edge_map[e] = Some(new_edges.len());
                new_edges.push((
                    vertex_map[rec.ends[0]].expect("surviving edges avoid removed vertices"),
                    vertex_map[rec.ends[1]].expect("surviving edges avoid removed vertices"),
                    rec.sign,
                ));
            }
        }
        let translate = |darts: &[EdgeEnd]| -> Vec<EdgeEnd> {
            darts
                .iter()
                .filter_map(|&(e, k)| edge_map[e].map(|ne| (ne, k)))
                .collect()
        };
        let mut new_rot: Vec<Vec<EdgeEnd>> = Vec::with_capacity(next);
        for x in 0..self.vertex_count {
            if x == v || x == w {
                continue;
            }
            if x == u {
                new_rot.push(translate(&merged));
            } else {
                new_rot.push(translate(&self.rot[x]));
            }
        }
        let outer = self.repair_anchors(
            &old_faces,
            &pos,
            &site,
            &edge_map,
            &vertex_map,
            next,
            &new_edges,
            &new_rot,
        );
        Ok(SignedPlaneGraph::new(next, new_edges, new_rot, outer)
            .expect("contraction preserves validity"))
    }

    fn split_vertex(
        &self,
        x: usize,
        cut: (usize, usize),
        sign_first: Sign,
    ) -> Result<SignedPlaneGraph, PlaneError> {
        if x >= self.vertex_count {
            return Err(PlaneError::Pattern("vertex out of range"));
        }
        let deg = self.rot[x].len();
        let (i, j) = cut;
        if deg == 0 {
            if cut != (0, 0) {
                return Err(PlaneError::Pattern("an isolated vertex splits only at (0, 0)"));
            }
        } else if i >= deg || j >= deg {
            return Err(PlaneError::Pattern("cut corners out of range"));
        }
        let m = self.vertex_count;
        let w = self.vertex_count + 1;
        let e1 = self.edges.len();
        let e2 = e1 + 1;
        let mut edges = self.edges.clone();
        edges.push(EdgeRec {
            ends: [x, m],
            sign: sign_first,
        });
        edges.push(EdgeRec {
            ends: [m, w],
            sign: sign_first.opposite(),
        });
        // side A stays at x, side B moves to w
        let mut side_a: Vec<EdgeEnd> = Vec::new();
        let mut side_b: Vec<EdgeEnd> = Vec::new();
        if deg > 0 {
            let mut k = (i + 1) % deg;
            loop {
                side_a.push(self.rot[x][k]);
                if k == j {
                    break;
                }
                k = (k + 1) % deg;
            }
            if i != j {
                let mut k = (j + 1) % deg;
                loop {
                    side_b.push(self.rot[x][k]);
                    if k == i {
                        break;
                    }
                    k = (k + 1) % deg;
                }
            }
        }
        let mut rot = self.rot.clone();
        side_a.push((e1, 0));
        rot[x] = side_a;
        rot.push(vec![(e1, 1), (e2, 0)]);
        side_b.push((e2, 1));
        rot.push(side_b);
        let mut outer = self.outer.clone();
        if deg == 0 && self.component_is_edgeless(x) {
            outer.push((e1, 0));
        }
        // moved darts keep their edge-end identity, so anchors survive
        let g = SignedPlaneGraph::new(self.vertex_count + 2,
            edges.iter().map(|r| (r.ends[0], r.ends[1], r.sign)).collect(),
            rot, outer)
            .expect("vertex splits preserve validity");
        Ok(g)
    }

    fn add_bigon(
        &self,
        a: Corner,
        b: Corner,
        sign_first: Sign,
    ) -> Result<SignedPlaneGraph, PlaneError> {
        self.check_corner(a)?;
        self.check_corner(b)?;
        if a.0 == b.0 {
            return Err(PlaneError::Pattern("bigon endpoints must be distinct vertices"));
        }
        let faces = self.faces();
        if faces.face_at[a.0][a.1] != faces.face_at[b.0][b.1] {
            return Err(PlaneError::NotSameFace);
        }
        let e = self.edges.len();
        let e2 = e + 1;
        let mut edges = self.edges.clone();
        edges.push(EdgeRec {
            ends: [a.0, b.0],
            sign: sign_first,
        });
        edges.push(EdgeRec {
            ends: [a.0, b.0],
            sign: sign_first.opposite(),
        });
        let mut rot = self.rot.clone();
        rot[a.0].splice(a.1 + 1..a.1 + 1, [(e, 0), (e2, 0)]);
        rot[b.0].splice(b.1 + 1..b.1 + 1, [(e2, 1), (e, 1)]);
        let g = SignedPlaneGraph {
            vertex_count: self.vertex_count,
            edges,
            rot,
            outer: self.outer.clone(),
        };
        g.trace_faces().expect("bigon insertion preserves validity");
        Ok(g)
    }
}

/// The three moves on signed plane graphs and their inverses. Each
/// preserves the link type of the medial diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// Removes a vertex of degree one together with its edge.
    RemovePendant { vertex: usize },
    /// Attaches a fresh pendant vertex into the given corner.
    AddPendant {
        vertex: usize,
        corner: usize,
        sign: Sign,
    },
    /// Contracts the two-edge path through a bivalent vertex whose
    /// edges carry opposite signs and distinct far endpoints,
    /// identifying those endpoints.
    ContractBivalent { vertex: usize },
    /// Splits a vertex into two joined by a two-edge path of opposite
    /// signs through a fresh middle vertex; rotation entries strictly
    /// after corner `cut.0` through corner `cut.1` stay, the rest move
    /// to the new far vertex.
    SplitVertex {
        vertex: usize,
        cut: (usize, usize),
        sign_first: Sign,
    },
    /// Erases two parallel opposite-signed edges bounding an empty bigon.
    RemoveBigon { edges: (usize, usize) },
    /// Inserts such a bigon between two corners on a common face.
    AddBigon {
        corners: (Corner, Corner),
        sign_first: Sign,
    },
}

/// Builds the signed plane graph of a link diagram: one vertex per
/// gray region of the checkerboard coloring, one signed edge per
/// crossing, rotations read off the gray region boundaries. Unknot
/// components become isolated vertices.
pub fn tait_graph(pd: &PDCode) -> Result<SignedPlaneGraph, PlaneError> {
    let cb = pd.checkerboard()?;
    let tr = &cb.traced;
    let gray = |f: usize| cb.colors[f] == FaceColor::Gray;

    let mut vertex_of_face: HashMap<usize, usize> = HashMap::new();
    for f in 0..tr.faces.len() {
        if gray(f) {
            let id = vertex_of_face.len();
            vertex_of_face.insert(f, id);
        }
    }
    let gray_count = vertex_of_face.len();

    let mut edges: Vec<(usize, usize, Sign)> = Vec::with_capacity(pd.crossing_count());
    for c in 0..pd.crossing_count() {
        let f = |s: usize| tr.face_of[c][s];
        if gray(f(2)) && gray(f(0)) {
            // gray wedges between slots 1–2 and 3–0
            edges.push((vertex_of_face[&f(0)], vertex_of_face[&f(2)], Sign::Plus));
        } else if gray(f(1)) && gray(f(3)) {
            // gray wedges between slots 0–1 and 2–3
            edges.push((vertex_of_face[&f(1)], vertex_of_face[&f(3)], Sign::Minus));
        } else {
            unreachable!("checkerboard colors alternate around a crossing");
        }
    }

    let mut rot: Vec<Vec<EdgeEnd>> = vec![Vec::new(); gray_count + pd.unknots()];
    for f in 0..tr.faces.len() {
        let Some(&v) = vertex_of_face.get(&f) else { continue };
        for &(c, t) in &tr.faces[f] {
            let end = match (edges[c].2, t) {
                (Sign::Plus, 0) | (Sign::Minus, 1) => 0,
                (Sign::Plus, 2) | (Sign::Minus, 3) => 1,
                _ => unreachable!("gray boundaries visit only gray wedges"),
            };
            rot[v].push((c, end));
        }
    }

    let mut outer: Vec<EdgeEnd> = Vec::new();
    for (comp, _) in tr.components.iter().enumerate() {
        let outer_face = tr.outer_faces[comp];
        let mut anchor = None;
        'search: for f in 0..tr.faces.len() {
            if !gray(f) || tr.component_of[tr.faces[f][0].0] != comp {
                continue;
            }
            for (idx, &d) in tr.faces[f].iter().enumerate() {
                let p = pd.arc_partner(d);
                if tr.face_of[p.0][p.1] == outer_face {
                    anchor = Some(rot[vertex_of_face[&f]][idx]);
                    break 'search;
                }
            }
        }
        outer.push(anchor.expect("the unbounded region borders a gray region"));
    }

    Ok(SignedPlaneGraph::new(gray_count + pd.unknots(), edges, rot, outer)
        .expect("Tait graphs of valid diagrams are valid plane graphs"))
}

/// Reconstructs a link diagram whose Tait graph is `g`: one crossing
/// per edge, arcs along the corners of the rotation system, one unknot
/// component per isolated vertex, with the unbounded region taken from
/// each component's outer face.
pub fn medial_link(g: &SignedPlaneGraph) -> PDCode {
    let pos = g.dart_positions();
    let corner_name = |v: usize, i: usize| format!("c{v}_{i}");
    let mut text = String::new();
    for e in 0..g.edge_count() {
        let (u, _) = g.endpoints(e);
        let v = g.endpoints(e).1;
        let (bu, iu) = pos[&(e, 0)];
        let (bv, iv) = pos[&(e, 1)];
        debug_assert_eq!(bu, u);
        debug_assert_eq!(bv, v);
        let du = g.degree(u);
        let dv = g.degree(v);
        let cu = corner_name(u, iu);
        let cu_prev = corner_name(u, (iu + du - 1) % du);
        let cv = corner_name(v, iv);
        let cv_prev = corner_name(v, (iv + dv - 1) % dv);
        let tuple = match g.sign(e) {
            Sign::Plus => [cu_prev, cv, cv_prev, cu],
            Sign::Minus => [cu, cu_prev, cv, cv_prev],
        };
        text.push_str(&format!("X {} {} {} {}\n", tuple[0], tuple[1], tuple[2], tuple[3]));
    }
    for v in 0..g.vertex_count() {
        if g.degree(v) == 0 {
            text.push_str("U\n");
        }
    }
    let faces = g.faces();
    for comp in 0..faces.components.len() {
        let Some(outer) = faces.outer_of[comp] else { continue };
        text.push_str("OUTER");
        for &(v, i) in &faces.faces[outer] {
            text.push(' ');
            text.push_str(&corner_name(v, i));
        }
        text.push('\n');
    }
    text.parse()
        .expect("the medial construction yields a valid plane diagram")
}

/// True when the two graphs are isomorphic as signed plane graphs with
/// designated unbounded faces: same components up to a bijection
/// preserving rotations, signs, and outer faces.
pub fn isomorphic(a: &SignedPlaneGraph, b: &SignedPlaneGraph) -> bool {
    canonical_forms(a) == canonical_forms(b)
}

/// One canonical key per component, sorted.
fn canonical_forms(g: &SignedPlaneGraph) -> Vec<Vec<(usize, usize, u8)>> {
    let faces = g.faces();
    let pos = g.dart_positions();
    let mut keys: Vec<Vec<(usize, usize, u8)>> = Vec::new();
    for (comp, members) in faces.components.iter().enumerate() {
        let darts: Vec<EdgeEnd> = members
            .iter()
            .flat_map(|&v| g.rotation(v).iter().copied())
            .collect();
        if darts.is_empty() {
            // isolated vertex: empty encoding
            keys.push(Vec::new());
            continue;
        }
        let mut best: Option<Vec<(usize, usize, u8)>> = None;
        for &start in &darts {
            let enc = encode_from(g, &faces, &pos, comp, start);
            if best.as_ref().is_none_or(|b| enc < *b) {
                best = Some(enc);
            }
        }
        keys.push(best.unwrap());
    }
    keys.sort();
    keys
}

/// Canonical encoding of a component from a start dart: breadth-first
/// numbering of darts via rotation-successor and edge-reversal, with
/// sign and outer-face bits.
fn encode_from(
    g: &SignedPlaneGraph,
    faces: &PlaneFaces,
    pos: &HashMap<EdgeEnd, (usize, usize)>,
    comp: usize,
    start: EdgeEnd,
) -> Vec<(usize, usize, u8)> {
    let sigma = |d: EdgeEnd| -> EdgeEnd {
        let (v, i) = pos[&d];
        let deg = g.rotation(v).len();
        g.rotation(v)[(i + 1) % deg]
    };
    let outer = faces.outer_of[comp];
    let mut ids: HashMap<EdgeEnd, usize> = HashMap::new();
    let mut order: Vec<EdgeEnd> = vec![start];
    ids.insert(start, 0);
    let mut head = 0;
    let mut enc = Vec::new();
    while head < order.len() {
        let d = order[head];
        head += 1;
        let mut id_of = |dd: EdgeEnd, ids: &mut HashMap<EdgeEnd, usize>, order: &mut Vec<EdgeEnd>| {
            if let Some(&k) = ids.get(&dd) {
                k
            } else {
                let k = order.len();
                ids.insert(dd, k);
                order.push(dd);
                k
            }
        };
        let s = id_of(sigma(d), &mut ids, &mut order);
        let r = id_of((d.0, 1 - d.1), &mut ids, &mut order);
        let (v, i) = pos[&d];
        let mut bits = match g.sign(d.0) {
            Sign::Plus => 0u8,
            Sign::Minus => 1,
        };
        if Some(faces.face_at[v][i]) == outer {
            bits |= 2;
        }
        enc.push((s, r, bits));
    }
    enc
}

impl fmt::Display for SignedPlaneGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.vertex_count)?;
        for rec in &self.edges {
            writeln!(f, "edge {} {} {}", rec.ends[0], rec.ends[1], rec.sign)?;
        }
        for (v, darts) in self.rot.iter().enumerate() {
            if darts.is_empty() {
                continue;
            }
            write!(f, "rot {v}")?;
            for &(e, k) in darts {
                write!(f, " {e}:{k}")?;
            }
            writeln!(f)?;
        }
        for &(e, k) in &self.outer {
            writeln!(f, "outer {e}:{k}")?;
        }
        Ok(())
    }
}

impl FromStr for SignedPlaneGraph {
    type Err = PlaneError;

    fn from_str(s: &str) -> Result<SignedPlaneGraph, PlaneError> {
        let mut vertex_count: Option<usize> = None;
        let mut edges: Vec<(usize, usize, Sign)> = Vec::new();
        let mut rot: Vec<Vec<EdgeEnd>> = Vec::new();
        let mut outer: Vec<EdgeEnd> = Vec::new();
        let bad = |raw: &str| PlaneError::Parse(raw.to_string());
        let dart = |token: &str, raw: &str| -> Result<EdgeEnd, PlaneError> {
            let (e, k) = token.split_once(':').ok_or_else(|| bad(raw))?;
            Ok((
                e.parse().map_err(|_| bad(raw))?,
                k.parse().map_err(|_| bad(raw))?,
            ))
        };
        for raw in s.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let head = tokens.next().unwrap();
            let rest: Vec<&str> = tokens.collect();
            match head {
                "vertices" => {
                    if vertex_count.is_some() || rest.len() != 1 {
                        return Err(bad(raw));
                    }
                    let n = rest[0].parse().map_err(|_| bad(raw))?;
                    vertex_count = Some(n);
                    rot = vec![Vec::new(); n];
                }
                "edge" => {
                    if rest.len() != 3 || vertex_count.is_none() {
                        return Err(bad(raw));
                    }
                    edges.push((
                        rest[0].parse().map_err(|_| bad(raw))?,
                        rest[1].parse().map_err(|_| bad(raw))?,
                        rest[2].parse()?,
                    ));
                }
                "rot" => {
                    if rest.is_empty() || vertex_count.is_none() {
                        return Err(bad(raw));
                    }
                    let v: usize = rest[0].parse().map_err(|_| bad(raw))?;
                    if v >= rot.len() {
                        return Err(bad(raw));
                    }
                    for token in &rest[1..] {
                        rot[v].push(dart(token, raw)?);
                    }
                }
                "outer" => {
                    if rest.len() != 1 {
                        return Err(bad(raw));
                    }
                    outer.push(dart(rest[0], raw)?);
                }
                _ => return Err(bad(raw)),
            }
        }
        SignedPlaneGraph::new(vertex_count.ok_or_else(|| bad("missing vertices line"))?, edges, rot, outer)
    }
}
