//! Exact computation in R. Thompson's group F and its Jones subgroups,
//! together with the two-way correspondence between group elements and links.
//!
//! The crate is organised in layers:
//!
//! * [`dyadic`] — exact arithmetic on dyadic rationals in `[0, 1]`.
//! * [`tree`], [`element`], [`word`] — binary trees, reduced tree pairs
//!   (the canonical representation of elements of F), group operations,
//!   and the unique normal form over the generators `x0, x1, x2, ...`.
//! * [`nary`] — n-ary tree pairs (elements of F_n) and the standard
//!   embedding of F_n into F by replacing n-ary carets with binary combs.
//! * [`plmap`] — elements of F as piecewise-linear homeomorphisms of
//!   `[0, 1]`: breakpoints and exact evaluation.
//! * [`jonesgraph`] — the Thompson graph of an element, path lengths,
//!   and membership in the Jones subgroups F⃗ₙ (graph method and
//!   digit-sum method).
//! * [`pd`], [`plane`] — planar diagram codes for links, face tracing,
//!   checkerboard colouring, Tait graphs, medial links, and the three
//!   Tait-graph moves with their inverses.
//! * [`bracket`] — the Kauffman bracket as an independent oracle for
//!   link equivalence up to units.
//! * [`bookembed`] — the constructive 2-page book embedding of a signed
//!   plane graph: subdivision, triangulation, separating-triangle
//!   elimination, external Hamiltonian cycles, and page assignment.
//! * [`standardize`] — turning a signed 2-page layout into a Thompson
//!   graph by defect fixes of bounded cost, extracting the group
//!   element, and the full link → element pipeline with its
//!   `12n + u + 3` vertex bound.
//! * [`render`] — SVG schematics of tree pairs, Thompson graphs, book
//!   layouts, and signed link diagrams.
//! * [`sample`] — deterministic random generators used by tests and the
//!   audit tooling.

#![forbid(unsafe_code)]

pub mod bookembed;
pub mod bracket;
pub mod dyadic;
pub mod element;
pub mod jonesgraph;
pub mod nary;
pub mod pd;
pub mod plane;
pub mod plmap;
pub mod render;
pub mod sample;
pub mod standardize;
pub mod tree;
pub mod word;

pub use dyadic::Dyadic;
pub use element::Element;
pub use tree::BinTree;
pub use word::{GroupWord, NormalForm};
