//! Knot class enumeration over pair codes.
//!
//! A knot diagram with `n` crossings is encoded as a *pair code*: walking the
//! strand from a base point numbers the crossing passages `1..=2n`, and each
//! crossing contributes one `(overcrossing, undercrossing)` label pair. On top
//! of that encoding this crate provides:
//!
//! - [`codes`]: the code type, its relabeling symmetries, lexicographic order,
//!   canonical form, and connected-sum structure;
//! - [`planarity`]: the loop-parity test deciding whether a code's shadow can
//!   be drawn in the plane, plus the free loops that admit poke moves;
//! - [`moves`]: Reidemeister rewriting on codes (untwist, poke, triangle
//!   slide), in both directions, with orbit closure;
//! - [`enumerate`]: the full sweep producing one canonical representative per
//!   knot class up to a crossing budget;
//! - [`groups`]: Wirtinger presentations and permutation-class realizability,
//!   a YES/NO invariant vector used to certify inequivalence;
//! - [`lattice`]: the alternative encoding as closed self-avoiding polygons on
//!   the cubic lattice, with its own moves and a projection back to pair codes;
//! - [`catalog`]: record types and the on-disk catalog formats.

pub mod catalog;
pub mod codes;
pub mod enumerate;
pub mod exec;
pub mod groups;
pub mod label;
pub mod lattice;
pub mod moves;
pub mod planarity;
