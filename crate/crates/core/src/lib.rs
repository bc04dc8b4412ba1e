//! Combinatorics of string and string-almost-gentle (SAG) bound quivers.
//!
//! The crate works purely at the level of bound quivers and walks: it checks
//! the string / almost gentle axioms, enumerates strings and detects bands,
//! counts hom dimensions between string modules via factor and image
//! substrings, finds forbidden cycles and the perfect index, and builds the
//! bound quiver of the R-endomorphism algebra `End(A ⊕ ⊕_{α∈R} αA)`.

pub mod automaton;
pub mod classify;
pub mod dot;
pub mod dsl;
pub mod error;
pub mod forbidden;
pub mod gen;
pub mod quiver;
pub mod strmod;
pub mod transform;
pub mod walk;
pub mod walks;

pub use classify::{classify, Classification, Violation};
pub use dsl::{parse_document, parse_json, parse_quiver, to_dsl, to_json};
pub use error::{Error, Result};
pub use forbidden::{ForbiddenCycle, PerfectIndex};
pub use quiver::{Arrow, ArrowSpec, BoundQuiver, Path, QuiverSpec, Vertex};
pub use transform::{RIndex, TransformResult, TransformedAlgebraReport};
pub use walk::{CyclicWalk, Direction, Letter, Walk};
pub use walks::RepresentationType;
