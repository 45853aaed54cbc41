//! Group-chain invariants of self-similar actions on rooted trees, computed at
//! finite truncation depth.

pub mod automaton;
pub mod chains;
pub mod dynamics;
pub mod error;
pub mod limits;
pub mod quotients;
pub mod tree;

pub use automaton::{builtin, AutomatonSystem, GroupWord};
pub use error::{Error, Result};
pub use limits::Limits;
pub use tree::{BoundaryPoint, Cylinder, Degree, Vertex};
