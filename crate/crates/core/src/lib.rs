pub mod compat;
pub mod dual_tree;
pub mod error;
pub mod families;
pub mod formulas;
pub mod graph;
pub mod iso;
pub mod matching;
pub mod verify;

pub use dual_tree::{from_dual_tree, to_dual_tree, EmbeddedTree};
pub use error::{Error, Result};
pub use matching::{enumerate_matchings, is_crossing, Edge, EdgeKind, Label, Matching};
