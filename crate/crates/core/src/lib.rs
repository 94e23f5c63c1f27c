//! Graph products of groups: words and their normal forms, the kernel of the
//! projection to the direct product, the kernel maps induced by arbitrary
//! per-vertex set maps, and brute-force oracles to check all of it.

pub mod cli;
pub mod complex;
pub mod error;
pub mod graphs;
pub mod groups;
pub mod induce;
pub mod kernels;
pub mod oracle;
pub mod report;
pub mod words;

pub use error::{Error, ErrorClass, Result};
pub use graphs::{GraphExtension, InjectiveSimplicialMap, SimplicialGraph};
pub use groups::{Group, GroupElem, SetMap};
pub use induce::SetMapFamily;
pub use words::{Context, Syllable, Word};
