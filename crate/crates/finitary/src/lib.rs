//! Finitary, bounded and uniform Büchi and parity games.

pub mod arena;
pub mod attractor;
pub mod condition;
pub mod error;
pub mod examples;
pub mod graph;
pub mod memory;
pub mod oracle;
pub mod play;
pub mod pushdown;
pub mod random;
pub mod solvers;
pub mod strategy;
pub mod verify;
pub mod vertex_set;

pub use arena::{Arena, Player};
pub use condition::Condition;
pub use error::{Error, Result};
pub use memory::MemoryStructure;
pub use strategy::Strategy;
pub use vertex_set::VertexSet;

/// The user guide. The same chapters build with mdbook from `book/`.
pub mod guide {
    #[doc = include_str!("../book/src/intro.md")]
    pub mod intro {}
    #[doc = include_str!("../book/src/arenas.md")]
    pub mod arenas {}
    #[doc = include_str!("../book/src/strategies.md")]
    pub mod strategies {}
    #[doc = include_str!("../book/src/pushdown.md")]
    pub mod pushdown {}
    #[doc = include_str!("../book/src/examples.md")]
    pub mod examples {}
    #[doc = include_str!("../book/src/limits.md")]
    pub mod limits {}
}
