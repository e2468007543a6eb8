//! Distance magic labelings of graphs and graph products.
//!
//! A labeling of an `n`-vertex graph is a bijection onto `{1, .., n}`. It is
//! *distance magic* when every open neighborhood has the same label sum
//! `k`, and *balanced* when, in addition, `n` is even and the vertices
//! labeled `i` and `n + 1 - i` always lie in the same neighborhoods.
//!
//! - [`graph`]: simple undirected graphs, generators, edge-list I/O.
//! - [`product`]: Cartesian, lexicographic and direct products.
//! - [`magic`]: labelings, verification, round-robin schedules.
//! - [`construct`]: explicit labelings for several families.
//! - [`rearrange`]: twin-preserving swaps that recover a factor labeling
//!   from a balanced labeling of a direct product.
//! - [`search`]: exhaustive search for small graphs.

pub mod construct;
pub mod error;
pub mod graph;
pub mod magic;
pub mod product;
pub mod rearrange;
pub mod search;

pub use error::{Error, Result};
pub use graph::{generate, Graph, GraphKind};
pub use magic::{verify_balanced, verify_distance_magic, Labeling, VerifyReport};
pub use product::{product, Axis, ProductGraph, ProductKind};
pub use search::{find_distance_magic, SearchBudget, SearchOutcome, SearchResult};
