pub mod conditions;
pub mod diagram;
pub mod graph;
pub mod identity;
pub mod lifting;
pub mod presentation;
pub mod samples;
pub mod search;
pub mod verdict;
mod walk;
pub mod word;

pub use graph::{Cycle, EdgeId, GraphPath, LabelledGraph, VertexId, DEFAULT_CYCLE_CAP};
pub use verdict::Verdict;
pub use word::{CyclicWord, Label, Word};
