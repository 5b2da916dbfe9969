//! Flat-file formats: JSON network documents, a line-oriented tensor text
//! format, and `name=value` parameter assignments.

mod assign;
mod document;
mod tensor_text;

use thiserror::Error;

pub use assign::parse_assignment;
pub use document::{load_network, parse_network, serialize_network};
pub use tensor_text::{parse_tensor, serialize_tensor, serialize_values};

use crate::network::NetworkError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    /// Malformed document; `path` locates the offending value (`$` is the root).
    #[error("SchemaError at {path}: {reason}")]
    Schema { path: String, reason: String },
    #[error("UnknownNodeId at {path}: `{id}`")]
    UnknownNodeId { path: String, id: String },
    #[error("DuplicateNodeId at {path}: `{id}`")]
    DuplicateNodeId { path: String, id: String },
    #[error("EntryCountMismatch: node `{node}` needs {expected} entries, got {got}")]
    EntryCountMismatch { node: String, expected: usize, got: usize },
    /// Tensor text that does not follow the grammar; `line` is 1-based.
    #[error("SyntaxError at line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("ShapeMismatch at line {line}: {reason}")]
    ShapeMismatch { line: usize, reason: String },
    /// Bad parameter list; `position` is a 0-based byte offset.
    #[error("AssignmentError at offset {position}: {reason}")]
    Assignment { position: usize, reason: String },
    #[error(transparent)]
    Network(#[from] NetworkError),
}
