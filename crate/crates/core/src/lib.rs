//! Exact tensor algebra for signal-propagating DAG networks.
//!
//! A network assigns to every node an activation tensor whose order is the
//! node's in-degree plus one. Its total tensor can be computed directly, as a
//! product of activation entries, or through the Bhattacharya-Mesner product
//! of per-node tensors obtained by *blow* and *forget* expansions. Both routes
//! run over exact polynomial scalars so they can be compared cell by cell.
//!
//! Slots, states and multi-indices are 1-based throughout the public API.

pub mod exec;
pub mod io;
pub mod network;
pub mod scalar;
pub mod tensor;

pub use exec::{EvalOptions, Execution};
pub use network::{ActivationSpec, Network, NetworkSpec, NodeSpec};
pub use scalar::{Assignment, PolyScalar, Rational};
pub use tensor::{Permutation, Shape, Tensor};
