//! DAG networks with per-node activation tensors.
//!
//! A [`NetworkSpec`] is the raw description: arity, nodes in their total
//! ordering, parent lists and activations. [`validate`] lists everything
//! wrong with it; [`Network::new`] accepts only valid specs and resolves
//! parents to positions and activations to tensors.

mod activation;
mod pipeline;
mod random;
mod topo;
mod total;

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::tensor::{sigma_transpose, Permutation, Tensor, TensorError};

pub use activation::{ActivationMismatch, ActivationSpec, Family};
pub use pipeline::NodePipeline;
pub use random::{random_network, Entries, RandomNetwork};
pub use topo::{topological_order, TopoError};
pub use total::{Mismatch, Verification};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("invalid network:{}", fmt_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("{arity}^{order} cells exceed the cap of {cap}")]
    CellCapExceeded { order: usize, arity: usize, cap: usize },
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("node position {position} outside 1..={count}")]
    PositionOutOfRange { position: usize, count: usize },
    #[error(transparent)]
    Topo(#[from] TopoError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

fn fmt_violations(violations: &[Violation]) -> String {
    violations.iter().map(|v| format!("\n  {v}")).collect()
}

/// One node: its id, the ids of its parents and its activation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSpec {
    pub id: String,
    pub parents: Vec<String>,
    pub activation: ActivationSpec,
}

impl NodeSpec {
    pub fn new<I, S>(id: impl Into<String>, parents: I, activation: ActivationSpec) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        NodeSpec {
            id: id.into(),
            parents: parents.into_iter().map(Into::into).collect(),
            activation,
        }
    }
}

/// Raw network description. The position of a node in `nodes` is its place
/// in the total ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkSpec {
    arity: usize,
    nodes: Vec<NodeSpec>,
}

impl NetworkSpec {
    /// Parent lists are sorted by position when both ids resolve; unresolved
    /// parents keep their relative order and are reported by [`validate`].
    pub fn new(arity: usize, mut nodes: Vec<NodeSpec>) -> Self {
        let position: HashMap<String, usize> =
            nodes.iter().enumerate().map(|(i, n)| (n.id.clone(), i)).collect();
        for node in &mut nodes {
            node.parents
                .sort_by_key(|p| position.get(p).copied().unwrap_or(usize::MAX));
        }
        NetworkSpec { arity, nodes }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn nodes(&self) -> &[NodeSpec] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// 1-based position of a node.
    pub fn position(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id).map(|p| p + 1)
    }

    pub fn node(&self, id: &str) -> Option<&NodeSpec> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn ids(&self) -> Vec<&str> {
        self.nodes.iter().map(|n| n.id.as_str()).collect()
    }

    /// Arrows `(parent, child)` in node order.
    pub fn edges(&self) -> Vec<(&str, &str)> {
        self.nodes
            .iter()
            .flat_map(|n| n.parents.iter().map(move |p| (p.as_str(), n.id.as_str())))
            .collect()
    }

    /// The same network declared in another total ordering. Parent slots of
    /// explicit activations are permuted to follow the new positions.
    pub fn reordered<S: AsRef<str>>(&self, order: &[S]) -> Result<NetworkSpec, NetworkError> {
        let mut nodes = Vec::with_capacity(order.len());
        let mut used = HashSet::new();
        for id in order {
            let id = id.as_ref();
            let node = self.node(id).ok_or_else(|| NetworkError::UnknownNode(id.to_string()))?;
            if !used.insert(id) {
                return Err(TopoError::DuplicateNode(id.to_string()).into());
            }
            nodes.push(node.clone());
        }
        if let Some(missing) = self.nodes.iter().find(|n| !used.contains(n.id.as_str())) {
            return Err(NetworkError::UnknownNode(missing.id.clone()));
        }
        let position: HashMap<&str, usize> = order.iter().enumerate().map(|(i, id)| (id.as_ref(), i)).collect();
        for node in &mut nodes {
            if let ActivationSpec::Explicit(t) = &mut node.activation {
                if let Some(moved) = permute_parent_slots(t, &node.parents, &position) {
                    *t = moved;
                }
            }
        }
        Ok(NetworkSpec::new(self.arity, nodes))
    }

    /// Re-declares the nodes in the deterministic topological order.
    pub fn topologically_sorted(&self) -> Result<NetworkSpec, NetworkError> {
        let order = topological_order(&self.ids(), &self.edges())?;
        self.reordered(&order)
    }

    /// The network with its last node (the sink) removed.
    pub fn without_sink(&self) -> NetworkSpec {
        let mut nodes = self.nodes.clone();
        nodes.pop();
        NetworkSpec::new(self.arity, nodes)
    }
}

/// Moves the parent slots of an explicit activation so that they follow the
/// parents' positions in `position`. `None` when the parents do not resolve
/// or repeat, or when nothing moves.
fn permute_parent_slots(t: &Tensor, parents: &[String], position: &HashMap<&str, usize>) -> Option<Tensor> {
    let p = parents.len();
    if t.order() != p + 1 {
        return None;
    }
    let keys = parents.iter().map(|id| position.get(id.as_str()).copied()).collect::<Option<Vec<_>>>()?;
    let mut by_new: Vec<usize> = (0..p).collect();
    by_new.sort_by_key(|&k| keys[k]);
    // old slot k moves to new slot rank[k]
    let mut rank = vec![0; p];
    for (new, &old) in by_new.iter().enumerate() {
        rank[old] = new;
    }
    let mut images: Vec<usize> = rank.iter().map(|r| r + 1).collect();
    images.push(p + 1);
    let sigma = Permutation::new(images).ok()?;
    if sigma.is_identity() {
        return None;
    }
    sigma_transpose(t, &sigma).ok()
}

/// A reason a [`NetworkSpec`] is not a valid network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ArityTooSmall { arity: usize },
    EmptyNetwork,
    DuplicateNodeId { node: String },
    UnknownParent { node: String, parent: String },
    DuplicateParent { node: String, parent: String },
    SelfLoop { node: String },
    /// `parent` is declared at or after `node` in the total ordering.
    OrderingIncompatible { node: String, parent: String },
    /// Explicit activation whose order is not in-degree + 1.
    OrderMismatch { node: String, expected: usize, got: usize },
    /// Any other activation/arity conflict.
    ActivationMismatch { node: String, mismatch: ActivationMismatch },
}

impl Violation {
    pub fn node(&self) -> Option<&str> {
        match self {
            Violation::ArityTooSmall { .. } | Violation::EmptyNetwork => None,
            Violation::DuplicateNodeId { node }
            | Violation::UnknownParent { node, .. }
            | Violation::DuplicateParent { node, .. }
            | Violation::SelfLoop { node }
            | Violation::OrderingIncompatible { node, .. }
            | Violation::OrderMismatch { node, .. }
            | Violation::ActivationMismatch { node, .. } => Some(node),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ArityTooSmall { arity } => write!(f, "ArityTooSmall: arity {arity} < 2"),
            Violation::EmptyNetwork => write!(f, "EmptyNetwork: no nodes"),
            Violation::DuplicateNodeId { node } => write!(f, "DuplicateNodeId: `{node}`"),
            Violation::UnknownParent { node, parent } => {
                write!(f, "UnknownParent: node `{node}` lists unknown parent `{parent}`")
            }
            Violation::DuplicateParent { node, parent } => {
                write!(f, "DuplicateParent: node `{node}` lists `{parent}` twice")
            }
            Violation::SelfLoop { node } => write!(f, "SelfLoop: node `{node}` is its own parent"),
            Violation::OrderingIncompatible { node, parent } => write!(
                f,
                "OrderingIncompatible: parent `{parent}` is not ordered before node `{node}`"
            ),
            Violation::OrderMismatch { node, expected, got } => write!(
                f,
                "OrderMismatch: node `{node}` needs an order-{expected} activation, got order {got}"
            ),
            Violation::ActivationMismatch { node, mismatch } => {
                write!(f, "FamilyArityMismatch: node `{node}`: {mismatch}")
            }
        }
    }
}

/// Lists every violated network invariant; empty means valid.
pub fn validate(spec: &NetworkSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    if spec.arity < 2 {
        out.push(Violation::ArityTooSmall { arity: spec.arity });
    }
    if spec.nodes.is_empty() {
        out.push(Violation::EmptyNetwork);
    }
    let mut position: HashMap<&str, usize> = HashMap::new();
    for (i, node) in spec.nodes.iter().enumerate() {
        if position.insert(&node.id, i).is_some() {
            out.push(Violation::DuplicateNodeId { node: node.id.clone() });
        }
    }
    for (i, node) in spec.nodes.iter().enumerate() {
        let mut seen = HashSet::new();
        for parent in &node.parents {
            if !seen.insert(parent.as_str()) {
                out.push(Violation::DuplicateParent { node: node.id.clone(), parent: parent.clone() });
                continue;
            }
            if *parent == node.id {
                out.push(Violation::SelfLoop { node: node.id.clone() });
                continue;
            }
            match position.get(parent.as_str()) {
                None => out.push(Violation::UnknownParent {
                    node: node.id.clone(),
                    parent: parent.clone(),
                }),
                Some(&p) if p >= i => out.push(Violation::OrderingIncompatible {
                    node: node.id.clone(),
                    parent: parent.clone(),
                }),
                Some(_) => {}
            }
        }
        let in_degree = node.parents.len();
        if let ActivationSpec::Explicit(t) = &node.activation {
            if t.order() != in_degree + 1 {
                out.push(Violation::OrderMismatch {
                    node: node.id.clone(),
                    expected: in_degree + 1,
                    got: t.order(),
                });
                continue;
            }
        }
        if let Some(mismatch) = node.activation.mismatch(in_degree, spec.arity) {
            out.push(Violation::ActivationMismatch { node: node.id.clone(), mismatch });
        }
    }
    out
}

/// A validated network with parents resolved to positions and activations
/// materialized.
#[derive(Debug, Clone)]
pub struct Network {
    spec: NetworkSpec,
    /// 0-based parent positions per node, increasing.
    parents: Vec<Vec<usize>>,
    activations: Vec<Tensor>,
}

impl Network {
    pub fn new(spec: NetworkSpec) -> Result<Self, NetworkError> {
        let violations = validate(&spec);
        if !violations.is_empty() {
            return Err(NetworkError::Invalid(violations));
        }
        let parents: Vec<Vec<usize>> = spec
            .nodes
            .iter()
            .map(|n| {
                n.parents
                    .iter()
                    .map(|p| spec.position(p).expect("validated") - 1)
                    .collect()
            })
            .collect();
        let activations = spec
            .nodes
            .iter()
            .zip(&parents)
            .map(|(n, p)| n.activation.tensor(p.len(), spec.arity).expect("validated"))
            .collect();
        Ok(Network { spec, parents, activations })
    }

    pub fn spec(&self) -> &NetworkSpec {
        &self.spec
    }

    /// Number of nodes `d`.
    pub fn len(&self) -> usize {
        self.spec.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spec.nodes.is_empty()
    }

    pub fn arity(&self) -> usize {
        self.spec.arity
    }

    /// 1-based positions of the parents of the node at 1-based `position`.
    pub fn parent_positions(&self, position: usize) -> Vec<usize> {
        self.parents[position - 1].iter().map(|p| p + 1).collect()
    }

    /// Activation tensor of the node at 1-based `position`.
    pub fn activation(&self, position: usize) -> &Tensor {
        &self.activations[position - 1]
    }

    pub fn position(&self, id: &str) -> Result<usize, NetworkError> {
        self.spec
            .position(id)
            .ok_or_else(|| NetworkError::UnknownNode(id.to_string()))
    }

    fn check_position(&self, position: usize) -> Result<(), NetworkError> {
        if position == 0 || position > self.len() {
            return Err(NetworkError::PositionOutOfRange { position, count: self.len() });
        }
        Ok(())
    }

    /// Cell count of an order-`d` tensor, checked against `cap`.
    fn check_cap(&self, cap: usize) -> Result<usize, NetworkError> {
        let (order, arity) = (self.len(), self.arity());
        u32::try_from(order)
            .ok()
            .and_then(|d| arity.checked_pow(d))
            .filter(|&cells| cells <= cap)
            .ok_or(NetworkError::CellCapExceeded { order, arity, cap })
    }

    /// Whether every activation sums to 1 over its last slot for each choice
    /// of parent states. Diagnostic only; nothing requires it.
    pub fn stochastic_report(&self) -> Vec<(String, bool)> {
        let one = crate::scalar::PolyScalar::one();
        self.spec
            .nodes
            .iter()
            .zip(&self.activations)
            .map(|(node, t)| {
                let n = self.arity();
                let ok = t.cells().chunks(n).all(|row| {
                    let mut sum = crate::scalar::PolyScalar::zero();
                    row.iter().for_each(|c| sum.add_assign_ref(c));
                    sum == one
                });
                (node.id.clone(), ok)
            })
            .collect()
    }
}

impl TryFrom<NetworkSpec> for Network {
    type Error = NetworkError;

    fn try_from(spec: NetworkSpec) -> Result<Self, Self::Error> {
        Network::new(spec)
    }
}
