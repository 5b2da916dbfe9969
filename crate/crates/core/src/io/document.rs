use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::IoError;
use crate::network::{ActivationSpec, Network, NetworkSpec, NodeSpec};
use crate::scalar::{parse_expr, PolyScalar};
use crate::tensor::{Shape, Tensor};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    arity: usize,
    nodes: Vec<NodeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    id: String,
    #[serde(default)]
    parents: Vec<String>,
    activation: ActivationDoc,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum ActivationDoc {
    Vector { entries: Vec<String> },
    Explicit { entries: Vec<String> },
    JukesCantor { alpha: String, beta: String },
    ThresholdOne { alpha: String },
    QuantumThresholdOne { alpha: String, beta: String },
}

/// Reads a network document into a [`NetworkSpec`].
///
/// Structural problems (bad JSON, unknown keys, unknown or duplicate ids,
/// wrong entry counts, unparsable expressions) are reported here. Network
/// invariants such as parent-before-child ordering are left to
/// [`crate::network::validate`], so a caller can list all of them at once.
pub fn parse_network(text: &str) -> Result<NetworkSpec, IoError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let doc: Document = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        IoError::Schema {
            path: if path == "." { "$".into() } else { path },
            reason: e.into_inner().to_string(),
        }
    })?;
    if doc.arity == 0 {
        return Err(schema("arity", "must be positive"));
    }

    let mut seen = HashMap::new();
    for (i, node) in doc.nodes.iter().enumerate() {
        if seen.insert(node.id.as_str(), i).is_some() {
            return Err(IoError::DuplicateNodeId { path: format!("nodes[{i}].id"), id: node.id.clone() });
        }
    }
    for (i, node) in doc.nodes.iter().enumerate() {
        for (k, parent) in node.parents.iter().enumerate() {
            if !seen.contains_key(parent.as_str()) {
                return Err(IoError::UnknownNodeId {
                    path: format!("nodes[{i}].parents[{k}]"),
                    id: parent.clone(),
                });
            }
        }
    }

    let mut nodes = doc
        .nodes
        .iter()
        .enumerate()
        .map(|(i, node)| {
            let activation = activation(&node.activation, node, doc.arity, &format!("nodes[{i}].activation"))?;
            Ok(NodeSpec::new(node.id.clone(), node.parents.clone(), activation))
        })
        .collect::<Result<Vec<_>, IoError>>()?;

    if let Some(order) = &doc.order {
        let mut used = HashSet::new();
        let mut by_id: HashMap<String, NodeSpec> = nodes.drain(..).map(|n| (n.id.clone(), n)).collect();
        for (k, id) in order.iter().enumerate() {
            if !seen.contains_key(id.as_str()) {
                return Err(IoError::UnknownNodeId { path: format!("order[{k}]"), id: id.clone() });
            }
            if !used.insert(id.as_str()) {
                return Err(IoError::DuplicateNodeId { path: format!("order[{k}]"), id: id.clone() });
            }
            nodes.push(by_id.remove(id).expect("checked above"));
        }
        if let Some(node) = doc.nodes.iter().find(|n| !used.contains(n.id.as_str())) {
            return Err(schema("order", &format!("node `{}` is missing", node.id)));
        }
    }
    Ok(NetworkSpec::new(doc.arity, nodes))
}

/// [`parse_network`] followed by validation.
pub fn load_network(text: &str) -> Result<Network, IoError> {
    Ok(Network::new(parse_network(text)?)?)
}

fn schema(path: &str, reason: &str) -> IoError {
    IoError::Schema { path: path.to_string(), reason: reason.to_string() }
}

fn expr(text: &str, path: String) -> Result<PolyScalar, IoError> {
    parse_expr(text).map_err(|e| IoError::Schema { path, reason: e.to_string() })
}

fn entries(list: &[String], path: &str) -> Result<Vec<PolyScalar>, IoError> {
    list.iter().enumerate().map(|(k, s)| expr(s, format!("{path}.entries[{k}]"))).collect()
}

fn activation(doc: &ActivationDoc, node: &NodeDoc, arity: usize, path: &str) -> Result<ActivationSpec, IoError> {
    let count_mismatch = |expected: usize, got: usize| IoError::EntryCountMismatch {
        node: node.id.clone(),
        expected,
        got,
    };
    Ok(match doc {
        ActivationDoc::Vector { entries: list } => {
            if list.len() != arity {
                return Err(count_mismatch(arity, list.len()));
            }
            ActivationSpec::SourceVector(entries(list, path)?)
        }
        ActivationDoc::Explicit { entries: list } => {
            let order = node.parents.len() + 1;
            let expected = u32::try_from(order)
                .ok()
                .and_then(|o| arity.checked_pow(o))
                .ok_or_else(|| schema(path, "activation tensor too large"))?;
            if list.len() != expected {
                return Err(count_mismatch(expected, list.len()));
            }
            let shape = Shape::cubical(order, arity).map_err(|e| schema(path, &e.to_string()))?;
            let tensor = Tensor::new(shape, entries(list, path)?).expect("count checked");
            ActivationSpec::Explicit(tensor)
        }
        ActivationDoc::JukesCantor { alpha, beta } => ActivationSpec::JukesCantor {
            alpha: expr(alpha, format!("{path}.alpha"))?,
            beta: expr(beta, format!("{path}.beta"))?,
        },
        ActivationDoc::ThresholdOne { alpha } => {
            ActivationSpec::ThresholdOne { alpha: expr(alpha, format!("{path}.alpha"))? }
        }
        ActivationDoc::QuantumThresholdOne { alpha, beta } => ActivationSpec::QuantumThresholdOne {
            alpha: expr(alpha, format!("{path}.alpha"))?,
            beta: expr(beta, format!("{path}.beta"))?,
        },
    })
}

/// Writes a network document. Nodes appear in the spec's order, so no
/// `"order"` key is emitted; [`parse_network`] reads the result back to an
/// equal spec.
pub fn serialize_network(spec: &NetworkSpec) -> String {
    let strings = |cells: &[PolyScalar]| cells.iter().map(ToString::to_string).collect();
    let nodes = spec
        .nodes()
        .iter()
        .map(|node| NodeDoc {
            id: node.id.clone(),
            parents: node.parents.clone(),
            activation: match &node.activation {
                ActivationSpec::Explicit(t) => ActivationDoc::Explicit { entries: strings(t.cells()) },
                ActivationSpec::SourceVector(v) => ActivationDoc::Vector { entries: strings(v) },
                ActivationSpec::JukesCantor { alpha, beta } => {
                    ActivationDoc::JukesCantor { alpha: alpha.to_string(), beta: beta.to_string() }
                }
                ActivationSpec::ThresholdOne { alpha } => ActivationDoc::ThresholdOne { alpha: alpha.to_string() },
                ActivationSpec::QuantumThresholdOne { alpha, beta } => {
                    ActivationDoc::QuantumThresholdOne { alpha: alpha.to_string(), beta: beta.to_string() }
                }
            },
        })
        .collect();
    let doc = Document { arity: spec.arity(), nodes, order: None };
    let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
    text.push('\n');
    text
}
