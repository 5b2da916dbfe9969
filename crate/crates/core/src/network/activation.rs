use std::fmt;

use crate::scalar::PolyScalar;
use crate::tensor::{Shape, Tensor};

/// How a node's activation tensor is specified.
///
/// Slot order of the resulting tensor: parents by increasing position in the
/// network's total ordering, then the node's own state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActivationSpec {
    /// Arbitrary cubical tensor of order `p + 1`.
    Explicit(Tensor),
    /// Frequencies of a source node (`p = 0`).
    SourceVector(Vec<PolyScalar>),
    /// `alpha` on the diagonal and `beta` elsewhere (`p = 1`).
    JukesCantor { alpha: PolyScalar, beta: PolyScalar },
    /// Binary "exists" threshold: state 2 iff some parent sent state 2,
    /// weighted by `alpha`; disobedient cells are 0.
    ThresholdOne { alpha: PolyScalar },
    /// Threshold of value one whose disobedient cells carry `beta`.
    QuantumThresholdOne { alpha: PolyScalar, beta: PolyScalar },
}

/// Named activation families, as spelled in network documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Explicit,
    Vector,
    JukesCantor,
    ThresholdOne,
    QuantumThresholdOne,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Vector,
        Family::Explicit,
        Family::JukesCantor,
        Family::ThresholdOne,
        Family::QuantumThresholdOne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Explicit => "explicit",
            Family::Vector => "vector",
            Family::JukesCantor => "jukes_cantor",
            Family::ThresholdOne => "threshold_one",
            Family::QuantumThresholdOne => "quantum_threshold_one",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Family::Vector => "source node (0 parents); keys: entries (n expressions)",
            Family::Explicit => {
                "any in-degree p; keys: entries (n^(p+1) expressions, row-major, own state last)"
            }
            Family::JukesCantor => "1 parent, any arity; keys: alpha (diagonal), beta (off-diagonal)",
            Family::ThresholdOne => "arity 2, any in-degree; keys: alpha",
            Family::QuantumThresholdOne => "arity 2, any in-degree; keys: alpha, beta",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl ActivationSpec {
    pub fn family(&self) -> Family {
        match self {
            ActivationSpec::Explicit(_) => Family::Explicit,
            ActivationSpec::SourceVector(_) => Family::Vector,
            ActivationSpec::JukesCantor { .. } => Family::JukesCantor,
            ActivationSpec::ThresholdOne { .. } => Family::ThresholdOne,
            ActivationSpec::QuantumThresholdOne { .. } => Family::QuantumThresholdOne,
        }
    }

    /// Describes why this activation cannot serve a node with `parents`
    /// parents in a network of the given arity, if it cannot.
    pub fn mismatch(&self, parents: usize, arity: usize) -> Option<ActivationMismatch> {
        let family = self.family();
        let fail = |reason: String| Some(ActivationMismatch { family, reason });
        match self {
            ActivationSpec::Explicit(t) => {
                if t.order() != parents + 1 {
                    return Some(ActivationMismatch {
                        family,
                        reason: format!("order {} but {} parents need order {}", t.order(), parents, parents + 1),
                    });
                }
                if let Some((slot, &got)) = t.dims().iter().enumerate().find(|(_, &n)| n != arity) {
                    return fail(format!("slot {} has dimension {got}, arity is {arity}", slot + 1));
                }
                None
            }
            ActivationSpec::SourceVector(entries) => {
                if parents != 0 {
                    return fail(format!("requires 0 parents, node has {parents}"));
                }
                if entries.len() != arity {
                    return fail(format!("{} entries, arity is {arity}", entries.len()));
                }
                None
            }
            ActivationSpec::JukesCantor { .. } => {
                if parents != 1 {
                    return fail(format!("requires 1 parent, node has {parents}"));
                }
                None
            }
            ActivationSpec::ThresholdOne { .. } | ActivationSpec::QuantumThresholdOne { .. } => {
                if arity != 2 {
                    return fail(format!("requires arity 2, network arity is {arity}"));
                }
                None
            }
        }
    }

    /// The cubical order-`(parents + 1)` activation tensor.
    pub fn tensor(&self, parents: usize, arity: usize) -> Result<Tensor, ActivationMismatch> {
        if let Some(m) = self.mismatch(parents, arity) {
            return Err(m);
        }
        let shape = Shape::cubical(parents + 1, arity).map_err(|e| ActivationMismatch {
            family: self.family(),
            reason: e.to_string(),
        })?;
        Ok(match self {
            ActivationSpec::Explicit(t) => t.clone(),
            ActivationSpec::SourceVector(entries) => {
                Tensor::new(shape, entries.clone()).expect("length checked")
            }
            ActivationSpec::JukesCantor { alpha, beta } => {
                Tensor::from_fn(shape, |x| if x[0] == x[1] { alpha.clone() } else { beta.clone() })
            }
            ActivationSpec::ThresholdOne { alpha } => {
                threshold(shape, alpha, &PolyScalar::zero())
            }
            ActivationSpec::QuantumThresholdOne { alpha, beta } => threshold(shape, alpha, beta),
        })
    }
}

/// Binary threshold of value one: a cell is disobedient when every parent
/// sent state 1 but the output is 2, or some parent sent 2 but the output is 1.
fn threshold(shape: Shape, obey: &PolyScalar, disobey: &PolyScalar) -> Tensor {
    Tensor::from_fn(shape, |x| {
        let (inputs, output) = x.split_at(x.len() - 1);
        let fired = inputs.iter().any(|&s| s == 2);
        let expected = if fired { 2 } else { 1 };
        if output[0] == expected {
            obey.clone()
        } else {
            disobey.clone()
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivationMismatch {
    pub family: Family,
    pub reason: String,
}

impl fmt::Display for ActivationMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.family, self.reason)
    }
}
