use rand::seq::SliceRandom;
use rand::Rng;

use super::{ActivationSpec, NetworkSpec, NodeSpec};
use crate::scalar::{Monomial, PolyScalar, Rational};
use crate::tensor::{Shape, Tensor};

/// What random activation entries look like.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Entries {
    /// Integers in `-3..=3`.
    Integers,
    /// `alpha^a * beta^b` with `a, b <= 2`.
    Monomials,
    /// Either of the above, chosen per node.
    Mixed,
}

/// Parameters for [`random_network`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomNetwork {
    pub nodes: usize,
    pub arity: usize,
    /// Probability that an earlier node is a parent, in percent.
    pub edge_percent: u32,
    pub max_parents: usize,
    pub entries: Entries,
    /// Let nodes use the named families when their in-degree allows it.
    pub families: bool,
}

impl RandomNetwork {
    pub fn new(nodes: usize, arity: usize) -> Self {
        RandomNetwork { nodes, arity, edge_percent: 40, max_parents: 3, entries: Entries::Mixed, families: true }
    }
}

fn integer<R: Rng>(rng: &mut R) -> PolyScalar {
    PolyScalar::integer(rng.gen_range(-3..=3))
}

fn monomial<R: Rng>(rng: &mut R) -> PolyScalar {
    let (a, b) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
    PolyScalar::term(Rational::one(), Monomial::from_powers([("alpha", a), ("beta", b)]))
}

/// A valid network declared in topological order, nodes named `v1`, `v2`, ...
pub fn random_network<R: Rng>(rng: &mut R, params: &RandomNetwork) -> NetworkSpec {
    let n = params.arity;
    let ids: Vec<String> = (1..=params.nodes).map(|i| format!("v{i}")).collect();
    let mut nodes = Vec::with_capacity(params.nodes);
    for i in 0..params.nodes {
        let mut earlier: Vec<usize> = (0..i).filter(|_| rng.gen_range(0..100) < params.edge_percent).collect();
        earlier.shuffle(rng);
        earlier.truncate(params.max_parents);
        earlier.sort_unstable();
        let p = earlier.len();

        let monomials = match params.entries {
            Entries::Integers => false,
            Entries::Monomials => true,
            Entries::Mixed => rng.gen(),
        };
        let entry = |rng: &mut R| if monomials { monomial(rng) } else { integer(rng) };

        let family = params.families && rng.gen_range(0..3) == 0;
        let activation = match (family, p) {
            (true, 0) => ActivationSpec::SourceVector((0..n).map(|_| entry(rng)).collect()),
            (true, 1) => ActivationSpec::JukesCantor { alpha: entry(rng), beta: entry(rng) },
            (true, _) if n == 2 => {
                if rng.gen() {
                    ActivationSpec::ThresholdOne { alpha: entry(rng) }
                } else {
                    ActivationSpec::QuantumThresholdOne { alpha: entry(rng), beta: entry(rng) }
                }
            }
            _ => {
                let shape = Shape::cubical(p + 1, n).expect("arity is positive");
                let cells = (0..shape.cell_count()).map(|_| entry(rng)).collect();
                ActivationSpec::Explicit(Tensor::new(shape, cells).expect("cell count matches"))
            }
        };
        nodes.push(NodeSpec::new(ids[i].clone(), earlier.iter().map(|&j| ids[j].clone()), activation));
    }
    NetworkSpec::new(n, nodes)
}
