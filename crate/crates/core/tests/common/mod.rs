#![allow(dead_code)]

use bmnet::network::{ActivationSpec, NetworkSpec, NodeSpec};
use bmnet::scalar::{Monomial, PolyScalar, Rational};
use bmnet::tensor::{Shape, Tensor};
use bmnet::Network;
use proptest::prelude::*;

pub fn p(text: &str) -> PolyScalar {
    text.parse().unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn alpha() -> PolyScalar {
    PolyScalar::var("alpha")
}

pub fn beta() -> PolyScalar {
    PolyScalar::var("beta")
}

/// `alpha^a * beta^b`.
pub fn ab(a: u32, b: u32) -> PolyScalar {
    PolyScalar::term(Rational::one(), Monomial::from_powers([("alpha", a), ("beta", b)]))
}

/// Converts a 0-based binary label such as `"011"` to a 1-based index.
pub fn idx(label: &str) -> Vec<usize> {
    label.bytes().map(|b| usize::from(b - b'0') + 1).collect()
}

fn source() -> ActivationSpec {
    ActivationSpec::SourceVector(vec![alpha(), beta()])
}

fn jc() -> ActivationSpec {
    ActivationSpec::JukesCantor { alpha: alpha(), beta: beta() }
}

fn quantum() -> ActivationSpec {
    ActivationSpec::QuantumThresholdOne { alpha: alpha(), beta: beta() }
}

fn none() -> Vec<String> {
    Vec::new()
}

/// b -> c -> a.
pub fn markov() -> Network {
    Network::new(NetworkSpec::new(
        2,
        vec![NodeSpec::new("b", none(), source()), NodeSpec::new("c", ["b"], jc()), NodeSpec::new("a", ["c"], jc())],
    ))
    .unwrap()
}

/// b -> c, b -> a, c -> a, with a quantum threshold at the sink.
pub fn triangle() -> Network {
    Network::new(NetworkSpec::new(
        2,
        vec![NodeSpec::new("b", none(), source()), NodeSpec::new("c", ["b"], jc()), NodeSpec::new("a", ["b", "c"], quantum())],
    ))
    .unwrap()
}

/// b -> c only; a is an isolated source.
pub fn arrow_removed() -> Network {
    Network::new(NetworkSpec::new(
        2,
        vec![NodeSpec::new("b", none(), source()), NodeSpec::new("c", ["b"], jc()), NodeSpec::new("a", none(), source())],
    ))
    .unwrap()
}

/// b -> c, c -> d, b -> d, d -> e, c -> a, e -> a.
pub fn five_node() -> Network {
    Network::new(NetworkSpec::new(
        2,
        vec![
            NodeSpec::new("b", none(), source()),
            NodeSpec::new("c", ["b"], jc()),
            NodeSpec::new("d", ["b", "c"], quantum()),
            NodeSpec::new("e", ["d"], jc()),
            NodeSpec::new("a", ["c", "e"], quantum()),
        ],
    ))
    .unwrap()
}

/// Polynomials in up to four parameters with total degree at most 5 and
/// small rational coefficients.
pub fn poly() -> impl Strategy<Value = PolyScalar> {
    let term = (-6i64..=6, 1i64..=4, prop::collection::vec(0u32..=2, 4)).prop_map(|(num, den, powers)| {
        let names = ["a", "b", "c", "d"];
        let mut budget = 5;
        let powers: Vec<(&str, u32)> = names
            .iter()
            .zip(powers)
            .map(|(&n, e)| {
                let e = e.min(budget);
                budget -= e;
                (n, e)
            })
            .collect();
        PolyScalar::term(Rational::ratio(num, den), Monomial::from_powers(powers))
    });
    prop::collection::vec(term, 0..5).prop_map(|terms| terms.iter().fold(PolyScalar::zero(), |acc, t| &acc + t))
}

/// Integer or `alpha^i beta^j` cells, zero-heavy enough to exercise sparsity.
pub fn cell() -> impl Strategy<Value = PolyScalar> {
    prop_oneof![
        (-3i64..=3).prop_map(PolyScalar::integer),
        (0u32..=2, 0u32..=2, -2i64..=2).prop_map(|(a, b, c)| &ab(a, b) * &PolyScalar::integer(c)),
    ]
}

pub fn tensor(dims: Vec<usize>) -> impl Strategy<Value = Tensor> {
    let shape = Shape::new(dims).unwrap();
    prop::collection::vec(cell(), shape.cell_count()).prop_map(move |cells| Tensor::new(shape.clone(), cells).unwrap())
}

pub fn cubical(d: usize, n: usize) -> impl Strategy<Value = Tensor> {
    tensor(vec![n; d])
}

pub fn integer_tensor(dims: Vec<usize>) -> impl Strategy<Value = Tensor> {
    let shape = Shape::new(dims).unwrap();
    prop::collection::vec((-9i64..=9).prop_map(PolyScalar::integer), shape.cell_count())
        .prop_map(move |cells| Tensor::new(shape.clone(), cells).unwrap())
}
