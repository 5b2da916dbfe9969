use super::{Network, NetworkError};
use crate::exec::{map_range, EvalOptions};
use crate::scalar::PolyScalar;
use crate::tensor::{blow, forget_uniform, Tensor};

/// Intermediate tensors of the node-tensor construction for the node at
/// position `i` of a `d`-node network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodePipeline {
    pub position: usize,
    /// `T_i`, the activation tensor (order `p_i + 1`).
    pub activation: Tensor,
    /// `T'_i`, order `i`: slot `j < i` carries node `j`, slot `i` the node itself.
    pub forgotten: Tensor,
    /// `T''_i = blow(T'_i)`, order `i + 1`; absent for the sink.
    pub blown: Option<Tensor>,
    /// `B_i`, order `d`.
    pub node_tensor: Tensor,
}

impl Network {
    /// Runs the blow/forget construction for the node at 1-based `position`.
    ///
    /// 1. `T'_i` = forget of `T_i` inserting slots `{1..i-1} \ P_i`.
    /// 2. `T''_i` = blow of `T'_i` when `i < d`.
    /// 3. `B_i` = forget of `T''_i` inserting slots `{i+2..d}`; `B_d = T'_d`.
    pub fn node_pipeline(
        &self,
        position: usize,
        options: &EvalOptions,
    ) -> Result<NodePipeline, NetworkError> {
        self.check_position(position)?;
        self.check_cap(options.max_cells)?;
        let (i, d, n) = (position, self.len(), self.arity());
        let parents = self.parent_positions(i);
        let activation = self.activation(i).clone();

        let free: Vec<usize> = (1..i).filter(|j| !parents.contains(j)).collect();
        let forgotten = forget_uniform(&activation, &free, i, n)?;
        if i == d {
            return Ok(NodePipeline {
                position,
                activation,
                node_tensor: forgotten.clone(),
                forgotten,
                blown: None,
            });
        }
        let blown = blow(&forgotten);
        let tail: Vec<usize> = (i + 2..=d).collect();
        let node_tensor = forget_uniform(&blown, &tail, d, n)?;
        Ok(NodePipeline { position, activation, forgotten, blown: Some(blown), node_tensor })
    }

    /// `B_i` for the node at 1-based `position`.
    pub fn node_tensor(&self, position: usize, options: &EvalOptions) -> Result<Tensor, NetworkError> {
        Ok(self.node_pipeline(position, options)?.node_tensor)
    }

    /// `B_1, ..., B_d` in node order.
    pub fn node_tensors(&self, options: &EvalOptions) -> Result<Vec<Tensor>, NetworkError> {
        self.check_cap(options.max_cells)?;
        map_range(self.len(), options.execution, |i| self.node_tensor(i + 1, options))
            .into_iter()
            .collect()
    }

    /// One cell of `B_i` read straight from the activation tensor, without
    /// materializing anything. `index` is a 0-based multi-index of length `d`.
    pub(crate) fn node_tensor_cell0(&self, position: usize, index: &[usize]) -> PolyScalar {
        let (i, d) = (position, self.len());
        let source = |own: usize| -> PolyScalar {
            let mut at: Vec<usize> = self.parents[i - 1].iter().map(|&p| index[p]).collect();
            at.push(own);
            self.activations[i - 1].at0(&at).clone()
        };
        if i == d {
            return source(index[i - 1]);
        }
        // slot i + 1 of the blown tensor is tied to slot 1
        if index[0] != index[i] {
            return PolyScalar::zero();
        }
        source(index[i - 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{ActivationSpec, NetworkSpec, NodeSpec};

    fn alpha() -> PolyScalar {
        PolyScalar::var("alpha")
    }

    fn beta() -> PolyScalar {
        PolyScalar::var("beta")
    }

    fn markov() -> Network {
        let jc = ActivationSpec::JukesCantor { alpha: alpha(), beta: beta() };
        Network::new(NetworkSpec::new(
            2,
            vec![
                NodeSpec::new("b", Vec::<String>::new(), ActivationSpec::SourceVector(vec![alpha(), beta()])),
                NodeSpec::new("c", ["b"], jc.clone()),
                NodeSpec::new("a", ["c"], jc),
            ],
        ))
        .unwrap()
    }

    #[test]
    fn source_node_tensor() {
        let b1 = markov().node_tensor(1, &EvalOptions::default()).unwrap();
        for (x, cell) in b1.iter() {
            let want = match (x[0], x[1]) {
                (1, 1) => alpha(),
                (2, 2) => beta(),
                _ => PolyScalar::zero(),
            };
            assert_eq!(cell, &want, "{x:?}");
        }
    }

    #[test]
    fn middle_node_tensor_is_blow() {
        let net = markov();
        let p = net.node_pipeline(2, &EvalOptions::default()).unwrap();
        assert_eq!(p.forgotten, *net.activation(2));
        assert_eq!(p.node_tensor, blow(net.activation(2)));
        for (x, cell) in p.node_tensor.iter() {
            if x[0] == x[2] {
                assert_eq!(cell, net.activation(2).at(&x[..2]));
            } else {
                assert!(cell.is_zero());
            }
        }
    }

    #[test]
    fn sink_node_tensor_forgets_first_slot() {
        let net = markov();
        let p = net.node_pipeline(3, &EvalOptions::default()).unwrap();
        assert!(p.blown.is_none());
        for (x, cell) in p.node_tensor.iter() {
            assert_eq!(cell, net.activation(3).at(&x[1..]));
        }
    }

    #[test]
    fn stage_orders() {
        let net = markov();
        for i in 1..=3 {
            let p = net.node_pipeline(i, &EvalOptions::default()).unwrap();
            assert_eq!(p.forgotten.order(), i);
            assert_eq!(p.blown.as_ref().map(Tensor::order), (i < 3).then_some(i + 1));
            assert_eq!(p.node_tensor.order(), 3);
        }
        assert!(matches!(
            net.node_pipeline(4, &EvalOptions::default()),
            Err(NetworkError::PositionOutOfRange { position: 4, count: 3 })
        ));
    }

    #[test]
    fn lazy_cells_match_dense() {
        let net = markov();
        for i in 1..=3 {
            let dense = net.node_tensor(i, &EvalOptions::default()).unwrap();
            for (x, cell) in dense.iter() {
                let x0: Vec<usize> = x.iter().map(|v| v - 1).collect();
                assert_eq!(&net.node_tensor_cell0(i, &x0), cell);
            }
        }
    }
}
