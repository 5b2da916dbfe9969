use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{Network, NetworkError};
use crate::exec::{map_range, EvalOptions};
use crate::scalar::PolyScalar;
use crate::tensor::{bmp_with, Shape, Tensor};

/// First cell where the two total-tensor routes disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// 1-based multi-index.
    pub index: Vec<usize>,
    pub direct: PolyScalar,
    pub bmp: PolyScalar,
}

/// Outcome of comparing the direct and product routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub cells_compared: usize,
    pub mismatch: Option<Mismatch>,
}

impl Verification {
    pub fn is_equal(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl Network {
    fn total_shape(&self) -> Shape {
        Shape::cubical(self.len(), self.arity()).expect("valid network has nodes and arity >= 2")
    }

    /// Total tensor from its definition: the cell at `(x_1..x_d)` is the
    /// product over nodes `j` of `T_j[x restricted to P_j, x_j]`.
    pub fn total_direct(&self, options: &EvalOptions) -> Result<Tensor, NetworkError> {
        let cells = self.check_cap(options.max_cells)?;
        let shape = self.total_shape();
        let values = map_range(cells, options.execution, |offset| {
            let mut idx = vec![0; shape.order()];
            shape.unravel0(offset, &mut idx);
            self.direct_cell0(&idx)
        });
        Ok(Tensor::new(shape, values)?)
    }

    pub(crate) fn direct_cell0(&self, index: &[usize]) -> PolyScalar {
        let mut acc = PolyScalar::one();
        let mut at = Vec::new();
        for (j, activation) in self.activations.iter().enumerate() {
            at.clear();
            at.extend(self.parents[j].iter().map(|&p| index[p]));
            at.push(index[j]);
            let factor = activation.at0(&at);
            if factor.is_zero() {
                return PolyScalar::zero();
            }
            acc = &acc * factor;
        }
        acc
    }

    /// Total tensor as the product of the node tensors, sink first in summand
    /// order: `bmp([B_1, ..., B_d])`, which contracts slot 1 of `B_d` and slot
    /// `k + 1` of `B_k`.
    pub fn total_bmp(&self, options: &EvalOptions) -> Result<Tensor, NetworkError> {
        self.check_cap(options.max_cells)?;
        if self.len() == 1 {
            return Ok(self.activation(1).clone());
        }
        let node_tensors = self.node_tensors(options)?;
        Ok(bmp_with(&node_tensors, options.execution)?)
    }

    /// One cell of the product route, with node-tensor cells read lazily.
    pub(crate) fn bmp_cell0(&self, index: &[usize]) -> PolyScalar {
        let d = self.len();
        if d == 1 {
            return self.activations[0].at0(index).clone();
        }
        let mut sum = PolyScalar::zero();
        let mut probe = index.to_vec();
        'summand: for h in 0..self.arity() {
            let mut acc = PolyScalar::one();
            for k in 1..=d {
                let slot = k % d; // 0-based contracted slot of B_k
                probe.copy_from_slice(index);
                probe[slot] = h;
                let cell = self.node_tensor_cell0(k, &probe);
                if cell.is_zero() {
                    continue 'summand;
                }
                acc = &acc * &cell;
            }
            sum.add_assign_ref(&acc);
        }
        sum
    }

    /// Computes both routes in full and compares them cell by cell.
    pub fn verify(&self, options: &EvalOptions) -> Result<Verification, NetworkError> {
        let direct = self.total_direct(options)?;
        let product = self.total_bmp(options)?;
        let mismatch = direct
            .iter()
            .zip(product.cells())
            .find(|((_, a), b)| a != b)
            .map(|((index, a), b)| Mismatch { index, direct: a.clone(), bmp: b.clone() });
        Ok(Verification { cells_compared: direct.cells().len(), mismatch })
    }

    /// Compares both routes on `samples` pseudo-random cells without
    /// materializing any order-`d` tensor. Usable when `n^d` exceeds the cap.
    pub fn verify_sampled(&self, samples: usize, seed: u64) -> Verification {
        let mut rng = StdRng::seed_from_u64(seed);
        let (d, n) = (self.len(), self.arity());
        let mut idx = vec![0; d];
        for _ in 0..samples {
            idx.iter_mut().for_each(|x| *x = rng.gen_range(0..n));
            let direct = self.direct_cell0(&idx);
            let bmp = self.bmp_cell0(&idx);
            if direct != bmp {
                return Verification {
                    cells_compared: samples,
                    mismatch: Some(Mismatch {
                        index: idx.iter().map(|x| x + 1).collect(),
                        direct,
                        bmp,
                    }),
                };
            }
        }
        Verification { cells_compared: samples, mismatch: None }
    }
}
