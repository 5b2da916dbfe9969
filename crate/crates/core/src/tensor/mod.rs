//! Dense arbitrary-order tensors over [`PolyScalar`].
//!
//! Cells are stored row-major (last index fastest). Every public index in
//! this module is 1-based: slots run over `1..=order` and the coordinate in
//! slot `k` runs over `1..=dims[k]`.

mod ops;

use std::fmt;

use thiserror::Error;

use crate::scalar::{PolyScalar, Value};

pub use ops::{
    blow, bmp, bmp_with, forget, forget_uniform, identitary, outer_product, sigma_transpose,
    summand_product, summand_product_with,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("expected {expected} cells, got {got}")]
    CellCountMismatch { expected: usize, got: usize },
    #[error("argument {arg}: expected order {expected}, got {got}")]
    OrderMismatch { arg: usize, expected: usize, got: usize },
    #[error("argument {arg}, slot {slot}: expected dimension {expected}, got {got}")]
    ShapeMismatch { arg: usize, slot: usize, expected: usize, got: usize },
    #[error("product of an empty argument list")]
    EmptyProduct,
    #[error("slots ({j}, {k}) invalid for order {order}: need 1 <= j < k <= order")]
    SlotOutOfRange { j: usize, k: usize, order: usize },
    #[error("position {position} outside 1..={order}")]
    PositionOutOfRange { position: usize, order: usize },
    #[error("expected {expected} inserted positions, got {got}")]
    CardinalityMismatch { expected: usize, got: usize },
    #[error("not a permutation of 1..={0}")]
    InvalidPermutation(usize),
}

/// Dimensions `n_1 x ... x n_d` of a tensor; `d >= 1`, every `n_k >= 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    dims: Vec<usize>,
}

impl Shape {
    pub fn new(dims: Vec<usize>) -> Result<Self, TensorError> {
        if dims.is_empty() {
            return Err(TensorError::InvalidShape("order must be at least 1".into()));
        }
        if let Some(pos) = dims.iter().position(|&n| n == 0) {
            return Err(TensorError::InvalidShape(format!("slot {} has dimension 0", pos + 1)));
        }
        if Self::checked_count(&dims).is_none() {
            return Err(TensorError::InvalidShape("cell count overflows".into()));
        }
        Ok(Shape { dims })
    }

    pub fn cubical(order: usize, n: usize) -> Result<Self, TensorError> {
        Self::new(vec![n; order])
    }

    /// Cell count of `dims` without constructing a shape.
    pub fn checked_count(dims: &[usize]) -> Option<usize> {
        dims.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n))
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn cell_count(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_cubical(&self) -> bool {
        self.dims.windows(2).all(|w| w[0] == w[1])
    }

    pub(crate) fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    /// Row-major offset of a 0-based multi-index.
    pub(crate) fn offset0(&self, index: &[usize]) -> usize {
        index
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&x, &n)| acc * n + x)
    }

    /// 0-based multi-index of a row-major offset, written into `out`.
    pub(crate) fn unravel0(&self, mut offset: usize, out: &mut [usize]) {
        for k in (0..self.dims.len()).rev() {
            out[k] = offset % self.dims[k];
            offset /= self.dims[k];
        }
    }

    /// Row-major offset of a 1-based multi-index, or `None` when out of range.
    pub fn offset(&self, index: &[usize]) -> Option<usize> {
        if index.len() != self.dims.len() {
            return None;
        }
        if index.iter().zip(&self.dims).any(|(&x, &n)| x == 0 || x > n) {
            return None;
        }
        Some(index.iter().zip(&self.dims).fold(0, |acc, (&x, &n)| acc * n + (x - 1)))
    }

    /// All 1-based multi-indices in row-major order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.cell_count()).map(move |offset| {
            let mut idx = vec![0; self.order()];
            self.unravel0(offset, &mut idx);
            idx.iter_mut().for_each(|x| *x += 1);
            idx
        })
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.dims.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Shape({self})")
    }
}

/// Dense tensor of polynomial cells.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    shape: Shape,
    cells: Vec<PolyScalar>,
}

impl Tensor {
    pub fn new(shape: Shape, cells: Vec<PolyScalar>) -> Result<Self, TensorError> {
        let expected = shape.cell_count();
        if cells.len() != expected {
            return Err(TensorError::CellCountMismatch { expected, got: cells.len() });
        }
        Ok(Tensor { shape, cells })
    }

    pub fn zeros(shape: Shape) -> Self {
        let cells = vec![PolyScalar::zero(); shape.cell_count()];
        Tensor { shape, cells }
    }

    /// Builds a tensor by evaluating `f` at every 1-based multi-index.
    pub fn from_fn<F>(shape: Shape, mut f: F) -> Self
    where
        F: FnMut(&[usize]) -> PolyScalar,
    {
        let cells = shape.indices().map(|idx| f(&idx)).collect();
        Tensor { shape, cells }
    }

    /// Builds a tensor from 0-based multi-indices; used by the kernels.
    pub(crate) fn from_fn0<F>(shape: Shape, mut f: F) -> Self
    where
        F: FnMut(&[usize]) -> PolyScalar,
    {
        let mut idx = vec![0; shape.order()];
        let cells = (0..shape.cell_count())
            .map(|offset| {
                shape.unravel0(offset, &mut idx);
                f(&idx)
            })
            .collect();
        Tensor { shape, cells }
    }

    pub(crate) fn from_parts(shape: Shape, cells: Vec<PolyScalar>) -> Self {
        debug_assert_eq!(shape.cell_count(), cells.len());
        Tensor { shape, cells }
    }

    pub fn vector(entries: Vec<PolyScalar>) -> Result<Self, TensorError> {
        let shape = Shape::new(vec![entries.len()])?;
        Tensor::new(shape, entries)
    }

    /// Matrix from rows; all rows must have the same length.
    pub fn matrix(rows: Vec<Vec<PolyScalar>>) -> Result<Self, TensorError> {
        let cols = rows.first().map_or(0, Vec::len);
        let shape = Shape::new(vec![rows.len(), cols])?;
        let cells: Vec<_> = rows.into_iter().flatten().collect();
        Tensor::new(shape, cells)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dims(&self) -> &[usize] {
        self.shape.dims()
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> &[PolyScalar] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<PolyScalar> {
        self.cells
    }

    /// Cell at a 1-based multi-index.
    pub fn get(&self, index: &[usize]) -> Option<&PolyScalar> {
        self.shape.offset(index).map(|o| &self.cells[o])
    }

    /// Cell at a 1-based multi-index; panics when out of range.
    pub fn at(&self, index: &[usize]) -> &PolyScalar {
        self.get(index)
            .unwrap_or_else(|| panic!("index {index:?} out of range for shape {}", self.shape))
    }

    pub(crate) fn at0(&self, index: &[usize]) -> &PolyScalar {
        &self.cells[self.shape.offset0(index)]
    }

    /// Pairs of 1-based multi-index and cell, row-major.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &PolyScalar)> {
        self.shape.indices().zip(&self.cells)
    }

    pub fn map<F>(&self, f: F) -> Tensor
    where
        F: FnMut(&PolyScalar) -> PolyScalar,
    {
        Tensor { shape: self.shape.clone(), cells: self.cells.iter().map(f).collect() }
    }

    /// Evaluates every cell; stops at the first error.
    pub fn try_eval<E, F>(&self, mut f: F) -> Result<Vec<Value>, E>
    where
        F: FnMut(&PolyScalar) -> Result<Value, E>,
    {
        self.cells.iter().map(&mut f).collect()
    }

    pub fn count_nonzero(&self) -> usize {
        self.cells.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor[{}]", self.shape)?;
        f.debug_map()
            .entries(self.iter().filter(|(_, c)| !c.is_zero()))
            .finish()
    }
}

/// Bijection on `{1..d}`, stored as its image sequence `(σ(1), ..., σ(d))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, TensorError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &x in &images {
            if x == 0 || x > d || seen[x - 1] {
                return Err(TensorError::InvalidPermutation(d));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(d: usize) -> Self {
        Permutation { images: (1..=d).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(k)` for 1-based `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (k, &img) in self.images.iter().enumerate() {
            inv[img - 1] = k + 1;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`, i.e. `k ↦ self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation { images: other.images.iter().map(|&k| self.apply(k)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_validation() {
        assert!(Shape::new(vec![]).is_err());
        assert!(Shape::new(vec![2, 0]).is_err());
        assert!(Shape::new(vec![usize::MAX, 3]).is_err());
        let s = Shape::new(vec![2, 3, 4]).unwrap();
        assert_eq!(s.cell_count(), 24);
        assert_eq!(s.strides(), vec![12, 4, 1]);
        assert_eq!(s.to_string(), "2 x 3 x 4");
    }

    #[test]
    fn row_major_last_index_fastest() {
        let s = Shape::new(vec![2, 3]).unwrap();
        let all: Vec<_> = s.indices().collect();
        assert_eq!(all[0], vec![1, 1]);
        assert_eq!(all[1], vec![1, 2]);
        assert_eq!(all[3], vec![2, 1]);
        assert_eq!(s.offset(&[2, 3]), Some(5));
        assert_eq!(s.offset(&[3, 1]), None);
        assert_eq!(s.offset(&[0, 1]), None);
    }

    #[test]
    fn cell_count_checked() {
        let s = Shape::cubical(2, 2).unwrap();
        assert!(matches!(
            Tensor::new(s, vec![PolyScalar::one(); 3]),
            Err(TensorError::CellCountMismatch { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn permutation_inverse_composes_to_identity() {
        let s = Permutation::new(vec![2, 3, 1]).unwrap();
        assert!(s.compose(&s.inverse()).is_identity());
        assert!(s.inverse().compose(&s).is_identity());
        assert!(!s.is_involution());
        assert!(Permutation::new(vec![2, 1, 3]).unwrap().is_involution());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
    }
}
