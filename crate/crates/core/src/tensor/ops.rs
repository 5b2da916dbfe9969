use std::borrow::Borrow;

use super::{Permutation, Shape, Tensor, TensorError};
use crate::exec::{map_range, Execution};
use crate::scalar::PolyScalar;

/// Generalized Bhattacharya-Mesner product of `d` order-`d` tensors.
///
/// For the argument list `(T_1, ..., T_d)` the contracted index sits in slot
/// `k + 1` of `T_k` for `k < d` and in slot 1 of `T_d`:
///
/// ```text
/// out[i_1..i_d] = Σ_h T_d[h, i_2, .., i_d] · T_1[i_1, h, i_3, .., i_d] ⋯ T_{d-1}[i_1, .., i_{d-1}, h]
/// ```
///
/// With `d = 2` this is the matrix product `T_1 · T_2`. A single argument is
/// returned unchanged.
pub fn bmp<T: Borrow<Tensor> + Sync>(args: &[T]) -> Result<Tensor, TensorError> {
    bmp_with(args, Execution::default())
}

pub fn bmp_with<T: Borrow<Tensor> + Sync>(
    args: &[T],
    execution: Execution,
) -> Result<Tensor, TensorError> {
    let d = args.len();
    if d == 0 {
        return Err(TensorError::EmptyProduct);
    }
    for (k, t) in args.iter().enumerate() {
        let got = t.borrow().order();
        if got != d {
            return Err(TensorError::OrderMismatch { arg: k + 1, expected: d, got });
        }
    }
    if d == 1 {
        return Ok(args[0].borrow().clone());
    }

    let contracted = |k: usize| (k + 1) % d;
    // Slot t of argument t is never contracted, so it fixes n_t.
    let out_dims: Vec<usize> = (0..d).map(|t| args[t].borrow().dims()[t]).collect();
    let inner = args[0].borrow().dims()[1];
    for (k, t) in args.iter().enumerate() {
        for (slot, &got) in t.borrow().dims().iter().enumerate() {
            let expected = if slot == contracted(k) { inner } else { out_dims[slot] };
            if got != expected {
                return Err(TensorError::ShapeMismatch { arg: k + 1, slot: slot + 1, expected, got });
            }
        }
    }

    let out_shape = Shape::new(out_dims)?;
    let strides: Vec<Vec<usize>> = args.iter().map(|t| t.borrow().shape().strides()).collect();
    let cells = map_range(out_shape.cell_count(), execution, |offset| {
        let mut idx = vec![0; d];
        out_shape.unravel0(offset, &mut idx);
        let bases: Vec<usize> = (0..d)
            .map(|k| {
                let c = contracted(k);
                idx.iter()
                    .zip(&strides[k])
                    .enumerate()
                    .filter(|&(slot, _)| slot != c)
                    .map(|(_, (&x, &s))| x * s)
                    .sum()
            })
            .collect();
        let mut sum = PolyScalar::zero();
        let mut factors: Vec<&PolyScalar> = Vec::with_capacity(d);
        'summand: for h in 0..inner {
            factors.clear();
            for (k, t) in args.iter().enumerate() {
                let cell = &t.borrow().cells()[bases[k] + h * strides[k][contracted(k)]];
                if cell.is_zero() {
                    continue 'summand;
                }
                factors.push(cell);
            }
            sum.add_assign_ref(&PolyScalar::product(factors.iter().copied()));
        }
        sum
    });
    Ok(Tensor::from_parts(out_shape, cells))
}

/// Product written in summand order: factor `U_m` carries the contracted
/// index in slot `m`. Equal to `bmp([U_2, ..., U_d, U_1])`.
pub fn summand_product<T: Borrow<Tensor> + Sync>(factors: &[T]) -> Result<Tensor, TensorError> {
    summand_product_with(factors, Execution::default())
}

pub fn summand_product_with<T: Borrow<Tensor> + Sync>(
    factors: &[T],
    execution: Execution,
) -> Result<Tensor, TensorError> {
    if factors.is_empty() {
        return Err(TensorError::EmptyProduct);
    }
    let rotated: Vec<&Tensor> = factors[1..]
        .iter()
        .chain(std::iter::once(&factors[0]))
        .map(Borrow::borrow)
        .collect();
    bmp_with(&rotated, execution).map_err(|e| match e {
        // report argument numbers in the caller's order
        TensorError::OrderMismatch { arg, expected, got } => {
            TensorError::OrderMismatch { arg: arg % factors.len() + 1, expected, got }
        }
        TensorError::ShapeMismatch { arg, slot, expected, got } => {
            TensorError::ShapeMismatch { arg: arg % factors.len() + 1, slot, expected, got }
        }
        other => other,
    })
}

/// Cubical order-`d` tensor `I^{jk}` with a 1 exactly where the coordinates in
/// slots `j` and `k` agree.
pub fn identitary(d: usize, n: usize, j: usize, k: usize) -> Result<Tensor, TensorError> {
    if !(1 <= j && j < k && k <= d) {
        return Err(TensorError::SlotOutOfRange { j, k, order: d });
    }
    let shape = Shape::cubical(d, n)?;
    Ok(Tensor::from_fn0(shape, |x| {
        if x[j - 1] == x[k - 1] {
            PolyScalar::one()
        } else {
            PolyScalar::zero()
        }
    }))
}

/// Relabels the axes of `t`: `out[x_1..x_d] = t[x_σ(1), .., x_σ(d)]`.
///
/// Slot `σ(k)` of the result therefore has the dimension of slot `k` of `t`.
pub fn sigma_transpose(t: &Tensor, sigma: &Permutation) -> Result<Tensor, TensorError> {
    let d = t.order();
    if sigma.len() != d {
        return Err(TensorError::OrderMismatch { arg: 1, expected: sigma.len(), got: d });
    }
    let mut dims = vec![0; d];
    for k in 1..=d {
        dims[sigma.apply(k) - 1] = t.dims()[k - 1];
    }
    let shape = Shape::new(dims)?;
    let mut src = vec![0; d];
    Ok(Tensor::from_fn0(shape, |x| {
        for k in 1..=d {
            src[k - 1] = x[sigma.apply(k) - 1];
        }
        t.at0(&src).clone()
    }))
}

/// Blow (inflation): appends a slot tied to slot 1.
///
/// `out[x_1..x_{d+1}] = t[x_1..x_d]` when `x_1 = x_{d+1}`, zero otherwise.
pub fn blow(t: &Tensor) -> Tensor {
    let mut dims = t.dims().to_vec();
    dims.push(dims[0]);
    let d = t.order();
    let shape = Shape::new(dims).expect("blow of a valid shape");
    Tensor::from_fn0(shape, |x| {
        if x[0] == x[d] {
            t.at0(&x[..d]).clone()
        } else {
            PolyScalar::zero()
        }
    })
}

/// Forget (copy): inserts slots at the given 1-based result positions on which
/// the result does not depend.
///
/// `inserted_dims` lists the dimension of each inserted slot, in increasing
/// position order.
pub fn forget(
    t: &Tensor,
    positions: &[usize],
    result_order: usize,
    inserted_dims: &[usize],
) -> Result<Tensor, TensorError> {
    let expected = result_order.checked_sub(t.order()).ok_or(TensorError::CardinalityMismatch {
        expected: 0,
        got: positions.len(),
    })?;
    let mut sorted = positions.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != positions.len() || sorted.len() != expected {
        return Err(TensorError::CardinalityMismatch { expected, got: sorted.len() });
    }
    if inserted_dims.len() != expected {
        return Err(TensorError::CardinalityMismatch { expected, got: inserted_dims.len() });
    }
    if let Some(&position) = sorted.iter().find(|&&p| p == 0 || p > result_order) {
        return Err(TensorError::PositionOutOfRange { position, order: result_order });
    }

    let mut inserted = vec![false; result_order];
    for &p in &sorted {
        inserted[p - 1] = true;
    }
    let mut dims = Vec::with_capacity(result_order);
    let (mut kept, mut extra) = (t.dims().iter(), inserted_dims.iter());
    for &is_inserted in &inserted {
        let next = if is_inserted { extra.next() } else { kept.next() };
        dims.push(*next.expect("cardinality checked"));
    }
    let shape = Shape::new(dims)?;
    let mut src = Vec::with_capacity(t.order());
    Ok(Tensor::from_fn0(shape, |x| {
        src.clear();
        src.extend(x.iter().zip(&inserted).filter(|(_, &ins)| !ins).map(|(&v, _)| v));
        t.at0(&src).clone()
    }))
}

/// [`forget`] with every inserted slot of dimension `n`.
pub fn forget_uniform(
    t: &Tensor,
    positions: &[usize],
    result_order: usize,
    n: usize,
) -> Result<Tensor, TensorError> {
    forget(t, positions, result_order, &vec![n; positions.len()])
}

/// Tensor product of order-1 tensors.
pub fn outer_product<T: Borrow<Tensor>>(vectors: &[T]) -> Result<Tensor, TensorError> {
    if vectors.is_empty() {
        return Err(TensorError::EmptyProduct);
    }
    for (k, v) in vectors.iter().enumerate() {
        let got = v.borrow().order();
        if got != 1 {
            return Err(TensorError::OrderMismatch { arg: k + 1, expected: 1, got });
        }
    }
    let shape = Shape::new(vectors.iter().map(|v| v.borrow().dims()[0]).collect())?;
    Ok(Tensor::from_fn0(shape, |x| {
        PolyScalar::product(x.iter().zip(vectors).map(|(&i, v)| &v.borrow().cells()[i]))
    }))
}
