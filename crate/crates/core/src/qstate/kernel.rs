//! Index-level kernels shared by pure states and density operators.

use num_traits::Zero;

use crate::linalg::Mat;
use crate::scalar::{Real, C};

use super::layout::SystemLayout;

/// `(op ⊗ I_rest) · x` where `op` acts on the subsystems at `positions`
/// (in that order) and `x` has one row per joint index.
pub(crate) fn left_apply<T: Real>(layout: &SystemLayout, positions: &[usize], op: &Mat<T>, x: &Mat<T>) -> Mat<T> {
    if positions.iter().copied().eq(0..layout.len()) {
        return op * x;
    }
    let split = layout.split_indices(positions);
    debug_assert_eq!(op.nrows(), split.sel_dim);
    let rows = x.nrows();
    let mut out = Mat::zeros(rows, x.ncols());
    for col in 0..x.ncols() {
        let src = x.column(col);
        for row in 0..rows {
            let s = split.selected[row];
            let base = split.remaining[row];
            let mut acc = C::zero();
            for a in 0..split.sel_dim {
                let k = op[(s, a)];
                if k.is_zero() {
                    continue;
                }
                acc += k * src[split.compose[a * split.rest_dim + base]];
            }
            out[(row, col)] = acc;
        }
    }
    out
}

/// `(op ⊗ I) ρ (op ⊗ I)†`.
pub(crate) fn conjugate<T: Real>(layout: &SystemLayout, positions: &[usize], op: &Mat<T>, rho: &Mat<T>) -> Mat<T> {
    if positions.iter().copied().eq(0..layout.len()) {
        return op * rho * op.adjoint();
    }
    let half = left_apply(layout, positions, op, rho);
    left_apply(layout, positions, op, &half.adjoint()).adjoint()
}

/// Reindexes rows (and columns, for square inputs when `both` is set) by `map`:
/// new index `y` reads old index `map[y]`.
pub(crate) fn reindex<T: Real>(x: &Mat<T>, map: &[usize], both: bool) -> Mat<T> {
    if both {
        Mat::from_fn(x.nrows(), x.ncols(), |i, j| x[(map[i], map[j])])
    } else {
        Mat::from_fn(x.nrows(), x.ncols(), |i, j| x[(map[i], j)])
    }
}

/// Partial trace keeping `keep` positions (order given) of a square matrix.
pub(crate) fn trace_out<T: Real>(layout: &SystemLayout, keep: &[usize], rho: &Mat<T>) -> Mat<T> {
    let split = layout.split_indices(keep);
    let mut out = Mat::zeros(split.sel_dim, split.sel_dim);
    for r in 0..split.rest_dim {
        for i in 0..split.sel_dim {
            let x = split.compose[i * split.rest_dim + r];
            for j in 0..split.sel_dim {
                let y = split.compose[j * split.rest_dim + r];
                out[(i, j)] += rho[(x, y)];
            }
        }
    }
    out
}
