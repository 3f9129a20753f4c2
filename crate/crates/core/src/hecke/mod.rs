//! The Iwahori-Hecke algebra `H_n` in the standard basis.

mod context;
mod element;
mod group_algebra;

pub use context::{AlgebraContext, Caps};
pub use element::HeckeElement;
pub use group_algebra::{group_algebra_mul, specialize_q1, GroupAlgebraElement};

use crate::error::Result;
use crate::linalg::Matrix;
use crate::perm::Permutation;

/// Matrix of `g -> h g` in the basis `{T_w}` (lexicographic order of `w`).
/// Column `j` holds the coordinates of `h T_{w_j}`.
pub fn left_mult_matrix(ctx: &AlgebraContext, h: &HeckeElement) -> Result<Matrix> {
    ctx.check_gamma("left multiplication matrix")?;
    crate::error::same_degree(ctx.n(), h.degree())?;
    let basis = Permutation::all(ctx.n());
    let columns = ctx.exec().map(&basis, |w| h.mul_basis_right(w));
    let index: std::collections::HashMap<&Permutation, usize> = basis.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let mut m = Matrix::zeros(basis.len(), basis.len());
    for (j, col) in columns.iter().enumerate() {
        for (w, c) in col.terms() {
            m.set(index[w], j, c.clone());
        }
    }
    Ok(m)
}
