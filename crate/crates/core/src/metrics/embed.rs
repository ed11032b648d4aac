use crate::matrix::Matrix;
use crate::{Error, Result};

/// Rows `[u(t), u(t-1), …, u(t-k)]` for `t = k..len`.
pub fn delay_embed(u: &[f64], k: usize) -> Result<Matrix> {
    if k >= u.len() {
        return Err(Error::param(
            "k",
            alloc::format!("delay {k} needs more than {} samples", u.len()),
        ));
    }
    let rows = u.len() - k;
    let mut m = Matrix::zeros(rows, k + 1);
    for r in 0..rows {
        let t = r + k;
        for tau in 0..=k {
            m.set(r, tau, u[t - tau]);
        }
    }
    Ok(m)
}
