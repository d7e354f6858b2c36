//! Puncturing and the expansion `0h_i = sum_j a_ij h'_j` of child checks in
//! terms of parent checks.

use super::LinearCode;
use crate::field::Elem;
use crate::linalg::Matrix;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct PunctureExpansion {
    /// Deleted coordinate (0-based).
    pub position: usize,
    /// Parent check rows `h'_1..h'_r` (length `n`).
    pub parent_checks: Matrix,
    /// Child check rows `h_1..h_{r'}` (length `n - 1`).
    pub child_checks: Matrix,
    /// `r' x r` coefficients with `0h_i = sum_j a_ij h'_j`.
    pub a: Matrix,
}

impl PunctureExpansion {
    /// `h_i` with a zero inserted at the punctured position.
    pub fn lifted_child_row(&self, i: usize) -> Vec<Elem> {
        let mut row = self.child_checks.row(i).to_vec();
        row.insert(self.position, Elem::ZERO);
        row
    }

    /// Re-checks the expansion identity entry by entry.
    pub fn verify(&self, field: &crate::field::Field) -> bool {
        let combined = self.a.mul(&self.parent_checks, field);
        (0..self.child_checks.rows()).all(|i| combined.row(i) == self.lifted_child_row(i).as_slice())
    }
}

/// Deletes coordinate `position` (0-based) from every codeword of `parent`.
pub fn puncture(parent: &LinearCode, position: usize) -> Result<(LinearCode, PunctureExpansion)> {
    let n = parent.len();
    if position >= n {
        return Err(Error::InvalidArgument(format!("position {position} outside 0..{n}")));
    }
    let field = parent.field();
    let rows: Vec<Vec<Elem>> = parent
        .generator()
        .row_vecs()
        .into_iter()
        .map(|mut r| {
            r.remove(position);
            r
        })
        .collect();
    let child = LinearCode::from_rows(field, n - 1, &rows)?;
    if child.dim() < parent.dim() {
        log::info!("puncturing position {position} drops the dimension from {} to {}", parent.dim(), child.dim());
    }
    let parent_checks = parent.parity_check();
    let child_checks = child.parity_check();
    let mut a = Matrix::zeros(child_checks.rows(), parent_checks.rows());
    let mut expansion = PunctureExpansion { position, parent_checks, child_checks, a: a.clone() };
    for i in 0..expansion.child_checks.rows() {
        let target = expansion.lifted_child_row(i);
        let coeffs = expansion
            .parent_checks
            .solve_left(&target, field)
            .ok_or_else(|| Error::Singular("lifted child check is outside the parent dual".into()))?;
        for (j, c) in coeffs.into_iter().enumerate() {
            a.set(i, j, c);
        }
    }
    expansion.a = a;
    debug_assert!(expansion.verify(field));
    Ok((child, expansion))
}
