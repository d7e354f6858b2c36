//! Classical linear codes over GF(q).

mod cyclic;
mod puncture;

pub use cyclic::{best_bch_run, cyclotomic_closure, BchRun, CyclicCode, RootContext};
pub use puncture::{puncture, PunctureExpansion};

use std::sync::Arc;

use crate::exec::{fold_chunks, Execution};
use crate::field::{Elem, Field};
use crate::linalg::Matrix;
use crate::symplectic::hamming_weight;
use crate::{Error, Result};

/// Default cap on the number of codewords a distance computation may visit.
pub const DEFAULT_ENUM_BOUND: u128 = 1 << 24;

/// An `[n, r]` code held as a canonical (reduced echelon) generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    field: Arc<Field>,
    n: usize,
    gen: Matrix,
}

impl LinearCode {
    /// Spans the given rows; dependent rows are dropped.
    pub fn new(field: &Arc<Field>, generators: &Matrix) -> Result<LinearCode> {
        for r in 0..generators.rows() {
            for &e in generators.row(r) {
                field.check(e)?;
            }
        }
        Ok(LinearCode { field: field.clone(), n: generators.cols(), gen: generators.row_basis(field) })
    }

    pub fn from_rows(field: &Arc<Field>, n: usize, rows: &[Vec<Elem>]) -> Result<LinearCode> {
        Self::new(field, &Matrix::from_rows(rows, n)?)
    }

    pub fn zero(field: &Arc<Field>, n: usize) -> LinearCode {
        LinearCode { field: field.clone(), n, gen: Matrix::zeros(0, n) }
    }

    pub fn full(field: &Arc<Field>, n: usize) -> LinearCode {
        LinearCode { field: field.clone(), n, gen: Matrix::identity(n) }
    }

    /// The `[n, 1]` repetition code.
    pub fn repetition(field: &Arc<Field>, n: usize) -> LinearCode {
        LinearCode { field: field.clone(), n, gen: Matrix::from_rows(&[vec![Elem::ONE; n]], n).unwrap() }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    /// Orthogonal complement under the standard inner product.
    pub fn dual(&self) -> LinearCode {
        let ns = self.gen.nullspace(&self.field);
        LinearCode { field: self.field.clone(), n: self.n, gen: ns.row_basis(&self.field) }
    }

    /// Rows spanning the dual code.
    pub fn parity_check(&self) -> Matrix {
        self.dual().gen
    }

    /// Applies `x -> x^{p^j}` to every coordinate.
    pub fn conjugate(&self, j: u32) -> LinearCode {
        let f = &self.field;
        LinearCode { field: f.clone(), n: self.n, gen: self.gen.map(|e| f.frobenius(e, j)).row_basis(f) }
    }

    fn half_degree(&self) -> Result<u32> {
        let k = self.field.degree();
        if k % 2 != 0 {
            return Err(Error::InvalidArgument(format!("GF({}) is not an even-degree extension", self.field.order())));
        }
        Ok(k / 2)
    }

    /// `(C^{p^m})^⊥` for a code over GF(p^{2m}).
    pub fn hermitian_dual(&self) -> Result<LinearCode> {
        Ok(self.conjugate(self.half_degree()?).dual())
    }

    /// First pair of generator rows `(i, j)` with `<g_i, g_j^{p^m}> != 0`.
    pub fn hermitian_violation(&self) -> Result<Option<(usize, usize)>> {
        let m = self.half_degree()?;
        let f = &self.field;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let conj: Vec<Elem> = self.gen.row(j).iter().map(|&e| f.frobenius(e, m)).collect();
                if !f.dot(self.gen.row(i), &conj).is_zero() {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    /// Whether `C ⊆ (C^{p^m})^⊥`.
    pub fn is_hermitian_self_orthogonal(&self) -> bool {
        matches!(self.hermitian_violation(), Ok(None))
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        v.len() == self.n && self.gen.row_space_contains(v, &self.field)
    }

    pub fn contains_code(&self, other: &LinearCode) -> bool {
        (0..other.dim()).all(|r| self.contains(other.gen.row(r)))
    }

    pub fn encode(&self, message: &[Elem]) -> Vec<Elem> {
        self.gen.left_apply(message, &self.field)
    }

    /// Codeword with message digits taken from the base-q expansion of `index`.
    pub fn codeword(&self, index: u64) -> Vec<Elem> {
        let q = self.field.order() as u64;
        let mut idx = index;
        let mut word = vec![Elem::ZERO; self.n];
        for r in 0..self.dim() {
            let d = Elem((idx % q) as u32);
            idx /= q;
            if d.is_zero() {
                continue;
            }
            for (w, &g) in word.iter_mut().zip(self.gen.row(r)) {
                *w = self.field.add(*w, self.field.mul(d, g));
            }
        }
        word
    }

    pub fn size(&self) -> u128 {
        (self.field.order() as u128).saturating_pow(self.dim() as u32)
    }

    fn check_bound(&self, bound: u128) -> Result<u64> {
        let count = self.size();
        if count > bound || count > u64::MAX as u128 {
            return Err(Error::EnumerationBound { count, bound });
        }
        Ok(count as u64)
    }

    /// Exact minimum nonzero Hamming weight by enumerating all codewords.
    pub fn min_weight(&self, bound: u128, exec: Execution) -> Result<usize> {
        if self.dim() == 0 {
            return Err(Error::InvalidArgument("the zero code has no nonzero codewords".into()));
        }
        let total = self.check_bound(bound)?;
        let best = fold_chunks(
            exec,
            1..total,
            || usize::MAX,
            |acc, range| range.map(|i| hamming_weight(&self.codeword(i))).fold(acc, usize::min),
            usize::min,
        );
        Ok(best)
    }

    /// Minimum weight over `self \ sub`, `None` when `self ⊆ sub`.
    pub fn min_weight_diff(&self, sub: &LinearCode, bound: u128, exec: Execution) -> Result<Option<usize>> {
        if sub.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: sub.len() });
        }
        let total = self.check_bound(bound)?;
        let checks = sub.parity_check();
        let f = &self.field;
        let outside = |w: &[Elem]| (0..checks.rows()).any(|r| !f.dot(checks.row(r), w).is_zero());
        let best = fold_chunks(
            exec,
            1..total,
            || usize::MAX,
            |acc, range| {
                range.fold(acc, |acc, i| {
                    let w = self.codeword(i);
                    let wt = hamming_weight(&w);
                    if wt < acc && outside(&w) {
                        wt
                    } else {
                        acc
                    }
                })
            },
            usize::min,
        );
        Ok((best != usize::MAX).then_some(best))
    }
}
