//! Berlekamp–Massey error-and-erasure decoding through the BCH bound, and the
//! punctured-code procedure built on it.

use std::sync::Arc;

use super::{DecodeResult, DecodeStatus, SyndromeDecoder};
use crate::classical::{best_bch_run, BchRun, LinearCode, PunctureExpansion, RootContext};
use crate::field::{Elem, Field};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::{Error, Result};

/// Decoder for any linear code whose zero set contains a run
/// `γ^s, γ^{s+a}, ..., γ^{s+(L-1)a}` with `gcd(a, n) = 1`. Corrects `t`
/// errors and `f` erasures whenever `2t + f <= L`.
#[derive(Clone, Debug)]
pub struct BchDecoder {
    field: Arc<Field>,
    ctx: RootContext,
    n: usize,
    checks: Matrix,
    run: BchRun,
    /// Row `j` maps a syndrome `H e` to the power sum `e(γ^{s+ja})`.
    to_power_sums: Matrix,
    /// `b` with `s = a b (mod n)`, so the power sums are `sum_i e_i X_i^{b+j}`
    /// for the locators `X_i = γ^{a i}`.
    offset: usize,
}

impl BchDecoder {
    /// `checks` are the rows `H` defining the syndrome `H e`; the code is
    /// their null space.
    pub fn new(field: &Arc<Field>, checks: &Matrix) -> Result<BchDecoder> {
        let n = checks.cols();
        let code = LinearCode::new(field, &checks.nullspace(field))?;
        let ctx = RootContext::new(field, n).map_err(|e| Error::IncompatibleDecoder(e.to_string()))?;
        let run = best_bch_run(&ctx.zeros_of(&code), n);
        if run.length == 0 {
            return Err(Error::IncompatibleDecoder("the code has no zero to build a BCH decoder from".into()));
        }
        let big = ctx.big().clone();
        let h_big = checks.map(|e| ctx.extension().embed(e));
        let mut rows = Vec::with_capacity(run.length);
        for j in 0..run.length {
            let e = run.start + run.step * j;
            let v: Vec<Elem> = (0..n).map(|i| ctx.root(e * i)).collect();
            let row = h_big
                .solve_left(&v, &big)
                .ok_or_else(|| Error::Singular("power-sum functional outside the check space".into()))?;
            rows.push(row);
        }
        let to_power_sums = Matrix::from_rows(&rows, checks.rows())?;
        let step_inv = (1..n.max(2)).find(|&x| x * run.step % n == 1 % n).unwrap_or(0);
        let offset = run.start * step_inv % n.max(1);
        Ok(BchDecoder { field: field.clone(), ctx, n, checks: checks.clone(), run, to_power_sums, offset })
    }

    pub fn run(&self) -> BchRun {
        self.run
    }

    pub fn designed_distance(&self) -> usize {
        self.run.designed_distance()
    }

    pub fn checks(&self) -> &Matrix {
        &self.checks
    }

    pub fn syndrome(&self, e: &[Elem]) -> Vec<Elem> {
        self.checks.apply(e, &self.field)
    }

    /// Decodes `H e` with the coordinates in `erasures` (0-based) treated as
    /// unreliable.
    pub fn decode_with_erasures(&self, syndrome: &[Elem], erasures: &[usize]) -> Result<DecodeResult> {
        if syndrome.len() != self.checks.rows() {
            return Err(Error::DimensionMismatch { expected: self.checks.rows(), got: syndrome.len() });
        }
        if let Some(&bad) = erasures.iter().find(|&&i| i >= self.n) {
            return Err(Error::InvalidArgument(format!("erasure position {bad} outside 0..{}", self.n)));
        }
        let n = self.n;
        if syndrome.iter().all(|s| s.is_zero()) {
            return Ok(DecodeResult::unique(vec![Elem::ZERO; n]));
        }
        let big = self.ctx.big();
        let len = self.run.length;
        let f = erasures.len();
        if f > len {
            return Ok(DecodeResult::failure(n));
        }
        let lifted: Vec<Elem> = syndrome.iter().map(|&s| self.ctx.extension().embed(s)).collect();
        let s_poly = Poly::new(self.to_power_sums.apply(&lifted, big));

        let gamma_a = big.pow(self.ctx.gamma(), self.run.step as u64);
        let locator = |i: usize| big.pow(gamma_a, i as u64);
        let mut erasure_poly = Poly::one();
        for &i in erasures {
            erasure_poly = erasure_poly.mul(&Poly::new(vec![Elem::ONE, big.neg(locator(i))]), big);
        }
        let forney = s_poly.mul(&erasure_poly, big).truncate(len);
        let tail: Vec<Elem> = (f..len).map(|j| forney.coeff(j)).collect();
        let (lambda, nu) = berlekamp_massey(&tail, big);
        if 2 * nu + f > len || lambda.degree() != Some(nu) {
            return Ok(DecodeResult::failure(n));
        }
        let psi = lambda.mul(&erasure_poly, big);
        let roots: Vec<usize> = (0..n).filter(|&i| psi.eval(big.inv(locator(i)).unwrap(), big).is_zero()).collect();
        if Some(roots.len()) != psi.degree() {
            return Ok(DecodeResult::failure(n));
        }
        let omega = s_poly.mul(&psi, big).truncate(len);
        let dpsi = psi.derivative(big);
        let mut estimate = vec![Elem::ZERO; n];
        for &i in &roots {
            let x = locator(i);
            let x_inv = big.inv(x).unwrap();
            let Some(denom) = big.inv(dpsi.eval(x_inv, big)) else {
                return Ok(DecodeResult::failure(n));
            };
            // X^{1-b}, with exponents taken modulo n since X^n = 1
            let shift = big.pow(x, ((1 + n - self.offset) % n) as u64);
            let value = big.neg(big.mul(big.mul(shift, omega.eval(x_inv, big)), denom));
            match self.ctx.extension().restrict(value) {
                Some(v) => estimate[i] = v,
                None => return Ok(DecodeResult::failure(n)),
            }
        }
        if self.syndrome(&estimate) != syndrome {
            return Ok(DecodeResult::failure(n));
        }
        Ok(DecodeResult::unique(estimate))
    }
}

impl SyndromeDecoder for BchDecoder {
    fn len(&self) -> usize {
        self.n
    }

    fn decode(&self, syndrome: &[Elem]) -> Result<DecodeResult> {
        self.decode_with_erasures(syndrome, &[])
    }
}

/// Shortest LFSR `(Λ, ν)` generating `seq`, with `Λ(0) = 1`.
fn berlekamp_massey(seq: &[Elem], f: &Field) -> (Poly, usize) {
    let mut c = Poly::one();
    let mut b = Poly::one();
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut last = Elem::ONE;
    for k in 0..seq.len() {
        let mut d = seq[k];
        for i in 1..=l {
            d = f.add(d, f.mul(c.coeff(i), seq[k - i]));
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let coef = f.div(d, last).unwrap();
        let update = c.sub(&Poly::monomial(coef, shift).mul(&b, f), f);
        if 2 * l <= k {
            b = c;
            l = k + 1 - l;
            last = d;
            shift = 1;
        } else {
            shift += 1;
        }
        c = update;
    }
    (c, l)
}

/// Wraps a decoder for check rows `H2` so it accepts syndromes taken with
/// respect to rows `H1` spanning the same space: `H2 = M H1`, so `H2 e = M (H1 e)`.
pub struct Rebased<D> {
    field: Arc<Field>,
    m: Matrix,
    inner: D,
}

impl<D: SyndromeDecoder> Rebased<D> {
    pub fn new(field: &Arc<Field>, from: &Matrix, to: &Matrix, inner: D) -> Result<Rebased<D>> {
        let mut rows = Vec::with_capacity(to.rows());
        for r in 0..to.rows() {
            rows.push(
                from.solve_left(to.row(r), field)
                    .ok_or_else(|| Error::IncompatibleDecoder("decoder check rows are not spanned by the code's".into()))?,
            );
        }
        Ok(Rebased { field: field.clone(), m: Matrix::from_rows(&rows, from.rows())?, inner })
    }
}

impl<D: SyndromeDecoder> SyndromeDecoder for Rebased<D> {
    fn len(&self) -> usize {
        self.inner.len()
    }

    fn decode(&self, syndrome: &[Elem]) -> Result<DecodeResult> {
        if syndrome.len() != self.m.cols() {
            return Err(Error::DimensionMismatch { expected: self.m.cols(), got: syndrome.len() });
        }
        self.inner.decode(&self.m.apply(syndrome, &self.field))
    }
}

/// Decodes the punctured code from child syndromes `s_i = <h_i, e>`: lifts them
/// to parent syndromes `s'` with `s_i = sum_j a_ij s'_j` (free variables zero),
/// decodes the parent with an erasure at the deleted coordinate and drops that
/// coordinate from the estimate.
pub fn punctured_decode(expansion: &PunctureExpansion, s: &[Elem], parent: &BchDecoder) -> Result<DecodeResult> {
    let field = &parent.field;
    let n = expansion.child_checks.cols();
    if s.len() != expansion.child_checks.rows() {
        return Err(Error::DimensionMismatch { expected: expansion.child_checks.rows(), got: s.len() });
    }
    let Some(lifted) = expansion.a.solve_right(s, field) else {
        return Ok(DecodeResult::failure(n));
    };
    let full = parent.decode_with_erasures(&lifted, &[expansion.position])?;
    if full.status == DecodeStatus::FailureDetected {
        return Ok(DecodeResult::failure(n));
    }
    let mut estimate = full.estimate;
    estimate.remove(expansion.position);
    if expansion.child_checks.apply(&estimate, field) != s {
        return Ok(DecodeResult::failure(n));
    }
    Ok(DecodeResult::unique(estimate))
}

/// [`punctured_decode`] packaged as a decoder for the child check rows.
pub struct PuncturedDecoder {
    expansion: PunctureExpansion,
    parent: BchDecoder,
}

impl PuncturedDecoder {
    /// `parent` is the unpunctured code; `position` is 0-based.
    pub fn new(parent: &LinearCode, position: usize) -> Result<PuncturedDecoder> {
        let (_, expansion) = crate::classical::puncture(parent, position)?;
        let decoder = BchDecoder::new(parent.field(), &expansion.parent_checks)?;
        Ok(PuncturedDecoder { expansion, parent: decoder })
    }

    pub fn expansion(&self) -> &PunctureExpansion {
        &self.expansion
    }

    pub fn parent(&self) -> &BchDecoder {
        &self.parent
    }
}

impl SyndromeDecoder for PuncturedDecoder {
    fn len(&self) -> usize {
        self.expansion.child_checks.cols()
    }

    fn decode(&self, syndrome: &[Elem]) -> Result<DecodeResult> {
        punctured_decode(&self.expansion, syndrome, &self.parent)
    }
}
