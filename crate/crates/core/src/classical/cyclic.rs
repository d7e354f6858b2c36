//! Cyclic codes from root sets and the BCH bound.

use std::sync::Arc;

use super::LinearCode;
use crate::field::{Elem, Extension, Field};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::{Error, Result};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Smallest `s >= 1` with `q^s = 1 mod n`.
fn multiplicative_order_mod(q: u64, n: u64) -> u32 {
    if n == 1 {
        return 1;
    }
    let mut s = 1;
    let mut acc = q % n;
    while acc != 1 {
        acc = acc * q % n;
        s += 1;
    }
    s
}

/// Closure of `exponents` under multiplication by `q` modulo `n`, sorted.
pub fn cyclotomic_closure(exponents: &[usize], q: u64, n: usize) -> Vec<usize> {
    let mut member = vec![false; n];
    for &e in exponents {
        let mut j = e % n;
        while !member[j] {
            member[j] = true;
            j = ((j as u64 * q) % n as u64) as usize;
        }
    }
    (0..n).filter(|&j| member[j]).collect()
}

/// A run of zeros `γ^{start + step i}`, `i < length`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BchRun {
    pub step: usize,
    pub start: usize,
    pub length: usize,
}

impl BchRun {
    pub fn designed_distance(&self) -> usize {
        self.length + 1
    }
}

/// Longest arithmetic run of zeros with step coprime to `n`. Ties go to the
/// smallest step, then the smallest start.
pub fn best_bch_run(zeros: &[usize], n: usize) -> BchRun {
    let mut is_zero = vec![false; n];
    for &z in zeros {
        is_zero[z % n] = true;
    }
    let mut best = BchRun { step: 1, start: 0, length: 0 };
    for step in (1..n.max(2)).filter(|&a| gcd(a, n) == 1) {
        for start in 0..n {
            let length = (0..n).take_while(|&i| is_zero[(start + step * i) % n]).count();
            if length > best.length {
                best = BchRun { step, start, length };
            }
        }
    }
    best
}

/// GF(q) together with a splitting field for `x^n - 1` and a fixed primitive
/// `n`-th root of unity `γ` in it.
#[derive(Clone, Debug)]
pub struct RootContext {
    ext: Extension,
    n: usize,
    gamma: Elem,
}

impl RootContext {
    pub fn new(field: &Arc<Field>, n: usize) -> Result<RootContext> {
        if n == 0 || gcd(n, field.characteristic() as usize) != 1 {
            return Err(Error::InvalidArgument(format!(
                "length {n} must be positive and coprime to p = {}",
                field.characteristic()
            )));
        }
        let s = multiplicative_order_mod(field.order() as u64, n as u64);
        let ext = Extension::new(field, s)?;
        let big = ext.big();
        let gamma = big.pow(big.primitive(), (big.order() as u64 - 1) / n as u64);
        Ok(RootContext { ext, n, gamma })
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    pub fn big(&self) -> &Arc<Field> {
        self.ext.big()
    }

    pub fn small(&self) -> &Arc<Field> {
        self.ext.small()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> Elem {
        self.gamma
    }

    /// `γ^e`.
    pub fn root(&self, e: usize) -> Elem {
        self.big().pow(self.gamma, (e % self.n) as u64)
    }

    /// `sum_i v_i γ^{e i}`, evaluated in the extension.
    pub fn eval_at(&self, v: &[Elem], e: usize) -> Elem {
        let big = self.big();
        let x = self.root(e);
        v.iter().rev().fold(Elem::ZERO, |acc, &c| big.add(big.mul(acc, x), self.ext.embed(c)))
    }

    /// Exponents `e` such that every codeword of `code` vanishes at `γ^e`.
    pub fn zeros_of(&self, code: &LinearCode) -> Vec<usize> {
        (0..self.n)
            .filter(|&e| (0..code.dim()).all(|r| self.eval_at(code.generator().row(r), e).is_zero()))
            .collect()
    }
}

/// A cyclic code `<g(x)>` of length `n` with `gcd(n, p) = 1`.
#[derive(Clone, Debug)]
pub struct CyclicCode {
    code: LinearCode,
    gpoly: Poly,
    zeros: Vec<usize>,
    run: BchRun,
    context: RootContext,
}

impl CyclicCode {
    /// Generator polynomial `prod (x - γ^j)` over the q-cyclotomic closure of
    /// `root_exponents`.
    pub fn from_roots(field: &Arc<Field>, n: usize, root_exponents: &[usize]) -> Result<CyclicCode> {
        let context = RootContext::new(field, n)?;
        let zeros = cyclotomic_closure(root_exponents, field.order() as u64, n);
        let mut requested: Vec<usize> = root_exponents.iter().map(|e| e % n).collect();
        requested.sort_unstable();
        requested.dedup();
        if requested != zeros {
            log::info!("root set {requested:?} extended to its cyclotomic closure {zeros:?}");
        }
        let big = context.big().clone();
        let mut g_big = Poly::one();
        for &j in &zeros {
            let factor = Poly::new(vec![big.neg(context.root(j)), Elem::ONE]);
            g_big = g_big.mul(&factor, &big);
        }
        let coeffs: Vec<Elem> = g_big
            .coeffs()
            .iter()
            .map(|&c| context.extension().restrict(c).expect("closed root sets give subfield coefficients"))
            .collect();
        let gpoly = Poly::new(coeffs);
        let deg = gpoly.degree().unwrap_or(0);
        let rows: Vec<Vec<Elem>> = (0..n - deg)
            .map(|shift| {
                let mut row = vec![Elem::ZERO; n];
                for (i, &c) in gpoly.coeffs().iter().enumerate() {
                    row[shift + i] = c;
                }
                row
            })
            .collect();
        let code = LinearCode::new(field, &Matrix::from_rows(&rows, n)?)?;
        let run = best_bch_run(&zeros, n);
        Ok(CyclicCode { code, gpoly, zeros, run, context })
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn generator_poly(&self) -> &Poly {
        &self.gpoly
    }

    /// The full (closed) zero set.
    pub fn zeros(&self) -> &[usize] {
        &self.zeros
    }

    pub fn bch_run(&self) -> BchRun {
        self.run
    }

    /// BCH bound: longest run of zeros plus one.
    pub fn designed_distance(&self) -> usize {
        self.run.designed_distance()
    }

    pub fn context(&self) -> &RootContext {
        &self.context
    }
}
