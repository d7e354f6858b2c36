//! Coset-leader tables, built by enumerating error patterns in order of weight.

use std::sync::Arc;

use super::{DecodeResult, SyndromeDecoder};
use crate::field::{Elem, Field};
use crate::linalg::Matrix;
use crate::symplectic::SymplecticVector;
use crate::{Error, Result};

/// Default cap on the number of syndromes a table may hold.
pub const DEFAULT_TABLE_BOUND: u128 = 1 << 22;

/// Leaders over `n` positions with local alphabet `0..local`; the syndrome of
/// local value `v` at position `i` is `contrib[i][v]`, and syndromes add in
/// `syn_field`.
#[derive(Clone, Debug)]
struct Leaders {
    syn_field: Arc<Field>,
    syn_len: usize,
    leaders: Vec<Option<Box<[u32]>>>,
}

impl Leaders {
    fn index(&self, s: &[Elem]) -> Option<usize> {
        if s.len() != self.syn_len {
            return None;
        }
        let q = self.syn_field.order() as usize;
        let mut idx = 0usize;
        for e in s.iter().rev() {
            if e.0 as usize >= q {
                return None;
            }
            idx = idx * q + e.0 as usize;
        }
        Some(idx)
    }

    fn build(
        syn_field: &Arc<Field>,
        n: usize,
        local: u32,
        contrib: &[Vec<Vec<Elem>>],
        syn_len: usize,
        bound: u128,
        max_weight: usize,
    ) -> Result<Leaders> {
        let q = syn_field.order() as u128;
        let size = q.checked_pow(syn_len as u32).unwrap_or(u128::MAX);
        if size > bound {
            return Err(Error::EnumerationBound { count: size, bound });
        }
        let mut table = Leaders { syn_field: syn_field.clone(), syn_len, leaders: vec![None; size as usize] };
        let mut weight_of = vec![usize::MAX; size as usize];
        let zero = vec![0u32; n];
        table.leaders[0] = Some(zero.into_boxed_slice());
        weight_of[0] = 0;
        let mut filled = 1usize;
        for w in 1..=max_weight.min(n) {
            if filled == size as usize {
                break;
            }
            let mut support: Vec<usize> = (0..w).collect();
            loop {
                let mut values = vec![1u32; w];
                loop {
                    let mut syn = vec![Elem::ZERO; syn_len];
                    for (&pos, &v) in support.iter().zip(&values) {
                        for (s, &c) in syn.iter_mut().zip(&contrib[pos][v as usize]) {
                            *s = syn_field.add(*s, c);
                        }
                    }
                    let idx = table.index(&syn).expect("syndrome in range");
                    let mut candidate = vec![0u32; n];
                    for (&pos, &v) in support.iter().zip(&values) {
                        candidate[pos] = v;
                    }
                    match &table.leaders[idx] {
                        None => {
                            table.leaders[idx] = Some(candidate.into_boxed_slice());
                            weight_of[idx] = w;
                            filled += 1;
                        }
                        Some(old) if weight_of[idx] == w && candidate.as_slice() < &old[..] => {
                            table.leaders[idx] = Some(candidate.into_boxed_slice());
                        }
                        Some(_) => {}
                    }
                    if !odometer(&mut values, local) {
                        break;
                    }
                }
                if !next_combination(&mut support, n) {
                    break;
                }
            }
        }
        Ok(table)
    }

    fn lookup(&self, s: &[Elem]) -> Option<&[u32]> {
        self.index(s).and_then(|i| self.leaders[i].as_deref())
    }

    fn filled(&self) -> usize {
        self.leaders.iter().filter(|l| l.is_some()).count()
    }
}

/// Advances `values` (entries in `1..local`) like a counter; false on wrap.
fn odometer(values: &mut [u32], local: u32) -> bool {
    for v in values.iter_mut().rev() {
        if *v + 1 < local {
            *v += 1;
            return true;
        }
        *v = 1;
    }
    false
}

/// Next `w`-subset of `0..n` in lexicographic order; false after the last.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let w = c.len();
    for i in (0..w).rev() {
        if c[i] < n - w + i {
            c[i] += 1;
            for j in i + 1..w {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Minimum-Hamming-weight decoding for the code with check rows `H`; ties go
/// to the lexicographically least vector.
#[derive(Clone, Debug)]
pub struct CosetLeaderTable {
    field: Arc<Field>,
    n: usize,
    checks: Matrix,
    table: Leaders,
}

impl CosetLeaderTable {
    pub fn new(field: &Arc<Field>, checks: &Matrix, bound: u128) -> Result<CosetLeaderTable> {
        Self::with_max_weight(field, checks, bound, checks.cols())
    }

    /// Only enumerates patterns of weight `<= max_weight`; other syndromes
    /// decode as failure-detected.
    pub fn with_max_weight(field: &Arc<Field>, checks: &Matrix, bound: u128, max_weight: usize) -> Result<CosetLeaderTable> {
        let n = checks.cols();
        let q = field.order();
        let contrib: Vec<Vec<Vec<Elem>>> = (0..n)
            .map(|i| {
                (0..q)
                    .map(|v| (0..checks.rows()).map(|r| field.mul(checks.get(r, i), Elem(v))).collect())
                    .collect()
            })
            .collect();
        let table = Leaders::build(field, n, q, &contrib, checks.rows(), bound, max_weight)?;
        log::debug!("coset table: {} of {} syndromes filled", table.filled(), table.leaders.len());
        Ok(CosetLeaderTable { field: field.clone(), n, checks: checks.clone(), table })
    }

    pub fn checks(&self) -> &Matrix {
        &self.checks
    }

    pub fn syndrome(&self, e: &[Elem]) -> Vec<Elem> {
        self.checks.apply(e, &self.field)
    }
}

impl SyndromeDecoder for CosetLeaderTable {
    fn len(&self) -> usize {
        self.n
    }

    fn decode(&self, syndrome: &[Elem]) -> Result<DecodeResult> {
        if syndrome.len() != self.checks.rows() {
            return Err(Error::DimensionMismatch { expected: self.checks.rows(), got: syndrome.len() });
        }
        Ok(match self.table.lookup(syndrome) {
            Some(l) => DecodeResult::unique(l.iter().map(|&v| Elem(v)).collect()),
            None => DecodeResult::failure(self.n),
        })
    }
}

/// Coset leaders of minimum symplectic weight, indexed directly by the
/// measured syndrome `(alt(g_i, e))_i`. Works for any stabilizer code.
#[derive(Clone, Debug)]
pub struct SymplecticTable {
    p: u32,
    m: usize,
    n: usize,
    table: Leaders,
}

/// The block `(a_1..a_m, b_1..b_m)` whose base-`p` digits spell `v`.
pub fn block_from_index(p: u32, m: usize, mut v: u32) -> Vec<Elem> {
    (0..2 * m)
        .map(|_| {
            let d = v % p;
            v /= p;
            Elem(d)
        })
        .collect()
}

impl SymplecticTable {
    pub fn new(p: u32, m: usize, n: usize, generators: &[SymplecticVector], bound: u128) -> Result<SymplecticTable> {
        let fp = Field::prime(p)?;
        let local = p.checked_pow(2 * m as u32).ok_or(Error::EnumerationBound { count: u128::MAX, bound })?;
        let contrib: Vec<Vec<Vec<Elem>>> = (0..n)
            .map(|i| {
                (0..local)
                    .map(|v| {
                        let mut e = SymplecticVector::zero(p, m, n);
                        e.set_block(i, &block_from_index(p, m, v));
                        generators.iter().map(|g| Elem(g.pair(&e))).collect()
                    })
                    .collect()
            })
            .collect();
        let table = Leaders::build(&fp, n, local, &contrib, generators.len(), bound, n)?;
        Ok(SymplecticTable { p, m, n, table })
    }

    /// The leader for a measured syndrome, `None` if no pattern produces it.
    pub fn decode(&self, raw: &[Elem]) -> Option<SymplecticVector> {
        let leader = self.table.lookup(raw)?;
        let mut e = SymplecticVector::zero(self.p, self.m, self.n);
        for (i, &v) in leader.iter().enumerate() {
            e.set_block(i, &block_from_index(self.p, self.m, v));
        }
        Some(e)
    }
}
