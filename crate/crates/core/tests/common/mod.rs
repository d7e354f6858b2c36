#![allow(dead_code)]

use std::sync::Arc;

use qstab::classical::LinearCode;
use qstab::format::parse_digits;
use qstab::stabilizer::{BuildOptions, StabilizerCode};
use qstab::symplectic::SymplecticVector;
use qstab::{Elem, Field};

pub fn elems(v: &[u32]) -> Vec<Elem> {
    v.iter().map(|&x| Elem(x)).collect()
}

pub fn code_from_digits(p: u32, m: u32, rows: &[&str]) -> StabilizerCode {
    let f = Field::new(p, 2 * m).unwrap();
    let n = rows.first().map_or(0, |r| r.len());
    let rows: Vec<Vec<Elem>> = rows.iter().map(|r| parse_digits(r, f.order()).unwrap()).collect();
    let c = LinearCode::from_rows(&f, n, &rows).unwrap();
    StabilizerCode::from_classical_code(&c, &BuildOptions::default()).unwrap()
}

/// The [[5,1,3]]_2 code from a Hermitian self-orthogonal [5,2]_4 code.
pub fn five_qubit() -> StabilizerCode {
    code_from_digits(2, 1, &["12210", "01221"])
}

/// A [[4,0,3]]_{2^2} code from GF(16).
pub fn f16_four() -> StabilizerCode {
    code_from_digits(2, 2, &["10d5", "014b"])
}

/// Product in GF(p)[x]/(modulus) by schoolbook multiplication and long division.
pub fn naive_mul(p: u32, modulus: &[u32], a: u32, b: u32) -> u32 {
    let k = modulus.len() - 1;
    let digits = |mut v: u32| {
        (0..k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d as u64
            })
            .collect::<Vec<u64>>()
    };
    let (x, y) = (digits(a), digits(b));
    let p64 = p as u64;
    let mut prod = vec![0u64; 2 * k];
    for i in 0..k {
        for j in 0..k {
            prod[i + j] = (prod[i + j] + x[i] * y[j]) % p64;
        }
    }
    for d in (k..2 * k).rev() {
        let c = prod[d];
        for i in 0..=k {
            prod[d - k + i] = (prod[d - k + i] + p64 * p64 - c * modulus[i] as u64) % p64;
        }
    }
    prod[..k].iter().rev().fold(0u64, |acc, &c| acc * p64 + c) as u32
}

/// Remainder of `a` modulo a monic `b` over F_p, coefficients constant term first.
fn poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * bi % p) % p;
        }
        r.pop();
    }
    r
}

/// Irreducibility by trial division by every monic polynomial of degree `1..=deg/2`.
pub fn brute_irreducible(p: u32, poly: &[u32]) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut divisor: Vec<u32> = (0..d).map(|i| code / p.pow(i as u32) % p).collect();
            divisor.push(1);
            if poly_rem(p, poly, &divisor).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Every vector of `F_p^len`, in counting order.
pub fn all_vectors(p: u32, len: usize) -> impl Iterator<Item = Vec<Elem>> {
    let total = (p as u64).pow(len as u32);
    (0..total).map(move |mut v| {
        (0..len)
            .map(|_| {
                let d = (v % p as u64) as u32;
                v /= p as u64;
                Elem(d)
            })
            .collect()
    })
}

/// Every symplectic vector on `n` qudits with at most `t` nonzero blocks,
/// by weight, then support, then block values.
pub fn errors_up_to_weight(p: u32, m: usize, n: usize, t: usize) -> Vec<SymplecticVector> {
    let blocks: Vec<Vec<Elem>> = all_vectors(p, 2 * m).skip(1).collect();
    let mut out = vec![SymplecticVector::zero(p, m, n)];
    for w in 1..=t.min(n) {
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            let mut choice = vec![0usize; w];
            loop {
                let mut e = SymplecticVector::zero(p, m, n);
                for (&pos, &b) in support.iter().zip(&choice) {
                    e.set_block(pos, &blocks[b]);
                }
                out.push(e);
                let Some(i) = (0..w).rev().find(|&i| choice[i] + 1 < blocks.len()) else { break };
                choice[i] += 1;
                choice[i + 1..].iter_mut().for_each(|c| *c = 0);
            }
            let Some(i) = (0..w).rev().find(|&i| support[i] < n - w + i) else { break };
            support[i] += 1;
            for j in i + 1..w {
                support[j] = support[j - 1] + 1;
            }
        }
    }
    out
}

/// `<g_i^{p^m}, c>` computed straight from the classical generator rows.
pub fn direct_syndrome(code: &StabilizerCode, c: &[Elem]) -> Vec<Elem> {
    let origin = code.origin().unwrap();
    let f: &Arc<Field> = origin.field();
    let m = code.m() as u32;
    let g = origin.code.generator();
    (0..g.rows())
        .map(|r| {
            g.row(r)
                .iter()
                .zip(c)
                .fold(Elem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(f.frobenius(x, m), y)))
        })
        .collect()
}

/// All codewords of the code spanned by `rows` over the field.
pub fn span(f: &Field, rows: &[Vec<Elem>], n: usize) -> Vec<Vec<Elem>> {
    let mut words = vec![vec![Elem::ZERO; n]];
    for row in rows {
        let mut next = Vec::with_capacity(words.len() * f.order() as usize);
        for w in &words {
            for c in f.elements() {
                next.push(w.iter().zip(row).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect());
            }
        }
        words = next;
    }
    words.sort();
    words.dedup();
    words
}
