//! The symplectic picture `F_p^{2mn}`.
//!
//! A [`SymplecticVector`] stores `(a|b)` with `a = (a_{1,1}, ..., a_{1,m}, a_{2,1}, ..., a_{n,m})`
//! followed by `b` in the same order, so qudit `i` owns the `2m` entries
//! `a_{i,*}` and `b_{i,*}`.
//!
//! Two maps identify classical vectors with symplectic ones:
//! [`PhiMap`] (`m = 1`, `c = ω a + ω^p b`) and [`SymplecticStructure`]
//! (any `m`, normal-basis coordinates followed by `D^{-1}`).

use std::fmt;
use std::sync::Arc;

use crate::field::{Elem, Field, NormalBasis};
use crate::format::{format_digits, parse_digits};
use crate::linalg::Matrix;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymplecticVector {
    p: u32,
    m: usize,
    n: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for SymplecticVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymplecticVector({self})")
    }
}

impl fmt::Display for SymplecticVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", format_digits(self.a(), self.p), format_digits(self.b(), self.p))
    }
}

impl SymplecticVector {
    pub fn zero(p: u32, m: usize, n: usize) -> Self {
        SymplecticVector { p, m, n, data: vec![Elem::ZERO; 2 * m * n] }
    }

    pub fn from_parts(p: u32, m: usize, n: usize, a: &[Elem], b: &[Elem]) -> Result<Self> {
        for part in [a, b] {
            if part.len() != m * n {
                return Err(Error::DimensionMismatch { expected: m * n, got: part.len() });
            }
            if let Some(bad) = part.iter().find(|e| e.0 >= p) {
                return Err(Error::ForeignElement { value: bad.0, q: p });
            }
        }
        let mut data = a.to_vec();
        data.extend_from_slice(b);
        Ok(SymplecticVector { p, m, n, data })
    }

    /// Builds from the concatenation `(a|b)`.
    pub fn from_concat(p: u32, m: usize, n: usize, ab: &[Elem]) -> Result<Self> {
        if ab.len() != 2 * m * n {
            return Err(Error::DimensionMismatch { expected: 2 * m * n, got: ab.len() });
        }
        Self::from_parts(p, m, n, &ab[..m * n], &ab[m * n..])
    }

    /// Parses the `a|b` digit-string form.
    pub fn parse(s: &str, p: u32, m: usize, n: usize) -> Result<Self> {
        let (a, b) = s.split_once('|').ok_or_else(|| Error::InvalidArgument(format!("missing '|' in {s:?}")))?;
        Self::from_parts(p, m, n, &parse_digits(a, p)?, &parse_digits(b, p)?)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[Elem] {
        &self.data[..self.m * self.n]
    }

    pub fn b(&self) -> &[Elem] {
        &self.data[self.m * self.n..]
    }

    /// `(a|b)` as one slice of length `2mn`.
    pub fn as_slice(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// The `2m` entries `(a_{i,1..m}, b_{i,1..m})` of qudit `i`.
    pub fn block(&self, i: usize) -> Vec<Elem> {
        let mn = self.m * self.n;
        let mut out = self.data[i * self.m..(i + 1) * self.m].to_vec();
        out.extend_from_slice(&self.data[mn + i * self.m..mn + (i + 1) * self.m]);
        out
    }

    pub fn set_block(&mut self, i: usize, block: &[Elem]) {
        assert_eq!(block.len(), 2 * self.m);
        let mn = self.m * self.n;
        let m = self.m;
        self.data[i * m..(i + 1) * m].copy_from_slice(&block[..m]);
        self.data[mn + i * m..mn + (i + 1) * m].copy_from_slice(&block[m..]);
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.m != other.m || self.n != other.n {
            return Err(Error::DimensionMismatch { expected: 2 * self.m * self.n, got: 2 * other.m * other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(self.same_shape(other).is_ok());
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(x, y)| Elem((x.0 + y.0) % p)).collect();
        SymplecticVector { data, ..*self }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert!(self.same_shape(other).is_ok());
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(x, y)| Elem((x.0 + p - y.0) % p)).collect();
        SymplecticVector { data, ..*self }
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.p as u64;
        let data = self.data.iter().map(|x| Elem((x.0 as u64 * c as u64 % p) as u32)).collect();
        SymplecticVector { data, ..*self }
    }

    /// Number of qudits whose `2m` entries are not all zero.
    pub fn weight(&self) -> usize {
        sym_weight(self)
    }

    /// Alternating product with `other`; panics on shape mismatch.
    pub fn pair(&self, other: &Self) -> u32 {
        alt_inner(self, other).expect("vectors of the same shape").0
    }
}

/// `<a, b'> - <a', b>` modulo `p`.
pub fn alt_inner(u: &SymplecticVector, v: &SymplecticVector) -> Result<Elem> {
    u.same_shape(v)?;
    let p = u.p as u64;
    let mut plus = 0u64;
    let mut minus = 0u64;
    for (x, y) in u.a().iter().zip(v.b()) {
        plus += x.0 as u64 * y.0 as u64;
    }
    for (x, y) in v.a().iter().zip(u.b()) {
        minus += x.0 as u64 * y.0 as u64;
    }
    Ok(Elem(((plus % p + p - minus % p) % p) as u32))
}

pub fn sym_weight(u: &SymplecticVector) -> usize {
    let (m, mn) = (u.m, u.m * u.n);
    (0..u.n)
        .filter(|&i| {
            u.data[i * m..(i + 1) * m].iter().any(|e| !e.is_zero())
                || u.data[mn + i * m..mn + (i + 1) * m].iter().any(|e| !e.is_zero())
        })
        .count()
}

/// Hamming weight of a classical vector.
pub fn hamming_weight(c: &[Elem]) -> usize {
    c.iter().filter(|e| !e.is_zero()).count()
}

/// The raw value `<c, d^p> - <c^p, d>` over GF(p^2).
pub fn trace_inner(field: &Field, c: &[Elem], d: &[Elem]) -> Result<Elem> {
    if c.len() != d.len() {
        return Err(Error::DimensionMismatch { expected: c.len(), got: d.len() });
    }
    let lhs = c.iter().zip(d).fold(Elem::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, field.frobenius(y, 1))));
    let rhs = c.iter().zip(d).fold(Elem::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(field.frobenius(x, 1), y)));
    Ok(field.sub(lhs, rhs))
}

/// `φ(a|b) = ω a + ω^p b` between `F_p^{2n}` and `GF(p^2)^n`.
#[derive(Clone, Debug)]
pub struct PhiMap {
    field: Arc<Field>,
    omega: Elem,
    omega_p: Elem,
    /// Coordinates in `{ω, ω^p}` from power-basis coefficients.
    to_pair: Matrix,
    prime: Arc<Field>,
}

impl PhiMap {
    /// Accepts any `ω` with `ω, ω^p` independent over F_p; a primitive element
    /// always qualifies.
    pub fn new(field: &Arc<Field>, omega: Elem) -> Result<PhiMap> {
        if field.degree() != 2 {
            return Err(Error::InvalidArgument("φ is defined over GF(p^2)".into()));
        }
        field.check(omega)?;
        let prime = Field::prime(field.characteristic())?;
        let omega_p = field.frobenius(omega, 1);
        let rows: Vec<Vec<Elem>> =
            [omega, omega_p].iter().map(|&e| field.to_coeffs(e).into_iter().map(Elem).collect()).collect();
        let to_pair = Matrix::from_rows(&rows, 2)?
            .inverse(&prime)
            .map_err(|_| Error::InvalidArgument(format!("ω = {omega} and ω^p are dependent over F_p")))?;
        Ok(PhiMap { field: field.clone(), omega, omega_p, to_pair, prime })
    }

    pub fn with_primitive(field: &Arc<Field>) -> Result<PhiMap> {
        Self::new(field, field.primitive())
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn omega(&self) -> Elem {
        self.omega
    }

    /// `ω^2 - ω^{2p}`, the factor relating the trace form to the alternating form.
    pub fn form_scale(&self) -> Elem {
        let f = &self.field;
        f.sub(f.mul(self.omega, self.omega), f.mul(self.omega_p, self.omega_p))
    }

    pub fn phi(&self, u: &SymplecticVector) -> Result<Vec<Elem>> {
        if u.m != 1 {
            return Err(Error::InvalidArgument("φ needs m = 1".into()));
        }
        let f = &self.field;
        Ok(u.a().iter().zip(u.b()).map(|(&a, &b)| f.add(f.mul(self.omega, a), f.mul(self.omega_p, b))).collect())
    }

    pub fn phi_inv(&self, c: &[Elem]) -> SymplecticVector {
        let p = self.field.characteristic();
        let mut a = Vec::with_capacity(c.len());
        let mut b = Vec::with_capacity(c.len());
        for &x in c {
            let coeffs: Vec<Elem> = self.field.to_coeffs(x).into_iter().map(Elem).collect();
            let pair = self.to_pair.left_apply(&coeffs, &self.prime);
            a.push(pair[0]);
            b.push(pair[1]);
        }
        SymplecticVector::from_parts(p, 1, c.len(), &a, &b).expect("entries reduced mod p")
    }

    /// Trace form divided by `ω^2 - ω^{2p}`; an F_p-valued alternating form.
    pub fn normalized_trace_inner(&self, c: &[Elem], d: &[Elem]) -> Result<Elem> {
        let raw = trace_inner(&self.field, c, d)?;
        Ok(self.field.div(raw, self.form_scale()).expect("ω^2 != ω^{2p}"))
    }
}

/// The standard symplectic matrix `[[0, I_m], [-I_m, 0]]` over F_p.
pub fn s_matrix(fp: &Field, m: usize) -> Matrix {
    let mut s = Matrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        s.set(i, m + i, Elem::ONE);
        s.set(m + i, i, fp.neg(Elem::ONE));
    }
    s
}

fn bilinear(t: &Matrix, x: &[Elem], y: &[Elem], fp: &Field) -> Elem {
    fp.dot(&t.left_apply(x, fp), y)
}

/// Finds `D` with `D T D^t = S` by symplectic Gram-Schmidt. The first
/// remaining basis vector becomes `u_i`, the first partner with nonzero
/// pairing (scaled to pairing 1) becomes `v_i`; `D` has rows `u_1..u_m, v_1..v_m`.
pub fn compute_d(t: &Matrix, fp: &Field) -> Result<Matrix> {
    let k = t.rows();
    if t.cols() != k || k % 2 != 0 {
        return Err(Error::InvalidArgument("T must be square of even size".into()));
    }
    for i in 0..k {
        if !t.get(i, i).is_zero() {
            return Err(Error::Singular("T is not alternating".into()));
        }
        for j in 0..k {
            if t.get(i, j) != fp.neg(t.get(j, i)) {
                return Err(Error::Singular("T is not alternating".into()));
            }
        }
    }
    let m = k / 2;
    let mut pool: Vec<Vec<Elem>> = Matrix::identity(k).row_vecs();
    let mut us = Vec::with_capacity(m);
    let mut vs = Vec::with_capacity(m);
    while let Some(u) = pool.first().cloned() {
        let Some((wi, pairing)) =
            pool.iter().enumerate().skip(1).map(|(i, w)| (i, bilinear(t, &u, w, fp))).find(|(_, c)| !c.is_zero())
        else {
            return Err(Error::Singular("T is degenerate".into()));
        };
        let inv = fp.inv(pairing).expect("nonzero");
        let v: Vec<Elem> = pool[wi].iter().map(|&e| fp.mul(e, inv)).collect();
        pool.remove(wi);
        pool.remove(0);
        for x in pool.iter_mut() {
            let tv = bilinear(t, x, &v, fp);
            let tu = bilinear(t, x, &u, fp);
            for j in 0..k {
                x[j] = fp.add(fp.sub(x[j], fp.mul(tv, u[j])), fp.mul(tu, v[j]));
            }
        }
        us.push(u);
        vs.push(v);
    }
    let mut rows = us;
    rows.extend(vs);
    Matrix::from_rows(&rows, k)
}

/// `T`, `D`, `D^{-1}` for a normal basis of GF(p^{2m}), and the map Φ.
#[derive(Clone, Debug)]
pub struct SymplecticStructure {
    basis: NormalBasis,
    m: usize,
    t: Matrix,
    d: Matrix,
    d_inv: Matrix,
}

impl SymplecticStructure {
    pub fn new(basis: NormalBasis) -> Result<SymplecticStructure> {
        let m = basis.half_degree();
        let pw = basis.powers().to_vec();
        let mut t = Matrix::zeros(2 * m, 2 * m);
        for (i, &x) in pw.iter().enumerate() {
            for (j, &y) in pw.iter().enumerate() {
                t.set(i, j, basis.t_form(x, y));
            }
        }
        let fp = basis.prime_field().clone();
        let d = compute_d(&t, &fp)?;
        let d_inv = d.inverse(&fp)?;
        Ok(SymplecticStructure { basis, m, t, d, d_inv })
    }

    /// Uses the least normal element of the field.
    pub fn for_field(field: &Arc<Field>) -> Result<SymplecticStructure> {
        Self::new(NormalBasis::find(field))
    }

    /// Rebuilds with an explicit `D`, validating `D T D^t = S`.
    pub fn with_d(basis: NormalBasis, d: Matrix) -> Result<SymplecticStructure> {
        let mut s = Self::new(basis)?;
        let fp = s.basis.prime_field().clone();
        if d.rows() != 2 * s.m || d.cols() != 2 * s.m {
            return Err(Error::DimensionMismatch { expected: 2 * s.m, got: d.rows() });
        }
        if d.mul(&s.t, &fp).mul(&d.transpose(), &fp) != s_matrix(&fp, s.m) {
            return Err(Error::InvalidArgument("D T D^t != S".into()));
        }
        s.d_inv = d.inverse(&fp)?;
        s.d = d;
        Ok(s)
    }

    pub fn basis(&self) -> &NormalBasis {
        &self.basis
    }

    pub fn field(&self) -> &Arc<Field> {
        self.basis.field()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn t(&self) -> &Matrix {
        &self.t
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn d_inv(&self) -> &Matrix {
        &self.d_inv
    }

    pub fn s(&self) -> Matrix {
        s_matrix(self.basis.prime_field(), self.m)
    }

    pub fn big_phi(&self, c: &[Elem]) -> SymplecticVector {
        let fp = self.basis.prime_field();
        let p = fp.order();
        let n = c.len();
        let mut out = SymplecticVector::zero(p, self.m, n);
        for (i, &x) in c.iter().enumerate() {
            let block = self.d_inv.left_apply(&self.basis.coords(x), fp);
            out.set_block(i, &block);
        }
        out
    }

    pub fn big_phi_inv(&self, u: &SymplecticVector) -> Vec<Elem> {
        let fp = self.basis.prime_field();
        (0..u.n()).map(|i| self.basis.combine(&self.d.left_apply(&u.block(i), fp))).collect()
    }
}

/// The identification of classical vectors with symplectic vectors used by a
/// stabilizer code.
#[derive(Clone, Debug)]
pub enum SymplecticMap {
    Phi(PhiMap),
    BigPhi(SymplecticStructure),
}

impl SymplecticMap {
    pub fn field(&self) -> &Arc<Field> {
        match self {
            SymplecticMap::Phi(phi) => phi.field(),
            SymplecticMap::BigPhi(s) => s.field(),
        }
    }

    pub fn m(&self) -> usize {
        match self {
            SymplecticMap::Phi(_) => 1,
            SymplecticMap::BigPhi(s) => s.m(),
        }
    }

    pub fn to_symplectic(&self, c: &[Elem]) -> SymplecticVector {
        match self {
            SymplecticMap::Phi(phi) => phi.phi_inv(c),
            SymplecticMap::BigPhi(s) => s.big_phi(c),
        }
    }

    pub fn to_classical(&self, u: &SymplecticVector) -> Vec<Elem> {
        match self {
            SymplecticMap::Phi(phi) => phi.phi(u).expect("m = 1 vector"),
            SymplecticMap::BigPhi(s) => s.big_phi_inv(u),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(p: u32, m: usize, n: usize, a: &[u32], b: &[u32]) -> SymplecticVector {
        let a: Vec<Elem> = a.iter().map(|&x| Elem(x)).collect();
        let b: Vec<Elem> = b.iter().map(|&x| Elem(x)).collect();
        SymplecticVector::from_parts(p, m, n, &a, &b).unwrap()
    }

    #[test]
    fn alt_inner_examples() {
        assert_eq!(alt_inner(&sv(2, 1, 1, &[1], &[0]), &sv(2, 1, 1, &[0], &[1])).unwrap(), Elem(1));
        // <(1,2),(1,1)> - <(2,0),(0,1)> = 3 - 0 = 0 mod 3
        assert_eq!(alt_inner(&sv(3, 1, 2, &[1, 2], &[0, 1]), &sv(3, 1, 2, &[2, 0], &[1, 1])).unwrap(), Elem(0));
        let u = sv(5, 1, 3, &[1, 4, 2], &[3, 0, 1]);
        assert_eq!(alt_inner(&u, &u).unwrap(), Elem(0));
        assert!(alt_inner(&u, &SymplecticVector::zero(5, 1, 2)).is_err());
    }

    #[test]
    fn weight_examples() {
        assert_eq!(SymplecticVector::zero(2, 1, 3).weight(), 0);
        assert_eq!(sv(2, 1, 3, &[1, 0, 0], &[1, 1, 0]).weight(), 2);
        // m = 2, n = 2: only b_{2,2} set
        assert_eq!(sv(3, 2, 2, &[0, 0, 0, 0], &[0, 0, 0, 2]).weight(), 1);
    }

    #[test]
    fn display_roundtrip() {
        let u = sv(3, 1, 3, &[1, 2, 0], &[0, 1, 2]);
        assert_eq!(u.to_string(), "120|012");
        assert_eq!(SymplecticVector::parse("120|012", 3, 1, 3).unwrap(), u);
    }

    #[test]
    fn phi_first_coordinate_is_omega() {
        let f = Field::new(2, 2).unwrap();
        let phi = PhiMap::with_primitive(&f).unwrap();
        let c = phi.phi(&sv(2, 1, 2, &[1, 0], &[0, 0])).unwrap();
        assert_eq!(c, vec![f.primitive(), Elem::ZERO]);
        assert_eq!(phi.phi(&SymplecticVector::zero(2, 1, 2)).unwrap(), vec![Elem::ZERO; 2]);
    }

    #[test]
    fn phi_accepts_relaxed_omega() {
        let f = Field::new(3, 2).unwrap();
        assert!(PhiMap::new(&f, Elem(2)).is_err());
        // x has x^3 = -x in GF(9)
        assert!(PhiMap::new(&f, Elem(3)).is_err());
        // in GF(25) an element of order 3 lies outside F_5 and is independent of its conjugate
        let f25 = Field::new(5, 2).unwrap();
        let w3 = f25.pow(f25.primitive(), 8);
        assert_eq!(f25.multiplicative_order(w3), Some(3));
        let phi = PhiMap::new(&f25, w3).unwrap();
        let u = sv(5, 1, 2, &[1, 3], &[4, 2]);
        assert_eq!(phi.phi_inv(&phi.phi(&u).unwrap()), u);
    }

    #[test]
    fn m1_structure_d_reproduces_s() {
        let f = Field::new(2, 2).unwrap();
        let s = SymplecticStructure::for_field(&f).unwrap();
        let fp = Field::prime(2).unwrap();
        assert_eq!(s.d().mul(s.t(), &fp).mul(&s.d().transpose(), &fp), s.s());
    }

    #[test]
    fn compute_d_rejects_degenerate_forms() {
        let fp = Field::prime(3).unwrap();
        assert!(compute_d(&Matrix::zeros(2, 2), &fp).is_err());
        let sym = Matrix::from_u32_rows(&[&[0, 1], &[1, 0]]);
        assert!(compute_d(&sym, &fp).is_err());
        let s = s_matrix(&fp, 2);
        let d = compute_d(&s, &fp).unwrap();
        assert_eq!(d, Matrix::identity(4));
    }
}
