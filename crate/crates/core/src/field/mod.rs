//! Exact arithmetic in GF(p^k).
//!
//! An element is stored as the integer `sum c_i p^i` of its coefficient vector
//! `(c_0, ..., c_{k-1})` in the power basis of a root of the field modulus. The
//! same integer order is used wherever a "least" element or polynomial is
//! chosen, which makes every construction deterministic.

mod basis;
mod ext;

pub use basis::{coords, DualBasisData, NormalBasis};
pub use ext::Extension;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::poly::Poly;
use crate::{Error, Result};

/// Element of some GF(p^k); meaningful only together with its [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Fields up to this many elements get log/exp tables and may be enumerated.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;
/// Hard ceiling for arithmetic-only fields.
pub const ARITHMETIC_MAX_ORDER: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldConfig {
    pub max_order: u64,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig { max_order: DEFAULT_MAX_ORDER }
    }
}

impl FieldConfig {
    /// Allows fields beyond the enumeration bound; arithmetic falls back to
    /// polynomial multiplication.
    pub fn arithmetic_only() -> Self {
        FieldConfig { max_order: ARITHMETIC_MAX_ORDER }
    }
}

#[derive(Debug)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// GF(p^k) with a fixed monic irreducible modulus and primitive element.
#[derive(Debug)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    place: Vec<u32>,
    tables: Option<LogTables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for Field {}

/// Serializable description `{p, k, modulus, primitive}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub p: u32,
    pub k: u32,
    /// Modulus coefficients, constant term first, including the leading 1.
    pub modulus: Vec<u32>,
    /// Coefficients of the primitive element, constant term first.
    pub primitive: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Operations accepted by [`Field::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow,
}

/// Second operand of [`Field::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operand {
    None,
    Elem(Elem),
    Int(u64),
}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Arc<Field>> {
        Self::new(p, 1)
    }

    pub fn new(p: u32, k: u32) -> Result<Arc<Field>> {
        Self::with_config(p, k, FieldConfig::default())
    }

    pub fn with_config(p: u32, k: u32, config: FieldConfig) -> Result<Arc<Field>> {
        let q = Self::check_size(p, k, config)?;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            find_irreducible(p, k)?
        };
        Self::assemble(p, k, q, modulus, None)
    }

    /// Rebuilds a field from an explicit modulus and primitive element,
    /// validating both.
    pub fn from_record(record: &FieldRecord, config: FieldConfig) -> Result<Arc<Field>> {
        let FieldRecord { p, k, modulus, primitive } = record;
        let q = Self::check_size(*p, *k, config)?;
        if modulus.len() != *k as usize + 1 || modulus[*k as usize] != 1 || modulus.iter().any(|&c| c >= *p) {
            return Err(Error::InvalidArgument(format!("modulus {modulus:?} is not monic of degree {k} over F_{p}")));
        }
        if *k > 1 {
            let fp = Field::prime(*p)?;
            let poly = Poly::new(modulus.iter().map(|&c| Elem(c)).collect());
            if !poly.is_irreducible(&fp) {
                return Err(Error::InvalidArgument(format!("modulus {modulus:?} is reducible over F_{p}")));
            }
        } else if modulus[0] != 0 {
            return Err(Error::InvalidArgument("prime fields use the modulus x".into()));
        }
        if primitive.len() != *k as usize || primitive.iter().any(|&c| c >= *p) {
            return Err(Error::InvalidArgument(format!("primitive element {primitive:?} has wrong shape")));
        }
        let mut value = 0u32;
        for &c in primitive.iter().rev() {
            value = value * p + c;
        }
        Self::assemble(*p, *k, q, modulus.clone(), Some(Elem(value)))
    }

    fn check_size(p: u32, k: u32, config: FieldConfig) -> Result<u32> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
        }
        let bound = config.max_order.min(ARITHMETIC_MAX_ORDER);
        let q = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if q > bound as u128 {
            return Err(Error::FieldTooLarge { p, k, bound });
        }
        Ok(q as u32)
    }

    fn assemble(p: u32, k: u32, q: u32, modulus: Vec<u32>, primitive: Option<Elem>) -> Result<Arc<Field>> {
        let mut place = Vec::with_capacity(k as usize);
        let mut acc = 1u32;
        for _ in 0..k {
            place.push(acc);
            acc = acc.wrapping_mul(p);
        }
        let mut field = Field { p, k, q, modulus, primitive: Elem::ONE, place, tables: None };
        let primitive = match primitive {
            Some(g) => {
                if !field.is_primitive(g) {
                    return Err(Error::InvalidArgument(format!("element {g} is not primitive in GF({q})")));
                }
                g
            }
            None => field.find_primitive(),
        };
        field.primitive = primitive;
        if (q as u64) <= DEFAULT_MAX_ORDER {
            let n = (q - 1) as usize;
            let mut exp = vec![0u32; 2 * n.max(1)];
            let mut log = vec![0u32; q as usize];
            let mut x = Elem::ONE;
            for (i, slot) in exp.iter_mut().take(n).enumerate() {
                *slot = x.0;
                log[x.0 as usize] = i as u32;
                x = field.mul_poly(x, primitive);
            }
            for i in n..2 * n {
                exp[i] = exp[i - n];
            }
            field.tables = Some(LogTables { exp, log });
        }
        Ok(Arc::new(field))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first, leading 1 included.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    /// Whether the field is small enough to enumerate.
    pub fn is_enumerable(&self) -> bool {
        self.tables.is_some()
    }

    pub fn record(&self) -> FieldRecord {
        FieldRecord {
            p: self.p,
            k: self.k,
            modulus: self.modulus.clone(),
            primitive: self.to_coeffs(self.primitive),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.q
    }

    pub fn check(&self, x: Elem) -> Result<Elem> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(Error::ForeignElement { value: x.0, q: self.q })
        }
    }

    /// Coefficient vector in the power basis, constant term first.
    pub fn to_coeffs(&self, x: Elem) -> Vec<u32> {
        let mut v = x.0;
        (0..self.k)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Elem {
        debug_assert_eq!(coeffs.len(), self.k as usize);
        Elem(coeffs.iter().zip(&self.place).map(|(&c, &w)| (c % self.p) * w).sum())
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn in_prime_subfield(&self, x: Elem) -> bool {
        x.0 < self.p
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.k == 1 {
            return Elem((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut r) = (a.0, b.0, 0u32);
        for &w in &self.place {
            r += ((x % self.p + y % self.p) % self.p) * w;
            x /= self.p;
            y /= self.p;
        }
        Elem(r)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut r = 0u32;
        for &w in &self.place {
            r += ((self.p - x % self.p) % self.p) * w;
            x /= self.p;
        }
        Elem(r)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_poly(a, b),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            return None;
        }
        match &self.tables {
            Some(t) => {
                let n = self.q - 1;
                Some(Elem(t.exp[((n - t.log[a.0 as usize]) % n) as usize]))
            }
            None => Some(self.pow(a, self.q as u64 - 2)),
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `a^e` by square-and-multiply (table lookup when available).
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        if let Some(t) = &self.tables {
            let n = (self.q - 1) as u64;
            let idx = (t.log[a.0 as usize] as u64 * (e % n)) % n;
            return Elem(t.exp[idx as usize]);
        }
        let mut base = a;
        let mut e = e;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^{p^j}`; the identity when `k` divides `j`.
    pub fn frobenius(&self, x: Elem, j: u32) -> Elem {
        let j = j % self.k;
        if j == 0 {
            return x;
        }
        self.pow(x, (self.p as u64).pow(j))
    }

    /// Dispatches one of the basic operations with operand checking.
    pub fn arith(&self, op: ArithOp, x: Elem, y: Operand) -> Result<Elem> {
        self.check(x)?;
        let elem = |y: Operand| match y {
            Operand::Elem(e) => self.check(e),
            _ => Err(Error::InvalidArgument(format!("{op:?} needs a field element operand"))),
        };
        match op {
            ArithOp::Add => Ok(self.add(x, elem(y)?)),
            ArithOp::Sub => Ok(self.sub(x, elem(y)?)),
            ArithOp::Mul => Ok(self.mul(x, elem(y)?)),
            ArithOp::Div => self.div(x, elem(y)?).ok_or(Error::DivisionByZero),
            ArithOp::Neg => Ok(self.neg(x)),
            ArithOp::Inv => self.inv(x).ok_or(Error::DivisionByZero),
            ArithOp::Pow => match y {
                Operand::Int(e) => Ok(self.pow(x, e)),
                _ => Err(Error::InvalidArgument("pow needs an integer exponent".into())),
            },
        }
    }

    /// Sum of products `sum a_i b_i`.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    pub fn multiplicative_order(&self, x: Elem) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        let mut order = (self.q - 1) as u64;
        for l in prime_factors(order) {
            while order % l == 0 && self.pow_poly(x, order / l) == Elem::ONE {
                order /= l;
            }
        }
        Some(order)
    }

    pub fn is_primitive(&self, x: Elem) -> bool {
        self.contains(x) && self.multiplicative_order(x) == Some((self.q - 1) as u64)
    }

    /// Least element of full multiplicative order in the integer order of
    /// coefficient vectors.
    pub fn find_primitive(&self) -> Elem {
        if self.q == 2 {
            return Elem::ONE;
        }
        (1..self.q)
            .map(Elem)
            .find(|&x| self.is_primitive(x))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn pow_poly(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        acc
    }

    fn mul_poly(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p as u64;
        let k = self.k as usize;
        if k == 1 {
            return Elem(((a.0 as u64 * b.0 as u64) % p) as u32);
        }
        let x = self.to_coeffs(a);
        let y = self.to_coeffs(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u64 * yj as u64) % p;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for i in 0..k {
                let sub = c * self.modulus[i] as u64 % p;
                prod[d - k + i] = (prod[d - k + i] + p - sub) % p;
            }
            prod[d] = 0;
        }
        let coeffs: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        self.from_coeffs(&coeffs)
    }
}

/// Lexicographically least monic irreducible polynomial of degree `k` over
/// F_p, ordering candidates by the integer `sum c_i p^i` of their lower
/// coefficients.
pub fn find_irreducible(p: u32, k: u32) -> Result<Vec<u32>> {
    let fp = Field::prime(p)?;
    let count = (p as u64).pow(k);
    for code in 0..count {
        let mut coeffs = Vec::with_capacity(k as usize + 1);
        let mut v = code;
        for _ in 0..k {
            coeffs.push((v % p as u64) as u32);
            v /= p as u64;
        }
        coeffs.push(1);
        if k > 1 && coeffs[0] == 0 {
            continue;
        }
        let poly = Poly::new(coeffs.iter().map(|&c| Elem(c)).collect());
        if poly.is_irreducible(&fp) {
            return Ok(coeffs);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
