//! Dense univariate polynomials over a [`Field`], constant term first.

use crate::field::{prime_factors, Elem, Field};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Elem::ONE] }
    }

    /// `c x^d`.
    pub fn monomial(c: Elem, d: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; d + 1];
        coeffs[d] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn add(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: Elem, f: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder; panics on division by the zero polynomial.
    pub fn div_rem(&self, divisor: &Poly, f: &Field) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.lead()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly, f: &Field) -> Poly {
        self.div_rem(divisor, f).1
    }

    pub fn monic(&self, f: &Field) -> Poly {
        match f.inv(self.lead()) {
            Some(l) => self.scale(l, f),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly, f: &Field) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, x: Elem, f: &Field) -> Elem {
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Formal derivative.
    pub fn derivative(&self, f: &Field) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    /// Keeps the terms of degree below `n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly::new(self.coeffs.iter().take(n).copied().collect())
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly, f: &Field) -> Poly {
        self.mul(other, f).rem(modulus, f)
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Poly, f: &Field) -> Poly {
        let mut base = self.rem(modulus, f);
        let mut acc = Poly::one().rem(modulus, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus, f);
            }
            base = base.mul_mod(&base, modulus, f);
            e >>= 1;
        }
        acc
    }

    /// Rabin's test over the field `f`: a degree-`k` polynomial is irreducible
    /// iff `x^{q^k} = x` modulo it and `gcd(x^{q^{k/l}} - x, self) = 1` for
    /// every prime `l | k`.
    pub fn is_irreducible(&self, f: &Field) -> bool {
        let Some(k) = self.degree() else { return false };
        if k == 0 {
            return false;
        }
        if k == 1 {
            return true;
        }
        let q = f.order() as u64;
        let x = Poly::monomial(Elem::ONE, 1);
        // x^{q^i} mod self for i = 0..=k
        let mut frob = Vec::with_capacity(k + 1);
        frob.push(x.rem(self, f));
        for i in 1..=k {
            let prev: &Poly = &frob[i - 1];
            frob.push(prev.pow_mod(q, self, f));
        }
        if frob[k] != x.rem(self, f) {
            return false;
        }
        prime_factors(k as u64).into_iter().all(|l| {
            let h = frob[k / l as usize].sub(&x, f);
            h.gcd(self, f).degree() == Some(0)
        })
    }
}
