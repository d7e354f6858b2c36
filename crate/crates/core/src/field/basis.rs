//! Coordinates, normal bases and the dual-basis data used to invert syndromes.

use std::sync::Arc;

use super::{Elem, Field};
use crate::linalg::Matrix;
use crate::{Error, Result};

/// Coordinates of `x` over F_p in an arbitrary F_p-basis of the field.
pub fn coords(field: &Field, x: Elem, basis: &[Elem]) -> Result<Vec<Elem>> {
    let k = field.degree() as usize;
    if basis.len() != k {
        return Err(Error::DimensionMismatch { expected: k, got: basis.len() });
    }
    let fp = Field::prime(field.characteristic())?;
    let forward = coeff_matrix(field, basis);
    let target: Vec<Elem> = field.to_coeffs(x).into_iter().map(Elem).collect();
    let inv = forward.inverse(&fp).map_err(|_| Error::Singular("basis is linearly dependent".into()))?;
    Ok(inv.left_apply(&target, &fp))
}

fn coeff_matrix(field: &Field, elems: &[Elem]) -> Matrix {
    let rows: Vec<Vec<Elem>> = elems.iter().map(|&e| field.to_coeffs(e).into_iter().map(Elem).collect()).collect();
    Matrix::from_rows(&rows, field.degree() as usize).expect("coefficient rows have length k")
}

/// A normal basis `{θ, θ^p, ..., θ^{p^{k-1}}}` of GF(p^k) over F_p.
#[derive(Clone, Debug)]
pub struct NormalBasis {
    field: Arc<Field>,
    prime: Arc<Field>,
    theta: Elem,
    powers: Vec<Elem>,
    /// Rows are the power-basis coefficients of the orbit elements.
    forward: Matrix,
    /// Maps power-basis coefficients to normal-basis coordinates.
    change_of_basis: Matrix,
}

impl NormalBasis {
    /// Least `θ` (in coefficient order) whose Frobenius orbit is a basis.
    pub fn find(field: &Arc<Field>) -> NormalBasis {
        field
            .elements()
            .skip(1)
            .find_map(|t| Self::with_theta(field, t).ok())
            .expect("every finite extension has a normal basis")
    }

    /// Normal basis of GF(p^{2m}) built from scratch.
    pub fn for_degree(p: u32, twom: u32) -> Result<NormalBasis> {
        if twom < 2 || twom % 2 != 0 {
            return Err(Error::InvalidArgument(format!("degree {twom} is not an even number >= 2")));
        }
        Ok(Self::find(&Field::new(p, twom)?))
    }

    pub fn with_theta(field: &Arc<Field>, theta: Elem) -> Result<NormalBasis> {
        field.check(theta)?;
        let prime = Field::prime(field.characteristic())?;
        let powers: Vec<Elem> = (0..field.degree()).map(|j| field.frobenius(theta, j)).collect();
        let forward = coeff_matrix(field, &powers);
        let change_of_basis = forward
            .inverse(&prime)
            .map_err(|_| Error::Singular(format!("orbit of {theta} is linearly dependent")))?;
        Ok(NormalBasis { field: field.clone(), prime, theta, powers, forward, change_of_basis })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn prime_field(&self) -> &Arc<Field> {
        &self.prime
    }

    pub fn theta(&self) -> Elem {
        self.theta
    }

    pub fn powers(&self) -> &[Elem] {
        &self.powers
    }

    pub fn change_of_basis(&self) -> &Matrix {
        &self.change_of_basis
    }

    /// Orbit matrix (rows = power-basis coefficients of `θ^{p^j}`).
    pub fn orbit_matrix(&self) -> &Matrix {
        &self.forward
    }

    /// `(c_1, ..., c_k)` with `x = sum c_i θ^{p^{i-1}}`.
    pub fn coords(&self, x: Elem) -> Vec<Elem> {
        let v: Vec<Elem> = self.field.to_coeffs(x).into_iter().map(Elem).collect();
        self.change_of_basis.left_apply(&v, &self.prime)
    }

    pub fn combine(&self, c: &[Elem]) -> Elem {
        let v = self.forward.left_apply(c, &self.prime);
        let raw: Vec<u32> = v.into_iter().map(|e| e.0).collect();
        self.field.from_coeffs(&raw)
    }

    /// `P(x) = c_{m+1} - c_1` in normal-basis coordinates, `2m = k`.
    pub fn p_functional(&self, x: Elem) -> Elem {
        let m = self.half_degree();
        let c = self.coords(x);
        self.prime.sub(c[m], c[0])
    }

    /// The form `T(x, y) = P(x y^{p^m})`.
    pub fn t_form(&self, x: Elem, y: Elem) -> Elem {
        let m = self.half_degree() as u32;
        self.p_functional(self.field.mul(x, self.field.frobenius(y, m)))
    }

    pub fn half_degree(&self) -> usize {
        let k = self.field.degree() as usize;
        assert!(k % 2 == 0, "P is defined on even-degree extensions");
        k / 2
    }
}

/// Basis `α_j` and elements `β_k` with `P(α_j^{p^m} β_k) = δ_{jk}`.
#[derive(Clone, Debug)]
pub struct DualBasisData {
    basis: NormalBasis,
    alphas: Vec<Elem>,
    betas: Vec<Elem>,
    /// Row `j` is the functional `y -> P(α_j^{p^m} y)` on power-basis coefficients.
    functional: Matrix,
}

impl DualBasisData {
    pub fn new(basis: &NormalBasis, alphas: Vec<Elem>) -> Result<DualBasisData> {
        let field = basis.field().clone();
        let fp = basis.prime_field().clone();
        let k = field.degree() as usize;
        if alphas.len() != k {
            return Err(Error::DimensionMismatch { expected: k, got: alphas.len() });
        }
        if coeff_matrix(&field, &alphas).rank(&fp) != k {
            return Err(Error::Singular("alphas are linearly dependent".into()));
        }
        let m = basis.half_degree() as u32;
        let units: Vec<Elem> = (0..k).map(|i| field.from_coeffs(&unit(k, i))).collect();
        let rows: Vec<Vec<Elem>> = alphas
            .iter()
            .map(|&a| {
                let am = field.frobenius(a, m);
                units.iter().map(|&u| basis.p_functional(field.mul(am, u))).collect()
            })
            .collect();
        let functional = Matrix::from_rows(&rows, k)?;
        let inv = functional
            .inverse(&fp)
            .expect("P is nonzero and the alphas are independent, so the system is regular");
        let betas = (0..k)
            .map(|col| {
                let c: Vec<u32> = (0..k).map(|r| inv.get(r, col).0).collect();
                field.from_coeffs(&c)
            })
            .collect();
        Ok(DualBasisData { basis: basis.clone(), alphas, betas, functional })
    }

    /// Uses the power basis `1, x, ..., x^{2m-1}` as the `α_j`.
    pub fn power_basis(basis: &NormalBasis) -> DualBasisData {
        let field = basis.field();
        let k = field.degree() as usize;
        let alphas = (0..k).map(|i| field.from_coeffs(&unit(k, i))).collect();
        Self::new(basis, alphas).expect("the power basis is a basis")
    }

    pub fn alphas(&self) -> &[Elem] {
        &self.alphas
    }

    pub fn betas(&self) -> &[Elem] {
        &self.betas
    }

    pub fn normal_basis(&self) -> &NormalBasis {
        &self.basis
    }

    /// `P_{2m}(x) = (P(α_1^{p^m} x), ..., P(α_{2m}^{p^m} x))`.
    pub fn p2m(&self, x: Elem) -> Vec<Elem> {
        let v: Vec<Elem> = self.basis.field().to_coeffs(x).into_iter().map(Elem).collect();
        self.functional.apply(&v, self.basis.prime_field())
    }

    /// `sum_k s_k β_k`, the inverse of [`Self::p2m`].
    pub fn p2m_inv(&self, s: &[Elem]) -> Elem {
        let f = self.basis.field();
        s.iter().zip(&self.betas).fold(Elem::ZERO, |acc, (&sk, &bk)| f.add(acc, f.mul(sk, bk)))
    }

    /// `[P(α_j^{p^m} β_k)]_{jk}`, computed directly from field arithmetic.
    pub fn gram(&self) -> Matrix {
        let f = self.basis.field();
        let m = self.basis.half_degree() as u32;
        let k = self.alphas.len();
        let mut g = Matrix::zeros(k, k);
        for (j, &a) in self.alphas.iter().enumerate() {
            for (l, &b) in self.betas.iter().enumerate() {
                g.set(j, l, self.basis.p_functional(f.mul(f.frobenius(a, m), b)));
            }
        }
        g
    }
}

fn unit(k: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; k];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_normal_basis_is_omega() {
        let f = Field::new(2, 2).unwrap();
        let nb = NormalBasis::find(&f);
        // 1 lies in F_2, so its orbit collapses; ω = x is the least that works
        assert_eq!(nb.theta(), f.primitive());
        assert_eq!(nb.coords(nb.theta()), vec![Elem(1), Elem(0)]);
        assert!(NormalBasis::with_theta(&f, Elem::ONE).is_err());
    }

    #[test]
    fn prime_subfield_candidates_fail() {
        let f = Field::new(3, 4).unwrap();
        for c in 1..3 {
            assert!(NormalBasis::with_theta(&f, Elem(c)).is_err());
        }
    }

    #[test]
    fn coords_of_zero_and_recombination() {
        let f = Field::new(3, 2).unwrap();
        let nb = NormalBasis::find(&f);
        assert_eq!(nb.coords(Elem::ZERO), vec![Elem::ZERO; 2]);
        for x in f.elements() {
            assert_eq!(nb.combine(&nb.coords(x)), x);
            assert_eq!(coords(&f, x, nb.powers()).unwrap(), nb.coords(x));
        }
        assert!(coords(&f, Elem(1), &[Elem(1), Elem(2)]).is_err());
    }

    #[test]
    fn dual_basis_gram_is_identity_small_cases() {
        for p in [2, 3] {
            let nb = NormalBasis::for_degree(p, 2).unwrap();
            let f = nb.field().clone();
            let dual = DualBasisData::new(&nb, vec![Elem::ONE, f.primitive()]).unwrap();
            assert_eq!(dual.gram(), Matrix::identity(2));
        }
    }
}
