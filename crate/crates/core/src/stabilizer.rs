//! Stabilizer code records: construction from symplectic bases or from
//! Hermitian self-orthogonal classical codes, and parameter verification.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classical::{best_bch_run, cyclotomic_closure, CyclicCode, LinearCode, RootContext, DEFAULT_ENUM_BOUND};
use crate::exec::{fold_chunks, Execution};
use crate::field::{DualBasisData, Elem, Field, NormalBasis};
use crate::linalg::Matrix;
use crate::symplectic::{PhiMap, SymplecticMap, SymplecticStructure, SymplecticVector};
use crate::{Error, Result};

/// Minimum distance together with how it was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    /// Enumerated exactly.
    Exact(usize),
    /// Certified lower bound from the BCH bound of the check code.
    BchLowerBound(usize),
}

impl Distance {
    pub fn value(self) -> usize {
        match self {
            Distance::Exact(d) | Distance::BchLowerBound(d) => d,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Distance::Exact(_))
    }

    pub fn label(self) -> &'static str {
        match self {
            Distance::Exact(_) => "exact",
            Distance::BchLowerBound(_) => "bch-lower-bound",
        }
    }
}

/// How classical vectors are mapped to symplectic ones.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Representation {
    /// `φ` when `m = 1`, Φ otherwise.
    #[default]
    Auto,
    /// Φ even when `m = 1`.
    NormalBasis,
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Overrides the primitive element as `ω` (needs `ω, ω^p` independent).
    pub omega: Option<Elem>,
    pub representation: Representation,
    /// Scalar basis `α_j` for Φ; defaults to the power basis.
    pub alphas: Option<Vec<Elem>>,
    /// Overrides the normal element `θ` for Φ.
    pub theta: Option<Elem>,
    /// Overrides the matrix `D` for Φ (checked against `D T D^t = S`).
    pub d_matrix: Option<Matrix>,
    pub enum_bound: u128,
    pub exec: Execution,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            omega: None,
            representation: Representation::Auto,
            alphas: None,
            theta: None,
            d_matrix: None,
            enum_bound: DEFAULT_ENUM_BOUND,
            exec: Execution::Parallel,
        }
    }
}

/// The classical data behind a code built from `C ⊆ (C^{p^m})^⊥`.
#[derive(Clone, Debug)]
pub struct ClassicalOrigin {
    pub code: LinearCode,
    pub map: SymplecticMap,
    /// Present for the Φ representation.
    pub dual_basis: Option<DualBasisData>,
    /// `g_i^{p^m}` for the generator rows `g_i` of `C`, in generator order.
    pub check_rows: Matrix,
    /// Set when `C` was obtained by shortening a larger code, so that the
    /// check code is a punctured code.
    pub punctured_from: Option<PuncturedFrom>,
}

/// The unshortened code and the deleted coordinate (0-based).
#[derive(Clone, Debug)]
pub struct PuncturedFrom {
    pub code: LinearCode,
    pub position: usize,
}

impl ClassicalOrigin {
    pub fn field(&self) -> &Arc<Field> {
        self.code.field()
    }

    /// `(C^{p^m})^⊥`, the code the classical decoders work on.
    pub fn check_code(&self) -> LinearCode {
        self.code.hermitian_dual().expect("field of even degree")
    }

    /// `<g_i^{p^m}, e>` for every check row.
    pub fn classical_syndrome(&self, e: &[Elem]) -> Vec<Elem> {
        self.check_rows.apply(e, self.field())
    }

    /// Number of symplectic generators contributed by each row of `C`.
    pub fn block_size(&self) -> usize {
        2 * self.map.m()
    }
}

#[derive(Clone, Debug)]
pub struct StabilizerCode {
    p: u32,
    m: usize,
    n: usize,
    k: usize,
    generators: Vec<SymplecticVector>,
    /// Generators as rows over F_p (length `2mn`).
    matrix: Matrix,
    prime: Arc<Field>,
    origin: Option<ClassicalOrigin>,
    distance: Distance,
}

impl StabilizerCode {
    /// Checks independence and pairwise commutation, then computes `d` over
    /// `C^⊥ \ C`.
    pub fn from_symplectic_basis(
        vectors: Vec<SymplecticVector>,
        p: u32,
        m: usize,
        n: usize,
        enum_bound: u128,
        exec: Execution,
    ) -> Result<StabilizerCode> {
        let prime = Field::prime(p)?;
        for v in &vectors {
            if v.p() != p || v.m() != m || v.n() != n {
                return Err(Error::DimensionMismatch { expected: 2 * m * n, got: 2 * v.m() * v.n() });
            }
        }
        for i in 0..vectors.len() {
            for j in i + 1..vectors.len() {
                let c = vectors[i].pair(&vectors[j]);
                if c != 0 {
                    return Err(Error::NonCommuting(i + 1, j + 1, c));
                }
            }
        }
        let matrix = generator_matrix(&vectors, 2 * m * n)?;
        if matrix.rank(&prime) != vectors.len() {
            return Err(Error::Dependent);
        }
        if vectors.len() % m != 0 || vectors.len() / m > n {
            return Err(Error::InvalidArgument(format!(
                "{} generators do not give an integral k for n = {n}, m = {m}",
                vectors.len()
            )));
        }
        let k = n - vectors.len() / m;
        let mut code = StabilizerCode { p, m, n, k, generators: vectors, matrix, prime, origin: None, distance: Distance::Exact(1) };
        code.distance = Distance::Exact(code.symplectic_distance(enum_bound, exec)?);
        Ok(code)
    }

    /// Builds the stabilizer code of a Hermitian self-orthogonal `C` over
    /// GF(p^{2m}). For `m = 1` the generators are ordered
    /// `φ^{-1}(g_1), φ^{-1}(ω g_1), φ^{-1}(g_2), ...`; with Φ they are
    /// `Φ(α_1 g_1), ..., Φ(α_{2m} g_1), Φ(α_1 g_2), ...`.
    pub fn from_classical_code(c: &LinearCode, options: &BuildOptions) -> Result<StabilizerCode> {
        let field = c.field().clone();
        if field.degree() % 2 != 0 {
            return Err(Error::InvalidArgument(format!("GF({}) is not GF(p^2m)", field.order())));
        }
        let m = field.degree() as usize / 2;
        let p = field.characteristic();
        let n = c.len();
        if let Some((i, j)) = c.hermitian_violation()? {
            return Err(Error::NotSelfOrthogonal(i + 1, j + 1));
        }
        let r = c.dim();
        // self-orthogonality forces 2r <= n, so k = n - 2r is well defined
        let k = n - 2 * r;

        let use_phi = m == 1 && options.representation == Representation::Auto;
        let (map, dual_basis) = if use_phi {
            let omega = options.omega.unwrap_or(field.primitive());
            (SymplecticMap::Phi(PhiMap::new(&field, omega)?), None)
        } else {
            let basis = match options.theta {
                Some(theta) => NormalBasis::with_theta(&field, theta)?,
                None => NormalBasis::find(&field),
            };
            let structure = match &options.d_matrix {
                Some(d) => SymplecticStructure::with_d(basis, d.clone())?,
                None => SymplecticStructure::new(basis)?,
            };
            let dual = match &options.alphas {
                Some(a) => DualBasisData::new(structure.basis(), a.clone())?,
                None => DualBasisData::power_basis(structure.basis()),
            };
            (SymplecticMap::BigPhi(structure), Some(dual))
        };

        let mut generators = Vec::with_capacity(2 * m * r);
        for row in c.generator().row_vecs() {
            match (&map, &dual_basis) {
                (SymplecticMap::Phi(phi), _) => {
                    generators.push(phi.phi_inv(&row));
                    let scaled: Vec<Elem> = row.iter().map(|&x| field.mul(phi.omega(), x)).collect();
                    generators.push(phi.phi_inv(&scaled));
                }
                (SymplecticMap::BigPhi(s), Some(dual)) => {
                    for &alpha in dual.alphas() {
                        let scaled: Vec<Elem> = row.iter().map(|&x| field.mul(alpha, x)).collect();
                        generators.push(s.big_phi(&scaled));
                    }
                }
                _ => unreachable!(),
            }
        }
        let check_rows = c.generator().map(|e| field.frobenius(e, m as u32));
        let matrix = generator_matrix(&generators, 2 * m * n)?;
        let prime = Field::prime(p)?;
        let origin = ClassicalOrigin { code: c.clone(), map, dual_basis, check_rows, punctured_from: None };
        let distance = classical_distance(&origin, options.enum_bound, options.exec)?;
        Ok(StabilizerCode { p, m, n, k, generators, matrix, prime, origin: Some(origin), distance })
    }

    /// Shortens `parent` at `position` (0-based), keeping the codewords that
    /// vanish there, and builds the code of the result. Its check code is
    /// `parent`'s check code punctured at `position`.
    pub fn from_shortened(parent: &LinearCode, position: usize, options: &BuildOptions) -> Result<StabilizerCode> {
        let child = shorten(parent, position)?;
        let mut code = Self::from_classical_code(&child, options)?;
        if let Some(origin) = code.origin.as_mut() {
            origin.punctured_from = Some(PuncturedFrom { code: parent.clone(), position });
        }
        Ok(code)
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

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn distance(&self) -> Distance {
        self.distance
    }

    pub fn generators(&self) -> &[SymplecticVector] {
        &self.generators
    }

    pub fn origin(&self) -> Option<&ClassicalOrigin> {
        self.origin.as_ref()
    }

    pub fn prime_field(&self) -> &Arc<Field> {
        &self.prime
    }

    /// Generators as rows over F_p.
    pub fn generator_matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `[[n,k,d]]_{p^m}` with the distance flag.
    pub fn parameters(&self) -> String {
        let q = if self.m == 1 { self.p.to_string() } else { format!("{}^{}", self.p, self.m) };
        format!("[[{},{},{}]]_{} (d {})", self.n, self.k, self.distance.value(), q, self.distance.label())
    }

    /// The measured syndrome `(alt(g_i, e))_i`.
    pub fn measure(&self, e: &SymplecticVector) -> Vec<Elem> {
        self.generators.iter().map(|g| Elem(g.pair(e))).collect()
    }

    /// Whether `v` lies in the span of the generators.
    pub fn contains(&self, v: &SymplecticVector) -> bool {
        self.matrix.row_space_contains(v.as_slice(), &self.prime)
    }

    /// Rows spanning the alternating-orthogonal space `C^⊥`.
    pub fn symplectic_dual(&self) -> Matrix {
        let mn = self.m * self.n;
        let f = &self.prime;
        // alt(g, x) = (-g_b | g_a) . (x_a | x_b)
        let mut twisted = Matrix::zeros(self.matrix.rows(), 2 * mn);
        for r in 0..self.matrix.rows() {
            let row = self.matrix.row(r);
            for i in 0..mn {
                twisted.set(r, i, f.neg(row[mn + i]));
                twisted.set(r, mn + i, row[i]);
            }
        }
        twisted.nullspace(f)
    }

    /// Minimum symplectic weight over `C^⊥ \ C`; for `k = 0` (where the
    /// difference is empty) the minimum over nonzero elements of `C^⊥`.
    pub fn symplectic_distance(&self, bound: u128, exec: Execution) -> Result<usize> {
        let dual = LinearCode::new(&self.prime, &self.symplectic_dual())?;
        let total = dual.size();
        if total > bound {
            return Err(Error::EnumerationBound { count: total, bound });
        }
        let (m, n) = (self.m, self.n);
        let p = self.p;
        let scan = |skip_members: bool| {
            fold_chunks(
                exec,
                1..total as u64,
                || usize::MAX,
                |acc, range| {
                    range.fold(acc, |acc, i| {
                        let v = SymplecticVector::from_concat(p, m, n, &dual.codeword(i)).expect("shape");
                        let w = v.weight();
                        if w < acc && !(skip_members && self.contains(&v)) {
                            w
                        } else {
                            acc
                        }
                    })
                },
                usize::min,
            )
        };
        let d = scan(true);
        if d != usize::MAX {
            return Ok(d);
        }
        let d = scan(false);
        Ok(if d == usize::MAX { n.max(1) } else { d })
    }

    /// The distance computed on the classical side, `min wt (C^{p^m})^⊥ \ C`.
    pub fn classical_distance(&self, bound: u128, exec: Execution) -> Result<Option<Distance>> {
        self.origin.as_ref().map(|o| classical_distance(o, bound, exec)).transpose()
    }
}

/// Codewords of `parent` that vanish at `position`, with that coordinate removed.
pub fn shorten(parent: &LinearCode, position: usize) -> Result<LinearCode> {
    let n = parent.len();
    if position >= n {
        return Err(Error::InvalidArgument(format!("position {position} outside 0..{n}")));
    }
    let field = parent.field();
    let g = parent.generator();
    let column = Matrix::from_rows(&[(0..g.rows()).map(|r| g.get(r, position)).collect()], g.rows())?;
    let combos = column.nullspace(field);
    let rows: Vec<Vec<Elem>> = (0..combos.rows())
        .map(|r| {
            let mut w = g.left_apply(combos.row(r), field);
            w.remove(position);
            w
        })
        .collect();
    LinearCode::from_rows(field, n - 1, &rows)
}

fn generator_matrix(vectors: &[SymplecticVector], width: usize) -> Result<Matrix> {
    let rows: Vec<Vec<Elem>> = vectors.iter().map(|v| v.as_slice().to_vec()).collect();
    Matrix::from_rows(&rows, width)
}

fn classical_distance(origin: &ClassicalOrigin, bound: u128, exec: Execution) -> Result<Distance> {
    let c = &origin.code;
    let dual = origin.check_code();
    let exact = match dual.min_weight_diff(c, bound, exec) {
        Ok(Some(d)) => Ok(d),
        // k = 0: C is Hermitian self-dual
        Ok(None) => dual.min_weight(bound, exec).or_else(|_| Ok(c.len().max(1))),
        Err(e) => Err(e),
    };
    match exact {
        Ok(d) => Ok(Distance::Exact(d)),
        Err(Error::EnumerationBound { count, bound }) => {
            let ctx = RootContext::new(c.field(), c.len()).map_err(|_| Error::EnumerationBound { count, bound })?;
            let run = best_bch_run(&ctx.zeros_of(&dual), c.len());
            Ok(Distance::BchLowerBound(run.designed_distance()))
        }
        Err(e) => Err(e),
    }
}

/// Search controls for [`search_codes`].
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Candidate classical codes to examine (cyclic first, then random).
    pub budget: usize,
    pub seed: u64,
    pub build: BuildOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 200, seed: 0, build: BuildOptions::default() }
    }
}

/// Looks for `[[n,k,d]]_{p^m}` codes: cyclic candidates from unions of
/// cyclotomic cosets, then random Hermitian self-orthogonal codes grown row by
/// row. Results are deduplicated and ranked by `d` (ties keep discovery order).
pub fn search_codes(p: u32, m: u32, n: usize, k: usize, options: &SearchOptions) -> Result<Vec<StabilizerCode>> {
    if options.budget == 0 || k > n || (n - k) % 2 != 0 || n == 0 {
        return Ok(Vec::new());
    }
    let field = Field::new(p, 2 * m)?;
    let r = (n - k) / 2;
    let mut budget = options.budget;
    let mut found: Vec<StabilizerCode> = Vec::new();
    let mut seen: Vec<Matrix> = Vec::new();
    let mut consider = |code: LinearCode, found: &mut Vec<StabilizerCode>| -> Result<()> {
        if code.dim() != r || !code.is_hermitian_self_orthogonal() || seen.contains(code.generator()) {
            return Ok(());
        }
        seen.push(code.generator().clone());
        found.push(StabilizerCode::from_classical_code(&code, &options.build)?);
        Ok(())
    };

    if n % p as usize != 0 {
        let q = field.order() as u64;
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        let mut covered = vec![false; n];
        for j in 0..n {
            if !covered[j] {
                let c = cyclotomic_closure(&[j], q, n);
                for &e in &c {
                    covered[e] = true;
                }
                cosets.push(c);
            }
        }
        if cosets.len() < 24 {
            for mask in 0u32..(1 << cosets.len()) {
                let size: usize = (0..cosets.len()).filter(|&i| mask >> i & 1 == 1).map(|i| cosets[i].len()).sum();
                if size != n - r {
                    continue;
                }
                if budget == 0 {
                    break;
                }
                budget -= 1;
                let roots: Vec<usize> =
                    (0..cosets.len()).filter(|&i| mask >> i & 1 == 1).flat_map(|i| cosets[i].clone()).collect();
                let cyclic = CyclicCode::from_roots(&field, n, &roots)?;
                consider(cyclic.code().clone(), &mut found)?;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    while budget > 0 {
        budget -= 1;
        if let Some(code) = random_self_orthogonal(&field, n, r, &mut rng) {
            consider(code, &mut found)?;
        }
    }
    found.sort_by_key(|c| std::cmp::Reverse(c.distance().value()));
    Ok(found)
}

fn random_self_orthogonal(field: &Arc<Field>, n: usize, r: usize, rng: &mut ChaCha8Rng) -> Option<LinearCode> {
    let m = field.degree() / 2;
    let q = field.order();
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for _ in 0..r {
        let conj: Vec<Vec<Elem>> = rows.iter().map(|row| row.iter().map(|&e| field.frobenius(e, m)).collect()).collect();
        let span = Matrix::from_rows(&rows, n).ok()?;
        let allowed = Matrix::from_rows(&conj, n).ok()?.nullspace(field);
        let pick = (0..32).find_map(|_| {
            let coeffs: Vec<Elem> = (0..allowed.rows()).map(|_| Elem(rng.random_range(0..q))).collect();
            let x = allowed.left_apply(&coeffs, field);
            let xc: Vec<Elem> = x.iter().map(|&e| field.frobenius(e, m)).collect();
            let isotropic = field.dot(&x, &xc).is_zero();
            (isotropic && !x.iter().all(|e| e.is_zero()) && !span.row_space_contains(&x, field)).then_some(x)
        })?;
        rows.push(pick);
    }
    LinearCode::from_rows(field, n, &rows).ok()
}
