//! Real-linear maps on `H_N` as real `N² x N²` matrices over a fixed
//! orthonormal Hermitian basis, and constructors for the standard forms.
//!
//! Basis ordering (`herm-v1`, frozen): `E_jj` for `j = 0..N`, then for each
//! pair `j < k` in lexicographic order `S_jk = (E_jk + E_kj)/√2` followed by
//! `K_jk = i(E_jk - E_kj)/√2`. The basis is orthonormal under
//! `⟨X, Y⟩ = tr(XY)`, and `PreserverMap` column `α` holds the coordinates of
//! `φ(H_α)`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::matrix::{ComplexMatrix, I};
use crate::random::seeded_rng;
use crate::tensor::{partial_transpose_flags, DimProfile};

/// Identifier of the basis ordering used in serialized maps.
pub const BASIS_ID: &str = "herm-v1";

/// Unitarity gate for [`conjugation_map`] inputs.
pub const CONJUGATION_UNITARY_TOL: f64 = 1e-8;
/// Unitarity gate for [`CanonicalForm`].
pub const CANONICAL_UNITARY_TOL: f64 = 1e-10;

/// One element of the `herm-v1` basis (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisElement {
    /// `E_jj`
    Diagonal(usize),
    /// `(E_jk + E_kj)/√2`
    Symmetric(usize, usize),
    /// `i(E_jk - E_kj)/√2`
    Antisymmetric(usize, usize),
}

/// The `herm-v1` orthonormal basis of `H_N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HermitianBasis {
    n: usize,
}

impl HermitianBasis {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `N²`.
    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn describe(&self, alpha: usize) -> BasisElement {
        let n = self.n;
        assert!(alpha < n * n, "basis index {alpha} out of range");
        if alpha < n {
            return BasisElement::Diagonal(alpha);
        }
        let pair = (alpha - n) / 2;
        let (j, k) = pair_from_index(n, pair);
        if (alpha - n).is_multiple_of(2) {
            BasisElement::Symmetric(j, k)
        } else {
            BasisElement::Antisymmetric(j, k)
        }
    }

    pub fn element(&self, alpha: usize) -> HermitianMatrix {
        let n = self.n;
        let mut m = ComplexMatrix::zeros(n, n);
        match self.describe(alpha) {
            BasisElement::Diagonal(j) => m[(j, j)] = Complex64::new(1.0, 0.0),
            BasisElement::Symmetric(j, k) => {
                m[(j, k)] = Complex64::new(FRAC_1_SQRT_2, 0.0);
                m[(k, j)] = Complex64::new(FRAC_1_SQRT_2, 0.0);
            }
            BasisElement::Antisymmetric(j, k) => {
                m[(j, k)] = Complex64::new(0.0, FRAC_1_SQRT_2);
                m[(k, j)] = Complex64::new(0.0, -FRAC_1_SQRT_2);
            }
        }
        HermitianMatrix::symmetrize(m)
    }

    /// `tr(H_α Y)` for every `α`. Complex-linear in `Y`; real for Hermitian `Y`.
    pub fn complex_coordinates(&self, y: &ComplexMatrix) -> Vec<Complex64> {
        let n = self.n;
        let mut c = Vec::with_capacity(n * n);
        c.extend((0..n).map(|j| y[(j, j)]));
        for j in 0..n {
            for k in j + 1..n {
                let (jk, kj) = (y[(j, k)], y[(k, j)]);
                c.push((kj + jk) * FRAC_1_SQRT_2);
                c.push(I * (kj - jk) * FRAC_1_SQRT_2);
            }
        }
        c
    }

    pub fn coordinates(&self, x: &HermitianMatrix) -> Vec<f64> {
        self.complex_coordinates(x.matrix()).into_iter().map(|z| z.re).collect()
    }

    /// `Σ c_α H_α` for complex coefficients.
    pub fn complex_combination(&self, c: &[Complex64]) -> ComplexMatrix {
        let n = self.n;
        let mut m = ComplexMatrix::zeros(n, n);
        for j in 0..n {
            m[(j, j)] = c[j];
        }
        let mut idx = n;
        for j in 0..n {
            for k in j + 1..n {
                let (s, a) = (c[idx], c[idx + 1]);
                m[(j, k)] = (s + I * a) * FRAC_1_SQRT_2;
                m[(k, j)] = (s - I * a) * FRAC_1_SQRT_2;
                idx += 2;
            }
        }
        m
    }

    pub fn combination(&self, c: &[f64]) -> HermitianMatrix {
        let n = self.n;
        let mut m = ComplexMatrix::zeros(n, n);
        for j in 0..n {
            m[(j, j)] = Complex64::new(c[j], 0.0);
        }
        let mut idx = n;
        for j in 0..n {
            for k in j + 1..n {
                let z = Complex64::new(c[idx], c[idx + 1]) * FRAC_1_SQRT_2;
                m[(j, k)] = z;
                m[(k, j)] = z.conj();
                idx += 2;
            }
        }
        HermitianMatrix::symmetrize(m)
    }
}

fn pair_from_index(n: usize, mut pair: usize) -> (usize, usize) {
    for j in 0..n {
        let row = n - 1 - j;
        if pair < row {
            return (j, j + 1 + pair);
        }
        pair -= row;
    }
    unreachable!("pair index out of range")
}

/// A real-linear map `φ: H_N → H_N` in the `herm-v1` basis.
#[derive(Clone, PartialEq)]
pub struct PreserverMap {
    n: usize,
    /// Row-major `N² x N²`.
    matrix: Vec<f64>,
}

impl PreserverMap {
    /// Wraps a row-major `N² x N²` real matrix.
    pub fn from_matrix(n: usize, matrix: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("N must be positive"));
        }
        let d = n * n;
        if matrix.len() != d * d {
            return Err(Error::dims(format!(
                "map on H_{n} needs {} entries, got {}",
                d * d,
                matrix.len()
            )));
        }
        if matrix.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("map matrix has a non-finite entry"));
        }
        Ok(Self { n, matrix })
    }

    /// Builds the representation by evaluating `f` on every basis element.
    pub fn from_fn(n: usize, mut f: impl FnMut(&HermitianMatrix) -> Result<HermitianMatrix>) -> Result<Self> {
        let basis = HermitianBasis::new(n);
        let d = n * n;
        let mut matrix = vec![0.0; d * d];
        for alpha in 0..d {
            let image = f(&basis.element(alpha))?;
            if image.dim() != n {
                return Err(Error::dims(format!("image in H_{} for map on H_{n}", image.dim())));
            }
            for (row, c) in basis.coordinates(&image).into_iter().enumerate() {
                matrix[row * d + alpha] = c;
            }
        }
        Ok(Self { n, matrix })
    }

    pub fn identity(n: usize) -> Self {
        let d = n * n;
        let mut matrix = vec![0.0; d * d];
        for a in 0..d {
            matrix[a * d + a] = 1.0;
        }
        Self { n, matrix }
    }

    /// `N`, the size of the matrices acted on.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> HermitianBasis {
        HermitianBasis::new(self.n)
    }

    /// Row-major `N² x N²` representation.
    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        let d = self.n * self.n;
        self.matrix[row * d + col]
    }

    fn apply_coordinates<T>(&self, c: &[T]) -> Vec<T>
    where
        T: Copy + Default + std::ops::AddAssign + std::ops::Mul<f64, Output = T>,
    {
        let d = self.n * self.n;
        (0..d)
            .map(|row| {
                let mut acc = T::default();
                for (m, &x) in self.matrix[row * d..(row + 1) * d].iter().zip(c) {
                    if *m != 0.0 {
                        acc += x * *m;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn apply(&self, x: &HermitianMatrix) -> Result<HermitianMatrix> {
        if x.dim() != self.n {
            return Err(Error::dims(format!("H_{} input for map on H_{}", x.dim(), self.n)));
        }
        let basis = self.basis();
        Ok(basis.combination(&self.apply_coordinates(&basis.coordinates(x))))
    }

    /// Complex-linear extension to all of `M_N`.
    pub fn apply_complex(&self, y: &ComplexMatrix) -> Result<ComplexMatrix> {
        if y.rows() != self.n || y.cols() != self.n {
            return Err(Error::dims(format!(
                "{}x{} input for map on H_{}",
                y.rows(),
                y.cols(),
                self.n
            )));
        }
        let basis = self.basis();
        Ok(basis.complex_combination(&self.apply_coordinates(&basis.complex_coordinates(y))))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::dims(format!(
                "cannot compose maps on H_{} and H_{}",
                self.n, other.n
            )));
        }
        let d = self.n * self.n;
        let mut out = vec![0.0; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.matrix[i * d + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] += a * other.matrix[k * d + j];
                }
            }
        }
        Ok(Self { n: self.n, matrix: out })
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            n: self.n,
            matrix: self.matrix.iter().map(|x| x * c).collect(),
        }
    }

    /// Entry-wise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::dims(format!(
                "cannot add maps on H_{} and H_{}",
                self.n, other.n
            )));
        }
        Ok(Self {
            n: self.n,
            matrix: self.matrix.iter().zip(&other.matrix).map(|(a, b)| a + b).collect(),
        })
    }

    /// Max-abs entry difference of the representations.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// `Id_m ⊗ self` on `H_{m N}`: acts block-wise on the `m x m` grid of
    /// `N x N` blocks through the complex-linear extension.
    pub fn identity_tensor(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("m must be positive"));
        }
        let n = self.n;
        Self::from_fn(m * n, |x| {
            let mut out = ComplexMatrix::zeros(m * n, m * n);
            for bi in 0..m {
                for bj in 0..m {
                    let block = ComplexMatrix::from_fn(n, n, |r, c| x.matrix()[(bi * n + r, bj * n + c)]);
                    let image = self.apply_complex(&block)?;
                    for r in 0..n {
                        for c in 0..n {
                            out[(bi * n + r, bj * n + c)] = image[(r, c)];
                        }
                    }
                }
            }
            Ok(HermitianMatrix::symmetrize(out))
        })
    }
}

impl fmt::Debug for PreserverMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PreserverMap")
            .field("N", &self.n)
            .field("entries", &self.matrix.len())
            .finish()
    }
}

/// `X ↦ S X S*` for any square `S`.
pub fn congruence_map(s: &ComplexMatrix) -> Result<PreserverMap> {
    if !s.is_square() {
        return Err(Error::dims(format!("S must be square, got {}x{}", s.rows(), s.cols())));
    }
    PreserverMap::from_fn(s.rows(), |x| x.conjugated_by(s))
}

/// `X ↦ U X U*`; `U` must be unitary to [`CONJUGATION_UNITARY_TOL`].
pub fn conjugation_map(u: &ComplexMatrix) -> Result<PreserverMap> {
    if !u.is_square() {
        return Err(Error::dims(format!("U must be square, got {}x{}", u.rows(), u.cols())));
    }
    let deviation = u.unitarity_deviation();
    if deviation > CONJUGATION_UNITARY_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    congruence_map(u)
}

/// `X ↦ Xᵗ`.
pub fn transpose_map(n: usize) -> Result<PreserverMap> {
    if n == 0 {
        return Err(Error::invalid("N must be positive"));
    }
    PreserverMap::from_fn(n, |x| Ok(x.transpose()))
}

/// `X ↦ PT_slot(X)` (0-based slot).
pub fn partial_transpose_map(profile: &DimProfile, slot: usize) -> Result<PreserverMap> {
    let mut flags = vec![false; profile.parties()];
    *flags
        .get_mut(slot)
        .ok_or_else(|| Error::invalid(format!("slot {slot} out of range for {} factors", profile.parties())))? = true;
    flagged_transpose_map(profile, &flags)
}

/// Composition of the partial transposes at every flagged slot.
pub fn flagged_transpose_map(profile: &DimProfile, flags: &[bool]) -> Result<PreserverMap> {
    PreserverMap::from_fn(profile.total(), |x| {
        Ok(HermitianMatrix::symmetrize(partial_transpose_flags(
            x.matrix(),
            profile,
            flags,
        )?))
    })
}

/// Haar-random `n x n` unitary, deterministic per seed.
pub fn haar_unitary(n: usize, seed: u64) -> ComplexMatrix {
    crate::random::haar_unitary(n, &mut seeded_rng(seed, 0))
}

/// Global sign `λ` of a canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn from_int(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn as_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Per-factor choice between the identity and the transpose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flag {
    Identity,
    Transpose,
}

impl Flag {
    pub fn is_transpose(self) -> bool {
        self == Flag::Transpose
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Flag::Identity => "id",
            Flag::Transpose => "t",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "id" => Some(Flag::Identity),
            "t" => Some(Flag::Transpose),
            _ => None,
        }
    }

    /// Flag vector number `bits` out of `2^m`: bit `p` set means slot `p` is transposed.
    pub fn vector_from_bits(bits: usize, m: usize) -> Vec<Flag> {
        (0..m)
            .map(|p| {
                if bits >> p & 1 == 1 {
                    Flag::Transpose
                } else {
                    Flag::Identity
                }
            })
            .collect()
    }
}

/// Multiplies `u` by a global phase so that the first entry of its first
/// column with modulus above `1e-12 max|u|` is real and positive.
pub fn fix_phase(u: &ComplexMatrix) -> ComplexMatrix {
    let threshold = 1e-12 * u.max_abs();
    let pivot = (0..u.rows()).map(|i| u[(i, 0)]).find(|z| z.norm() > threshold);
    match pivot {
        Some(z) => u.scale(z.conj() / z.norm()),
        None => u.clone(),
    }
}

/// `X ↦ λ U (f_1 ⊗ ... ⊗ f_m)(X) U*` where each `f_p` is the identity or the
/// transpose on factor `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalForm {
    sign: Sign,
    unitary: ComplexMatrix,
    flags: Vec<Flag>,
    profile: DimProfile,
}

impl CanonicalForm {
    /// Validates sizes and unitarity, then applies the phase convention to `unitary`.
    pub fn new(sign: Sign, unitary: ComplexMatrix, flags: Vec<Flag>, profile: DimProfile) -> Result<Self> {
        if flags.len() != profile.parties() {
            return Err(Error::dims(format!(
                "{} flags for {} factors",
                flags.len(),
                profile.parties()
            )));
        }
        if unitary.rows() != profile.total() || !unitary.is_square() {
            return Err(Error::dims(format!(
                "{}x{} unitary for total dimension {}",
                unitary.rows(),
                unitary.cols(),
                profile.total()
            )));
        }
        let deviation = unitary.unitarity_deviation();
        if deviation > CANONICAL_UNITARY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self {
            sign,
            unitary: fix_phase(&unitary),
            flags,
            profile,
        })
    }

    /// Random canonical form with a Haar unitary drawn from stream 0 of `seed`.
    pub fn random(profile: &DimProfile, sign: Sign, flags: Vec<Flag>, seed: u64) -> Result<Self> {
        Self::new(sign, haar_unitary(profile.total(), seed), flags, profile.clone())
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn profile(&self) -> &DimProfile {
        &self.profile
    }

    pub fn transpose_mask(&self) -> Vec<bool> {
        self.flags.iter().map(|f| f.is_transpose()).collect()
    }

    /// `λ U (⊗ f_p(A_p)) U*` computed directly from the factors.
    pub fn apply_to_product(&self, factors: &[HermitianMatrix]) -> Result<HermitianMatrix> {
        if factors.len() != self.flags.len() {
            return Err(Error::dims(format!(
                "{} factors for {} slots",
                factors.len(),
                self.flags.len()
            )));
        }
        let images: Vec<HermitianMatrix> = factors
            .iter()
            .zip(&self.flags)
            .map(|(a, f)| if f.is_transpose() { a.transpose() } else { a.clone() })
            .collect();
        let product = crate::tensor::kron_hermitian(&images)?;
        if product.dim() != self.profile.total() {
            return Err(Error::dims("factor sizes do not match the profile"));
        }
        Ok(product.conjugated_by(&self.unitary)?.scale(self.sign.value()))
    }
}

/// The map `λ conj_U ∘ (partial transposes at flagged slots)`.
pub fn canonical_map(c: &CanonicalForm) -> Result<PreserverMap> {
    let mask = c.transpose_mask();
    let lambda = c.sign.value();
    PreserverMap::from_fn(c.profile.total(), |x| {
        let t = partial_transpose_flags(x.matrix(), &c.profile, &mask)?;
        Ok(HermitianMatrix::symmetrize(c.unitary.conjugate(&t)?).scale(lambda))
    })
}
