//! Hermitian matrices, their eigensystems, spectra and spectral radii.
//!
//! The eigensolver is a cyclic complex Jacobi iteration. Every returned
//! eigensystem satisfies `A = V diag(λ) V*` with max-abs residual at most
//! `1e-9 (1 + max|A|)` and `V*V = I` to `1e-10`; anything worse is reported
//! as [`Error::SolverFailure`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ZERO};

/// Absolute tolerance on `max|A - A*|` accepted at construction.
pub const HERM_TOL: f64 = 1e-12;

const MAX_SWEEPS: usize = 64;
const OFF_DIAG_TOL: f64 = 1e-15;

/// A validated Hermitian matrix. The stored form is exactly `(A + A*)/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    inner: ComplexMatrix,
}

impl HermitianMatrix {
    /// Validates `a` against [`HERM_TOL`] and stores its symmetrization.
    pub fn new(a: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(a, HERM_TOL)
    }

    /// As [`HermitianMatrix::new`] with a caller-chosen absolute tolerance.
    pub fn with_tolerance(a: ComplexMatrix, tol: f64) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::dims(format!(
                "Hermitian matrix must be square, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let deviation = a.hermiticity_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self::symmetrize(a))
    }

    /// Symmetrizes without checking; for matrices Hermitian by construction.
    pub(crate) fn symmetrize(a: ComplexMatrix) -> Self {
        let n = a.rows();
        let sym = ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(a[(i, i)].re, 0.0)
            } else {
                (a[(i, j)] + a[(j, i)].conj()) * 0.5
            }
        });
        Self { inner: sym }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            inner: ComplexMatrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            inner: ComplexMatrix::identity(n),
        }
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        Self {
            inner: ComplexMatrix::from_real_diag(diag),
        }
    }

    /// Matrix unit `E_jj` (0-based).
    pub fn diag_unit(n: usize, j: usize) -> Self {
        Self {
            inner: ComplexMatrix::unit(n, j, j),
        }
    }

    pub fn dim(&self) -> usize {
        self.inner.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.inner
    }

    pub fn transpose(&self) -> Self {
        Self {
            inner: self.inner.transpose(),
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            inner: self.inner.scale_real(c),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::dims(format!(
                "cannot add H_{} and H_{}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(Self {
            inner: &self.inner + &other.inner,
        })
    }

    pub fn trace(&self) -> f64 {
        self.inner.trace().re
    }

    /// `U A U*`.
    pub fn conjugated_by(&self, u: &ComplexMatrix) -> Result<Self> {
        Ok(Self::symmetrize(u.conjugate(&self.inner)?))
    }

    pub fn eigensystem(&self) -> Result<Eigensystem> {
        eigensystem(self)
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        spectrum(self)
    }

    pub fn spectral_radius(&self) -> Result<f64> {
        spectral_radius(self)
    }
}

/// Eigenvalues sorted non-increasing.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts `values` descending.
    pub fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn radius(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn negated(&self) -> Self {
        Self::from_values(self.values.iter().map(|v| -v).collect())
    }

    /// Worst pairwise mixed deviation `|a - b| / (1 + max(|a|, |b|))`.
    pub fn deviation(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::dims(format!(
                "spectra of length {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| relative_gap(*a, *b))
            .fold(0.0, f64::max))
    }
}

/// `|a - b| / (1 + max(|a|, |b|))`.
pub fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + a.abs().max(b.abs()))
}

/// Eigenvalues (descending) with aligned unit eigenvector columns.
#[derive(Clone, Debug)]
pub struct Eigensystem {
    pub spectrum: Spectrum,
    pub vectors: ComplexMatrix,
}

impl Eigensystem {
    /// Column `j` of the eigenvector matrix.
    pub fn vector(&self, j: usize) -> Vec<Complex64> {
        self.vectors.column(j)
    }

    /// `V diag(λ) V*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.vectors;
        let n = v.rows();
        let lam = self.spectrum.values();
        ComplexMatrix::from_fn(n, n, |i, j| (0..n).map(|k| v[(i, k)] * lam[k] * v[(j, k)].conj()).sum())
    }
}

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
pub fn eigensystem(a: &HermitianMatrix) -> Result<Eigensystem> {
    let n = a.dim();
    let mut m = a.matrix().clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = m.frobenius_norm();

    let mut sweeps = 0;
    while off_diagonal_norm(&m) > OFF_DIAG_TOL * scale {
        if sweeps == MAX_SWEEPS {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep original column order
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));
    let values: Vec<f64> = order.iter().map(|&k| m[(k, k)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    let system = Eigensystem {
        spectrum: Spectrum { values },
        vectors,
    };

    let residual = system.reconstruct().max_abs_diff(a.matrix());
    let orthogonality = system.vectors.unitarity_deviation();
    if residual > 1e-9 * (1.0 + a.matrix().max_abs()) || orthogonality > 1e-10 {
        return Err(Error::SolverFailure {
            sweeps,
            residual: residual.max(orthogonality),
        });
    }
    Ok(system)
}

pub fn spectrum(a: &HermitianMatrix) -> Result<Spectrum> {
    Ok(eigensystem(a)?.spectrum)
}

pub fn spectral_radius(a: &HermitianMatrix) -> Result<f64> {
    Ok(spectrum(a)?.radius())
}

/// Multiset comparison of sorted spectra under the mixed tolerance
/// `|s1_i - s2_i| <= tol (1 + max(|s1_i|, |s2_i|))`.
pub fn spectra_equal(s1: &Spectrum, s2: &Spectrum, tol: f64) -> Result<bool> {
    Ok(s1.deviation(s2)? <= tol)
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates `m[p][q]` with the unitary `G = diag(1, e^{-iφ}) R(θ)` acting
/// on the (p, q) plane, `m <- G* m G`, `v <- v G`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_infinite() {
        0.0
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    if s == 0.0 {
        return;
    }

    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    let n = m.rows();
    for k in 0..n {
        let (x, y) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = x * g_pp + y * g_qp;
        m[(k, q)] = x * g_pq + y * g_qq;
    }
    for k in 0..n {
        let (x, y) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = g_pp.conj() * x + g_qp.conj() * y;
        m[(q, k)] = g_pq.conj() * x + g_qq.conj() * y;
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

    for k in 0..n {
        let (x, y) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = x * g_pp + y * g_qp;
        v[(k, q)] = x * g_pq + y * g_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{I, ONE};
    use crate::random::{haar_unitary, random_hermitian, seeded_rng};

    fn c0() -> HermitianMatrix {
        let mut m = ComplexMatrix::zeros(4, 4);
        for &(i, j) in &[(0, 0), (0, 3), (3, 0), (3, 3)] {
            m[(i, j)] = ONE;
        }
        HermitianMatrix::new(m).unwrap()
    }

    #[test]
    fn diagonal_input_sorts_and_permutes() {
        let a = HermitianMatrix::from_real_diag(&[3.0, 1.0, 2.0]);
        let es = a.eigensystem().unwrap();
        assert_eq!(es.spectrum.values(), &[3.0, 2.0, 1.0]);
        // V is the permutation taking (e0, e2, e1)
        let v = &es.vectors;
        assert_eq!(v[(0, 0)].norm(), 1.0);
        assert_eq!(v[(2, 1)].norm(), 1.0);
        assert_eq!(v[(1, 2)].norm(), 1.0);
    }

    #[test]
    fn off_diagonal_pair_has_plus_minus_one() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = ONE;
        m[(1, 0)] = ONE;
        let s = HermitianMatrix::new(m).unwrap().spectrum().unwrap();
        assert!((s.values()[0] - 1.0).abs() < 1e-14);
        assert!((s.values()[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn rank_one_bell_projector() {
        // C0 = w w* with w = (1, 0, 0, 1)
        let w = [ONE, ZERO, ZERO, ONE];
        let outer = ComplexMatrix::from_fn(4, 4, |i, j| w[i] * w[j].conj());
        assert_eq!(&outer, c0().matrix());
        let s = c0().spectrum().unwrap();
        let expected = Spectrum::from_values(vec![2.0, 0.0, 0.0, 0.0]);
        assert!(s.deviation(&expected).unwrap() < 1e-12);
        assert!((c0().spectral_radius().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn spectral_radius_examples() {
        let a = HermitianMatrix::from_real_diag(&[1.0, -3.0]);
        assert_eq!(a.spectral_radius().unwrap(), 3.0);
        assert_eq!(HermitianMatrix::zeros(3).spectral_radius().unwrap(), 0.0);
    }

    #[test]
    fn spectra_equal_examples() {
        let a = Spectrum::from_values(vec![2.0, 0.0, 0.0, 0.0]);
        let b = Spectrum::from_values(vec![1.0, 1.0, 1.0, -1.0]);
        assert!(spectra_equal(&a, &a, 1e-9).unwrap());
        assert!(!spectra_equal(&a, &b, 1e-9).unwrap());
        let c = Spectrum::from_values(vec![1.0, 1.0 + 5e-10]);
        let d = Spectrum::from_values(vec![1.0, 1.0]);
        assert!(spectra_equal(&c, &d, 1e-9).unwrap());
        assert!(spectra_equal(&a, &c, 1e-9).is_err());
    }

    #[test]
    fn construction_symmetrizes_within_tolerance() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = Complex64::new(1.0, 1e-13);
        m[(1, 0)] = ONE;
        let h = HermitianMatrix::new(m.clone()).unwrap();
        assert_eq!(h.matrix().hermiticity_deviation(), 0.0);
        m[(0, 1)] = I;
        assert!(matches!(HermitianMatrix::new(m), Err(Error::NotHermitian { .. })));
        assert!(HermitianMatrix::new(ComplexMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn random_complex_inputs_meet_residual_contract() {
        let mut rng = seeded_rng(11, 0);
        for n in 1..=9 {
            let a = random_hermitian(n, &mut rng);
            let es = a.eigensystem().unwrap();
            let res = es.reconstruct().max_abs_diff(a.matrix());
            assert!(res <= 1e-12 * (1.0 + a.matrix().max_abs()), "n={n} residual {res:e}");
            assert!(es.vectors.unitarity_deviation() <= 1e-13);
        }
    }

    #[test]
    fn trace_and_unitary_invariance() {
        let mut rng = seeded_rng(12, 0);
        for n in [2, 3, 5, 8] {
            let a = random_hermitian(n, &mut rng);
            let s = a.spectrum().unwrap();
            assert!((s.sum() - a.trace()).abs() <= 1e-9 * (1.0 + a.trace().abs()));
            let v = haar_unitary(n, &mut rng);
            let b = a.conjugated_by(&v).unwrap();
            assert!(spectra_equal(&s, &b.spectrum().unwrap(), 1e-9).unwrap());
            assert!(spectra_equal(&s, &a.transpose().spectrum().unwrap(), 1e-9).unwrap());
        }
    }

    #[test]
    fn degenerate_spectrum_converges() {
        let mut rng = seeded_rng(13, 0);
        let v = haar_unitary(6, &mut rng);
        let d = HermitianMatrix::from_real_diag(&[1.0, 1.0, 1.0, -2.0, -2.0, 0.0]);
        let a = d.conjugated_by(&v).unwrap();
        let s = a.spectrum().unwrap();
        let expected = Spectrum::from_values(vec![1.0, 1.0, 1.0, 0.0, -2.0, -2.0]);
        assert!(s.deviation(&expected).unwrap() < 1e-12);
    }
}
