//! Seeded random generators for matrices, unitaries and vectors.
//!
//! Every draw goes through an explicit [`ChaCha8Rng`]. [`seeded_rng`] derives
//! independent streams from a master seed so that sample `i` of a sweep is a
//! function of `(seed, i)` alone.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::hermitian::HermitianMatrix;
use crate::matrix::ComplexMatrix;
use crate::vector;

/// RNG for stream `stream` of master seed `seed`.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex Gaussian: real and imaginary parts `N(0, 1/2)`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

pub fn gaussian_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    (0..n).map(|_| complex_gaussian(rng)).collect()
}

/// Uniformly distributed unit vector in `C^n`.
pub fn unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    loop {
        if let Some(u) = vector::normalized(&gaussian_vector(n, rng)) {
            return u;
        }
    }
}

/// Random Hermitian matrix `(G + G*)/2` with complex Gaussian `G`.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianMatrix {
    HermitianMatrix::symmetrize(gaussian_matrix(n, n, rng))
}

/// Haar-distributed unitary: Gram-Schmidt QR of a complex Gaussian matrix.
///
/// Gram-Schmidt produces `R` with a positive real diagonal, which is exactly
/// the phase normalization that makes `Q` Haar distributed.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        if let Some(q) = orthonormalize_columns(&gaussian_matrix(n, n, rng)) {
            return q;
        }
    }
}

/// `V diag(d) V*` with Haar `V` and `d` uniform on `[-1, 1]^n`.
pub fn random_product_factor<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianMatrix {
    let d: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
    let v = haar_unitary(n, rng);
    HermitianMatrix::from_real_diag(&d)
        .conjugated_by(&v)
        .expect("square factors")
}

/// Modified Gram-Schmidt with one re-orthogonalization pass.
/// `None` if the columns are numerically dependent.
pub(crate) fn orthonormalize_columns(a: &ComplexMatrix) -> Option<ComplexMatrix> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut q = ComplexMatrix::zeros(rows, cols);
    let mut done: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut v = a.column(j);
        let start = vector::norm(&v);
        for _ in 0..2 {
            for prev in &done {
                let c = vector::inner(prev, &v);
                for (x, p) in v.iter_mut().zip(prev) {
                    *x -= c * p;
                }
            }
        }
        let len = vector::norm(&v);
        if len <= 1e-10 * start.max(f64::MIN_POSITIVE) {
            return None;
        }
        let v: Vec<Complex64> = v.iter().map(|z| z / len).collect();
        q.set_column(j, &v);
        done.push(v);
    }
    Some(q)
}
