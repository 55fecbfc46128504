//! Small helpers for complex vectors stored as plain slices.

use num_complex::Complex64;

use crate::matrix::ZERO;

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `u* v`.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Unit vector in the direction of `v`, or `None` for a (numerically) zero vector.
pub fn normalized(v: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = norm(v);
    if n <= f64::MIN_POSITIVE || !n.is_finite() {
        return None;
    }
    Some(v.iter().map(|z| z / n).collect())
}

/// Kronecker product of two vectors.
pub fn kron(u: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for a in u {
        out.extend(v.iter().map(|b| a * b));
    }
    out
}

pub fn scale(v: &[Complex64], c: Complex64) -> Vec<Complex64> {
    v.iter().map(|z| z * c).collect()
}

pub fn add(u: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn max_abs_diff(u: &[Complex64], v: &[Complex64]) -> f64 {
    if u.len() != v.len() {
        return f64::INFINITY;
    }
    u.iter().zip(v).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

/// Standard basis vector `e_i` of length `n`.
pub fn basis(n: usize, i: usize) -> Vec<Complex64> {
    let mut e = vec![ZERO; n];
    e[i] = Complex64::new(1.0, 0.0);
    e
}

pub fn from_real(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}
