//! Schmidt decompositions of bipartite vectors and the Schmidt-rank
//! restricted norms `‖w‖_k` and `|||C|||_k`.
//!
//! A vector `w ∈ C^{mn}` is identified with the `m x n` matrix `[w]` by
//! row-major reshape, so that `u ⊗ v` corresponds to `u vᵗ`. The singular
//! value decomposition `[w] = Σ s_j u_j v_jᵗ` is the Schmidt decomposition
//! `w = Σ s_j u_j ⊗ v_j`.

mod maps;
mod opnorm;

pub use maps::{block_transpose, local_product_map, local_sandwich, matrix_transpose, swap_product_map};
pub use opnorm::{k_operator_norm, AltMaxConfig, OperatorNormEstimate};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::matrix::ComplexMatrix;
use crate::tensor::reshape_vector;
use crate::vector;

/// Schmidt coefficients below `RANK_TOL * s_1` count as zero.
pub const RANK_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct SchmidtDecomposition {
    /// `s_1 >= s_2 >= ... >= 0`, `min(m, n)` of them.
    pub coefficients: Vec<f64>,
    /// `m x min(m, n)`, orthonormal columns.
    pub left_vectors: ComplexMatrix,
    /// `n x min(m, n)`, orthonormal columns.
    pub right_vectors: ComplexMatrix,
    pub rank: usize,
}

impl SchmidtDecomposition {
    pub fn left(&self, j: usize) -> Vec<Complex64> {
        self.left_vectors.column(j)
    }

    pub fn right(&self, j: usize) -> Vec<Complex64> {
        self.right_vectors.column(j)
    }

    /// `Σ_{j<terms} s_j u_j ⊗ v_j`.
    pub fn partial_sum(&self, terms: usize) -> Vec<Complex64> {
        let (m, n) = (self.left_vectors.rows(), self.right_vectors.rows());
        let mut w = vec![Complex64::new(0.0, 0.0); m * n];
        for j in 0..terms.min(self.coefficients.len()) {
            let t = vector::kron(&self.left(j), &self.right(j));
            for (x, y) in w.iter_mut().zip(t) {
                *x += y * self.coefficients[j];
            }
        }
        w
    }

    pub fn reconstruct(&self) -> Vec<Complex64> {
        self.partial_sum(self.coefficients.len())
    }
}

/// SVD of `[w]` through the eigensystem of the Gram matrix `[w][w]*`.
///
/// Coefficients are recomputed as `‖[w]* u_j‖` so that exact zeros stay at
/// round-off level relative to `s_1`; right vectors with coefficient above
/// `RANK_TOL * s_1` come from `[w]ᵗ conj(u_j) / s_j` and the rest are an
/// orthonormal completion.
pub fn schmidt_decompose(w: &[Complex64], m: usize, n: usize) -> Result<SchmidtDecomposition> {
    let a = reshape_vector(w, m, n)?;
    if a.max_abs() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let r = m.min(n);
    let gram = HermitianMatrix::symmetrize(&a * &a.adjoint());
    let es = gram.eigensystem()?;

    let at = a.transpose();
    let mut triples: Vec<(f64, Vec<Complex64>, Vec<Complex64>)> = (0..r)
        .map(|j| {
            let u = es.vector(j);
            let raw = at.matvec_unchecked(&u.iter().map(|z| z.conj()).collect::<Vec<_>>());
            (vector::norm(&raw), u, raw)
        })
        .collect();
    triples.sort_by(|x, y| y.0.total_cmp(&x.0));

    let s1 = triples[0].0;
    let rank = triples.iter().filter(|t| t.0 > RANK_TOL * s1).count();

    let mut left = ComplexMatrix::zeros(m, r);
    let mut right_cols = Vec::with_capacity(r);
    for (j, (s, u, raw)) in triples.iter().enumerate() {
        left.set_column(j, u);
        if j < rank {
            right_cols.push(vector::scale(raw, Complex64::new(1.0 / s, 0.0)));
        }
    }
    let right = complete_orthonormal(right_cols, n, r);
    let right_vectors = ComplexMatrix::from_fn(n, r, |i, j| right[j][i]);

    Ok(SchmidtDecomposition {
        coefficients: triples.iter().map(|t| t.0).collect(),
        left_vectors: left,
        right_vectors,
        rank,
    })
}

/// Orthonormalizes `cols` (Gram-Schmidt, two passes) and extends them with
/// standard basis vectors of `C^dim` until there are `target` columns.
fn complete_orthonormal(cols: Vec<Vec<Complex64>>, dim: usize, target: usize) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(target);
    let candidates = cols.into_iter().chain((0..dim).map(|i| vector::basis(dim, i)));
    for mut v in candidates {
        if out.len() == target {
            break;
        }
        for _ in 0..2 {
            for q in &out {
                let c = vector::inner(q, &v);
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= c * y;
                }
            }
        }
        // basis candidates nearly inside the current span are skipped
        if vector::norm(&v) > 1e-3 {
            out.push(vector::normalized(&v).expect("nonzero"));
        }
    }
    out
}

/// Schmidt rank of `w` (0 for the zero vector).
pub fn schmidt_rank(w: &[Complex64], m: usize, n: usize) -> Result<usize> {
    match schmidt_decompose(w, m, n) {
        Ok(d) => Ok(d.rank),
        Err(Error::ZeroVector) => Ok(0),
        Err(e) => Err(e),
    }
}

fn check_k(k: usize, m: usize, n: usize) -> Result<()> {
    if k == 0 || k > m.min(n) {
        return Err(Error::invalid(format!("k = {k} outside 1..={}", m.min(n))));
    }
    Ok(())
}

/// `‖w‖_k = (s_1² + ... + s_k²)^{1/2}`.
pub fn k_vector_norm(w: &[Complex64], m: usize, n: usize, k: usize) -> Result<f64> {
    check_k(k, m, n)?;
    match schmidt_decompose(w, m, n) {
        Ok(d) => Ok(d.coefficients[..k].iter().map(|s| s * s).sum::<f64>().sqrt()),
        Err(Error::ZeroVector) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// Keeps the top `k` Schmidt triples and renormalizes to unit length.
/// Ties between equal coefficients follow eigensolver order.
pub fn schmidt_rank_truncate(w: &[Complex64], m: usize, n: usize, k: usize) -> Result<Vec<Complex64>> {
    check_k(k, m, n)?;
    let d = schmidt_decompose(w, m, n)?;
    let kept = d.partial_sum(k);
    vector::normalized(&kept).ok_or(Error::ZeroVector)
}
