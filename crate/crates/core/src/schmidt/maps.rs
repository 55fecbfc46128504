//! Maps known to preserve the Schmidt-rank restricted norms.
//!
//! On vectors: `u ⊗ v ↦ Pu ⊗ Qv` and, when `m = n`, `u ⊗ v ↦ Qv ⊗ Pu`, with
//! `P`, `Q` unitary. On operators: the transpose, local sandwiches
//! `X ↦ (P1 ⊗ Q1) X (P2 ⊗ Q2)`, and (for `k = 1`) the block-wise transpose.

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ONE};
use crate::tensor::{kron, partial_transpose_matrix, DimProfile};

fn check_square(name: &str, a: &ComplexMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::dims(format!(
            "{name} must be square, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

/// Matrix of `u ⊗ v ↦ Pu ⊗ Qv`, i.e. `P ⊗ Q`.
pub fn local_product_map(p: &ComplexMatrix, q: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_square("P", p)?;
    check_square("Q", q)?;
    Ok(kron(p, q))
}

/// Matrix of `u ⊗ v ↦ Qv ⊗ Pu`; requires `P` and `Q` of equal size.
pub fn swap_product_map(p: &ComplexMatrix, q: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_square("P", p)?;
    check_square("Q", q)?;
    let m = p.rows();
    if q.rows() != m {
        return Err(Error::dims(format!("swap form needs m = n, got {m} and {}", q.rows())));
    }
    let mut swap = ComplexMatrix::zeros(m * m, m * m);
    for i in 0..m {
        for j in 0..m {
            swap[(j * m + i, i * m + j)] = ONE;
        }
    }
    Ok(&swap * &kron(p, q))
}

pub fn matrix_transpose(x: &ComplexMatrix) -> ComplexMatrix {
    x.transpose()
}

/// `X ↦ (P1 ⊗ Q1) X (P2 ⊗ Q2)`.
pub fn local_sandwich(
    x: &ComplexMatrix,
    p1: &ComplexMatrix,
    q1: &ComplexMatrix,
    p2: &ComplexMatrix,
    q2: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    local_product_map(p1, q1)?
        .matmul(x)?
        .matmul(&local_product_map(p2, q2)?)
}

/// `[X_ij] ↦ [X_ijᵗ]` for the `m x m` grid of `n x n` blocks.
pub fn block_transpose(x: &ComplexMatrix, m: usize, n: usize) -> Result<ComplexMatrix> {
    partial_transpose_matrix(x, &DimProfile::new(vec![m, n])?, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{haar_unitary, seeded_rng, unit_vector};
    use crate::vector;

    #[test]
    fn product_maps_act_on_product_vectors() {
        let mut rng = seeded_rng(51, 0);
        let p = haar_unitary(2, &mut rng);
        let q = haar_unitary(2, &mut rng);
        let u = unit_vector(2, &mut rng);
        let v = unit_vector(2, &mut rng);
        let w = vector::kron(&u, &v);
        let pu = p.matvec(&u).unwrap();
        let qv = q.matvec(&v).unwrap();

        let a = local_product_map(&p, &q).unwrap().matvec(&w).unwrap();
        assert!(vector::max_abs_diff(&a, &vector::kron(&pu, &qv)) < 1e-14);
        let b = swap_product_map(&p, &q).unwrap().matvec(&w).unwrap();
        assert!(vector::max_abs_diff(&b, &vector::kron(&qv, &pu)) < 1e-14);

        assert!(swap_product_map(&p, &haar_unitary(3, &mut rng)).is_err());
    }

    #[test]
    fn block_transpose_transposes_blocks() {
        let x = ComplexMatrix::from_fn(4, 4, |i, j| num_complex::Complex64::new((4 * i + j) as f64, 0.0));
        let y = block_transpose(&x, 2, 2).unwrap();
        // block (0, 1) is rows 0..2, cols 2..4
        assert_eq!(y[(0, 3)], x[(1, 2)]);
        assert_eq!(y[(1, 2)], x[(0, 3)]);
        assert_eq!(y[(0, 0)], x[(0, 0)]);
    }
}
