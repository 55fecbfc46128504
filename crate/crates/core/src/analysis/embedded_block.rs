use crate::error::{Error, Result};
use crate::hermitian::{spectra_equal, HermitianMatrix, Spectrum};

/// Outcome of testing the embedded-block statement on one matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedBlockReport {
    /// `σ(A) = {a_1..a_n, 0..0}` and `σ(A + t(I_n ⊕ 0)) = {a_1+t..a_n+t, 0..0}`
    /// for every sampled `t`.
    pub hypothesis: bool,
    /// `A = B ⊕ 0`: every entry outside the top-left `n x n` block is within `tol`.
    pub conclusion: bool,
    /// Largest modulus outside the top-left block.
    pub off_block_mass: f64,
}

impl EmbeddedBlockReport {
    pub fn holds(&self) -> bool {
        self.hypothesis && self.conclusion
    }
}

/// Tests both sides of: if `σ(A + t(I_n ⊕ 0)) = {a_1 + t, ..., a_n + t, 0, ..., 0}`
/// for all `t`, then `A = B ⊕ 0_{m-n}`.
///
/// The `a_i` are the `n` eigenvalues of `A` left after removing the `m - n`
/// closest to zero.
pub fn embedded_block_report(
    a: &HermitianMatrix,
    n: usize,
    t_samples: &[f64],
    tol: f64,
) -> Result<EmbeddedBlockReport> {
    let m = a.dim();
    if n == 0 || n >= m {
        return Err(Error::invalid(format!("block size n = {n} must satisfy 1 <= n < {m}")));
    }

    let mut by_size: Vec<f64> = a.spectrum()?.values().to_vec();
    by_size.sort_by(|x, y| x.abs().total_cmp(&y.abs()));
    let (zeros, block) = by_size.split_at(m - n);
    let scale = 1.0 + by_size.last().map_or(0.0, |v| v.abs());
    let mut hypothesis = zeros.iter().all(|z| z.abs() <= tol * scale);

    let shift_pattern: Vec<f64> = (0..m).map(|i| if i < n { 1.0 } else { 0.0 }).collect();
    let projector = HermitianMatrix::from_real_diag(&shift_pattern);
    for &t in t_samples {
        if !hypothesis {
            break;
        }
        let shifted = a.add(&projector.scale(t))?;
        let expected = Spectrum::from_values(
            block
                .iter()
                .map(|v| v + t)
                .chain(std::iter::repeat_n(0.0, m - n))
                .collect(),
        );
        hypothesis = spectra_equal(&shifted.spectrum()?, &expected, tol)?;
    }

    let mat = a.matrix();
    let mut off_block_mass: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            if i >= n || j >= n {
                off_block_mass = off_block_mass.max(mat[(i, j)].norm());
            }
        }
    }
    Ok(EmbeddedBlockReport {
        hypothesis,
        conclusion: off_block_mass <= tol,
        off_block_mass,
    })
}

/// `true` iff the shifted-spectrum hypothesis holds for every sampled `t`
/// and `A` is supported on its top-left `n x n` block.
pub fn embedded_block_test(a: &HermitianMatrix, n: usize, t_samples: &[f64], tol: f64) -> Result<bool> {
    Ok(embedded_block_report(a, n, t_samples, tol)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{ComplexMatrix, ONE};
    use crate::random::{random_hermitian, seeded_rng};

    const TS: [f64; 4] = [-5.0, -1.0, 1.0, 5.0];

    #[test]
    fn block_plus_zero_holds() {
        let mut rng = seeded_rng(71, 0);
        let b = random_hermitian(2, &mut rng);
        let a = HermitianMatrix::new(b.matrix().direct_sum(&ComplexMatrix::zeros(2, 2))).unwrap();
        let r = embedded_block_report(&a, 2, &TS, 1e-9).unwrap();
        assert!(r.hypothesis && r.conclusion, "{r:?}");
        assert!(embedded_block_test(&a, 2, &TS, 1e-9).unwrap());
    }

    #[test]
    fn corner_coupling_breaks_shift_pattern() {
        // A = E_14 + E_41 in H_4, n = 2: σ(A) = {1, -1, 0, 0}, while
        // σ(A + (I_2 ⊕ 0)) = {(1 ± √5)/2, 1, 0}, not {2, 0, 0, 0}.
        let mut m = ComplexMatrix::zeros(4, 4);
        m[(0, 3)] = ONE;
        m[(3, 0)] = ONE;
        let a = HermitianMatrix::new(m).unwrap();
        let shifted = a
            .add(&HermitianMatrix::from_real_diag(&[1.0, 1.0, 0.0, 0.0]))
            .unwrap()
            .spectrum()
            .unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((shifted.values()[0] - golden).abs() < 1e-12);
        let r = embedded_block_report(&a, 2, &TS, 1e-9).unwrap();
        assert!(!r.hypothesis);
        assert!(!r.conclusion);
        assert!(!embedded_block_test(&a, 2, &TS, 1e-9).unwrap());
    }

    #[test]
    fn zero_matrix_holds() {
        assert!(embedded_block_test(&HermitianMatrix::zeros(3), 1, &TS, 1e-9).unwrap());
    }

    #[test]
    fn invalid_block_size() {
        let a = HermitianMatrix::zeros(3);
        assert!(embedded_block_test(&a, 0, &TS, 1e-9).is_err());
        assert!(embedded_block_test(&a, 3, &TS, 1e-9).is_err());
    }
}
