use crate::error::{Error, Result};
use crate::hermitian::spectra_equal;
use crate::random::{random_hermitian, seeded_rng};
use crate::superop::PreserverMap;
use crate::tensor::{partial_transpose, DimProfile};

/// Which branch of the `Id_m ⊗ φ` dichotomy held on every sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DichotomyBranch {
    /// `σ((Id ⊗ φ)(C)) = σ(C)`
    Direct,
    /// `σ((Id ⊗ φ)(C)) = σ(PT_2(C))`
    PartialTranspose,
    Neither,
}

impl DichotomyBranch {
    pub fn as_str(self) -> &'static str {
        match self {
            DichotomyBranch::Direct => "direct",
            DichotomyBranch::PartialTranspose => "partial-transpose",
            DichotomyBranch::Neither => "neither",
        }
    }
}

/// Classifies `Id_m ⊗ φ_small` on random (generally entangled) `C ∈ H_{mn}`.
/// `Direct` wins when both branches hold on every sample.
pub fn dichotomy_check(
    phi_small: &PreserverMap,
    m: usize,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<DichotomyBranch> {
    let n = phi_small.dim();
    if samples == 0 {
        return Err(Error::invalid("at least one sample is required"));
    }
    let profile = DimProfile::new(vec![m, n])?;
    let extended = phi_small.identity_tensor(m)?;

    let (mut direct, mut transposed) = (true, true);
    for i in 0..samples {
        let c = random_hermitian(m * n, &mut seeded_rng(seed, i as u64));
        let out = extended.apply(&c)?.spectrum()?;
        direct = direct && spectra_equal(&out, &c.spectrum()?, tol)?;
        transposed = transposed && spectra_equal(&out, &partial_transpose(&c, &profile, 1)?.spectrum()?, tol)?;
        if !direct && !transposed {
            return Ok(DichotomyBranch::Neither);
        }
    }
    Ok(if direct {
        DichotomyBranch::Direct
    } else {
        DichotomyBranch::PartialTranspose
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superop::{conjugation_map, haar_unitary, transpose_map};

    #[test]
    fn branches() {
        let v = haar_unitary(2, 3);
        let conj = conjugation_map(&v).unwrap();
        assert_eq!(dichotomy_check(&conj, 2, 10, 1, 1e-9).unwrap(), DichotomyBranch::Direct);
        let t = transpose_map(2).unwrap();
        assert_eq!(
            dichotomy_check(&t, 2, 10, 1, 1e-9).unwrap(),
            DichotomyBranch::PartialTranspose
        );
        let double = PreserverMap::identity(2).scale(2.0);
        assert_eq!(
            dichotomy_check(&double, 2, 10, 1, 1e-9).unwrap(),
            DichotomyBranch::Neither
        );
    }

    #[test]
    fn rejects_trivial_outer_factor() {
        let t = transpose_map(2).unwrap();
        assert!(dichotomy_check(&t, 1, 10, 1, 1e-9).is_err());
        assert!(dichotomy_check(&t, 2, 0, 1, 1e-9).is_err());
    }
}
