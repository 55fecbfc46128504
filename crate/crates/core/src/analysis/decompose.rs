//! Recovery of `λ U (f_1 ⊗ ... ⊗ f_m)(·) U*` from a map's representation.
//!
//! For every candidate flag vector `f`, `χ_f = λ φ ∘ PT_f` must be a unitary
//! conjugation. [`recover_conjugation`] reads `U` off the images of `E_11`,
//! `S_1k` and `K_1k`: `χ(E_11) = u_1 u_1*` and
//! `(χ(S_1k) + i χ(K_1k)) u_1 = √2 u_k`. Success is certified by the
//! residual of `χ` against `X ↦ U X U*` over the whole basis.

use std::fmt;

use num_complex::Complex64;

use super::Criterion;
use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::matrix::{ComplexMatrix, I};
use crate::random::orthonormalize_columns;
use crate::superop::{fix_phase, flagged_transpose_map, CanonicalForm, Flag, PreserverMap, Sign};
use crate::tensor::DimProfile;
use crate::vector;

/// Default acceptance gate on decomposition residuals.
pub const DECOMP_TOL: f64 = 1e-8;
/// Default cap on the number of tensor factors searched (`2^m` flag vectors).
pub const DEFAULT_MAX_PARTIES: usize = 4;

/// Step of [`recover_conjugation`] whose numeric gate failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecoveryStage {
    /// The eigensolver rejected an intermediate matrix.
    Eigensolver,
    /// `χ(E_11)` is not a rank-one trace-one projector.
    LeadingProjector,
    /// The assembled columns are not orthonormal to tolerance.
    Unitarity,
    /// `χ` differs from `X ↦ U X U*` on some basis element.
    Residual,
}

impl fmt::Display for RecoveryStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecoveryStage::Eigensolver => "eigensolver",
            RecoveryStage::LeadingProjector => "leading-projector",
            RecoveryStage::Unitarity => "unitarity",
            RecoveryStage::Residual => "residual",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Recovery {
    Success {
        unitary: ComplexMatrix,
        residual: f64,
    },
    /// `candidate` is always unitary; `residual` is measured against it.
    Failure {
        stage: RecoveryStage,
        residual: f64,
        candidate: ComplexMatrix,
    },
}

impl Recovery {
    pub fn residual(&self) -> f64 {
        match self {
            Recovery::Success { residual, .. } | Recovery::Failure { residual, .. } => *residual,
        }
    }

    pub fn is_success(&self) -> bool {
        matches!(self, Recovery::Success { .. })
    }
}

/// `U (U*U)^{-1/2}`, or `None` when `U*U` is numerically singular. A final
/// Gram-Schmidt pass restores unitarity lost to an ill-conditioned `U*U`.
fn polar_unitary(u: &ComplexMatrix) -> Option<ComplexMatrix> {
    let gram = HermitianMatrix::symmetrize(&u.adjoint() * u);
    let es = gram.eigensystem().ok()?;
    let values = es.spectrum.values();
    if values.last().is_none_or(|&v| v <= 1e-12) {
        return None;
    }
    let n = u.cols();
    let v = &es.vectors;
    let inv_sqrt = ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n)
            .map(|k| v[(i, k)] * (1.0 / values[k].sqrt()) * v[(j, k)].conj())
            .sum::<Complex64>()
    });
    orthonormalize_columns(&(u * &inv_sqrt))
}

/// `max_α max|χ(H_α) - U H_α U*|`.
fn conjugation_residual(chi: &PreserverMap, u: &ComplexMatrix) -> Result<f64> {
    let basis = chi.basis();
    let mut worst: f64 = 0.0;
    for alpha in 0..basis.len() {
        let h = basis.element(alpha);
        let image = chi.apply(&h)?;
        let expected = h.conjugated_by(u)?;
        worst = worst.max(image.matrix().max_abs_diff(expected.matrix()));
    }
    Ok(worst)
}

/// Tries to write `χ` as `X ↦ U X U*`. Every numeric gate uses `tol`.
pub fn recover_conjugation(chi: &PreserverMap, tol: f64) -> Recovery {
    let n = chi.dim();
    let basis = chi.basis();
    let fail_without_candidate = |stage| Recovery::Failure {
        stage,
        residual: f64::INFINITY,
        candidate: ComplexMatrix::identity(n),
    };

    let leader = match chi.apply(&basis.element(0)) {
        Ok(p) => p,
        Err(_) => return fail_without_candidate(RecoveryStage::Eigensolver),
    };
    let es = match leader.eigensystem() {
        Ok(es) => es,
        Err(_) => return fail_without_candidate(RecoveryStage::Eigensolver),
    };
    let values = es.spectrum.values();
    let mut stage: Option<RecoveryStage> = None;
    let projector_gap = (values[0] - 1.0)
        .abs()
        .max(values[1..].iter().map(|v| v.abs()).fold(0.0, f64::max));
    if projector_gap > tol {
        stage = Some(RecoveryStage::LeadingProjector);
    }

    let u1 = es.vector(0);
    let mut u = ComplexMatrix::zeros(n, n);
    u.set_column(0, &u1);
    for k in 1..n {
        let s_index = n + 2 * (k - 1);
        let images = chi
            .apply(&basis.element(s_index))
            .and_then(|s| Ok((s, chi.apply(&basis.element(s_index + 1))?)));
        let (s, a) = match images {
            Ok(pair) => pair,
            Err(_) => return fail_without_candidate(RecoveryStage::Eigensolver),
        };
        let combined = s.matrix() + &a.matrix().scale(I);
        let col = vector::scale(
            &combined.matvec_unchecked(&u1),
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        );
        u.set_column(k, &col);
    }

    if stage.is_none() && u.unitarity_deviation() > tol {
        stage = Some(RecoveryStage::Unitarity);
    }
    let candidate = match polar_unitary(&u) {
        Some(q) => fix_phase(&q),
        None => {
            return Recovery::Failure {
                stage: stage.unwrap_or(RecoveryStage::Unitarity),
                residual: f64::INFINITY,
                candidate: ComplexMatrix::identity(n),
            }
        }
    };
    let residual = match conjugation_residual(chi, &candidate) {
        Ok(r) => r,
        Err(_) => return fail_without_candidate(RecoveryStage::Eigensolver),
    };
    if stage.is_none() && residual > tol {
        stage = Some(RecoveryStage::Residual);
    }
    match stage {
        None => Recovery::Success {
            unitary: candidate,
            residual,
        },
        Some(stage) => Recovery::Failure {
            stage,
            residual,
            candidate,
        },
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecomposeOptions {
    pub tol: f64,
    pub max_parties: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self {
            tol: DECOMP_TOL,
            max_parties: DEFAULT_MAX_PARTIES,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DecompositionResult {
    /// `residual <= tol`.
    Success { form: CanonicalForm, residual: f64 },
    /// `best_residual > tol`; `best_candidate` is the closest canonical form tried.
    Failure {
        best_residual: f64,
        best_candidate: CanonicalForm,
    },
}

impl DecompositionResult {
    pub fn is_success(&self) -> bool {
        matches!(self, DecompositionResult::Success { .. })
    }

    pub fn form(&self) -> Option<&CanonicalForm> {
        match self {
            DecompositionResult::Success { form, .. } => Some(form),
            DecompositionResult::Failure { .. } => None,
        }
    }
}

/// Searches all `2^m` flag vectors for `φ = λ conj_U ∘ PT_f`.
///
/// In spectrum mode `λ = +1`. In radius mode `λ` is read from `φ(I) ≈ ±I`
/// (max-abs gate `1e-8 N`); if `φ(I)` is neither, the search stops early.
pub fn decompose_canonical(
    phi: &PreserverMap,
    profile: &DimProfile,
    mode: Criterion,
    options: &DecomposeOptions,
) -> Result<DecompositionResult> {
    let n = profile.total();
    if phi.dim() != n {
        return Err(Error::dims(format!(
            "map acts on H_{} but profile {:?} has total dimension {n}",
            phi.dim(),
            profile.dims()
        )));
    }
    let m = profile.parties();
    if m > options.max_parties {
        return Err(Error::invalid(format!(
            "{m} factors exceed the supported maximum of {}",
            options.max_parties
        )));
    }

    let sign = match mode {
        Criterion::Spectrum => Sign::Plus,
        Criterion::Radius => {
            let image = phi.apply(&HermitianMatrix::identity(n))?;
            let identity = ComplexMatrix::identity(n);
            let dev_plus = image.matrix().max_abs_diff(&identity);
            let dev_minus = image.matrix().max_abs_diff(&-&identity);
            let gate = 1e-8 * n as f64;
            if dev_plus <= gate {
                Sign::Plus
            } else if dev_minus <= gate {
                Sign::Minus
            } else {
                return Ok(DecompositionResult::Failure {
                    best_residual: dev_plus.min(dev_minus),
                    best_candidate: CanonicalForm::new(Sign::Plus, identity, vec![Flag::Identity; m], profile.clone())?,
                });
            }
        }
    };

    let signed = phi.scale(sign.value());
    let mut best: Option<(f64, CanonicalForm)> = None;
    for bits in 0..1usize << m {
        let flags = Flag::vector_from_bits(bits, m);
        let mask: Vec<bool> = flags.iter().map(|f| f.is_transpose()).collect();
        let chi = signed.compose(&flagged_transpose_map(profile, &mask)?)?;
        match recover_conjugation(&chi, options.tol) {
            Recovery::Success { unitary, residual } => {
                let form = CanonicalForm::new(sign, unitary, flags, profile.clone())?;
                return Ok(DecompositionResult::Success { form, residual });
            }
            Recovery::Failure {
                residual, candidate, ..
            } => {
                if best.as_ref().is_none_or(|(r, _)| residual < *r) {
                    best = Some((residual, CanonicalForm::new(sign, candidate, flags, profile.clone())?));
                }
            }
        }
    }
    let (best_residual, best_candidate) = best.expect("at least one flag vector");
    Ok(DecompositionResult::Failure {
        best_residual,
        best_candidate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superop::{canonical_map, conjugation_map, haar_unitary, transpose_map};

    fn profile(d: &[usize]) -> DimProfile {
        DimProfile::new(d.to_vec()).unwrap()
    }

    #[test]
    fn recovers_conjugation_up_to_phase() {
        let u0 = haar_unitary(4, 21);
        match recover_conjugation(&conjugation_map(&u0).unwrap(), DECOMP_TOL) {
            Recovery::Success { unitary, residual } => {
                assert!(residual <= 1e-10, "{residual:e}");
                let same = conjugation_map(&unitary).unwrap();
                assert!(same.max_abs_diff(&conjugation_map(&u0).unwrap()) < 1e-10);
                let phase = unitary[(0, 0)];
                assert!(phase.im.abs() < 1e-14 && phase.re >= 0.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn identity_recovers_identity() {
        match recover_conjugation(&PreserverMap::identity(3), DECOMP_TOL) {
            Recovery::Success { unitary, residual } => {
                assert!(unitary.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
                assert!(residual < 1e-15);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn transpose_is_not_a_conjugation() {
        for n in 2..=4 {
            let r = recover_conjugation(&transpose_map(n).unwrap(), DECOMP_TOL);
            assert!(!r.is_success());
            assert!(r.residual() >= 0.1, "n={n}: {:e}", r.residual());
        }
    }

    #[test]
    fn bipartite_round_trip() {
        let p = profile(&[2, 3]);
        let flags = vec![Flag::Identity, Flag::Transpose];
        let c = CanonicalForm::random(&p, Sign::Plus, flags.clone(), 8).unwrap();
        let phi = canonical_map(&c).unwrap();
        match decompose_canonical(&phi, &p, Criterion::Spectrum, &DecomposeOptions::default()).unwrap() {
            DecompositionResult::Success { form, residual } => {
                assert_eq!(form.flags(), &flags[..]);
                assert_eq!(form.sign(), Sign::Plus);
                assert!(residual <= 1e-8);
                let back = conjugation_map(form.unitary()).unwrap();
                let orig = conjugation_map(c.unitary()).unwrap();
                assert!(back.max_abs_diff(&orig) <= 1e-8);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tripartite_radius_round_trip_recovers_sign() {
        let p = profile(&[2, 2, 2]);
        let flags = vec![Flag::Transpose, Flag::Transpose, Flag::Identity];
        let c = CanonicalForm::random(&p, Sign::Minus, flags.clone(), 9).unwrap();
        let phi = canonical_map(&c).unwrap();
        let r = decompose_canonical(&phi, &p, Criterion::Radius, &DecomposeOptions::default()).unwrap();
        let form = r.form().expect("success");
        assert_eq!(form.sign(), Sign::Minus);
        assert_eq!(form.flags(), &flags[..]);
        // spectrum mode cannot absorb λ = -1
        let s = decompose_canonical(&phi, &p, Criterion::Spectrum, &DecomposeOptions::default()).unwrap();
        assert!(!s.is_success());
    }

    #[test]
    fn radius_mode_rejects_non_scalar_identity_image() {
        let p = profile(&[2, 2]);
        let phi = PreserverMap::identity(4).scale(2.0);
        match decompose_canonical(&phi, &p, Criterion::Radius, &DecomposeOptions::default()).unwrap() {
            DecompositionResult::Failure { best_residual, .. } => assert!((best_residual - 1.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn argument_errors() {
        let p = profile(&[2, 2]);
        assert!(decompose_canonical(
            &PreserverMap::identity(3),
            &p,
            Criterion::Spectrum,
            &DecomposeOptions::default()
        )
        .is_err());
        let big = profile(&[2, 2, 2, 2, 2]);
        let phi = PreserverMap::identity(32);
        assert!(decompose_canonical(&phi, &big, Criterion::Spectrum, &DecomposeOptions::default()).is_err());
    }
}
