//! Sampled preservation checks, certificate matrices and canonical
//! decomposition of spectrum / spectral-radius preservers.
//!
//! The checkers are one-sided: a `Fail` verdict comes with a concrete
//! counterexample, while a `Pass` only says that no sampled or probed input
//! broke preservation. The rigorous route is [`check_global_form`] plus
//! [`decompose_canonical`], whose success is certified by a residual over
//! the whole basis.

mod certificate;
mod check;
mod decompose;
mod dichotomy;
mod embedded_block;

pub use certificate::certificate_matrices;
pub use check::{check_global_form, check_radius_preservation, check_spectrum_preservation, check_with};
pub use decompose::{
    decompose_canonical, recover_conjugation, DecomposeOptions, DecompositionResult, Recovery, RecoveryStage,
    DECOMP_TOL, DEFAULT_MAX_PARTIES,
};
pub use dichotomy::{dichotomy_check, DichotomyBranch};
pub use embedded_block::{embedded_block_report, embedded_block_test, EmbeddedBlockReport};

use crate::matrix::ComplexMatrix;

/// Which invariant a check (or decomposition) targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// `σ(φ(X)) = σ(X)`
    Spectrum,
    /// `r(φ(X)) = r(X)`
    Radius,
}

impl Criterion {
    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::Spectrum => "spectrum",
            Criterion::Radius => "radius",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

/// The first input (lowest index) whose image broke preservation.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    /// Which probe produced it, e.g. `"random #12"` or `"certificate 1"`.
    pub source: String,
    /// Tensor factors of the input; a single full matrix for certificates.
    pub factors: Vec<ComplexMatrix>,
    pub input_spectrum: Vec<f64>,
    pub output_spectrum: Vec<f64>,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub criterion: Criterion,
    pub verdict: Verdict,
    /// Number of inputs evaluated (probes, random samples and certificates).
    pub samples: usize,
    /// Worst `|a - b| / (1 + max(|a|, |b|))` seen over sorted spectra (or radii).
    pub worst_spectrum_deviation: f64,
    pub first_counterexample: Option<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}
