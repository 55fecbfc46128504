//! Linear maps on Hermitian matrices over `C^{n_1} ⊗ ... ⊗ C^{n_m}` that
//! preserve the spectrum or the spectral radius.
//!
//! Every such map has the form `X ↦ λ U (f_1 ⊗ ... ⊗ f_m)(X) U*` with `U`
//! unitary, `λ = ±1` (`λ = 1` for spectrum preservers) and each `f_p` the
//! identity or the transpose on factor `p`. This crate builds those maps
//! ([`superop`]), tests arbitrary maps for preservation
//! ([`analysis::check_global_form`]) and recovers `λ`, `U` and the flags
//! from a map's matrix ([`analysis::decompose_canonical`]). Supporting
//! pieces: a Hermitian eigensolver ([`hermitian`]), tensor indexing and
//! partial transposes ([`tensor`]), and Schmidt-rank norms ([`schmidt`]).
//!
//! Slots and indices are 0-based.
//!
//! ```
//! # fn main() -> spectral_preservers::error::Result<()> {
//! use spectral_preservers::analysis::{check_global_form, decompose_canonical, Criterion, DecomposeOptions};
//! use spectral_preservers::superop::{canonical_map, CanonicalForm, Flag, Sign};
//! use spectral_preservers::tensor::DimProfile;
//!
//! let profile = DimProfile::new(vec![2, 3])?;
//! let form = CanonicalForm::random(&profile, Sign::Minus, vec![Flag::Transpose, Flag::Transpose], 7)?;
//! let phi = canonical_map(&form)?;
//!
//! let report = check_global_form(&phi, &profile, 200, 0, 1e-9, Criterion::Radius)?;
//! assert!(report.passed());
//!
//! let result = decompose_canonical(&phi, &profile, Criterion::Radius, &DecomposeOptions::default())?;
//! assert_eq!(result.form().unwrap().flags(), form.flags());
//! # Ok(())
//! # }
//! ```

pub mod error;
pub mod hermitian;
pub mod matrix;
pub mod random;
pub mod tensor;
pub mod vector;

pub mod analysis;
pub mod schmidt;
pub mod superop;

pub mod cli;
pub mod json;
