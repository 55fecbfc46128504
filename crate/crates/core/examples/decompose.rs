//! Recovering λ, U and the transpose flags from a map's matrix, and
//! rejecting a perturbed map.

use spectral_preservers::analysis::{decompose_canonical, Criterion, DecomposeOptions, DecompositionResult};
use spectral_preservers::superop::{canonical_map, conjugation_map, CanonicalForm, Flag, PreserverMap, Sign};
use spectral_preservers::tensor::DimProfile;

fn main() -> spectral_preservers::error::Result<()> {
    let p = DimProfile::new(vec![2, 2, 2])?;
    let truth = CanonicalForm::random(
        &p,
        Sign::Minus,
        vec![Flag::Transpose, Flag::Identity, Flag::Transpose],
        5,
    )?;
    let phi = canonical_map(&truth)?;

    match decompose_canonical(&phi, &p, Criterion::Radius, &DecomposeOptions::default())? {
        DecompositionResult::Success { form, residual } => {
            let flags: Vec<_> = form.flags().iter().map(|f| f.as_str()).collect();
            let gap = conjugation_map(form.unitary())?.max_abs_diff(&conjugation_map(truth.unitary())?);
            println!(
                "recovered sign {} flags {flags:?}, residual {residual:e}, conj gap {gap:e}",
                form.sign().as_int()
            );
        }
        DecompositionResult::Failure { best_residual, .. } => println!("unexpected failure {best_residual:e}"),
    }

    let n = p.total();
    let d = n * n;
    let bump: Vec<f64> = (0..d * d).map(|i| if i % (d + 3) == 0 { 1e-3 } else { 0.0 }).collect();
    let perturbed = phi.add(&PreserverMap::from_matrix(n, bump)?)?;
    match decompose_canonical(&perturbed, &p, Criterion::Radius, &DecomposeOptions::default())? {
        DecompositionResult::Success { .. } => println!("perturbed map unexpectedly accepted"),
        DecompositionResult::Failure { best_residual, .. } => {
            println!("perturbed map rejected, best residual {best_residual:e}")
        }
    }
    Ok(())
}
