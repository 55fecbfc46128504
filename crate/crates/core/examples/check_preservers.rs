//! Sampled preservation checks and the certificate matrices that expose a
//! partial transpose.

use spectral_preservers::analysis::{
    check_global_form, check_radius_preservation, check_spectrum_preservation, Criterion,
};
use spectral_preservers::superop::{canonical_map, partial_transpose_map, CanonicalForm, Flag, PreserverMap, Sign};
use spectral_preservers::tensor::DimProfile;

fn main() -> spectral_preservers::error::Result<()> {
    let p = DimProfile::new(vec![2, 2])?;

    let form = CanonicalForm::random(&p, Sign::Minus, vec![Flag::Transpose, Flag::Transpose], 2)?;
    let negated = canonical_map(&form)?;
    let spec = check_spectrum_preservation(&negated, &p, 100, 0, 1e-9)?;
    let rad = check_radius_preservation(&negated, &p, 100, 0, 1e-9)?;
    println!(
        "-U(·)ᵗU*: spectrum {}, radius {}",
        spec.verdict.as_str(),
        rad.verdict.as_str()
    );

    let pt = partial_transpose_map(&p, 1)?;
    let on_products = check_spectrum_preservation(&pt, &p, 100, 0, 1e-9)?;
    let global = check_global_form(&pt, &p, 100, 0, 1e-9, Criterion::Spectrum)?;
    println!("PT_2 on product inputs: {}", on_products.verdict.as_str());
    println!("PT_2 globally: {}", global.verdict.as_str());
    if let Some(c) = &global.first_counterexample {
        println!(
            "  {}: σ in {:?}, σ out {:?}",
            c.source, c.input_spectrum, c.output_spectrum
        );
    }

    let identity = PreserverMap::identity(4);
    println!(
        "identity globally: {}",
        check_global_form(&identity, &p, 50, 0, 1e-9, Criterion::Spectrum)?
            .verdict
            .as_str()
    );
    Ok(())
}
