//! Building preserver maps, composing them and writing them as JSON.

use spectral_preservers::json::{canonical_to_value, map_to_value, to_json_string};
use spectral_preservers::random::{random_hermitian, seeded_rng};
use spectral_preservers::superop::{
    canonical_map, conjugation_map, haar_unitary, partial_transpose_map, transpose_map, CanonicalForm, Flag, Sign,
};
use spectral_preservers::tensor::{kron_hermitian, DimProfile};

fn main() -> spectral_preservers::error::Result<()> {
    let profile = DimProfile::new(vec![2, 3])?;
    let form = CanonicalForm::random(&profile, Sign::Plus, vec![Flag::Identity, Flag::Transpose], 11)?;
    let phi = canonical_map(&form)?;

    let direct = conjugation_map(form.unitary())?.compose(&partial_transpose_map(&profile, 1)?)?;
    println!("canonical_map vs conj_U ∘ PT_2: {:e}", phi.max_abs_diff(&direct));

    // product inputs keep their spectrum, entangled ones need not
    let mut rng = seeded_rng(1, 0);
    let product = kron_hermitian(&[random_hermitian(2, &mut rng), random_hermitian(3, &mut rng)])?;
    let entangled = random_hermitian(6, &mut rng);
    for (name, x) in [("A ⊗ B", &product), ("X", &entangled)] {
        let gap = x.spectrum()?.deviation(&phi.apply(x)?.spectrum()?)?;
        println!("{name}: spectral deviation {gap:e}");
    }

    // transpose ∘ conj_V = conj_conj(V) ∘ transpose
    let v = haar_unitary(2, 5);
    let t = transpose_map(2)?;
    let lhs = t.compose(&conjugation_map(&v)?)?;
    let rhs = conjugation_map(&v.conj())?.compose(&t)?;
    println!("T ∘ conj_V vs conj_conj(V) ∘ T: {:e}", lhs.max_abs_diff(&rhs));

    let text = to_json_string(&canonical_to_value(&form));
    println!("form JSON: {} bytes", text.len());
    println!("map JSON:  {} bytes", to_json_string(&map_to_value(&phi)).len());
    Ok(())
}
