//! `Id_m ⊗ φ` on entangled inputs: a conjugation keeps the spectrum, a
//! transpose acts like a partial transpose, anything else does neither.

use spectral_preservers::analysis::dichotomy_check;
use spectral_preservers::superop::{conjugation_map, haar_unitary, transpose_map, PreserverMap};

fn main() -> spectral_preservers::error::Result<()> {
    let cases = [
        ("conj(V)", conjugation_map(&haar_unitary(2, 9))?),
        ("transpose", transpose_map(2)?),
        ("2 · id", PreserverMap::identity(2).scale(2.0)),
    ];
    for (name, phi) in &cases {
        let branch = dichotomy_check(phi, 2, 100, 0, 1e-9)?;
        println!("Id_2 ⊗ {name}: {}", branch.as_str());
    }
    Ok(())
}
