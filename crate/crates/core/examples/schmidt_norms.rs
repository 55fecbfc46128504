//! Schmidt decompositions, ‖w‖_k and |||C|||_k.

use num_complex::Complex64;
use spectral_preservers::random::{gaussian_matrix, seeded_rng, unit_vector};
use spectral_preservers::schmidt::{k_operator_norm, k_vector_norm, schmidt_decompose, AltMaxConfig};

fn main() -> spectral_preservers::error::Result<()> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let bell = [h, 0.0, 0.0, h].map(|x| Complex64::new(x, 0.0));
    let s = schmidt_decompose(&bell, 2, 2)?;
    println!("Bell state: coefficients {:?}, rank {}", s.coefficients, s.rank);
    println!(
        "‖w‖_1 = {:.12}, ‖w‖_2 = {:.12}",
        k_vector_norm(&bell, 2, 2, 1)?,
        k_vector_norm(&bell, 2, 2, 2)?
    );

    let mut rng = seeded_rng(3, 0);
    let w = unit_vector(6, &mut rng);
    let s = schmidt_decompose(&w, 2, 3)?;
    let err: f64 = s
        .reconstruct()
        .iter()
        .zip(&w)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    println!(
        "random w in C^2 ⊗ C^3: coefficients {:?}, reconstruction error {err:e}",
        s.coefficients
    );

    let c = gaussian_matrix(4, 4, &mut rng);
    let config = AltMaxConfig::default();
    for k in 1..=2 {
        let est = k_operator_norm(&c, 2, 2, k, &config)?;
        println!("|||C|||_{k} >= {:.9} ({} sweeps)", est.value, est.history.len());
    }
    Ok(())
}
