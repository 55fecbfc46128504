//! Shifting the top-left block: `σ(A + t(I_n ⊕ 0))` tracks `σ(A)` only when
//! `A = B ⊕ 0`.

use spectral_preservers::analysis::embedded_block_report;
use spectral_preservers::hermitian::HermitianMatrix;
use spectral_preservers::matrix::ComplexMatrix;
use spectral_preservers::random::{random_hermitian, seeded_rng};

fn main() -> spectral_preservers::error::Result<()> {
    let ts = [-10.0, -1.0, 1.0, 10.0];
    let mut rng = seeded_rng(4, 0);
    let b = random_hermitian(2, &mut rng);
    let block = HermitianMatrix::new(b.matrix().direct_sum(&ComplexMatrix::zeros(2, 2)))?;
    println!("B ⊕ 0:   {:?}", embedded_block_report(&block, 2, &ts, 1e-9)?);

    let mut coupled = block.matrix().clone();
    coupled[(0, 3)].re += 0.5;
    coupled[(3, 0)].re += 0.5;
    let coupled = HermitianMatrix::new(coupled)?;
    println!("coupled: {:?}", embedded_block_report(&coupled, 2, &ts, 1e-9)?);
    Ok(())
}
