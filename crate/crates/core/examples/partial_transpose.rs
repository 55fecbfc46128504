//! Kronecker products, tensor indices and partial transposes.

use spectral_preservers::analysis::certificate_matrices;
use spectral_preservers::hermitian::HermitianMatrix;
use spectral_preservers::tensor::{kron_hermitian, partial_transpose, DimProfile, TensorIndex};

fn main() -> spectral_preservers::error::Result<()> {
    let profile = DimProfile::new(vec![2, 3, 2])?;
    let idx = TensorIndex::new(&profile, vec![1, 2, 0])?;
    println!("(1,2,0) in {:?} has flat index {}", profile.dims(), idx.flat());

    let a = HermitianMatrix::from_real_diag(&[1.0, -1.0]);
    let b = HermitianMatrix::from_real_diag(&[2.0, 0.0, 5.0]);
    let ab = kron_hermitian(&[a, b])?;
    println!("σ(A ⊗ B) = {:?}", ab.spectrum()?.values());

    let bipartite = DimProfile::new(vec![2, 2])?;
    let c0 = certificate_matrices(&bipartite)?.remove(0);
    let pt = partial_transpose(&c0, &bipartite, 1)?;
    println!("σ(C0) = {:?}", c0.spectrum()?.values());
    println!("σ(PT_2(C0)) = {:?}", pt.spectrum()?.values());
    Ok(())
}
