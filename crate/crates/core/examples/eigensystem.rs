//! Spectra, radii and eigenvectors of small Hermitian matrices.

use spectral_preservers::hermitian::{spectra_equal, HermitianMatrix};
use spectral_preservers::matrix::{ComplexMatrix, ONE};
use spectral_preservers::random::{haar_unitary, random_hermitian, seeded_rng};

fn main() -> spectral_preservers::error::Result<()> {
    let d = HermitianMatrix::from_real_diag(&[3.0, 1.0, 2.0]);
    println!("σ(diag(3,1,2)) = {:?}", d.spectrum()?.values());

    let mut swap = ComplexMatrix::zeros(2, 2);
    swap[(0, 1)] = ONE;
    swap[(1, 0)] = ONE;
    let x = HermitianMatrix::new(swap)?;
    let es = x.eigensystem()?;
    println!(
        "σ(E12 + E21) = {:?}, top eigenvector {:?}",
        es.spectrum.values(),
        es.vector(0)
    );
    println!("reconstruction error {:e}", es.reconstruct().max_abs_diff(x.matrix()));

    let mut rng = seeded_rng(7, 0);
    let a = random_hermitian(5, &mut rng);
    let u = haar_unitary(5, &mut rng);
    let b = a.conjugated_by(&u)?;
    println!("r(A) = {:.12}", a.spectral_radius()?);
    println!(
        "σ(UAU*) = σ(A): {}",
        spectra_equal(&a.spectrum()?, &b.spectrum()?, 1e-10)?
    );
    println!(
        "σ(-A) = σ(A): {}",
        spectra_equal(&a.spectrum()?, &a.scale(-1.0).spectrum()?, 1e-10)?
    );
    Ok(())
}
