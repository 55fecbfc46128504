use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::matrix::ComplexMatrix;
use crate::tensor::{kron, kron_all, DimProfile};

/// `E11⊗E11 + E22⊗E22 + E12⊗E12 + E21⊗E21` in `H_a ⊗ H_b`, embedded in the
/// top-left 2x2 corners of each factor.
fn coupling_block(a: usize, b: usize) -> ComplexMatrix {
    let mut block = ComplexMatrix::zeros(a * b, a * b);
    for i in 0..2 {
        for j in 0..2 {
            block = &block + &kron(&ComplexMatrix::unit(a, i, j), &ComplexMatrix::unit(b, i, j));
        }
    }
    block
}

/// The `m - 1` certificates: `I ⊗ ... ⊗ I` with the factor pair
/// `(i, i + 1)` replaced by the four-term coupling block.
///
/// Together with preservation on product inputs, preserving the spectrum
/// (radius) of these matrices forces the global form `X ↦ ξ U X U*` or
/// `X ↦ ξ U Xᵗ U*`.
pub fn certificate_matrices(profile: &DimProfile) -> Result<Vec<HermitianMatrix>> {
    let m = profile.parties();
    if m < 2 {
        return Err(Error::invalid(format!("certificates need at least 2 factors, got {m}")));
    }
    let dims = profile.dims();
    let certs = (0..m - 1)
        .map(|i| {
            let mut parts: Vec<ComplexMatrix> = dims[..i].iter().map(|&d| ComplexMatrix::identity(d)).collect();
            parts.push(coupling_block(dims[i], dims[i + 1]));
            parts.extend(dims[i + 2..].iter().map(|&d| ComplexMatrix::identity(d)));
            HermitianMatrix::symmetrize(kron_all(&parts).expect("non-empty"))
        })
        .collect();
    Ok(certs)
}
