//! Tensor-product index machinery.
//!
//! Flat indices use big-endian mixed radix: the first factor is the most
//! significant digit, matching the block layout of the Kronecker product.
//! Partial transposes are index permutations on entries, so they apply to
//! arbitrary (non-product) matrices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::matrix::ComplexMatrix;

/// Ordered factor dimensions `(n_1, ..., n_m)`, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DimProfileJson", into = "DimProfileJson")]
pub struct DimProfile {
    dims: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct DimProfileJson {
    dims: Vec<usize>,
}

impl TryFrom<DimProfileJson> for DimProfile {
    type Error = Error;
    fn try_from(j: DimProfileJson) -> Result<Self> {
        DimProfile::new(j.dims)
    }
}

impl From<DimProfile> for DimProfileJson {
    fn from(p: DimProfile) -> Self {
        DimProfileJson { dims: p.dims }
    }
}

impl DimProfile {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::invalid("dimension profile needs at least one factor"));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::invalid(format!("factor dimension {d} < 2")));
        }
        dims.iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::invalid("total dimension overflows"))?;
        Ok(Self { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of factors `m`.
    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    /// Total dimension `N = n_1 ... n_m`.
    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    /// Flat-index stride of factor `slot`.
    pub fn stride(&self, slot: usize) -> usize {
        self.dims[slot + 1..].iter().product()
    }

    fn check_slot(&self, slot: usize) -> Result<()> {
        if slot >= self.parties() {
            return Err(Error::invalid(format!(
                "slot {slot} out of range for {} factors",
                self.parties()
            )));
        }
        Ok(())
    }
}

/// A multi-index `(j_1, ..., j_m)` (0-based) into a [`DimProfile`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorIndex<'a> {
    profile: &'a DimProfile,
    components: Vec<usize>,
}

impl<'a> TensorIndex<'a> {
    pub fn new(profile: &'a DimProfile, components: Vec<usize>) -> Result<Self> {
        if components.len() != profile.parties() {
            return Err(Error::dims(format!(
                "{} components for {} factors",
                components.len(),
                profile.parties()
            )));
        }
        if let Some((p, &j)) = components.iter().enumerate().find(|(p, &j)| j >= profile.dims()[*p]) {
            return Err(Error::invalid(format!("component {j} out of range in slot {p}")));
        }
        Ok(Self { profile, components })
    }

    pub fn from_flat(profile: &'a DimProfile, flat: usize) -> Result<Self> {
        if flat >= profile.total() {
            return Err(Error::invalid(format!("flat index {flat} >= {}", profile.total())));
        }
        let mut rest = flat;
        let mut components = vec![0; profile.parties()];
        for (slot, &d) in profile.dims().iter().enumerate().rev() {
            components[slot] = rest % d;
            rest /= d;
        }
        Ok(Self { profile, components })
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn flat(&self) -> usize {
        self.components
            .iter()
            .zip(self.profile.dims())
            .fold(0, |acc, (&j, &d)| acc * d + j)
    }
}

/// Kronecker product: `(A ⊗ B)[i rows(B) + k, j cols(B) + l] = A[i,j] B[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(a.rows() * br, a.cols() * bc, |r, c| {
        a[(r / br, c / bc)] * b[(r % br, c % bc)]
    })
}

/// Left-associated fold of [`kron`]; `None` for an empty list.
pub fn kron_all<'a, I>(factors: I) -> Option<ComplexMatrix>
where
    I: IntoIterator<Item = &'a ComplexMatrix>,
{
    let mut it = factors.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, f| kron(&acc, f)))
}

/// Kronecker product of Hermitian factors.
pub fn kron_hermitian(factors: &[HermitianMatrix]) -> Result<HermitianMatrix> {
    let m = kron_all(factors.iter().map(HermitianMatrix::matrix)).ok_or_else(|| Error::invalid("empty factor list"))?;
    Ok(HermitianMatrix::symmetrize(m))
}

/// Transposes the `slot`-th tensor index pair of an arbitrary `N x N` matrix.
pub fn partial_transpose_matrix(x: &ComplexMatrix, profile: &DimProfile, slot: usize) -> Result<ComplexMatrix> {
    profile.check_slot(slot)?;
    let n = profile.total();
    if x.rows() != n || x.cols() != n {
        return Err(Error::dims(format!(
            "{}x{} matrix for total dimension {n}",
            x.rows(),
            x.cols()
        )));
    }
    let stride = profile.stride(slot);
    let d = profile.dims()[slot];
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let (rp, cp) = ((r / stride) % d, (c / stride) % d);
        let r2 = r - rp * stride + cp * stride;
        let c2 = c - cp * stride + rp * stride;
        x[(r2, c2)]
    }))
}

/// Partial transpose `PT_slot` (0-based slot) of a Hermitian matrix.
pub fn partial_transpose(x: &HermitianMatrix, profile: &DimProfile, slot: usize) -> Result<HermitianMatrix> {
    Ok(HermitianMatrix::symmetrize(partial_transpose_matrix(
        x.matrix(),
        profile,
        slot,
    )?))
}

/// Applies `PT_p` for every slot `p` with `flags[p] == true`.
pub fn partial_transpose_flags(x: &ComplexMatrix, profile: &DimProfile, flags: &[bool]) -> Result<ComplexMatrix> {
    if flags.len() != profile.parties() {
        return Err(Error::dims(format!(
            "{} flags for {} factors",
            flags.len(),
            profile.parties()
        )));
    }
    let mut out = x.clone();
    for (slot, _) in flags.iter().enumerate().filter(|(_, &f)| f) {
        out = partial_transpose_matrix(&out, profile, slot)?;
    }
    Ok(out)
}

/// Row-major reshape of a length-`mn` vector into the `m x n` matrix `[w]`.
pub fn reshape_vector(w: &[Complex64], m: usize, n: usize) -> Result<ComplexMatrix> {
    if m == 0 || n == 0 || w.len() != m * n {
        return Err(Error::dims(format!(
            "vector of length {} cannot be reshaped to {m}x{n}",
            w.len()
        )));
    }
    Ok(ComplexMatrix::from_vec_unchecked(m, n, w.to_vec()))
}

/// Inverse of [`reshape_vector`].
pub fn flatten_matrix(a: &ComplexMatrix) -> Vec<Complex64> {
    a.data().to_vec()
}
