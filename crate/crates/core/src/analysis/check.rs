use super::{certificate_matrices, CheckReport, Counterexample, Criterion, Verdict};
use crate::error::{Error, Result};
use crate::hermitian::{relative_gap, HermitianMatrix};
use crate::random::{random_hermitian, random_product_factor, seeded_rng};
use crate::superop::PreserverMap;
use crate::tensor::{kron_hermitian, DimProfile};

/// Stream reserved for the random parts of the deterministic probes.
const PROBE_STREAM: u64 = 1 << 63;
const SHIFTS: [f64; 4] = [-1.0, 0.0, 1.0, 10.0];

struct Tally {
    criterion: Criterion,
    tol: f64,
    samples: usize,
    worst: f64,
    first: Option<Counterexample>,
}

impl Tally {
    fn new(criterion: Criterion, tol: f64) -> Self {
        Self {
            criterion,
            tol,
            samples: 0,
            worst: 0.0,
            first: None,
        }
    }

    fn record(
        &mut self,
        phi: &PreserverMap,
        source: impl FnOnce() -> String,
        factors: &[HermitianMatrix],
        input: &HermitianMatrix,
    ) -> Result<()> {
        let output = phi.apply(input)?;
        let s_in = input.spectrum()?;
        let s_out = output.spectrum()?;
        let deviation = match self.criterion {
            Criterion::Spectrum => s_in.deviation(&s_out)?,
            Criterion::Radius => relative_gap(s_in.radius(), s_out.radius()),
        };
        self.samples += 1;
        self.worst = self.worst.max(deviation);
        if deviation > self.tol && self.first.is_none() {
            self.first = Some(Counterexample {
                source: source(),
                factors: factors.iter().map(|f| f.matrix().clone()).collect(),
                input_spectrum: s_in.values().to_vec(),
                output_spectrum: s_out.values().to_vec(),
                deviation,
            });
        }
        Ok(())
    }

    fn record_product(
        &mut self,
        phi: &PreserverMap,
        source: impl FnOnce() -> String,
        factors: &[HermitianMatrix],
    ) -> Result<()> {
        let input = kron_hermitian(factors)?;
        self.record(phi, source, factors, &input)
    }

    fn finish(self) -> CheckReport {
        CheckReport {
            criterion: self.criterion,
            verdict: if self.first.is_some() {
                Verdict::Fail
            } else {
                Verdict::Pass
            },
            samples: self.samples,
            worst_spectrum_deviation: self.worst,
            first_counterexample: self.first,
        }
    }
}

fn check_dims(phi: &PreserverMap, profile: &DimProfile) -> Result<()> {
    if phi.dim() != profile.total() {
        return Err(Error::dims(format!(
            "map acts on H_{} but profile {:?} has total dimension {}",
            phi.dim(),
            profile.dims(),
            profile.total()
        )));
    }
    Ok(())
}

fn diag_units(dims: &[usize], index: &[usize]) -> Vec<HermitianMatrix> {
    dims.iter()
        .zip(index)
        .map(|(&n, &j)| HermitianMatrix::diag_unit(n, j))
        .collect()
}

/// Deterministic probes mirroring the proof constructions: every
/// `E_j1j1 ⊗ ... ⊗ E_jmjm`, the identity, shifted factors
/// `E_11 ⊗ ... ⊗ (B + tI) ⊗ ... ⊗ E_11`, and for radius checks the
/// `(E_jj ± E_ss) ⊗ D` pairs.
fn product_probes(profile: &DimProfile, criterion: Criterion, seed: u64) -> Vec<(String, Vec<HermitianMatrix>)> {
    let dims = profile.dims();
    let m = dims.len();
    let mut probes = Vec::new();

    probes.push((
        "identity".to_string(),
        dims.iter().map(|&n| HermitianMatrix::identity(n)).collect(),
    ));

    for flat in 0..profile.total() {
        let idx = crate::tensor::TensorIndex::from_flat(profile, flat).expect("in range");
        probes.push((
            format!("diagonal units {:?}", idx.components()),
            diag_units(dims, idx.components()),
        ));
    }

    let mut rng = seeded_rng(seed, PROBE_STREAM);
    for p in 0..m {
        let b = random_hermitian(dims[p], &mut rng);
        for &t in &SHIFTS {
            let mut factors = diag_units(dims, &vec![0; m]);
            factors[p] = b.add(&HermitianMatrix::identity(dims[p]).scale(t)).expect("same size");
            probes.push((format!("shift t={t} in slot {p}"), factors));
        }
    }

    if criterion == Criterion::Radius {
        for p in 0..m {
            let d: Vec<HermitianMatrix> = dims
                .iter()
                .map(|&n| {
                    let v: Vec<f64> = (0..n).map(|_| rand::Rng::random_range(&mut rng, -1.0..=1.0)).collect();
                    HermitianMatrix::from_real_diag(&v)
                })
                .collect();
            for j in 0..dims[p] {
                for s in j + 1..dims[p] {
                    for sign in [1.0, -1.0] {
                        let mut v = vec![0.0; dims[p]];
                        v[j] = 1.0;
                        v[s] = sign;
                        let mut factors = d.clone();
                        factors[p] = HermitianMatrix::from_real_diag(&v);
                        let op = if sign > 0.0 { '+' } else { '-' };
                        probes.push((format!("(E{j}{j} {op} E{s}{s}) in slot {p}"), factors));
                    }
                }
            }
        }
    }
    probes
}

fn run_product_checks(
    tally: &mut Tally,
    phi: &PreserverMap,
    profile: &DimProfile,
    samples: usize,
    seed: u64,
) -> Result<()> {
    for (name, factors) in product_probes(profile, tally.criterion, seed) {
        tally.record_product(phi, || format!("probe {name}"), &factors)?;
    }
    for i in 0..samples {
        let mut rng = seeded_rng(seed, i as u64);
        let factors: Vec<HermitianMatrix> = profile
            .dims()
            .iter()
            .map(|&n| random_product_factor(n, &mut rng))
            .collect();
        tally.record_product(phi, || format!("random #{i}"), &factors)?;
    }
    Ok(())
}

/// Sampled check of `criterion` on product inputs `A_1 ⊗ ... ⊗ A_m`.
///
/// Random factors are `V diag(d) V*` with Haar `V` and `d` uniform on
/// `[-1, 1]^n`; sample `i` depends only on `(seed, i)`.
pub fn check_with(
    phi: &PreserverMap,
    profile: &DimProfile,
    samples: usize,
    seed: u64,
    tol: f64,
    criterion: Criterion,
) -> Result<CheckReport> {
    check_dims(phi, profile)?;
    let mut tally = Tally::new(criterion, tol);
    run_product_checks(&mut tally, phi, profile, samples, seed)?;
    Ok(tally.finish())
}

pub fn check_spectrum_preservation(
    phi: &PreserverMap,
    profile: &DimProfile,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckReport> {
    check_with(phi, profile, samples, seed, tol, Criterion::Spectrum)
}

pub fn check_radius_preservation(
    phi: &PreserverMap,
    profile: &DimProfile,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckReport> {
    check_with(phi, profile, samples, seed, tol, Criterion::Radius)
}

/// Product-input check followed by every certificate matrix. A pass means
/// `φ` has the global form `X ↦ ξ U X U*` or `X ↦ ξ U Xᵗ U*` (with `ξ = 1`
/// for the spectrum criterion).
pub fn check_global_form(
    phi: &PreserverMap,
    profile: &DimProfile,
    samples: usize,
    seed: u64,
    tol: f64,
    criterion: Criterion,
) -> Result<CheckReport> {
    check_dims(phi, profile)?;
    let mut tally = Tally::new(criterion, tol);
    run_product_checks(&mut tally, phi, profile, samples, seed)?;
    if profile.parties() >= 2 {
        for (i, cert) in certificate_matrices(profile)?.iter().enumerate() {
            let shown: Vec<HermitianMatrix> = vec![cert.clone()];
            tally.record(
                phi,
                || format!("certificate {} (slots {}, {})", i + 1, i + 1, i + 2),
                &shown,
                cert,
            )?;
        }
    }
    Ok(tally.finish())
}
