//! Gibbs states and thermodynamic scalars (`k_B = 1`).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, ComplexMatrix4, Eigen4};
use crate::tolerances::{DEGENERACY_TOL, HERMITIAN_TOL, PSD_TOL};

/// A two-qubit density matrix stored with its spectral decomposition.
///
/// Keeping the eigenbasis lets downstream measures use the populations
/// directly, so tiny thermal weights keep their relative accuracy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    m: ComplexMatrix4,
    spectral: Eigen4,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(m: ComplexMatrix4) -> Result<Self> {
        let spectral = hermitian_eigen(&m)?;
        let trace = m.trace();
        if (trace.re - 1.0).abs() > 1e-12 || trace.im.abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "density matrix trace is {trace}"
            )));
        }
        if spectral.values[0] < -PSD_TOL {
            return Err(Error::InvalidInput(format!(
                "density matrix has eigenvalue {:e}",
                spectral.values[0]
            )));
        }
        Ok(Self { m, spectral })
    }

    /// `Σ_k p_k |v_k><v_k|` from ascending populations and orthonormal columns.
    pub(crate) fn from_spectral(spectral: Eigen4) -> Self {
        Self {
            m: spectral.reconstruct_with(|x| x),
            spectral,
        }
    }

    /// `|ψ><ψ|` for a normalized `ψ`.
    pub fn pure(psi: [Complex64; 4]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!("state norm² is {norm}")));
        }
        let mut m = ComplexMatrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = psi[i] * psi[j].conj();
            }
        }
        Self::new(m)
    }

    pub fn maximally_mixed() -> Self {
        Self::from_spectral(Eigen4 {
            values: [0.25; 4],
            vectors: ComplexMatrix4::identity(),
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.m
    }

    /// Populations in ascending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        self.spectral.values
    }

    pub fn spectral(&self) -> &Eigen4 {
        &self.spectral
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    pub fn is_hermitian(&self) -> bool {
        self.m.hermitian_deviation() <= HERMITIAN_TOL
    }
}

/// Inverse temperature `β = 1/T`, finite and positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct InverseTemperature(f64);

impl InverseTemperature {
    pub fn new(beta: f64) -> Result<Self> {
        if beta.is_finite() && beta > 0.0 {
            Ok(Self(beta))
        } else {
            Err(Error::InvalidBeta(beta))
        }
    }

    pub fn from_temperature(t: f64) -> Result<Self> {
        Self::new(1.0 / t).map_err(|_| {
            Error::InvalidInput(format!("temperature must be finite and positive, got {t}"))
        })
    }

    pub fn beta(self) -> f64 {
        self.0
    }

    pub fn temperature(self) -> f64 {
        1.0 / self.0
    }
}

/// Thermal state `e^{-βH}/Z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GibbsState {
    pub rho: DensityMatrix,
    /// Shifted partition function `Σ_k e^{-β(E_k - E_0)}`, which lies in `[1, 4]`.
    pub z_shifted: f64,
    /// Lowest eigenvalue `E_0` of `H`.
    pub ground_energy: f64,
    pub beta: f64,
}

impl GibbsState {
    /// `ln Z = ln z_shifted - β E_0`.
    pub fn log_partition(&self) -> f64 {
        self.z_shifted.ln() - self.beta * self.ground_energy
    }
}

/// Gibbs state via the eigen-decomposition of `H`, with `E_0` subtracted
/// before exponentiating.
pub fn gibbs_state(h: &ComplexMatrix4, beta: InverseTemperature) -> Result<GibbsState> {
    let eig = hermitian_eigen(h)?;
    let b = beta.beta();
    let e0 = eig.values[0];
    let weights = eig.values.map(|e| (-b * (e - e0)).exp());
    let z: f64 = weights.iter().sum();
    // Weights fall with energy; reverse to keep populations ascending.
    let mut vectors = ComplexMatrix4::zeros();
    for (col, src) in (0..4).rev().enumerate() {
        for row in 0..4 {
            vectors.0[row][col] = eig.vectors.0[row][src];
        }
    }
    let rho = DensityMatrix::from_spectral(Eigen4 {
        values: [3, 2, 1, 0].map(|k| weights[k] / z),
        vectors,
    });
    Ok(GibbsState {
        rho,
        z_shifted: z,
        ground_energy: e0,
        beta: b,
    })
}

/// Zero-temperature state: uniform mixture over the ground space of `H`.
pub fn ground_state(h: &ComplexMatrix4) -> Result<DensityMatrix> {
    let eig = hermitian_eigen(h)?;
    let e0 = eig.values[0];
    let scale = eig
        .values
        .iter()
        .map(|e| e.abs())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let g = eig
        .values
        .iter()
        .filter(|&&e| e - e0 <= DEGENERACY_TOL * scale)
        .count();
    let mut values = [0.0; 4];
    values[..g].fill(1.0 / g as f64);
    // Ascending order is kept by moving the ground weights to the top.
    values.reverse();
    let mut vectors = ComplexMatrix4::zeros();
    for (col, src) in (0..4).rev().enumerate() {
        for row in 0..4 {
            vectors.0[row][col] = eig.vectors.0[row][src];
        }
    }
    Ok(DensityMatrix::from_spectral(Eigen4 { values, vectors }))
}

/// `tr ρ²`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues().iter().map(|p| p * p).sum()
}
