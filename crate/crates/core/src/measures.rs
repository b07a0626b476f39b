//! Entanglement quantifiers for two-qubit states.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::linalg::{hermitian_eigen, jacobi_hermitian, ComplexMatrix4};
use crate::thermal::DensityMatrix;
use crate::tolerances::PSD_TOL;

/// Transpose on the first qubit: `ρ^{T1}[2a+b][2a'+b'] = ρ[2a'+b][2a+b']`.
pub fn partial_transpose_matrix(m: &ComplexMatrix4) -> ComplexMatrix4 {
    let mut out = ComplexMatrix4::zeros();
    for a in 0..2 {
        for b in 0..2 {
            for a2 in 0..2 {
                for b2 in 0..2 {
                    out.0[2 * a + b][2 * a2 + b2] = m.0[2 * a2 + b][2 * a + b2];
                }
            }
        }
    }
    out
}

pub fn partial_transpose(rho: &DensityMatrix) -> ComplexMatrix4 {
    partial_transpose_matrix(rho.matrix())
}

/// Ascending eigenvalues of `ρ^{T1}`.
pub fn pt_eigenvalues(rho: &DensityMatrix) -> Result<[f64; 4]> {
    Ok(hermitian_eigen(&partial_transpose(rho))?.values)
}

/// `max(-2 λ_min(ρ^{T1}), 0)`, with `λ_min >= -PSD_TOL` treated as zero.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    Ok(negativity_from_min(pt_eigenvalues(rho)?[0]))
}

fn negativity_from_min(lmin: f64) -> f64 {
    if lmin < -PSD_TOL {
        -2.0 * lmin
    } else {
        0.0
    }
}

/// Wootters concurrence.
///
/// The square roots of the eigenvalues of `ρ (σy⊗σy) ρ* (σy⊗σy)` are the
/// singular values of `τ_ij = <w_i| σy⊗σy |w_j*>`, with `w_i = √p_i v_i` the
/// weighted eigenvectors of `ρ`. Taking them from a Hermitian embedding avoids
/// square roots of roundoff-level eigenvalues.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    let s = concurrence_singular_values(rho)?;
    Ok((s[0] - s[1] - s[2] - s[3]).max(0.0))
}

/// `√μ_1 >= … >= √μ_4`.
pub fn concurrence_singular_values(rho: &DensityMatrix) -> Result<[f64; 4]> {
    let sp = rho.spectral();
    let w: [[Complex64; 4]; 4] = std::array::from_fn(|k| {
        let scale = sp.values[k].max(0.0).sqrt();
        let col = sp.vectors.column(k);
        col.map(|z| z * scale)
    });
    // σy⊗σy = antidiag(-1, 1, 1, -1) in the computational basis.
    let flip = |v: &[Complex64; 4]| -> [Complex64; 4] {
        [-v[3].conj(), v[2].conj(), v[1].conj(), -v[0].conj()]
    };
    let mut big = [[Complex64::new(0.0, 0.0); 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            let fj = flip(&w[j]);
            let t: Complex64 = (0..4).map(|k| w[i][k].conj() * fj[k]).sum();
            big[i][4 + j] = t;
            big[4 + j][i] = t.conj();
        }
    }
    let (values, _) = jacobi_hermitian::<8>(big)?;
    Ok([values[7], values[6], values[5], values[4]].map(|x| x.max(0.0)))
}

/// `2 |det ρ^{T1}|^{1/4}` when `ρ^{T1}` has a negative eigenvalue, else 0.
pub fn pi_measure(rho: &DensityMatrix) -> Result<f64> {
    Ok(pi_from_pt(&pt_eigenvalues(rho)?))
}

fn pi_from_pt(l: &[f64; 4]) -> f64 {
    if l[0] < -PSD_TOL {
        2.0 * l.iter().product::<f64>().abs().powf(0.25)
    } else {
        0.0
    }
}

/// Spectral witness `λ1 >= λ3 + 2√(λ2 λ4) >= 3 λ4` on the populations of
/// `ρ` in non-ascending order. Every entangled state satisfies it.
pub fn necessary_condition(rho: &DensityMatrix) -> bool {
    let asc = rho.eigenvalues();
    let [l1, l2, l3, l4] = [asc[3], asc[2], asc[1], asc[0]].map(|x| x.max(0.0));
    let mid = l3 + 2.0 * (l2 * l4).sqrt();
    l1 >= mid - PSD_TOL && mid >= 3.0 * l4 - PSD_TOL
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglementReport {
    pub negativity: f64,
    pub concurrence: f64,
    pub pi: f64,
    pub min_pt_eigenvalue: f64,
}

pub fn entanglement_report(rho: &DensityMatrix) -> Result<EntanglementReport> {
    let pt = pt_eigenvalues(rho)?;
    Ok(EntanglementReport {
        negativity: negativity_from_min(pt[0]),
        concurrence: concurrence(rho)?,
        pi: pi_from_pt(&pt),
        min_pt_eigenvalue: pt[0],
    })
}
