//! Two-qubit Hamiltonians and the reduction of an arbitrary coupling tensor
//! to diagonal XYZ form by local rotations.
//!
//! Basis ordering is `|00>, |01>, |10>, |11>` with `σ^z |0> = +|0>`.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, svd3, ComplexMatrix4, RealMatrix3};
use crate::tolerances::DEGENERACY_TOL;

type Mat2 = [[Complex64; 2]; 2];

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub const IDENTITY2: Mat2 = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];

/// `σ^x, σ^y, σ^z`.
pub const PAULI: [Mat2; 3] = [
    [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
    [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]],
];

/// Real 3×3 interaction tensor; `J[i][j]` multiplies `σ1^i ⊗ σ2^j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingMatrix(RealMatrix3);

impl CouplingMatrix {
    pub fn new(rows: [[f64; 3]; 3]) -> Result<Self> {
        let m = RealMatrix3(rows);
        if !m.is_finite() {
            return Err(Error::InvalidInput(
                "coupling entries must be finite".into(),
            ));
        }
        Ok(Self(m))
    }

    pub fn diagonal(jx: f64, jy: f64, jz: f64) -> Result<Self> {
        Self::new(RealMatrix3::from_diagonal([jx, jy, jz]).0)
    }

    /// Accepts 9 reals (row-major) or 3 reals (diagonal).
    pub fn from_slice(values: &[f64]) -> Result<Self> {
        match values.len() {
            3 => Self::diagonal(values[0], values[1], values[2]),
            9 => Self::new(std::array::from_fn(|i| {
                std::array::from_fn(|j| values[3 * i + j])
            })),
            n => Err(Error::InvalidInput(format!(
                "coupling needs 3 (diagonal) or 9 (row-major) values, got {n}"
            ))),
        }
    }

    pub fn matrix(&self) -> &RealMatrix3 {
        &self.0
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(self.0 .0.map(|row| row.map(|x| x * s)))
    }
}

/// Local fields on the two spins.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct LocalField {
    pub h1: [f64; 3],
    pub h2: [f64; 3],
}

impl LocalField {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `h1 = (0, 0, h)`, `h2 = (0, 0, -h)`.
    pub fn opposed_z(h: f64) -> Self {
        Self {
            h1: [0.0, 0.0, h],
            h2: [0.0, 0.0, -h],
        }
    }

    /// Packs `(h1x, h1y, h1z, h2x, h2y, h2z)`.
    pub fn from_components(p: [f64; 6]) -> Self {
        Self {
            h1: [p[0], p[1], p[2]],
            h2: [p[3], p[4], p[5]],
        }
    }

    pub fn components(&self) -> [f64; 6] {
        [
            self.h1[0], self.h1[1], self.h1[2], self.h2[0], self.h2[1], self.h2[2],
        ]
    }

    /// Mean field magnitude `(|h1| + |h2|) / 2`.
    pub fn h(&self) -> f64 {
        (norm3(self.h1) + norm3(self.h2)) / 2.0
    }

    /// Imbalance `(|h1| - |h2|) / (|h1| + |h2|)`, undefined for zero fields.
    pub fn zeta(&self) -> Option<f64> {
        let (a, b) = (norm3(self.h1), norm3(self.h2));
        (a + b > 0.0).then(|| (a - b) / (a + b))
    }
}

fn norm3(v: [f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `Σ J_ij σ1^i ⊗ σ2^j + Σ_i (h1^i σ1^i ⊗ I + h2^i I ⊗ σ2^i)`.
pub fn build_hamiltonian(j: &CouplingMatrix, fields: &LocalField) -> ComplexMatrix4 {
    let mut h = ComplexMatrix4::zeros();
    for a in 0..3 {
        for b in 0..3 {
            let jab = j.0 .0[a][b];
            if jab != 0.0 {
                h = h + ComplexMatrix4::kron(&PAULI[a], &PAULI[b]).scale(jab);
            }
        }
        if fields.h1[a] != 0.0 {
            h = h + ComplexMatrix4::kron(&PAULI[a], &IDENTITY2).scale(fields.h1[a]);
        }
        if fields.h2[a] != 0.0 {
            h = h + ComplexMatrix4::kron(&IDENTITY2, &PAULI[a]).scale(fields.h2[a]);
        }
    }
    h
}

/// Interaction part only.
pub fn interaction_hamiltonian(j: &CouplingMatrix) -> ComplexMatrix4 {
    build_hamiltonian(j, &LocalField::zero())
}

/// Largest absolute eigenvalue of the interaction Hamiltonian.
pub fn spectral_norm(j: &CouplingMatrix) -> Result<f64> {
    let e = hermitian_eigen(&interaction_hamiltonian(j))?;
    Ok(e.values.iter().map(|x| x.abs()).fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignClass {
    /// `{jx, jy} >= jz >= 0`.
    Antiferromagnetic,
    /// `0 >= jz >= {jx, jy}`.
    Ferromagnetic,
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignClass::Antiferromagnetic => "antiferromagnetic",
            SignClass::Ferromagnetic => "ferromagnetic",
        })
    }
}

/// Diagonal coupling `(jx, jy, jz)` together with the proper rotations
/// `r1`, `r2` such that `r1 J r2ᵀ = diag(jx, jy, jz)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalCoupling {
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub r1: RealMatrix3,
    pub r2: RealMatrix3,
}

impl CanonicalCoupling {
    /// A diagonal coupling already in canonical form, with identity rotations.
    ///
    /// Requires all entries in one sign class and `|jz|` minimal; `jx`, `jy`
    /// may appear in either order.
    pub fn from_diagonal(jx: f64, jy: f64, jz: f64) -> Result<Self> {
        if ![jx, jy, jz].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidInput(
                "coupling entries must be finite".into(),
            ));
        }
        let afm = jx >= jz && jy >= jz && jz >= 0.0;
        let fm = jx <= jz && jy <= jz && jz <= 0.0;
        if !(afm || fm) {
            return Err(Error::NotCanonical(format!(
                "({jx}, {jy}, {jz}) needs {{jx, jy}} >= jz >= 0 or 0 >= jz >= {{jx, jy}}"
            )));
        }
        Ok(Self {
            jx,
            jy,
            jz,
            r1: RealMatrix3::identity(),
            r2: RealMatrix3::identity(),
        })
    }

    pub fn values(&self) -> [f64; 3] {
        [self.jx, self.jy, self.jz]
    }

    pub fn sign_class(&self) -> SignClass {
        if self.jx < 0.0 || self.jy < 0.0 || self.jz < 0.0 {
            SignClass::Ferromagnetic
        } else {
            SignClass::Antiferromagnetic
        }
    }

    pub fn coupling_matrix(&self) -> CouplingMatrix {
        CouplingMatrix(RealMatrix3::from_diagonal(self.values()))
    }

    /// Relabels axes `(x, y, z) -> (y, z, x)` on both spins at once.
    ///
    /// The result is an equivalent diagonal form, but generally not canonical.
    pub fn cycle_axes(&self) -> Self {
        let p = RealMatrix3([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]);
        Self {
            jx: self.jy,
            jy: self.jz,
            jz: self.jx,
            r1: p * self.r1,
            r2: p * self.r2,
        }
    }

    /// `|jx + jy|`, the field-coupled energy scale.
    pub fn j_plus(&self) -> f64 {
        (self.jx + self.jy).abs()
    }

    /// Same coupling with every entry multiplied by `s > 0`.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            jx: self.jx * s,
            jy: self.jy * s,
            jz: self.jz * s,
            ..*self
        }
    }
}

/// Reduces `J` to diagonal XYZ form by proper rotations of each spin.
///
/// `det J >= 0` yields the antiferromagnetic class, `det J < 0` the
/// ferromagnetic class. Axes are ordered so that `|jx| >= |jy| >= |jz|`.
pub fn canonicalize(j: &CouplingMatrix) -> CanonicalCoupling {
    let svd = svd3(j.matrix());
    let mut u = svd.u;
    let w = svd.w;
    let sigma = svd.sigma;
    let singular = sigma[2] <= 1e-14 * sigma[0];
    let (du, dw) = (u.det().signum(), w.det().signum());

    // r1 = d1 u, r2 = d2 wᵀ with d1, d2 = ±I so that both rotations are proper.
    let (d1, d2) = if singular {
        if du != dw {
            // The null direction's sign is free; flip it to align the determinants.
            for x in u.0[2].iter_mut() {
                *x = -*x;
            }
        }
        (dw, dw)
    } else if du == dw {
        (du, du)
    } else {
        (du, -du)
    };
    let r1 = RealMatrix3(u.0.map(|row| row.map(|x| d1 * x)));
    let r2 = RealMatrix3(w.transpose().0.map(|row| row.map(|x| d2 * x)));
    let s = d1 * d2;
    CanonicalCoupling {
        jx: s * sigma[0],
        jy: s * sigma[1],
        jz: s * sigma[2],
        r1,
        r2,
    }
}

/// Ground-state degeneracy of a diagonal interaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    NonDegenerate,
    Doubly,
    Triply,
    Fourfold,
}

/// The four Bell-state eigenpairs of a diagonal interaction.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionEigensystem {
    /// `ε_1..ε_4`, in the fixed Bell order below (not sorted).
    pub energies: [f64; 4],
    /// `(|01>-|10>)/√2, (|01>+|10>)/√2, (|00>+|11>)/√2, (|00>-|11>)/√2`.
    pub states: [[Complex64; 4]; 4],
    /// Indices into `energies` that attain the ground energy.
    pub ground: Vec<usize>,
    pub degeneracy: Degeneracy,
}

impl InteractionEigensystem {
    pub fn ground_energy(&self) -> f64 {
        self.energies[self.ground[0]]
    }
}

pub fn interaction_eigensystem(c: &CanonicalCoupling) -> InteractionEigensystem {
    let (jx, jy, jz) = (c.jx, c.jy, c.jz);
    let energies = [-jx - jy - jz, jx + jy - jz, jx - jy + jz, -jx + jy + jz];
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let z = 0.0;
    let states = [[z, r, -r, z], [z, r, r, z], [r, z, z, r], [r, z, z, -r]]
        .map(|s| s.map(|x| Complex64::new(x, 0.0)));

    let e_min = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let scale = energies
        .iter()
        .map(|e| e.abs())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let ground: Vec<usize> = (0..4)
        .filter(|&i| energies[i] - e_min <= DEGENERACY_TOL * scale)
        .collect();
    let degeneracy = match ground.len() {
        1 => Degeneracy::NonDegenerate,
        2 => Degeneracy::Doubly,
        3 => Degeneracy::Triply,
        _ => Degeneracy::Fourfold,
    };
    InteractionEigensystem {
        energies,
        states,
        ground,
        degeneracy,
    }
}
