//! Analytic partial-transpose spectrum for opposed z fields
//! `h1 = (0, 0, h)`, `h2 = (0, 0, -h)` on a canonical coupling.
//!
//! In the computational basis `Z ρ^{T1}` is
//!
//! ```text
//! [ a1   0      0      a2 ]
//! [ 0    b1-b2  b3     0  ]
//! [ 0    b3     b1+b2  0  ]
//! [ a2   0      0      a1 ]
//! ```
//!
//! with eigenvalues `a1 ± |a2|` and `b1 ± √(b2² + b3²)`.

use serde::Serialize;

use crate::linalg::ComplexMatrix4;
use crate::spin::CanonicalCoupling;
use crate::thermal::InverseTemperature;
use crate::tolerances::SINHC_SERIES_CUTOFF;

/// `e^c sinh x` for `x >= 0` without intermediate overflow.
fn exp_sinh(c: f64, x: f64) -> f64 {
    if x < 20.0 {
        c.exp() * x.sinh()
    } else {
        0.5 * ((c + x).exp() - (c - x).exp())
    }
}

/// `e^c cosh x`.
fn exp_cosh(c: f64, x: f64) -> f64 {
    0.5 * ((c + x).exp() + (c - x).exp())
}

/// `e^c sinh(β J) / J`, finite as `J -> 0`.
fn exp_sinhc(c: f64, beta: f64, j: f64) -> f64 {
    let x = beta * j;
    if x < SINHC_SERIES_CUTOFF {
        c.exp() * beta * (1.0 + x * x / 6.0)
    } else {
        exp_sinh(c, x) / j
    }
}

/// The scalars of the closed form.
///
/// `a1, a2, b1, b2, b3` and `z` all carry the common factor
/// `e^{-log_scale}` so that they stay finite at large `β J2`; ratios such as
/// the normalized spectrum are unaffected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormParams {
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    /// `|jx - jy|`.
    pub j1: f64,
    /// `√(4h² + (jx + jy)²)`.
    pub j2: f64,
    /// `2 a1 + 2 b1`.
    pub z: f64,
    pub log_scale: f64,
    /// `b1 - √(b2² + b3²)`, evaluated without cancellation.
    b_minus: f64,
    /// `b1² - b2² - b3²`.
    b_det: f64,
}

impl ClosedFormParams {
    /// The same parameters with `log_scale = 0`; may overflow at low temperature.
    pub fn unscaled(&self) -> Self {
        let f = self.log_scale.exp();
        Self {
            a1: self.a1 * f,
            a2: self.a2 * f,
            b1: self.b1 * f,
            b2: self.b2 * f,
            b3: self.b3 * f,
            z: self.z * f,
            b_minus: self.b_minus * f,
            b_det: self.b_det * f * f,
            log_scale: 0.0,
            ..*self
        }
    }

    /// `b1 - √(b2² + b3²)` in the scaled convention.
    pub fn b_minus(&self) -> f64 {
        self.b_minus
    }

    /// `ln(b1² - b2² - b3²)` in absolute (unscaled) terms.
    pub fn ln_b_det(&self) -> f64 {
        self.b_det.ln() + 2.0 * self.log_scale
    }

    /// `Z ρ^{T1}` divided by `Z`, assembled entry by entry.
    pub fn pt_matrix(&self) -> ComplexMatrix4 {
        let mut m = ComplexMatrix4::from_real_diagonal([
            self.a1,
            self.b1 - self.b2,
            self.b1 + self.b2,
            self.a1,
        ]);
        m.0[0][3].re = self.a2;
        m.0[3][0].re = self.a2;
        m.0[1][2].re = self.b3;
        m.0[2][1].re = self.b3;
        m.scale(1.0 / self.z)
    }
}

pub fn closed_form_params(
    c: &CanonicalCoupling,
    h: f64,
    beta: InverseTemperature,
) -> ClosedFormParams {
    let b = beta.beta();
    let jz = c.jz;
    let jsum = c.jx + c.jy;
    let jt = jsum.abs();
    let j1 = (c.jx - c.jy).abs();
    let j2 = (4.0 * h * h + jsum * jsum).sqrt();
    let s = (-b * jz + b * j1).max(b * jz + b * j2);

    let a1 = exp_cosh(-b * jz - s, b * j1);
    let sinhc = exp_sinhc(b * jz - s, b, j2);
    let a2 = -jsum * sinhc;
    let b1 = exp_cosh(b * jz - s, b * j2);
    let b2 = 2.0 * h * sinhc;
    let b3 = -exp_sinh(-b * jz - s, b * j1);
    let z = 2.0 * a1 + 2.0 * b1;

    // b1² - b2² - b3² = F·F₊ with F± = √(e^{2βjz} + a2²) ± |b3| (scaled).
    // F is split into its zero-field value plus a non-negative h-dependent
    // increment so that its positivity survives cancellation.
    let e = (b * jz - s).exp();
    let root = e.hypot(a2);
    let a2_zero = exp_sinh(b * jz - s, b * jt);
    let root_zero = exp_cosh(b * jz - s, b * jt);
    let increment = if jt == 0.0 {
        0.0
    } else {
        let diff = jt * (sinhc - exp_sinhc(b * jz - s, b, jt));
        (diff * (a2.abs() + a2_zero) / (root + root_zero)).max(0.0)
    };
    let f0 = 0.5
        * (-(b * (jz + jt) - s).exp() * (b * (j1 - 2.0 * jz - jt)).exp_m1()
            + (b * (jz - jt) - s).exp()
            + (-b * (j1 + jz) - s).exp());
    let f_minus = f0 + increment;
    let f_plus = root + b3.abs();
    let b_det = f_minus * f_plus;
    let b_minus = b_det / (b1 + b2.hypot(b3));

    ClosedFormParams {
        a1,
        a2,
        b1,
        b2,
        b3,
        j1,
        j2,
        z,
        log_scale: s,
        b_minus,
        b_det,
    }
}

/// Normalized eigenvalues of `ρ^{T1}` in the order
/// `a1-|a2|, a1+|a2|, b1+√(b2²+b3²), b1-√(b2²+b3²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PtSpectrum(pub [f64; 4]);

impl PtSpectrum {
    pub fn sorted(&self) -> [f64; 4] {
        let mut v = self.0;
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn min(&self) -> f64 {
        self.sorted()[0]
    }
}

pub fn pt_spectrum(p: &ClosedFormParams) -> PtSpectrum {
    let r = p.b2.hypot(p.b3);
    PtSpectrum([p.a1 - p.a2.abs(), p.a1 + p.a2.abs(), p.b1 + r, p.b_minus].map(|x| x / p.z))
}

/// `Ñ = -2 (a1 - |a2|) / Z`; negative values mean no entanglement.
pub fn optimized_negativity_tilde(c: &CanonicalCoupling, h: f64, beta: InverseTemperature) -> f64 {
    let p = closed_form_params(c, h, beta);
    -2.0 * (p.a1 - p.a2.abs()) / p.z
}

/// `max(Ñ, 0)`.
pub fn optimized_negativity(c: &CanonicalCoupling, h: f64, beta: InverseTemperature) -> f64 {
    optimized_negativity_tilde(c, h, beta).max(0.0)
}

/// Purity `tr ρ²` of the Gibbs state for opposed z fields, from the energies
/// `jz ± J1` and `-jz ± J2`.
pub fn gibbs_purity(c: &CanonicalCoupling, h: f64, beta: InverseTemperature) -> f64 {
    let b = beta.beta();
    let jsum = c.jx + c.jy;
    let j1 = (c.jx - c.jy).abs();
    let j2 = (4.0 * h * h + jsum * jsum).sqrt();
    let energies = [c.jz - j1, c.jz + j1, -c.jz - j2, -c.jz + j2];
    let e0 = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let w = energies.map(|e| (-b * (e - e0)).exp());
    let z: f64 = w.iter().sum();
    w.iter().map(|x| x * x).sum::<f64>() / (z * z)
}
