//! Maximization of the negativity over local fields.
//!
//! With opposed z fields `(0, 0, h, 0, 0, -h)` the optimum is found from the
//! stationarity condition of the closed-form negativity in `h`. The boundary
//! temperature separating the zero-field and finite-field phases is the root
//! in `β` of the same condition at `h -> 0`.

use std::f64::consts::LN_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_form::{gibbs_purity, optimized_negativity_tilde};
use crate::error::{Error, Result};
use crate::linalg::hermitian_eigen;
use crate::measures::{negativity, partial_transpose};
use crate::nelder_mead;
use crate::roots::brent;
use crate::spin::{
    build_hamiltonian, canonicalize, spectral_norm, CanonicalCoupling, CouplingMatrix, LocalField,
    SignClass,
};
use crate::thermal::{gibbs_state, InverseTemperature};
use crate::tolerances::{
    BETA_ROOT_TOL, BETA_SCAN_MAX, BETA_SCAN_MIN, BETA_SCAN_POINTS, FIELD_BRACKET_MIN,
    FIELD_ROOT_TOL, HYPOTHESIS_GAP_TOL, TEMPERATURE_FD_STEP,
};

const FIELD_SCAN_POINTS: usize = 600;
const ROOT_MAX_ITER: usize = 200;

/// The stationarity expression
///
/// `|jx+jy|(βJ2 cosh βJ2 - sinh βJ2) + J2²β sinh βJ2
///  - (e^{2βjz}|jx+jy| / cosh βJ1)(-J2β + sinh(2βJ2)/2)`,
///
/// which is a positive multiple of `(1/h) ∂Ñ/∂h`. Evaluated literally, so it
/// overflows once `βJ2` exceeds about 350; use [`field_indicator`] there.
pub fn dn_dh_over_h(c: &CanonicalCoupling, h: f64, beta: InverseTemperature) -> f64 {
    let b = beta.beta();
    let jt = c.j_plus();
    let j1 = (c.jx - c.jy).abs();
    let j2 = (4.0 * h * h + jt * jt).sqrt();
    let x = b * j2;
    jt * (x * x.cosh() - x.sinh()) + j2 * j2 * b * x.sinh()
        - (2.0 * b * c.jz).exp() * jt / (b * j1).cosh() * (-x + (2.0 * x).sinh() / 2.0)
}

/// `(1/h) ∂Ñ/∂h` itself: `4 cosh(βJ1) G / (J2³ D²)` with `G` from
/// [`dn_dh_over_h`] and `D = e^{-βjz} cosh βJ1 + e^{βjz} cosh βJ2`.
pub fn dn_dh_over_h_exact(c: &CanonicalCoupling, h: f64, beta: InverseTemperature) -> f64 {
    let b = beta.beta();
    let jt = c.j_plus();
    let j1 = (c.jx - c.jy).abs();
    let j2 = (4.0 * h * h + jt * jt).sqrt();
    let d = (-b * c.jz).exp() * (b * j1).cosh() + (b * c.jz).exp() * (b * j2).cosh();
    4.0 * (b * j1).cosh() * dn_dh_over_h(c, h, beta) / (j2.powi(3) * d * d)
}

/// `x cosh x - sinh x`.
fn x_cosh_minus_sinh(x: f64) -> f64 {
    if x < 0.1 {
        let mut term = x;
        let mut sum = 0.0;
        for k in 1..10 {
            term *= x * x / ((2 * k) as f64 * (2 * k + 1) as f64);
            sum += term * (2 * k) as f64;
        }
        sum
    } else {
        x * x.cosh() - x.sinh()
    }
}

/// `ln(sinh(2x)/2 - x)`.
fn ln_half_sinh2_minus_x(x: f64) -> f64 {
    if x < 0.1 {
        let y = 2.0 * x;
        let mut term = y;
        let mut sum = 0.0;
        for k in 1..10 {
            term *= y * y / ((2 * k) as f64 * (2 * k + 1) as f64);
            sum += term;
        }
        (sum / 2.0).ln()
    } else if x < 1.0 {
        ((2.0 * x).sinh() / 2.0 - x).ln()
    } else {
        let e2 = (-2.0 * x).exp();
        2.0 * x - 2.0 * LN_2 + (1.0 - e2 * e2 - 4.0 * x * e2).ln()
    }
}

/// Overflow-free sign indicator of [`dn_dh_over_h`]: `ln A - ln B` where the
/// expression equals `A - B` with `A, B >= 0`. Positive means `Ñ` is still
/// increasing in `h`.
pub fn field_indicator(c: &CanonicalCoupling, h: f64, beta: InverseTemperature) -> f64 {
    let b = beta.beta();
    let jt = c.j_plus();
    let j1 = (c.jx - c.jy).abs();
    let j2 = (4.0 * h * h + jt * jt).sqrt();
    let x = b * j2;
    if jt == 0.0 {
        return if x > 0.0 { f64::INFINITY } else { f64::NAN };
    }
    let ln_a = if x >= 1.0 {
        let e2 = (-2.0 * x).exp();
        x - LN_2 + (jt * ((x - 1.0) + e2 * (x + 1.0)) + j2 * x * (1.0 - e2)).ln()
    } else {
        (jt * x_cosh_minus_sinh(x) + j2 * x * x.sinh()).ln()
    };
    let y = b * j1;
    let ln_cosh_y = y + (-2.0 * y).exp().ln_1p() - LN_2;
    let ln_b = 2.0 * b * c.jz - ln_cosh_y + jt.ln() + ln_half_sinh2_minus_x(x);
    ln_a - ln_b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    /// Optimal field is zero.
    LowT,
    /// Optimal field is finite.
    HighT,
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Phase::LowT => "low_t",
            Phase::HighT => "high_t",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub h_op: f64,
    /// `max(Ñ(h_op), 0)`.
    pub n_op: f64,
    /// Un-clamped `Ñ(h_op)`.
    pub n_tilde: f64,
    pub phase: Phase,
    /// Final root bracket in `h`, or `(0, 0)` in the low-temperature phase.
    pub bracket: (f64, f64),
    pub iterations: usize,
    /// Upper end of the field scan actually used.
    pub h_max: f64,
    /// `Ñ(h_op) >= Ñ(h_op ± δ)` held for a small relative `δ`.
    pub verified_maximum: bool,
}

fn default_h_max(t: f64) -> f64 {
    10f64.max(5.0 * t * t.max(2.0).ln())
}

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(move |i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
}

/// Optimal opposed-z field at inverse temperature `beta`.
pub fn optimal_field(
    c: &CanonicalCoupling,
    beta: InverseTemperature,
) -> Result<OptimizationResult> {
    let n0 = optimized_negativity_tilde(c, 0.0, beta);
    let low = |h_max| OptimizationResult {
        h_op: 0.0,
        n_op: n0.max(0.0),
        n_tilde: n0,
        phase: Phase::LowT,
        bracket: (0.0, 0.0),
        iterations: 0,
        h_max,
        verified_maximum: true,
    };
    if c.j_plus() == 0.0 {
        // No field-coupled matrix element: Ñ is flat or decreasing in h.
        return Ok(low(0.0));
    }

    let mut h_max = default_h_max(beta.temperature());
    let mut widened = false;
    let phi = |h: f64| field_indicator(c, h, beta);
    let maxima = loop {
        let grid: Vec<f64> = log_grid(FIELD_BRACKET_MIN, h_max, FIELD_SCAN_POINTS).collect();
        let values: Vec<f64> = grid.iter().map(|&h| phi(h)).collect();
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::InvalidInput("field indicator is NaN".into()));
        }
        if values[FIELD_SCAN_POINTS - 1] > 0.0 {
            if widened {
                return Err(Error::NotBracketed {
                    lo: FIELD_BRACKET_MIN,
                    hi: h_max,
                });
            }
            widened = true;
            h_max *= 10.0;
            continue;
        }
        let mut maxima = Vec::new();
        for i in 0..FIELD_SCAN_POINTS - 1 {
            if values[i] > 0.0 && values[i + 1] <= 0.0 {
                maxima.push((grid[i], grid[i + 1]));
            }
        }
        break maxima;
    };

    let mut best = low(h_max);
    for (lo, hi) in maxima {
        let root = brent(phi, lo, hi, FIELD_ROOT_TOL, FIELD_ROOT_TOL, ROOT_MAX_ITER)?;
        let nt = optimized_negativity_tilde(c, root.x, beta);
        if nt > best.n_tilde {
            best = OptimizationResult {
                h_op: root.x,
                n_op: nt.max(0.0),
                n_tilde: nt,
                phase: Phase::HighT,
                bracket: (root.lo, root.hi),
                iterations: root.iterations,
                h_max,
                verified_maximum: false,
            };
        }
    }
    if best.phase == Phase::HighT {
        let delta = 1e-4 * best.h_op;
        let lo = optimized_negativity_tilde(c, best.h_op - delta, beta);
        let hi = optimized_negativity_tilde(c, best.h_op + delta, beta);
        let slack = 1e-15 * best.n_tilde.abs().max(1e-300);
        best.verified_maximum = best.n_tilde + slack >= lo && best.n_tilde + slack >= hi;
    }
    Ok(best)
}

/// Boundary temperature `T_c` between the zero-field and finite-field
/// phases; `0` when the finite-field phase extends to the lowest scanned
/// temperature.
pub fn boundary_temperature(c: &CanonicalCoupling) -> Result<f64> {
    Ok(boundary_beta(c)?.map_or(0.0, |b| 1.0 / b))
}

/// Inverse boundary temperature, if a sign change exists in the scan range.
pub fn boundary_beta(c: &CanonicalCoupling) -> Result<Option<f64>> {
    if c.j_plus() == 0.0 {
        return Ok(None);
    }
    let g = |b: f64| {
        field_indicator(
            c,
            0.0,
            InverseTemperature::new(b).expect("scan keeps β > 0"),
        )
    };
    let grid: Vec<f64> = log_grid(BETA_SCAN_MIN, BETA_SCAN_MAX, BETA_SCAN_POINTS).collect();
    let mut prev = (grid[0], g(grid[0]));
    for &b in &grid[1..] {
        let v = g(b);
        if prev.1 > 0.0 && v <= 0.0 {
            let root = brent(g, prev.0, b, BETA_ROOT_TOL, BETA_ROOT_TOL, ROOT_MAX_ITER)?;
            return Ok(Some(root.x));
        }
        prev = (b, v);
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnhancementRow {
    pub t: f64,
    pub h_op: f64,
    pub n_op: f64,
    pub n_zero_field: f64,
    pub enhancement: f64,
    pub purity_op: f64,
    pub purity_zero_field: f64,
    pub phase: Phase,
    /// Central differences of `N_op(T)` with step `1e-4·T`.
    pub dn_dt: f64,
    pub d2n_dt2: f64,
}

/// Optimized and zero-field negativity and purity along a temperature grid.
pub fn enhancement_curve(c: &CanonicalCoupling, temps: &[f64]) -> Result<Vec<EnhancementRow>> {
    temps.par_iter().map(|&t| enhancement_row(c, t)).collect()
}

pub fn enhancement_row(c: &CanonicalCoupling, t: f64) -> Result<EnhancementRow> {
    let beta = InverseTemperature::from_temperature(t)?;
    let opt = optimal_field(c, beta)?;
    let n_at = |t: f64| -> Result<f64> {
        Ok(optimal_field(c, InverseTemperature::from_temperature(t)?)?.n_op)
    };
    let dt = TEMPERATURE_FD_STEP * t;
    let (up, down) = (n_at(t + dt)?, n_at(t - dt)?);
    let n_zero = optimized_negativity_tilde(c, 0.0, beta).max(0.0);
    Ok(EnhancementRow {
        t,
        h_op: opt.h_op,
        n_op: opt.n_op,
        n_zero_field: n_zero,
        enhancement: opt.n_op - n_zero,
        purity_op: gibbs_purity(c, opt.h_op, beta),
        purity_zero_field: gibbs_purity(c, 0.0, beta),
        phase: opt.phase,
        dn_dt: (up - down) / (2.0 * dt),
        d2n_dt2: (up - 2.0 * opt.n_op + down) / (dt * dt),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhasePoint {
    pub jx_over_abs_jz: f64,
    pub jy_over_abs_jz: f64,
    pub t_c: f64,
}

/// Diagonal coupling `±(x, y, 1)` rescaled to unit spectral norm.
pub fn phase_diagram_coupling(x: f64, y: f64, class: SignClass) -> Result<CanonicalCoupling> {
    let s = match class {
        SignClass::Antiferromagnetic => 1.0,
        SignClass::Ferromagnetic => -1.0,
    };
    let j = CouplingMatrix::diagonal(s * x, s * y, s)?;
    let norm = spectral_norm(&j)?;
    CanonicalCoupling::from_diagonal(s * x / norm, s * y / norm, s / norm)
}

/// `T_c` over the grid `xs × ys` (row-major in `xs`), evaluated in parallel.
pub fn phase_diagram(xs: &[f64], ys: &[f64], class: SignClass) -> Result<Vec<PhasePoint>> {
    let points: Vec<(f64, f64)> = xs
        .iter()
        .flat_map(|&x| ys.iter().map(move |&y| (x, y)))
        .collect();
    points
        .par_iter()
        .map(|&(x, y)| {
            if x < 1.0 || y < 1.0 {
                return Err(Error::InvalidInput(format!(
                    "phase-diagram axes start at 1, got ({x}, {y})"
                )));
            }
            let c = phase_diagram_coupling(x, y, class)?;
            Ok(PhasePoint {
                jx_over_abs_jz: x,
                jy_over_abs_jz: y,
                t_c: boundary_temperature(&c)?,
            })
        })
        .collect()
}

/// Minimum eigenvalue of `ρ^{T1}` for arbitrary fields on an arbitrary coupling.
pub fn min_pt_eigenvalue(
    j: &CouplingMatrix,
    fields: &LocalField,
    beta: InverseTemperature,
) -> Result<f64> {
    let g = gibbs_state(&build_hamiltonian(j, fields), beta)?;
    Ok(hermitian_eigen(&partial_transpose(&g.rho))?.values[0])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hypothesis1Report {
    /// Optimum restricted to opposed z fields on the canonical coupling.
    pub constrained_best: f64,
    /// Best negativity found over all six field components.
    pub unconstrained_best: f64,
    /// `(h1x, h1y, h1z, h2x, h2y, h2z)` of the unconstrained optimum, in the
    /// frame of the input coupling.
    pub best_params: [f64; 6],
    /// `unconstrained_best - constrained_best`.
    pub gap: f64,
    pub restarts: usize,
    /// Restarts that hit the evaluation budget before converging.
    pub nonconverged: usize,
    /// Half-width of the search box for each field component.
    pub box_half_width: f64,
    pub pass: bool,
}

/// Multi-start search over all six field components, compared against the
/// opposed-z optimum.
///
/// Fields found here live in the frame of `j`, which differs from the
/// canonical frame by local rotations, so only negativity values are compared.
pub fn verify_hypothesis1(
    j: &CouplingMatrix,
    beta: InverseTemperature,
    restarts: usize,
    seed: u64,
) -> Result<Hypothesis1Report> {
    if restarts == 0 {
        return Err(Error::InvalidInput("restarts must be at least 1".into()));
    }
    let c = canonicalize(j);
    let constrained = optimal_field(&c, beta)?;
    let norm = spectral_norm(j)?;
    let scale = if norm > 0.0 { norm } else { 1.0 };
    let width = scale * 5.0 * 1f64.max(0.2 / (beta.beta() * scale));

    let objective = |p: &[f64; 6]| -> f64 {
        min_pt_eigenvalue(j, &LocalField::from_components(*p), beta)
            .map_or(f64::INFINITY, |l| 2.0 * l)
    };
    let opts = nelder_mead::Options {
        initial_step: 0.1,
        xtol: 1e-9,
        ftol: 1e-13,
        max_evals: 6000,
    };
    let runs: Vec<nelder_mead::Minimum<6>> = (0..restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let start: [f64; 6] = std::array::from_fn(|_| rng.gen_range(-width..width));
            nelder_mead::minimize(objective, start, [-width; 6], [width; 6], &opts)
        })
        .collect();
    let nonconverged = runs.iter().filter(|m| !m.converged).count();
    let best = runs
        .iter()
        .min_by(|a, b| a.fx.total_cmp(&b.fx))
        .expect("at least one restart");
    let unconstrained = (-best.fx).max(0.0);
    let gap = unconstrained - constrained.n_op;
    Ok(Hypothesis1Report {
        constrained_best: constrained.n_op,
        unconstrained_best: unconstrained,
        best_params: best.x,
        gap,
        restarts,
        nonconverged,
        box_half_width: width,
        pass: gap <= HYPOTHESIS_GAP_TOL,
    })
}

/// Central-difference partials of the negativity with respect to
/// `(h1x, h1y, h2x, h2y, ξ)` at fields `(0, 0, h(1+ξ), 0, 0, -h(1-ξ))`, `ξ = 0`.
pub fn symmetry_gradient(
    c: &CanonicalCoupling,
    h: f64,
    beta: InverseTemperature,
    step: f64,
) -> Result<[f64; 5]> {
    let j = c.coupling_matrix();
    let n = |p: [f64; 5]| -> Result<f64> {
        let fields = LocalField {
            h1: [p[0], p[1], h * (1.0 + p[4])],
            h2: [p[2], p[3], -h * (1.0 - p[4])],
        };
        negativity(&gibbs_state(&build_hamiltonian(&j, &fields), beta)?.rho)
    };
    let mut grad = [0.0; 5];
    for (k, g) in grad.iter_mut().enumerate() {
        let mut up = [0.0; 5];
        let mut down = [0.0; 5];
        up[k] = step;
        down[k] = -step;
        *g = (n(up)? - n(down)?) / (2.0 * step);
    }
    Ok(grad)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beta(b: f64) -> InverseTemperature {
        InverseTemperature::new(b).unwrap()
    }

    fn canon(jx: f64, jy: f64, jz: f64) -> CanonicalCoupling {
        CanonicalCoupling::from_diagonal(jx, jy, jz).unwrap()
    }

    const T3: f64 = 1.0 / 3.0;

    #[test]
    fn indicator_agrees_in_sign_with_raw_expression() {
        for c in [
            canon(T3, T3, T3),
            canon(0.5, T3, 1.0 / 6.0),
            canon(-0.5, -0.25, -0.25),
        ] {
            for b in [1e-3, 0.1, 1.0, 3.0, 20.0] {
                for h in [0.0, 1e-6, 0.01, 0.3, 1.0, 5.0] {
                    let raw = dn_dh_over_h(&c, h, beta(b));
                    let ind = field_indicator(&c, h, beta(b));
                    assert_eq!(
                        raw > 0.0,
                        ind > 0.0,
                        "{c:?} h={h} b={b} raw={raw} ind={ind}"
                    );
                }
            }
        }
    }

    #[test]
    fn indicator_matches_log_ratio() {
        let c = canon(0.5, T3, 1.0 / 6.0);
        for (h, b) in [(0.2, 0.5), (1.0, 2.0), (0.0, 1e-2)] {
            let jt = c.j_plus();
            let j1: f64 = c.jx - c.jy;
            let j2 = (4.0 * h * h + jt * jt).sqrt();
            let x = b * j2;
            let a = jt * (x * x.cosh() - x.sinh()) + j2 * j2 * b * x.sinh();
            let bb = (2.0 * b * c.jz).exp() * jt / (b * j1).cosh() * ((2.0 * x).sinh() / 2.0 - x);
            let expect = a.ln() - bb.ln();
            assert!(
                (field_indicator(&c, h, beta(b)) - expect).abs() < 1e-9 * expect.abs().max(1.0)
            );
        }
    }

    #[test]
    fn exact_normalization_matches_finite_differences() {
        let c = canon(0.5, T3, 1.0 / 6.0);
        for (h, b) in [(0.5, 1.0), (1.3, 0.4), (0.2, 3.0)] {
            let d = 1e-5;
            let fd = (optimized_negativity_tilde(&c, h + d, beta(b))
                - optimized_negativity_tilde(&c, h - d, beta(b)))
                / (2.0 * d)
                / h;
            let ex = dn_dh_over_h_exact(&c, h, beta(b));
            assert!(
                (fd - ex).abs() < 1e-7 * ex.abs().max(1.0),
                "h={h} b={b} fd={fd} ex={ex}"
            );
        }
    }

    #[test]
    fn zero_field_limit_matches_finite_differences() {
        for c in [canon(T3, T3, T3), canon(0.5, T3, 1.0 / 6.0)] {
            for b in [0.5, 1.0, 2.0] {
                let d = 1e-4;
                let n0 = optimized_negativity_tilde(&c, 0.0, beta(b));
                let fd = 2.0 * (optimized_negativity_tilde(&c, d, beta(b)) - n0) / (d * d);
                let ex = dn_dh_over_h_exact(&c, 0.0, beta(b));
                assert!((fd - ex).abs() < 1e-6, "b={b} fd={fd} ex={ex}");
            }
        }
    }

    #[test]
    fn no_sign_change_below_boundary() {
        let c = canon(T3, T3, T3);
        for k in 1..=2000 {
            let h = 100.0 * k as f64 / 2000.0;
            assert!(dn_dh_over_h(&c, h, beta(2.0)) < 0.0);
        }
    }

    #[test]
    fn sign_change_above_boundary() {
        let c = canon(T3, T3, T3);
        assert!(dn_dh_over_h(&c, 1e-6, beta(0.5)) > 0.0);
        assert!(dn_dh_over_h(&c, 20.0, beta(0.5)) < 0.0);
    }

    #[test]
    fn boundary_temperatures() {
        let t = boundary_temperature(&canon(T3, T3, T3)).unwrap();
        assert!((t - 0.816_840_009_886_6).abs() < 1e-9, "{t}");
        let t = boundary_temperature(&canon(0.5, T3, 1.0 / 6.0)).unwrap();
        assert!((t - 0.680_345_146_625_3).abs() < 1e-9, "{t}");
        assert_eq!(
            boundary_temperature(&canon(-0.5, -0.25, -0.25)).unwrap(),
            0.0
        );
        assert_eq!(boundary_temperature(&canon(-T3, -T3, -T3)).unwrap(), 0.0);
        assert_eq!(boundary_temperature(&canon(1.0, 0.0, 0.0)).unwrap(), 0.0);
        assert_eq!(boundary_temperature(&canon(0.0, 0.0, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn optimal_field_phases() {
        let r = optimal_field(&canon(T3, T3, T3), beta(2.0)).unwrap();
        assert_eq!(r.phase, Phase::LowT);
        assert_eq!(r.h_op, 0.0);
        for t in [0.1, 1.0, 10.0] {
            let r = optimal_field(&canon(-0.5, -0.25, -0.25), beta(1.0 / t)).unwrap();
            assert_eq!(r.phase, Phase::HighT);
            assert!(r.h_op > 0.0 && r.verified_maximum);
        }
    }

    #[test]
    fn optimal_field_is_a_maximum() {
        let c = canon(0.5, T3, 1.0 / 6.0);
        let r = optimal_field(&c, beta(1.0 / 1.185)).unwrap();
        assert!(r.verified_maximum);
        for h in [0.0, 0.5 * r.h_op, 0.9 * r.h_op, 1.1 * r.h_op, 2.0 * r.h_op] {
            assert!(optimized_negativity_tilde(&c, h, beta(1.0 / 1.185)) <= r.n_tilde);
        }
        assert!((r.bracket.1 - r.bracket.0) <= 1e-10 * r.h_op.max(1.0));
    }

    #[test]
    fn high_temperature_field() {
        let r = optimal_field(&canon(T3, T3, T3), beta(0.01)).unwrap();
        assert!((r.h_op - 518.842).abs() < 1e-3, "{}", r.h_op);
        assert!((r.n_op - 5.8054e-4).abs() < 1e-7, "{}", r.n_op);
    }

    #[test]
    fn enhancement_zero_below_boundary() {
        let c = canon(0.5, T3, 1.0 / 6.0);
        for row in enhancement_curve(&c, &[0.3, 0.5, 0.65]).unwrap() {
            assert_eq!(row.enhancement, 0.0);
            assert_eq!(row.phase, Phase::LowT);
            assert_eq!(row.purity_op, row.purity_zero_field);
        }
    }

    #[test]
    fn phase_diagram_is_ordered() {
        let pts = phase_diagram(&[1.0, 10.0], &[1.0, 10.0], SignClass::Antiferromagnetic).unwrap();
        let coords: Vec<_> = pts
            .iter()
            .map(|p| (p.jx_over_abs_jz, p.jy_over_abs_jz))
            .collect();
        assert_eq!(
            coords,
            vec![(1.0, 1.0), (1.0, 10.0), (10.0, 1.0), (10.0, 10.0)]
        );
        assert!((pts[1].t_c - pts[2].t_c).abs() < 1e-12);
        assert!(phase_diagram(&[0.5], &[1.0], SignClass::Ferromagnetic).is_err());
    }

    #[test]
    fn symmetric_point_is_stationary() {
        let c = canon(0.5, T3, 1.0 / 6.0);
        let g = symmetry_gradient(&c, 1.0, beta(1.0), 1e-5).unwrap();
        for v in g {
            assert!(v.abs() < 1e-6, "{g:?}");
        }
    }

    #[test]
    fn hypothesis_small_run() {
        let j = CouplingMatrix::diagonal(T3, T3, T3).unwrap();
        let r = verify_hypothesis1(&j, beta(1.0), 8, 42).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.unconstrained_best > 0.0);
        assert_eq!(verify_hypothesis1(&j, beta(1.0), 8, 42).unwrap(), r);
        assert!(verify_hypothesis1(&j, beta(1.0), 0, 42).is_err());
    }
}
