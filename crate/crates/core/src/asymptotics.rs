//! High- and low-temperature asymptotes of the optimal field and the
//! optimized negativity.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spin::{interaction_eigensystem, CanonicalCoupling, Degeneracy, SignClass};
use crate::thermal::InverseTemperature;
use crate::tolerances::{LAMBERT_MAX_ITER, LAMBERT_TOL};

const INV_E: f64 = 1.0 / std::f64::consts::E;

/// Lower real branch `W_{-1}` of Lambert's function on `[-1/e, 0)`.
pub fn lambert_w_minus1(x: f64) -> Result<f64> {
    if !(-INV_E..0.0).contains(&x) {
        // -1/e rounds slightly differently from its own literal; accept that too.
        if (x + INV_E).abs() <= 4.0 * f64::EPSILON * INV_E {
            return Ok(-1.0);
        }
        return Err(Error::LambertDomain(x));
    }
    let q = 1.0 + std::f64::consts::E * x;
    if q <= 0.0 {
        return Ok(-1.0);
    }
    let mut w = if q < 0.25 {
        // Expansion about the branch point in p = -√(2(1 + e x)).
        let p = -(2.0 * q).sqrt();
        let series = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
        if p.abs() < 1e-6 {
            return Ok(series);
        }
        series
    } else {
        let l1 = (-x).ln();
        l1 - (-l1).ln()
    };
    for _ in 0..LAMBERT_MAX_ITER {
        let ew = w.exp();
        let f = w * ew - x;
        // Near the branch point the slope vanishes, so roundoff in `f` bounds
        // the attainable step size; stop on the residual there.
        if f.abs() <= 2.0 * f64::EPSILON * x.abs() {
            return Ok(w);
        }
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        w -= step;
        if w > -1.0 {
            w = -1.0 - 1e-300_f64.max((w + 1.0).abs() * 0.5);
        }
        if step.abs() <= LAMBERT_TOL * w.abs() {
            return Ok(w);
        }
    }
    Err(Error::NotConverged {
        what: "Lambert W_-1",
        iterations: LAMBERT_MAX_ITER,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HighTAsymptote {
    /// Dimensionless `β h_op`.
    pub h_prime_op: f64,
    pub h_op: f64,
    pub n_op: f64,
    /// `β |jx + jy| < 0.1`: the temperature is well above the coupling scale.
    pub valid: bool,
}

fn high_t_validity(beta: f64, jt: f64) -> bool {
    beta * jt < 0.1
}

/// Optimal field from `e^{2h'} = 8h'² / (β|jx+jy|)` solved through `W_{-1}`,
/// with `N_op = β|jx+jy|/(2h') - 2e^{-2h'}`.
pub fn high_t_hop_exact(jx: f64, jy: f64, beta: InverseTemperature) -> Result<HighTAsymptote> {
    let b = beta.beta();
    let jt = (jx + jy).abs();
    if jt == 0.0 {
        return Err(Error::AsymptoteInvalid(
            "jx + jy = 0, no field-coupled matrix element".into(),
        ));
    }
    let arg = -(b * jt / 8.0).sqrt();
    if arg < -INV_E {
        return Err(Error::AsymptoteInvalid(format!(
            "β|jx+jy|/8 = {} exceeds 1/e², no W_-1 solution",
            b * jt / 8.0
        )));
    }
    let hp = -lambert_w_minus1(arg)?;
    Ok(HighTAsymptote {
        h_prime_op: hp,
        h_op: hp / b,
        n_op: b * jt / (2.0 * hp) - 2.0 * (-2.0 * hp).exp(),
        valid: high_t_validity(b, jt),
    })
}

/// Leading orders `h_op = ln(1/β)/(2β)` and `N_op = β|jx+jy| / ln(1/β)`.
///
/// These converge slowly; at `T = 100` the field is off by a factor of two.
pub fn high_t_leading(jx: f64, jy: f64, beta: InverseTemperature) -> Result<HighTAsymptote> {
    let b = beta.beta();
    if b >= 1.0 {
        return Err(Error::AsymptoteInvalid(format!(
            "leading order needs β < 1, got {b}"
        )));
    }
    let jt = (jx + jy).abs();
    let l = (1.0 / b).ln();
    Ok(HighTAsymptote {
        h_prime_op: l / 2.0,
        h_op: l / (2.0 * b),
        n_op: b * jt / l,
        valid: high_t_validity(b, jt),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowTAsymptote {
    pub h_op: f64,
    pub n_op: f64,
    pub degeneracy: Degeneracy,
}

/// Low-temperature optimal field for ferromagnetic couplings with a
/// degenerate ground state:
/// `h_op ≈ √((J̃/2β) ln kβJ̃)`, `N_op ≈ 1 - (1 + ln kβJ̃)/(βJ̃)`, with `k = 2`
/// (doubly) or `k = 4` (triply degenerate) and `J̃ = |jx + jy|`.
pub fn low_t_asymptote(c: &CanonicalCoupling, beta: InverseTemperature) -> Result<LowTAsymptote> {
    let es = interaction_eigensystem(c);
    let k = match (c.sign_class(), es.degeneracy) {
        (SignClass::Ferromagnetic, Degeneracy::Doubly) => 2.0,
        (SignClass::Ferromagnetic, Degeneracy::Triply) => 4.0,
        _ => {
            return Err(Error::NoLowTAsymptote(format!(
                "ground state of ({}, {}, {}) is {:?}; h_op = 0 exactly at low temperature",
                c.jx, c.jy, c.jz, es.degeneracy
            )))
        }
    };
    let b = beta.beta();
    let jt = c.j_plus();
    let l = (k * b * jt).ln();
    if l <= 0.0 {
        return Err(Error::AsymptoteInvalid(format!("needs {k}·β·|jx+jy| > 1")));
    }
    Ok(LowTAsymptote {
        h_op: (jt / (2.0 * b) * l).sqrt(),
        n_op: 1.0 - (1.0 + l) / (b * jt),
        degeneracy: es.degeneracy,
    })
}

/// `<++|H_int|-->` for local-field directions `(θ1, φ1)` and `(θ2, φ2)`.
pub fn matrix_element_pp_mm(
    c: &CanonicalCoupling,
    theta1: f64,
    phi1: f64,
    theta2: f64,
    phi2: f64,
) -> Complex64 {
    let (s1, c1) = (theta1 / 2.0).sin_cos();
    let (s2, c2) = (theta2 / 2.0).sin_cos();
    let e = |phase: f64| Complex64::from_polar(1.0, phase);
    let diff = e(-(phi1 + phi2)) * (s1 * s1 * s2 * s2) + e(phi1 + phi2) * (c1 * c1 * c2 * c2);
    let sum = e(phi1 - phi2) * (c1 * c1 * s2 * s2) + e(phi2 - phi1) * (s1 * s1 * c2 * c2);
    Complex64::new(c.jz * theta1.sin() * theta2.sin(), 0.0) + diff * (c.jx - c.jy)
        - sum * (c.jx + c.jy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::interaction_hamiltonian;
    use std::f64::consts::PI;

    fn beta(b: f64) -> InverseTemperature {
        InverseTemperature::new(b).unwrap()
    }

    /// Bisection for w e^w = x over w ∈ [-50, -1].
    fn bisect_w(x: f64) -> f64 {
        let (mut lo, mut hi) = (-50.0_f64, -1.0_f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            // w e^w increases from ~0⁻ towards -1/e as w goes from -50 to -1.
            if mid * mid.exp() > x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn branch_point() {
        assert_eq!(lambert_w_minus1(-INV_E).unwrap(), -1.0);
        assert_eq!(lambert_w_minus1(-(-1.0_f64).exp()).unwrap(), -1.0);
    }

    #[test]
    fn domain_errors() {
        for x in [0.0, 0.1, -0.4, f64::NAN] {
            assert!(
                matches!(lambert_w_minus1(x), Err(Error::LambertDomain(_))),
                "{x}"
            );
        }
    }

    #[test]
    fn matches_bisection() {
        for x in [-0.1, -0.2, -0.3, -0.36, -1e-3, -1e-8] {
            let w = lambert_w_minus1(x).unwrap();
            assert!(w <= -1.0);
            assert!((w * w.exp() - x).abs() <= 1e-12 * x.abs(), "x={x}");
            assert!((w - bisect_w(x)).abs() < 1e-9 * w.abs(), "x={x}");
        }
    }

    #[test]
    fn residual_on_log_grid() {
        for k in 1..=400 {
            // Dense near both ends of the domain.
            let t = k as f64 / 400.0;
            for x in [
                -INV_E * 10f64.powf(-300.0 * t),
                -INV_E * (1.0 - 10f64.powf(-15.0 * t)),
            ] {
                let w = lambert_w_minus1(x).unwrap_or_else(|e| panic!("x={x}: {e}"));
                assert!(w <= -1.0);
                assert!(
                    (w * w.exp() - x).abs() <= 1e-12 * x.abs().max(1e-300),
                    "x={x} w={w}"
                );
            }
        }
    }

    #[test]
    fn fixed_point_equation() {
        for t in [10.0, 30.0, 100.0, 1000.0] {
            let b = 1.0 / t;
            let a = high_t_hop_exact(1.0 / 3.0, 1.0 / 3.0, beta(b)).unwrap();
            let hp = a.h_prime_op;
            let lhs = (2.0 * hp).exp();
            let rhs = 8.0 * hp * hp / (b * 2.0 / 3.0);
            assert!((lhs / rhs - 1.0).abs() < 1e-10);
            assert!(hp > 1.0 && a.n_op > 0.0 && a.n_op < 1.0);
        }
    }

    #[test]
    fn exact_asymptote_errors() {
        assert!(matches!(
            high_t_hop_exact(0.5, -0.5, beta(0.01)),
            Err(Error::AsymptoteInvalid(_))
        ));
        assert!(matches!(
            high_t_hop_exact(1.0, 1.0, beta(10.0)),
            Err(Error::AsymptoteInvalid(_))
        ));
    }

    #[test]
    fn leading_order_domain() {
        assert!(high_t_leading(1.0, 1.0, beta(1.0)).is_err());
        let a = high_t_leading(1.0 / 3.0, 1.0 / 3.0, beta(0.5)).unwrap();
        assert!(a.h_op.is_finite() && a.n_op.is_finite());
        assert!(!a.valid);
    }

    #[test]
    fn low_t_formulas() {
        let t = 1.0 / 3.0;
        let c = CanonicalCoupling::from_diagonal(-t, -t, -t).unwrap();
        let a = low_t_asymptote(&c, beta(200.0)).unwrap();
        let jt: f64 = 2.0 / 3.0;
        let l = (4.0 * 200.0 * jt).ln();
        assert_eq!(a.degeneracy, Degeneracy::Triply);
        assert!((a.n_op - (1.0 - (1.0 + l) / (200.0 * jt))).abs() < 1e-15);
        assert!((a.h_op - (jt / 400.0 * l).sqrt()).abs() < 1e-15);

        let c = CanonicalCoupling::from_diagonal(-0.5, -0.25, -0.25).unwrap();
        let a = low_t_asymptote(&c, beta(200.0)).unwrap();
        assert_eq!(a.degeneracy, Degeneracy::Doubly);
        let l = (2.0 * 200.0 * 0.75_f64).ln();
        assert!((a.n_op - (1.0 - (1.0 + l) / 150.0)).abs() < 1e-15);
    }

    #[test]
    fn low_t_rejects_non_degenerate() {
        let t = 1.0 / 3.0;
        for c in [
            CanonicalCoupling::from_diagonal(t, t, t).unwrap(),
            CanonicalCoupling::from_diagonal(-0.5, -0.4, -0.25).unwrap(),
        ] {
            assert!(matches!(
                low_t_asymptote(&c, beta(200.0)),
                Err(Error::NoLowTAsymptote(_))
            ));
        }
    }

    #[test]
    fn matrix_element_special_angles() {
        let c = CanonicalCoupling::from_diagonal(0.5, 1.0 / 3.0, 1.0 / 6.0).unwrap();
        let m = matrix_element_pp_mm(&c, 0.0, 0.0, PI, 0.0);
        assert!((m - Complex64::new(-(c.jx + c.jy), 0.0)).norm() < 1e-15);
        let m = matrix_element_pp_mm(&c, 0.0, 0.0, 0.0, 0.0);
        assert!((m - Complex64::new(c.jx - c.jy, 0.0)).norm() < 1e-15);
    }

    fn direct_element(c: &CanonicalCoupling, t1: f64, p1: f64, t2: f64, p2: f64) -> Complex64 {
        let (s1, c1) = (t1 / 2.0).sin_cos();
        let (s2, c2) = (t2 / 2.0).sin_cos();
        let e = |p: f64| Complex64::from_polar(1.0, p);
        let pp = [
            Complex64::new(c1 * c2, 0.0),
            e(p2) * (c1 * s2),
            e(p1) * (s1 * c2),
            e(p1 + p2) * (s1 * s2),
        ];
        let mm = [
            Complex64::new(s1 * s2, 0.0),
            -e(p2) * (s1 * c2),
            -e(p1) * (c1 * s2),
            e(p1 + p2) * (c1 * c2),
        ];
        let hmm = interaction_hamiltonian(&c.coupling_matrix()).mul_vec(&mm);
        (0..4).map(|i| pp[i].conj() * hmm[i]).sum()
    }

    #[test]
    fn matrix_element_matches_direct_product() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for c in [
            CanonicalCoupling::from_diagonal(0.5, 1.0 / 3.0, 1.0 / 6.0).unwrap(),
            CanonicalCoupling::from_diagonal(-0.5, -0.25, -0.25).unwrap(),
        ] {
            for _ in 0..200 {
                let a: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..2.0 * PI));
                let m = matrix_element_pp_mm(&c, a[0], a[1], a[2], a[3]);
                let d = direct_element(&c, a[0], a[1], a[2], a[3]);
                assert!((m - d).norm() < 1e-14);
            }
        }
    }
}
