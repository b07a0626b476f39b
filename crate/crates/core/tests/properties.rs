use proptest::prelude::*;
use qubit_thermal::asymptotics::{high_t_hop_exact, matrix_element_pp_mm};
use qubit_thermal::closed_form::{closed_form_params, optimized_negativity, pt_spectrum};
use qubit_thermal::linalg::{hermitian_eigen, RealMatrix3};
use qubit_thermal::measures::{concurrence, necessary_condition, negativity, pt_eigenvalues};
use qubit_thermal::spin::{
    build_hamiltonian, canonicalize, interaction_hamiltonian, CanonicalCoupling, CouplingMatrix,
    LocalField,
};
use qubit_thermal::thermal::{gibbs_state, DensityMatrix, InverseTemperature};

fn coupling() -> impl Strategy<Value = CouplingMatrix> {
    prop::array::uniform9(-2.0f64..2.0).prop_map(|v| CouplingMatrix::from_slice(&v).unwrap())
}

fn fields() -> impl Strategy<Value = LocalField> {
    prop::array::uniform6(-3.0f64..3.0).prop_map(LocalField::from_components)
}

fn beta() -> impl Strategy<Value = InverseTemperature> {
    (-2.0f64..2.0).prop_map(|e| InverseTemperature::new(10f64.powf(e)).unwrap())
}

/// Canonical diagonal coupling: sorted magnitudes with a common sign.
fn canonical() -> impl Strategy<Value = CanonicalCoupling> {
    (prop::array::uniform3(0.0f64..1.0), any::<bool>()).prop_map(|(mut v, fm)| {
        v.sort_by(|a, b| b.total_cmp(a));
        let s = if fm { -1.0 } else { 1.0 };
        CanonicalCoupling::from_diagonal(s * v[0], s * v[1], s * v[2]).unwrap()
    })
}

fn thermal(j: &CouplingMatrix, f: &LocalField, b: InverseTemperature) -> DensityMatrix {
    gibbs_state(&build_hamiltonian(j, f), b).unwrap().rho
}

fn is_rotation(r: &RealMatrix3) -> bool {
    (*r * r.transpose()).max_abs_diff(&RealMatrix3::identity()) < 1e-12
        && (r.det() - 1.0).abs() < 1e-12
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn at_most_one_negative_pt_eigenvalue(j in coupling(), f in fields(), b in beta()) {
        let ev = pt_eigenvalues(&thermal(&j, &f, b)).unwrap();
        prop_assert!(ev[1] >= -1e-12, "{ev:?}");
    }

    #[test]
    fn negativity_iff_negative_pt_determinant(j in coupling(), f in fields(), b in beta()) {
        let rho = thermal(&j, &f, b);
        let ev = pt_eigenvalues(&rho).unwrap();
        prop_assume!(ev[0].abs() > 1e-10);
        let det: f64 = ev.iter().product();
        prop_assert_eq!(negativity(&rho).unwrap() > 0.0, det < 0.0);
    }

    #[test]
    fn entangled_states_satisfy_necessary_condition(j in coupling(), f in fields(), b in beta()) {
        let rho = thermal(&j, &f, b);
        if negativity(&rho).unwrap() > 0.0 {
            prop_assert!(necessary_condition(&rho));
        }
    }

    #[test]
    fn negativity_equals_concurrence_for_opposed_fields(c in canonical(), h in 0.0f64..10.0, b in beta()) {
        let rho = thermal(&c.coupling_matrix(), &LocalField::opposed_z(h), b);
        let (n, conc) = (negativity(&rho).unwrap(), concurrence(&rho).unwrap());
        prop_assert!((n - conc).abs() < 1e-9, "N = {n}, C = {conc}");
    }

    #[test]
    fn lower_block_is_positive(c in canonical(), h in 0.0f64..10.0, lb in -2.0f64..2.0) {
        let b = InverseTemperature::new(10f64.powf(lb)).unwrap();
        let p = closed_form_params(&c, h, b);
        prop_assert!(p.b_minus() > 0.0, "{p:?}");
    }

    #[test]
    fn closed_form_spectrum_matches_brute_force(c in canonical(), h in 0.0f64..10.0, b in beta()) {
        let brute = pt_eigenvalues(&thermal(&c.coupling_matrix(), &LocalField::opposed_z(h), b)).unwrap();
        let closed = pt_spectrum(&closed_form_params(&c, h, b)).sorted();
        for (x, y) in brute.iter().zip(closed) {
            prop_assert!((x - y).abs() < 1e-10, "{brute:?} vs {closed:?}");
        }
    }

    #[test]
    fn canonical_form_is_canonical(j in coupling()) {
        let c = canonicalize(&j);
        prop_assert!(CanonicalCoupling::from_diagonal(c.jx, c.jy, c.jz).is_ok(), "{c:?}");
        prop_assert!(is_rotation(&c.r1) && is_rotation(&c.r2));
        let rebuilt = c.r1 * *j.matrix() * c.r2.transpose();
        prop_assert!(rebuilt.max_abs_diff(&RealMatrix3::from_diagonal(c.values())) < 1e-12);
    }

    #[test]
    fn canonicalization_preserves_spectrum(j in coupling()) {
        let c = canonicalize(&j);
        let a = hermitian_eigen(&interaction_hamiltonian(&j)).unwrap().values;
        let b = hermitian_eigen(&interaction_hamiltonian(&c.coupling_matrix())).unwrap().values;
        for (x, y) in a.iter().zip(b) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_field_negativity_is_rotation_invariant(j in coupling(), b in beta()) {
        let c = canonicalize(&j);
        let n0 = negativity(&thermal(&j, &LocalField::zero(), b)).unwrap();
        let n1 = negativity(&thermal(&c.coupling_matrix(), &LocalField::zero(), b)).unwrap();
        prop_assert!((n0 - n1).abs() < 1e-10);
    }

    #[test]
    fn gibbs_state_is_a_state(j in coupling(), f in fields(), b in beta()) {
        let rho = thermal(&j, &f, b);
        prop_assert!((rho.trace() - 1.0).abs() < 1e-12);
        prop_assert!(rho.eigenvalues()[0] >= 0.0);
    }
}

#[test]
fn perturbative_negativity_at_high_temperature() {
    let b = 1e-3;
    let beta = InverseTemperature::new(b).unwrap();
    for (jx, jy, jz) in [
        (1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0),
        (0.5, 1.0 / 3.0, 1.0 / 6.0),
        (-0.5, -0.25, -0.25),
    ] {
        let c = CanonicalCoupling::from_diagonal(jx, jy, jz).unwrap();
        let me = matrix_element_pp_mm(&c, 0.0, 0.0, std::f64::consts::PI, 0.0).norm();
        let h_prime = high_t_hop_exact(c.jx, c.jy, beta).unwrap().h_prime_op;
        for scale in [0.8, 1.0, 1.25] {
            let hp = scale * h_prime;
            let approx = b * me / (2.0 * hp) - 2.0 * (-2.0 * hp).exp();
            let exact = optimized_negativity(&c, hp / b, beta);
            assert!(
                (exact - approx).abs() < 10.0 * b * b,
                "{c:?} h'={hp}: {exact} vs {approx}"
            );
        }
    }
}
