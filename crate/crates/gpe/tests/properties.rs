use coboson_gpe::{observables, GpeProblem, GpeState, Propagator};
use num_complex::Complex64;
use proptest::prelude::*;
use serde_json::json;

fn two_mode(eta: [(f64, f64); 3], coupling: (f64, f64)) -> GpeProblem {
    let spec = json!({
        "grid": {"length": 10.0, "points": 32},
        "modes": [
            {"label": "g", "mass": 1.0, "potential": {"kind": "harmonic", "omega": 0.8},
             "initial": {"kind": "gaussian", "sigma": 1.0, "norm": 0.6}},
            {"label": "e", "mass": 1.2, "energy_offset": 0.2,
             "initial": {"kind": "gaussian", "x0": 0.5, "sigma": 0.9, "k0": 0.6, "norm": 0.4}}
        ],
        "couplings": [{"from": 0, "to": 1, "re": coupling.0, "im": coupling.1, "k": 0.6, "frequency": 0.3}],
        "eta": [
            {"index": [0, 0, 1, 1], "re": eta[0].0, "im": eta[0].1},
            {"index": [0, 1, 1, 1], "re": eta[1].0, "im": eta[1].1},
            {"index": [0, 0, 0, 1], "re": eta[2].0, "im": eta[2].1}
        ]
    });
    GpeProblem::from_json_str(&spec.to_string()).unwrap()
}

fn pair() -> impl Strategy<Value = (f64, f64)> {
    (-0.5..0.5f64, -0.5..0.5f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_hermitian_problems_conserve_norm(a in pair(), b in pair(), c in pair(), t in pair()) {
        let p = two_mode([a, b, c], t);
        prop_assert_eq!(p.eta.hermiticity_defect(), 0.0);
        let mut s = GpeState::initial(&p).unwrap();
        let n0 = observables(&s, &p).total_norm;
        let mut prop = Propagator::new(&p);
        for _ in 0..100 {
            prop.step(&mut s, 0.01).unwrap();
        }
        let n1 = observables(&s, &p).total_norm;
        prop_assert!((n1 - n0).abs() < 1e-12, "{} {}", n0, n1);
    }

    #[test]
    fn local_nonlinear_matrix_is_hermitian(a in pair(), b in pair(), c in pair(), f in pair(), g in pair()) {
        let p = two_mode([a, b, c], (0.0, 0.0));
        let psi = [Complex64::new(f.0, f.1), Complex64::new(g.0, g.1)];
        let mut h = [Complex64::new(0.0, 0.0); 4];
        p.eta.local_matrix(&psi, &mut h);
        prop_assert!(h[0].im.abs() < 1e-15 && h[3].im.abs() < 1e-15);
        prop_assert!((h[1] - h[2].conj()).norm() < 1e-15);
    }
}
