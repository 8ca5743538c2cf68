// Rotations and exchanges reorder sums of partly cancelling pair terms, so
// row checks carry a floor proportional to the summed pair magnitudes.

use coboson_core::clock::{doppler_shift, ClockParams, GaussianPacket};
use coboson_core::scattering::{coulomb_sum, multipole_for_configs, potential_components, CobosonConfig};
use coboson_core::spectrum::{clebsch_gordan, energy1, state_mass};
use coboson_core::{QuantumNumbers, SpeciesParams, WilsonCoefficients};
use nalgebra::{Rotation3, Vector3};
use proptest::prelude::*;

fn rows(ell: u32) -> Vec<(u32, u32)> {
    let mut out = vec![(ell, 0), (ell + 1, 1)];
    if ell >= 1 {
        out.push((ell, 1));
        out.push((ell - 1, 1));
    }
    out
}

fn row_vector(j: u32, s: u32, ell: u32, m_j: i32) -> [f64; 3] {
    // components m_S = 1, 0, −1; singlet rows use the middle slot
    if s == 0 {
        return [0.0, if m_j.unsigned_abs() <= ell { 1.0 } else { 0.0 }, 0.0];
    }
    [1, 0, -1].map(|ms| clebsch_gordan(j, 1, ms, ell, m_j).unwrap())
}

fn vec3() -> impl Strategy<Value = [f64; 3]> {
    [-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64]
}

fn config() -> impl Strategy<Value = CobosonConfig> {
    (vec3(), vec3(), vec3(), vec3(), vec3()).prop_map(|(a, r, p, sn, se)| {
        CobosonConfig::at(a, r).with_momentum(p).with_spins(sn, se)
    })
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #[test]
    fn coupling_rows_are_orthonormal(ell in 0u32..=10, seed in 0i32..1000) {
        let jmax = ell + 1;
        let m_j = seed % (2 * jmax as i32 + 1) - jmax as i32;
        let rs = rows(ell);
        for &(j1, s1) in &rs {
            if m_j.unsigned_abs() > j1 { continue; }
            for &(j2, s2) in &rs {
                if m_j.unsigned_abs() > j2 || s1 != s2 { continue; }
                let a = row_vector(j1, s1, ell, m_j);
                let b = row_vector(j2, s2, ell, m_j);
                let dot: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
                let expect = if j1 == j2 { 1.0 } else { 0.0 };
                prop_assert!((dot - expect).abs() < 1e-12, "l={} mj={} ({},{}) ({},{}) {}", ell, m_j, j1, s1, j2, s2, dot);
            }
        }
    }

    #[test]
    fn first_order_shift_scales_as_inverse_c_squared(idx in 0usize..30, k in 1.5f64..20.0) {
        let h = SpeciesParams::hydrogen();
        let w = WilsonCoefficients::tree_level(0.0, 0.0, 1);
        let states: Vec<QuantumNumbers> = (1..=3).flat_map(QuantumNumbers::enumerate).collect();
        let beta = states[idx % states.len()];
        let e = energy1(&h, &w, &beta).unwrap();
        let scaled = h.with_speed_of_light(h.c() * k).unwrap();
        let es = energy1(&scaled, &w, &beta).unwrap();
        prop_assert!(rel_close(es * k * k, e, 1e-12));
    }

    #[test]
    fn state_masses_order_with_energy(n1 in 1u32..8, dn in 1u32..5) {
        let h = SpeciesParams::hydrogen();
        let a = QuantumNumbers::new(n1, 0, 0, 0, 0);
        let b = QuantumNumbers::new(n1 + dn, 0, 0, 0, 0);
        let ma = state_mass(&h, &a).unwrap();
        let mb = state_mass(&h, &b).unwrap();
        prop_assert!(ma < mb && mb < h.total_mass());
    }

    #[test]
    fn components_are_rotation_invariant(
        c1 in config(), c2 in config(), axis in vec3(), angle in 0.0..std::f64::consts::TAU
    ) {
        let h = SpeciesParams::hydrogen();
        let w = WilsonCoefficients::hydrogen();
        let mut c1 = c1;
        c1.r_cm[2] += 30.0;
        let rot = Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(Vector3::from(axis) + Vector3::new(0.0, 0.0, 1e-3)), angle);
        let a = potential_components(&h, &w, &c1, &c2).unwrap();
        let b = potential_components(&h, &w, &c1.rotated(&rot), &c2.rotated(&rot)).unwrap();
        for (k, (x, y)) in [(a.c, b.c), (a.ll, b.ll), (a.ls, b.ls), (a.ss, b.ss)].into_iter().enumerate() {
            prop_assert!((x - y).abs() <= 1e-13 * a.magnitudes[k] + 1e-12 * x.abs(), "{} {}", x, y);
        }
    }

    #[test]
    fn components_are_symmetric_under_exchange(c1 in config(), c2 in config()) {
        let he = SpeciesParams::helium_ion();
        let w = WilsonCoefficients::tree_level(1.159_652_181_28e-3, 0.0, 2);
        let mut c1 = c1;
        c1.r_cm[0] += 25.0;
        let a = potential_components(&he, &w, &c1, &c2).unwrap();
        let b = potential_components(&he, &w, &c2, &c1).unwrap();
        for (k, (x, y)) in [(a.c, b.c), (a.ll, b.ll), (a.ls, b.ls), (a.ss, b.ss)].into_iter().enumerate() {
            prop_assert!((x - y).abs() <= 1e-13 * a.magnitudes[k] + 1e-12 * x.abs(), "{} {}", x, y);
        }
    }

    #[test]
    fn doppler_formula_is_exact(v in -0.9f64..0.9) {
        let c = 137.035_999_084;
        let w = doppler_shift(1.0, v * c, c).unwrap();
        let beta = v * c / c;
        prop_assert!((w + 0.5 * beta * beta - 1.0).abs() <= 2.0 * f64::EPSILON);
    }

    #[test]
    fn dispersion_increases_below_turnover(frac in 0.01f64..0.99) {
        let sr = ClockParams::strontium88();
        for excited in [false, true] {
            let d = sr.dispersion(excited, true);
            let p = frac * d.turnover().unwrap();
            prop_assert!(d.group_velocity(p) > 0.0);
        }
    }

    #[test]
    fn packet_width_grows_with_elapsed_time(t1 in 0.0f64..1e6, dt in 1e-3f64..1e6, m in 1.0f64..1e5, s in 0.1f64..10.0) {
        let p = GaussianPacket { mass: m, x0: 0.0, sigma0: s, p0: 1.0, t: 0.0 };
        prop_assert!(p.at(t1 + dt).width() >= p.at(t1).width());
        prop_assert!(p.at(-t1).width() == p.at(t1).width());
    }

    #[test]
    fn far_field_error_shrinks_with_distance(rx in vec3(), ry in vec3(), dir in vec3()) {
        let h = SpeciesParams::hydrogen();
        let d = Vector3::from(dir) + Vector3::new(0.0, 0.0, 0.1);
        let e = d / d.norm();
        let err = |dist: f64| {
            let c1 = CobosonConfig::at([e.x * dist, e.y * dist, e.z * dist], rx);
            let c2 = CobosonConfig::at([0.0; 3], ry);
            let exact = coulomb_sum(&h, &c1, &c2).unwrap();
            (exact - multipole_for_configs(&h, &c1, &c2).unwrap().total()).abs()
        };
        prop_assert!(err(400.0) < err(50.0));
    }
}
