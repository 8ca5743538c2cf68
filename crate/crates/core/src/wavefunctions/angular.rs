use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use crate::quadrature::gauss_legendre;

/// Y_ℓm(θ, φ) with the Condon–Shortley phase.
pub fn spherical_harmonic(ell: u32, m: i32, theta: f64, phi: f64) -> Complex64 {
    let am = m.unsigned_abs();
    if am > ell {
        return Complex64::new(0.0, 0.0);
    }
    let x = theta.cos();
    let p = assoc_legendre(ell, am, x);
    let mut norm = f64::from(2 * ell + 1) / (4.0 * std::f64::consts::PI);
    for k in (ell - am + 1)..=(ell + am) {
        norm /= f64::from(k);
    }
    let y = Complex64::from_polar(norm.sqrt() * p, f64::from(am) * phi);
    if m < 0 {
        let sign = if am.is_multiple_of(2) { 1.0 } else { -1.0 };
        y.conj() * sign
    } else {
        y
    }
}

/// P_ℓ^m(x) including the (−1)^m Condon–Shortley factor, m ≥ 0.
fn assoc_legendre(ell: u32, m: u32, x: f64) -> f64 {
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= -f64::from(2 * k - 1) * s;
    }
    if ell == m {
        return pmm;
    }
    let mut pm1 = x * f64::from(2 * m + 1) * pmm;
    if ell == m + 1 {
        return pm1;
    }
    let mut pm0 = pmm;
    for l in (m + 2)..=ell {
        let pl = (x * f64::from(2 * l - 1) * pm1 - f64::from(l + m - 1) * pm0) / f64::from(l - m);
        pm0 = pm1;
        pm1 = pl;
    }
    pm1
}

/// Product quadrature on the unit sphere: Gauss–Legendre in cos θ and a
/// uniform rule in φ. Exact for spherical-harmonic products up to the
/// degree given at construction.
#[derive(Debug, Clone)]
pub struct AngularGrid {
    pub points: Vec<(f64, f64, f64)>,
}

impl AngularGrid {
    pub fn for_degree(degree: u32) -> Self {
        let n_theta = (degree / 2 + 2) as usize;
        let n_phi = (degree + 3) as usize;
        let (x, w) = gauss_legendre(n_theta);
        let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
        let mut points = Vec::with_capacity(n_theta * n_phi);
        for (xi, wi) in x.iter().zip(&w) {
            let theta = xi.acos();
            for k in 0..n_phi {
                points.push((theta, k as f64 * dphi, wi * dphi));
            }
        }
        Self { points }
    }
}

pub fn unit_vector(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

/// (ℓ_x, ℓ_y, ℓ_z) in the |ℓ m⟩ basis ordered m = −ℓ..ℓ.
pub fn orbital_matrices(ell: u32) -> [DMatrix<Complex64>; 3] {
    let dim = (2 * ell + 1) as usize;
    let l = f64::from(ell);
    let mut lp = DMatrix::<Complex64>::zeros(dim, dim);
    let mut lz = DMatrix::<Complex64>::zeros(dim, dim);
    for i in 0..dim {
        let m = i as f64 - l;
        lz[(i, i)] = Complex64::new(m, 0.0);
        if i + 1 < dim {
            // ℓ₊|m⟩ = √(ℓ(ℓ+1) − m(m+1)) |m+1⟩
            lp[(i + 1, i)] = Complex64::new((l * (l + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
        }
    }
    let lm = lp.adjoint();
    let half = Complex64::new(0.5, 0.0);
    let half_i = Complex64::new(0.0, -0.5);
    let lx = (&lp + &lm) * half;
    let ly = (&lp - &lm) * half_i;
    [lx, ly, lz]
}

/// Spin-½ operators σ/2 in the basis (↑, ↓).
pub fn spin_half() -> [Matrix2<Complex64>; 3] {
    let z = Complex64::new(0.0, 0.0);
    let h = Complex64::new(0.5, 0.0);
    let ih = Complex64::new(0.0, 0.5);
    [
        Matrix2::new(z, h, h, z),
        Matrix2::new(z, -ih, ih, z),
        Matrix2::new(h, z, z, -h),
    ]
}

/// Matrices of the products r̂_a r̂_b in the |ℓ m⟩ basis, from grid quadrature.
pub fn direction_product_matrices(ell: u32) -> [[DMatrix<Complex64>; 3]; 3] {
    let dim = (2 * ell + 1) as usize;
    let grid = AngularGrid::for_degree(2 * ell + 2);
    let mut out: [[DMatrix<Complex64>; 3]; 3] =
        std::array::from_fn(|_| std::array::from_fn(|_| DMatrix::zeros(dim, dim)));
    let l = ell as i32;
    for &(theta, phi, w) in &grid.points {
        let e = unit_vector(theta, phi);
        let ys: Vec<Complex64> = (-l..=l).map(|m| spherical_harmonic(ell, m, theta, phi)).collect();
        for a in 0..3 {
            for b in 0..3 {
                let f = w * e[a] * e[b];
                for i in 0..dim {
                    for k in 0..dim {
                        out[a][b][(i, k)] += ys[i].conj() * ys[k] * f;
                    }
                }
            }
        }
    }
    out
}
