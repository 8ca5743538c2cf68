use crate::constants::SpeciesParams;
use crate::error::{CoreError, Result};
use crate::quadrature::{integrate_with_breaks, Integral};

pub(crate) const RADIAL_REL_TOL: f64 = 1e-12;

/// Hydrogenlike radial function R_{nℓ}(r) = p(r)·exp(−r/(n a_Z)), stored as
/// the polynomial coefficients of p so that derivatives are exact.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction {
    n: u32,
    ell: u32,
    a_z: f64,
    /// coeffs[k] multiplies r^k.
    coeffs: Vec<f64>,
    decay: f64,
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    (1..=k).fold(1.0, |acc, i| acc * f64::from(n - k + i) / f64::from(i))
}

impl RadialFunction {
    pub fn new(species: &SpeciesParams, n: u32, ell: u32) -> Result<Self> {
        Self::with_bohr_length(species.bohr_length(), n, ell)
    }

    pub fn with_bohr_length(a_z: f64, n: u32, ell: u32) -> Result<Self> {
        if n < 1 || ell >= n {
            return Err(CoreError::Domain(format!(
                "radial function needs n >= 1 and l < n (got n={n}, l={ell})"
            )));
        }
        let nf = f64::from(n);
        let x = 2.0 / (nf * a_z);
        let k = n - ell - 1;
        let alpha = 2 * ell + 1;
        let norm = (x.powi(3) * factorial(k) / (2.0 * nf * factorial(n + ell))).sqrt();
        let mut coeffs = vec![0.0; n as usize];
        // ρ^ℓ L_k^{(2ℓ+1)}(ρ) with ρ = x r
        for i in 0..=k {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            let c = sign * binomial(k + alpha, k - i) / factorial(i);
            let power = ell + i;
            coeffs[power as usize] = norm * c * x.powi(power as i32);
        }
        Ok(Self {
            n,
            ell,
            a_z,
            coeffs,
            decay: 1.0 / (nf * a_z),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn ell(&self) -> u32 {
        self.ell
    }
    pub fn bohr_length(&self) -> f64 {
        self.a_z
    }

    fn poly(&self, r: f64) -> (f64, f64, f64) {
        // Horner for p, p', p''
        let (mut p, mut dp, mut d2p) = (0.0, 0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            d2p = d2p * r + 2.0 * dp;
            dp = dp * r + p;
            p = p * r + c;
        }
        (p, dp, d2p)
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.poly(r).0 * (-self.decay * r).exp()
    }

    /// (R, R', R'') at r.
    pub fn eval_with_derivatives(&self, r: f64) -> (f64, f64, f64) {
        let (p, dp, d2p) = self.poly(r);
        let e = (-self.decay * r).exp();
        let b = self.decay;
        (p * e, (dp - b * p) * e, (d2p - 2.0 * b * dp + b * b * p) * e)
    }

    /// Radius beyond which the density is negligible: 40 n² a_Z.
    pub fn r_max(&self) -> f64 {
        40.0 * f64::from(self.n * self.n) * self.a_z
    }

    /// Breakpoints clustered towards the origin, used to seed quadrature.
    pub(crate) fn breakpoints(&self) -> Vec<f64> {
        let r_max = self.r_max();
        let mut b = vec![0.0];
        let mut r = 0.01 * self.a_z;
        while r < r_max {
            b.push(r);
            r *= 2.0;
        }
        b.push(r_max);
        b
    }

    /// ∫₀^{r_max} f(r) dr with the default relative tolerance.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> Result<Integral> {
        self.integrate_tol(f, RADIAL_REL_TOL, 1e-300)
    }

    /// Variant with an absolute floor, for integrals that may vanish.
    pub fn integrate_tol<F: Fn(f64) -> f64>(&self, f: F, rel_tol: f64, abs_tol: f64) -> Result<Integral> {
        integrate_with_breaks(f, &self.breakpoints(), rel_tol, abs_tol)
    }

    /// ∫ R² r² dr.
    pub fn norm_squared(&self) -> Result<f64> {
        Ok(self
            .integrate(|r| {
                let v = self.eval(r);
                v * v * r * r
            })?
            .value)
    }

    /// Sign changes of R on (0, r_max), counted on a fine grid.
    pub fn count_nodes(&self) -> usize {
        let steps = 20_000;
        let h = self.r_max() / steps as f64;
        let mut prev = self.eval(0.5 * h);
        let mut nodes = 0;
        for i in 1..steps {
            let v = self.eval((i as f64 + 0.5) * h);
            if v.abs() < 1e-300 {
                continue;
            }
            if v * prev < 0.0 {
                nodes += 1;
            }
            prev = v;
        }
        nodes
    }
}

/// ⟨r^k⟩ by adaptive quadrature.
pub fn radial_expectation_quadrature(radial: &RadialFunction, k: i32) -> Result<f64> {
    check_power(radial.ell, k)?;
    Ok(radial
        .integrate(|r| {
            let v = radial.eval(r);
            if r == 0.0 {
                return if k + 2 == 0 { v * v } else { 0.0 };
            }
            v * v * r.powi(k + 2)
        })?
        .value)
}

fn check_power(ell: u32, k: i32) -> Result<()> {
    if k < -3 {
        return Err(CoreError::Domain(format!("<r^{k}> is not supported (k >= -3)")));
    }
    if k == -3 && ell == 0 {
        return Err(CoreError::Domain("<1/r^3> diverges for l = 0".into()));
    }
    Ok(())
}

/// ⟨r^k⟩_{nℓ}: closed form for k ∈ {−3, −2, −1, 0, 1, 2}, quadrature otherwise.
pub fn radial_expectation(species: &SpeciesParams, n: u32, ell: u32, k: i32) -> Result<f64> {
    let radial = RadialFunction::new(species, n, ell)?;
    check_power(ell, k)?;
    let a = radial.bohr_length();
    let nf = f64::from(n);
    let l = f64::from(ell);
    let value = match k {
        -3 => 1.0 / (nf.powi(3) * l * (l + 0.5) * (l + 1.0) * a.powi(3)),
        -2 => 1.0 / (nf.powi(3) * (l + 0.5) * a * a),
        -1 => 1.0 / (nf * nf * a),
        0 => 1.0,
        1 => a * (3.0 * nf * nf - l * (l + 1.0)) / 2.0,
        2 => a * a * nf * nf * (5.0 * nf * nf + 1.0 - 3.0 * l * (l + 1.0)) / 2.0,
        _ => return radial_expectation_quadrature(&radial, k),
    };
    Ok(value)
}
