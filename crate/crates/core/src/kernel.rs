//! Collision frequency and transport scaling for power-law kernels
//! `B ~ b(beta) |w|^lambda`.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::quadrature::GasConstants;
use crate::rules;

/// Temperatures used by [`fit_temperature_exponent`].
pub const FIT_TEMPERATURES: [f64; 4] = [0.5, 1.0, 2.0, 4.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub lambda: f64,
    pub b_bar: f64,
}

impl KernelSpec {
    pub fn new(lambda: f64, b_bar: f64) -> Result<Self> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument(format!("kernel exponent must be >= 0, got {lambda}")));
        }
        if !(b_bar > 0.0 && b_bar.is_finite()) {
            return Err(Error::InvalidArgument(format!("kernel prefactor must be positive, got {b_bar}")));
        }
        Ok(KernelSpec { lambda, b_bar })
    }
}

/// `E|w|^lambda = (2 R_s theta)^{lambda/2} Gamma((lambda+3)/2) / Gamma(3/2)`
/// over the Maxwellian of temperature `theta`.
pub fn maxwellian_speed_moment(lambda: f64, theta: f64, c: &GasConstants) -> f64 {
    let g = (ln_gamma(0.5 * (lambda + 3.0)) - ln_gamma(1.5)).exp();
    (2.0 * c.r_s() * theta).powf(0.5 * lambda) * g
}

/// Same moment by radial quadrature. With `|w| = sqrt(2 R_s theta) x` the
/// moment is `4/sqrt(pi) int x^{2+lambda} exp(-x^2) dx`; the substitution
/// `x = s^2` keeps the integrand smooth at the origin for non-integer
/// `lambda`, and a composite Gauss-Legendre rule covers `s` up to the
/// truncation radius.
pub fn maxwellian_speed_moment_quadrature(lambda: f64, theta: f64, c: &GasConstants) -> f64 {
    let x_max: f64 = 12.0;
    let s_max = x_max.sqrt();
    let panels = 16;
    let h = s_max / panels as f64;
    let mut acc = 0.0;
    for k in 0..panels {
        let r = rules::gauss_legendre(20, k as f64 * h, (k + 1) as f64 * h);
        for (s, w) in r.nodes.iter().zip(&r.weights) {
            let x = s * s;
            acc += w * 2.0 * s * x.powf(2.0 + lambda) * (-x * x).exp();
        }
    }
    4.0 / std::f64::consts::PI.sqrt() * acc * (2.0 * c.r_s() * theta).powf(0.5 * lambda)
}

/// `1/tau = b_bar (rho/m) E|w|^lambda`, closed form.
pub fn collision_frequency(spec: &KernelSpec, rho: f64, theta: f64, c: &GasConstants) -> Result<f64> {
    check_state(rho, theta)?;
    Ok(spec.b_bar * rho / c.m() * maxwellian_speed_moment(spec.lambda, theta, c))
}

/// `1/tau` with the speed moment computed by quadrature.
pub fn collision_frequency_quadrature(spec: &KernelSpec, rho: f64, theta: f64, c: &GasConstants) -> Result<f64> {
    check_state(rho, theta)?;
    Ok(spec.b_bar * rho / c.m() * maxwellian_speed_moment_quadrature(spec.lambda, theta, c))
}

fn check_state(rho: f64, theta: f64) -> Result<()> {
    if rho > 0.0 && theta > 0.0 && rho.is_finite() && theta.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("collision frequency needs rho, theta > 0, got ({rho}, {theta})")))
    }
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrequencySource {
    ClosedForm,
    Quadrature,
}

/// Slope of `log(1/tau)` against `log theta` over [`FIT_TEMPERATURES`] at
/// unit density; the expected value is `lambda/2`.
pub fn fit_temperature_exponent(spec: &KernelSpec, c: &GasConstants, source: FrequencySource) -> Result<f64> {
    let freq: Vec<f64> = FIT_TEMPERATURES
        .iter()
        .map(|&t| match source {
            FrequencySource::ClosedForm => collision_frequency(spec, 1.0, t, c),
            FrequencySource::Quadrature => collision_frequency_quadrature(spec, 1.0, t, c),
        })
        .collect::<Result<_>>()?;
    Ok(log_log_slope(&FIT_TEMPERATURES, &freq))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransportScaling {
    /// Exponent `1 - 2/lambda` of `rho tau` in `nu ~ R_s (rho tau)^{1 - 2/lambda}`.
    pub exponent: f64,
    /// `true` when `1 <= lambda < 2`: there the exponent is negative, i.e.
    /// the viscosity is inversely related to `rho tau`.
    pub within_validity_range: bool,
}

pub fn transport_scaling_exponent(lambda: f64) -> Result<TransportScaling> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!("transport exponent 1 - 2/lambda needs lambda > 0, got {lambda}")));
    }
    Ok(TransportScaling { exponent: 1.0 - 2.0 / lambda, within_validity_range: (1.0..2.0).contains(&lambda) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit() -> GasConstants {
        GasConstants::default()
    }

    #[test]
    fn reference_frequencies() {
        let c = unit();
        let s0 = KernelSpec::new(0.0, 0.7).unwrap();
        assert_relative_eq!(collision_frequency(&s0, 2.0, 3.0, &c).unwrap(), 1.4, max_relative = 1e-14);
        assert_relative_eq!(collision_frequency(&s0, 2.0, 0.3, &c).unwrap(), 1.4, max_relative = 1e-14);
        let s1 = KernelSpec::new(1.0, 0.7).unwrap();
        let th: f64 = 1.7;
        let mean_speed = (8.0 * th / std::f64::consts::PI).sqrt();
        assert_relative_eq!(collision_frequency(&s1, 2.0, th, &c).unwrap(), 1.4 * mean_speed, max_relative = 1e-13);
        let s2 = KernelSpec::new(2.0, 0.7).unwrap();
        assert_relative_eq!(collision_frequency(&s2, 2.0, th, &c).unwrap(), 3.0 * 1.4 * th, max_relative = 1e-13);
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let c = GasConstants::new(1.5, 2.0).unwrap();
        for lambda in [0.0, 0.5, 1.0, 2.0, 3.0] {
            for theta in FIT_TEMPERATURES {
                let a = maxwellian_speed_moment(lambda, theta, &c);
                let b = maxwellian_speed_moment_quadrature(lambda, theta, &c);
                assert_relative_eq!(a, b, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn density_linearity() {
        let c = unit();
        let s = KernelSpec::new(1.3, 0.4).unwrap();
        let a = collision_frequency(&s, 1.1, 2.0, &c).unwrap();
        assert_eq!(collision_frequency(&s, 2.2, 2.0, &c).unwrap(), 2.0 * a);
    }

    #[test]
    fn fitted_exponents() {
        let c = unit();
        for lambda in [0.0, 1.0, 2.0, 3.0] {
            let s = KernelSpec::new(lambda, 1.0).unwrap();
            let cf = fit_temperature_exponent(&s, &c, FrequencySource::ClosedForm).unwrap();
            let q = fit_temperature_exponent(&s, &c, FrequencySource::Quadrature).unwrap();
            assert!((cf - lambda / 2.0).abs() < 1e-6);
            assert!((q - lambda / 2.0).abs() < 1e-3);
        }
    }

    #[test]
    fn transport_exponents_and_flags() {
        let t = transport_scaling_exponent(2.0).unwrap();
        assert_eq!(t.exponent, 0.0);
        assert!(!t.within_validity_range);
        let t = transport_scaling_exponent(1.0).unwrap();
        assert_eq!(t.exponent, -1.0);
        assert!(t.within_validity_range);
        let t = transport_scaling_exponent(4.0).unwrap();
        assert_eq!(t.exponent, 0.5);
        assert!(!t.within_validity_range);
        assert!(matches!(transport_scaling_exponent(0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn invalid_kernel_rejected() {
        assert!(KernelSpec::new(-1.0, 1.0).is_err());
        assert!(KernelSpec::new(1.0, 0.0).is_err());
    }
}
