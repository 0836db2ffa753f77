//! Equilibrium thermodynamics of the monatomic ideal gas and the
//! Clausius-Duhem form of the entropy production.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::GasConstants;
use crate::tensor::{deviator, double_dot, Mat3, Vec3};

fn positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive and finite, got {x}")))
    }
}

/// A complete equilibrium state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermoPoint {
    pub rho: f64,
    pub e: f64,
    pub eta: f64,
    pub theta: f64,
    /// Temperature in energy-per-mass units, `R_s theta`.
    pub t_em: f64,
    pub p: f64,
}

impl ThermoPoint {
    pub fn new(rho: f64, e: f64, c: &GasConstants) -> Result<Self> {
        let eta = equilibrium_entropy(rho, e, c)?;
        let theta = temperature(e, c)?;
        Ok(ThermoPoint { rho, e, eta, theta, t_em: c.r_s() * theta, p: pressure(rho, e, c)? })
    }
}

/// Thermodynamic affinities: `Dd`, the full `D`, and `g = -grad(theta)/theta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffinitySet {
    pub dd: Mat3,
    pub d_full: Mat3,
    pub g_theta: Vec3,
}

impl AffinitySet {
    /// Build from the (symmetrized) velocity gradient and the temperature
    /// gradient.
    pub fn new(d_full: Mat3, grad_theta: Vec3, theta: f64) -> Result<Self> {
        positive("temperature", theta)?;
        let d_full = crate::tensor::symmetric_part(&d_full);
        Ok(AffinitySet { dd: deviator(&d_full), d_full, g_theta: -grad_theta / theta })
    }

    pub fn zero() -> Self {
        AffinitySet { dd: Mat3::zeros(), d_full: Mat3::zeros(), g_theta: Vec3::zeros() }
    }

    pub fn grad_theta(&self, theta: f64) -> Vec3 {
        -self.g_theta * theta
    }
}

/// Cauchy stress and heat flux.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluxSet {
    pub stress: Mat3,
    pub heat_flux: Vec3,
}

impl FluxSet {
    pub fn euler(p: f64) -> Self {
        FluxSet { stress: -Mat3::identity() * p, heat_flux: Vec3::zeros() }
    }
}

/// `eta = R_s [3/2 log(2/3 e rho^{-2/3}) + C]`.
pub fn equilibrium_entropy(rho: f64, e: f64, c: &GasConstants) -> Result<f64> {
    positive("density", rho)?;
    positive("internal energy", e)?;
    Ok(c.r_s() * (1.5 * (2.0 / 3.0 * e * rho.powf(-2.0 / 3.0)).ln() + c.entropy_constant()))
}

/// Inverse of [`equilibrium_entropy`] at fixed density:
/// `e = 3/2 rho^{2/3} exp(2/(3 R_s) (eta - R_s C))`.
pub fn internal_energy_from_entropy(rho: f64, eta: f64, c: &GasConstants) -> Result<f64> {
    positive("density", rho)?;
    if !eta.is_finite() {
        return Err(Error::Domain(format!("entropy must be finite, got {eta}")));
    }
    let r = c.r_s();
    Ok(1.5 * rho.powf(2.0 / 3.0) * (2.0 / (3.0 * r) * (eta - r * c.entropy_constant())).exp())
}

/// `theta = 2e / (3 R_s)`.
pub fn temperature(e: f64, c: &GasConstants) -> Result<f64> {
    positive("internal energy", e)?;
    Ok(2.0 * e / (3.0 * c.r_s()))
}

/// `p = 2/3 rho e`.
pub fn pressure(rho: f64, e: f64, c: &GasConstants) -> Result<f64> {
    positive("density", rho)?;
    positive("internal energy", e)?;
    let _ = c;
    Ok(2.0 / 3.0 * rho * e)
}

/// `tr(T)/3`.
pub fn mechanical_pressure(stress: &Mat3) -> f64 {
    stress.trace() / 3.0
}

/// `xi = [(T + pI):D + Q.g] / theta`.
pub fn clausius_duhem_production(flux: &FluxSet, a: &AffinitySet, p: f64, theta: f64) -> Result<f64> {
    positive("temperature", theta)?;
    let s = flux.stress + Mat3::identity() * p;
    Ok((double_dot(&s, &a.d_full) + flux.heat_flux.dot(&a.g_theta)) / theta)
}

/// Navier-Stokes-Fourier fluxes `T = -pI + 2 nu Dd`, `Q = -kappa grad(theta)`.
pub fn nsf_fluxes(a: &AffinitySet, p: f64, nu: f64, kappa: f64, theta: f64) -> FluxSet {
    FluxSet { stress: -Mat3::identity() * p + a.dd * (2.0 * nu), heat_flux: -a.grad_theta(theta) * kappa }
}

/// Counterexample closure `T = -pI - alpha grad(theta) grad(theta)^T`,
/// `Q = -alpha theta D grad(theta)`, whose entropy production vanishes
/// identically.
pub fn counterexample_fluxes(a: &AffinitySet, p: f64, alpha: f64, theta: f64) -> FluxSet {
    let gt = a.grad_theta(theta);
    FluxSet {
        stress: -Mat3::identity() * p - gt * gt.transpose() * alpha,
        heat_flux: -(a.d_full * gt) * (alpha * theta),
    }
}
