//! Velocity-space discretization and the macroscopic moments of a
//! distribution function.
//!
//! A [`VelocityGrid`] is a tensor product of three one-dimensional rules so
//! that `int g(v) dv ~ sum_ijk W_i W_j W_k g(v_ijk)`. Two modes exist:
//! uniform trapezoid nodes on a box (shared by the BGK simulator) and
//! Gauss-Hermite nodes mapped to a Gaussian of given center and scale, which
//! integrates polynomial-times-Maxwellian integrands to machine precision.

use ndarray::{Array3, ArrayView3, Zip};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rules::{self, Rule1d};
use crate::tensor::{Mat3, Vec3};

/// Floor applied inside `f log f` so that empty nodes contribute zero.
pub const ENTROPY_FLOOR: f64 = 1e-300;

/// Default number of nodes per velocity axis.
pub const DEFAULT_NODES_PER_AXIS: usize = 24;

/// Default uniform half-width in units of the thermal standard deviation.
pub const DEFAULT_HALF_WIDTH_SIGMAS: f64 = 8.0;

/// Particle mass and Boltzmann constant, plus the cached specific gas constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GasConstantsRepr", into = "GasConstantsRepr")]
pub struct GasConstants {
    m: f64,
    k_b: f64,
    r_s: f64,
}

#[derive(Serialize, Deserialize)]
struct GasConstantsRepr {
    m: f64,
    k_b: f64,
}

impl TryFrom<GasConstantsRepr> for GasConstants {
    type Error = Error;
    fn try_from(r: GasConstantsRepr) -> Result<Self> {
        GasConstants::new(r.m, r.k_b)
    }
}

impl From<GasConstants> for GasConstantsRepr {
    fn from(c: GasConstants) -> Self {
        GasConstantsRepr { m: c.m, k_b: c.k_b }
    }
}

impl GasConstants {
    pub fn new(m: f64, k_b: f64) -> Result<Self> {
        if !(m > 0.0 && m.is_finite()) {
            return Err(Error::InvalidArgument(format!("particle mass must be positive, got {m}")));
        }
        if !(k_b > 0.0 && k_b.is_finite()) {
            return Err(Error::InvalidArgument(format!("Boltzmann constant must be positive, got {k_b}")));
        }
        Ok(GasConstants { m, k_b, r_s: k_b / m })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn k_b(&self) -> f64 {
        self.k_b
    }

    /// Specific gas constant `k_B / m`.
    pub fn r_s(&self) -> f64 {
        self.r_s
    }

    /// Additive constant of the equilibrium entropy per unit mass (in units of
    /// `R_s`): `3/2 (log 2 pi + 1) + log m`.
    pub fn entropy_constant(&self) -> f64 {
        1.5 * ((2.0 * std::f64::consts::PI).ln() + 1.0) + self.m.ln()
    }
}

impl Default for GasConstants {
    /// Unit mass and unit Boltzmann constant, so `R_s = 1`.
    fn default() -> Self {
        GasConstants { m: 1.0, k_b: 1.0, r_s: 1.0 }
    }
}

/// Local density, bulk velocity and specific internal energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MacroState {
    pub rho: f64,
    pub u: Vec3,
    pub e: f64,
}

impl MacroState {
    pub fn new(rho: f64, u: Vec3, e: f64) -> Result<Self> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::InvalidArgument(format!("density must be positive, got {rho}")));
        }
        if !(e > 0.0 && e.is_finite()) {
            return Err(Error::InvalidArgument(format!("internal energy must be positive, got {e}")));
        }
        if !u.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidArgument("bulk velocity must be finite".into()));
        }
        Ok(MacroState { rho, u, e })
    }

    /// Per-component velocity variance of the matching Maxwellian, `2e/3`.
    pub fn thermal_variance(&self) -> f64 {
        2.0 * self.e / 3.0
    }

    pub fn thermal_sigma(&self) -> f64 {
        self.thermal_variance().sqrt()
    }

    /// Total energy density `rho (e + |u|^2/2)`.
    pub fn total_energy(&self) -> f64 {
        self.rho * (self.e + 0.5 * self.u.norm_squared())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureMode {
    /// Equispaced trapezoid nodes on `[center - hw, center + hw]^3`.
    Uniform,
    /// Gauss-Hermite nodes `center + scale * x_i`.
    Hermite,
}

/// Tensor-product velocity grid. Weights are for the *unweighted* integral
/// `int g(v) dv`.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocityGrid {
    axes: [Rule1d; 3],
    center: Vec3,
    width: f64,
    mode: QuadratureMode,
}

impl VelocityGrid {
    /// Build a grid in either mode. `width` is the half-width of the box in
    /// uniform mode and the Gaussian scale (standard deviation) in Hermite
    /// mode.
    pub fn build(center: Vec3, width: f64, n_per_axis: usize, mode: QuadratureMode) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::InvalidArgument(format!("grid half-width/scale must be positive, got {width}")));
        }
        if n_per_axis < 2 {
            return Err(Error::InvalidArgument(format!("need at least 2 nodes per axis, got {n_per_axis}")));
        }
        if !center.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidArgument("grid center must be finite".into()));
        }
        let axes = [0, 1, 2].map(|d| match mode {
            QuadratureMode::Uniform => rules::trapezoid(center[d] - width, center[d] + width, n_per_axis),
            QuadratureMode::Hermite => {
                let r = rules::gauss_hermite_probabilists(n_per_axis);
                Rule1d {
                    nodes: r.nodes.iter().map(|x| center[d] + width * x).collect(),
                    weights: r.nodes.iter().zip(&r.weights).map(|(x, w)| w * (0.5 * x * x).exp() * width).collect(),
                }
            }
        });
        Ok(VelocityGrid { axes, center, width, mode })
    }

    pub fn uniform(center: Vec3, half_width: f64, n_per_axis: usize) -> Result<Self> {
        Self::build(center, half_width, n_per_axis, QuadratureMode::Uniform)
    }

    pub fn hermite(center: Vec3, scale: f64, n_per_axis: usize) -> Result<Self> {
        Self::build(center, scale, n_per_axis, QuadratureMode::Hermite)
    }

    /// Default verification grid for a macroscopic state: 24 Hermite nodes
    /// per axis centred on `u` with the thermal standard deviation as scale.
    pub fn for_macro(state: &MacroState) -> Result<Self> {
        Self::hermite(state.u, state.thermal_sigma(), DEFAULT_NODES_PER_AXIS)
    }

    /// Default uniform grid for a macroscopic state: 24 nodes per axis over
    /// `u +- 8 sigma`.
    pub fn uniform_for_macro(state: &MacroState) -> Result<Self> {
        Self::uniform(state.u, DEFAULT_HALF_WIDTH_SIGMAS * state.thermal_sigma(), DEFAULT_NODES_PER_AXIS)
    }

    pub fn mode(&self) -> QuadratureMode {
        self.mode
    }

    pub fn center(&self) -> Vec3 {
        self.center
    }

    /// Half-width (uniform) or scale (Hermite).
    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn axis(&self, d: usize) -> &Rule1d {
        &self.axes[d]
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.axes[0].nodes.len(), self.axes[1].nodes.len(), self.axes[2].nodes.len())
    }

    pub fn node_count(&self) -> usize {
        let (a, b, c) = self.shape();
        a * b * c
    }

    pub fn node(&self, i: usize, j: usize, k: usize) -> Vec3 {
        Vec3::new(self.axes[0].nodes[i], self.axes[1].nodes[j], self.axes[2].nodes[k])
    }

    pub fn weight(&self, i: usize, j: usize, k: usize) -> f64 {
        self.axes[0].weights[i] * self.axes[1].weights[j] * self.axes[2].weights[k]
    }

    /// Largest `|v_d|` over all nodes along axis `d`.
    pub fn max_abs_node(&self, d: usize) -> f64 {
        self.axes[d].nodes.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// Evaluate `f` at every node.
    pub fn sample<F: FnMut(&Vec3) -> f64>(&self, mut f: F) -> Array3<f64> {
        Array3::from_shape_fn(self.shape(), |(i, j, k)| f(&self.node(i, j, k)))
    }

    /// Array of full tensor weights.
    pub fn weights(&self) -> Array3<f64> {
        Array3::from_shape_fn(self.shape(), |(i, j, k)| self.weight(i, j, k))
    }

    /// `sum W g(v) f(v)` over the grid.
    pub fn integrate<F: FnMut(&Vec3, f64) -> f64>(&self, values: ArrayView3<f64>, mut g: F) -> f64 {
        let mut acc = 0.0;
        for ((i, j, k), &fv) in values.indexed_iter() {
            acc += self.weight(i, j, k) * g(&self.node(i, j, k), fv);
        }
        acc
    }

    pub(crate) fn check_shape(&self, values: &ArrayView3<f64>) -> Result<()> {
        if values.dim() != self.shape() {
            return Err(Error::GridMismatch(format!(
                "values have shape {:?}, grid has {:?}",
                values.dim(),
                self.shape()
            )));
        }
        Ok(())
    }

    /// `(int m f, int m v f, int m/2 |v|^2 f)`.
    pub fn conserved_moments(&self, values: ArrayView3<f64>, c: &GasConstants) -> Result<ConservedMoments> {
        self.check_shape(&values)?;
        let m = c.m();
        let mut rho = 0.0;
        let mut abs_mass = 0.0;
        let mut mom = Vec3::zeros();
        let mut energy = 0.0;
        for ((i, j, k), &f) in values.indexed_iter() {
            let w = self.weight(i, j, k) * f * m;
            let v = self.node(i, j, k);
            rho += w;
            abs_mass += w.abs();
            mom += v * w;
            energy += 0.5 * v.norm_squared() * w;
        }
        if !(rho > 1e-12 * abs_mass) || rho <= f64::MIN_POSITIVE || !rho.is_finite() {
            return Err(Error::DegenerateDistribution { rho });
        }
        Ok(ConservedMoments { rho, momentum: mom, energy })
    }

    /// `T = -int m (v-u)(v-u)^T f dv`, symmetric by construction.
    pub fn stress_tensor(&self, values: ArrayView3<f64>, u: &Vec3, c: &GasConstants) -> Result<Mat3> {
        self.check_shape(&values)?;
        let mut t = [0.0; 6];
        for ((i, j, k), &f) in values.indexed_iter() {
            let w = self.node(i, j, k) - u;
            let a = self.weight(i, j, k) * f;
            t[0] += a * w.x * w.x;
            t[1] += a * w.y * w.y;
            t[2] += a * w.z * w.z;
            t[3] += a * w.x * w.y;
            t[4] += a * w.x * w.z;
            t[5] += a * w.y * w.z;
        }
        let m = -c.m();
        Ok(crate::tensor::symmetric_from_components(t.map(|x| m * x)))
    }

    /// `Q = int m/2 |w|^2 w f dv` with `w = v - u`.
    pub fn heat_flux(&self, values: ArrayView3<f64>, u: &Vec3, c: &GasConstants) -> Result<Vec3> {
        self.check_shape(&values)?;
        let mut q = Vec3::zeros();
        for ((i, j, k), &f) in values.indexed_iter() {
            let w = self.node(i, j, k) - u;
            q += w * (self.weight(i, j, k) * f * w.norm_squared());
        }
        Ok(q * (0.5 * c.m()))
    }

    fn check_nonnegative(&self, values: &ArrayView3<f64>) -> Result<()> {
        for ((i, j, k), &f) in values.indexed_iter() {
            if f < 0.0 || f.is_nan() {
                return Err(Error::InvalidDistribution { node: [i, j, k], value: f });
            }
        }
        Ok(())
    }

    /// Entropy density `rho eta = -k_B int f log f dv`.
    pub fn entropy_density(&self, values: ArrayView3<f64>, c: &GasConstants) -> Result<f64> {
        self.check_shape(&values)?;
        self.check_nonnegative(&values)?;
        let s = self.integrate(values, |_, f| f * f.max(ENTROPY_FLOOR).ln());
        Ok(-c.k_b() * s)
    }

    /// Entropy flux `Phi = -k_B int w f log f dv`.
    pub fn entropy_flux(&self, values: ArrayView3<f64>, u: &Vec3, c: &GasConstants) -> Result<Vec3> {
        self.check_shape(&values)?;
        self.check_nonnegative(&values)?;
        let mut phi = Vec3::zeros();
        for ((i, j, k), &f) in values.indexed_iter() {
            let w = self.node(i, j, k) - u;
            phi += w * (self.weight(i, j, k) * f * f.max(ENTROPY_FLOOR).ln());
        }
        Ok(phi * -c.k_b())
    }
}

/// Mass, momentum and total energy densities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConservedMoments {
    pub rho: f64,
    pub momentum: Vec3,
    pub energy: f64,
}

impl ConservedMoments {
    pub fn velocity(&self) -> Vec3 {
        self.momentum / self.rho
    }

    /// `E/rho - |u|^2/2`.
    pub fn internal_energy(&self) -> f64 {
        self.energy / self.rho - 0.5 * self.velocity().norm_squared()
    }

    pub fn to_macro(&self) -> Result<MacroState> {
        MacroState::new(self.rho, self.velocity(), self.internal_energy())
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.rho, self.momentum.x, self.momentum.y, self.momentum.z, self.energy]
    }
}

/// A distribution function sampled on the nodes of a grid.
#[derive(Debug, Clone)]
pub struct DistributionGrid<'g> {
    values: Array3<f64>,
    grid: &'g VelocityGrid,
}

impl<'g> DistributionGrid<'g> {
    pub fn new(grid: &'g VelocityGrid, values: Array3<f64>) -> Result<Self> {
        grid.check_shape(&values.view())?;
        Ok(DistributionGrid { values, grid })
    }

    pub fn from_fn<F: FnMut(&Vec3) -> f64>(grid: &'g VelocityGrid, f: F) -> Self {
        DistributionGrid { values: grid.sample(f), grid }
    }

    pub fn zeros(grid: &'g VelocityGrid) -> Self {
        DistributionGrid { values: Array3::zeros(grid.shape()), grid }
    }

    pub fn values(&self) -> ArrayView3<'_, f64> {
        self.values.view()
    }

    pub fn grid(&self) -> &'g VelocityGrid {
        self.grid
    }

    /// `a * self + b * other` on the same grid.
    pub fn axpby(&self, a: f64, other: &DistributionGrid<'_>, b: f64) -> Result<DistributionGrid<'g>> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch("distributions live on different grids".into()));
        }
        let mut out = Array3::zeros(self.values.dim());
        Zip::from(&mut out).and(&self.values).and(&other.values).for_each(|o, &x, &y| *o = a * x + b * y);
        Ok(DistributionGrid { values: out, grid: self.grid })
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().fold(f64::INFINITY, |m, &x| m.min(x))
    }
}

pub fn conserved_moments(f: &DistributionGrid<'_>, c: &GasConstants) -> Result<ConservedMoments> {
    f.grid.conserved_moments(f.values(), c)
}

pub fn stress_tensor(f: &DistributionGrid<'_>, u: &Vec3, c: &GasConstants) -> Result<Mat3> {
    f.grid.stress_tensor(f.values(), u, c)
}

pub fn heat_flux(f: &DistributionGrid<'_>, u: &Vec3, c: &GasConstants) -> Result<Vec3> {
    f.grid.heat_flux(f.values(), u, c)
}

pub fn entropy_density(f: &DistributionGrid<'_>, c: &GasConstants) -> Result<f64> {
    f.grid.entropy_density(f.values(), c)
}

pub fn entropy_flux(f: &DistributionGrid<'_>, u: &Vec3, c: &GasConstants) -> Result<Vec3> {
    f.grid.entropy_flux(f.values(), u, c)
}

/// Local Maxwellian `(rho/m) (4 pi e/3)^{-3/2} exp(-|v-u|^2 / (4e/3))`.
pub fn maxwellian(state: &MacroState, c: &GasConstants, v: &Vec3) -> f64 {
    let two_var = 4.0 * state.e / 3.0;
    let norm = state.rho / c.m() * (std::f64::consts::PI * two_var).powf(-1.5);
    norm * (-(v - state.u).norm_squared() / two_var).exp()
}

pub fn sample_maxwellian<'g>(grid: &'g VelocityGrid, state: &MacroState, c: &GasConstants) -> DistributionGrid<'g> {
    DistributionGrid::from_fn(grid, |v| maxwellian(state, c, v))
}
