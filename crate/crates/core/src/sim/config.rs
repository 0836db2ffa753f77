//! Simulation configuration, read from TOML.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{GasConstants, VelocityGrid};
use crate::tensor::Vec3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VelocityGridSpec {
    pub n_per_axis: usize,
    /// Half-width of the velocity box in absolute units.
    pub half_width: f64,
    #[serde(default)]
    pub center: [f64; 3],
}

impl VelocityGridSpec {
    pub fn build(&self) -> Result<VelocityGrid> {
        VelocityGrid::uniform(Vec3::from(self.center), self.half_width, self.n_per_axis)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TauModel {
    /// Constant relaxation time. `tau = 0` relaxes to equilibrium
    /// instantaneously after every advection step.
    Constant { tau: f64 },
    /// `1/tau = C_B rho sqrt(R_s theta)` evaluated per cell.
    HardSphere { c_b: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    #[default]
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialCondition {
    /// Global equilibrium.
    Uniform {
        rho: f64,
        theta: f64,
        #[serde(default)]
        u: [f64; 3],
    },
    /// `u_y(x) = amplitude sin(2 pi x / L)` at uniform density and temperature.
    ShearWave { rho: f64, theta: f64, amplitude: f64 },
    /// `rho(x) = rho (1 + modulation sin(2 pi x / L))`, each cell an equal
    /// mixture of two Maxwellians drifting at `+-drift` along x.
    Bimodal { rho: f64, theta: f64, modulation: f64, drift: f64 },
}

fn default_output_every() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub n_cells: usize,
    pub domain_length: f64,
    pub v_grid: VelocityGridSpec,
    pub tau_model: TauModel,
    pub cfl: f64,
    /// Final time; exactly one of `t_end` and `n_steps` must be given.
    #[serde(default)]
    pub t_end: Option<f64>,
    #[serde(default)]
    pub n_steps: Option<usize>,
    /// Explicit time step; must satisfy the stability limits.
    #[serde(default)]
    pub dt: Option<f64>,
    #[serde(default)]
    pub boundary: Boundary,
    pub initial: InitialCondition,
    #[serde(default = "default_output_every")]
    pub output_every: usize,
    #[serde(default)]
    pub gas: GasConstants,
}

impl SimConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: SimConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.n_cells < 4 {
            return bad(format!("n_cells must be at least 4, got {}", self.n_cells));
        }
        if !(self.domain_length > 0.0 && self.domain_length.is_finite()) {
            return bad(format!("domain_length must be positive, got {}", self.domain_length));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return bad(format!("cfl must lie in (0, 1], got {}", self.cfl));
        }
        if self.v_grid.n_per_axis < 2 || !(self.v_grid.half_width > 0.0) {
            return bad("v_grid needs n_per_axis >= 2 and half_width > 0".into());
        }
        match (self.t_end, self.n_steps) {
            (Some(t), None) if t >= 0.0 && t.is_finite() => {}
            (None, Some(_)) => {}
            _ => return bad("give exactly one of t_end (>= 0) and n_steps".into()),
        }
        if let Some(dt) = self.dt {
            if !(dt > 0.0 && dt.is_finite()) {
                return bad(format!("dt must be positive, got {dt}"));
            }
        }
        if self.output_every == 0 {
            return bad("output_every must be at least 1".into());
        }
        match self.tau_model {
            TauModel::Constant { tau } if !(tau >= 0.0 && tau.is_finite()) => {
                return bad(format!("constant tau must be >= 0, got {tau}"))
            }
            TauModel::HardSphere { c_b } if !(c_b > 0.0 && c_b.is_finite()) => {
                return bad(format!("c_b must be positive, got {c_b}"))
            }
            _ => {}
        }
        let ok = match self.initial {
            InitialCondition::Uniform { rho, theta, .. } => rho > 0.0 && theta > 0.0,
            InitialCondition::ShearWave { rho, theta, .. } => rho > 0.0 && theta > 0.0,
            InitialCondition::Bimodal { rho, theta, modulation, .. } => {
                rho > 0.0 && theta > 0.0 && modulation.abs() < 1.0
            }
        };
        if !ok {
            return bad("initial condition needs rho > 0, theta > 0 and |modulation| < 1".into());
        }
        Ok(())
    }

    /// Copy of this configuration with a constant relaxation time.
    pub fn with_constant_tau(&self, tau: f64) -> Self {
        SimConfig { tau_model: TauModel::Constant { tau }, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
n_cells = 32
domain_length = 1.0
cfl = 0.5
t_end = 0.1

[v_grid]
n_per_axis = 8
half_width = 5.0

[tau_model]
kind = "constant"
tau = 0.01

[initial]
preset = "shear_wave"
rho = 1.0
theta = 1.0
amplitude = 0.01
"#;

    #[test]
    fn parses_sample() {
        let c = SimConfig::from_toml(SAMPLE).unwrap();
        assert_eq!(c.n_cells, 32);
        assert_eq!(c.tau_model, TauModel::Constant { tau: 0.01 });
        assert_eq!(c.gas, GasConstants::default());
        assert_eq!(c.output_every, 1);
        let again = SimConfig::from_toml(&c.to_toml().unwrap()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn unknown_key_reports_line() {
        let text = SAMPLE.replace("cfl = 0.5", "cfl = 0.5\nbogus = 3");
        match SimConfig::from_toml(&text) {
            Err(Error::Config(m)) => assert!(m.contains("line 5"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invalid_values_rejected() {
        for (from, to) in [
            ("n_cells = 32", "n_cells = 2"),
            ("cfl = 0.5", "cfl = 1.5"),
            ("t_end = 0.1", "n_steps = 3\nt_end = 0.1"),
            ("tau = 0.01", "tau = -1.0"),
        ] {
            let text = SAMPLE.replace(from, to);
            assert!(matches!(SimConfig::from_toml(&text), Err(Error::Config(_))), "{to}");
        }
    }
}
