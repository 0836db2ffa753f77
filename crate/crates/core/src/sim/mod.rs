//! One-dimensional (three velocity dimensions) discrete-velocity BGK solver
//! on a periodic domain.
//!
//! Each step is a first-order upwind advection along `x` followed by an
//! implicit relaxation `f <- (f + (dt/tau) f_eq) / (1 + dt/tau)` towards the
//! discrete equilibrium of every cell. With `cfl <= 1` both parts are convex
//! combinations, so positivity holds and the discrete entropy cannot drop.

pub mod config;
pub mod equilibrium;

pub use config::{Boundary, InitialCondition, SimConfig, TauModel, VelocityGridSpec};
pub use equilibrium::{discrete_equilibrium, discrete_equilibrium_from, DiscreteEquilibrium, Multipliers};

use nalgebra::Vector5;
use ndarray::{Array2, ArrayView1};
use serde::{Deserialize, Serialize};

use crate::closure::bgk_relaxation_time_model;
use crate::error::{Error, Result};
use crate::quadrature::{self, ConservedMoments, GasConstants, MacroState, VelocityGrid, ENTROPY_FLOOR};
use crate::tensor::Vec3;

/// Diagnostics at one output time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub step: usize,
    pub t: f64,
    pub mass: f64,
    pub momentum: [f64; 3],
    pub energy: f64,
    /// `H = sum_cells dx sum W (-k_B f ln f)`.
    pub entropy: f64,
    /// Smallest per-cell BGK entropy production of the step.
    pub min_xi: f64,
    /// Amplitude of the first Fourier mode of `u_y`.
    pub amp_shear: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub dt: f64,
    pub n_steps: usize,
    pub final_time: f64,
    /// Minimum over steps of `(H_new - H_old) / |H_old|`.
    pub min_relative_entropy_change: f64,
    pub max_mass_drift: f64,
    pub max_momentum_drift: f64,
    pub max_energy_drift: f64,
    /// Minimum over steps and cells of the BGK entropy production.
    pub min_xi: f64,
}

impl RunSummary {
    pub fn max_conservation_drift(&self) -> f64 {
        self.max_mass_drift.max(self.max_momentum_drift).max(self.max_energy_drift)
    }
}

#[derive(Debug, Clone)]
pub struct SimResult {
    pub records: Vec<Record>,
    pub summary: RunSummary,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Totals {
    mass: f64,
    momentum: Vec3,
    energy: f64,
    entropy: f64,
}

pub struct Simulation {
    cfg: SimConfig,
    c: GasConstants,
    grid: VelocityGrid,
    /// `(n_cells, n_vel)`, velocity index `(i * ny + j) * nz + k`.
    f: Array2<f64>,
    scratch: Array2<f64>,
    nodes: Vec<Vec3>,
    weights: Vec<f64>,
    courant: Vec<f64>,
    feq: Vec<f64>,
    multipliers: Vec<Option<Multipliers>>,
    dx: f64,
    dt: f64,
    n_steps: usize,
    step: usize,
    totals0: Totals,
    last: Totals,
    last_min_xi: f64,
    summary: RunSummary,
}

fn cell_centers(n: usize, length: f64) -> impl Iterator<Item = f64> {
    let dx = length / n as f64;
    (0..n).map(move |c| (c as f64 + 0.5) * dx)
}

fn target_moments(rho: f64, u: Vec3, theta: f64, c: &GasConstants) -> ConservedMoments {
    let e = 1.5 * c.r_s() * theta;
    ConservedMoments { rho, momentum: u * rho, energy: rho * (e + 0.5 * u.norm_squared()) }
}

impl Simulation {
    pub fn new(cfg: SimConfig) -> Result<Self> {
        cfg.validate()?;
        let c = cfg.gas;
        let grid = cfg.v_grid.build()?;
        let (nx, ny, nz) = grid.shape();
        let n_vel = nx * ny * nz;
        let mut nodes = Vec::with_capacity(n_vel);
        let mut weights = Vec::with_capacity(n_vel);
        for i in 0..nx {
            for j in 0..ny {
                for k in 0..nz {
                    nodes.push(grid.node(i, j, k));
                    weights.push(grid.weight(i, j, k));
                }
            }
        }
        let n_cells = cfg.n_cells;
        let dx = cfg.domain_length / n_cells as f64;
        let k_wave = 2.0 * std::f64::consts::PI / cfg.domain_length;

        let mut f = Array2::zeros((n_cells, n_vel));
        let mut multipliers = vec![None; n_cells];
        let mut buf = vec![0.0; n_vel];
        for (cell, x) in cell_centers(n_cells, cfg.domain_length).enumerate() {
            let mut row = f.row_mut(cell);
            match cfg.initial {
                InitialCondition::Uniform { rho, theta, u } => {
                    let t = target_moments(rho, Vec3::from(u), theta, &c);
                    let eq = discrete_equilibrium(&t, &grid, &c)?;
                    eq.fill(&mut buf);
                    multipliers[cell] = Some(eq.multipliers);
                    row.assign(&ArrayView1::from(&buf));
                }
                InitialCondition::ShearWave { rho, theta, amplitude } => {
                    let u = Vec3::new(0.0, amplitude * (k_wave * x).sin(), 0.0);
                    let t = target_moments(rho, u, theta, &c);
                    let eq = discrete_equilibrium(&t, &grid, &c)?;
                    eq.fill(&mut buf);
                    multipliers[cell] = Some(eq.multipliers);
                    row.assign(&ArrayView1::from(&buf));
                }
                InitialCondition::Bimodal { rho, theta, modulation, drift } => {
                    let rc = rho * (1.0 + modulation * (k_wave * x).sin());
                    let e = 1.5 * c.r_s() * theta;
                    let a = MacroState::new(rc, Vec3::new(drift, 0.0, 0.0), e)?;
                    let b = MacroState::new(rc, Vec3::new(-drift, 0.0, 0.0), e)?;
                    for (slot, v) in row.iter_mut().zip(&nodes) {
                        *slot = 0.5 * (quadrature::maxwellian(&a, &c, v) + quadrature::maxwellian(&b, &c, v));
                    }
                }
            }
        }

        let vmax = grid.max_abs_node(0);
        let tau_min = match cfg.tau_model {
            TauModel::Constant { tau } => tau,
            TauModel::HardSphere { c_b } => {
                let mut m = f64::INFINITY;
                for cell in 0..n_cells {
                    let mo = Self::row_moments(f.row(cell), &nodes, &weights, &c);
                    let theta = 2.0 * mo.internal_energy() / (3.0 * c.r_s());
                    m = m.min(bgk_relaxation_time_model(mo.rho, theta, &c, c_b)?);
                }
                m
            }
        };
        let mut limit = if vmax > 0.0 { dx / vmax } else { f64::INFINITY };
        if tau_min > 0.0 {
            limit = limit.min(tau_min);
        }
        let dt0 = match cfg.dt {
            Some(dt) if dt > cfg.cfl * limit * (1.0 + 1e-12) => {
                return Err(Error::Config(format!(
                    "dt = {dt} exceeds cfl * min(dx/max|v_x|, tau) = {}",
                    cfg.cfl * limit
                )))
            }
            Some(dt) => dt,
            None => cfg.cfl * limit,
        };
        if !dt0.is_finite() {
            return Err(Error::Config("cannot derive a finite time step".into()));
        }
        let (dt, n_steps) = match (cfg.t_end, cfg.n_steps) {
            (Some(0.0), _) => (dt0, 0),
            (Some(t_end), _) => {
                let n = (t_end / dt0 * (1.0 - 1e-12)).ceil().max(1.0) as usize;
                (t_end / n as f64, n)
            }
            (None, Some(n)) => (dt0, n),
            (None, None) => unreachable!("validated"),
        };
        let courant = nodes.iter().map(|v| v.x * dt / dx).collect();

        let summary = RunSummary {
            dt,
            n_steps,
            final_time: 0.0,
            min_relative_entropy_change: f64::INFINITY,
            max_mass_drift: 0.0,
            max_momentum_drift: 0.0,
            max_energy_drift: 0.0,
            min_xi: f64::INFINITY,
        };
        let zero = Totals { mass: 0.0, momentum: Vec3::zeros(), energy: 0.0, entropy: 0.0 };
        let mut sim = Simulation {
            scratch: f.clone(),
            f,
            c,
            grid,
            nodes,
            weights,
            courant,
            feq: buf,
            multipliers,
            dx,
            dt,
            n_steps,
            step: 0,
            totals0: zero,
            last: zero,
            last_min_xi: 0.0,
            summary,
            cfg,
        };
        let (totals, min_xi) = sim.collide(false)?;
        sim.totals0 = totals;
        sim.last = totals;
        sim.last_min_xi = min_xi;
        Ok(sim)
    }

    fn row_moments(row: ArrayView1<f64>, nodes: &[Vec3], weights: &[f64], c: &GasConstants) -> ConservedMoments {
        let m = c.m();
        let mut rho = 0.0;
        let mut mom = Vec3::zeros();
        let mut en = 0.0;
        for ((f, v), w) in row.iter().zip(nodes).zip(weights) {
            let q = w * m * f;
            rho += q;
            mom += v * q;
            en += 0.5 * v.norm_squared() * q;
        }
        ConservedMoments { rho, momentum: mom, energy: en }
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    pub fn grid(&self) -> &VelocityGrid {
        &self.grid
    }

    pub fn distribution(&self) -> &Array2<f64> {
        &self.f
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn steps_taken(&self) -> usize {
        self.step
    }

    pub fn time(&self) -> f64 {
        self.step as f64 * self.dt
    }

    pub fn cell_moments(&self, cell: usize) -> ConservedMoments {
        Self::row_moments(self.f.row(cell), &self.nodes, &self.weights, &self.c)
    }

    fn tau_for(&self, mo: &ConservedMoments) -> Result<f64> {
        match self.cfg.tau_model {
            TauModel::Constant { tau } => Ok(tau),
            TauModel::HardSphere { c_b } => {
                let theta = 2.0 * mo.internal_energy() / (3.0 * self.c.r_s());
                bgk_relaxation_time_model(mo.rho, theta, &self.c, c_b)
            }
        }
    }

    fn advect(&mut self) {
        let n = self.cfg.n_cells;
        for cell in 0..n {
            let left = self.f.row((cell + n - 1) % n);
            let mid = self.f.row(cell);
            let right = self.f.row((cell + 1) % n);
            let mut out = self.scratch.row_mut(cell);
            for (idx, o) in out.iter_mut().enumerate() {
                let lam = self.courant[idx];
                let fm = mid[idx];
                *o = if lam > 0.0 { fm - lam * (fm - left[idx]) } else { fm - lam * (right[idx] - fm) };
            }
        }
        std::mem::swap(&mut self.f, &mut self.scratch);
    }

    /// Compute every cell's equilibrium and entropy production and, when
    /// `apply` is set, relax towards it. Returns the totals of the resulting
    /// state and the smallest entropy production.
    fn collide(&mut self, apply: bool) -> Result<(Totals, f64)> {
        let m = self.c.m();
        let kb = self.c.k_b();
        let mut totals = Totals { mass: 0.0, momentum: Vec3::zeros(), energy: 0.0, entropy: 0.0 };
        let mut min_xi = f64::INFINITY;
        for cell in 0..self.cfg.n_cells {
            let target = Self::row_moments(self.f.row(cell), &self.nodes, &self.weights, &self.c);
            let tau = self.tau_for(&target)?;
            let eq = discrete_equilibrium_from(&target, &self.grid, &self.c, self.multipliers[cell].as_ref())?;
            self.multipliers[cell] = Some(eq.multipliers);
            eq.fill(&mut self.feq);
            // remove the last rounding-level moment mismatch with a linear
            // correction `f_eq (1 + d.psi)`
            let direct = Self::row_moments(ArrayView1::from(&self.feq), &self.nodes, &self.weights, &self.c);
            let g = Vector5::new(
                target.rho - direct.rho,
                target.momentum.x - direct.momentum.x,
                target.momentum.y - direct.momentum.y,
                target.momentum.z - direct.momentum.z,
                target.energy - direct.energy,
            );
            if let Some(d) = eq.moment_hessian().cholesky().map(|ch| ch.solve(&g)) {
                for (fe, v) in self.feq.iter_mut().zip(&self.nodes) {
                    *fe *= 1.0 + d[0] + d[1] * v.x + d[2] * v.y + d[3] * v.z + d[4] * 0.5 * v.norm_squared();
                }
            }
            let tau_eff = if tau > 0.0 { tau } else { self.dt };
            let a = self.dt / tau_eff;
            let mut row = self.f.row_mut(cell);
            let mut xi = 0.0;
            let mut h = 0.0;
            for (idx, fv) in row.iter_mut().enumerate() {
                let w = self.weights[idx];
                let fe = self.feq[idx];
                let f0 = *fv;
                if !(f0 >= 0.0) {
                    return Err(Error::Domain(format!("negative distribution {f0} in cell {cell}")));
                }
                xi += w * (f0 - fe) * (f0.max(ENTROPY_FLOOR).ln() - fe.max(ENTROPY_FLOOR).ln());
                let fnew = if !apply {
                    f0
                } else if tau > 0.0 {
                    (f0 + a * fe) / (1.0 + a)
                } else {
                    fe
                };
                *fv = fnew;
                let v = &self.nodes[idx];
                let q = w * m * fnew;
                totals.mass += q;
                totals.momentum += v * q;
                totals.energy += 0.5 * v.norm_squared() * q;
                h -= w * fnew * fnew.max(ENTROPY_FLOOR).ln();
            }
            totals.entropy += kb * h;
            min_xi = min_xi.min(kb * xi / tau_eff);
        }
        totals.mass *= self.dx;
        totals.momentum *= self.dx;
        totals.energy *= self.dx;
        totals.entropy *= self.dx;
        Ok((totals, min_xi))
    }

    /// Advance one step.
    pub fn step(&mut self) -> Result<()> {
        self.advect();
        let (totals, min_xi) = self.collide(true)?;
        self.step += 1;
        let s = &mut self.summary;
        let dh = (totals.entropy - self.last.entropy) / self.last.entropy.abs().max(f64::MIN_POSITIVE);
        s.min_relative_entropy_change = s.min_relative_entropy_change.min(dh);
        let t0 = &self.totals0;
        let p_scale = (t0.mass * 2.0 * t0.energy).sqrt();
        s.max_mass_drift = s.max_mass_drift.max((totals.mass - t0.mass).abs() / t0.mass);
        s.max_momentum_drift = s.max_momentum_drift.max((totals.momentum - t0.momentum).amax() / p_scale);
        s.max_energy_drift = s.max_energy_drift.max((totals.energy - t0.energy).abs() / t0.energy);
        s.min_xi = s.min_xi.min(min_xi);
        s.final_time = self.step as f64 * self.dt;
        self.last = totals;
        self.last_min_xi = min_xi;
        Ok(())
    }

    /// Amplitude `2/N |sum_c u_y e^{-i k x_c}|` of the fundamental shear mode.
    pub fn shear_amplitude(&self) -> f64 {
        let n = self.cfg.n_cells;
        let k = 2.0 * std::f64::consts::PI / self.cfg.domain_length;
        let (mut re, mut im) = (0.0, 0.0);
        for (cell, x) in cell_centers(n, self.cfg.domain_length).enumerate() {
            let mo = self.cell_moments(cell);
            let uy = mo.momentum.y / mo.rho;
            re += uy * (k * x).cos();
            im -= uy * (k * x).sin();
        }
        2.0 / n as f64 * re.hypot(im)
    }

    pub fn record(&self) -> Record {
        Record {
            step: self.step,
            t: self.time(),
            mass: self.last.mass,
            momentum: self.last.momentum.into(),
            energy: self.last.energy,
            entropy: self.last.entropy,
            min_xi: self.last_min_xi,
            amp_shear: self.shear_amplitude(),
        }
    }

    pub fn summary(&self) -> &RunSummary {
        &self.summary
    }

    /// Run to completion, recording every `output_every` steps plus the
    /// initial and final states.
    pub fn run(mut self) -> Result<SimResult> {
        let every = self.cfg.output_every;
        let mut records = vec![self.record()];
        while self.step < self.n_steps {
            self.step()?;
            if self.step.is_multiple_of(every) || self.step == self.n_steps {
                records.push(self.record());
            }
        }
        let mut summary = self.summary.clone();
        if self.n_steps == 0 {
            summary.min_relative_entropy_change = 0.0;
            summary.min_xi = self.last_min_xi;
        }
        Ok(SimResult { records, summary })
    }
}

pub fn run(cfg: SimConfig) -> Result<SimResult> {
    Simulation::new(cfg)?.run()
}

/// Relaxation time the configured model assigns to the unperturbed state of
/// the initial condition.
pub fn reference_tau(cfg: &SimConfig) -> Result<f64> {
    let (rho, theta) = match cfg.initial {
        InitialCondition::Uniform { rho, theta, .. }
        | InitialCondition::ShearWave { rho, theta, .. }
        | InitialCondition::Bimodal { rho, theta, .. } => (rho, theta),
    };
    match cfg.tau_model {
        TauModel::Constant { tau } => Ok(tau),
        TauModel::HardSphere { c_b } => bgk_relaxation_time_model(rho, theta, &cfg.gas, c_b),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShearDecay {
    /// Fitted decay rate of the shear amplitude.
    pub rate: f64,
    /// `rate rho / k^2`.
    pub nu: f64,
    pub fit_start: f64,
    pub fit_points: usize,
}

/// Fit `ln amp_shear = a - rate t` over the records after the initial
/// transient (the later of `10 tau` and a tenth of the run).
pub fn fit_shear_decay(
    records: &[Record],
    rho: f64,
    theta: f64,
    length: f64,
    tau: f64,
    c: &GasConstants,
) -> Result<ShearDecay> {
    let t_end = records.last().map(|r| r.t).unwrap_or(0.0);
    let fit_start = (10.0 * tau).max(0.1 * t_end);
    let floor = 1e-10 * (c.r_s() * theta).sqrt();
    let pts: Vec<(f64, f64)> = records.iter().filter(|r| r.t >= fit_start).map(|r| (r.t, r.amp_shear)).collect();
    if pts.len() < 3 {
        return Err(Error::InsufficientSignal(format!(
            "only {} records after t = {fit_start}; run longer or output more often",
            pts.len()
        )));
    }
    if pts.iter().any(|&(_, a)| !(a > floor)) {
        return Err(Error::InsufficientSignal(format!("shear amplitude fell below {floor:e}")));
    }
    let n = pts.len() as f64;
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let ml = pts.iter().map(|p| p.1.ln()).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1.ln() - ml)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mt).powi(2)).sum();
    let rate = -sxy / sxx;
    let k = 2.0 * std::f64::consts::PI / length;
    Ok(ShearDecay { rate, nu: rate * rho / (k * k), fit_start, fit_points: pts.len() })
}

/// Run a shear-wave configuration and fit its viscosity.
pub fn measure_shear_decay(cfg: &SimConfig) -> Result<ShearDecay> {
    let InitialCondition::ShearWave { rho, theta, .. } = cfg.initial else {
        return Err(Error::Config("shear-decay measurement needs the shear_wave preset".into()));
    };
    let tau = reference_tau(cfg)?;
    let res = run(cfg.clone())?;
    fit_shear_decay(&res.records, rho, theta, cfg.domain_length, tau, &cfg.gas)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ViscosityStudy {
    pub tau: f64,
    pub nu_raw: f64,
    /// Viscosity of the same run with `tau = 0`, i.e. the numerical part.
    pub nu_control: f64,
    pub nu_effective: f64,
    /// `tau p` at the reference state.
    pub nu_expected: f64,
    pub relative_error: f64,
}

/// Viscosity of a shear-wave run after subtracting the `tau = 0` control.
pub fn viscosity_study(cfg: &SimConfig) -> Result<ViscosityStudy> {
    let res = run(cfg.clone())?;
    viscosity_from_records(cfg, &res.records)
}

/// As [`viscosity_study`], reusing the records of an existing run of `cfg`;
/// only the control run is performed.
pub fn viscosity_from_records(cfg: &SimConfig, records: &[Record]) -> Result<ViscosityStudy> {
    let InitialCondition::ShearWave { rho, theta, .. } = cfg.initial else {
        return Err(Error::Config("viscosity study needs the shear_wave preset".into()));
    };
    let tau = reference_tau(cfg)?;
    let raw = fit_shear_decay(records, rho, theta, cfg.domain_length, tau, &cfg.gas)?;
    let mut control_cfg = cfg.with_constant_tau(0.0);
    // keep the time step of the main run so both share the same numerical
    // diffusion
    if control_cfg.dt.is_none() {
        control_cfg.dt = Some(Simulation::new(cfg.clone())?.dt());
    }
    let control = measure_shear_decay(&control_cfg)?;
    let p = rho * cfg.gas.r_s() * theta;
    let nu_expected = tau * p;
    let nu_effective = raw.nu - control.nu;
    Ok(ViscosityStudy {
        tau,
        nu_raw: raw.nu,
        nu_control: control.nu,
        nu_effective,
        nu_expected,
        relative_error: (nu_effective - nu_expected).abs() / nu_expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(initial: InitialCondition, tau: f64) -> SimConfig {
        SimConfig {
            n_cells: 16,
            domain_length: 1.0,
            v_grid: VelocityGridSpec { n_per_axis: 8, half_width: 5.0, center: [0.0; 3] },
            tau_model: TauModel::Constant { tau },
            cfl: 0.9,
            t_end: None,
            n_steps: Some(20),
            dt: None,
            boundary: Boundary::Periodic,
            initial,
            output_every: 5,
            gas: GasConstants::default(),
        }
    }

    #[test]
    fn uniform_state_is_a_fixed_point() {
        let cfg = base(InitialCondition::Uniform { rho: 1.2, theta: 0.9, u: [0.1, -0.2, 0.05] }, 0.01);
        let sim = Simulation::new(cfg).unwrap();
        let f0 = sim.distribution().clone();
        let res = {
            let mut s = sim;
            for _ in 0..20 {
                s.step().unwrap();
            }
            s
        };
        let scale = f0.iter().cloned().fold(0.0, f64::max);
        let diff = (res.distribution() - &f0).iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        assert!(diff <= 1e-13 * scale, "{diff:e}");
    }

    #[test]
    fn bimodal_conserves_and_increases_entropy() {
        let cfg = base(InitialCondition::Bimodal { rho: 1.0, theta: 1.0, modulation: 0.3, drift: 1.0 }, 0.05);
        let res = run(cfg).unwrap();
        assert!(res.summary.max_conservation_drift() < 1e-13, "{:?}", res.summary);
        assert!(res.summary.min_relative_entropy_change >= -1e-12);
        assert!(res.summary.min_xi >= 0.0);
        assert_eq!(res.records.len(), 5);
    }

    #[test]
    fn zero_tau_and_hard_sphere_run() {
        let cfg = base(InitialCondition::Bimodal { rho: 1.0, theta: 1.0, modulation: 0.3, drift: 1.0 }, 0.0);
        let res = run(cfg.clone()).unwrap();
        assert!(res.summary.max_conservation_drift() < 1e-13);
        let hs = SimConfig { tau_model: TauModel::HardSphere { c_b: 20.0 }, ..cfg };
        let res = run(hs).unwrap();
        assert!(res.summary.min_relative_entropy_change >= -1e-12);
    }

    #[test]
    fn t_end_rounds_dt_down() {
        let mut cfg = base(InitialCondition::Uniform { rho: 1.0, theta: 1.0, u: [0.0; 3] }, 0.01);
        cfg.n_steps = None;
        cfg.t_end = Some(0.1);
        let sim = Simulation::new(cfg).unwrap();
        assert!((sim.dt() * sim.n_steps() as f64 - 0.1).abs() < 1e-15);
        assert!(sim.dt() <= 0.9 * sim.dx() / 5.0 + 1e-15);
    }

    #[test]
    fn oversized_dt_rejected() {
        let mut cfg = base(InitialCondition::Uniform { rho: 1.0, theta: 1.0, u: [0.0; 3] }, 0.01);
        cfg.dt = Some(0.1);
        assert!(matches!(Simulation::new(cfg), Err(Error::Config(_))));
    }

    #[test]
    fn zero_amplitude_has_no_signal() {
        let mut cfg = base(InitialCondition::ShearWave { rho: 1.0, theta: 1.0, amplitude: 0.0 }, 0.01);
        cfg.n_steps = Some(30);
        cfg.output_every = 1;
        assert!(matches!(measure_shear_decay(&cfg), Err(Error::InsufficientSignal(_))));
    }

    #[test]
    fn shear_decay_needs_shear_preset() {
        let cfg = base(InitialCondition::Uniform { rho: 1.0, theta: 1.0, u: [0.0; 3] }, 0.01);
        assert!(matches!(measure_shear_decay(&cfg), Err(Error::Config(_))));
    }
}
