//! Discrete Maxwellian on a tensor velocity grid.
//!
//! `f_eq(v) = exp(l0 + l.v + l4 |v|^2/2)` with the five multipliers chosen so
//! that the *grid* moments `sum W m f_eq (1, v, |v|^2/2)` equal the targets.
//! The multipliers minimize the convex dual
//! `F(l) = sum W m exp(l.psi) - l.target`; Newton's method is applied to it.
//! Because the exponent is separable, every moment is a product of
//! one-dimensional sums and no per-node exponential is needed.

use nalgebra::{Matrix5, Vector5};
use ndarray::Array3;

use crate::error::{Error, Result};
use crate::quadrature::{ConservedMoments, GasConstants, VelocityGrid};

const MAX_NEWTON: usize = 100;
const MOMENT_TOL: f64 = 1e-14;

/// Multipliers `(l0, lx, ly, lz, l4)` of `exp(l0 + l.v + l4 |v|^2 / 2)`.
pub type Multipliers = Vector5<f64>;

/// Per-axis sums `S_k = sum_i W_i v_i^k exp(l_d v_i + l4 v_i^2 / 2 - shift)`
/// for `k = 0..=4`, and the per-node exponentials.
struct AxisSums {
    s: [f64; 5],
    shift: f64,
    values: Vec<f64>,
}

fn axis_sums(nodes: &[f64], weights: &[f64], ld: f64, l4: f64) -> AxisSums {
    let expo: Vec<f64> = nodes.iter().map(|v| ld * v + 0.5 * l4 * v * v).collect();
    let shift = expo.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut s = [0.0; 5];
    let mut values = Vec::with_capacity(nodes.len());
    for ((v, w), e) in nodes.iter().zip(weights).zip(&expo) {
        let x = (e - shift).exp();
        values.push(x);
        let mut p = w * x;
        for sk in s.iter_mut() {
            *sk += p;
            p *= v;
        }
    }
    AxisSums { s, shift, values }
}

struct Evaluation {
    /// `sum W m f psi`.
    moments: Vector5<f64>,
    /// `sum W m f psi psi^T`.
    hessian: Matrix5<f64>,
    axes: [AxisSums; 3],
    log_prefactor: f64,
}

fn evaluate(grid: &VelocityGrid, l: &Multipliers, m: f64) -> Evaluation {
    let axes = [0, 1, 2].map(|d| {
        let ax = grid.axis(d);
        axis_sums(&ax.nodes, &ax.weights, l[1 + d], l[4])
    });
    let log_prefactor = l[0] + axes.iter().map(|a| a.shift).sum::<f64>() + m.ln();
    let pre = log_prefactor.exp();
    // normalized per-axis moments mu_k = S_k / S_0
    let z: f64 = axes.iter().map(|a| a.s[0]).product();
    let mu: [[f64; 5]; 3] = [0, 1, 2].map(|d| axes[d].s.map(|x| x / axes[d].s[0]));
    let total = pre * z;
    // E[v_d], E[v_d v_e], E[v_d |v|^2/2], E[|v|^4/4] under the normalized weight
    let ev = |d: usize| mu[d][1];
    let evv = |d: usize, e: usize| if d == e { mu[d][2] } else { mu[d][1] * mu[e][1] };
    let half_sq: f64 = 0.5 * (0..3).map(|d| mu[d][2]).sum::<f64>();
    let ev_half_sq = |d: usize| 0.5 * (0..3).map(|e| if e == d { mu[d][3] } else { mu[d][1] * mu[e][2] }).sum::<f64>();
    let mut quarter = 0.0;
    for d in 0..3 {
        for e in 0..3 {
            quarter += if d == e { mu[d][4] } else { mu[d][2] * mu[e][2] };
        }
    }
    quarter *= 0.25;

    let mut moments = Vector5::zeros();
    moments[0] = 1.0;
    for d in 0..3 {
        moments[1 + d] = ev(d);
    }
    moments[4] = half_sq;
    let mut h = Matrix5::zeros();
    h[(0, 0)] = 1.0;
    for d in 0..3 {
        h[(0, 1 + d)] = ev(d);
        for e in 0..3 {
            h[(1 + d, 1 + e)] = evv(d, e);
        }
        h[(1 + d, 4)] = ev_half_sq(d);
    }
    h[(0, 4)] = half_sq;
    h[(4, 4)] = quarter;
    for i in 0..5 {
        for j in 0..i {
            h[(i, j)] = h[(j, i)];
        }
    }
    Evaluation { moments: moments * total, hessian: h * total, axes, log_prefactor }
}

fn moment_scale(target: &ConservedMoments) -> Vector5<f64> {
    let speed = (2.0 * target.energy.abs() / target.rho).sqrt();
    let p = target.rho * speed;
    Vector5::new(target.rho, p, p, p, target.energy.abs())
}

/// Multipliers of the continuous Maxwellian with the same moments; used as
/// the starting point of the Newton solve.
pub fn continuous_multipliers(target: &ConservedMoments, c: &GasConstants) -> Result<Multipliers> {
    let u = target.velocity();
    let e = target.internal_energy();
    if !(target.rho > 0.0 && e > 0.0 && e.is_finite()) {
        return Err(Error::Realizability(format!("density {} and internal energy {e} must be positive", target.rho)));
    }
    let var = 2.0 * e / 3.0;
    let l0 = (target.rho / c.m()).ln() - 1.5 * (2.0 * std::f64::consts::PI * var).ln() - u.norm_squared() / (2.0 * var);
    Ok(Multipliers::new(l0, u.x / var, u.y / var, u.z / var, -1.0 / var))
}

/// Discrete equilibrium matching `target` on `grid`.
#[derive(Debug, Clone)]
pub struct DiscreteEquilibrium {
    pub multipliers: Multipliers,
    pub iterations: usize,
    /// Largest relative moment mismatch.
    pub residual: f64,
    /// Log of the common prefactor and per-axis factors: `f[i,j,k] =
    /// exp(log_prefactor) * x[i] * y[j] * z[k] / m`.
    log_prefactor: f64,
    factors: [Vec<f64>; 3],
    mass: f64,
    hessian: Matrix5<f64>,
}

impl DiscreteEquilibrium {
    /// `sum W m f_eq psi psi^T` with `psi = (1, v, |v|^2/2)`.
    pub fn moment_hessian(&self) -> &Matrix5<f64> {
        &self.hessian
    }

    /// Value at node `(i, j, k)`.
    pub fn value(&self, i: usize, j: usize, k: usize) -> f64 {
        (self.log_prefactor.exp() / self.mass) * self.factors[0][i] * self.factors[1][j] * self.factors[2][k]
    }

    /// Write the equilibrium into a flat buffer ordered `(i, j, k)` row-major.
    pub fn fill(&self, out: &mut [f64]) {
        let pre = self.log_prefactor.exp() / self.mass;
        let (nx, ny, nz) = (self.factors[0].len(), self.factors[1].len(), self.factors[2].len());
        debug_assert_eq!(out.len(), nx * ny * nz);
        let mut idx = 0;
        for i in 0..nx {
            let a = pre * self.factors[0][i];
            for j in 0..ny {
                let b = a * self.factors[1][j];
                for k in 0..nz {
                    out[idx] = b * self.factors[2][k];
                    idx += 1;
                }
            }
        }
    }

    pub fn to_array(&self) -> Array3<f64> {
        let shape = (self.factors[0].len(), self.factors[1].len(), self.factors[2].len());
        let mut v = vec![0.0; shape.0 * shape.1 * shape.2];
        self.fill(&mut v);
        Array3::from_shape_vec(shape, v).expect("shape matches buffer")
    }
}

/// Solve for the discrete equilibrium, starting from `start` (or from the
/// continuous Maxwellian multipliers).
pub fn discrete_equilibrium_from(
    target: &ConservedMoments,
    grid: &VelocityGrid,
    c: &GasConstants,
    start: Option<&Multipliers>,
) -> Result<DiscreteEquilibrium> {
    let mut l = match start {
        Some(s) if s.iter().all(|x| x.is_finite()) => *s,
        _ => continuous_multipliers(target, c)?,
    };
    let t = Vector5::new(target.rho, target.momentum.x, target.momentum.y, target.momentum.z, target.energy);
    let scale = moment_scale(target);
    let m = c.m();
    let rel = |g: &Vector5<f64>| g.component_div(&scale).amax();
    let dual = |ev: &Evaluation, l: &Multipliers| ev.moments[0] - l.dot(&t);
    let mut ev = evaluate(grid, &l, m);
    let mut best = f64::INFINITY;
    for it in 0..MAX_NEWTON {
        let g = ev.moments - t;
        let r = rel(&g);
        if !r.is_finite() {
            break;
        }
        // stop once converged and no longer improving
        if r <= MOMENT_TOL || (r <= 1e-12 && r >= best) {
            return Ok(DiscreteEquilibrium {
                multipliers: l,
                iterations: it,
                residual: r,
                log_prefactor: ev.log_prefactor,
                factors: ev.axes.map(|a| a.values),
                mass: m,
                hessian: ev.hessian,
            });
        }
        best = best.min(r);
        let chol = match ev.hessian.cholesky() {
            Some(ch) => ch,
            None => break,
        };
        let step = chol.solve(&-g);
        let f0 = dual(&ev, &l);
        let slope = g.dot(&step);
        let mut s = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let ln = l + step * s;
            let en = evaluate(grid, &ln, m);
            let fn_ = dual(&en, &ln);
            if fn_.is_finite() && (fn_ <= f0 + 1e-4 * s * slope || rel(&(en.moments - t)) < r) {
                l = ln;
                ev = en;
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    let r = rel(&(ev.moments - t));
    Err(Error::Realizability(format!(
        "no discrete equilibrium with moments (rho={}, energy={}) on this grid (relative residual {r:e})",
        target.rho, target.energy
    )))
}

pub fn discrete_equilibrium(
    target: &ConservedMoments,
    grid: &VelocityGrid,
    c: &GasConstants,
) -> Result<DiscreteEquilibrium> {
    discrete_equilibrium_from(target, grid, c, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{DistributionGrid, MacroState};
    use crate::tensor::Vec3;

    fn target(rho: f64, u: Vec3, e: f64) -> ConservedMoments {
        ConservedMoments { rho, momentum: u * rho, energy: rho * (e + 0.5 * u.norm_squared()) }
    }

    #[test]
    fn moments_match_targets() {
        let c = GasConstants::new(1.3, 0.9).unwrap();
        let g = VelocityGrid::uniform(Vec3::zeros(), 5.0, 16).unwrap();
        let t = target(1.7, Vec3::new(0.3, -0.2, 0.1), 0.9);
        let eq = discrete_equilibrium(&t, &g, &c).unwrap();
        let f = DistributionGrid::new(&g, eq.to_array()).unwrap();
        let m = crate::quadrature::conserved_moments(&f, &c).unwrap();
        assert!(((m.rho - t.rho) / t.rho).abs() < 1e-13);
        assert!((m.momentum - t.momentum).norm() / t.rho < 1e-13);
        assert!(((m.energy - t.energy) / t.energy).abs() < 1e-13);
        assert!(f.min_value() > 0.0);
    }

    #[test]
    fn fine_grid_multipliers_match_maxwellian() {
        let c = GasConstants::default();
        let s = MacroState::new(1.0, Vec3::zeros(), 1.5).unwrap();
        let g = VelocityGrid::uniform_for_macro(&s).unwrap();
        let t = target(1.0, Vec3::zeros(), 1.5);
        let eq = discrete_equilibrium(&t, &g, &c).unwrap();
        let cont = continuous_multipliers(&t, &c).unwrap();
        for i in 0..5 {
            let d = (eq.multipliers[i] - cont[i]).abs() / cont[i].abs().max(1.0);
            assert!(d < 1e-8, "multiplier {i}: {d}");
        }
    }

    #[test]
    fn unrepresentable_energy_is_rejected() {
        // two nodes per axis at +-1: |v|^2 = 3 at every node
        let c = GasConstants::default();
        let g = VelocityGrid::uniform(Vec3::zeros(), 1.0, 2).unwrap();
        let r = discrete_equilibrium(&target(1.0, Vec3::zeros(), 0.5), &g, &c);
        assert!(matches!(r, Err(Error::Realizability(_))));
    }

    #[test]
    fn warm_start_converges_immediately() {
        let c = GasConstants::default();
        let g = VelocityGrid::uniform(Vec3::zeros(), 5.0, 12).unwrap();
        let t = target(0.8, Vec3::new(0.1, 0.0, 0.0), 1.2);
        let eq = discrete_equilibrium(&t, &g, &c).unwrap();
        let again = discrete_equilibrium_from(&t, &g, &c, Some(&eq.multipliers)).unwrap();
        assert!(again.iterations <= 1);
    }
}
