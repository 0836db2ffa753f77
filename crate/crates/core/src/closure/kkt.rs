//! Damped Newton iteration on the KKT system of
//! `min phi(J)  s.t.  P(J) - J.A = 0`.

use nalgebra::{SMatrix, SVector, SymmetricEigen};

use super::producer::{Flat, FlatMat, Producer, FLAT_DIM};
use crate::error::{Error, Result};

type Kkt = SMatrix<f64, 9, 9>;
type KktVec = SVector<f64, 9>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KktOptions {
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for KktOptions {
    fn default() -> Self {
        KktOptions { max_iter: 100, tol: 1e-12 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KktSolution {
    pub j: Flat,
    /// Multiplier of the constraint in `phi + mu (P - J.A)`.
    pub multiplier: f64,
    pub iterations: usize,
    /// Scaled KKT residual at the returned point.
    pub residual: f64,
    /// `|P(J) - J.A| / max(J.A, tiny)`.
    pub feasibility: f64,
}

/// Objective to be minimized: value, gradient and Hessian. Values may be
/// `+inf` outside the objective's domain.
pub trait Objective {
    fn eval(&self, j: &Flat) -> (f64, Flat, FlatMat);
}

/// `phi(J) = -P(J)`: maximize the entropy production.
pub struct MaxProduction<'a>(pub &'a dyn Producer);

impl Objective for MaxProduction<'_> {
    fn eval(&self, j: &Flat) -> (f64, Flat, FlatMat) {
        (-self.0.value(j), -self.0.gradient(j), -self.0.hessian(j))
    }
}

/// `phi(J) = (1/alpha) (log iota - log P(J)) = log tau(J)`.
pub struct LogRelaxationTime<'a> {
    pub producer: &'a dyn Producer,
    pub alpha: f64,
    pub iota: f64,
}

impl Objective for LogRelaxationTime<'_> {
    fn eval(&self, j: &Flat) -> (f64, Flat, FlatMat) {
        let p = self.producer.value(j);
        if !(p > 0.0) {
            return (f64::INFINITY, Flat::zeros(), FlatMat::zeros());
        }
        let g = self.producer.gradient(j);
        let h = self.producer.hessian(j);
        let k = 1.0 / self.alpha;
        let val = k * (self.iota.ln() - p.ln());
        let grad = -g * (k / p);
        let hess = -(h / p - g * g.transpose() / (p * p)) * k;
        (val, grad, hess)
    }
}

struct Eval {
    f: KktVec,
    residual: f64,
    objective_hessian: FlatMat,
    constraint_grad: Flat,
    producer_hessian: FlatMat,
}

fn evaluate(obj: &dyn Objective, p: &dyn Producer, a: &Flat, j: &Flat, mu: f64) -> Option<Eval> {
    let (phi, gphi, hphi) = obj.eval(j);
    if !phi.is_finite() {
        return None;
    }
    let n = p.gradient(j) - a;
    let h = p.value(j) - j.dot(a);
    let stat = gphi + n * mu;
    let mut f = KktVec::zeros();
    f.fixed_rows_mut::<FLAT_DIM>(0).copy_from(&stat);
    f[FLAT_DIM] = h;
    let s1 = gphi.norm().max(mu.abs() * n.norm()).max(f64::MIN_POSITIVE);
    let s2 = j.dot(a).abs().max(p.value(j).abs()).max(f64::MIN_POSITIVE);
    let residual = (stat.norm() / s1).max(h.abs() / s2);
    if !residual.is_finite() {
        return None;
    }
    Some(Eval { f, residual, objective_hessian: hphi, constraint_grad: n, producer_hessian: p.hessian(j) })
}

/// Solve from a feasible-or-nearly-feasible start `j0`. The multiplier is
/// initialised by least squares on the stationarity condition.
pub fn solve(obj: &dyn Objective, p: &dyn Producer, a: &Flat, j0: &Flat, opts: &KktOptions) -> Result<KktSolution> {
    let (_, g0, _) = obj.eval(j0);
    let n0 = p.gradient(j0) - a;
    let mut mu = if n0.norm_squared() > 0.0 { -g0.dot(&n0) / n0.norm_squared() } else { 0.0 };
    let mut j = *j0;
    let mut cur = evaluate(obj, p, a, &j, mu).ok_or(Error::Convergence { iterations: 0, residual: f64::INFINITY })?;
    for it in 0..=opts.max_iter {
        if cur.residual <= opts.tol {
            check_second_order(&cur, mu)?;
            let jd = j.dot(a).abs().max(f64::MIN_POSITIVE);
            return Ok(KktSolution {
                j,
                multiplier: mu,
                iterations: it,
                residual: cur.residual,
                feasibility: (p.value(&j) - j.dot(a)).abs() / jd,
            });
        }
        if it == opts.max_iter {
            break;
        }
        let mut k = Kkt::zeros();
        let hl = cur.objective_hessian + cur.producer_hessian * mu;
        k.fixed_view_mut::<FLAT_DIM, FLAT_DIM>(0, 0).copy_from(&hl);
        k.fixed_view_mut::<FLAT_DIM, 1>(0, FLAT_DIM).copy_from(&cur.constraint_grad);
        k.fixed_view_mut::<1, FLAT_DIM>(FLAT_DIM, 0).copy_from(&cur.constraint_grad.transpose());
        let step = k
            .lu()
            .solve(&-cur.f)
            .filter(|s| s.iter().all(|x| x.is_finite()))
            .ok_or(Error::Convergence { iterations: it, residual: cur.residual })?;
        let dj: Flat = step.fixed_rows::<FLAT_DIM>(0).into();
        let dmu = step[FLAT_DIM];
        let merit0 = cur.f.norm();
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let jt = j + dj * t;
            let mt = mu + dmu * t;
            if let Some(e) = evaluate(obj, p, a, &jt, mt) {
                if e.f.norm() <= (1.0 - 1e-4 * t) * merit0 || e.residual <= opts.tol {
                    accepted = Some((jt, mt, e));
                    break;
                }
            }
            t *= 0.5;
        }
        let (jn, mn, en) = accepted.ok_or(Error::Convergence { iterations: it + 1, residual: cur.residual })?;
        j = jn;
        mu = mn;
        cur = en;
    }
    Err(Error::Convergence { iterations: opts.max_iter, residual: cur.residual })
}

/// The Hessian of the Lagrangian must be positive definite on the tangent
/// space of the constraint, otherwise the KKT point is not a local minimum
/// of the objective.
fn check_second_order(e: &Eval, mu: f64) -> Result<()> {
    let n = e.constraint_grad;
    let nn = n.norm_squared();
    if nn == 0.0 {
        return Ok(());
    }
    let hl = e.objective_hessian + e.producer_hessian * mu;
    let proj = FlatMat::identity() - n * n.transpose() / nn;
    let scale = hl.norm().max(1.0);
    let reduced = proj * hl * proj + n * n.transpose() / nn * scale;
    let eig = SymmetricEigen::new((reduced + reduced.transpose()) * 0.5);
    let min = eig.eigenvalues.min();
    if min <= 1e-12 * scale {
        return Err(Error::NumericalConsistency(format!(
            "KKT point is not a strict constrained optimum (reduced Hessian eigenvalue {min:e})"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::producer::{QuadraticProducer, ShiftedProducer};

    #[test]
    fn quadratic_maximum_from_offset_start() {
        let p = QuadraticProducer::from_coefficients(0.4, 1.1, 1.3).unwrap();
        let a = Flat::from_fn(|i, _| (i as f64 - 3.0) * 0.2 + 0.05);
        let exact = p.initial_direction(&a) * 2.0;
        let j0 = exact * 1.3 + Flat::repeat(0.01);
        let s = solve(&MaxProduction(&p), &p, &a, &j0, &KktOptions::default()).unwrap();
        assert!((s.j - exact).norm() < 1e-12 * exact.norm());
        // stationarity of -P + mu (P - J.A) at J = 2 M^-1 A gives mu = 2
        assert!((s.multiplier - 2.0).abs() < 1e-10);
    }

    #[test]
    fn minimum_of_production_is_rejected() {
        // starting at the trivial KKT point J = 0 gives a saddle-free minimum
        // of P, which the second-order check refuses
        let p = QuadraticProducer { diag: Flat::repeat(1.0) };
        let a = Flat::repeat(0.3);
        let r = solve(&MaxProduction(&p), &p, &a, &Flat::zeros(), &KktOptions::default());
        assert!(r.is_err());
    }

    #[test]
    fn infeasible_problem_fails() {
        let p = ShiftedProducer { base: QuadraticProducer { diag: Flat::repeat(1.0) }, offset: 10.0 };
        let a = Flat::repeat(0.1);
        let r = solve(&MaxProduction(&p), &p, &a, &a, &KktOptions::default());
        assert!(matches!(r, Err(Error::Convergence { .. })));
    }
}
