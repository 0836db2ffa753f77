//! Entropy-production functionals in flux space.
//!
//! A producer returns `theta * xi_hat(J)` for a flat flux vector `J`; the
//! admissible set of the selection problems is `theta * xi_hat(J) = J . A`.

use nalgebra::{SMatrix, SVector};

use crate::error::{Error, Result};

/// Number of flat flux/affinity components: 5 deviatoric stress + 3 heat.
pub const FLAT_DIM: usize = 8;

pub type Flat = SVector<f64, FLAT_DIM>;
pub type FlatMat = SMatrix<f64, FLAT_DIM, FLAT_DIM>;

pub trait Producer {
    /// `theta * xi_hat(J)`.
    fn value(&self, j: &Flat) -> f64;
    fn gradient(&self, j: &Flat) -> Flat;
    fn hessian(&self, j: &Flat) -> FlatMat;

    /// Reject parameter choices that make the producer non-convex or negative.
    fn validate(&self) -> Result<()> {
        Ok(())
    }

    /// Search direction for the initial guess of the selection problems.
    fn initial_direction(&self, a: &Flat) -> Flat {
        *a
    }

    /// Largest `s > 0` with `value(s d) = s d.A`, if any.
    fn ray_scale(&self, d: &Flat, a: &Flat) -> Option<f64> {
        generic_ray_scale(self, d, a)
    }
}

/// Bracket the outermost sign change of `value(s d) - s d.A` on a geometric
/// scan and refine by bisection.
pub fn generic_ray_scale<P: Producer + ?Sized>(p: &P, d: &Flat, a: &Flat) -> Option<f64> {
    let da = d.dot(a);
    if !(da > 0.0) {
        return None;
    }
    let phi = |s: f64| p.value(&(d * s)) - s * da;
    let mut hi = None;
    let mut s = 1e-12;
    let mut prev = phi(s);
    while s < 1e12 {
        let next = s * 2.0;
        let cur = phi(next);
        if prev < 0.0 && cur >= 0.0 {
            hi = Some((s, next));
        }
        prev = cur;
        s = next;
    }
    let (mut lo, mut hi) = hi?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if phi(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// `1/2 J^T diag(m) J`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticProducer {
    pub diag: Flat,
}

impl QuadraticProducer {
    /// Producer of the first-order Chapman-Enskog entropy production:
    /// `|S|^2 / (2 nu) + |Q|^2 / (kappa theta)`.
    pub fn from_coefficients(nu: f64, kappa: f64, theta: f64) -> Result<Self> {
        if !(nu > 0.0 && kappa > 0.0 && theta > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "quadratic producer needs nu, kappa, theta > 0, got ({nu}, {kappa}, {theta})"
            )));
        }
        let mut diag = Flat::zeros();
        for i in 0..5 {
            diag[i] = 1.0 / nu;
        }
        for i in 5..8 {
            diag[i] = 2.0 / (kappa * theta);
        }
        Ok(QuadraticProducer { diag })
    }
}

impl Producer for QuadraticProducer {
    fn value(&self, j: &Flat) -> f64 {
        0.5 * j.component_mul(&self.diag).dot(j)
    }

    fn gradient(&self, j: &Flat) -> Flat {
        j.component_mul(&self.diag)
    }

    fn hessian(&self, _j: &Flat) -> FlatMat {
        FlatMat::from_diagonal(&self.diag)
    }

    fn validate(&self) -> Result<()> {
        if self.diag.iter().all(|x| *x > 0.0 && x.is_finite()) {
            Ok(())
        } else {
            Err(Error::InvalidArgument("quadratic producer weights must be positive".into()))
        }
    }

    fn initial_direction(&self, a: &Flat) -> Flat {
        a.component_div(&self.diag)
    }

    fn ray_scale(&self, d: &Flat, a: &Flat) -> Option<f64> {
        let da = d.dot(a);
        let q = d.component_mul(&self.diag).dot(d);
        (da > 0.0 && q > 0.0).then(|| 2.0 * da / q)
    }
}

/// `1/2 J^T diag(m) J + eps |J|^4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticProducer {
    pub base: QuadraticProducer,
    pub eps: f64,
}

impl Producer for QuarticProducer {
    fn value(&self, j: &Flat) -> f64 {
        let n2 = j.norm_squared();
        self.base.value(j) + self.eps * n2 * n2
    }

    fn gradient(&self, j: &Flat) -> Flat {
        self.base.gradient(j) + j * (4.0 * self.eps * j.norm_squared())
    }

    fn hessian(&self, j: &Flat) -> FlatMat {
        self.base.hessian(j) + (FlatMat::identity() * j.norm_squared() + j * j.transpose() * 2.0) * (4.0 * self.eps)
    }

    fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if self.eps >= 0.0 && self.eps.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("quartic coefficient {} makes the producer non-convex", self.eps)))
        }
    }

    fn initial_direction(&self, a: &Flat) -> Flat {
        self.base.initial_direction(a)
    }

    fn ray_scale(&self, d: &Flat, a: &Flat) -> Option<f64> {
        // 1/2 s q + eps s^3 |d|^4 = d.A is monotone in s
        let da = d.dot(a);
        let q = d.component_mul(&self.base.diag).dot(d);
        let n4 = d.norm_squared().powi(2);
        if !(da > 0.0) {
            return None;
        }
        let mut s = 2.0 * da / q;
        for _ in 0..100 {
            let g = 0.5 * s * q + self.eps * s * s * s * n4 - da;
            let dg = 0.5 * q + 3.0 * self.eps * s * s * n4;
            let step = g / dg;
            s -= step;
            if step.abs() <= 1e-16 * s {
                break;
            }
        }
        Some(s)
    }
}

/// `1/2 J^T diag(m) J + offset`; with `offset > 0` the admissible set may be
/// reduced to nothing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedProducer {
    pub base: QuadraticProducer,
    pub offset: f64,
}

impl Producer for ShiftedProducer {
    fn value(&self, j: &Flat) -> f64 {
        self.base.value(j) + self.offset
    }

    fn gradient(&self, j: &Flat) -> Flat {
        self.base.gradient(j)
    }

    fn hessian(&self, j: &Flat) -> FlatMat {
        self.base.hessian(j)
    }

    fn initial_direction(&self, a: &Flat) -> Flat {
        self.base.initial_direction(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn test_point() -> (Flat, Flat) {
        let j = Flat::from_fn(|i, _| 0.3 * i as f64 - 1.0);
        let a = Flat::from_fn(|i, _| 0.1 + 0.05 * i as f64);
        (j, a)
    }

    fn check_derivatives<P: Producer>(p: &P) {
        let (j, _) = test_point();
        let h = 1e-6;
        let g = p.gradient(&j);
        let hess = p.hessian(&j);
        for i in 0..FLAT_DIM {
            let mut e = Flat::zeros();
            e[i] = h;
            let fd = (p.value(&(j + e)) - p.value(&(j - e))) / (2.0 * h);
            assert!((fd - g[i]).abs() < 1e-6 * g[i].abs().max(1.0));
            let fdg = (p.gradient(&(j + e)) - p.gradient(&(j - e))) / (2.0 * h);
            assert!((fdg - hess.column(i)).norm() < 1e-6 * hess.norm().max(1.0));
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let q = QuadraticProducer::from_coefficients(0.7, 1.3, 0.9).unwrap();
        check_derivatives(&q);
        check_derivatives(&QuarticProducer { base: q, eps: 0.05 });
        check_derivatives(&ShiftedProducer { base: q, offset: 2.0 });
    }

    #[test]
    fn ray_scales_are_feasible() {
        let q = QuadraticProducer::from_coefficients(0.7, 1.3, 0.9).unwrap();
        let quart = QuarticProducer { base: q, eps: 0.05 };
        let (d, a) = test_point();
        for p in [&q as &dyn Producer, &quart] {
            let s = p.ray_scale(&d, &a).unwrap();
            let g = generic_ray_scale(p, &d, &a).unwrap();
            assert!((s - g).abs() < 1e-10 * s);
            let j = d * s;
            assert!((p.value(&j) - j.dot(&a)).abs() < 1e-12 * j.dot(&a));
        }
        assert!(q.ray_scale(&-d, &a).is_none());
    }

    #[test]
    fn shifted_producer_can_be_infeasible() {
        let q = QuadraticProducer { diag: Flat::repeat(1.0) };
        let s = ShiftedProducer { base: q, offset: 10.0 };
        let a = Flat::repeat(0.1);
        assert!(s.ray_scale(&a, &a).is_none());
    }

    #[test]
    fn invalid_producers_rejected() {
        assert!(QuadraticProducer::from_coefficients(0.0, 1.0, 1.0).is_err());
        let q = QuadraticProducer { diag: Flat::repeat(1.0) };
        assert!(QuarticProducer { base: q, eps: -0.1 }.validate().is_err());
    }
}
