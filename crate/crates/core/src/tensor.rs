//! Small 3x3 tensor helpers shared by the flux/affinity code.

use nalgebra::{Matrix3, Vector3};

pub type Vec3 = Vector3<f64>;
pub type Mat3 = Matrix3<f64>;

/// `A : B = sum_ij A_ij B_ij`.
pub fn double_dot(a: &Mat3, b: &Mat3) -> f64 {
    a.component_mul(b).sum()
}

/// Traceless part `A - tr(A)/3 I`.
pub fn deviator(a: &Mat3) -> Mat3 {
    a - Mat3::identity() * (a.trace() / 3.0)
}

pub fn symmetric_part(a: &Mat3) -> Mat3 {
    (a + a.transpose()) * 0.5
}

pub fn is_symmetric(a: &Mat3, tol: f64) -> bool {
    let scale = a.amax().max(1.0);
    (a - a.transpose()).amax() <= tol * scale
}

/// Build a symmetric tensor from `[xx, yy, zz, xy, xz, yz]`.
pub fn symmetric_from_components(c: [f64; 6]) -> Mat3 {
    let [xx, yy, zz, xy, xz, yz] = c;
    Mat3::new(xx, xy, xz, xy, yy, yz, xz, yz, zz)
}

/// Levi-Civita symbol.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Frobenius-norm relative distance `|a - b| / max(|b|, floor)`.
pub fn rel_diff_mat(a: &Mat3, b: &Mat3, floor: f64) -> f64 {
    (a - b).norm() / b.norm().max(floor)
}

pub fn rel_diff_vec(a: &Vec3, b: &Vec3, floor: f64) -> f64 {
    (a - b).norm() / b.norm().max(floor)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deviator_is_traceless() {
        let a = Mat3::new(1.0, 2.0, 3.0, 2.0, 5.0, 6.0, 3.0, 6.0, -4.0);
        assert!(deviator(&a).trace().abs() < 1e-15);
        assert_eq!(double_dot(&a, &Mat3::identity()), a.trace());
    }

    #[test]
    fn levi_civita_cross_product() {
        let a = Vec3::new(0.3, -1.2, 2.0);
        let b = Vec3::new(1.5, 0.7, -0.4);
        let mut c = Vec3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    c[i] += levi_civita(i, j, k) * a[j] * b[k];
                }
            }
        }
        assert!((c - a.cross(&b)).norm() < 1e-14);
    }
}
