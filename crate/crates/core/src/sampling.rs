//! Random macroscopic states and gradients for property suites.

use rand::Rng;

use crate::chapman_enskog::GradientState;
use crate::quadrature::{GasConstants, MacroState};
use crate::tensor::{Mat3, Vec3};

/// Density in `[0.5, 2]`, velocity components in `[-1, 1]`, energy in
/// `[0.5, 3]`.
pub fn random_macro<R: Rng + ?Sized>(rng: &mut R) -> MacroState {
    MacroState { rho: rng.random_range(0.5..2.0), u: random_vec(rng, 1.0), e: rng.random_range(0.5..3.0) }
}

pub fn random_vec<R: Rng + ?Sized>(rng: &mut R, half: f64) -> Vec3 {
    Vec3::from_fn(|_, _| rng.random_range(-half..half))
}

/// Symmetric `D` with entries in `[-1, 1]` and `grad theta` components in
/// `[-1, 1]`.
pub fn random_gradients<R: Rng + ?Sized>(rng: &mut R, c: &GasConstants) -> GradientState {
    let d = Mat3::from_fn(|_, _| rng.random_range(-1.0..1.0));
    let d = Mat3::from_fn(|i, j| if i <= j { d[(i, j)] } else { d[(j, i)] });
    GradientState::from_grad_theta(d, random_vec(rng, 1.0), c)
}
