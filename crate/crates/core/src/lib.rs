//! Numerical verification toolkit for kinetic-theory moment closures.
//!
//! The crate evaluates BGK / Chapman-Enskog distributions and their moments
//! by quadrature, selects constitutive closures by constrained
//! entropy-production maximization (and the dual minimal-relaxation-time
//! problem), and checks the resulting hydrodynamic laws against a
//! discrete-velocity BGK solver.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chapman_enskog;
pub mod closure;
pub mod curtiss;
pub mod error;
pub mod kernel;
pub mod quadrature;
pub mod rules;
pub mod sampling;
pub mod sim;
pub mod tensor;
pub mod thermo;
pub mod verify;

pub use error::{Error, Result};
pub use quadrature::{GasConstants, MacroState, VelocityGrid};
