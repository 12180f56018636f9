//! Numerical building blocks shared by the ramp solver and the propagators.

mod bessel;
mod interp;
mod quadrature;

pub use bessel::bessel_j_sequence;
pub use interp::{LinearTable, MonotoneCubic};
pub use quadrature::{integrate, Integral, Tolerance};
