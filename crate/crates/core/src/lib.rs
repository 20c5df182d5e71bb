//! Spacetime-algebra exterior calculus on tetrad fields.
//!
//! A tetrad is given as closed-form expressions `h^a_μ(x)` over a four
//! dimensional chart. At each point the crate builds a Taylor jet of the frame,
//! derives the connection bivectors of the orthonormal coframe, and evaluates
//! Clifford-valued differential operators exactly in the jet arithmetic. On
//! top of that sit the gravitational, Maxwell and Dirac energy-momentum
//! 1-forms, field-equation residuals and the energy integral over a spatial
//! region.

pub mod algebra;
pub mod calculus;
pub mod energymomentum;
pub mod error;
pub mod expr;
pub mod frame;
pub mod jet;
pub mod quadrature;
pub mod real;

pub use algebra::{Multivector, MvJet};
pub use error::Error;
pub use expr::{Expr, Symbols};

pub use frame::{FrameJet, FrameSample, Tetrad};
pub use jet::Taylor;
