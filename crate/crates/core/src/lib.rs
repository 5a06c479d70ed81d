//! Exact construction of the Laplace eigenmodes of the Poincaré dodecahedral
//! space `S^3 / I*`.

pub mod error;
pub mod harmonics;
pub mod hopf;
pub mod icosa;
pub mod io;
pub mod linalg;
pub mod maxwell;
pub mod orbifold;
pub mod pds;
pub mod poly;
pub mod scalars;

pub use error::{Error, Result};
pub use poly::{Chart, Monomial, Poly, Var};
pub use scalars::{Rational, Scalar};
