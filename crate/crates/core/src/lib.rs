//! Fractional Laplacians and Riesz potentials of functions given as
//! `V(x) * phi(|x|^2)`, with `V` a solid harmonic and `phi` a Meijer
//! G-function, computed as exact parameter transforms.
//!
//! Modules:
//! - [`param`]: exact parameter arithmetic.
//! - [`gfun`]: G-function parameter records and structural identities.
//! - [`specfun`]: gamma, hypergeometric, Meijer G, Jacobi, solid harmonics.
//! - [`transform`]: Riesz/fractional-Laplacian transforms and corollaries.
//! - [`oracle`]: brute-force singular-integral quadrature.
//! - [`ballsolve`]: spectral solver on the unit ball.
//! - [`cli`]: the `fraclap` command line.

pub mod ballsolve;
pub mod cli;
pub mod error;
pub mod gfun;
pub mod oracle;
pub mod param;
pub mod specfun;
pub mod transform;

pub use error::{Error, Result};
pub use gfun::{Coeff, ConditionReport, GSpec, HypSpec};
pub use param::Param;
