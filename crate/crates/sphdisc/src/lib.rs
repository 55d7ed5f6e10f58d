//! Spherical discrepancy at desk scale: volume-ratio upper bounds on
//! `min_{||x||_2 = 1} ||Wx||_inf` and solvers that realize them.
//!
//! The crate is organized around five pieces:
//!
//! - [`linalg`]: dense LU, log-determinant, solves, column norms.
//! - [`geometry`]: log-volumes of lp balls, log-gamma, the finite-n bound
//!   coefficient and its asymptotic constant.
//! - [`bounds`]: the volume-ratio bound, the determinant bound chain
//!   (Hadamard, then AM-GM) and the assembled [`bounds::BoundReport`].
//! - [`solver`]: an exact dual vertex-enumeration oracle for small n plus
//!   projected-subgradient, annealed log-sum-exp and sampling solvers.
//! - [`harness`]: instance generators, the verification experiment and CSV
//!   reporting behind the `sphdisc` command-line tool.

pub mod bounds;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod rng;
pub mod solver;

pub use error::{Error, Result};
pub use linalg::Matrix;
