//! Weighted, preconditioned and deflated GMRES for convection-diffusion-reaction
//! systems, together with field-of-values enclosures and a family of a priori
//! convergence bounds on rectangles in the right half-plane.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: dense complex matrices, Cholesky/LU/QR, Hermitian eigensolvers,
//!   weighted inner products and Matrix Market I/O.
//! * [`problem`]: the P1 finite-element CDR model problem and preconditioners.
//! * [`gmres`]: weighted GMRES with left/right/split placement, plus an
//!   independent least-squares oracle.
//! * [`deflation`]: deflation projectors and spectral deflation spaces.
//! * [`fov`]: field-of-values sampling and rectangular enclosures.
//! * [`scmap`]: exterior Schwarz-Christoffel map of a rectangle, Laurent maps and
//!   Faber polynomials.
//! * [`bounds`]: Elman, disk, disk-segment, ellipse, conformal and Faber bounds,
//!   the best-bound curve and a cutting-plane minmax oracle.
//!
//! Data-parallel loops go through [`Exec`]; with the `parallel` feature (on by
//! default) they run on rayon, otherwise sequentially.

pub mod bounds;
pub mod deflation;
mod error;
mod exec;
pub mod fov;
pub mod gmres;
pub mod linalg;
pub mod problem;
pub mod scmap;

pub use error::{Error, Result};
pub use exec::Exec;
pub use num_complex::Complex64 as C64;
