//! Dense complex linear algebra.

mod eig;
mod factor;
mod inner;
mod matrix;
pub mod mmio;
pub mod vector;

pub use eig::{
    hermitian_eig, hermitian_eig_with, hermitian_gen_eig, hermitian_pencil_precond, order_eigenpairs,
    skew_gen_eig, skew_pencil_precond, EigCount, EigenPairs, HermitianEig,
};
pub use factor::{Cholesky, HouseholderQr, Lu};
pub use inner::{w_inner, w_norm, InnerProduct};
pub use matrix::{split_hermitian_skew, ComplexMatrix};
