use super::factor::Cholesky;
use super::matrix::ComplexMatrix;
use super::vector::{dot, norm2};
use crate::{Result, C64};

/// `<x, y>_W = y^* W x` for an HPD weight `W = L L^*`.
///
/// Vectors are mapped to `L^* x`, where the weighted inner product becomes the
/// Euclidean one.
#[derive(Debug, Clone)]
pub struct InnerProduct {
    weight: ComplexMatrix,
    chol: Cholesky,
    identity: bool,
}

impl InnerProduct {
    pub fn new(weight: ComplexMatrix) -> Result<Self> {
        let chol = Cholesky::new(&weight)?;
        Ok(Self { weight, chol, identity: false })
    }

    pub fn from_cholesky(chol: Cholesky) -> Self {
        Self { weight: chol.reconstruct(), chol, identity: false }
    }

    pub fn euclidean(n: usize) -> Self {
        Self { weight: ComplexMatrix::identity(n), chol: Cholesky::identity(n), identity: true }
    }

    pub fn dim(&self) -> usize {
        self.weight.rows()
    }

    pub fn weight(&self) -> &ComplexMatrix {
        &self.weight
    }

    pub fn cholesky(&self) -> &Cholesky {
        &self.chol
    }

    pub fn is_euclidean(&self) -> bool {
        self.identity
    }

    /// `L^* x`.
    pub fn to_euclidean(&self, x: &[C64]) -> Vec<C64> {
        if self.identity {
            x.to_vec()
        } else {
            self.chol.apply_upper(x)
        }
    }

    /// `L^{-*} y`.
    pub fn from_euclidean(&self, y: &[C64]) -> Vec<C64> {
        if self.identity {
            y.to_vec()
        } else {
            self.chol.solve_upper(y)
        }
    }

    pub fn inner(&self, x: &[C64], y: &[C64]) -> C64 {
        dot(y, &self.weight.matvec(x))
    }

    pub fn norm(&self, x: &[C64]) -> f64 {
        norm2(&self.to_euclidean(x))
    }

    /// `L^* B L^{-*}`: the matrix whose Euclidean field of values equals the
    /// `W`-field of values of `B`.
    pub fn transform_operator(&self, b: &ComplexMatrix) -> ComplexMatrix {
        if self.identity {
            return b.clone();
        }
        let right = super::factor::map_columns(&b.adjoint(), |c| self.chol.solve_lower(c)).adjoint();
        self.chol.upper_matrix(&right)
    }
}

/// `<x, y>_W`.
pub fn w_inner(x: &[C64], y: &[C64], ip: &InnerProduct) -> C64 {
    ip.inner(x, y)
}

/// `||x||_W`.
pub fn w_norm(x: &[C64], ip: &InnerProduct) -> f64 {
    ip.norm(x)
}
