use super::cdr::AssembledProblem;
use crate::linalg::{Cholesky, ComplexMatrix, InnerProduct};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreconditionerKind {
    /// `H = M^{-1}`.
    ExactM,
    /// `H = diag(M)^{-1}`.
    JacobiM,
    /// Inverse of the block diagonal of `M` with `nb` contiguous blocks.
    BlockJacobiM(usize),
    /// `H = I`.
    Identity,
}

impl std::fmt::Display for PreconditionerKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::ExactM => write!(f, "exact-m"),
            Self::JacobiM => write!(f, "jacobi-m"),
            Self::BlockJacobiM(nb) => write!(f, "block-jacobi-m({nb})"),
            Self::Identity => write!(f, "identity"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// `H_L = H`, `H_R = I`, `W = H^{-1}`.
    Left,
    /// `H_L = I`, `H_R = H`, `W = H`.
    Right,
    /// `H = L L^*`, `H_L = L^*`, `H_R = L`, `W = I`.
    Split,
}

impl std::fmt::Display for Placement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Left => "left",
            Self::Right => "right",
            Self::Split => "split",
        })
    }
}

/// A dense matrix or the identity.
#[derive(Debug, Clone)]
pub enum LinearOp {
    Identity,
    Dense(ComplexMatrix),
}

impl LinearOp {
    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        match self {
            Self::Identity => x.to_vec(),
            Self::Dense(m) => m.matvec(x),
        }
    }

    pub fn apply_matrix(&self, x: &ComplexMatrix) -> ComplexMatrix {
        match self {
            Self::Identity => x.clone(),
            Self::Dense(m) => m.matmul(x),
        }
    }

    pub fn to_dense(&self, n: usize) -> ComplexMatrix {
        match self {
            Self::Identity => ComplexMatrix::identity(n),
            Self::Dense(m) => m.clone(),
        }
    }
}

/// An hpd preconditioner `H` together with its placement `(H_L, H_R, W)`.
#[derive(Debug, Clone)]
pub struct PreconditionerSetup {
    pub kind: PreconditionerKind,
    pub placement: Placement,
    h: ComplexMatrix,
    h_chol: Cholesky,
    h_left: LinearOp,
    h_right: LinearOp,
    weight: InnerProduct,
}

impl PreconditionerSetup {
    /// Wraps an arbitrary hpd `H`.
    pub fn from_hpd(h: ComplexMatrix, placement: Placement) -> Result<Self> {
        Self::assemble(h, PreconditionerKind::Identity, placement, None)
    }

    fn assemble(
        h: ComplexMatrix,
        kind: PreconditionerKind,
        placement: Placement,
        h_inverse: Option<ComplexMatrix>,
    ) -> Result<Self> {
        let n = h.require_square()?;
        let h_chol = Cholesky::new(&h)?;
        let identity = kind == PreconditionerKind::Identity && h == ComplexMatrix::identity(n);
        let (h_left, h_right, weight) = if identity {
            (LinearOp::Identity, LinearOp::Identity, InnerProduct::euclidean(n))
        } else {
            match placement {
                Placement::Left => {
                    let w = match h_inverse {
                        Some(w) => w,
                        None => h_chol.inverse(),
                    };
                    (LinearOp::Dense(h.clone()), LinearOp::Identity, InnerProduct::new(w)?)
                }
                Placement::Right => (
                    LinearOp::Identity,
                    LinearOp::Dense(h.clone()),
                    InnerProduct::from_cholesky(h_chol.clone()),
                ),
                Placement::Split => {
                    let l = h_chol.factor().clone();
                    (LinearOp::Dense(l.adjoint()), LinearOp::Dense(l), InnerProduct::euclidean(n))
                }
            }
        };
        Ok(Self { kind, placement, h, h_chol, h_left, h_right, weight })
    }

    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    pub fn h(&self) -> &ComplexMatrix {
        &self.h
    }

    pub fn h_cholesky(&self) -> &Cholesky {
        &self.h_chol
    }

    pub fn h_left(&self) -> &LinearOp {
        &self.h_left
    }

    pub fn h_right(&self) -> &LinearOp {
        &self.h_right
    }

    pub fn weight(&self) -> &InnerProduct {
        &self.weight
    }

    /// Same `H`, different placement.
    pub fn with_placement(&self, placement: Placement) -> Result<Self> {
        Self::assemble(self.h.clone(), self.kind, placement, None)
    }
}

pub fn build_preconditioner(
    problem: &AssembledProblem,
    kind: PreconditionerKind,
    placement: Placement,
) -> Result<PreconditionerSetup> {
    let m = &problem.m;
    let n = m.require_square()?;
    match kind {
        PreconditionerKind::ExactM => {
            let mc = Cholesky::new(m)?;
            PreconditionerSetup::assemble(mc.inverse(), kind, placement, Some(m.clone()))
        }
        PreconditionerKind::JacobiM => {
            let d: Vec<f64> = m.diag().iter().map(|v| v.re).collect();
            for (i, &v) in d.iter().enumerate() {
                if !(v > 0.0) {
                    return Err(Error::NotPositiveDefinite { pivot: i, value: v });
                }
            }
            let h = ComplexMatrix::from_diag(&d.iter().map(|v| C64::new(1.0 / v, 0.0)).collect::<Vec<_>>());
            let winv = ComplexMatrix::from_diag(&d.iter().map(|&v| C64::new(v, 0.0)).collect::<Vec<_>>());
            PreconditionerSetup::assemble(h, kind, placement, Some(winv))
        }
        PreconditionerKind::BlockJacobiM(nb) => {
            if nb == 0 || nb > n {
                return Err(Error::InvalidSpec(format!("block count {nb} for dimension {n}")));
            }
            let mut h = ComplexMatrix::zeros(n, n);
            let mut winv = ComplexMatrix::zeros(n, n);
            for blk in 0..nb {
                let (s, e) = (blk * n / nb, (blk + 1) * n / nb);
                let sub = ComplexMatrix::from_fn(e - s, e - s, |i, j| m[(s + i, s + j)]);
                let inv = Cholesky::new(&sub)?.inverse();
                for i in 0..e - s {
                    for j in 0..e - s {
                        h[(s + i, s + j)] = inv[(i, j)];
                        winv[(s + i, s + j)] = sub[(i, j)];
                    }
                }
            }
            PreconditionerSetup::assemble(h, kind, placement, Some(winv))
        }
        PreconditionerKind::Identity => {
            PreconditionerSetup::assemble(ComplexMatrix::identity(n), kind, placement, None)
        }
    }
}
