use crate::linalg::{Cholesky, ComplexMatrix, Lu};
use crate::{Error, Result, C64};

/// Reciprocal condition number under which a core matrix counts as singular.
pub const CORE_RCOND_MIN: f64 = 1e-12;

/// `P_D = I - A Z (Y^* A Z)^{-1} Y^*` and `Q_D = I - Z (Y^* A Z)^{-1} Y^* A`.
#[derive(Debug, Clone)]
pub struct DeflationOperator {
    y: ComplexMatrix,
    z: ComplexMatrix,
    az: ComplexMatrix,
    core: Option<Lu>,
    rcond: f64,
    rcond_h: Option<f64>,
}

impl DeflationOperator {
    /// `m = 0`: both projectors are the identity.
    pub fn trivial(n: usize) -> Self {
        Self {
            y: ComplexMatrix::zeros(n, 0),
            z: ComplexMatrix::zeros(n, 0),
            az: ComplexMatrix::zeros(n, 0),
            core: None,
            rcond: 1.0,
            rcond_h: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.y.rows()
    }

    pub fn rank(&self) -> usize {
        self.y.cols()
    }

    pub fn y(&self) -> &ComplexMatrix {
        &self.y
    }

    pub fn z(&self) -> &ComplexMatrix {
        &self.z
    }

    /// Reciprocal 1-norm condition number of `Y^* A Z`.
    pub fn core_rcond(&self) -> f64 {
        self.rcond
    }

    /// Reciprocal condition number of `Y^* H^{-1} Z`, when `H` was supplied.
    pub fn h_core_rcond(&self) -> Option<f64> {
        self.rcond_h
    }

    /// `(Y^* A Z)^{-1} Y^* w`.
    fn coeffs(&self, w: &[C64]) -> Option<Vec<C64>> {
        self.core.as_ref().map(|lu| lu.solve(&self.y.adjoint_matvec(w)))
    }

    pub fn apply_p(&self, w: &[C64]) -> Vec<C64> {
        let mut out = w.to_vec();
        if let Some(c) = self.coeffs(w) {
            let t = self.az.matvec(&c);
            for (o, t) in out.iter_mut().zip(t) {
                *o -= t;
            }
        }
        out
    }

    /// `Q_D w`; needs `A` for the product `A w`.
    pub fn apply_q(&self, a: &ComplexMatrix, w: &[C64]) -> Vec<C64> {
        let mut out = w.to_vec();
        if self.core.is_some() {
            let c = self.coeffs(&a.matvec(w)).unwrap_or_default();
            let t = self.z.matvec(&c);
            for (o, t) in out.iter_mut().zip(t) {
                *o -= t;
            }
        }
        out
    }

    pub fn p_matrix(&self) -> ComplexMatrix {
        let n = self.dim();
        let cols: Vec<Vec<C64>> = (0..n).map(|j| self.apply_p(&unit(n, j))).collect();
        ComplexMatrix::from_columns(n, &cols)
    }

    pub fn q_matrix(&self, a: &ComplexMatrix) -> ComplexMatrix {
        let n = self.dim();
        let cols: Vec<Vec<C64>> = (0..n).map(|j| self.apply_q(a, &unit(n, j))).collect();
        ComplexMatrix::from_columns(n, &cols)
    }

    /// Recovers the solution of `A x = b` from a solution `xt` of the deflated
    /// system `P_D A xt = P_D b`: `x = Q_D xt + Z (Y^* A Z)^{-1} Y^* b`.
    pub fn recover_solution(&self, a: &ComplexMatrix, xt: &[C64], b: &[C64]) -> Vec<C64> {
        let mut x = self.apply_q(a, xt);
        if let Some(c) = self.coeffs(b) {
            let t = self.z.matvec(&c);
            for (o, t) in x.iter_mut().zip(t) {
                *o += t;
            }
        }
        x
    }
}

fn unit(n: usize, j: usize) -> Vec<C64> {
    let mut e = vec![C64::new(0.0, 0.0); n];
    e[j] = C64::new(1.0, 0.0);
    e
}

fn checked_lu(core: &ComplexMatrix) -> Result<(Lu, f64)> {
    let lu = Lu::new(core).map_err(|_| Error::SingularCore { rcond: 0.0 })?;
    let rcond = lu.rcond();
    if !(rcond >= CORE_RCOND_MIN) {
        return Err(Error::SingularCore { rcond });
    }
    Ok((lu, rcond))
}

/// Builds the projector pair for the deflation spaces `Y`, `Z` (both `n x m`).
///
/// When `h` is given the second condition, invertibility of `Y^* H^{-1} Z`, is
/// checked as well. `m = 0` yields the identity projectors.
pub fn build_projectors(
    a: &ComplexMatrix,
    y: &ComplexMatrix,
    z: &ComplexMatrix,
    h: Option<&Cholesky>,
) -> Result<DeflationOperator> {
    let n = a.require_square()?;
    if y.rows() != n || z.rows() != n || y.cols() != z.cols() {
        return Err(Error::DimensionMismatch(format!(
            "Y is {}x{}, Z is {}x{}, A is {n}x{n}",
            y.rows(),
            y.cols(),
            z.rows(),
            z.cols()
        )));
    }
    if y.cols() == 0 {
        return Ok(DeflationOperator::trivial(n));
    }
    if y.cols() > n {
        return Err(Error::DimensionMismatch("deflation space wider than the system".into()));
    }
    let az = a.matmul(z);
    let (lu, rcond) = checked_lu(&y.adjoint().matmul(&az))?;
    let rcond_h = match h {
        Some(hc) => {
            let hinv_z = ComplexMatrix::from_columns(n, &(0..z.cols()).map(|j| hc.solve(&z.column(j))).collect::<Vec<_>>());
            Some(checked_lu(&y.adjoint().matmul(&hinv_z))?.1)
        }
        None => None,
    };
    Ok(DeflationOperator { y: y.clone(), z: z.clone(), az, core: Some(lu), rcond, rcond_h })
}
