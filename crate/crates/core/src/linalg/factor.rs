use super::matrix::ComplexMatrix;
use super::vector::norm2;
use crate::{Error, Result, C64};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Hermitian defect accepted on input to factorisations that require HPD matrices.
const HERMITIAN_TOL: f64 = 1e-11;

/// `B = L L^*` with `L` lower triangular and positive real diagonal.
#[derive(Debug, Clone)]
pub struct Cholesky {
    l: ComplexMatrix,
}

impl Cholesky {
    pub fn new(b: &ComplexMatrix) -> Result<Self> {
        let n = b.require_square()?;
        let defect = b.hermitian_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let mut l = ComplexMatrix::zeros(n, n);
        for j in 0..n {
            let mut d = b[(j, j)].re;
            for k in 0..j {
                d -= l[(j, k)].norm_sqr();
            }
            if !(d > 0.0) || !d.is_finite() {
                return Err(Error::NotPositiveDefinite { pivot: j, value: d });
            }
            let djj = d.sqrt();
            l[(j, j)] = C64::new(djj, 0.0);
            for i in j + 1..n {
                let mut s = b[(i, j)];
                let (ri, rj) = (l.row(i), l.row(j));
                for k in 0..j {
                    s -= ri[k] * rj[k].conj();
                }
                l[(i, j)] = s / djj;
            }
        }
        Ok(Self { l })
    }

    /// Cholesky of a positive diagonal; `d` must be positive.
    pub fn from_diagonal(d: &[f64]) -> Result<Self> {
        for (i, &v) in d.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::NotPositiveDefinite { pivot: i, value: v });
            }
        }
        let l = ComplexMatrix::from_diag(&d.iter().map(|v| C64::new(v.sqrt(), 0.0)).collect::<Vec<_>>());
        Ok(Self { l })
    }

    pub fn identity(n: usize) -> Self {
        Self { l: ComplexMatrix::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.l.rows()
    }

    pub fn factor(&self) -> &ComplexMatrix {
        &self.l
    }

    /// `L x`.
    pub fn apply_lower(&self, x: &[C64]) -> Vec<C64> {
        let n = self.dim();
        (0..n).map(|i| (0..=i).map(|k| self.l[(i, k)] * x[k]).sum()).collect()
    }

    /// `L^* x`.
    pub fn apply_upper(&self, x: &[C64]) -> Vec<C64> {
        let n = self.dim();
        let mut y = vec![ZERO; n];
        for k in 0..n {
            let xk = x[k];
            let row = self.l.row(k);
            for i in 0..=k {
                y[i] += row[i].conj() * xk;
            }
        }
        y
    }

    /// `L^{-1} b`.
    pub fn solve_lower(&self, b: &[C64]) -> Vec<C64> {
        let n = self.dim();
        let mut x = b.to_vec();
        for i in 0..n {
            let row = self.l.row(i);
            let mut s = x[i];
            for k in 0..i {
                s -= row[k] * x[k];
            }
            x[i] = s / row[i];
        }
        x
    }

    /// `L^{-*} b`.
    pub fn solve_upper(&self, b: &[C64]) -> Vec<C64> {
        let n = self.dim();
        let mut x = b.to_vec();
        for i in (0..n).rev() {
            x[i] /= self.l[(i, i)].conj();
            let xi = x[i];
            let row = self.l.row(i);
            for k in 0..i {
                x[k] -= row[k].conj() * xi;
            }
        }
        x
    }

    /// `B^{-1} b`.
    pub fn solve(&self, b: &[C64]) -> Vec<C64> {
        self.solve_upper(&self.solve_lower(b))
    }

    /// `B` itself.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.l.matmul(&self.l.adjoint())
    }

    pub fn inverse(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut inv = map_columns(&ComplexMatrix::identity(n), |c| self.solve(c));
        hermitize(&mut inv);
        inv
    }

    /// `L^{-1} X`, column by column.
    pub fn solve_lower_matrix(&self, x: &ComplexMatrix) -> ComplexMatrix {
        map_columns(x, |c| self.solve_lower(c))
    }

    /// `L^{-*} X`.
    pub fn solve_upper_matrix(&self, x: &ComplexMatrix) -> ComplexMatrix {
        map_columns(x, |c| self.solve_upper(c))
    }

    /// `L X`.
    pub fn lower_matrix(&self, x: &ComplexMatrix) -> ComplexMatrix {
        self.l.matmul(x)
    }

    /// `L^* X`.
    pub fn upper_matrix(&self, x: &ComplexMatrix) -> ComplexMatrix {
        map_columns(x, |c| self.apply_upper(c))
    }
}

/// Replaces `A` by `(A + A^*)/2`.
pub(crate) fn hermitize(a: &mut ComplexMatrix) {
    let n = a.rows();
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in i + 1..n {
            let h = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = h;
            a[(j, i)] = h.conj();
        }
    }
}

pub(crate) fn map_columns(x: &ComplexMatrix, f: impl Fn(&[C64]) -> Vec<C64> + Sync) -> ComplexMatrix {
    let cols: Vec<Vec<C64>> = crate::Exec::default().map(x.cols(), |j| f(&x.column(j)));
    let rows = cols.first().map_or(x.rows(), |c| c.len());
    ComplexMatrix::from_columns(rows, &cols)
}

/// LU factorisation with partial pivoting.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    norm_one: f64,
}

impl Lu {
    pub fn new(a: &ComplexMatrix) -> Result<Self> {
        let n = a.require_square()?;
        let norm_one = a.norm_one();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |acc, v| if v.1 > acc.1 { v } else { acc });
            if pmax == 0.0 || !pmax.is_finite() {
                return Err(Error::Singular);
            }
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f == ZERO {
                    continue;
                }
                for j in k + 1..n {
                    let t = lu[(k, j)];
                    lu[(i, j)] -= f * t;
                }
            }
        }
        Ok(Self { lu, perm, norm_one })
    }

    pub fn dim(&self) -> usize {
        self.lu.rows()
    }

    pub fn solve(&self, b: &[C64]) -> Vec<C64> {
        let n = self.dim();
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let mut s = x[i];
            for k in 0..i {
                s -= row[k] * x[k];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let mut s = x[i];
            for k in i + 1..n {
                s -= row[k] * x[k];
            }
            x[i] = s / row[i];
        }
        x
    }

    pub fn solve_matrix(&self, b: &ComplexMatrix) -> ComplexMatrix {
        map_columns(b, |c| self.solve(c))
    }

    pub fn inverse(&self) -> ComplexMatrix {
        self.solve_matrix(&ComplexMatrix::identity(self.dim()))
    }

    /// Reciprocal 1-norm condition number, from the explicit inverse.
    pub fn rcond(&self) -> f64 {
        let inv_norm = self.inverse().norm_one();
        if self.norm_one == 0.0 || !inv_norm.is_finite() || inv_norm == 0.0 {
            return 0.0;
        }
        1.0 / (self.norm_one * inv_norm)
    }
}

/// Householder QR of a tall matrix, used for small least-squares problems.
#[derive(Debug, Clone)]
pub struct HouseholderQr {
    qr: ComplexMatrix,
    vs: Vec<Vec<C64>>,
    betas: Vec<f64>,
}

impl HouseholderQr {
    pub fn new(a: &ComplexMatrix) -> Self {
        let (m, n) = (a.rows(), a.cols());
        let mut qr = a.clone();
        let mut vs = Vec::with_capacity(n);
        let mut betas = Vec::with_capacity(n);
        for k in 0..n.min(m) {
            let x: Vec<C64> = (k..m).map(|i| qr[(i, k)]).collect();
            let xn = norm2(&x);
            let mut v = x.clone();
            if xn == 0.0 {
                vs.push(v);
                betas.push(0.0);
                continue;
            }
            let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { C64::new(1.0, 0.0) };
            let alpha = -phase * xn;
            v[0] -= alpha;
            let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            let beta = if vv > 0.0 { 2.0 / vv } else { 0.0 };
            for j in k..n {
                let s: C64 = (k..m).map(|i| v[i - k].conj() * qr[(i, j)]).sum::<C64>() * beta;
                for i in k..m {
                    let t = v[i - k];
                    qr[(i, j)] -= t * s;
                }
            }
            vs.push(v);
            betas.push(beta);
        }
        Self { qr, vs, betas }
    }

    /// `|R_jj|`.
    pub fn r_diag(&self) -> Vec<f64> {
        (0..self.vs.len()).map(|j| self.qr[(j, j)].norm()).collect()
    }

    /// `Q^* b`.
    pub fn apply_qt(&self, b: &[C64]) -> Vec<C64> {
        let m = self.qr.rows();
        let mut y = b.to_vec();
        for (k, (v, &beta)) in self.vs.iter().zip(&self.betas).enumerate() {
            let s: C64 = (k..m).map(|i| v[i - k].conj() * y[i]).sum::<C64>() * beta;
            for i in k..m {
                y[i] -= v[i - k] * s;
            }
        }
        y
    }

    /// Norm of the least-squares residual `min_y ||b - A y||` using the first
    /// `k` columns.
    pub fn residual_norm(&self, b: &[C64], k: usize) -> f64 {
        let y = self.apply_qt(b);
        norm2(&y[k.min(y.len())..])
    }

    /// Least-squares solution over the first `k` columns.
    pub fn solve(&self, b: &[C64], k: usize) -> Vec<C64> {
        let y = self.apply_qt(b);
        let mut x = vec![ZERO; k];
        for i in (0..k).rev() {
            let mut s = y[i];
            for j in i + 1..k {
                s -= self.qr[(i, j)] * x[j];
            }
            x[i] = s / self.qr[(i, i)];
        }
        x
    }
}
