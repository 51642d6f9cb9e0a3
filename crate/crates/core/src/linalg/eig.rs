use super::factor::{hermitize, Cholesky};
use super::matrix::ComplexMatrix;
use super::vector::norm2;
use crate::{Error, Exec, Result, C64};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Largest accepted `||A - A^*|| / ||A||` (or the skew analogue) on input.
const STRUCTURE_TOL: f64 = 1e-11;

/// Relative gap under which two moduli count as a tie when ordering.
const TIE_TOL: f64 = 1e-10;

/// Eigen-decomposition of a Hermitian matrix: ascending values, orthonormal vectors.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Eigenpairs of a generalized problem, ordered by non-increasing modulus.
#[derive(Debug, Clone)]
pub struct EigenPairs {
    pub values: Vec<C64>,
    /// One eigenvector per column, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl EigenPairs {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_modulus(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    pub fn truncate(&mut self, m: usize) {
        if m < self.values.len() {
            self.values.truncate(m);
            self.vectors = self.vectors.columns(0, m);
        }
    }
}

/// How many eigenpairs to return.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigCount {
    All,
    Top(usize),
}

pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianEig> {
    hermitian_eig_with(a, Exec::default())
}

/// Householder tridiagonalisation followed by implicit QL. The input is
/// symmetrised first, so tiny Hermitian defects are tolerated.
pub fn hermitian_eig_with(a: &ComplexMatrix, exec: Exec) -> Result<HermitianEig> {
    let n = a.require_square()?;
    let mut t = a.clone();
    hermitize(&mut t);
    if !t.data().iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::NonFinite("eigenproblem".into()));
    }
    // q is stored transposed: qt row j is column j of Q
    let mut qt = ComplexMatrix::identity(n);
    let mut offdiag = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = (k + 1..n).map(|i| t[(i, k)]).collect();
        let xn = norm2(&x);
        if xn == 0.0 {
            offdiag[k] = ZERO;
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { C64::new(1.0, 0.0) };
        let alpha = -phase * xn;
        let mut v = x;
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vv == 0.0 {
            offdiag[k] = x_first(&t, k);
            continue;
        }
        let beta = 2.0 / vv;
        let m = n - k - 1;
        // p = beta * A22 v
        let p: Vec<C64> = exec.map(m, |i| {
            let row = &t.row(k + 1 + i)[k + 1..];
            row.iter().zip(&v).map(|(a, b)| a * b).sum::<C64>() * beta
        });
        let kk: C64 = v.iter().zip(&p).map(|(a, b)| a.conj() * b).sum::<C64>() * (beta / 2.0);
        let q: Vec<C64> = p.iter().zip(&v).map(|(pi, vi)| pi - kk.re * vi).collect();
        let cols = n;
        exec.for_rows(&mut t.data_mut()[(k + 1) * cols..], cols, |i, row| {
            let (vi, qi) = (v[i], q[i]);
            for j in 0..m {
                row[k + 1 + j] -= vi * q[j].conj() + qi * v[j].conj();
            }
        });
        t[(k + 1, k)] = alpha;
        t[(k, k + 1)] = alpha.conj();
        for i in k + 2..n {
            t[(i, k)] = ZERO;
            t[(k, i)] = ZERO;
        }
        offdiag[k] = alpha;
        // Q <- Q H on columns k+1..n, i.e. rows k+1..n of qt: qt_S <- H^T qt_S
        // (Q H)[r, c] = Q[r, c] - beta (sum_s Q[r, s] v_s) conj(v_c)
        let s: Vec<C64> = exec.map(n, |r| (0..m).map(|j| qt[(k + 1 + j, r)] * v[j]).sum::<C64>() * beta);
        exec.for_rows(&mut qt.data_mut()[(k + 1) * cols..], cols, |j, row| {
            let vc = v[j].conj();
            for (r, entry) in row.iter_mut().enumerate() {
                *entry -= s[r] * vc;
            }
        });
    }
    if n >= 2 {
        offdiag[n - 2] = t[(n - 1, n - 2)];
    }
    let mut d: Vec<f64> = (0..n).map(|i| t[(i, i)].re).collect();
    // unitary diagonal scaling makes the off-diagonal real and non-negative
    let mut phases = vec![C64::new(1.0, 0.0); n];
    let mut e = vec![0.0; n];
    for i in 0..n.saturating_sub(1) {
        let ei = offdiag[i];
        let r = ei.norm();
        e[i] = r;
        phases[i + 1] = if r > 0.0 { phases[i] * (ei / r) } else { phases[i] };
    }
    let mut z: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut c = vec![0.0; n];
            c[j] = 1.0;
            c
        })
        .collect();
    tql2(&mut d, &mut e, &mut z)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    // vectors = Q D Z; column j of Q D is qt row j times phase j
    let cols: Vec<Vec<C64>> = exec.map(n, |c| {
        let zc = &z[order[c]];
        let mut out = vec![ZERO; n];
        for (j, &zj) in zc.iter().enumerate() {
            if zj == 0.0 {
                continue;
            }
            let w = phases[j] * zj;
            for (o, q) in out.iter_mut().zip(qt.row(j)) {
                *o += q * w;
            }
        }
        out
    });
    Ok(HermitianEig { values, vectors: ComplexMatrix::from_columns(n, &cols) })
}

fn x_first(t: &ComplexMatrix, k: usize) -> C64 {
    t[(k + 1, k)]
}

/// Implicit QL on a real symmetric tridiagonal matrix (diagonal `d`,
/// subdiagonal `e[0..n-1]`), accumulating rotations into the columns `z`.
fn tql2(d: &mut [f64], e: &mut [f64], z: &mut [Vec<f64>]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 60 {
                    return Err(Error::NoConvergence);
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;
                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    let (lo, hi) = z.split_at_mut(i + 1);
                    let (zi, zi1) = (&mut lo[i], &mut hi[0]);
                    for k in 0..n {
                        let hk = zi1[k];
                        zi1[k] = s * zi[k] + c * hk;
                        zi[k] = c * zi[k] - s * hk;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Sorts eigenpairs by non-increasing modulus. Near-ties (conjugate pairs) are
/// broken by descending imaginary part, then descending real part. Each
/// vector is phase-normalised so that its largest entry is real positive.
pub fn order_eigenpairs(values: Vec<C64>, vectors: ComplexMatrix) -> EigenPairs {
    let n = values.len();
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.norm()));
    let tol = TIE_TOL * scale.max(f64::MIN_POSITIVE);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| values[b].norm().total_cmp(&values[a].norm()));
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[idx[end - 1]].norm() - values[idx[end]].norm() <= tol {
            end += 1;
        }
        idx[start..end].sort_by(|&a, &b| {
            values[b].im.total_cmp(&values[a].im).then(values[b].re.total_cmp(&values[a].re))
        });
        start = end;
    }
    let rows = vectors.rows();
    let cols: Vec<Vec<C64>> = idx
        .iter()
        .map(|&j| {
            let mut c = vectors.column(j);
            let (pos, _) = c
                .iter()
                .enumerate()
                .fold((0usize, -1.0f64), |acc, (i, v)| if v.norm() > acc.1 + 1e-12 * acc.1.abs() { (i, v.norm()) } else { acc });
            let big = c[pos];
            if big.norm() > 0.0 {
                let ph = big.conj() / big.norm();
                for v in c.iter_mut() {
                    *v *= ph;
                }
                c[pos] = C64::new(c[pos].norm(), 0.0);
            }
            c
        })
        .collect();
    EigenPairs {
        values: idx.iter().map(|&j| values[j]).collect(),
        vectors: ComplexMatrix::from_columns(rows, &cols),
    }
}

fn take(mut pairs: EigenPairs, count: EigCount) -> EigenPairs {
    if let EigCount::Top(m) = count {
        pairs.truncate(m);
    }
    pairs
}

fn check_dims(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<usize> {
    let n = a.require_square()?;
    let nb = b.require_square()?;
    if n != nb {
        return Err(Error::DimensionMismatch(format!("pencil of sizes {n} and {nb}")));
    }
    Ok(n)
}

/// `M x = lambda B x` for Hermitian `M` and HPD `B`. Eigenvectors are
/// `B`-orthonormal.
pub fn hermitian_gen_eig(m: &ComplexMatrix, b: &ComplexMatrix, count: EigCount) -> Result<EigenPairs> {
    check_dims(m, b)?;
    let defect = m.hermitian_defect();
    if defect > STRUCTURE_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let l = Cholesky::new(b)?;
    // C = L^{-1} M L^{-*} = L^{-1} (L^{-1} M)^*
    let y = l.solve_lower_matrix(m);
    let c = l.solve_lower_matrix(&y.adjoint());
    let eig = hermitian_eig(&c)?;
    let x = l.solve_upper_matrix(&eig.vectors);
    let vals = eig.values.iter().map(|&v| C64::new(v, 0.0)).collect();
    Ok(take(order_eigenpairs(vals, x), count))
}

/// `N x = lambda B x` for skew-Hermitian `N` and HPD `B`. Eigenvalues are
/// purely imaginary; eigenvectors are `B`-orthonormal.
pub fn skew_gen_eig(n: &ComplexMatrix, b: &ComplexMatrix, count: EigCount) -> Result<EigenPairs> {
    check_dims(n, b)?;
    let defect = n.skew_defect();
    if defect > STRUCTURE_TOL {
        return Err(Error::NotSkew(defect));
    }
    let l = Cholesky::new(b)?;
    // K = L^{-1} N L^{-*} = -L^{-1} (L^{-1} N)^*, S = i K is Hermitian
    let y = l.solve_lower_matrix(n);
    let k = l.solve_lower_matrix(&y.adjoint());
    let s = k.scale(C64::new(0.0, -1.0));
    let eig = hermitian_eig(&s)?;
    let x = l.solve_upper_matrix(&eig.vectors);
    Ok(take(order_eigenpairs(skew_values(&eig.values), x), count))
}

fn skew_values(mu: &[f64]) -> Vec<C64> {
    // S u = mu u with S = i K gives K u = -i mu u
    mu.iter().map(|&m| C64::new(0.0, -m)).collect()
}

/// `N x = lambda H^{-1} x` given `H = L L^*`, without forming `H^{-1}`.
/// Eigenvectors are `H^{-1}`-orthonormal.
pub fn skew_pencil_precond(n: &ComplexMatrix, h: &Cholesky, count: EigCount) -> Result<EigenPairs> {
    n.require_square()?;
    if n.rows() != h.dim() {
        return Err(Error::DimensionMismatch("skew pencil".into()));
    }
    let defect = n.skew_defect();
    if defect > STRUCTURE_TOL {
        return Err(Error::NotSkew(defect));
    }
    // L^* N L is skew; x = L u
    let nl = h.lower_matrix_right(n);
    let k = h.upper_matrix(&nl);
    let s = k.scale(C64::new(0.0, 1.0));
    let eig = hermitian_eig(&s)?;
    let x = h.lower_matrix(&eig.vectors);
    let vals = eig.values.iter().map(|&m| C64::new(0.0, -m)).collect();
    Ok(take(order_eigenpairs(vals, x), count))
}

/// Eigenvalues of `H M` (equivalently `M x = lambda H^{-1} x`), via `L^* M L`.
pub fn hermitian_pencil_precond(m: &ComplexMatrix, h: &Cholesky) -> Result<HermitianEig> {
    m.require_square()?;
    if m.rows() != h.dim() {
        return Err(Error::DimensionMismatch("hermitian pencil".into()));
    }
    let defect = m.hermitian_defect();
    if defect > STRUCTURE_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let ml = h.lower_matrix_right(m);
    let c = h.upper_matrix(&ml);
    hermitian_eig(&c)
}

impl Cholesky {
    /// `X L`.
    pub fn lower_matrix_right(&self, x: &ComplexMatrix) -> ComplexMatrix {
        x.matmul(self.factor())
    }
}
