//! Weighted GMRES with left/right/split preconditioning and optional deflation.
//!
//! GMRES is applied to `H_L P_D A H_R u = H_L P_D b` and minimises
//! `||H_L P_D (b - A x_k)||_W`. The Arnoldi basis is kept in the coordinates
//! `L_W^* v` (with `W = L_W L_W^*`), where the `W`-inner product is Euclidean.

mod oracle;

pub use oracle::krylov_ls_oracle;

use crate::deflation::DeflationOperator;
use crate::linalg::{vector, ComplexMatrix};
use crate::problem::PreconditionerSetup;
use crate::{Error, Result, C64};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Relative size of the new Arnoldi vector below which the step counts as a breakdown.
const BREAKDOWN_TOL: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct GmresConfig {
    /// Stop once `||H_L r_k||_W <= tol * ||H_L b||_W`.
    pub tol: f64,
    pub max_it: usize,
    pub x0: Option<Vec<C64>>,
}

impl Default for GmresConfig {
    fn default() -> Self {
        Self { tol: 1e-10, max_it: 500, x0: None }
    }
}

impl GmresConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidSpec(format!("tol = {} (need tol > 0)", self.tol)));
        }
        if self.max_it == 0 {
            return Err(Error::InvalidSpec("max_it must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct GmresTrace {
    /// `||H_L P_D r_k||_W` for `k = 0, 1, ...`.
    pub residual_norms: Vec<f64>,
    /// Iteration at which the tolerance was met, if it was.
    pub iterations_to_tol: Option<usize>,
    /// Approximate solution of the original system `A x = b`.
    pub solution: Vec<C64>,
    /// `||H_L b||_W`, the reference of the stopping test.
    pub reference_norm: f64,
}

impl GmresTrace {
    /// Residual norms divided by the initial one.
    pub fn relative_residuals(&self) -> Vec<f64> {
        let r0 = self.residual_norms.first().copied().unwrap_or(0.0);
        self.residual_norms.iter().map(|r| if r0 > 0.0 { r / r0 } else { 0.0 }).collect()
    }
}

/// The preconditioned (and possibly deflated) operator `H_L P_D A H_R`.
pub(crate) struct Operator<'a> {
    pub a: &'a ComplexMatrix,
    pub setup: &'a PreconditionerSetup,
    pub defl: Option<&'a DeflationOperator>,
}

impl Operator<'_> {
    pub fn apply(&self, u: &[C64]) -> Vec<C64> {
        let x = self.setup.h_right().apply(u);
        self.left(&self.a.matvec(&x))
    }

    /// `H_L P_D r`.
    pub fn left(&self, r: &[C64]) -> Vec<C64> {
        let r = match self.defl {
            Some(d) => d.apply_p(r),
            None => r.to_vec(),
        };
        self.setup.h_left().apply(&r)
    }
}

fn check_inputs(a: &ComplexMatrix, b: &[C64], setup: &PreconditionerSetup, defl: Option<&DeflationOperator>) -> Result<usize> {
    let n = a.require_square()?;
    if b.len() != n || setup.dim() != n || defl.is_some_and(|d| d.dim() != n) {
        return Err(Error::DimensionMismatch("system, preconditioner and deflation sizes differ".into()));
    }
    if !vector::is_finite(b) {
        return Err(Error::NonFinite("right-hand side".into()));
    }
    Ok(n)
}

/// Runs GMRES without restarts until the tolerance or `max_it` is reached.
pub fn gmres_solve(
    a: &ComplexMatrix,
    b: &[C64],
    setup: &PreconditionerSetup,
    defl: Option<&DeflationOperator>,
    cfg: &GmresConfig,
) -> Result<GmresTrace> {
    cfg.validate()?;
    let n = check_inputs(a, b, setup, defl)?;
    let op = Operator { a, setup, defl };
    let ip = setup.weight();
    let x0 = match &cfg.x0 {
        Some(x) if x.len() != n => return Err(Error::DimensionMismatch("initial guess".into())),
        Some(x) => x.clone(),
        None => vec![ZERO; n],
    };
    let reference = ip.norm(&setup.h_left().apply(b));
    let r0 = vector::sub(b, &a.matvec(&x0));
    let t0 = ip.to_euclidean(&op.left(&r0));
    let beta = vector::norm2(&t0);
    let mut norms = vec![beta];
    let target = cfg.tol * reference;
    let finish = |y: &[C64], basis: &[Vec<C64>]| -> Vec<C64> {
        let mut u = vec![ZERO; n];
        for (yj, v) in y.iter().zip(basis) {
            vector::axpy(*yj, v, &mut u);
        }
        let mut x = vector::add(&x0, &setup.h_right().apply(&u));
        if let Some(d) = defl {
            x = d.recover_solution(a, &x, b);
        }
        x
    };
    if beta <= target || beta == 0.0 {
        return Ok(GmresTrace {
            residual_norms: norms,
            iterations_to_tol: Some(0),
            solution: finish(&[], &[]),
            reference_norm: reference,
        });
    }
    let max_it = cfg.max_it.min(n);
    // orthonormal basis in transformed coordinates, and in original coordinates
    let mut vt: Vec<Vec<C64>> = vec![t0.iter().map(|v| v / beta).collect()];
    let mut vs: Vec<Vec<C64>> = vec![ip.from_euclidean(&vt[0])];
    let mut r: Vec<Vec<C64>> = Vec::new(); // columns of the rotated Hessenberg matrix
    let mut rot: Vec<(f64, C64)> = Vec::new();
    let mut g = vec![C64::new(beta, 0.0)];
    let mut converged = None;
    for j in 0..max_it {
        let w = ip.to_euclidean(&op.apply(&vs[j]));
        let wnorm = vector::norm2(&w);
        let mut w = w;
        let mut h = vec![ZERO; j + 2];
        let mut before = wnorm;
        for pass in 0..2 {
            for (i, q) in vt.iter().enumerate() {
                let c = vector::dot(q, &w);
                h[i] += c;
                vector::axpy(-c, q, &mut w);
            }
            let after = vector::norm2(&w);
            if pass == 0 && after >= before / std::f64::consts::SQRT_2 {
                break;
            }
            before = after;
        }
        let hn = vector::norm2(&w);
        h[j + 1] = C64::new(hn, 0.0);
        for (i, &(c, s)) in rot.iter().enumerate() {
            let (a0, a1) = (h[i], h[i + 1]);
            h[i] = c * a0 + s * a1;
            h[i + 1] = -s.conj() * a0 + c * a1;
        }
        let (c, s, rr) = givens(h[j], h[j + 1]);
        h[j] = rr;
        h[j + 1] = ZERO;
        rot.push((c, s));
        let gj = g[j];
        g[j] = c * gj;
        g.push(-s.conj() * gj);
        let res = g[j + 1].norm();
        r.push(h);
        let fail = |residual: f64| match defl {
            Some(_) => Error::SingularProjector { step: j + 1 },
            None => Error::Breakdown { step: j + 1, residual },
        };
        if rr.norm() <= BREAKDOWN_TOL * wnorm.max(f64::MIN_POSITIVE) {
            // the new column adds nothing: the least-squares problem lost rank
            return Err(fail(norms[j]));
        }
        norms.push(res);
        if res <= target {
            converged = Some(j + 1);
            break;
        }
        if hn <= BREAKDOWN_TOL * wnorm {
            // invariant subspace without reaching the tolerance
            return Err(fail(res));
        }
        if j + 1 < max_it {
            let next: Vec<C64> = w.iter().map(|v| v / hn).collect();
            vs.push(ip.from_euclidean(&next));
            vt.push(next);
        }
    }
    let k = r.len();
    let mut y = vec![ZERO; k];
    for i in (0..k).rev() {
        let mut s = g[i];
        for (jj, col) in r.iter().enumerate().skip(i + 1) {
            s -= col[i] * y[jj];
        }
        y[i] = s / r[i][i];
    }
    Ok(GmresTrace {
        residual_norms: norms,
        iterations_to_tol: converged,
        solution: finish(&y, &vs),
        reference_norm: reference,
    })
}

/// Complex Givens rotation `[c s; -conj(s) c]` with real `c` zeroing `b`.
fn givens(a: C64, b: C64) -> (f64, C64, C64) {
    let (na, nb) = (a.norm(), b.norm());
    if nb == 0.0 {
        return (1.0, ZERO, a);
    }
    if na == 0.0 {
        // rotate b onto the first slot
        return (0.0, b.conj() / nb, C64::new(nb, 0.0));
    }
    let t = na.hypot(nb);
    let c = na / t;
    let phase = a / na;
    let s = phase * b.conj() / t;
    (c, s, phase * t)
}
