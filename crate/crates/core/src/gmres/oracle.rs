use super::{check_inputs, Operator};
use crate::deflation::DeflationOperator;
use crate::linalg::{vector, ComplexMatrix, HouseholderQr};
use crate::problem::PreconditionerSetup;
use crate::{Error, Result, C64};

/// `|R_jj|` relative to the largest diagonal entry below which the Krylov
/// basis is declared rank deficient.
const RANK_TOL: f64 = 1e-13;

/// Brute-force GMRES residual after `k` steps (zero initial guess):
/// `min ||H_L P_D b - Op y||_W` over the Krylov space of `Op = H_L P_D A H_R`.
///
/// The space is spanned explicitly by the shifted, column-normalised vectors
/// `(Op - sigma)^j s` with `sigma = tr(Op)/n`, and the weighted least-squares
/// problem is solved by Householder QR. No Arnoldi recurrence is involved.
pub fn krylov_ls_oracle(
    a: &ComplexMatrix,
    b: &[C64],
    setup: &PreconditionerSetup,
    defl: Option<&DeflationOperator>,
    k: usize,
) -> Result<f64> {
    let n = check_inputs(a, b, setup, defl)?;
    let op = Operator { a, setup, defl };
    let ip = setup.weight();
    let r0 = op.left(b);
    let r0t = ip.to_euclidean(&r0);
    let beta = vector::norm2(&r0t);
    if k == 0 || beta == 0.0 {
        return Ok(beta);
    }
    let k = k.min(n);
    let mut trace = C64::new(0.0, 0.0);
    for j in 0..n {
        let mut e = vec![C64::new(0.0, 0.0); n];
        e[j] = C64::new(1.0, 0.0);
        trace += op.apply(&e)[j];
    }
    let sigma = trace / n as f64;
    let mut s: Vec<C64> = r0.iter().map(|v| v / vector::norm2(&r0)).collect();
    let mut images: Vec<Vec<C64>> = Vec::with_capacity(k);
    for _ in 0..k {
        let img = op.apply(&s);
        let mut next: Vec<C64> = img.iter().zip(&s).map(|(o, v)| o - sigma * v).collect();
        images.push(ip.to_euclidean(&img));
        let nn = vector::norm2(&next);
        if nn > 0.0 {
            vector::scale(C64::new(1.0 / nn, 0.0), &mut next);
        }
        s = next;
    }
    let cmat = ComplexMatrix::from_columns(n, &images);
    let qr = HouseholderQr::new(&cmat);
    let diag = qr.r_diag();
    let dmax = diag.iter().cloned().fold(0.0, f64::max);
    if let Some(step) = diag.iter().position(|&d| d <= RANK_TOL * dmax) {
        let residual = qr.residual_norm(&r0t, step);
        return Err(Error::LuckyBreakdown { step, residual });
    }
    Ok(qr.residual_norm(&r0t, k))
}
