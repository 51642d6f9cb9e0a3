use std::f64::consts::PI;

use super::lp;
use crate::{Error, Result, C64};

#[derive(Debug, Clone)]
pub struct OracleOptions {
    pub n_boundary: usize,
    /// Initial number of rotation angles per boundary point.
    pub n_rot: usize,
    /// Allow complex coefficients (the real restriction is exact by symmetry).
    pub complex: bool,
    /// Stop once `max |q| - t` falls below this.
    pub tol: f64,
    pub max_rounds: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self { n_boundary: 512, n_rot: 64, complex: false, tol: 1e-8, max_rounds: 100 }
    }
}

#[derive(Debug, Clone)]
pub struct OracleSolution {
    /// `max |q(z)|` over the sampled boundary for the computed polynomial.
    pub value: f64,
    /// Optimal value of the last linear program (a lower bound for `value`).
    pub lp_value: f64,
    /// `q(z) = 1 + Σ_j coeffs[j-1] z^j`.
    pub coeffs: Vec<C64>,
    pub rounds: usize,
}

/// Points on the boundary of `[1, μ] + i[-ρ, ρ]`, corners included, spread
/// over the sides in proportion to their lengths.
pub fn boundary_samples(mu: f64, rho: f64, n: usize) -> Vec<C64> {
    let corners = [C64::new(mu, -rho), C64::new(mu, rho), C64::new(1.0, rho), C64::new(1.0, -rho)];
    let perimeter = 2.0 * (mu - 1.0) + 4.0 * rho;
    if perimeter == 0.0 {
        return vec![C64::new(1.0, 0.0)];
    }
    let mut pts = Vec::with_capacity(n + 4);
    for s in 0..4 {
        let (p, q) = (corners[s], corners[(s + 1) % 4]);
        let len = (q - p).norm();
        if len == 0.0 {
            continue;
        }
        let m = ((n as f64 * len / perimeter).round() as usize).max(1);
        for j in 0..m {
            pts.push(p + (q - p) * (j as f64 / m as f64));
        }
    }
    pts
}

/// `K_k` over the sampled boundary, by cutting planes on
/// `min t` subject to `Re(e^{iθ} q(z)) ≤ t`.
pub fn minmax_oracle(mu: f64, rho: f64, k: usize) -> Result<f64> {
    Ok(minmax_oracle_with(mu, rho, k, &OracleOptions::default())?.value)
}

pub fn minmax_oracle_with(mu: f64, rho: f64, k: usize, opts: &OracleOptions) -> Result<OracleSolution> {
    if !(mu >= 1.0) || !mu.is_finite() || !(rho >= 0.0) || !rho.is_finite() {
        return Err(Error::DegenerateRectangle(format!("mu = {mu}, rho = {rho}")));
    }
    if k > 8 {
        return Err(Error::InvalidSpec(format!("oracle degree {k} > 8")));
    }
    if opts.n_boundary < 4 || opts.n_rot < 3 {
        return Err(Error::InvalidSpec("oracle needs n_boundary ≥ 4 and n_rot ≥ 3".into()));
    }
    if k == 0 {
        return Ok(OracleSolution { value: 1.0, lp_value: 1.0, coeffs: Vec::new(), rounds: 0 });
    }
    let radius = (mu * mu + rho * rho).sqrt();
    let pts = boundary_samples(mu, rho, opts.n_boundary);
    // powers (z/R)^j, j = 1..=k
    let powers: Vec<Vec<C64>> = pts
        .iter()
        .map(|&z| {
            let zeta = z / radius;
            let mut p = Vec::with_capacity(k);
            let mut acc = C64::new(1.0, 0.0);
            for _ in 0..k {
                acc *= zeta;
                p.push(acc);
            }
            p
        })
        .collect();
    let nvar = if opts.complex { 2 * k } else { k };
    let column = |b: usize, theta: f64| -> (f64, Vec<f64>) {
        let rot = C64::from_polar(1.0, theta);
        let mut col = Vec::with_capacity(nvar + 1);
        col.push(1.0);
        for p in &powers[b] {
            col.push((rot * p).re);
        }
        if opts.complex {
            for p in &powers[b] {
                col.push(-(rot * p).im);
            }
        }
        (-theta.cos(), col)
    };
    let mut cost = Vec::new();
    let mut cols = Vec::new();
    for b in 0..pts.len() {
        for l in 0..opts.n_rot {
            let (c, col) = column(b, 2.0 * PI * l as f64 / opts.n_rot as f64);
            cost.push(c);
            cols.push(col);
        }
    }
    let mut rhs = vec![0.0; nvar + 1];
    rhs[0] = 1.0;
    let eval = |x: &[f64], b: usize| -> C64 {
        let mut q = C64::new(1.0, 0.0);
        for (j, p) in powers[b].iter().enumerate() {
            let coeff = if opts.complex { C64::new(x[j], x[k + j]) } else { C64::new(x[j], 0.0) };
            q += coeff * p;
        }
        q
    };
    let mut rounds = 0;
    loop {
        rounds += 1;
        let sol = lp::solve(&cost, &cols, &rhs)?;
        // primal solution from the duals: t = -w_0, x = w_1..
        let t = -sol.duals[0];
        let x = &sol.duals[1..];
        let values: Vec<C64> = (0..pts.len()).map(|b| eval(x, b)).collect();
        let max = values.iter().map(|q| q.norm()).fold(0.0, f64::max);
        if max - t < opts.tol || rounds >= opts.max_rounds {
            let coeffs = (0..k)
                .map(|j| {
                    let c = if opts.complex { C64::new(x[j], x[k + j]) } else { C64::new(x[j], 0.0) };
                    c / radius.powi(j as i32 + 1)
                })
                .collect();
            return Ok(OracleSolution { value: max, lp_value: t, coeffs, rounds });
        }
        for (b, q) in values.iter().enumerate() {
            if q.norm() > t + opts.tol {
                let (c, col) = column(b, -q.arg());
                cost.push(c);
                cols.push(col);
            }
        }
    }
}
