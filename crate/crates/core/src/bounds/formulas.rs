use crate::scmap::{ExteriorMapRectangle, DEFAULT_TRUNCATION};
use crate::{Error, Result, C64};

fn check(mu: f64, rho: f64) -> Result<()> {
    if !(mu >= 1.0) || !mu.is_finite() || !(rho >= 0.0) || !rho.is_finite() {
        return Err(Error::DegenerateRectangle(format!("mu = {mu}, rho = {rho}")));
    }
    Ok(())
}

fn is_point(mu: f64, rho: f64) -> bool {
    mu == 1.0 && rho == 0.0
}

/// `[1 - 1/(4(μ² + ρ²))]^{k/2}`.
pub fn elman_bound(mu: f64, rho: f64, k: usize) -> f64 {
    let base = 1.0 - 0.25 / (mu * mu + rho * rho);
    (0.5 * k as f64 * base.ln()).exp()
}

/// Center `a = 1 + ρ²` and radius `r = ρ√(ρ² + 1)` of the enclosing disk,
/// or `None` when it misses the corners `μ ± iρ`.
pub fn disk_params(mu: f64, rho: f64) -> Option<(f64, f64)> {
    if mu <= 2.0 * rho * rho + 1.0 {
        Some((1.0 + rho * rho, rho * (rho * rho + 1.0).sqrt()))
    } else {
        None
    }
}

/// `(ρ/√(1+ρ²))^k`, or `None` when `μ > 2ρ² + 1`.
pub fn disk_bound(mu: f64, rho: f64, k: usize) -> Option<f64> {
    disk_params(mu, rho).map(|(a, r)| pow(r / a, k))
}

/// `β = arccos(1/√(μ²+ρ²))` and `γ_β = 2 sin(β/(4 - 2β/π))`.
pub fn disk_segment_params(mu: f64, rho: f64) -> (f64, f64) {
    let beta = (1.0 / (mu * mu + rho * rho).sqrt()).min(1.0).acos();
    let gamma = 2.0 * (beta / (4.0 - 2.0 * beta / std::f64::consts::PI)).sin();
    (beta, gamma)
}

pub fn disk_segment_bound(mu: f64, rho: f64, k: usize) -> f64 {
    let (_, g) = disk_segment_params(mu, rho);
    three_term(g, k)
}

/// `min{2 + γ, 2/(1 - γ^{k+1})} γ^k`.
pub(crate) fn three_term(g: f64, k: usize) -> f64 {
    let gk = pow(g, k);
    let second = if g < 1.0 { 2.0 / (1.0 - g * gk) } else { f64::INFINITY };
    (2.0 + g).min(second) * gk
}

fn pow(x: f64, k: usize) -> f64 {
    if k == 0 {
        1.0
    } else if x == 0.0 {
        0.0
    } else {
        (k as f64 * x.ln()).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// Ellipse centred at `c` through the four corners of `[1, μ] + i[-ρ, ρ]`,
/// with horizontal semi-axis `alpha` and vertical semi-axis `beta_ell`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseParams {
    pub c: f64,
    pub alpha: f64,
    pub beta_ell: f64,
    /// Semi-major axis: `alpha` or `i beta_ell`.
    pub a_ell: C64,
    /// Focal distance: `√(α² - β²)` or `i√(β² - α²)`.
    pub d: C64,
    pub orientation: Orientation,
    /// Asymptotic rate `|(a + √(a²-d²))/(c + √(c²-d²))|`.
    pub rate: f64,
}

impl EllipseParams {
    /// Ellipse with horizontal semi-axis `alpha` circumscribing the rectangle.
    /// `alpha = (μ-1)/2` is allowed only for `ρ = 0` (the segment itself).
    pub fn circumscribing(mu: f64, rho: f64, alpha: f64) -> Result<Self> {
        check(mu, rho)?;
        let c = 0.5 * (mu + 1.0);
        let h = 0.5 * (mu - 1.0);
        if !(alpha >= h) || !(alpha < c) {
            return Err(Error::InvalidSpec(format!("alpha = {alpha} outside [{h}, {c})")));
        }
        let beta_ell = if rho == 0.0 {
            0.0
        } else {
            let t = 1.0 - h * h / (alpha * alpha);
            if !(t > 0.0) {
                return Err(Error::InvalidSpec(format!("alpha = {alpha} gives an unbounded ellipse")));
            }
            rho / t.sqrt()
        };
        let (a_ell, d, orientation) = if alpha >= beta_ell {
            (C64::new(alpha, 0.0), C64::new((alpha * alpha - beta_ell * beta_ell).sqrt(), 0.0), Orientation::Horizontal)
        } else {
            (C64::new(0.0, beta_ell), C64::new(0.0, (beta_ell * beta_ell - alpha * alpha).sqrt()), Orientation::Vertical)
        };
        let s = (c * c - alpha * alpha + beta_ell * beta_ell).sqrt();
        let rate = (alpha + beta_ell) / (c + s);
        Ok(Self { c, alpha, beta_ell, a_ell, d, orientation, rate })
    }

    /// `x²/α² + y²/β² - 1` at the corner `(μ, ρ)` relative to the center.
    pub fn corner_residual(&self, mu: f64, rho: f64) -> f64 {
        let x = mu - self.c;
        let yy = if self.beta_ell == 0.0 { 0.0 } else { (rho / self.beta_ell).powi(2) };
        (x / self.alpha).powi(2) + yy - 1.0
    }
}

/// The `α` values the ellipse search visits: `(μ-1)/2 + j/n_grid` for
/// `j = 1, ..., n_grid - 1`, preceded by the segment limit when `ρ = 0`.
pub fn ellipse_grid(mu: f64, rho: f64, n_grid: usize) -> Vec<f64> {
    let h = 0.5 * (mu - 1.0);
    let mut grid: Vec<f64> = (1..n_grid).map(|j| h + j as f64 / n_grid as f64).collect();
    if rho == 0.0 {
        grid.insert(0, h);
    }
    grid
}

/// Grid search for the circumscribing ellipse with the smallest asymptotic rate.
pub fn optimal_ellipse(mu: f64, rho: f64, n_grid: usize) -> Result<EllipseParams> {
    check(mu, rho)?;
    if mu == 1.0 {
        return Err(Error::DegenerateRectangle("mu = 1: no circumscribing ellipse with the origin outside".into()));
    }
    if n_grid < 2 {
        return Err(Error::InvalidSpec("ellipse grid needs at least 2 points".into()));
    }
    let mut best: Option<EllipseParams> = None;
    for alpha in ellipse_grid(mu, rho, n_grid) {
        let p = EllipseParams::circumscribing(mu, rho, alpha)?;
        if best.map_or(true, |b| p.rate < b.rate) {
            best = Some(p);
        }
    }
    best.ok_or_else(|| Error::InvalidSpec("empty ellipse grid".into()))
}

/// `C_k(a/d) / |C_k(c/d)|`, evaluated through `C_k((v + 1/v)/2) = (v^k + v^{-k})/2`
/// as `rate^k (1 + q_a^k) / |1 + q_c^k|`, so nothing overflows.
pub fn ellipse_bound(params: &EllipseParams, k: usize) -> f64 {
    let (a, b, c) = (params.alpha, params.beta_ell, params.c);
    let s = (c * c - a * a + b * b).sqrt();
    let qa = (a - b).abs() / (a + b);
    let qc = (c - s) / (c + s);
    let kk = k as i32;
    pow(params.rate, k) * (1.0 + qa.powi(kk)) / (1.0 + qc.powi(kk)).abs()
}

/// Exterior map used by the conformal and Faber bounds, with enough Laurent
/// terms for Faber polynomials up to degree `k_max`.
pub fn exterior_map(mu: f64, rho: f64, k_max: usize) -> Result<ExteriorMapRectangle> {
    ExteriorMapRectangle::with_truncation(mu, rho, DEFAULT_TRUNCATION.max(k_max + 16))
}

/// `min{2 + γ, 2/(1 - γ^{k+1})} γ^k` with `γ = 1/|φ(0)|`.
pub fn conformal_bound(mu: f64, rho: f64, k: usize) -> Result<f64> {
    check(mu, rho)?;
    if is_point(mu, rho) {
        return Ok(if k == 0 { 1.0 } else { 0.0 });
    }
    Ok(three_term(ExteriorMapRectangle::new(mu, rho)?.gamma, k))
}

/// The lower bound `γ^k ≤ K_k`.
pub fn conformal_lower_bound(mu: f64, rho: f64, k: usize) -> Result<f64> {
    check(mu, rho)?;
    if is_point(mu, rho) {
        return Ok(if k == 0 { 1.0 } else { 0.0 });
    }
    Ok(pow(ExteriorMapRectangle::new(mu, rho)?.gamma, k))
}

/// `2/|F_k(0)|` for `k = 0..=k_max`.
pub fn faber_curve(map: &ExteriorMapRectangle, k_max: usize) -> Result<Vec<f64>> {
    let scaled = map.faber_at_zero(k_max)?;
    Ok(scaled.iter().enumerate().map(|(k, f)| 2.0 * pow(map.gamma, k) / f.norm()).collect())
}

pub fn faber_bound(mu: f64, rho: f64, k: usize) -> Result<f64> {
    check(mu, rho)?;
    if is_point(mu, rho) {
        return Ok(if k == 0 { 1.0 } else { 0.0 });
    }
    let map = exterior_map(mu, rho, k)?;
    Ok(faber_curve(&map, k)?[k])
}
