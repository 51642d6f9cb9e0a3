use std::f64::consts::{FRAC_PI_2, PI};

use super::laurent::LaurentMap;
use super::quad::GaussLegendre;
use crate::{Error, Result, C64};

/// Default number of negative-power Laurent coefficients.
pub const DEFAULT_TRUNCATION: usize = 256;

/// Radius beyond which `ψ` is evaluated from its Laurent series.
const SERIES_RADIUS: f64 = 1.5;

const QUAD_NODES: usize = 24;

/// Which shape the normalised rectangle degenerates to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapShape {
    Rectangle,
    /// `ρ = 0`: the segment `[1, μ]`.
    HorizontalSegment,
    /// `μ = 1`: the segment `1 + i[-ρ, ρ]`.
    VerticalSegment,
}

/// Exterior Schwarz-Christoffel map of the unit disk onto the exterior of
/// `[1, μ] + i[-ρ, ρ]`:
///
/// `ψ'(w) = C' Π_k (1 - w_k / w)^{1/2}` with prevertices
/// `w_k = e^{iα}, e^{i(π-α)}, e^{i(π+α)}, e^{-iα}` mapped to the corners
/// `μ+iρ, 1+iρ, 1-iρ, μ-iρ`.
#[derive(Debug, Clone)]
pub struct ExteriorMapRectangle {
    pub mu: f64,
    pub rho: f64,
    pub shape: MapShape,
    /// Prevertex angle `α` in `[0, π/2]` (endpoints only for segments).
    pub alpha_pre: f64,
    /// `C'`, also the logarithmic capacity.
    pub scale_c1: f64,
    pub center: f64,
    pub laurent: LaurentMap,
    /// `|φ(0)|`, where `φ = ψ^{-1}`.
    pub phi0: f64,
    /// `1 / |φ(0)|`.
    pub gamma: f64,
    gl: GaussLegendre,
}

impl ExteriorMapRectangle {
    pub fn new(mu: f64, rho: f64) -> Result<Self> {
        Self::with_truncation(mu, rho, DEFAULT_TRUNCATION)
    }

    pub fn with_truncation(mu: f64, rho: f64, truncation: usize) -> Result<Self> {
        if !(mu >= 1.0) || !mu.is_finite() || !(rho >= 0.0) || !rho.is_finite() {
            return Err(Error::DegenerateRectangle(format!("mu = {mu}, rho = {rho}")));
        }
        let center = 0.5 * (mu + 1.0);
        let gl = GaussLegendre::new(QUAD_NODES);
        if mu == 1.0 && rho == 0.0 {
            return Err(Error::DegenerateRectangle("the rectangle is the single point 1".into()));
        }
        if rho == 0.0 {
            let h = 0.5 * (mu - 1.0);
            let q = C64::new(0.5 * h, 0.0);
            let phi0 = (center + (center * center - h * h).sqrt()) / h;
            return Ok(Self {
                mu,
                rho,
                shape: MapShape::HorizontalSegment,
                alpha_pre: 0.0,
                scale_c1: 0.5 * h,
                center,
                laurent: LaurentMap::joukowski(C64::new(center, 0.0), q, q),
                phi0,
                gamma: 1.0 / phi0,
                gl,
            });
        }
        if mu == 1.0 {
            let q = C64::new(0.5 * rho, 0.0);
            let phi0 = 1.0 / rho + (1.0 + 1.0 / (rho * rho)).sqrt();
            return Ok(Self {
                mu,
                rho,
                shape: MapShape::VerticalSegment,
                alpha_pre: FRAC_PI_2,
                scale_c1: 0.5 * rho,
                center,
                laurent: LaurentMap::joukowski(C64::new(center, 0.0), q, -q),
                phi0,
                gamma: 1.0 / phi0,
                gl,
            });
        }
        let alpha = solve_parameter(mu, rho)?;
        let (right, _) = side_integrals(alpha, &gl);
        let c_prime = 2.0 * rho / right;
        let laurent = laurent_series(alpha, c_prime, center, truncation);
        let mut map = Self {
            mu,
            rho,
            shape: MapShape::Rectangle,
            alpha_pre: alpha,
            scale_c1: c_prime,
            center,
            laurent,
            phi0: f64::NAN,
            gamma: f64::NAN,
            gl,
        };
        map.phi0 = map.solve_phi0()?;
        map.gamma = 1.0 / map.phi0;
        Ok(map)
    }

    pub fn prevertices(&self) -> [C64; 4] {
        prevertices(self.alpha_pre)
    }

    pub fn corners(&self) -> [C64; 4] {
        [
            C64::new(self.mu, self.rho),
            C64::new(1.0, self.rho),
            C64::new(1.0, -self.rho),
            C64::new(self.mu, -self.rho),
        ]
    }

    pub fn diameter(&self) -> f64 {
        (self.mu - 1.0).hypot(2.0 * self.rho)
    }

    /// `ψ'(w)` for `|w| ≥ 1`.
    pub fn psi_prime(&self, w: C64) -> C64 {
        match self.shape {
            MapShape::Rectangle => {
                let inv = w.inv();
                let p: C64 = self.prevertices().iter().map(|wk| (C64::new(1.0, 0.0) - wk * inv).sqrt()).product();
                p * self.scale_c1
            }
            _ => self.laurent.derivative(w),
        }
    }

    /// `ψ(w)` for `|w| ≥ 1`.
    pub fn psi_eval(&self, w: C64) -> Result<C64> {
        let r = w.norm();
        if !(r >= 1.0 - 1e-12) {
            return Err(Error::InsideDisk(w));
        }
        if self.shape != MapShape::Rectangle || r >= SERIES_RADIUS {
            return Ok(self.laurent.eval(w));
        }
        // integrate ψ' radially from w out to the series region; panels are
        // graded geometrically towards w, where ψ' may vanish like a square root
        let dir = w / r;
        let outer = SERIES_RADIUS;
        let mut total = C64::new(0.0, 0.0);
        let mut hi = outer;
        for level in 1..=50 {
            let lo = r + (outer - r) * 0.5f64.powi(level);
            total += self.gl.integrate(lo, hi, |t| self.psi_prime(dir * t) * dir);
            hi = lo;
        }
        total += self.gl.integrate(r, hi, |t| self.psi_prime(dir * t) * dir);
        Ok(self.laurent.eval(dir * outer) - total)
    }

    /// Scaled Faber values `F_k(0) γ^k`, `k = 0..=k_max`.
    pub fn faber_at_zero(&self, k_max: usize) -> Result<Vec<C64>> {
        if self.shape == MapShape::Rectangle && k_max > self.laurent.tail.len() {
            return Err(Error::TruncationTooShort { have: self.laurent.tail.len(), need: k_max });
        }
        self.laurent.faber_scaled(C64::new(0.0, 0.0), k_max, self.gamma)
    }

    /// `ψ(-R) = 0` for `R = |φ(0)|`, found by safeguarded Newton on the real axis.
    fn solve_phi0(&self) -> Result<f64> {
        let c = self.scale_c1;
        let cos2 = (2.0 * self.alpha_pre).cos();
        let f = |r: f64| {
            let x = 1.0 / (r * r);
            (1.0 - 2.0 * cos2 * x + x * x).max(0.0).sqrt()
        };
        // ψ(-R) = 1 - C' ∫_1^R f
        let g = |r: f64| -> f64 {
            let panels = 16 + (r.ln().max(0.0) * 8.0) as usize;
            let integral: f64 = self.gl.composite(1.0, r, panels, f);
            c * integral - 1.0
        };
        let (mut lo, mut hi) = (1.0, 2.0);
        while g(hi) < 0.0 {
            lo = hi;
            hi *= 2.0;
            if hi > 1e12 {
                return Err(Error::NewtonDivergence("no sign change for ψ(-R)".into()));
            }
        }
        let mut r = (self.center / c).clamp(lo, hi);
        for _ in 0..200 {
            let gr = g(r);
            if !gr.is_finite() {
                return Err(Error::NewtonDivergence("non-finite value".into()));
            }
            if gr.abs() <= 1e-15 {
                return Ok(r);
            }
            if gr < 0.0 {
                lo = r;
            } else {
                hi = r;
            }
            let mut next = r - gr / (c * f(r));
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - r).abs() <= 1e-15 * r {
                return Ok(next);
            }
            r = next;
        }
        Err(Error::NewtonDivergence("iteration limit".into()))
    }
}

fn prevertices(alpha: f64) -> [C64; 4] {
    [
        C64::from_polar(1.0, alpha),
        C64::from_polar(1.0, PI - alpha),
        C64::from_polar(1.0, PI + alpha),
        C64::from_polar(1.0, -alpha),
    ]
}

/// `∫_a^b Π_k |2 sin((t - t_k)/2)|^{1/2} dt` between two consecutive prevertex
/// angles. The substitution `t = a + (b-a) sin^2(φ/2)` absorbs the square-root
/// endpoint behaviour; the result is by composite Gauss-Legendre with panel
/// doubling until the value settles.
fn arc_integral(a: f64, b: f64, others: [f64; 2], gl: &GaussLegendre) -> f64 {
    let len = b - a;
    let integrand = |phi: f64| -> f64 {
        let s2 = (0.5 * phi).sin().powi(2);
        let (da, db) = (len * s2, len * (1.0 - s2));
        let t = a + da;
        let mut p = (2.0 * (0.5 * da).sin()).sqrt() * (2.0 * (0.5 * db).sin()).sqrt();
        for tk in others {
            p *= (2.0 * (0.5 * (t - tk)).sin().abs()).sqrt();
        }
        p * 0.5 * len * phi.sin()
    };
    let mut panels = 1;
    let mut prev: f64 = gl.composite(0.0, PI, panels, integrand);
    loop {
        panels *= 2;
        let cur: f64 = gl.composite(0.0, PI, panels, integrand);
        if (cur - prev).abs() <= 1e-15 * cur.abs() || panels >= 4096 {
            return cur;
        }
        prev = cur;
    }
}

/// `(I_R, I_T)`: the right arc `[-α, α]` and top arc `[α, π-α]` integrals of
/// `|ψ'|/C'`, so that the right side has length `C' I_R` and the top `C' I_T`.
fn side_integrals(alpha: f64, gl: &GaussLegendre) -> (f64, f64) {
    let right = arc_integral(-alpha, alpha, [PI - alpha, PI + alpha], gl);
    let top = arc_integral(alpha, PI - alpha, [-alpha, PI + alpha], gl);
    (right, top)
}

/// Side lengths (right, top) of the image of the map with prevertex angle `alpha` and `C' = 1`.
pub fn side_lengths(alpha: f64) -> (f64, f64) {
    side_integrals(alpha, &GaussLegendre::new(QUAD_NODES))
}

/// Finds the prevertex angle `α` with `top / right = (μ-1)/(2ρ)`.
///
/// The ratio decreases monotonically from `+∞` (α → 0) to `0` (α → π/2), so
/// bisection on its logarithm converges.
pub fn solve_parameter(mu: f64, rho: f64) -> Result<f64> {
    if !(mu > 1.0) || !(rho > 0.0) || !mu.is_finite() || !rho.is_finite() {
        return Err(Error::DegenerateRectangle(format!("mu = {mu}, rho = {rho}")));
    }
    let gl = GaussLegendre::new(QUAD_NODES);
    let target = ((mu - 1.0) / (2.0 * rho)).ln();
    let f = |a: f64| {
        let (r, t) = side_integrals(a, &gl);
        (t / r).ln() - target
    };
    let (mut lo, mut hi) = (0.0, FRAC_PI_2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let alpha = 0.5 * (lo + hi);
    if !(alpha > 0.0 && alpha < FRAC_PI_2) {
        return Err(Error::NewtonDivergence(format!("prevertex angle {alpha} left (0, π/2)")));
    }
    Ok(alpha)
}

/// Laurent coefficients of `ψ` from the product of the four binomial series
/// `(1 - w_k u)^{1/2} = Σ_j binom(1/2, j) (-w_k u)^j`, `u = 1/w`.
fn laurent_series(alpha: f64, c_prime: f64, center: f64, truncation: usize) -> LaurentMap {
    let len = truncation + 2;
    let mut binom = vec![0.0; len];
    binom[0] = 1.0;
    for j in 1..len {
        binom[j] = binom[j - 1] * (0.5 - (j - 1) as f64) / j as f64;
    }
    let mut prod = vec![C64::new(0.0, 0.0); len];
    prod[0] = C64::new(1.0, 0.0);
    for wk in prevertices(alpha) {
        let mut series = vec![C64::new(0.0, 0.0); len];
        let mut p = C64::new(1.0, 0.0);
        for j in 0..len {
            series[j] = p * binom[j];
            p *= -wk;
        }
        let mut next = vec![C64::new(0.0, 0.0); len];
        for (i, a) in prod.iter().enumerate() {
            if a.norm() == 0.0 {
                continue;
            }
            for j in 0..len - i {
                next[i + j] += a * series[j];
            }
        }
        prod = next;
    }
    // ψ' = C' Σ a_j w^{-j}; a_1 = 0 since the prevertices sum to zero
    let tail: Vec<C64> = (1..=truncation).map(|m| prod[m + 1] * c_prime / -(m as f64)).collect();
    LaurentMap { c1: C64::new(c_prime, 0.0), c0: C64::new(center, 0.0), tail }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_has_symmetric_prevertices() {
        let m = ExteriorMapRectangle::new(3.0, 1.0).unwrap();
        assert!((m.alpha_pre - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn segment_limits() {
        let m = ExteriorMapRectangle::new(9.0, 0.0).unwrap();
        assert!((m.gamma - 0.5).abs() < 1e-15);
        let v = ExteriorMapRectangle::new(1.0, 2.0).unwrap();
        assert!((v.gamma - 2.0 / (1.0 + 5f64.sqrt())).abs() < 1e-15);
        assert!(ExteriorMapRectangle::new(1.0, 0.0).is_err());
        assert!(ExteriorMapRectangle::new(0.5, 1.0).is_err());
    }

    #[test]
    fn series_and_quadrature_agree_near_radius() {
        let m = ExteriorMapRectangle::new(4.0, 0.7).unwrap();
        let w = C64::from_polar(1.5, 0.37);
        let direct = m.laurent.eval(w);
        let quad = m.psi_eval(C64::from_polar(1.5 - 1e-13, 0.37)).unwrap();
        assert!((direct - quad).norm() < 1e-10);
        let inner = m.psi_eval(C64::from_polar(1.2, 0.37)).unwrap();
        assert!((inner - m.laurent.eval(C64::from_polar(1.2, 0.37))).norm() < 1e-10);
    }
}
