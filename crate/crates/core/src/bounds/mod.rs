//! Upper bounds for `K_k(Ω) = min_{q(0)=1, deg q ≤ k} max_{z∈Ω} |q(z)|` on the
//! normalised rectangle `Ω = [1, μ] + i[-ρ, ρ]`.

mod formulas;
pub mod lp;
mod oracle;

use std::fmt;
use std::str::FromStr;

pub use formulas::{
    conformal_bound, conformal_lower_bound, disk_bound, disk_params, disk_segment_bound, disk_segment_params,
    elman_bound, ellipse_bound, ellipse_grid, exterior_map, faber_bound, faber_curve, optimal_ellipse, EllipseParams,
    Orientation,
};
pub use oracle::{boundary_samples, minmax_oracle, minmax_oracle_with, OracleOptions, OracleSolution};

use crate::{Error, Exec, Result};

/// Grid size of the ellipse search.
pub const ELLIPSE_GRID: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundMethod {
    Elman,
    Disk,
    DiskSegment,
    Ellipse,
    Conformal,
    Faber,
    Best,
}

impl BoundMethod {
    /// Every individual bound (everything but `Best`).
    pub const ALL: [BoundMethod; 6] = [
        BoundMethod::Elman,
        BoundMethod::Disk,
        BoundMethod::DiskSegment,
        BoundMethod::Ellipse,
        BoundMethod::Conformal,
        BoundMethod::Faber,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundMethod::Elman => "elman",
            BoundMethod::Disk => "disk",
            BoundMethod::DiskSegment => "disk-segment",
            BoundMethod::Ellipse => "ellipse",
            BoundMethod::Conformal => "conformal",
            BoundMethod::Faber => "faber",
            BoundMethod::Best => "best",
        }
    }
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundMethod::ALL
            .iter()
            .chain(std::iter::once(&BoundMethod::Best))
            .find(|m| m.name() == s)
            .copied()
            .ok_or_else(|| Error::InvalidSpec(format!("unknown bound method '{s}'")))
    }
}

/// One bound as a function of `k = 0..=k_max`. `None` marks a bound that does not apply.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCurve {
    pub method: BoundMethod,
    /// Clipped at 1 and made non-increasing.
    pub values: Vec<Option<f64>>,
    pub raw: Vec<Option<f64>>,
    pub params: Vec<(&'static str, f64)>,
}

impl BoundCurve {
    fn from_raw(method: BoundMethod, raw: Vec<Option<f64>>, params: Vec<(&'static str, f64)>) -> Self {
        let values = monotone(&raw);
        Self { method, values, raw, params }
    }

    fn absent(method: BoundMethod, k_max: usize) -> Self {
        Self { method, values: vec![None; k_max + 1], raw: vec![None; k_max + 1], params: Vec::new() }
    }

    pub fn k_max(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn is_absent(&self) -> bool {
        self.values.iter().all(Option::is_none)
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }
}

/// Clip at 1, then replace any value larger than its predecessor by the predecessor.
pub fn monotone(raw: &[Option<f64>]) -> Vec<Option<f64>> {
    let mut prev = f64::INFINITY;
    raw.iter()
        .map(|v| {
            v.map(|x| {
                prev = prev.min(x.min(1.0));
                prev
            })
        })
        .collect()
}

/// Curve of a single method on `[1, μ] + i[-ρ, ρ]`.
pub fn bound_curve(mu: f64, rho: f64, k_max: usize, method: BoundMethod) -> Result<BoundCurve> {
    if !(mu >= 1.0) || !mu.is_finite() || !(rho >= 0.0) || !rho.is_finite() {
        return Err(Error::DegenerateRectangle(format!("mu = {mu}, rho = {rho}")));
    }
    let ks = 0..=k_max;
    let point = mu == 1.0 && rho == 0.0;
    let point_curve = |m| BoundCurve::from_raw(m, ks.clone().map(|k| Some(if k == 0 { 1.0 } else { 0.0 })).collect(), Vec::new());
    Ok(match method {
        BoundMethod::Elman => {
            BoundCurve::from_raw(method, ks.map(|k| Some(elman_bound(mu, rho, k))).collect(), Vec::new())
        }
        BoundMethod::Disk => match disk_params(mu, rho) {
            Some((a, r)) => {
                BoundCurve::from_raw(method, ks.map(|k| disk_bound(mu, rho, k)).collect(), vec![("a", a), ("r", r)])
            }
            None => BoundCurve::absent(method, k_max),
        },
        BoundMethod::DiskSegment => {
            let (beta, gamma) = disk_segment_params(mu, rho);
            BoundCurve::from_raw(
                method,
                ks.map(|k| Some(disk_segment_bound(mu, rho, k))).collect(),
                vec![("beta", beta), ("gamma_beta", gamma)],
            )
        }
        BoundMethod::Ellipse => match optimal_ellipse(mu, rho, ELLIPSE_GRID) {
            Ok(p) => BoundCurve::from_raw(
                method,
                ks.map(|k| Some(ellipse_bound(&p, k))).collect(),
                vec![("c", p.c), ("d", p.d.norm()), ("a_ell", p.a_ell.norm()), ("alpha", p.alpha), ("beta_ell", p.beta_ell)],
            ),
            Err(Error::DegenerateRectangle(_)) => BoundCurve::absent(method, k_max),
            Err(e) => return Err(e),
        },
        BoundMethod::Conformal if point => point_curve(method),
        BoundMethod::Faber if point => point_curve(method),
        BoundMethod::Conformal => {
            let map = crate::scmap::ExteriorMapRectangle::new(mu, rho)?;
            let g = map.gamma;
            BoundCurve::from_raw(method, ks.map(|k| Some(formulas::three_term(g, k))).collect(), vec![("gamma", g)])
        }
        BoundMethod::Faber => {
            let map = exterior_map(mu, rho, k_max)?;
            let raw = faber_curve(&map, k_max)?.into_iter().map(Some).collect();
            BoundCurve::from_raw(method, raw, vec![("gamma", map.gamma), ("capacity", map.scale_c1)])
        }
        BoundMethod::Best => return best_curve(mu, rho, k_max, &BoundMethod::ALL),
    })
}

/// Curves of every requested method, evaluated in parallel.
pub fn bound_curves(mu: f64, rho: f64, k_max: usize, methods: &[BoundMethod], exec: Exec) -> Result<Vec<BoundCurve>> {
    let methods: Vec<BoundMethod> = methods.iter().copied().filter(|&m| m != BoundMethod::Best).collect();
    exec.map(methods.len(), |i| bound_curve(mu, rho, k_max, methods[i])).into_iter().collect()
}

/// Pointwise minimum of already post-processed curves.
pub fn best_of(curves: &[BoundCurve]) -> BoundCurve {
    let k_max = curves.iter().map(BoundCurve::k_max).max().unwrap_or(0);
    let values: Vec<Option<f64>> = (0..=k_max)
        .map(|k| curves.iter().filter_map(|c| c.values.get(k).copied().flatten()).reduce(f64::min))
        .collect();
    BoundCurve { method: BoundMethod::Best, raw: values.clone(), values, params: Vec::new() }
}

pub fn best_curve(mu: f64, rho: f64, k_max: usize, methods: &[BoundMethod]) -> Result<BoundCurve> {
    best_curve_with(mu, rho, k_max, methods, Exec::default())
}

pub fn best_curve_with(mu: f64, rho: f64, k_max: usize, methods: &[BoundMethod], exec: Exec) -> Result<BoundCurve> {
    if methods.is_empty() {
        return Err(Error::InvalidSpec("no bound methods requested".into()));
    }
    let methods: Vec<BoundMethod> = if methods.contains(&BoundMethod::Best) { BoundMethod::ALL.to_vec() } else { methods.to_vec() };
    Ok(best_of(&bound_curves(mu, rho, k_max, &methods, exec)?))
}
