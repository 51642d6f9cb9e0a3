//! Field-of-values sampling and rectangular enclosures in the right half-plane.
//!
//! With `H` hpd and `A = M + N` the preconditioned operator satisfies
//! `FOV^H(A H) ⊂ [λmin(HM), λmax(HM)] + i[-ρ(NH), ρ(NH)]`. The enclosures below
//! are that rectangle (`omega1`), its variant bounding the imaginary half-height by
//! `ρ(M^{-1}N) λmax(HM)` (`omega2`), and the deflated versions where the
//! spectral radius is replaced by a threshold `tau`.

use crate::deflation::{GevpKind, SpectralDeflationSpace};
use crate::linalg::{hermitian_eig, hermitian_pencil_precond, skew_gen_eig, skew_pencil_precond, vector};
use crate::linalg::{ComplexMatrix, EigCount, InnerProduct};
use crate::problem::{AssembledProblem, PreconditionerSetup};
use crate::{Error, Exec, Result, C64};

/// `[re_min, re_max] + i[-im_half, im_half]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rectangle {
    pub re_min: f64,
    pub re_max: f64,
    pub im_half: f64,
}

impl Rectangle {
    pub fn new(re_min: f64, re_max: f64, im_half: f64) -> Result<Self> {
        if !(re_min > 0.0) {
            return Err(Error::NonPositiveRealPart(re_min));
        }
        if !(re_max >= re_min) || !re_max.is_finite() || !(im_half >= 0.0) || !im_half.is_finite() {
            return Err(Error::DegenerateRectangle(format!("[{re_min}, {re_max}] + i[-{im_half}, {im_half}]")));
        }
        Ok(Self { re_min, re_max, im_half })
    }

    /// Scales by `1/re_min`, giving `[1, mu] + i[-rho, rho]`.
    pub fn normalize(&self) -> NormalizedRectangle {
        NormalizedRectangle { mu: self.re_max / self.re_min, rho: self.im_half / self.re_min, scale: self.re_min }
    }

    /// Membership with an absolute slack.
    pub fn contains(&self, z: C64, slack: f64) -> bool {
        z.re >= self.re_min - slack && z.re <= self.re_max + slack && z.im.abs() <= self.im_half + slack
    }

    pub fn corners(&self) -> [C64; 4] {
        [
            C64::new(self.re_max, self.im_half),
            C64::new(self.re_min, self.im_half),
            C64::new(self.re_min, -self.im_half),
            C64::new(self.re_max, -self.im_half),
        ]
    }
}

/// Rectangle `[1, mu] + i[-rho, rho]`, obtained from a rectangle by dividing by `scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedRectangle {
    pub mu: f64,
    pub rho: f64,
    pub scale: f64,
}

impl NormalizedRectangle {
    pub fn new(mu: f64, rho: f64) -> Result<Self> {
        if !(mu >= 1.0) || !mu.is_finite() || !(rho >= 0.0) || !rho.is_finite() {
            return Err(Error::DegenerateRectangle(format!("mu = {mu}, rho = {rho}")));
        }
        Ok(Self { mu, rho, scale: 1.0 })
    }
}

/// Boundary points of a field of values, one per supporting direction.
#[derive(Debug, Clone)]
pub struct FovSample {
    pub angles: Vec<f64>,
    pub boundary_points: Vec<C64>,
    /// `max Re(e^{iθ} z)` over the field of values, per angle.
    pub support: Vec<f64>,
}

impl FovSample {
    /// True if `z` satisfies every sampled supporting half-plane (with slack).
    pub fn contains(&self, z: C64, slack: f64) -> bool {
        self.angles
            .iter()
            .zip(&self.support)
            .all(|(&t, &h)| (C64::from_polar(1.0, t) * z).re <= h + slack)
    }
}

pub fn fov_boundary(b: &ComplexMatrix, ip: &InnerProduct, n_angles: usize) -> Result<FovSample> {
    fov_boundary_with(b, ip, n_angles, Exec::default())
}

/// Samples the boundary of `{<Bx, x>_W / <x, x>_W}`: for each angle the top
/// eigenvector of the Hermitian part of `e^{iθ} L^* B L^{-*}` gives a boundary point.
pub fn fov_boundary_with(b: &ComplexMatrix, ip: &InnerProduct, n_angles: usize, exec: Exec) -> Result<FovSample> {
    let n = b.require_square()?;
    if ip.dim() != n {
        return Err(Error::DimensionMismatch("field of values weight".into()));
    }
    if n_angles < 8 {
        return Err(Error::InvalidSpec(format!("{n_angles} angles (need at least 8)")));
    }
    let bt = ip.transform_operator(b);
    let angles: Vec<f64> = (0..n_angles).map(|j| 2.0 * std::f64::consts::PI * j as f64 / n_angles as f64).collect();
    let results: Vec<Result<(C64, f64)>> = exec.map(n_angles, |j| {
        let rot = C64::from_polar(1.0, angles[j]);
        let herm = ComplexMatrix::from_fn(n, n, |r, c| (rot * bt[(r, c)] + (rot * bt[(c, r)]).conj()) * 0.5);
        let eig = hermitian_eig(&herm)?;
        let u = eig.vectors.column(n - 1);
        let q = vector::dot(&u, &bt.matvec(&u)) / vector::dot(&u, &u);
        Ok((q, eig.values[n - 1]))
    });
    let mut boundary_points = Vec::with_capacity(n_angles);
    let mut support = Vec::with_capacity(n_angles);
    for r in results {
        let (p, s) = r?;
        boundary_points.push(p);
        support.push(s);
    }
    Ok(FovSample { angles, boundary_points, support })
}

/// The spectral quantities the enclosures are built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnclosureData {
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// `ρ(N H)`.
    pub rho_nh: f64,
    /// `ρ(M^{-1} N)`.
    pub rho_minv_n: f64,
}

impl EnclosureData {
    pub fn compute(problem: &AssembledProblem, setup: &PreconditionerSetup) -> Result<Self> {
        let hm = hermitian_pencil_precond(&problem.m, setup.h_cholesky())?;
        let lambda_min = hm.values[0];
        let lambda_max = *hm.values.last().unwrap_or(&lambda_min);
        let rho_nh = skew_pencil_precond(&problem.n, setup.h_cholesky(), EigCount::Top(1))?.max_modulus();
        let rho_minv_n = skew_gen_eig(&problem.n, &problem.m, EigCount::Top(1))?.max_modulus();
        Ok(Self { lambda_min, lambda_max, rho_nh, rho_minv_n })
    }

    pub fn omega1(&self) -> Result<Rectangle> {
        Rectangle::new(self.lambda_min, self.lambda_max, self.rho_nh)
    }

    pub fn omega2(&self) -> Result<Rectangle> {
        Rectangle::new(self.lambda_min, self.lambda_max, self.rho_minv_n * self.lambda_max)
    }

    pub fn omega1_tau(&self, tau: f64) -> Result<Rectangle> {
        Rectangle::new(self.lambda_min, self.lambda_max, tau)
    }

    pub fn omega2_tau(&self, tau: f64) -> Result<Rectangle> {
        Rectangle::new(self.lambda_min, self.lambda_max, self.lambda_max * tau)
    }

    /// `Ω1^τ` for an hn space, `Ω2^τ` for a minv-n space.
    pub fn deflated(&self, space: &SpectralDeflationSpace) -> Result<Rectangle> {
        match space.kind {
            GevpKind::Hn => self.omega1_tau(space.tau),
            GevpKind::MinvN => self.omega2_tau(space.tau),
        }
    }
}

pub fn enclosure_omega1(problem: &AssembledProblem, setup: &PreconditionerSetup) -> Result<Rectangle> {
    EnclosureData::compute(problem, setup)?.omega1()
}

pub fn enclosure_omega2(problem: &AssembledProblem, setup: &PreconditionerSetup) -> Result<Rectangle> {
    EnclosureData::compute(problem, setup)?.omega2()
}

pub fn enclosure_tau(
    problem: &AssembledProblem,
    setup: &PreconditionerSetup,
    space: &SpectralDeflationSpace,
) -> Result<Rectangle> {
    EnclosureData::compute(problem, setup)?.deflated(space)
}

/// `<A H x, x>_H / <x, x>_H` for `x ≠ 0`.
pub fn h_rayleigh_quotient(a: &ComplexMatrix, h: &ComplexMatrix, x: &[C64]) -> C64 {
    let hx = h.matvec(x);
    let ahx = a.matvec(&hx);
    vector::dot(&hx, &ahx) / vector::dot(x, &hx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_scales_by_lower_real_bound() {
        let r = Rectangle::new(2.0, 8.0, 3.0).unwrap().normalize();
        assert_eq!((r.mu, r.rho, r.scale), (4.0, 1.5, 2.0));
        assert!(matches!(Rectangle::new(0.0, 1.0, 1.0), Err(Error::NonPositiveRealPart(_))));
    }

    #[test]
    fn fov_of_diagonal_matrix_is_its_hull() {
        let b = ComplexMatrix::from_diag(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, -1.0)]);
        let s = fov_boundary_with(&b, &InnerProduct::euclidean(3), 8, Exec::Sequential).unwrap();
        // theta = 0 supports at the point 1
        assert!((s.boundary_points[0] - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(s.contains(C64::new(0.0, 0.0), 1e-12));
        assert!(!s.contains(C64::new(1.0, 1.0), 1e-12));
    }
}
