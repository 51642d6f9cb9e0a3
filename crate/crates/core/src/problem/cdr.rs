use std::f64::consts::PI;

use crate::linalg::ComplexMatrix;
use crate::{Error, Result, C64};

/// Parameters of `-nu Δu + a·∇u + c0 u = f` on `[-1,1]^2` with homogeneous
/// Dirichlet conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdrProblemSpec {
    /// Interior grid points per dimension.
    pub nx: usize,
    pub c0: f64,
    pub nu: f64,
    pub eta: f64,
}

impl Default for CdrProblemSpec {
    fn default() -> Self {
        Self { nx: 16, c0: 1.0, nu: 1.0, eta: 100.0 }
    }
}

impl CdrProblemSpec {
    pub fn validate(&self) -> Result<()> {
        if self.nx < 3 {
            return Err(Error::InvalidSpec(format!("nx = {} (need nx >= 3)", self.nx)));
        }
        if !(self.c0 > 0.0) || !self.c0.is_finite() {
            return Err(Error::InvalidSpec(format!("c0 = {} (need c0 > 0)", self.c0)));
        }
        if !(self.nu > 0.0) || !self.nu.is_finite() {
            return Err(Error::InvalidSpec(format!("nu = {} (need nu > 0)", self.nu)));
        }
        if !self.eta.is_finite() {
            return Err(Error::InvalidSpec("eta must be finite".into()));
        }
        Ok(())
    }

    pub fn mesh_width(&self) -> f64 {
        2.0 / (self.nx as f64 + 1.0)
    }
}

/// `A = M + N` with `M` spd and `N` skew-symmetric, all real.
#[derive(Debug, Clone)]
pub struct AssembledProblem {
    pub spec: CdrProblemSpec,
    pub a: ComplexMatrix,
    pub m: ComplexMatrix,
    pub n: ComplexMatrix,
    pub b: Vec<C64>,
}

impl AssembledProblem {
    pub fn dim(&self) -> usize {
        self.b.len()
    }
}

/// Unassembled pieces: `M = c0 * mass + nu * stiffness`.
#[derive(Debug, Clone)]
pub struct CdrParts {
    pub mass: Vec<f64>,
    pub stiffness: Vec<f64>,
    pub skew: Vec<f64>,
    pub rhs: Vec<f64>,
    pub n: usize,
}

/// Unknown number of interior grid node `(i, j)`, `1 <= i, j <= nx`.
pub fn grid_index(i: usize, j: usize, nx: usize) -> usize {
    (i - 1) + (j - 1) * nx
}

fn velocity(eta: f64, x: f64, y: f64) -> [f64; 2] {
    [eta * PI * (-y - 0.8), eta * PI * x]
}

fn source(x: f64, y: f64) -> f64 {
    (-2.5 * (x * x + (y + 0.8) * (y + 0.8))).exp()
}

pub fn assemble_parts(spec: &CdrProblemSpec) -> Result<CdrParts> {
    spec.validate()?;
    let nx = spec.nx;
    let n = nx * nx;
    let h = spec.mesh_width();
    let coord = |k: usize| -1.0 + k as f64 * h;
    let unknown = |i: usize, j: usize| -> Option<usize> {
        (i >= 1 && i <= nx && j >= 1 && j <= nx).then(|| grid_index(i, j, nx))
    };
    let mut mass = vec![0.0; n * n];
    let mut stiffness = vec![0.0; n * n];
    let mut skew = vec![0.0; n * n];
    let mut rhs = vec![0.0; n];
    for j in 0..=nx {
        for i in 0..=nx {
            // cell split along the diagonal (i,j)-(i+1,j+1)
            let tris = [
                [(i, j), (i + 1, j), (i + 1, j + 1)],
                [(i, j), (i + 1, j + 1), (i, j + 1)],
            ];
            for tri in tris {
                let p: Vec<[f64; 2]> = tri.iter().map(|&(a, b)| [coord(a), coord(b)]).collect();
                let ids: Vec<Option<usize>> = tri.iter().map(|&(a, b)| unknown(a, b)).collect();
                if ids.iter().all(Option::is_none) {
                    continue;
                }
                let det = (p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[2][0] - p[0][0]) * (p[1][1] - p[0][1]);
                let area = 0.5 * det.abs();
                let grad: Vec<[f64; 2]> = (0..3)
                    .map(|a| {
                        let (b, c) = ((a + 1) % 3, (a + 2) % 3);
                        [(p[b][1] - p[c][1]) / det, (p[c][0] - p[b][0]) / det]
                    })
                    .collect();
                // convection: C[a][b] = 1/2 * int (v . grad phi_b) phi_a, edge-midpoint rule
                let mut conv = [[0.0; 3]; 3];
                for e in 0..3 {
                    let (s, t) = (e, (e + 1) % 3);
                    let mx = 0.5 * (p[s][0] + p[t][0]);
                    let my = 0.5 * (p[s][1] + p[t][1]);
                    let v = velocity(spec.eta, mx, my);
                    for a in [s, t] {
                        for b in 0..3 {
                            let vg = v[0] * grad[b][0] + v[1] * grad[b][1];
                            conv[a][b] += 0.5 * (area / 3.0) * vg * 0.5;
                        }
                    }
                }
                for a in 0..3 {
                    let Some(ia) = ids[a] else { continue };
                    rhs[ia] += source(p[a][0], p[a][1]) * area / 3.0;
                    for b in 0..3 {
                        let Some(ib) = ids[b] else { continue };
                        let k = ia * n + ib;
                        mass[k] += area / 12.0 * if a == b { 2.0 } else { 1.0 };
                        stiffness[k] += area * (grad[a][0] * grad[b][0] + grad[a][1] * grad[b][1]);
                        if a < b {
                            let d = conv[a][b] - conv[b][a];
                            skew[k] += d;
                            skew[ib * n + ia] -= d;
                        }
                    }
                }
            }
        }
    }
    Ok(CdrParts { mass, stiffness, skew, rhs, n })
}

pub fn build_cdr(spec: &CdrProblemSpec) -> Result<AssembledProblem> {
    let parts = assemble_parts(spec)?;
    let n = parts.n;
    let mdata: Vec<f64> = parts
        .mass
        .iter()
        .zip(&parts.stiffness)
        .map(|(ms, st)| spec.c0 * ms + spec.nu * st)
        .collect();
    let m = ComplexMatrix::from_real(n, n, &mdata)?;
    let nmat = ComplexMatrix::from_real(n, n, &parts.skew)?;
    let a = &m + &nmat;
    let b = parts.rhs.iter().map(|&v| C64::new(v, 0.0)).collect();
    Ok(AssembledProblem { spec: *spec, a, m, n: nmat, b })
}
