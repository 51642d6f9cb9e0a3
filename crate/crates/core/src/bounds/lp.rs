//! Dense two-phase simplex for `min cᵀy` subject to `E y = b`, `y ≥ 0`.

use crate::{Error, Result};

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-12;
const FEAS_TOL: f64 = 1e-9;
/// Consecutive degenerate pivots after which pricing switches to Bland's rule.
const DEGENERATE_LIMIT: usize = 50;

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub y: Vec<f64>,
    pub objective: f64,
    /// Multipliers `w` with `c_j - wᵀE_j ≥ 0` for every column.
    pub duals: Vec<f64>,
    pub pivots: usize,
}

struct Tableau {
    m: usize,
    /// Structural columns followed by `m` artificial columns, then the right-hand side.
    width: usize,
    n: usize,
    t: Vec<f64>,
    basis: Vec<usize>,
    pivots: usize,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * self.width + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.width - 1)
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let w = self.width;
        let p = self.t[r * w + col];
        for v in &mut self.t[r * w..(r + 1) * w] {
            *v /= p;
        }
        let (before, rest) = self.t.split_at_mut(r * w);
        let (prow, after) = rest.split_at_mut(w);
        for row in before.chunks_mut(w).chain(after.chunks_mut(w)) {
            let f = row[col];
            if f != 0.0 {
                for (x, &pv) in row.iter_mut().zip(prow.iter()) {
                    *x -= f * pv;
                }
            }
        }
        self.basis[r] = col;
        self.pivots += 1;
    }

    /// Reduced costs of all columns for the cost vector `cost` (artificials included).
    fn reduced(&self, cost: &[f64]) -> Vec<f64> {
        let mut d = cost.to_vec();
        for i in 0..self.m {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                let row = &self.t[i * self.width..i * self.width + self.width - 1];
                for (dj, &a) in d.iter_mut().zip(row) {
                    *dj -= cb * a;
                }
            }
        }
        d
    }

    /// Runs the simplex method over the columns `0..limit`.
    fn optimise(&mut self, cost: &[f64], limit: usize) -> Result<()> {
        let mut degenerate = 0usize;
        let max_pivots = 50 * (self.m + limit) + 1000;
        let start = self.pivots;
        loop {
            if self.pivots - start > max_pivots {
                return Err(Error::LinearProgram("pivot limit exceeded".into()));
            }
            let d = self.reduced(cost);
            let bland = degenerate >= DEGENERATE_LIMIT;
            let mut enter = None;
            let mut best = -COST_TOL;
            for (j, &dj) in d.iter().enumerate().take(limit) {
                if dj < best {
                    enter = Some(j);
                    if bland {
                        break;
                    }
                    best = dj;
                }
            }
            let Some(col) = enter else { return Ok(()) };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                let a = self.at(i, col);
                if a > PIVOT_TOL {
                    let ratio = self.rhs(i) / a;
                    let better = match leave {
                        None => true,
                        Some((li, lr)) => ratio < lr - 1e-14 || (ratio <= lr + 1e-14 && self.basis[i] < self.basis[li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((r, ratio)) = leave else {
                return Err(Error::LinearProgram("unbounded".into()));
            };
            degenerate = if ratio.abs() <= 1e-14 { degenerate + 1 } else { 0 };
            self.pivot(r, col);
        }
    }
}

/// Solves `min cᵀy, E y = b, y ≥ 0` with `E` given by columns.
pub fn solve(cost: &[f64], columns: &[Vec<f64>], b: &[f64]) -> Result<LpSolution> {
    let m = b.len();
    let n = columns.len();
    if cost.len() != n || columns.iter().any(|c| c.len() != m) {
        return Err(Error::DimensionMismatch("linear program".into()));
    }
    let width = n + m + 1;
    let mut t = vec![0.0; m * width];
    let mut sign = vec![1.0; m];
    for i in 0..m {
        if b[i] < 0.0 {
            sign[i] = -1.0;
        }
        for (j, col) in columns.iter().enumerate() {
            t[i * width + j] = sign[i] * col[i];
        }
        t[i * width + n + i] = 1.0;
        t[i * width + width - 1] = sign[i] * b[i];
    }
    let mut tab = Tableau { m, width, n, t, basis: (n..n + m).collect(), pivots: 0 };

    let mut phase1 = vec![0.0; n + m];
    for v in &mut phase1[n..] {
        *v = 1.0;
    }
    tab.optimise(&phase1, n)?;
    let infeas: f64 = (0..m).filter(|&i| tab.basis[i] >= n).map(|i| tab.rhs(i)).sum();
    if infeas > FEAS_TOL {
        return Err(Error::LinearProgram(format!("infeasible (phase one residual {infeas:.3e})")));
    }
    // drive remaining artificials out of the basis where possible
    for i in 0..m {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| tab.at(i, j).abs() > 1e-9) {
                tab.pivot(i, j);
            }
        }
    }

    let mut full = cost.to_vec();
    full.extend(std::iter::repeat(0.0).take(m));
    tab.optimise(&full, n)?;

    let mut y = vec![0.0; n];
    for i in 0..m {
        if tab.basis[i] < n {
            y[tab.basis[i]] = tab.rhs(i).max(0.0);
        }
    }
    let objective = y.iter().zip(cost).map(|(a, c)| a * c).sum();
    // the reduced cost of artificial i is -w̃_i, where w̃ are the duals of the sign-adjusted rows
    let d = tab.reduced(&full);
    let duals = (0..m).map(|i| -d[tab.n + i] * sign[i]).collect();
    Ok(LpSolution { y, objective, duals, pivots: tab.pivots })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_equality_problem() {
        // min y0 + 2 y1 + 3 y2 subject to y0 + y1 + y2 = 1, y1 - y2 = 0.2
        let cols = vec![vec![1.0, 0.0], vec![1.0, 1.0], vec![1.0, -1.0]];
        let sol = solve(&[1.0, 2.0, 3.0], &cols, &[1.0, 0.2]).unwrap();
        // y1 = 0.2, y0 = 0.8
        assert!((sol.objective - 1.2).abs() < 1e-12);
        assert!((sol.y[0] - 0.8).abs() < 1e-12 && (sol.y[1] - 0.2).abs() < 1e-12);
        // strong duality
        let dual_obj = sol.duals[0] * 1.0 + sol.duals[1] * 0.2;
        assert!((dual_obj - sol.objective).abs() < 1e-12);
    }

    #[test]
    fn detects_infeasibility() {
        let cols = vec![vec![1.0], vec![1.0]];
        assert!(matches!(solve(&[1.0, 1.0], &cols, &[-1.0]), Err(Error::LinearProgram(_))));
    }
}
