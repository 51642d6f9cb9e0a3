use crate::{Error, Result, C64};

/// Exterior map `ψ(w) = c1 w + c0 + Σ_{j≥1} c_{-j} w^{-j}` of the unit disk
/// onto the exterior of a compact set, truncated after `tail.len()` terms.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentMap {
    pub c1: C64,
    pub c0: C64,
    /// `tail[j - 1] = c_{-j}`.
    pub tail: Vec<C64>,
}

impl LaurentMap {
    /// Disk of center `c` and radius `r`: `ψ(w) = c + r w`.
    pub fn disk(c: C64, r: f64) -> Self {
        Self { c1: C64::new(r, 0.0), c0: c, tail: Vec::new() }
    }

    /// Ellipse (or segment when `q = 0`): `ψ(w) = c + p w + q / w`.
    pub fn joukowski(c: C64, p: C64, q: C64) -> Self {
        Self { c1: p, c0: c, tail: vec![q] }
    }

    pub fn eval(&self, w: C64) -> C64 {
        let inv = w.inv();
        let mut s = C64::new(0.0, 0.0);
        for c in self.tail.iter().rev() {
            s = (s + c) * inv;
        }
        self.c1 * w + self.c0 + s
    }

    pub fn derivative(&self, w: C64) -> C64 {
        let inv = w.inv();
        let mut s = C64::new(0.0, 0.0);
        let mut p = inv * inv;
        for (j, c) in self.tail.iter().enumerate() {
            s -= c * (j as f64 + 1.0) * p;
            p *= inv;
        }
        self.c1 + s
    }

    /// Logarithmic capacity `|c1|`.
    pub fn capacity(&self) -> f64 {
        self.c1.norm()
    }

    /// Coefficient `c_{-j}`, zero beyond the truncation.
    fn coeff(&self, j: usize) -> C64 {
        self.tail.get(j - 1).copied().unwrap_or_default()
    }

    /// Scaled Faber values `F_k(z) s^k` for `k = 0..=k_max`.
    ///
    /// The recurrence is
    /// `c1 F_{n+1} = (z - c0) F_n - Σ_{j=1}^{n} c_{-j} F_{n-j} - n c_{-n}`;
    /// scaling by `s^k` (typically `s = 1/|φ(z)|`) keeps the values O(1).
    pub fn faber_scaled(&self, z: C64, k_max: usize, s: f64) -> Result<Vec<C64>> {
        if self.c1.norm() == 0.0 {
            return Err(Error::DegenerateRectangle("zero capacity".into()));
        }
        let mut f: Vec<C64> = Vec::with_capacity(k_max + 1);
        f.push(C64::new(1.0, 0.0));
        // powers of s, computed by repeated multiplication
        let mut sp = vec![1.0; k_max + 2];
        for i in 1..sp.len() {
            sp[i] = sp[i - 1] * s;
        }
        for n in 0..k_max {
            let mut acc = (z - self.c0) * s * f[n];
            for j in 1..=n {
                let c = self.coeff(j);
                if c.re == 0.0 && c.im == 0.0 {
                    continue;
                }
                acc -= c * sp[j + 1] * f[n - j];
            }
            if n >= 1 {
                acc -= self.coeff(n) * (n as f64) * sp[n + 1];
            }
            f.push(acc / self.c1);
        }
        Ok(f)
    }

    /// Faber polynomial values `F_k(z)` for `k = 0..=k_max` (may overflow for large k).
    pub fn faber_values(&self, z: C64, k_max: usize) -> Result<Vec<C64>> {
        self.faber_scaled(z, k_max, 1.0)
    }

    /// Coefficients (in powers of `z`, ascending) of `F_0, ..., F_{k_max}`.
    pub fn faber_polys(&self, k_max: usize) -> Result<Vec<Vec<C64>>> {
        if self.c1.norm() == 0.0 {
            return Err(Error::DegenerateRectangle("zero capacity".into()));
        }
        let mut polys: Vec<Vec<C64>> = vec![vec![C64::new(1.0, 0.0)]];
        for n in 0..k_max {
            let mut next = vec![C64::new(0.0, 0.0); n + 2];
            for (i, c) in polys[n].iter().enumerate() {
                next[i + 1] += c;
                next[i] -= self.c0 * c;
            }
            for j in 1..=n {
                let c = self.coeff(j);
                for (i, v) in polys[n - j].iter().enumerate() {
                    next[i] -= c * v;
                }
            }
            if n >= 1 {
                next[0] -= self.coeff(n) * n as f64;
            }
            for v in next.iter_mut() {
                *v /= self.c1;
            }
            polys.push(next);
        }
        Ok(polys)
    }
}

/// Evaluates a polynomial with ascending coefficients.
pub fn poly_eval(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * z + c)
}
