use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::projector::{build_projectors, DeflationOperator};
use crate::linalg::{skew_gen_eig, skew_pencil_precond, vector, ComplexMatrix, EigCount, EigenPairs, Lu};
use crate::problem::{AssembledProblem, PreconditionerSetup};
use crate::{Error, Result, C64};

/// Relative residual below which a candidate basis column counts as dependent.
const RANK_TOL: f64 = 1e-8;

/// Which generalized eigenproblem provides the deflation vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GevpKind {
    /// `N x = lambda H^{-1} x`.
    Hn,
    /// `N x = lambda M x`.
    MinvN,
}

impl std::fmt::Display for GevpKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Hn => "hn",
            Self::MinvN => "minv-n",
        })
    }
}

/// How `Y` and `Z` are derived from the spectral basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairingVariant {
    /// hn: `Z = A^{-1} N V`, `Y = H A Z`. minv-n: `Z = V`, `Y = H A Z`.
    YHaz,
    /// hn only: `Z = Y = V`.
    ZEqualsY,
    /// hn only: `Y = V`, `Z = N V`.
    ZEqualsNy,
}

impl std::fmt::Display for PairingVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::YHaz => "y-haz",
            Self::ZEqualsY => "z-equals-y",
            Self::ZEqualsNy => "z-equals-ny",
        })
    }
}

/// Identifies the `(H, M)` pair a spectral space was computed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OperatorFingerprint(u64);

impl OperatorFingerprint {
    pub fn of(problem: &AssembledProblem, setup: &PreconditionerSetup) -> Self {
        let mut h = DefaultHasher::new();
        for m in [setup.h(), &problem.m, &problem.n] {
            m.rows().hash(&mut h);
            for v in m.data() {
                v.re.to_bits().hash(&mut h);
                v.im.to_bits().hash(&mut h);
            }
        }
        Self(h.finish())
    }
}

/// All eigenpairs of the chosen pencil, ordered by non-increasing modulus.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub kind: GevpKind,
    pub pairs: EigenPairs,
    fingerprint: OperatorFingerprint,
}

#[derive(Debug, Clone)]
pub struct SpectralDeflationSpace {
    pub kind: GevpKind,
    pub m: usize,
    /// Modulus of the first eigenvalue not represented in the basis.
    pub tau: f64,
    /// Realified eigenvectors, `n x m`.
    pub basis: ComplexMatrix,
    /// Eigenvalues whose vectors contributed to the basis.
    pub used: Vec<C64>,
    fingerprint: OperatorFingerprint,
}

impl SpectralDecomposition {
    pub fn compute(problem: &AssembledProblem, setup: &PreconditionerSetup, kind: GevpKind) -> Result<Self> {
        let pairs = match kind {
            GevpKind::Hn => skew_pencil_precond(&problem.n, setup.h_cholesky(), EigCount::All)?,
            GevpKind::MinvN => skew_gen_eig(&problem.n, &problem.m, EigCount::All)?,
        };
        Ok(Self { kind, pairs, fingerprint: OperatorFingerprint::of(problem, setup) })
    }

    /// Spectral radius of the pencil.
    pub fn radius(&self) -> f64 {
        self.pairs.max_modulus()
    }

    pub fn space(&self, m: usize) -> Result<SpectralDeflationSpace> {
        let n = self.pairs.vectors.rows();
        if m % 2 == 1 {
            return Err(Error::OddRequest(m));
        }
        if m >= n {
            return Err(Error::DimensionMismatch(format!("deflation size {m} for dimension {n}")));
        }
        let vals = &self.pairs.values;
        let scale = self.radius().max(f64::MIN_POSITIVE);
        let mut accepted: Vec<Vec<C64>> = Vec::new();
        let mut ortho: Vec<Vec<C64>> = Vec::new();
        let mut used = Vec::new();
        let mut next = 0;
        let try_add = |col: Vec<C64>, accepted: &mut Vec<Vec<C64>>, ortho: &mut Vec<Vec<C64>>| {
            let norm = vector::norm2(&col);
            if norm == 0.0 {
                return;
            }
            let mut w = col.clone();
            for _ in 0..2 {
                for q in ortho.iter() {
                    let c = vector::dot(q, &w);
                    vector::axpy(-c, q, &mut w);
                }
            }
            let r = vector::norm2(&w);
            if r > RANK_TOL * norm {
                vector::scale(C64::new(1.0 / r, 0.0), &mut w);
                ortho.push(w);
                accepted.push(col);
            }
        };
        while accepted.len() < m && next < vals.len() {
            let x = self.pairs.vectors.column(next);
            let lam = vals[next];
            let paired = lam.im.abs() > 1e-12 * scale
                && next + 1 < vals.len()
                && (vals[next + 1] - lam.conj()).norm() <= 1e-8 * scale;
            used.push(lam);
            if paired {
                let re: Vec<C64> = x.iter().map(|v| C64::new(v.re, 0.0)).collect();
                let im: Vec<C64> = x.iter().map(|v| C64::new(v.im, 0.0)).collect();
                try_add(re, &mut accepted, &mut ortho);
                if accepted.len() < m {
                    try_add(im, &mut accepted, &mut ortho);
                    used.push(vals[next + 1]);
                    next += 2;
                } else {
                    // the partner is not represented, so it bounds the remainder
                    next += 1;
                }
            } else {
                try_add(x, &mut accepted, &mut ortho);
                next += 1;
            }
        }
        if accepted.len() < m {
            return Err(Error::RankLoss { rank: accepted.len(), requested: m });
        }
        let tau = vals.get(next).map_or(0.0, |v| v.norm());
        Ok(SpectralDeflationSpace {
            kind: self.kind,
            m,
            tau,
            basis: ComplexMatrix::from_columns(n, &accepted),
            used,
            fingerprint: self.fingerprint,
        })
    }
}

pub fn build_spectral_space(
    problem: &AssembledProblem,
    setup: &PreconditionerSetup,
    kind: GevpKind,
    m: usize,
) -> Result<SpectralDeflationSpace> {
    SpectralDecomposition::compute(problem, setup, kind)?.space(m)
}

/// Which hypotheses of the deflated convergence bound a pairing satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairingHypotheses {
    /// `Y = H A Z` holds by construction.
    pub y_equals_haz: bool,
    /// `Y^* A Z` and `Y^* H^{-1} Z` are both invertible.
    pub pd_conditions: bool,
}

#[derive(Debug, Clone)]
pub struct DeflationPairing {
    pub y: ComplexMatrix,
    pub z: ComplexMatrix,
    pub variant: PairingVariant,
    pub kind: GevpKind,
    pub tau: f64,
    pub hypotheses: PairingHypotheses,
    pub operator: DeflationOperator,
}

pub fn make_pairing(
    space: &SpectralDeflationSpace,
    problem: &AssembledProblem,
    setup: &PreconditionerSetup,
    variant: PairingVariant,
) -> Result<DeflationPairing> {
    if space.fingerprint != OperatorFingerprint::of(problem, setup) {
        return Err(Error::MismatchedOperators);
    }
    let v = &space.basis;
    let h = setup.h();
    let a = &problem.a;
    let (y, z, exact) = match (space.kind, variant) {
        (GevpKind::MinvN, other) if other != PairingVariant::YHaz => {
            return Err(Error::IncompatibleVariant(other.to_string()))
        }
        (_, _) if space.m == 0 => (v.clone(), v.clone(), true),
        (GevpKind::Hn, PairingVariant::YHaz) => {
            let z = Lu::new(a)?.solve_matrix(&problem.n.matmul(v));
            (h.matmul(&a.matmul(&z)), z, true)
        }
        (GevpKind::Hn, PairingVariant::ZEqualsY) => (v.clone(), v.clone(), false),
        (GevpKind::Hn, PairingVariant::ZEqualsNy) => (v.clone(), problem.n.matmul(v), false),
        (GevpKind::MinvN, _) => (h.matmul(&a.matmul(v)), v.clone(), true),
    };
    let operator = build_projectors(a, &y, &z, Some(setup.h_cholesky()))?;
    Ok(DeflationPairing {
        y,
        z,
        variant,
        kind: space.kind,
        tau: space.tau,
        hypotheses: PairingHypotheses { y_equals_haz: exact, pd_conditions: true },
        operator,
    })
}
