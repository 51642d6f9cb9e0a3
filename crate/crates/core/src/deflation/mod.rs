//! Deflation projectors and spectral deflation spaces.

mod projector;
mod spectral;

pub use projector::{build_projectors, DeflationOperator, CORE_RCOND_MIN};
pub use spectral::{
    build_spectral_space, make_pairing, DeflationPairing, GevpKind, OperatorFingerprint, PairingHypotheses,
    PairingVariant, SpectralDecomposition, SpectralDeflationSpace,
};
