//! The convection-diffusion-reaction model problem and hpd preconditioners.

mod cdr;
mod precond;

pub use cdr::{assemble_parts, build_cdr, grid_index, AssembledProblem, CdrParts, CdrProblemSpec};
pub use precond::{build_preconditioner, LinearOp, Placement, PreconditionerKind, PreconditionerSetup};
