//! Conformal maps onto the exterior of rectangles, Laurent maps and Faber polynomials.

mod laurent;
mod quad;
mod rectangle;

pub use laurent::{poly_eval, LaurentMap};
pub use quad::GaussLegendre;
pub use rectangle::{side_lengths, solve_parameter, ExteriorMapRectangle, MapShape, DEFAULT_TRUNCATION};
