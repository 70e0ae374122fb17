//! Homology obstructions to embedding genus-1 tangles in knots.
//!
//! * [`intlinalg`]: Smith normal form and abelian group classification.
//! * [`diagram`]: PD-coded link diagrams, faces, checkerboard colorings,
//!   linking numbers, Reidemeister moves and the Kauffman bracket.
//! * [`branched`]: first homology of double branched covers, from Goeritz
//!   matrices or from surgery presentations.
//! * [`tangle`]: genus-1 tangles drawn in an annulus, their closures, and
//!   the torsion obstruction to embedding them in a knot.

pub mod branched;
pub mod diagram;
pub mod error;
pub mod intlinalg;
pub mod tangle;

pub use error::{Error, Result};
pub use intlinalg::{cokernel_group, smith_normal_form, torsion_order, AbelianGroup, IntMatrix, JsonInt, SnfResult};
