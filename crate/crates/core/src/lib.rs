//! Exact computations in the mod-`p` cohomology ring of an elementary abelian
//! `p`-group: Mùi and Dickson invariants, the Steenrod algebra action, and the
//! ideal of essential classes.

pub mod algebra;
pub mod error;
pub mod essential;
pub mod field;
pub mod invariants;
pub mod linalg;
pub mod steenrod;
pub mod verify;

pub use algebra::{Bidegree, Degree, Element, Monomial, Ring};
pub use error::{Error, Result};
pub use essential::{EssentialIdeal, MaximalSubgroup};
pub use field::Prime;
pub use invariants::{MuiIndex, MuiInvariants};
pub use linalg::{DegreeBasis, DegreeSpan};
pub use steenrod::{SteenrodOp, SteenrodWord};
pub use verify::{verify, verify_all, VerificationReport, VerifyConfig};
