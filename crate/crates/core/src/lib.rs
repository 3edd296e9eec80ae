//! Construction, verification, classification and search of permutation
//! trinomials over F_{q^2} (q = 2^k or 3^k) through their fractional
//! polynomials on the unit circle mu_{q+1}.

pub mod equivalence;
pub mod error;
pub mod families;
pub mod field;
pub mod numtheory;
pub mod perm;
pub mod poly;
pub mod search;
pub mod solvers;

pub use error::{Error, Result};
pub use field::{Elt, FieldCtx};
pub use perm::{Method, PermVerdict};
pub use poly::{FracPoly, SparsePoly, Trinomial};
