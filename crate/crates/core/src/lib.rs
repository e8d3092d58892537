pub mod coeff;
pub mod algebra;
pub mod coxeter;
pub mod error;
pub mod invariant;
pub mod linalg;
pub mod partitions;
pub mod random;
pub mod selfcheck;
pub mod tensorrep;
pub mod trace;

pub use algebra::{Algebra, AlgebraElement, CDescriptor, Generator, Params};
pub use coeff::{LaurentPoly, Monomial, Var};
pub use coxeter::{Block, BraidWord, CoxGen, Perm, SignedPerm};
pub use error::{Error, Result};
pub use invariant::{invariant_eq, InvariantValue};
pub use partitions::SetPartition0;
pub use tensorrep::{TensorRep, TensorVector};
