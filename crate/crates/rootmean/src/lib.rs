//! Exact mean values of a polynomial's derivatives over the root families of its
//! derivatives and antiderivatives, the linear relations among them, and numeric
//! cross-checks.

pub mod error;
pub mod exact;
pub mod fixtures;
pub mod gw;
pub mod numeric;
pub mod partition;
pub mod phi;
pub mod relations;
pub mod seqmine;
pub mod symalg;

pub use error::{Error, Result};
pub use exact::ExactRational;
pub use partition::PartitionVector;
pub use phi::{phi, PhiKey, PhiResult};
pub use symalg::{BarMonomial, BarSymbol, QuasiBinomialVector, SymPoly};
