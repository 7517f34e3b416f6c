//! Exact numeric and quantized DT invariants of the m-loop quiver, computed
//! by a closed Moebius formula, by counting cyclic classes, and by
//! extracting plethystic logarithms of generating series.

pub mod error;
pub mod coha;
pub mod dtinv;
pub mod exactmath;
pub mod higgs;
pub mod hilbert;
pub mod necklaces;
pub mod partition;
pub mod plethystic;
pub mod verify;

pub use dtinv::DTRecord;
pub use error::{Error, Result};
pub use exactmath::{LaurentPoly, RationalFunctionQ};
pub use higgs::HiggsSeq;
pub use hilbert::{Tree, Word};
pub use necklaces::{CyclicClass, USequence};
pub use partition::Partition;
pub use plethystic::TruncSeries;
