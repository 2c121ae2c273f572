//! Analysis toolkit for binary weakly self-dual codes.
//!
//! * [`gf2`]: generator matrices, duals, exact weight distributions.
//! * [`enumerators`]: exact MacWilliams transform.
//! * [`hilbert`]: state vectors under `R_θ^⊗n` and the inequalities they imply.
//! * [`bounds`]: weight-distribution bounds in log2 form.
//! * [`zoo`], [`gmat`]: reference codes and the `.gmat` file format.
//! * [`report`]: the analysis pipeline behind the `wsd` binary.

pub mod bounds;
pub mod enumerators;
pub mod gf2;
pub mod gmat;
pub mod hilbert;
pub mod numeric;
pub mod prng;
pub mod report;
pub mod zoo;

pub use gf2::{BinaryCode, BitVector, CodeMetrics, WeightDistribution};
