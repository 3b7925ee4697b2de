//! Powers of sparse random graphs: sampling, distance-`r` statistics,
//! colourings of `G^r`, the closed-form quantities that predict them, and a
//! reproducible Monte Carlo harness.
//!
//! All logarithms are natural logarithms.

mod bitset;
pub mod coloring;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod metrics;
pub mod profile;
pub mod theory;

pub use coloring::Coloring;
pub use error::{Error, Result};
pub use graph::{Graph, RandomSource, SamplingMode, VertexSet};
pub use profile::DegreeProfile;
pub use theory::TheoryParams;
