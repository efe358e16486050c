//! Chip-firing on queen's graphs.
//!
//! Builds queen's and toroidal queen's boards, reduces divisors with Dhar's
//! burning algorithm, computes ranks, independence numbers and gonality, and
//! checks the correspondence between maximum independent sets and the
//! positive-rank divisor classes of minimum degree.

pub mod firing;
#[cfg(feature = "cli")]
pub mod cli;
pub mod compositions;
pub mod divisor;
pub mod error;
pub mod gonality;
pub mod graph;
pub mod independence;
pub mod rank;
pub mod vertex_set;

pub use firing::{
    apply_script, canonical_form, dhar_burn, equivalent, fire_set, is_legal_firing, q_reduce,
    BurnReport, CANONICAL_BASE,
};
pub use compositions::Limits;
pub use divisor::{Divisor, FiringScript};
pub use error::{Error, Result};
pub use gonality::{
    enumerate_positive_rank_classes, gonality_exact_small, gonality_upper_bound, indep_divisor,
    poorest_row_chips, queen_gonality_formula, row_equitable_representative,
    toroidal_gonality_formula, verify_correspondence, CorrespondenceMode, CorrespondenceReport,
    GonalityMethod, GonalityReport,
};
pub use graph::{EdgeKind, EdgeKinds, Graph, GridSpec};
pub use independence::{
    is_independent, max_independent_sets, queen_alpha_formula, toroidal_alpha_formula,
    IndependentSet, MisResult,
};
pub use rank::{effective_in_class, has_positive_rank, rank, RankResult};
pub use vertex_set::VertexSet;
