//! Independent ground truth for the theorem engine: exact colorings of
//! finite graphs, sandwich bounds, and certificate checking.

mod bounds;
mod cyclic;
mod exact;
mod verify;

pub use bounds::{
    lower_bound, sandwich_verify, upper_bound, LowerBound, LowerWitness, OracleConfig,
    QuotientSource, SandwichReport, SandwichStatus, UpperBound,
};
pub use exact::{
    exact_chromatic, greedy_clique, ColoringAssignment, ExactOptions, ExactOutcome,
    DEFAULT_NODE_BUDGET,
};
pub use verify::verify_certificate;
