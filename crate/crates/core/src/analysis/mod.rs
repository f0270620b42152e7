//! Solution metrics, the six-constraint validator, the with/without
//! compression comparison and an exhaustive oracle for tiny instances.

mod compare;
mod metrics;
mod oracle;
mod validate;

pub use compare::{compare_compression, Comparison, ComparisonRow};
pub use metrics::compute_metrics;
pub use oracle::{oracle_pack, OracleError, OracleResult, ORACLE_MAX_ITEMS};
pub use validate::{
    validate_prefixes, validate_solution, validate_solution_with_tolerance, Constraint, Violation,
};
