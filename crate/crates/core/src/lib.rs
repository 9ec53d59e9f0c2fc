//! Growth rates of non-backtracking walks.
//!
//! For a graph `G` this crate computes the universal-cover growth rate `rho`
//! (Perron value of the non-backtracking operator) and the average growth
//! rate `Lambda` (degree-weighted geometric mean of `deg - 1`), decides
//! exactly whether they coincide, and measures how many random bits a
//! non-backtracking random walk consumes.
//!
//! Modules:
//! - [`graph`]: multigraphs with dart indexing and the text format
//! - [`operator`]: sparse `B`, `Pi`, weighted variants, Perron values, walk counts
//! - [`exact`]: prime-exponent arithmetic for values like `2^(3/5)`
//! - [`conditions`]: suspended paths, the path and cycle conditions, witnesses
//! - [`families`]: wheels, `H_k`, subdivisions and baseline generators
//! - [`walk`]: walk sampling, Monte Carlo bit statistics, exact bit PDF
//! - [`variance`]: finite-length and asymptotic variance of the bit count

pub mod conditions;
pub mod error;
pub mod exact;
pub mod families;
pub mod graph;
pub mod operator;
pub mod variance;
pub mod walk;

pub use conditions::{
    check_cycle_condition, check_suspended_path_condition, find_improving_cycle, lambda_value,
    suspended_path_decomposition, verdict_rho_equals_lambda, ConditionVerdict, PathFunctionOnDarts, RhoLambdaVerdict,
    SuspendedPath, Verdict, Witness,
};
pub use error::{Error, GraphError, Result};
pub use exact::ExactValue;
pub use graph::{Dart, DartId, Edge, EdgeKind, Graph, Irreducibility, VertexId};
pub use operator::{perron_value, rho, NbOperator, PerronEstimate};
pub use variance::{asymptotic_variance, truncated_variance, VarianceReport};
pub use walk::{estimate_bit_stats, exact_bit_pdf, sample_walk, BitStats, ExactBitPdf, WalkSample};
