use thiserror::Error;

use crate::graph::{DartId, Irreducibility};

/// Errors raised while constructing or parsing a graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge}: vertex {vertex} out of range for {vertex_count} vertices")]
    EndpointOutOfRange {
        edge: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("edge {edge}: loop kind requires equal endpoints, got {a} and {b}")]
    LoopOnDistinctEndpoints { edge: usize, a: usize, b: usize },
    #[error("edge {edge}: normal edge with both endpoints at {vertex}; use a whole-loop")]
    NormalSelfPair { edge: usize, vertex: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph is not NB-irreducible ({0})")]
    NotIrreducible(Irreducibility),
    #[error("dart {dart} has out-degree zero, transition matrix undefined")]
    ZeroOutdegree { dart: DartId },
    #[error("weight {weight} on dart {dart} is not positive")]
    NonPositiveWeight { dart: DartId, weight: f64 },
    #[error(
        "power iteration did not converge after {iterations} iterations \
         (estimate {estimate}, bracket [{lower}, {upper}])"
    )]
    NoConvergence {
        iterations: usize,
        estimate: f64,
        lower: f64,
        upper: f64,
        vector: Vec<f64>,
    },
    #[error("exact PDF supports at most 2 distinct out-degrees above one, graph has {0}")]
    TooManyOutdegrees(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("singular linear system in fundamental-matrix solve")]
    SingularSystem,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn require_irreducible(g: &crate::graph::Graph) -> Result<()> {
    match g.nb_irreducibility() {
        Irreducibility::Ok => Ok(()),
        other => Err(Error::NotIrreducible(other)),
    }
}
