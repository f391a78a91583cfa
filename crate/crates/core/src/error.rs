use thiserror::Error;

use crate::basis_graph::VertexSubset;
use crate::vector::ExactVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system {name}: the basis graph has 2^|R+| vertices and {reason}")]
    UnsupportedType { name: String, reason: String },

    #[error("Weyl group enumeration exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("subset enumeration over {num_roots} roots exceeds the limit of {limit}")]
    SizeExceeded { num_roots: usize, limit: usize },

    #[error("r_e*α - α is not an integer multiple of e (root {root}, weight {weight})")]
    NotProportional { root: usize, weight: ExactVector },

    #[error("{a} and {b} are not adjacent in the basis graph")]
    NotAnEdge { a: VertexSubset, b: VertexSubset },

    #[error("path {a} - {b} - {c} does not complete to a diamond")]
    NoDiamond {
        a: VertexSubset,
        b: VertexSubset,
        c: VertexSubset,
    },

    #[error("path {a} - {b} - {c} completes to {count} diamonds")]
    MultipleDiamonds {
        a: VertexSubset,
        b: VertexSubset,
        c: VertexSubset,
        count: usize,
    },

    #[error("invalid 2-path {a} - {b} - {c}: {reason}")]
    InvalidPath {
        a: VertexSubset,
        b: VertexSubset,
        c: VertexSubset,
        reason: &'static str,
    },

    #[error("d^2 != 0 on weight {weight}: composite of degrees {from} -> {to} is nonzero")]
    SquareNotZero {
        weight: ExactVector,
        from: usize,
        to: usize,
    },

    #[error("weights {a} and {b} are not negatives of each other")]
    NotDual { a: ExactVector, b: ExactVector },

    #[error("duality map fails to intertwine d and δ at vertex {vertex}")]
    IntertwineFailure { vertex: VertexSubset },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("weight {0} does not translate to an integral combinatorial weight")]
    NotIntegral(ExactVector),

    #[error("operation requires a type A root system")]
    NotTypeA,

    #[error("torsion coefficient {0} does not fit in 64 bits")]
    TorsionTooLarge(String),

    #[error("theorem violation: {}", .0.join("; "))]
    TheoremViolation(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
