use thiserror::Error;

use crate::algebra::ExponentVector;
use crate::field::FieldSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("unrecognized field `{0}` (expected `gf:<prime>` or `qq`)")]
    BadSpec(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} does not fit below 2^31")]
    ModulusTooLarge(u32),
    #[error("cannot parse field element `{0}`")]
    BadElement(String),
    #[error("{field} does not contain the {k}-th roots of unity")]
    NoRootsOfUnity { field: FieldSpec, k: u32 },
    #[error("characteristic of {field} divides k = {k}")]
    CharacteristicDividesColors { field: FieldSpec, k: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: u32 },
    #[error("line {line}: vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { line: usize, vertex: u32, n: u32 },
    #[error("missing `p edge n m` header")]
    MissingHeader,
    #[error("edge {{{0}, {1}}} is not an edge of the graph")]
    UnknownEdge(u32, u32),
    #[error("invalid edge {{{0}, {1}}}")]
    InvalidEdge(u32, u32),
    #[error("coloring is improper: both endpoints of {{{0}, {1}}} share a color")]
    ImproperColoring(u32, u32),
    #[error("coloring covers {got} vertices, graph has {n}")]
    ColoringSize { got: usize, n: u32 },
    #[error("vertex {0} has colour 0 (colours start at 1)")]
    ZeroColor(u32),
    #[error("ordering is not a bijection on 1..={0}")]
    NotABijection(u32),
    #[error("invalid graph JSON: {0}")]
    Json(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("monomials over different color counts ({0} vs {1})")]
    MismatchedColors(u32, u32),
    #[error("polynomials over different ambient vertex sets ({0} vs {1} vertices)")]
    MismatchedAmbient(u32, u32),
    #[error("exponent {exp} of vertex {vertex} is not below k = {k}")]
    ExponentOutOfRange { vertex: u32, exp: u32, k: u32 },
    #[error("vertex {0} outside the ambient vertex set")]
    VertexOutOfRange(u32),
    #[error("no value assigned to vertex {0}")]
    MissingAssignment(u32),
    #[error("k must be at least 2, got {0}")]
    TooFewColors(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("invalid polynomial JSON: {0}")]
    Json(String),
    #[error("cannot parse monomial `{0}`")]
    Parse(String),
}

/// Failures of the local patching construction.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatchError {
    #[error("essential graph of {0} is not a forest")]
    EssentialGraphNotForest(ExponentVector),
    #[error("local system for {0} is infeasible")]
    LocalInfeasible(ExponentVector),
    #[error("assembled functional violates the DCOL row for {monomial} and edge {{{u}, {v}}}")]
    PatchVerificationFailed {
        monomial: ExponentVector,
        u: u32,
        v: u32,
    },
    #[error("assembled functional has lambda_0 != 1")]
    ConstantNotOne,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
