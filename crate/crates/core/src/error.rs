use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate vertex identifier `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge identifier `{0}`")]
    DuplicateEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("zero label on edge `{0}`")]
    ZeroLabel(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is empty")]
    EmptyGraph,
    #[error("graph is not a circle")]
    NotACircle,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("not a plateau of the graph: {0}")]
    NotAPlateau(String),
    #[error("plateau is the whole graph")]
    WholeGraphPlateau,
    #[error("graphs do not match: {0}")]
    GraphMismatch(String),
    #[error("morphism is not incidence preserving: {0}")]
    Incidence(String),
    #[error("map is not admissible: {0}")]
    NotAdmissible(String),
    #[error("map is a topological covering; no plateau can be extracted")]
    TopologicalCovering,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("negative label on edge `{0}`; normalize signs first")]
    NegativeLabel(String),
    #[error("group is cyclic (graph reduces to a bare vertex)")]
    CyclicGroup,
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("automorphism inverts edge `{0}`; subdivide first")]
    Inversion(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("{reason}, line {line}")]
    Parse { line: usize, reason: String },
    #[error("{0}")]
    Io(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
