use alloc::string::String;
use core::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operation on a polytope with no vertices.
    EmptyPolytope,
    /// Adjacency query with `u == v`.
    IdenticalVertices,
    /// Vertex or node index out of range.
    BadIndex(usize),
    /// A configured size limit was exceeded; carries a short description.
    LimitExceeded(String),
    /// Edge expansion of a single node is undefined.
    ExpansionUndefined,
    /// An improper cut set (empty or the full node set).
    ImproperCut,
    /// Diameter of a disconnected graph.
    InfiniteDiameter,
    /// Random walk on fewer than two nodes or no edges.
    WalkUndefined,
    /// `lambda_2 >= 1`: graph disconnected or numerically degenerate.
    DegenerateSpectrum,
    /// Eigenvalue iteration failed to converge; carries the best estimate.
    NoConvergence(f64),
    /// Certified bound requested for a nonpositive arc load.
    NonpositiveFlow,
    /// `(u, v)` is not a skeleton edge.
    NotAnEdge(usize, usize),
    /// A wall required by a flow construction has no fractional matching;
    /// carries the wall's sigma pattern.
    NoWallMatching(String),
    /// A family generator received an invalid argument.
    BadFamilyArgument(String),
    /// Input graph must be connected.
    DisconnectedInput,
    /// A stable-set argument is not stable.
    NotStable,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyPolytope => write!(f, "empty polytope"),
            Error::IdenticalVertices => write!(f, "identical vertices"),
            Error::BadIndex(i) => write!(f, "index {} out of range", i),
            Error::LimitExceeded(what) => write!(f, "{}", what),
            Error::ExpansionUndefined => write!(f, "expansion undefined"),
            Error::ImproperCut => write!(f, "improper cut"),
            Error::InfiniteDiameter => write!(f, "infinite diameter"),
            Error::WalkUndefined => write!(f, "walk undefined"),
            Error::DegenerateSpectrum => {
                write!(f, "graph disconnected or numerically degenerate")
            }
            Error::NoConvergence(best) => {
                write!(f, "eigenvalue iteration did not converge (best {})", best)
            }
            Error::NonpositiveFlow => write!(f, "maximal arc load must be positive"),
            Error::NotAnEdge(u, v) => write!(f, "({}, {}) is not a skeleton edge", u, v),
            Error::NoWallMatching(sigma) => {
                write!(f, "wall {} has no fractional matching", sigma)
            }
            Error::BadFamilyArgument(what) => write!(f, "{}", what),
            Error::DisconnectedInput => write!(f, "input graph is disconnected"),
            Error::NotStable => write!(f, "set is not stable"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
