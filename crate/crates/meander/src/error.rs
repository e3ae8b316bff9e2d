use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arcs cross: {0}")]
    NonPlanar(String),
    #[error("strand is not a single curve or arc: {0}")]
    Disconnected(String),
    #[error("bad arity: {0}")]
    BadArity(String),
    #[error("face with an odd number of sides ({0})")]
    OddSideCount(usize),
    #[error("strand is not closed")]
    StrandNotClosed,
    #[error("branch set has odd size {0}")]
    OddBranchSetSize(usize),
    #[error("shared anchors must be branch points")]
    SharedAnchorUnbranched,
    #[error("invalid orders: {0}")]
    InvalidOrder(String),
    #[error("infeasible stratum: {0}")]
    InfeasibleStratum(String),
    #[error("core curve is not embedded: {0}")]
    CurveNotEmbedded(String),
    #[error("surface has half squares; operation needs a square-tiled surface")]
    HalfSquare,
    #[error("stratum is not a hyperelliptic component of the table: {0}")]
    NotInTable(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("cannot parse stratum {0:?}")]
    StratumSyntax(String),
}

pub type Result<T> = std::result::Result<T, Error>;
