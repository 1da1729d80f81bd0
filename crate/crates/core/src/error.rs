use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed Coxeter matrix: {0}")]
    MalformedMatrix(String),
    #[error("label m({i},{j}) = {label} is not supported in rank {rank} (only 2, 3, 4, 6, inf)")]
    NonCrystallographic {
        i: usize,
        j: usize,
        label: u32,
        rank: usize,
    },
    #[error("elements belong to different backends")]
    BackendMismatch,
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("parabolic subgroup generated by {0:?} is infinite")]
    InfiniteParabolic(Vec<usize>),
    #[error("operation requires a finite group")]
    InfiniteGroup,
    #[error("element budget of {0} exceeded")]
    Budget(usize),
    #[error("chain budget of {0} exceeded")]
    ChainBudget(usize),
    #[error("not a twisted involution")]
    NotTwistedInvolution,
    #[error("not a twisted identity")]
    NotTwistedIdentity,
    #[error("invalid diagram automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("subword search on an expression of length {0} exceeds the limit of {1}")]
    SubwordBudget(usize, usize),
    #[error("element lies beyond the enumerated truncation (rank {0})")]
    TruncationTooSmall(usize),
    #[error("pair {{s{0}, theta(s{0})}} generates an infinite dihedral group")]
    InfiniteDihedralPair(usize),
    #[error("fixed subgroup is infinite")]
    InfiniteFix,
    #[error("fixed subgroup is not generated by its finite dihedral longest elements")]
    UnsupportedInfinitePair,
    #[error("theta is not conjugation by the longest element")]
    ThetaNotConjugationByW0,
    #[error("u < v but rank(u) >= rank(v) for elements {0} and {1}")]
    InconsistentRanks(usize, usize),
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(usize, usize),
    #[error("boundary maps do not compose to zero in dimension {0}")]
    NotAComplex(isize),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("no commuting partition S1, S2, S3 exists")]
    NoPartition,
    #[error("no upper bound found among powers c^(2k) with k <= {0}")]
    KBudget(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by a resource limit rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::Budget(_) | Error::ChainBudget(_) | Error::SubwordBudget(..) | Error::KBudget(_)
        )
    }
}
