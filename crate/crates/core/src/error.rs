use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("g({element}, 0) = 1; every approximation must start at 0")]
    NonzeroStart { element: usize },

    #[error("settled_by({element}) = {claimed} contradicted by the entry at stage {witness}")]
    SettlingContradicted {
        element: usize,
        claimed: usize,
        witness: usize,
    },

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("index {index} outside 1..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("empty window [{lo}, {hi}] (domain {domain_lo}..={domain_hi})")]
    EmptyWindow {
        lo: usize,
        hi: usize,
        domain_lo: usize,
        domain_hi: usize,
    },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("sequence bounds are required")]
    MissingBounds,

    #[error("bound violated at n = {index}: {detail}")]
    BoundViolated { index: usize, detail: String },

    #[error("domination a_n >= b_n violated at n = {index}")]
    DominationViolated { index: usize },

    #[error("value {value} outside [0, 1]")]
    OutOfUnitInterval { value: String },

    #[error("h({element}) needed but the range has only {available} elements within the horizon")]
    RangeExhausted { element: usize, available: usize },

    #[error("bound function decreases at argument {index}")]
    NotMonotone { index: usize },

    #[error("insufficient bound function: no stage s < {stages} with f(s) > {level}")]
    InsufficientBound { level: usize, stages: usize },

    #[error("element {element} has no settling certificate")]
    MissingCertificate { element: usize },

    #[error("block schedule covers {covered} positions, universe has {universe}")]
    ScheduleMismatch { covered: usize, universe: usize },

    #[error("target sequence has {len} terms, schedule has {blocks} blocks")]
    TargetTooShort { len: usize, blocks: usize },

    #[error("no admissible split: need {lower} < q = {q} < {upper}")]
    NoAdmissibleSplit {
        lower: String,
        q: String,
        upper: String,
    },

    #[error("split point q = {q} must lie strictly between 0 and 1")]
    DegenerateSplit { q: String },

    #[error("horizon {horizon} exceeds the table's stage count {stages}")]
    HorizonExceedsStages { horizon: usize, stages: usize },

    #[error("universe {universe} too small: level {level} reads A below {needed}")]
    UniverseTooSmall {
        universe: usize,
        level: usize,
        needed: usize,
    },

    #[error("bound function undefined at {argument}")]
    BoundUndefined { argument: usize },

    #[error("infeasible generator spec: {0}")]
    Infeasible(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("internal fault: {0}")]
    Internal(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
