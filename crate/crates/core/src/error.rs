use thiserror::Error;

/// Everything that can go wrong inside the engine.
///
/// Variants that come from validation carry a witness so the caller can
/// point at the offending entry.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not square or has an out-of-range entry: {0}")]
    MalformedTable(String),
    #[error("multiplication is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {identity} is not a two-sided identity (fails at {witness})")]
    BadIdentity { identity: usize, witness: usize },
    #[error("size limit exceeded: {0}")]
    SizeLimitExceeded(String),
    #[error("monoid is not commutative")]
    NotCommutative,
    #[error("congruence is not two-sided: {a} ~ {b} but {s}*{a} !~ {s}*{b}")]
    NotTwoSided { a: usize, b: usize, s: usize },
    #[error("unit law violated: {elem}*1 = {got}")]
    UnitLawViolated { elem: usize, got: usize },
    #[error("action is not associative: ({elem}*{s})*{t} != {elem}*({s}*{t})")]
    ActionNotAssociative { elem: usize, s: usize, t: usize },
    #[error("invalid zero element {0}")]
    BadZero(usize),
    #[error("generating set is empty")]
    EmptyGeneratingSet,
    #[error("element set is not a subact (witness {elem}*{s} = {image} escapes)")]
    NotASubact { elem: usize, s: usize, image: usize },
    #[error("acts are over different monoids")]
    MixedMonoids,
    #[error("act or monoid is missing a zero element")]
    MissingZero,
    #[error("congruences live on different acts")]
    MixedActs,
    #[error("relation is not a congruence: {0}")]
    NotACongruence(String),
    #[error("meet of the family does not equal the target congruence")]
    MeetMismatch,
    #[error("input set is empty")]
    EmptySet,
    #[error("map is not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("act is not projective")]
    NotProjective,
    #[error("congruences are not nested")]
    NotNested,
    #[error("not an ascending chain of subacts ending at the whole act: {0}")]
    NotAChain(String),
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable variant name for machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedTable(_) => "MalformedTable",
            Error::NotAssociative(..) => "NotAssociative",
            Error::BadIdentity { .. } => "BadIdentity",
            Error::SizeLimitExceeded(_) => "SizeLimitExceeded",
            Error::NotCommutative => "NotCommutative",
            Error::NotTwoSided { .. } => "NotTwoSided",
            Error::UnitLawViolated { .. } => "UnitLawViolated",
            Error::ActionNotAssociative { .. } => "ActionNotAssociative",
            Error::BadZero(_) => "BadZero",
            Error::EmptyGeneratingSet => "EmptyGeneratingSet",
            Error::NotASubact { .. } => "NotASubact",
            Error::MixedMonoids => "MixedMonoids",
            Error::MissingZero => "MissingZero",
            Error::MixedActs => "MixedActs",
            Error::NotACongruence(_) => "NotACongruence",
            Error::MeetMismatch => "MeetMismatch",
            Error::EmptySet => "EmptySet",
            Error::NotAHomomorphism(_) => "NotAHomomorphism",
            Error::NotProjective => "NotProjective",
            Error::NotNested => "NotNested",
            Error::NotAChain(_) => "NotAChain",
            Error::UnknownSuite(_) => "UnknownSuite",
            Error::Invalid(_) => "Invalid",
        }
    }
}
