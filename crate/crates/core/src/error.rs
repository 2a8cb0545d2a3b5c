use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("wrong total degree: expected {expected}, got {got}")]
    WrongDegree { expected: u32, got: u32 },
    #[error("no pushforward weights (b = {0} is negative)")]
    NoPushforwardWeights(i64),
    #[error("pushforward weights need a projective bundle realization")]
    NotABundle,
    #[error("no closed form for {0}")]
    NoClosedForm(String),
    #[error("non-integral Euler characteristic {value} at {divisor} on {variety}")]
    NonIntegral {
        variety: String,
        divisor: String,
        value: String,
    },
    #[error("not an exceptional collection")]
    NotExceptional,
    #[error("move not admissible: {0}")]
    MoveNotAdmissible(String),
    #[error("parse error in {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("unknown variety {0}")]
    UnknownVariety(String),
    #[error("budget exhausted after {explored} states")]
    BudgetExhausted { explored: usize },
}

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Error {
        Error::Parse {
            input: input.into(),
            reason: reason.into(),
        }
    }
}
