use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument fell outside the domain of the function.
    #[error("{func}: argument {value} outside domain ({expected})")]
    Domain {
        func: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// The parameters admit no bound states.
    #[error("no bound states: calV0 = {cal_v0} exceeds 1/4 (bound-state condition calV0 <= 1/4)")]
    NotBound { cal_v0: f64 },

    /// A series or product ran into a pole.
    #[error("{func}: pole at {value}")]
    Pole { func: &'static str, value: f64 },

    #[error("{method} did not converge: {detail}")]
    NonConvergence {
        method: &'static str,
        detail: String,
    },

    /// The requested closed form does not exist for these inputs.
    #[error("closed form unavailable: {0}")]
    ClosedFormUnavailable(String),
}
