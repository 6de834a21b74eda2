use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// An angle or other bounded parameter fell outside its admitted range.
    #[error("{name} = {value} is outside [{min}, {max}]")]
    Range {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("invalid argument: {0}")]
    Argument(String),
    /// A formula was evaluated outside the inputs it is valid for.
    #[error("outside domain: {0}")]
    Domain(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}
