use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("variable count mismatch ({0} vs {1})")]
    VarMismatch(usize, usize),
    #[error("variable index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("degree cap violated in variable {var}: degree {degree} > cap {cap}")]
    CapViolated { var: usize, degree: u32, cap: u32 },
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate elimination: {0}")]
    Degenerate(String),
    #[error("Monte Carlo failure: {0}")]
    MonteCarlo(String),
    #[error("scale cap exceeded: {0}")]
    ScaleCap(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Degenerate(_) | Error::MonteCarlo(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
