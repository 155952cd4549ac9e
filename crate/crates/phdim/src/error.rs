//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violates a precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The requested computation is outside what this crate implements.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A size estimate exceeded the configured budget before any work started.
    #[error("resource limit exceeded: {what} needs {needed}, budget is {budget}")]
    Resource {
        what: &'static str,
        needed: u64,
        budget: u64,
    },

    /// A regression could not be carried out (too few usable points, etc.).
    #[error("fit failed: {0}")]
    Fit(String),

    /// An empirical CDF with no intervals behind it cannot be evaluated.
    #[error("empirical CDF is undefined: no intervals behind it")]
    UndefinedCdf,

    /// Two CDFs with different rescaling exponents cannot be compared.
    #[error("incompatible rescaling: exponents {0} and {1} differ")]
    IncompatibleRescale(f64, f64),

    /// Malformed text input.
    #[error("parse error: {0}")]
    Parse(String),

    /// An error that occurred while evaluating one cell of an experiment grid.
    #[error("cell (n = {n}, trial = {trial}) failed: {source}")]
    Cell {
        n: usize,
        trial: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Attach (n, trial) cell coordinates to an error bubbling out of a grid run.
    pub fn in_cell(self, n: usize, trial: usize) -> Error {
        Error::Cell {
            n,
            trial,
            source: Box::new(self),
        }
    }
}
