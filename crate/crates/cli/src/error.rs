use std::fmt;

/// Failure of a CLI invocation. Every variant maps to exit status 1.
#[derive(Debug)]
pub enum CliError {
    Clap(clap::Error),
    Usage(String),
    Range(String),
    Compute(blochkit::Error),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Clap(e) => write!(f, "{e}"),
            Self::Usage(m) => write!(f, "usage error: {m}"),
            Self::Range(m) => write!(f, "range error: {m}"),
            Self::Compute(blochkit::Error::ParameterRange { name, value, bound }) => {
                write!(f, "range error: `{name}` = {value} violates {bound}")
            }
            Self::Compute(e) => write!(f, "error: {e}"),
            Self::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<blochkit::Error> for CliError {
    fn from(e: blochkit::Error) -> Self {
        Self::Compute(e)
    }
}

impl CliError {
    pub fn is_range(&self) -> bool {
        matches!(
            self,
            Self::Range(_) | Self::Compute(blochkit::Error::ParameterRange { .. } | blochkit::Error::OutsideDisk { .. })
        )
    }
}
