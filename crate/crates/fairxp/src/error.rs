use std::fmt;

/// Process exit status for each failure class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Invalid = 2,
    Precondition = 3,
    CapExceeded = 4,
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{}", ParseLocation(.file, .line, .message))]
    Parse {
        file: Option<String>,
        line: Option<usize>,
        message: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] fairxp_core::Error),
}

struct ParseLocation<'a>(&'a Option<String>, &'a Option<usize>, &'a String);

impl fmt::Display for ParseLocation<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = self.0 {
            write!(f, "{file}:")?;
        }
        if let Some(line) = self.1 {
            write!(f, "{line}:")?;
        }
        if self.0.is_some() || self.1.is_some() {
            f.write_str(" ")?;
        }
        f.write_str(self.2)
    }
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            file: None,
            line: Some(line),
            message: message.into(),
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Error::Parse {
            file: None,
            line: None,
            message: message.into(),
        }
    }

    /// Attaches a file name to parse errors, including core validation
    /// errors raised while loading the file.
    pub fn in_file(self, path: &str) -> Self {
        match self {
            Error::Parse { line, message, .. } => Error::Parse {
                file: Some(path.to_string()),
                line,
                message,
            },
            Error::Core(e) if exit_code_of(&e) == ExitCode::Invalid => Error::Parse {
                file: Some(path.to_string()),
                line: None,
                message: e.to_string(),
            },
            other => other,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            Error::Io { .. } | Error::Parse { .. } | Error::Usage(_) => ExitCode::Invalid,
            Error::Core(e) => exit_code_of(e),
        }
    }
}

fn exit_code_of(e: &fairxp_core::Error) -> ExitCode {
    use fairxp_core::Error as E;
    match e {
        E::TooManyFeatures { .. } => ExitCode::CapExceeded,
        E::NotReal | E::AlreadyBiased | E::InvalidWitness => ExitCode::Precondition,
        _ => ExitCode::Invalid,
    }
}

/// Line-tagged core errors.
pub(crate) trait AtLine<T> {
    fn at_line(self, line: usize) -> Result<T, Error>;
}

impl<T> AtLine<T> for Result<T, fairxp_core::Error> {
    fn at_line(self, line: usize) -> Result<T, Error> {
        self.map_err(|e| match exit_code_of(&e) {
            ExitCode::Invalid => Error::parse(line, e.to_string()),
            _ => Error::Core(e),
        })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
