use std::fmt;

/// Failure classes, each with its own exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    BadArgs,
    Io,
    Budget,
    Algorithm,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub error: anyhow::Error,
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn new(kind: Kind, error: impl Into<anyhow::Error>) -> Self {
        Self {
            kind,
            error: error.into(),
        }
    }

    pub fn bad_args(message: impl fmt::Display) -> Self {
        Self::new(Kind::BadArgs, anyhow::anyhow!("{message}"))
    }

    pub fn code(&self) -> u8 {
        match self.kind {
            Kind::BadArgs => 2,
            Kind::Io => 3,
            Kind::Budget => 4,
            Kind::Algorithm => 5,
        }
    }

    pub fn context(self, context: impl fmt::Display + Send + Sync + 'static) -> Self {
        Self {
            kind: self.kind,
            error: self.error.context(context),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.alternate() {
            write!(f, "{:#}", self.error)
        } else {
            write!(f, "{}", self.error)
        }
    }
}

fn kind_of(e: &ripsmap::Error) -> Kind {
    use ripsmap::Error as E;
    match e {
        E::Io(_) | E::Csv(_) | E::Json(_) | E::Parse { .. } | E::RaggedRow { .. } | E::NonFinite { .. } => Kind::Io,
        E::MissingColumn(_) | E::UnknownLevel { .. } | E::RowCountMismatch { .. } => Kind::Io,
        E::BudgetExceeded { .. } => Kind::Budget,
        E::CoverElement { source, .. } => kind_of(source),
        E::InvalidRadii { .. }
        | E::InvalidSide(_)
        | E::InvalidK { .. }
        | E::InvalidParam { .. }
        | E::EncodingSpec(_)
        | E::AxisOutOfRange { .. } => Kind::BadArgs,
        E::EmptyCluster(_) | E::AssignmentLength { .. } | E::NoiseInPartition(_) | E::MissingFace(_) => Kind::Algorithm,
    }
}

impl From<ripsmap::Error> for CliError {
    fn from(e: ripsmap::Error) -> Self {
        let kind = kind_of(&e);
        let error = match e {
            ripsmap::Error::BudgetExceeded { .. } => {
                anyhow::anyhow!("{e}; lower --max-eps or pass --subsample (or raise RIPSMAP_SIMPLEX_BUDGET)")
            }
            other => other.into(),
        };
        Self { kind, error }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::new(Kind::Io, e)
    }
}
