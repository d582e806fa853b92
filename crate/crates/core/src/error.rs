use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group spec: {0}")]
    SpecInvalid(String),

    #[error("group closure exceeds the element cap of {cap}")]
    GroupTooLarge { cap: usize },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroups belong to different parent groups")]
    ParentMismatch,

    #[error("group is not abelian")]
    NotAbelian,

    #[error("upper central series stalls below the whole group")]
    SeriesDoesNotTerminate,

    #[error("group is not nilpotent")]
    NotNilpotent,

    #[error("eigenspace splitting stalled over F_{q}: {detail}")]
    SplitIncomplete { q: u64, detail: String },

    #[error("degree recovery failed over F_{q}: {detail}")]
    DegreeNotSquare { q: u64, detail: String },

    #[error("multiplicity lift failed over F_{q}: {detail}")]
    LiftFailed { q: u64, detail: String },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("GCP methods disagree: {0}")]
    MethodDisagreement(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("ambient group of order {order} exceeds search cap {cap}")]
    AmbientTooLarge { order: usize, cap: usize },

    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
}

pub type Result<T> = std::result::Result<T, Error>;
