use thiserror::Error;

use crate::field::FieldError;

/// Failures of geometric operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("the two circles are identical")]
    IdenticalCircles,
    #[error("point does not lie on the line")]
    PointNotOnLine,
    #[error("target base is not congruent to the source segment")]
    NotCongruentBase,
    #[error("point is not collinear with the base segment")]
    NonCollinearInput,
    #[error("angle is not a right angle")]
    NotRightAngle,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("auxiliary point does not lie on a side line of the triangle")]
    AuxPointNotOnSideLines,
    #[error("first angle is not greater than the second")]
    NotGreater,
    #[error("the origin has no polar coordinates")]
    OriginExcluded,
    #[error("rays are equal or opposite and do not form an angle")]
    InvalidAngle,
    #[error("the {0} model has no square root needed here")]
    NotConstructibleInModel(crate::field::Model),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type GeomResult<T> = Result<T, GeomError>;
