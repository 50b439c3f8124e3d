use thiserror::Error;

use crate::geometry::Point2;

/// Everything that can go wrong while building or applying a rule.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("degenerate triangle (signed area {signed_area:e})")]
    DegenerateTriangle { signed_area: f64 },
    #[error("polygon is not simple: {0}")]
    NotSimple(String),
    #[error("non-finite coordinate in input")]
    NonFiniteCoordinate,
    #[error("degree must be at least 1, got {0}")]
    BadDegree(usize),
    #[error("degree {0} exceeds the supported maximum of {max}", max = crate::bb_basis::MAX_DEGREE)]
    DegreeTooLarge(usize),
    #[error("multi-index ({i},{j},{k}) does not sum to degree {degree}")]
    IndexDegreeMismatch { i: usize, j: usize, k: usize, degree: usize },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("collocation system is singular to working precision (condition estimate {condition:e})")]
    IllConditionedCollocation { condition: f64 },
    #[error("integrand is not finite at ({}, {})", point.x, point.y)]
    NonFiniteSample { point: Point2 },
    #[error("point ({}, {}) lies on the polygon boundary", point.x, point.y)]
    PointOnBoundary { point: Point2 },
    #[error("point ({}, {}) lies outside the polygon", point.x, point.y)]
    PointOutside { point: Point2 },
    #[error("duplicate point ({}, {})", point.x, point.y)]
    DuplicatePoint { point: Point2 },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("triangulation failed: {0}")]
    Triangulation(String),
    #[error("oracle budget exhausted: value {value} with error estimate {error_estimate:e}")]
    OracleBudgetExceeded { value: f64, error_estimate: f64 },
    #[error("polynomial norm {norm:e} is too small for a meaningful ratio")]
    DegeneratePolynomial { norm: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Parse(#[from] crate::expr::ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
