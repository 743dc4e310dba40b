use alloc::string::String;
use core::fmt;

use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Operands carry different depth or zero-threshold settings.
    TruncationMismatch,
    DivisionByZero,
    /// Roots are only taken of positive numbers.
    NonPositiveRoot,
    Parse { offset: usize, message: String },
    /// A real function was evaluated outside its domain.
    Domain(String),
    NotNearstandard,
    /// Extension order exceeds what the function supports at the point.
    Differentiability(String),
    QuadratureBudget { evaluations: usize, error_estimate: f64 },
    InvalidInterval(String),
    OutOfInterval,
    /// Partial sums did not stabilise within the term budget.
    SeriesNotConvergent { terms: usize },
    Overlap,
    InfiniteEndpoint,
    DimensionMismatch,
    Uncovered,
    TailUnbounded,
    TailNotInfinitesimal(Rational),
    /// The requested integrand/region pair has no licensed closed form.
    Unsupported(String),
    ScheduleExhausted { points: usize },
    InvalidDelta(String),
    InsufficientSmoothness { derivative: u32, smoothness: u32 },
    CenterOutsideDomain,
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TruncationMismatch => write!(f, "operands use different truncation settings"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NonPositiveRoot => write!(f, "root of a non-positive number"),
            Error::Parse { offset, message } => write!(f, "parse error at byte {}: {}", offset, message),
            Error::Domain(msg) => write!(f, "domain error: {}", msg),
            Error::NotNearstandard => write!(f, "argument is not nearstandard in the domain"),
            Error::Differentiability(msg) => write!(f, "not differentiable to the requested order: {}", msg),
            Error::QuadratureBudget { evaluations, error_estimate } => write!(
                f,
                "quadrature did not converge after {} evaluations (error estimate {:e})",
                evaluations, error_estimate
            ),
            Error::InvalidInterval(msg) => write!(f, "invalid interval: {}", msg),
            Error::OutOfInterval => write!(f, "point lies outside the interval"),
            Error::SeriesNotConvergent { terms } => {
                write!(f, "series failed the convergence certificate after {} terms", terms)
            }
            Error::Overlap => write!(f, "intervals overlap"),
            Error::InfiniteEndpoint => write!(f, "set has an infinite endpoint"),
            Error::DimensionMismatch => write!(f, "rectangles have different dimensions"),
            Error::Uncovered => write!(f, "interval is not covered by a single piece of the function"),
            Error::TailUnbounded => write!(f, "set has a tail but the integrand has no declared bound"),
            Error::TailNotInfinitesimal(q) => {
                write!(f, "tail contribution has valuation {} and is not infinitesimal", q)
            }
            Error::Unsupported(msg) => write!(f, "M-integrability not established: {}", msg),
            Error::ScheduleExhausted { points } => {
                write!(f, "limit schedule exhausted after {} points without a verdict", points)
            }
            Error::InvalidDelta(msg) => write!(f, "invalid delta: {}", msg),
            Error::InsufficientSmoothness { derivative, smoothness } => write!(
                f,
                "derivative order {} exceeds delta smoothness {}",
                derivative, smoothness
            ),
            Error::CenterOutsideDomain => write!(f, "delta center lies outside the function domain"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {}", msg),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
