//! Exact ordered fields in which every geometric magnitude is interpreted.
//!
//! Three models are provided:
//!
//! * [`Rational`]: the rational numbers, Archimedean, closed only under
//!   square roots of perfect squares.
//! * [`TowerValue`]: constructible numbers, built by adjoining square roots
//!   of positive elements on demand.
//! * [`InfinitesimalValue`]: rational functions in a positive infinitesimal
//!   `eps`, ordered by their lowest-order term. This field is
//!   non-Archimedean and has no general square roots.
//!
//! Geometry is written generically over [`OrderedField`], so values from two
//! different models can never meet in one arithmetic expression. The dynamic
//! [`FieldValue`] wrapper exists for the places where the model is only known
//! at run time (script literals, coordinate probes) and reports
//! [`FieldError::ModelMismatch`] instead.

mod infinitesimal;
mod poly;
mod rational;
mod tower;
mod value;

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

pub use infinitesimal::InfinitesimalValue;
pub use poly::Poly;
pub use rational::{rational_sqrt, Rational};
pub use tower::TowerValue;
pub use value::FieldValue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("values from models `{left}` and `{right}` cannot be combined")]
    ModelMismatch { left: Model, right: Model },
    #[error("square root of a negative value")]
    NegativeArgument,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("division by zero")]
    DivisionByZero,
}

/// The three shipped field models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Model {
    Rational,
    Tower,
    Infinitesimal,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Rational, Model::Tower, Model::Infinitesimal];

    /// Whether every non-negative element has a square root in the model.
    pub fn has_sqrt(self) -> bool {
        matches!(self, Model::Tower)
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::Rational => "rational",
            Model::Tower => "tower",
            Model::Infinitesimal => "infinitesimal",
        }
    }
}

impl Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" => Ok(Model::Rational),
            "tower" => Ok(Model::Tower),
            "infinitesimal" => Ok(Model::Infinitesimal),
            other => Err(format!("unknown model `{other}`")),
        }
    }
}

/// An exact, totally ordered field.
///
/// Arithmetic operators follow std semantics: dividing by zero panics, so
/// callers check denominators first. Everything else is total and exact.
pub trait OrderedField:
    Clone
    + Debug
    + Display
    + Ord
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODEL: Model;

    fn from_rational(q: Rational) -> Self;

    fn zero() -> Self {
        Self::from_rational(Rational::from_integer(0.into()))
    }

    fn one() -> Self {
        Self::from_rational(Rational::from_integer(1.into()))
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(n.into(), d.into()))
    }

    fn is_zero(&self) -> bool {
        self.sign() == Ordering::Equal
    }

    /// Sign relative to zero.
    fn sign(&self) -> Ordering;

    fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    /// Non-negative square root, or `Ok(None)` when the model has no element
    /// squaring to `self`.
    fn try_sqrt(&self) -> Result<Option<Self>, FieldError>;

    /// Like [`try_sqrt`](Self::try_sqrt), but the caller names the values the
    /// argument was computed from. The tower model searches for the root in
    /// the field those values generate before adjoining a new radical.
    fn try_sqrt_near(&self, _hints: &[&Self]) -> Result<Option<Self>, FieldError> {
        self.try_sqrt()
    }

    /// Order of `self` in the infinitesimal `eps`: positive for infinitesimal
    /// values, zero for finite non-infinitesimal ones, negative for infinite
    /// ones. Every nonzero element of an Archimedean model has valuation 0.
    /// `None` for zero.
    fn valuation(&self) -> Option<i64>;

    /// True for zero and for infinitesimal values.
    fn is_negligible(&self) -> bool {
        self.valuation().is_none_or(|v| v > 0)
    }

    /// The distinguished positive infinitesimal, if the model has one.
    fn eps() -> Option<Self> {
        None
    }

    /// Replace a nonzero direction vector by one whose angle differs from it
    /// by at most an infinitesimal and whose coordinates are as simple as the
    /// model allows. In an Archimedean model the angle is unchanged.
    fn standard_direction(x: &Self, y: &Self) -> (Self, Self) {
        (x.clone(), y.clone())
    }

    /// `(x + iy)^2`: a direction at twice the angle of `(x, y)`.
    fn square_direction(x: &Self, y: &Self) -> (Self, Self) {
        let two = Self::from_i64(2);
        (
            x.clone() * x.clone() - y.clone() * y.clone(),
            two * x.clone() * y.clone(),
        )
    }

    /// Approximate value for display, with `eps` terms dropped. `None` when
    /// the value is infinite (negative valuation).
    fn to_f64(&self) -> Option<f64>;

    fn into_value(self) -> FieldValue;

    fn from_value(value: &FieldValue) -> Result<Self, FieldError>;
}

/// Exact comparison of two dynamically typed values.
pub fn compare(a: &FieldValue, b: &FieldValue) -> Result<Ordering, FieldError> {
    a.compare(b)
}
