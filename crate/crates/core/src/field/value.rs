use std::cmp::Ordering;
use std::fmt;

use super::{FieldError, InfinitesimalValue, Model, OrderedField, Rational, TowerValue};

/// A field element tagged with its model, for values whose model is only
/// known at run time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldValue {
    Rational(Rational),
    Tower(TowerValue),
    Infinitesimal(InfinitesimalValue),
}

macro_rules! same_model {
    ($a:expr, $b:expr, |$x:ident, $y:ident| $body:expr) => {
        match ($a, $b) {
            (FieldValue::Rational($x), FieldValue::Rational($y)) => Ok($body),
            (FieldValue::Tower($x), FieldValue::Tower($y)) => Ok($body),
            (FieldValue::Infinitesimal($x), FieldValue::Infinitesimal($y)) => Ok($body),
            (l, r) => Err(FieldError::ModelMismatch {
                left: l.model(),
                right: r.model(),
            }),
        }
    };
}

macro_rules! same_model_value {
    ($a:expr, $b:expr, |$x:ident, $y:ident| $body:expr) => {
        match ($a, $b) {
            (FieldValue::Rational($x), FieldValue::Rational($y)) => Ok(FieldValue::Rational($body)),
            (FieldValue::Tower($x), FieldValue::Tower($y)) => Ok(FieldValue::Tower($body)),
            (FieldValue::Infinitesimal($x), FieldValue::Infinitesimal($y)) => {
                Ok(FieldValue::Infinitesimal($body))
            }
            (l, r) => Err(FieldError::ModelMismatch {
                left: l.model(),
                right: r.model(),
            }),
        }
    };
}

impl FieldValue {
    pub fn model(&self) -> Model {
        match self {
            FieldValue::Rational(_) => Model::Rational,
            FieldValue::Tower(_) => Model::Tower,
            FieldValue::Infinitesimal(_) => Model::Infinitesimal,
        }
    }

    /// Embed a rational into the given model.
    pub fn from_rational(model: Model, q: Rational) -> FieldValue {
        match model {
            Model::Rational => FieldValue::Rational(q),
            Model::Tower => FieldValue::Tower(TowerValue::from_rational(q)),
            Model::Infinitesimal => {
                FieldValue::Infinitesimal(<InfinitesimalValue as OrderedField>::from_rational(q))
            }
        }
    }

    pub fn compare(&self, other: &FieldValue) -> Result<Ordering, FieldError> {
        same_model!(self, other, |x, y| x.cmp(y))
    }

    pub fn add(&self, other: &FieldValue) -> Result<FieldValue, FieldError> {
        same_model_value!(self, other, |x, y| x.clone() + y.clone())
    }

    pub fn sub(&self, other: &FieldValue) -> Result<FieldValue, FieldError> {
        same_model_value!(self, other, |x, y| x.clone() - y.clone())
    }

    pub fn mul(&self, other: &FieldValue) -> Result<FieldValue, FieldError> {
        same_model_value!(self, other, |x, y| x.clone() * y.clone())
    }

    pub fn div(&self, other: &FieldValue) -> Result<FieldValue, FieldError> {
        if other.sign() == Ordering::Equal {
            return Err(FieldError::DivisionByZero);
        }
        same_model_value!(self, other, |x, y| x.clone() / y.clone())
    }

    pub fn sign(&self) -> Ordering {
        match self {
            FieldValue::Rational(x) => x.sign(),
            FieldValue::Tower(x) => x.sign(),
            FieldValue::Infinitesimal(x) => x.sign(),
        }
    }

    /// Non-negative square root; `Ok(None)` means the model has no such element.
    pub fn try_sqrt(&self) -> Result<Option<FieldValue>, FieldError> {
        Ok(match self {
            FieldValue::Rational(x) => x.try_sqrt()?.map(FieldValue::Rational),
            FieldValue::Tower(x) => x.try_sqrt()?.map(FieldValue::Tower),
            FieldValue::Infinitesimal(x) => x.try_sqrt()?.map(FieldValue::Infinitesimal),
        })
    }

    /// `eps`-order of a nonzero infinitesimal-model value; 0 for nonzero
    /// values of the Archimedean models.
    pub fn valuation(&self) -> Result<i64, FieldError> {
        let v = match self {
            FieldValue::Rational(x) => x.valuation(),
            FieldValue::Tower(x) => x.valuation(),
            FieldValue::Infinitesimal(x) => x.valuation(),
        };
        v.ok_or(FieldError::ZeroArgument)
    }

    pub fn to_f64(&self) -> Option<f64> {
        match self {
            FieldValue::Rational(x) => x.to_f64(),
            FieldValue::Tower(x) => x.to_f64(),
            FieldValue::Infinitesimal(x) => x.to_f64(),
        }
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Rational(x) => write!(f, "{x}"),
            FieldValue::Tower(x) => write!(f, "{x}"),
            FieldValue::Infinitesimal(x) => write!(f, "{x}"),
        }
    }
}

impl From<Rational> for FieldValue {
    fn from(q: Rational) -> Self {
        FieldValue::Rational(q)
    }
}

impl From<TowerValue> for FieldValue {
    fn from(v: TowerValue) -> Self {
        FieldValue::Tower(v)
    }
}

impl From<InfinitesimalValue> for FieldValue {
    fn from(v: InfinitesimalValue) -> Self {
        FieldValue::Infinitesimal(v)
    }
}
