use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::rational::{primitive_direction, rational_to_f64, Rational};
use super::{FieldError, FieldValue, Model, OrderedField};

/// Element of the field of rational functions in `eps`, ordered so that
/// `eps` is positive and smaller than every positive rational.
///
/// Normal form: numerator and denominator coprime, denominator scaled so its
/// lowest-order coefficient is 1. Equal values therefore have identical
/// representations, and the sign of a value is the sign of the lowest-order
/// coefficient of its numerator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InfinitesimalValue {
    num: Poly,
    den: Poly,
}

impl InfinitesimalValue {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return InfinitesimalValue {
                num,
                den: Poly::constant(<Rational as One>::one()),
            };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let low = den.lowest_coeff().unwrap().clone();
        if low.is_one() {
            InfinitesimalValue { num, den }
        } else {
            let inv = low.recip();
            InfinitesimalValue {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(num: Poly) -> Self {
        InfinitesimalValue::new(num, Poly::constant(<Rational as One>::one()))
    }

    pub fn epsilon() -> Self {
        InfinitesimalValue::from_poly(Poly::monomial(<Rational as One>::one(), 1))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Order in `eps` of a nonzero value.
    pub fn eps_valuation(&self) -> Result<i64, FieldError> {
        match (self.num.order(), self.den.order()) {
            (Some(n), Some(d)) => Ok(n as i64 - d as i64),
            _ => Err(FieldError::ZeroArgument),
        }
    }

    /// Coefficient of `eps^valuation` in the Laurent expansion.
    pub fn leading_term(&self) -> Option<Rational> {
        let n = self.num.lowest_coeff()?;
        let d = self.den.lowest_coeff()?;
        Some(n / d)
    }

    fn is_poly(&self) -> bool {
        self.den.is_constant() && self.den.coeff(0).is_one()
    }
}

impl Add for InfinitesimalValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            if self.is_poly() {
                return InfinitesimalValue {
                    num: self.num.add(&rhs.num),
                    den: self.den,
                };
            }
            return InfinitesimalValue::new(self.num.add(&rhs.num), self.den);
        }
        InfinitesimalValue::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Sub for InfinitesimalValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for InfinitesimalValue {
    type Output = Self;
    fn neg(self) -> Self {
        InfinitesimalValue {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl Mul for InfinitesimalValue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_poly() && rhs.is_poly() {
            return InfinitesimalValue {
                num: self.num.mul(&rhs.num),
                den: self.den,
            };
        }
        InfinitesimalValue::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Div for InfinitesimalValue {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.num.is_zero(), "division by zero");
        if rhs.num.is_constant() && self.is_poly() && rhs.is_poly() {
            let c = rhs.num.coeff(0).recip();
            return InfinitesimalValue {
                num: self.num.scale(&c),
                den: self.den,
            };
        }
        InfinitesimalValue::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }
}

impl Ord for InfinitesimalValue {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign()
    }
}

impl PartialOrd for InfinitesimalValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for InfinitesimalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl OrderedField for InfinitesimalValue {
    const MODEL: Model = Model::Infinitesimal;

    fn from_rational(q: Rational) -> Self {
        InfinitesimalValue::from_poly(Poly::constant(q))
    }

    fn sign(&self) -> Ordering {
        match self.num.lowest_coeff() {
            None => Ordering::Equal,
            Some(c) if Signed::is_positive(c) => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    fn try_sqrt(&self) -> Result<Option<Self>, FieldError> {
        if self.is_negative() {
            return Err(FieldError::NegativeArgument);
        }
        // num/den is a square iff num*den is the square of a polynomial.
        let root = self.num.mul(&self.den).sqrt();
        Ok(root.map(|s| InfinitesimalValue::new(s, self.den.clone())))
    }

    fn valuation(&self) -> Option<i64> {
        self.eps_valuation().ok()
    }

    fn eps() -> Option<Self> {
        Some(InfinitesimalValue::epsilon())
    }

    fn standard_direction(x: &Self, y: &Self) -> (Self, Self) {
        let vx = x.valuation();
        let vy = y.valuation();
        let v = match (vx, vy) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => return (x.clone(), y.clone()),
        };
        let part = |val: Option<i64>, z: &Self| match val {
            Some(w) if w == v => z.leading_term().expect("nonzero"),
            _ => <Rational as Zero>::zero(),
        };
        let (px, py) = primitive_direction(&part(vx, x), &part(vy, y));
        (Self::from_rational(px), Self::from_rational(py))
    }

    fn to_f64(&self) -> Option<f64> {
        match self.valuation() {
            None => Some(0.0),
            Some(v) if v < 0 => None,
            Some(_) => Some(rational_to_f64(
                &(self.num.constant_term() / self.den.constant_term()),
            )),
        }
    }

    fn into_value(self) -> FieldValue {
        FieldValue::Infinitesimal(self)
    }

    fn from_value(value: &FieldValue) -> Result<Self, FieldError> {
        match value {
            FieldValue::Infinitesimal(v) => Ok(v.clone()),
            other => Err(FieldError::ModelMismatch {
                left: other.model(),
                right: Model::Infinitesimal,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps() -> InfinitesimalValue {
        InfinitesimalValue::epsilon()
    }

    fn c(n: i64, d: i64) -> InfinitesimalValue {
        InfinitesimalValue::from_ratio(n, d)
    }

    #[test]
    fn eps_is_below_every_dyadic() {
        let mut bound = c(1, 1);
        for _ in 0..=128 {
            assert!(eps() < bound);
            bound = bound / c(2, 1);
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(eps().eps_valuation(), Ok(1));
        assert_eq!((c(3, 1) + eps()).eps_valuation(), Ok(0));
        // eps^2 / (1 + eps) expands as eps^2 - eps^3 + ...
        let v = eps() * eps() / (c(1, 1) + eps());
        assert_eq!(v.eps_valuation(), Ok(2));
        assert_eq!(c(1, 1) / eps(), InfinitesimalValue::new(Poly::constant(1.into_r()), Poly::monomial(1.into_r(), 1)));
        assert_eq!((c(1, 1) / eps()).eps_valuation(), Ok(-1));
        assert_eq!(InfinitesimalValue::zero().eps_valuation(), Err(FieldError::ZeroArgument));
    }

    trait IntoR {
        fn into_r(self) -> Rational;
    }
    impl IntoR for i64 {
        fn into_r(self) -> Rational {
            Rational::from_integer(self.into())
        }
    }

    #[test]
    fn normal_form_is_unique() {
        let a = (c(1, 1) + eps()) / (c(2, 1) + eps() * c(2, 1));
        assert_eq!(a, c(1, 2));
        assert_eq!(a.denominator(), &Poly::constant(1.into_r()));
    }

    #[test]
    fn sqrt_of_eps_is_not_representable() {
        assert_eq!(eps().try_sqrt(), Ok(None));
        let sq = (c(1, 1) + eps()) * (c(1, 1) + eps()) / (eps() * eps() + c(4, 1));
        // (1+eps)^2/(eps^2+4) is not a square since eps^2+4 is not.
        assert_eq!(sq.try_sqrt(), Ok(None));
        let sq = (c(1, 1) - eps()) * (c(1, 1) - eps()) / (c(9, 1) * eps() * eps());
        let root = sq.try_sqrt().unwrap().unwrap();
        assert_eq!(root.square(), sq);
        assert!(root.is_positive());
    }

    #[test]
    fn display_normal_form() {
        assert_eq!(eps().to_string(), "eps");
        assert_eq!((eps() * eps() / (c(1, 1) + eps())).to_string(), "(eps^2)/(1 + eps)");
    }
}
