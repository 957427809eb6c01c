use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{FieldError, FieldValue, Model, OrderedField};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if Signed::is_negative(q) {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    if &(&rn * &rn) != n {
        return None;
    }
    let rd = d.sqrt();
    if &(&rd * &rd) != d {
        return None;
    }
    Some(Rational::new(rn, rd))
}

/// The integer vector with coprime coordinates pointing the same way as
/// `(x, y)`. Zero stays zero.
pub(crate) fn primitive_direction(x: &Rational, y: &Rational) -> (Rational, Rational) {
    if Zero::is_zero(x) && Zero::is_zero(y) {
        return (x.clone(), y.clone());
    }
    // Integer entries are left alone: the common factor is almost always 1
    // and the gcd costs more than it saves on long integers.
    if x.is_integer() && y.is_integer() {
        return (x.clone(), y.clone());
    }
    let l = x.denom().lcm(y.denom());
    let (nx, ny) = (x.numer() * (&l / x.denom()), y.numer() * (&l / y.denom()));
    let g = nx.gcd(&ny);
    (Rational::from_integer(nx / &g), Rational::from_integer(ny / &g))
}

pub(crate) fn rational_to_f64(q: &Rational) -> f64 {
    if let Some(v) = ToPrimitive::to_f64(q) {
        if v.is_finite() {
            return v;
        }
    }
    // Very long numerators/denominators: shift both down to fit.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift_n = (nb - 60).max(0) as usize;
    let shift_d = (db - 60).max(0) as usize;
    let n: BigInt = q.numer() >> shift_n;
    let d: BigInt = q.denom() >> shift_d;
    let base = n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0);
    base * 2f64.powi((shift_n as i64 - shift_d as i64) as i32)
}

impl OrderedField for Rational {
    const MODEL: Model = Model::Rational;

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn sign(&self) -> Ordering {
        match self.numer().sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    fn try_sqrt(&self) -> Result<Option<Self>, FieldError> {
        if Signed::is_negative(self) {
            return Err(FieldError::NegativeArgument);
        }
        Ok(rational_sqrt(self))
    }

    fn valuation(&self) -> Option<i64> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(0)
        }
    }

    fn standard_direction(x: &Self, y: &Self) -> (Self, Self) {
        primitive_direction(x, y)
    }

    fn square_direction(x: &Self, y: &Self) -> (Self, Self) {
        if !(x.is_integer() && y.is_integer()) {
            let two = Rational::from_integer(2.into());
            return (x * x - y * y, two * x * y);
        }
        // Plain integer arithmetic skips the gcd work of `Ratio`, which
        // dominates once the entries run to millions of bits.
        let (a, b) = (x.numer(), y.numer());
        (
            Rational::from_integer(a * a - b * b),
            Rational::from_integer((a * b) << 1usize),
        )
    }

    fn to_f64(&self) -> Option<f64> {
        Some(rational_to_f64(self))
    }

    fn into_value(self) -> FieldValue {
        FieldValue::Rational(self)
    }

    fn from_value(value: &FieldValue) -> Result<Self, FieldError> {
        match value {
            FieldValue::Rational(q) => Ok(q.clone()),
            other => Err(FieldError::ModelMismatch {
                left: other.model(),
                right: Model::Rational,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn perfect_squares_only() {
        assert_eq!(rational_sqrt(&q(4, 9)), Some(q(2, 3)));
        assert_eq!(rational_sqrt(&q(2, 1)), None);
        assert_eq!(rational_sqrt(&q(0, 1)), Some(q(0, 1)));
        assert_eq!(q(-4, 1).try_sqrt(), Err(FieldError::NegativeArgument));
    }

    #[test]
    fn compare_halves_and_thirds() {
        assert_eq!(q(1, 2).cmp(&q(1, 3)), Ordering::Greater);
    }

    #[test]
    fn huge_values_still_project() {
        let big = Rational::new(BigInt::from(3) << 3000usize, BigInt::from(1) << 3000usize);
        assert!((rational_to_f64(&big) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn squaring_directions() {
        assert_eq!(Rational::square_direction(&q(2, 1), &q(-3, 1)), (q(-5, 1), q(-12, 1)));
        assert_eq!(Rational::square_direction(&q(1, 2), &q(1, 3)), (q(5, 36), q(1, 3)));
        assert_eq!(primitive_direction(&q(1, 2), &q(-1, 3)), (q(3, 1), q(-2, 1)));
    }
}
