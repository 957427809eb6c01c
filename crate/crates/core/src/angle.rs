//! Angles between two non-opposite rays at a common vertex.
//!
//! An angle with side directions `u`, `v` is encoded by the complex number
//! `conj(u) * v = (u.v, u x v)`, taken with non-negative imaginary part.
//! Sums and differences of angles are products and quotients of these
//! numbers, and doubling an angle is squaring, which is what the dyadic
//! measure uses to read off binary digits of the magnitude.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{GeomError, GeomResult};
use crate::field::{OrderedField, Rational};
use crate::kernel::{directed_side, midpoint, point_on_ray_at, transport_triangle, Triangle};
use crate::plane::{sign_i8, Point, RayT, SegmentT, Vec2};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleT<F> {
    ray1: RayT<F>,
    ray2: RayT<F>,
}

impl<F: OrderedField> AngleT<F> {
    pub fn new(ray1: RayT<F>, ray2: RayT<F>) -> GeomResult<Self> {
        if ray1.base() != ray2.base() {
            return Err(GeomError::DegenerateInput("angle sides must share the vertex"));
        }
        if ray1.dir().cross(ray2.dir()).is_zero() {
            return Err(GeomError::InvalidAngle);
        }
        Ok(AngleT { ray1, ray2 })
    }

    /// The angle `AOB` with vertex `O`.
    pub fn from_points(a: &Point<F>, o: &Point<F>, b: &Point<F>) -> GeomResult<Self> {
        AngleT::new(RayT::toward(o, a)?, RayT::toward(o, b)?)
    }

    /// Angle at the origin between the positive x-axis and `(x, y)`.
    pub fn standard(x: F, y: F) -> GeomResult<Self> {
        let o = Point::origin();
        AngleT::new(
            RayT::new(o.clone(), Vec2::new(F::one(), F::zero()))?,
            RayT::new(o, Vec2::new(x, y))?,
        )
    }

    pub fn vertex(&self) -> &Point<F> {
        self.ray1.base()
    }

    pub fn ray1(&self) -> &RayT<F> {
        &self.ray1
    }

    pub fn ray2(&self) -> &RayT<F> {
        &self.ray2
    }

    /// `(u.v, |u x v|)`: the angle as a point of the open upper half-plane.
    fn complex(&self) -> Vec2<F> {
        let (u, v) = (self.ray1.dir(), self.ray2.dir());
        Vec2::new(u.dot(v), u.cross(v).abs())
    }
}

/// Congruence class of an angle: sign of the cosine and squared cosine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleClass<F> {
    pub dot_sign: i8,
    pub cos_sq: F,
}

impl<F: OrderedField> AngleClass<F> {
    fn of_complex(z: &Vec2<F>) -> Self {
        AngleClass {
            dot_sign: sign_i8(&z.x),
            cos_sq: z.x.square() / z.sq_norm(),
        }
    }

    pub fn is_right(&self) -> bool {
        self.dot_sign == 0
    }

    fn rank(&self) -> i8 {
        -self.dot_sign
    }
}

impl<F: OrderedField> Ord for AngleClass<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank()).then_with(|| match self.dot_sign {
            1 => other.cos_sq.cmp(&self.cos_sq),
            -1 => self.cos_sq.cmp(&other.cos_sq),
            _ => Ordering::Equal,
        })
    }
}

impl<F: OrderedField> PartialOrd for AngleClass<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: OrderedField> fmt::Display for AngleClass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:+}, {})", self.dot_sign, self.cos_sq)
    }
}

pub fn angle_class<F: OrderedField>(a: &AngleT<F>) -> AngleClass<F> {
    AngleClass::of_complex(&a.complex())
}

pub fn compare_angles<F: OrderedField>(a: &AngleT<F>, b: &AngleT<F>) -> Ordering {
    angle_class(a).cmp(&angle_class(b))
}

fn cmul<F: OrderedField>(z: &Vec2<F>, w: &Vec2<F>) -> Vec2<F> {
    Vec2::new(
        z.x.clone() * w.x.clone() - z.y.clone() * w.y.clone(),
        z.x.clone() * w.y.clone() + z.y.clone() * w.x.clone(),
    )
}

fn conj<F: OrderedField>(z: &Vec2<F>) -> Vec2<F> {
    Vec2::new(z.x.clone(), -z.y.clone())
}

/// Class of `a + b`, or `None` when the sum reaches or passes a straight angle.
pub fn angle_sum<F: OrderedField>(a: &AngleT<F>, b: &AngleT<F>) -> Option<AngleClass<F>> {
    let z = cmul(&a.complex(), &b.complex());
    z.y.is_positive().then(|| AngleClass::of_complex(&z))
}

/// Class of `a - b`. `Ok(None)` when the angles are congruent (there is no
/// zero angle); `NotGreater` when `a < b`.
pub fn angle_diff<F: OrderedField>(
    a: &AngleT<F>,
    b: &AngleT<F>,
) -> GeomResult<Option<AngleClass<F>>> {
    match compare_angles(a, b) {
        Ordering::Less => Err(GeomError::NotGreater),
        Ordering::Equal => Ok(None),
        Ordering::Greater => {
            let z = cmul(&a.complex(), &conj(&b.complex()));
            Ok(Some(AngleClass::of_complex(&z)))
        }
    }
}

/// Bisector of `a`: mark congruent points on both sides and join the vertex
/// to their midpoint (the diagonal of the rhombus they span).
pub fn bisect_angle<F: OrderedField>(a: &AngleT<F>) -> GeomResult<RayT<F>> {
    let o = a.vertex();
    let p1 = o.plus(a.ray1.dir());
    let p2 = point_on_ray_at(&a.ray2, &a.ray1.dir().sq_norm(), &[])?;
    let m = midpoint(&p1, &p2)?;
    RayT::toward(o, &m)
}

/// Copy `a` to the base of `target` with `target` as first side and the
/// second side on the requested side of `target` read as a directed line
/// (`+1` = left).
pub fn copy_angle<F: OrderedField>(
    a: &AngleT<F>,
    target: &RayT<F>,
    side: i8,
) -> GeomResult<RayT<F>> {
    let o = a.vertex();
    let o2 = target.base();
    // Spanning triangle O, A, B with A on the first side at the length of
    // the target's direction vector, so that A' needs no root.
    let a1 = point_on_ray_at(&a.ray1, &target.dir().sq_norm(), &[&o2.x, &o2.y])?;
    let b1 = o.plus(a.ray2.dir());
    let a2 = o2.plus(target.dir());
    let t = Triangle::new(o.clone(), a1, b1)?;
    let b2 = transport_triangle(&t, &SegmentT::new(o2.clone(), a2)?, side)?;
    debug_assert_eq!(directed_side(o2, &o2.plus(target.dir()), &b2), side);
    RayT::toward(o2, &b2)
}

/// Angle with an infinitesimal tangent, i.e. smaller than every repeated
/// bisection of a right angle. Never true in an Archimedean model.
pub fn is_infinitesimal<F: OrderedField>(a: &AngleT<F>) -> bool {
    let z = a.complex();
    z.x.is_positive() && (z.y / z.x).valuation().is_some_and(|v| v > 0)
}

/// Bracket `[lower, upper]` in degrees for an angle's magnitude.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicMagnitude {
    pub lower: Rational,
    pub upper: Rational,
    pub depth: u32,
}

impl DyadicMagnitude {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    fn exact(value: Rational, depth: u32) -> Self {
        DyadicMagnitude {
            lower: value.clone(),
            upper: value,
            depth,
        }
    }
}

impl fmt::Display for DyadicMagnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

fn pow2(k: u32) -> BigInt {
    BigInt::from(1) << k as usize
}

/// `m * 180 / 2^k` degrees.
fn degrees(m: &BigInt, k: u32) -> Rational {
    Rational::new(m * 180, pow2(k))
}

/// Which multiple of 45 degrees (0..=4) the direction `s` points at.
fn eighth_turn<F: OrderedField>(s: &Vec2<F>) -> Option<u32> {
    let (x, y) = (&s.x, &s.y);
    if y.is_zero() {
        return Some(if x.is_positive() { 0 } else { 4 });
    }
    if x.is_zero() {
        return Some(2);
    }
    if *x == *y {
        return Some(1);
    }
    if *x == -y.clone() {
        return Some(3);
    }
    None
}

/// Bracket the magnitude of `a` between consecutive multiples of
/// `180 / 2^n` degrees, collapsing to a point when the magnitude is such a
/// multiple.
///
/// The digits of `a / 180` in base 2 are read off by doubling the angle
/// (squaring its complex number) and testing the sign of the cosine, with
/// the part beyond a straight angle discarded after each doubling. When
/// the angle is an infinitesimal away from a multiple of 45 degrees the
/// remaining digits are all known and the bracket is finished directly:
/// the magnitude is that multiple, and the bracket sits on the side given
/// by the sign of the infinitesimal offset.
pub fn dyadic_measure<F: OrderedField>(a: &AngleT<F>, n: u32) -> DyadicMagnitude {
    assert!(n >= 1, "depth must be positive");
    let mut z = a.complex();
    // Magnitude = (m + phi/180) * 180/2^k, with phi the angle of z in [0, 180).
    let mut m = BigInt::from(0);
    for k in 0..n {
        let (sx, sy) = F::standard_direction(&z.x, &z.y);
        let s = Vec2::new(sx, sy);
        if s != z {
            let offset = s.cross(&z);
            if !offset.is_zero() {
                if let Some(e) = eighth_turn(&s) {
                    return near_dyadic(&m, k, e, offset.is_positive(), n);
                }
            }
            // Same direction up to an infinitesimal, with smaller entries.
            z = s;
        }
        if z.y.is_zero() {
            return DyadicMagnitude::exact(degrees(&m, k), n);
        }
        if z.x.is_zero() {
            return DyadicMagnitude::exact(degrees(&(&m * 2 + 1), k + 1), n);
        }
        let digit = z.x.is_negative();
        m = &m * 2 + u32::from(digit);
        let (x2, y2) = F::square_direction(&z.x, &z.y);
        z = if digit { Vec2::new(x2, y2).neg() } else { Vec2::new(x2, y2) };
    }
    DyadicMagnitude {
        lower: degrees(&m, n),
        upper: degrees(&(&m + 1), n),
        depth: n,
    }
}

/// Bracket at depth `n` of `(m + e/4) * 180/2^k` degrees plus a nonzero
/// infinitesimal of the given sign.
fn near_dyadic(m: &BigInt, k: u32, e: u32, above: bool, n: u32) -> DyadicMagnitude {
    // In units of 180/2^(n+2): position 4m + e scaled by 2^(n-k).
    let pos = (m * 4 + e) << (n - k) as usize;
    let unit = 4;
    let mut cell = &pos / unit;
    let on_boundary = (&pos % unit) == BigInt::from(0);
    if on_boundary && !above {
        cell -= 1;
    }
    let lower = degrees(&cell, n);
    let upper = degrees(&(&cell + 1), n);
    DyadicMagnitude {
        lower: lower.max(Rational::from_integer(0.into())),
        upper: upper.min(Rational::from_integer(180.into())),
        depth: n,
    }
}
