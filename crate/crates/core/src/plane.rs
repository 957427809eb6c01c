//! Points, lines, rays, segments and circles over an ordered field, with the
//! incidence, order and intersection predicates of the plane.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{GeomError, GeomResult};
use crate::field::OrderedField;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Point<F> {
    pub x: F,
    pub y: F,
}

/// Free vector (difference of two points).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vec2<F> {
    pub x: F,
    pub y: F,
}

impl<F: OrderedField> Point<F> {
    pub fn new(x: F, y: F) -> Self {
        Point { x, y }
    }

    pub fn from_i64(x: i64, y: i64) -> Self {
        Point::new(F::from_i64(x), F::from_i64(y))
    }

    pub fn origin() -> Self {
        Point::new(F::zero(), F::zero())
    }

    pub fn minus(&self, other: &Point<F>) -> Vec2<F> {
        Vec2::new(self.x.clone() - other.x.clone(), self.y.clone() - other.y.clone())
    }

    pub fn plus(&self, v: &Vec2<F>) -> Point<F> {
        Point::new(self.x.clone() + v.x.clone(), self.y.clone() + v.y.clone())
    }

    pub fn to_f64(&self) -> Option<(f64, f64)> {
        Some((self.x.to_f64()?, self.y.to_f64()?))
    }
}

impl<F: OrderedField> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<F: OrderedField> Vec2<F> {
    pub fn new(x: F, y: F) -> Self {
        Vec2 { x, y }
    }

    pub fn from_i64(x: i64, y: i64) -> Self {
        Vec2::new(F::from_i64(x), F::from_i64(y))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn dot(&self, o: &Vec2<F>) -> F {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    /// z-component of the cross product; positive when `o` is
    /// counter-clockwise from `self`.
    pub fn cross(&self, o: &Vec2<F>) -> F {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    pub fn sq_norm(&self) -> F {
        self.dot(self)
    }

    pub fn scale(&self, k: &F) -> Vec2<F> {
        Vec2::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    pub fn add(&self, o: &Vec2<F>) -> Vec2<F> {
        Vec2::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }

    pub fn sub(&self, o: &Vec2<F>) -> Vec2<F> {
        Vec2::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }

    pub fn neg(&self) -> Vec2<F> {
        Vec2::new(-self.x.clone(), -self.y.clone())
    }

    /// Rotation by a right angle counter-clockwise.
    pub fn perp(&self) -> Vec2<F> {
        Vec2::new(-self.y.clone(), self.x.clone())
    }

    fn dominant(&self) -> usize {
        if self.x.abs() >= self.y.abs() {
            0
        } else {
            1
        }
    }

    fn coord(&self, k: usize) -> &F {
        if k == 0 {
            &self.x
        } else {
            &self.y
        }
    }

    /// Divide by the absolute value of the first nonzero component.
    pub fn normalized(&self) -> Vec2<F> {
        let lead = if self.x.is_zero() { &self.y } else { &self.x };
        let k = lead.abs();
        Vec2::new(self.x.clone() / k.clone(), self.y.clone() / k)
    }
}

pub fn sq_distance<F: OrderedField>(a: &Point<F>, b: &Point<F>) -> F {
    a.minus(b).sq_norm()
}

pub fn collinear<F: OrderedField>(a: &Point<F>, b: &Point<F>, c: &Point<F>) -> bool {
    b.minus(a).cross(&c.minus(a)).is_zero()
}

/// Line `a*x + b*y + c = 0`, scaled so that the first nonzero of `(a, b)` is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineEq<F> {
    a: F,
    b: F,
    c: F,
}

impl<F: OrderedField> LineEq<F> {
    pub fn new(a: F, b: F, c: F) -> GeomResult<Self> {
        let lead = if !a.is_zero() {
            a.clone()
        } else if !b.is_zero() {
            b.clone()
        } else {
            return Err(GeomError::DegenerateInput("line with zero normal"));
        };
        Ok(LineEq {
            a: a / lead.clone(),
            b: b / lead.clone(),
            c: c / lead,
        })
    }

    pub fn through(p: &Point<F>, q: &Point<F>) -> GeomResult<Self> {
        if p == q {
            return Err(GeomError::DegenerateInput("line through one point"));
        }
        LineEq::through_dir(p, &q.minus(p))
    }

    pub fn through_dir(p: &Point<F>, d: &Vec2<F>) -> GeomResult<Self> {
        LineEq::with_normal(p, &Vec2::new(-d.y.clone(), d.x.clone()))
    }

    pub fn with_normal(p: &Point<F>, n: &Vec2<F>) -> GeomResult<Self> {
        let c = -(n.x.clone() * p.x.clone() + n.y.clone() * p.y.clone());
        LineEq::new(n.x.clone(), n.y.clone(), c)
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    pub fn c(&self) -> &F {
        &self.c
    }

    pub fn normal(&self) -> Vec2<F> {
        Vec2::new(self.a.clone(), self.b.clone())
    }

    /// Canonical direction `(b, -a)`; the positive side lies to its left.
    pub fn direction(&self) -> Vec2<F> {
        Vec2::new(self.b.clone(), -self.a.clone())
    }

    pub fn eval(&self, p: &Point<F>) -> F {
        self.a.clone() * p.x.clone() + self.b.clone() * p.y.clone() + self.c.clone()
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        self.eval(p).is_zero()
    }

    pub fn some_point(&self) -> Point<F> {
        if !self.a.is_zero() {
            Point::new(-self.c.clone() / self.a.clone(), F::zero())
        } else {
            Point::new(F::zero(), -self.c.clone() / self.b.clone())
        }
    }

    /// Foot of the perpendicular from `p`.
    pub fn foot(&self, p: &Point<F>) -> Point<F> {
        let n = self.normal();
        let k = self.eval(p) / n.sq_norm();
        p.plus(&n.scale(&k).neg())
    }

    pub fn is_parallel(&self, other: &LineEq<F>) -> bool {
        self.normal().cross(&other.normal()).is_zero()
    }
}

impl<F: OrderedField> fmt::Display for LineEq<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*x + {}*y + {} = 0", self.a, self.b, self.c)
    }
}

/// Which side of `l` the point lies on: `+1`, `-1`, or `0` on the line.
pub fn side_of_line<F: OrderedField>(p: &Point<F>, l: &LineEq<F>) -> i8 {
    sign_i8(&l.eval(p))
}

pub(crate) fn sign_i8<F: OrderedField>(x: &F) -> i8 {
    match x.sign() {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Segment with an unordered pair of distinct ends. Equality ignores the
/// order; the stored order is kept for constructions that need a labeling.
#[derive(Debug, Clone)]
pub struct SegmentT<F> {
    a: Point<F>,
    b: Point<F>,
}

impl<F: OrderedField> SegmentT<F> {
    pub fn new(a: Point<F>, b: Point<F>) -> GeomResult<Self> {
        if a == b {
            return Err(GeomError::DegenerateInput("segment ends coincide"));
        }
        Ok(SegmentT { a, b })
    }

    pub fn start(&self) -> &Point<F> {
        &self.a
    }

    pub fn end(&self) -> &Point<F> {
        &self.b
    }

    pub fn sq_length(&self) -> F {
        sq_distance(&self.a, &self.b)
    }

    pub fn line(&self) -> LineEq<F> {
        LineEq::through(&self.a, &self.b).expect("distinct ends")
    }

    pub fn reversed(&self) -> SegmentT<F> {
        SegmentT {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    /// Closed-segment membership.
    pub fn contains(&self, p: &Point<F>) -> bool {
        if !collinear(&self.a, &self.b, p) {
            return false;
        }
        let d = self.b.minus(&self.a);
        let k = d.dominant();
        let t = p.minus(&self.a).coord(k).clone();
        let len = d.coord(k).clone();
        let t = if len.is_negative() { -t } else { t };
        !t.is_negative() && t <= len.abs()
    }
}

impl<F: OrderedField> PartialEq for SegmentT<F> {
    fn eq(&self, other: &Self) -> bool {
        (self.a == other.a && self.b == other.b) || (self.a == other.b && self.b == other.a)
    }
}

impl<F: OrderedField> Eq for SegmentT<F> {}

/// Ray from `base` along `dir`, with `dir` scaled so that its first nonzero
/// component has absolute value 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayT<F> {
    base: Point<F>,
    dir: Vec2<F>,
}

impl<F: OrderedField> RayT<F> {
    pub fn new(base: Point<F>, dir: Vec2<F>) -> GeomResult<Self> {
        if dir.is_zero() {
            return Err(GeomError::DegenerateInput("ray with zero direction"));
        }
        Ok(RayT {
            base,
            dir: dir.normalized(),
        })
    }

    pub fn toward(base: &Point<F>, through: &Point<F>) -> GeomResult<Self> {
        RayT::new(base.clone(), through.minus(base))
    }

    pub fn base(&self) -> &Point<F> {
        &self.base
    }

    pub fn dir(&self) -> &Vec2<F> {
        &self.dir
    }

    pub fn line(&self) -> LineEq<F> {
        LineEq::through_dir(&self.base, &self.dir).expect("nonzero direction")
    }

    pub fn point_at(&self, t: &F) -> Point<F> {
        self.base.plus(&self.dir.scale(t))
    }

    pub fn opposite(&self) -> RayT<F> {
        RayT {
            base: self.base.clone(),
            dir: self.dir.neg(),
        }
    }

    /// Closed-ray membership (the base belongs to the ray).
    pub fn contains(&self, p: &Point<F>) -> bool {
        let v = p.minus(&self.base);
        self.dir.cross(&v).is_zero() && !self.dir.dot(&v).is_negative()
    }

    /// Side of `p` relative to the ray read as a directed line: `+1` left.
    pub fn side(&self, p: &Point<F>) -> i8 {
        sign_i8(&self.dir.cross(&p.minus(&self.base)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleT<F> {
    center: Point<F>,
    sq_radius: F,
}

impl<F: OrderedField> CircleT<F> {
    pub fn new(center: Point<F>, sq_radius: F) -> GeomResult<Self> {
        if !sq_radius.is_positive() {
            return Err(GeomError::DegenerateInput("circle radius must be positive"));
        }
        Ok(CircleT { center, sq_radius })
    }

    pub fn through(center: &Point<F>, p: &Point<F>) -> GeomResult<Self> {
        CircleT::new(center.clone(), sq_distance(center, p))
    }

    pub fn center(&self) -> &Point<F> {
        &self.center
    }

    pub fn sq_radius(&self) -> &F {
        &self.sq_radius
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        sq_distance(&self.center, p) == self.sq_radius
    }
}

/// Result of intersecting a line or circle with a circle. Two points are
/// sorted lexicographically by `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection<F> {
    Empty,
    One(Point<F>),
    Two(Point<F>, Point<F>),
    /// Real intersections exist but need a square root the model lacks.
    NotConstructibleInModel,
}

impl<F: OrderedField> Intersection<F> {
    pub fn points(&self) -> Vec<Point<F>> {
        match self {
            Intersection::One(p) => vec![p.clone()],
            Intersection::Two(p, q) => vec![p.clone(), q.clone()],
            _ => Vec::new(),
        }
    }

    fn two(p: Point<F>, q: Point<F>) -> Self {
        if p <= q {
            Intersection::Two(p, q)
        } else {
            Intersection::Two(q, p)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineMeet<F> {
    Point(Point<F>),
    Parallel,
    Identical,
}

pub fn line_line_intersect<F: OrderedField>(l1: &LineEq<F>, l2: &LineEq<F>) -> LineMeet<F> {
    let det = l1.a.clone() * l2.b.clone() - l2.a.clone() * l1.b.clone();
    if det.is_zero() {
        return if l1 == l2 {
            LineMeet::Identical
        } else {
            LineMeet::Parallel
        };
    }
    let x = (l1.b.clone() * l2.c.clone() - l2.b.clone() * l1.c.clone()) / det.clone();
    let y = (l1.c.clone() * l2.a.clone() - l2.c.clone() * l1.a.clone()) / det;
    LineMeet::Point(Point::new(x, y))
}

pub fn line_circle_intersect<F: OrderedField>(l: &LineEq<F>, c: &CircleT<F>) -> Intersection<F> {
    let foot = l.foot(&c.center);
    let dir = l.direction();
    // Points foot + t*dir with t^2 = (r^2 - |center - foot|^2) / |dir|^2.
    let t2 = (c.sq_radius.clone() - sq_distance(&c.center, &foot)) / dir.sq_norm();
    match t2.sign() {
        Ordering::Less => Intersection::Empty,
        Ordering::Equal => Intersection::One(foot),
        Ordering::Greater => {
            let hints = [&foot.x, &foot.y, &c.center.x, &c.center.y];
            match t2.try_sqrt_near(&hints) {
                Ok(Some(t)) => {
                    let off = dir.scale(&t);
                    Intersection::two(foot.plus(&off), foot.plus(&off.neg()))
                }
                _ => Intersection::NotConstructibleInModel,
            }
        }
    }
}

pub fn circle_circle_intersect<F: OrderedField>(
    c1: &CircleT<F>,
    c2: &CircleT<F>,
) -> GeomResult<Intersection<F>> {
    if c1.center == c2.center {
        return if c1.sq_radius == c2.sq_radius {
            Err(GeomError::IdenticalCircles)
        } else {
            Ok(Intersection::Empty)
        };
    }
    // Radical line: difference of the two circle equations.
    let (p, q) = (&c1.center, &c2.center);
    let two = F::from_i64(2);
    let a = two.clone() * (q.x.clone() - p.x.clone());
    let b = two * (q.y.clone() - p.y.clone());
    let c = p.x.square() + p.y.square() - c1.sq_radius.clone() - q.x.square() - q.y.square()
        + c2.sq_radius.clone();
    let radical = LineEq::new(a, b, c)?;
    Ok(line_circle_intersect(&radical, c1))
}

/// Strict betweenness: `b` lies on the open segment `ac`.
pub fn between<F: OrderedField>(a: &Point<F>, b: &Point<F>, c: &Point<F>) -> GeomResult<bool> {
    if a == b || b == c || a == c {
        return Err(GeomError::DegenerateInput("between needs three distinct points"));
    }
    if !collinear(a, b, c) {
        return Ok(false);
    }
    let d = c.minus(a);
    let k = d.dominant();
    let t = b.minus(a).coord(k).clone();
    let len = d.coord(k).clone();
    let (t, len) = if len.is_negative() { (-t, -len) } else { (t, len) };
    Ok(t.is_positive() && t < len)
}

/// Collinear segments sharing more than one point.
pub fn segments_overlap<F: OrderedField>(s1: &SegmentT<F>, s2: &SegmentT<F>) -> bool {
    let l = s1.line();
    if !l.contains(&s2.a) || !l.contains(&s2.b) {
        return false;
    }
    let k = s1.b.minus(&s1.a).dominant();
    let proj = |p: &Point<F>| if k == 0 { p.x.clone() } else { p.y.clone() };
    let (lo1, hi1) = ordered(proj(&s1.a), proj(&s1.b));
    let (lo2, hi2) = ordered(proj(&s2.a), proj(&s2.b));
    let lo = lo1.max(lo2);
    let hi = hi1.min(hi2);
    lo < hi
}

fn ordered<F: Ord>(x: F, y: F) -> (F, F) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Crossing point of a segment with a line. `None` unless the ends lie
/// strictly on opposite sides; a segment touching the line at one end does
/// not cross it.
pub fn segment_crosses_line<F: OrderedField>(
    s: &SegmentT<F>,
    l: &LineEq<F>,
) -> GeomResult<Option<Point<F>>> {
    let ea = l.eval(&s.a);
    let eb = l.eval(&s.b);
    if ea.is_zero() && eb.is_zero() {
        return Err(GeomError::DegenerateInput("segment lies on the line"));
    }
    if ea.sign() == eb.sign() || ea.is_zero() || eb.is_zero() {
        return Ok(None);
    }
    let t = ea.clone() / (ea - eb);
    Ok(Some(s.a.plus(&s.b.minus(&s.a).scale(&t))))
}
