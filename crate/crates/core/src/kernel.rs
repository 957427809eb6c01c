//! Congruence, transport, perpendiculars, right-angle axioms and rigidity.
//!
//! Congruence of segments is equality of squared lengths. Every axiom is
//! exposed as a check that can be run against concrete configurations.

use std::cmp::Ordering;

use crate::angle::AngleT;
use crate::error::{GeomError, GeomResult};
use crate::field::OrderedField;
use crate::plane::{
    circle_circle_intersect, collinear, line_line_intersect, side_of_line, sign_i8, sq_distance,
    CircleT, Intersection, LineEq, LineMeet, Point, RayT, SegmentT, Vec2,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle<F> {
    pub a: Point<F>,
    pub b: Point<F>,
    pub c: Point<F>,
}

impl<F: OrderedField> Triangle<F> {
    pub fn new(a: Point<F>, b: Point<F>, c: Point<F>) -> GeomResult<Self> {
        if collinear(&a, &b, &c) {
            return Err(GeomError::DegenerateInput("triangle vertices are collinear"));
        }
        Ok(Triangle { a, b, c })
    }

    pub fn vertices(&self) -> [&Point<F>; 3] {
        [&self.a, &self.b, &self.c]
    }
}

/// Quadrilateral `ABDC` with four congruent sides `AB, BD, DC, CA`;
/// its diagonals are `AD` and `BC`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rhombus<F> {
    pub a: Point<F>,
    pub b: Point<F>,
    pub d: Point<F>,
    pub c: Point<F>,
}

impl<F: OrderedField> Rhombus<F> {
    pub fn new(a: Point<F>, b: Point<F>, d: Point<F>, c: Point<F>) -> GeomResult<Self> {
        let pts = [&a, &b, &d, &c];
        for i in 0..4 {
            for j in (i + 1)..4 {
                if pts[i] == pts[j] {
                    return Err(GeomError::DegenerateInput("rhombus vertices coincide"));
                }
            }
            if collinear(pts[i], pts[(i + 1) % 4], pts[(i + 2) % 4]) {
                return Err(GeomError::DegenerateInput("three rhombus vertices are collinear"));
            }
        }
        let s = sq_distance(&a, &b);
        if sq_distance(&b, &d) != s || sq_distance(&d, &c) != s || sq_distance(&c, &a) != s {
            return Err(GeomError::PreconditionViolated("rhombus sides differ".into()));
        }
        Ok(Rhombus { a, b, d, c })
    }
}

pub fn congruent_segments<F: OrderedField>(s1: &SegmentT<F>, s2: &SegmentT<F>) -> bool {
    s1.sq_length() == s2.sq_length()
}

/// `OP` and `OQ` are congruent when a circle about `O` passes through both.
pub fn congruent_by_circle<F: OrderedField>(o: &Point<F>, p: &Point<F>, q: &Point<F>) -> bool {
    match CircleT::through(o, p) {
        Ok(c) => c.contains(q),
        Err(_) => o == q,
    }
}

pub fn compare_segments<F: OrderedField>(s1: &SegmentT<F>, s2: &SegmentT<F>) -> Ordering {
    s1.sq_length().cmp(&s2.sq_length())
}

pub fn midpoint<F: OrderedField>(a: &Point<F>, b: &Point<F>) -> GeomResult<Point<F>> {
    if a == b {
        return Err(GeomError::DegenerateInput("midpoint of a single point"));
    }
    let half = F::from_ratio(1, 2);
    Ok(Point::new(
        (a.x.clone() + b.x.clone()) * half.clone(),
        (a.y.clone() + b.y.clone()) * half,
    ))
}

fn not_constructible<F: OrderedField>() -> GeomError {
    GeomError::NotConstructibleInModel(F::MODEL)
}

/// The point of `r` whose squared distance from the base is `sq_len`.
pub fn point_on_ray_at<F: OrderedField>(
    r: &RayT<F>,
    sq_len: &F,
    hints: &[&F],
) -> GeomResult<Point<F>> {
    if !sq_len.is_positive() {
        return Err(GeomError::DegenerateInput("length must be positive"));
    }
    let t2 = sq_len.clone() / r.dir().sq_norm();
    let mut all: Vec<&F> = vec![&r.base().x, &r.base().y];
    all.extend_from_slice(hints);
    match t2.try_sqrt_near(&all)? {
        Some(t) => Ok(r.point_at(&t)),
        None => Err(not_constructible::<F>()),
    }
}

/// Lay off a copy of `s` on `r` from its base.
pub fn transport_segment<F: OrderedField>(s: &SegmentT<F>, r: &RayT<F>) -> GeomResult<Point<F>> {
    let hints = [&s.start().x, &s.start().y, &s.end().x, &s.end().y];
    point_on_ray_at(r, &s.sq_length(), &hints)
}

/// Image of a point `x` of line `AB` under the congruence-preserving map of
/// that line onto line `A'B'` sending `A` to `A'` and `B` to `B'`.
pub fn transport_line_bijection<F: OrderedField>(
    ab: &SegmentT<F>,
    ab2: &SegmentT<F>,
    x: &Point<F>,
) -> GeomResult<Point<F>> {
    if !congruent_segments(ab, ab2) {
        return Err(GeomError::NotCongruentBase);
    }
    let (a, b) = (ab.start(), ab.end());
    if !collinear(a, b, x) {
        return Err(GeomError::NonCollinearInput);
    }
    let d = b.minus(a);
    let lambda = x.minus(a).dot(&d) / d.sq_norm();
    Ok(ab2.start().plus(&ab2.end().minus(ab2.start()).scale(&lambda)))
}

/// Side of `p` relative to the directed line `from -> to`: `+1` on the left.
pub fn directed_side<F: OrderedField>(from: &Point<F>, to: &Point<F>, p: &Point<F>) -> i8 {
    sign_i8(&to.minus(from).cross(&p.minus(from)))
}

/// Copy triangle `ABC` onto the congruent base `A'B'` (the stored order of
/// `base`), returning `C'` on the requested side of the directed line
/// `A' -> B'` (`+1` = left).
pub fn transport_triangle<F: OrderedField>(
    t: &Triangle<F>,
    base: &SegmentT<F>,
    side: i8,
) -> GeomResult<Point<F>> {
    if side != 1 && side != -1 {
        return Err(GeomError::PreconditionViolated("side must be +1 or -1".into()));
    }
    if sq_distance(&t.a, &t.b) != base.sq_length() {
        return Err(GeomError::NotCongruentBase);
    }
    let (a2, b2) = (base.start(), base.end());
    let c1 = CircleT::new(a2.clone(), sq_distance(&t.a, &t.c))?;
    let c2 = CircleT::new(b2.clone(), sq_distance(&t.b, &t.c))?;
    match circle_circle_intersect(&c1, &c2)? {
        Intersection::NotConstructibleInModel => Err(not_constructible::<F>()),
        found => found
            .points()
            .into_iter()
            .find(|p| directed_side(a2, b2, p) == side)
            .ok_or_else(|| GeomError::PreconditionViolated("copy has no point on that side".into())),
    }
}

pub fn drop_perpendicular<F: OrderedField>(p: &Point<F>, l: &LineEq<F>) -> Point<F> {
    l.foot(p)
}

/// Perpendicular to `l` at `m`, pointing into the side where
/// `side_of_line` is `side`.
pub fn erect_perpendicular<F: OrderedField>(
    m: &Point<F>,
    l: &LineEq<F>,
    side: i8,
) -> GeomResult<RayT<F>> {
    if !l.contains(m) {
        return Err(GeomError::PointNotOnLine);
    }
    let n = l.normal();
    let dir = match side {
        1 => n,
        -1 => n.neg(),
        _ => return Err(GeomError::PreconditionViolated("side must be +1 or -1".into())),
    };
    RayT::new(m.clone(), dir)
}

pub fn is_right_angle<F: OrderedField>(a: &AngleT<F>) -> bool {
    a.ray1().dir().dot(a.ray2().dir()).is_zero()
}

/// Lay legs of the given squared lengths along the sides of two right
/// angles and compare the hypotenuses.
pub fn check_axiom_r1<F: OrderedField>(
    right1: &AngleT<F>,
    right2: &AngleT<F>,
    legs: (&F, &F),
) -> GeomResult<bool> {
    if !is_right_angle(right1) || !is_right_angle(right2) {
        return Err(GeomError::NotRightAngle);
    }
    let b = point_on_ray_at(right1.ray1(), legs.0, &[])?;
    let c = point_on_ray_at(right1.ray2(), legs.1, &[])?;
    let e = point_on_ray_at(right2.ray1(), legs.0, &[])?;
    let f = point_on_ray_at(right2.ray2(), legs.1, &[])?;
    Ok(sq_distance(&b, &c) == sq_distance(&e, &f))
}

/// Number of right angles among the vertex angles of `t`.
pub fn count_right_angles<F: OrderedField>(t: &Triangle<F>) -> usize {
    let v = t.vertices();
    (0..3)
        .filter(|&i| {
            let o = v[i];
            let p = v[(i + 1) % 3];
            let q = v[(i + 2) % 3];
            p.minus(o).dot(&q.minus(o)).is_zero()
        })
        .count()
}

pub fn check_axiom_r2<F: OrderedField>(t: &Triangle<F>) -> bool {
    count_right_angles(t) <= 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhombusReport<F> {
    pub midpoint_ok: bool,
    pub perpendicular_ok: bool,
    pub intersection: Option<Point<F>>,
}

pub fn check_rhombus_theorem<F: OrderedField>(r: &Rhombus<F>) -> RhombusReport<F> {
    let ad = LineEq::through(&r.a, &r.d).expect("distinct vertices");
    let bc = LineEq::through(&r.b, &r.c).expect("distinct vertices");
    let intersection = match line_line_intersect(&ad, &bc) {
        LineMeet::Point(p) => Some(p),
        _ => None,
    };
    let m1 = midpoint(&r.a, &r.d).expect("distinct vertices");
    let m2 = midpoint(&r.b, &r.c).expect("distinct vertices");
    let midpoint_ok = intersection.as_ref() == Some(&m1) && m1 == m2;
    let perpendicular_ok = r.d.minus(&r.a).dot(&r.c.minus(&r.b)).is_zero();
    RhombusReport {
        midpoint_ok,
        perpendicular_ok,
        intersection,
    }
}

/// With `A` and `A'` on one side of line `BC`, `AB = A'B` and `AC = A'C`,
/// report whether `A' = A`.
pub fn check_rigidity<F: OrderedField>(
    b: &Point<F>,
    c: &Point<F>,
    a: &Point<F>,
    a2: &Point<F>,
) -> GeomResult<bool> {
    let l = LineEq::through(b, c)?;
    let (sa, sa2) = (side_of_line(a, &l), side_of_line(a2, &l));
    if sa == 0 || sa != sa2 {
        return Err(GeomError::PreconditionViolated(
            "points are not strictly on one side of the line".into(),
        ));
    }
    if sq_distance(a, b) != sq_distance(a2, b) || sq_distance(a, c) != sq_distance(a2, c) {
        return Err(GeomError::PreconditionViolated("distances differ".into()));
    }
    Ok(a == a2)
}

/// Result of carrying two auxiliary points along with a triangle copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxTransport<F> {
    pub c_image: Point<F>,
    pub d_image: Point<F>,
    pub e_image: Point<F>,
    /// The copied apex agrees with the point rebuilt from the foot of its
    /// perpendicular on the opposite side line.
    pub foot_check: bool,
    /// `D'E'` is congruent to `DE`.
    pub congruent: bool,
}

/// Copy triangle `t` onto `base` and map `D`, `E` (points on the lines of
/// the sides) along with it.
pub fn transport_with_aux<F: OrderedField>(
    t: &Triangle<F>,
    base: &SegmentT<F>,
    side: i8,
    d: &Point<F>,
    e: &Point<F>,
) -> GeomResult<AuxTransport<F>> {
    let c2 = transport_triangle(t, base, side)?;
    let (a2, b2) = (base.start().clone(), base.end().clone());
    let src = [&t.a, &t.b, &t.c];
    let dst = [&a2, &b2, &c2];
    let image = |x: &Point<F>| -> GeomResult<(Point<F>, usize)> {
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            if collinear(src[i], src[j], x) {
                let s = SegmentT::new(src[i].clone(), src[j].clone())?;
                let s2 = SegmentT::new(dst[i].clone(), dst[j].clone())?;
                return Ok((transport_line_bijection(&s, &s2, x)?, 3 - i - j));
            }
        }
        Err(GeomError::AuxPointNotOnSideLines)
    };
    let (d2, _) = image(d)?;
    let (e2, opposite) = image(e)?;
    let foot_check = apex_from_foot(&src, &dst, opposite)? == *dst[opposite];
    let congruent = sq_distance(&d2, &e2) == sq_distance(d, e);
    Ok(AuxTransport {
        c_image: c2,
        d_image: d2,
        e_image: e2,
        foot_check,
        congruent,
    })
}

/// Rebuild the image of vertex `k` from the image of the foot of its
/// perpendicular on the opposite side line, at the same distance and on the
/// same side as the copied vertex.
fn apex_from_foot<F: OrderedField>(
    src: &[&Point<F>; 3],
    dst: &[&Point<F>; 3],
    k: usize,
) -> GeomResult<Point<F>> {
    let (i, j) = ((k + 1) % 3, (k + 2) % 3);
    let line = LineEq::through(src[i], src[j])?;
    let foot = line.foot(src[k]);
    let s = SegmentT::new(src[i].clone(), src[j].clone())?;
    let s2 = SegmentT::new(dst[i].clone(), dst[j].clone())?;
    let foot2 = transport_line_bijection(&s, &s2, &foot)?;
    let line2 = s2.line();
    let side = side_of_line(dst[k], &line2);
    let ray = erect_perpendicular(&foot2, &line2, side)?;
    let hints = [&dst[k].x, &dst[k].y];
    point_on_ray_at(&ray, &sq_distance(src[k], &foot), &hints)
}

/// Mirror of `p` in the line `l`.
pub fn reflect<F: OrderedField>(p: &Point<F>, l: &LineEq<F>) -> Point<F> {
    let f = l.foot(p);
    let v: Vec2<F> = f.minus(p);
    f.plus(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rational, TowerValue};

    type Q = Rational;
    type T = TowerValue;

    fn p(x: i64, y: i64) -> Point<Q> {
        Point::from_i64(x, y)
    }

    fn seg(a: Point<Q>, b: Point<Q>) -> SegmentT<Q> {
        SegmentT::new(a, b).unwrap()
    }

    #[test]
    fn congruence_examples() {
        assert!(congruent_segments(&seg(p(0, 0), p(3, 4)), &seg(p(10, 0), p(10, 5))));
        let s = seg(p(1, 2), p(4, 7));
        assert!(congruent_segments(&s, &s.reversed()));
        assert!(!congruent_segments(&seg(p(0, 0), p(1, 0)), &seg(p(0, 0), p(2, 0))));
        assert!(congruent_by_circle(&p(0, 0), &p(3, 4), &p(5, 0)));
        assert!(!congruent_by_circle(&p(0, 0), &p(3, 4), &p(4, 4)));
    }

    #[test]
    fn compare_examples() {
        assert_eq!(
            compare_segments(&seg(p(0, 0), p(2, 0)), &seg(p(0, 0), p(1, 0))),
            Ordering::Greater
        );
        let half3 = Point::new(Q::from_ratio(3, 2), Q::zero());
        assert_eq!(
            compare_segments(&seg(p(0, 0), p(1, 1)), &seg(p(0, 0), half3)),
            Ordering::Less
        );
    }

    #[test]
    fn midpoint_examples() {
        assert_eq!(midpoint(&p(0, 0), &p(2, 4)).unwrap(), p(1, 2));
        assert_eq!(
            midpoint(&p(0, 0), &p(1, 0)).unwrap(),
            Point::new(Q::from_ratio(1, 2), Q::zero())
        );
        assert!(midpoint(&p(1, 1), &p(1, 1)).is_err());
    }

    #[test]
    fn transport_segment_examples() {
        let r = RayT::new(p(10, 0), Vec2::from_i64(0, 1)).unwrap();
        assert_eq!(transport_segment(&seg(p(0, 0), p(3, 0)), &r).unwrap(), p(10, 3));

        let r = RayT::new(p(0, 0), Vec2::from_i64(1, 0)).unwrap();
        assert_eq!(
            transport_segment(&seg(p(0, 0), p(1, 1)), &r),
            Err(GeomError::NotConstructibleInModel(crate::field::Model::Rational))
        );
        let rt = RayT::new(Point::<T>::from_i64(0, 0), Vec2::from_i64(1, 0)).unwrap();
        let s = SegmentT::new(Point::<T>::from_i64(0, 0), Point::from_i64(1, 1)).unwrap();
        let x = transport_segment(&s, &rt).unwrap();
        assert_eq!(x.y, T::zero());
        assert_eq!(sq_distance(&x, &Point::origin()), T::from_i64(2));
    }

    #[test]
    fn line_bijection_examples() {
        let ab = seg(p(0, 0), p(2, 0));
        let ab2 = seg(p(5, 5), p(7, 5));
        assert_eq!(transport_line_bijection(&ab, &ab2, &p(1, 0)).unwrap(), p(6, 5));
        assert_eq!(transport_line_bijection(&ab, &ab2, &p(0, 0)).unwrap(), p(5, 5));
        assert_eq!(transport_line_bijection(&ab, &ab2, &p(-1, 0)).unwrap(), p(4, 5));
        assert_eq!(
            transport_line_bijection(&ab, &ab2, &p(1, 1)),
            Err(GeomError::NonCollinearInput)
        );
        assert_eq!(
            transport_line_bijection(&ab, &seg(p(0, 0), p(3, 0)), &p(1, 0)),
            Err(GeomError::NotCongruentBase)
        );
    }

    #[test]
    fn triangle_transport_examples() {
        let t = Triangle::new(p(0, 0), p(4, 0), p(0, 3)).unwrap();
        let base = seg(p(0, 0), p(4, 0));
        assert_eq!(transport_triangle(&t, &base, 1).unwrap(), p(0, 3));
        assert_eq!(transport_triangle(&t, &base, -1).unwrap(), p(0, -3));
        let t = Triangle::new(p(0, 0), p(2, 0), p(1, 1)).unwrap();
        assert_eq!(transport_triangle(&t, &seg(p(3, 0), p(5, 0)), 1).unwrap(), p(4, 1));
        assert_eq!(
            transport_triangle(&t, &seg(p(3, 0), p(6, 0)), 1),
            Err(GeomError::NotCongruentBase)
        );
    }

    #[test]
    fn perpendicular_examples() {
        let x_axis = LineEq::new(Q::zero(), Q::one(), Q::zero()).unwrap();
        assert_eq!(drop_perpendicular(&p(3, 5), &x_axis), p(3, 0));
        assert_eq!(drop_perpendicular(&p(3, 0), &x_axis), p(3, 0));
        let up = erect_perpendicular(&p(2, 0), &x_axis, 1).unwrap();
        assert_eq!(up.dir(), &Vec2::from_i64(0, 1));
        let down = erect_perpendicular(&p(2, 0), &x_axis, -1).unwrap();
        assert_eq!(down.dir(), &Vec2::from_i64(0, -1));
        assert_eq!(
            erect_perpendicular(&p(2, 1), &x_axis, 1),
            Err(GeomError::PointNotOnLine)
        );
        let l = LineEq::new(Q::one(), Q::one(), Q::zero()).unwrap();
        let s = side_of_line(&p(1, 1), &l);
        assert_eq!(erect_perpendicular(&p(0, 0), &l, s).unwrap().dir(), &Vec2::from_i64(1, 1));
    }

    #[test]
    fn right_angle_examples() {
        let ang = |u: (i64, i64), v: (i64, i64)| {
            AngleT::new(
                RayT::new(p(0, 0), Vec2::from_i64(u.0, u.1)).unwrap(),
                RayT::new(p(0, 0), Vec2::from_i64(v.0, v.1)).unwrap(),
            )
            .unwrap()
        };
        assert!(is_right_angle(&ang((1, 0), (0, 1))));
        assert!(!is_right_angle(&ang((1, 0), (1, 1))));
        assert!(is_right_angle(&ang((1, 2), (-2, 1))));
    }

    #[test]
    fn r1_example_in_tower() {
        let o = Point::<T>::origin();
        let v = Point::<T>::from_i64(7, 3);
        let r = |base: &Point<T>, x, y| RayT::new(base.clone(), Vec2::from_i64(x, y)).unwrap();
        let a1 = AngleT::new(r(&o, 1, 0), r(&o, 0, 1)).unwrap();
        let a2 = AngleT::new(r(&v, 1, 2), r(&v, -2, 1)).unwrap();
        assert!(check_axiom_r1(&a1, &a2, (&T::from_i64(9), &T::from_i64(16))).unwrap());
        assert!(check_axiom_r1(&a1, &a1, (&T::from_i64(9), &T::from_i64(16))).unwrap());
        let not_right = AngleT::new(r(&o, 1, 0), r(&o, 1, 1)).unwrap();
        assert_eq!(
            check_axiom_r1(&a1, &not_right, (&T::one(), &T::one())),
            Err(GeomError::NotRightAngle)
        );
    }

    #[test]
    fn r2_examples() {
        assert!(check_axiom_r2(&Triangle::new(p(0, 0), p(4, 0), p(0, 3)).unwrap()));
        let t = Triangle::new(p(0, 0), p(1, 0), Point::new(Q::from_ratio(1, 2), Q::one())).unwrap();
        assert_eq!(count_right_angles(&t), 0);
        assert!(check_axiom_r2(&t));
    }

    #[test]
    fn rhombus_example() {
        let r = Rhombus::new(p(0, 4), p(-3, 0), p(0, -4), p(3, 0)).unwrap();
        let rep = check_rhombus_theorem(&r);
        assert!(rep.midpoint_ok && rep.perpendicular_ok);
        assert_eq!(rep.intersection, Some(p(0, 0)));
        let sq = Rhombus::new(p(0, 0), p(1, 0), p(1, 1), p(0, 1)).unwrap();
        let rep = check_rhombus_theorem(&sq);
        assert!(rep.midpoint_ok && rep.perpendicular_ok);
    }

    #[test]
    fn rigidity_examples() {
        type TP = Point<T>;
        let (b, c, a) = (TP::from_i64(0, 0), TP::from_i64(4, 0), TP::from_i64(2, 5));
        let c1 = CircleT::new(b.clone(), sq_distance(&a, &b)).unwrap();
        let c2 = CircleT::new(c.clone(), sq_distance(&a, &c)).unwrap();
        let pts = circle_circle_intersect(&c1, &c2).unwrap().points();
        let l = LineEq::through(&b, &c).unwrap();
        let a2 = pts.into_iter().find(|q| side_of_line(q, &l) == 1).unwrap();
        assert_eq!(a2, a);
        assert!(check_rigidity(&b, &c, &a, &a2).unwrap());
        assert!(check_rigidity(&b, &c, &a, &a).unwrap());
        assert!(check_rigidity(&b, &c, &a, &TP::from_i64(2, -5)).is_err());
    }

    #[test]
    fn aux_transport_examples() {
        let t = Triangle::new(p(0, 0), p(4, 0), p(0, 3)).unwrap();
        let base = seg(p(0, 0), p(4, 0));
        let r = transport_with_aux(&t, &base, 1, &p(2, 0), &p(0, 1)).unwrap();
        assert_eq!((r.d_image.clone(), r.e_image.clone()), (p(2, 0), p(0, 1)));
        assert!(r.foot_check && r.congruent);

        let r = transport_with_aux(&t, &base, -1, &p(2, 0), &p(0, 1)).unwrap();
        assert_eq!((r.d_image.clone(), r.e_image.clone()), (p(2, 0), p(0, -1)));
        assert_eq!(sq_distance(&r.d_image, &r.e_image), Q::from_i64(5));
        assert!(r.foot_check && r.congruent);

        let moved = seg(p(10, 10), p(10, 14));
        let r = transport_with_aux(&t, &moved, 1, &p(6, 0), &p(0, 1)).unwrap();
        assert!(r.congruent && r.foot_check);
        assert_eq!(r.d_image, p(10, 16));

        assert_eq!(
            transport_with_aux(&t, &base, 1, &p(1, 1), &p(0, 1)),
            Err(GeomError::AuxPointNotOnSideLines)
        );
    }
}
