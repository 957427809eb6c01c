//! Ordered lines, systems of axes, rectilinear and polar coordinates, and
//! the rigid motion carrying one system of axes to another.

use crate::angle::{angle_class, AngleClass, AngleT};
use crate::error::{GeomError, GeomResult};
use crate::field::{FieldError, FieldValue, OrderedField};
use crate::kernel::erect_perpendicular;
use crate::plane::{line_line_intersect, sign_i8, LineEq, LineMeet, Point, RayT, Vec2};

/// A line with an origin and a chosen direction of increase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedLine<F> {
    line: LineEq<F>,
    origin: Point<F>,
    orientation: i8,
}

impl<F: OrderedField> OrderedLine<F> {
    pub fn new(line: LineEq<F>, origin: Point<F>, orientation: i8) -> GeomResult<Self> {
        if !line.contains(&origin) {
            return Err(GeomError::PointNotOnLine);
        }
        if orientation != 1 && orientation != -1 {
            return Err(GeomError::PreconditionViolated("orientation must be +1 or -1".into()));
        }
        Ok(OrderedLine {
            line,
            origin,
            orientation,
        })
    }

    /// The line through `origin` increasing along `dir`.
    pub fn from_dir(origin: Point<F>, dir: &Vec2<F>) -> GeomResult<Self> {
        let line = LineEq::through_dir(&origin, dir)?;
        let orientation = if line.direction().dot(dir).is_positive() { 1 } else { -1 };
        OrderedLine::new(line, origin, orientation)
    }

    pub fn line(&self) -> &LineEq<F> {
        &self.line
    }

    pub fn origin(&self) -> &Point<F> {
        &self.origin
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn direction(&self) -> Vec2<F> {
        let d = self.line.direction();
        if self.orientation > 0 {
            d
        } else {
            d.neg()
        }
    }

    /// Length of the direction vector.
    fn dir_norm(&self, hints: &[&F]) -> GeomResult<F> {
        let mut all = vec![&self.origin.x, &self.origin.y];
        all.extend_from_slice(hints);
        self.direction()
            .sq_norm()
            .try_sqrt_near(&all)?
            .ok_or(GeomError::NotConstructibleInModel(F::MODEL))
    }

    /// The point with coordinate `t`.
    pub fn point_at(&self, t: &F) -> GeomResult<Point<F>> {
        let k = t.clone() / self.dir_norm(&[t])?;
        Ok(self.origin.plus(&self.direction().scale(&k)))
    }
}

/// Signed distance of `p` from the origin along `ol`.
pub fn line_coordinate<F: OrderedField>(ol: &OrderedLine<F>, p: &Point<F>) -> GeomResult<F> {
    if !ol.line.contains(p) {
        return Err(GeomError::PointNotOnLine);
    }
    let proj = p.minus(&ol.origin).dot(&ol.direction());
    if proj.is_zero() {
        return Ok(F::zero());
    }
    Ok(proj / ol.dir_norm(&[&p.x, &p.y])?)
}

/// The coordinate times its absolute value: available in every model,
/// and determines the coordinate.
pub fn signed_sq_coordinate<F: OrderedField>(ol: &OrderedLine<F>, p: &Point<F>) -> GeomResult<F> {
    if !ol.line.contains(p) {
        return Err(GeomError::PointNotOnLine);
    }
    let d = ol.direction();
    let proj = p.minus(&ol.origin).dot(&d);
    let sq = proj.square() / d.sq_norm();
    Ok(if proj.is_negative() { -sq } else { sq })
}

/// Two perpendicular ordered lines through a common origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisSystem<F> {
    first: OrderedLine<F>,
    second: OrderedLine<F>,
}

impl<F: OrderedField> AxisSystem<F> {
    pub fn new(first: OrderedLine<F>, second: OrderedLine<F>) -> GeomResult<Self> {
        if first.origin != second.origin {
            return Err(GeomError::PreconditionViolated("axes must share the origin".into()));
        }
        if !first.direction().dot(&second.direction()).is_zero() {
            return Err(GeomError::PreconditionViolated("axes must be perpendicular".into()));
        }
        Ok(AxisSystem { first, second })
    }

    pub fn from_dirs(origin: Point<F>, d1: &Vec2<F>, d2: &Vec2<F>) -> GeomResult<Self> {
        AxisSystem::new(
            OrderedLine::from_dir(origin.clone(), d1)?,
            OrderedLine::from_dir(origin, d2)?,
        )
    }

    pub fn standard() -> Self {
        AxisSystem::from_dirs(Point::origin(), &Vec2::from_i64(1, 0), &Vec2::from_i64(0, 1))
            .expect("standard axes")
    }

    pub fn first(&self) -> &OrderedLine<F> {
        &self.first
    }

    pub fn second(&self) -> &OrderedLine<F> {
        &self.second
    }

    pub fn origin(&self) -> &Point<F> {
        &self.first.origin
    }

    /// Whether the second axis is a counter-clockwise quarter turn of the first.
    pub fn is_right_handed(&self) -> bool {
        self.first.direction().cross(&self.second.direction()).is_positive()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectCoords<F> {
    pub u: F,
    pub v: F,
}

/// Coordinates of the feet of the perpendiculars from `p` to the two axes.
pub fn rect_coords<F: OrderedField>(p: &Point<F>, axes: &AxisSystem<F>) -> GeomResult<RectCoords<F>> {
    let f1 = axes.first.line.foot(p);
    let f2 = axes.second.line.foot(p);
    Ok(RectCoords {
        u: line_coordinate(&axes.first, &f1)?,
        v: line_coordinate(&axes.second, &f2)?,
    })
}

/// The point with rectilinear coordinates `(u, v)`: erect perpendiculars at
/// the two feet and intersect them.
pub fn point_from_rect<F: OrderedField>(axes: &AxisSystem<F>, u: &F, v: &F) -> GeomResult<Point<F>> {
    let f1 = axes.first.point_at(u)?;
    let f2 = axes.second.point_at(v)?;
    let m1 = erect_perpendicular(&f1, &axes.first.line, 1)?.line();
    let m2 = erect_perpendicular(&f2, &axes.second.line, 1)?.line();
    match line_line_intersect(&m1, &m2) {
        LineMeet::Point(p) => Ok(p),
        _ => unreachable!("perpendiculars to perpendicular axes meet"),
    }
}

/// Direction part of polar coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolarDirection<F> {
    /// Interior of quadrant `quadrant` (1 to 4, counted from the positive
    /// first axis toward the positive second axis); `class` is the angle
    /// from the positive first axis.
    Quadrant { quadrant: u8, class: AngleClass<F> },
    /// On axis 1 or 2, on its positive or negative ray.
    Axis { axis: u8, positive: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarCoords<F> {
    pub sq_radius: F,
    pub direction: PolarDirection<F>,
}

pub fn polar_coords<F: OrderedField>(p: &Point<F>, axes: &AxisSystem<F>) -> GeomResult<PolarCoords<F>> {
    let o = axes.origin();
    if p == o {
        return Err(GeomError::OriginExcluded);
    }
    let w = p.minus(o);
    let su = sign_i8(&w.dot(&axes.first.direction()));
    let sv = sign_i8(&w.dot(&axes.second.direction()));
    let direction = match (su, sv) {
        (u, 0) => PolarDirection::Axis {
            axis: 1,
            positive: u > 0,
        },
        (0, v) => PolarDirection::Axis {
            axis: 2,
            positive: v > 0,
        },
        (u, v) => {
            let quadrant = match (u > 0, v > 0) {
                (true, true) => 1,
                (false, true) => 2,
                (false, false) => 3,
                (true, false) => 4,
            };
            let first_ray = RayT::new(o.clone(), axes.first.direction())?;
            let class = angle_class(&AngleT::new(first_ray, RayT::toward(o, p)?)?);
            PolarDirection::Quadrant { quadrant, class }
        }
    };
    Ok(PolarCoords {
        sq_radius: w.sq_norm(),
        direction,
    })
}

/// `p -> linear * p + translation` with an orthogonal linear part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidMotion<F> {
    linear: [[F; 2]; 2],
    translation: Vec2<F>,
}

impl<F: OrderedField> RigidMotion<F> {
    pub fn new(linear: [[F; 2]; 2], translation: Vec2<F>) -> GeomResult<Self> {
        let m = RigidMotion {
            linear,
            translation,
        };
        if !m.is_orthogonal() {
            return Err(GeomError::PreconditionViolated("linear part is not orthogonal".into()));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        RigidMotion {
            linear: [[F::one(), F::zero()], [F::zero(), F::one()]],
            translation: Vec2::new(F::zero(), F::zero()),
        }
    }

    pub fn linear(&self) -> &[[F; 2]; 2] {
        &self.linear
    }

    pub fn translation(&self) -> &Vec2<F> {
        &self.translation
    }

    /// `linear^T * linear == I`, exactly.
    pub fn is_orthogonal(&self) -> bool {
        let l = &self.linear;
        let col = |j: usize| Vec2::new(l[0][j].clone(), l[1][j].clone());
        let (c0, c1) = (col(0), col(1));
        c0.sq_norm() == F::one() && c1.sq_norm() == F::one() && c0.dot(&c1).is_zero()
    }

    pub fn determinant(&self) -> F {
        let l = &self.linear;
        l[0][0].clone() * l[1][1].clone() - l[0][1].clone() * l[1][0].clone()
    }

    fn apply_linear(&self, v: &Vec2<F>) -> Vec2<F> {
        let l = &self.linear;
        Vec2::new(
            l[0][0].clone() * v.x.clone() + l[0][1].clone() * v.y.clone(),
            l[1][0].clone() * v.x.clone() + l[1][1].clone() * v.y.clone(),
        )
    }

    /// `other` after `self`.
    pub fn then(&self, other: &RigidMotion<F>) -> RigidMotion<F> {
        let col = |j: usize| {
            other.apply_linear(&Vec2::new(self.linear[0][j].clone(), self.linear[1][j].clone()))
        };
        let (c0, c1) = (col(0), col(1));
        RigidMotion {
            linear: [[c0.x.clone(), c1.x.clone()], [c0.y.clone(), c1.y.clone()]],
            translation: other.apply_linear(&self.translation).add(&other.translation),
        }
    }
}

pub fn apply_motion<F: OrderedField>(m: &RigidMotion<F>, p: &Point<F>) -> Point<F> {
    let v = m.apply_linear(&Vec2::new(p.x.clone(), p.y.clone())).add(&m.translation);
    Point::new(v.x, v.y)
}

/// The rigid motion taking `src` to `dst`: origin to origin, positive
/// first axis to positive first axis, positive second to positive second.
pub fn motion_from_axes<F: OrderedField>(
    src: &AxisSystem<F>,
    dst: &AxisSystem<F>,
) -> GeomResult<RigidMotion<F>> {
    // linear = f1 e1^T + f2 e2^T for unit vectors e_i of src and f_i of dst;
    // with raw direction vectors D_i, F_i this is F_i D_i^T / (|F_i| |D_i|).
    let pairs = [
        (src.first.direction(), dst.first.direction()),
        (src.second.direction(), dst.second.direction()),
    ];
    let mut linear = [[F::zero(), F::zero()], [F::zero(), F::zero()]];
    for (d, f) in &pairs {
        let hints = [&d.x, &d.y, &f.x, &f.y];
        let k = (d.sq_norm() * f.sq_norm())
            .try_sqrt_near(&hints)?
            .ok_or(GeomError::NotConstructibleInModel(F::MODEL))?;
        let fs = [&f.x, &f.y];
        let ds = [&d.x, &d.y];
        for i in 0..2 {
            for j in 0..2 {
                let term = fs[i].clone() * ds[j].clone() / k.clone();
                linear[i][j] = linear[i][j].clone() + term;
            }
        }
    }
    let partial = RigidMotion {
        linear,
        translation: Vec2::new(F::zero(), F::zero()),
    };
    let moved = apply_motion(&partial, src.origin());
    let translation = dst.origin().minus(&moved);
    RigidMotion::new(partial.linear, translation)
}

/// Whether the rectilinear coordinates of `p` in `axes1` name a point in
/// `axes2` too, and that point has the same polar coordinates in `axes2` as
/// `p` has in `axes1`.
pub fn coords_independent_check<F: OrderedField>(
    p: &Point<F>,
    axes1: &AxisSystem<F>,
    axes2: &AxisSystem<F>,
) -> GeomResult<bool> {
    let rc = rect_coords(p, axes1)?;
    let q = point_from_rect(axes2, &rc.u, &rc.v)?;
    if rect_coords(&q, axes2)? != rc {
        return Ok(false);
    }
    if p == axes1.origin() {
        return Ok(q == *axes2.origin());
    }
    Ok(polar_coords(p, axes1)? == polar_coords(&q, axes2)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeOutcome<F> {
    Realized(Point<F>),
    NotRealized(GeomError),
    ModelMismatch(FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeItem<F> {
    pub pair: (FieldValue, FieldValue),
    pub outcome: ProbeOutcome<F>,
}

impl<F> ProbeItem<F> {
    pub fn realized(&self) -> bool {
        matches!(self.outcome, ProbeOutcome::Realized(_))
    }
}

/// Try to build the point with each pair of rectilinear coordinates.
pub fn coordinate_set_probe<F: OrderedField>(
    axes: &AxisSystem<F>,
    pairs: &[(FieldValue, FieldValue)],
) -> Vec<ProbeItem<F>> {
    pairs
        .iter()
        .map(|(u, v)| {
            let outcome = match (F::from_value(u), F::from_value(v)) {
                (Ok(u), Ok(v)) => match point_from_rect(axes, &u, &v) {
                    Ok(p) => ProbeOutcome::Realized(p),
                    Err(e) => ProbeOutcome::NotRealized(e),
                },
                (Err(e), _) | (_, Err(e)) => ProbeOutcome::ModelMismatch(e),
            };
            ProbeItem {
                pair: (u.clone(), v.clone()),
                outcome,
            }
        })
        .collect()
}
