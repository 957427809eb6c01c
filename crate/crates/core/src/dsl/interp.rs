use std::cmp::Ordering;
use std::fmt;

use indexmap::IndexMap;

use super::ast::*;
use crate::angle::{bisect_angle, copy_angle, AngleT};
use crate::error::GeomError;
use crate::field::{FieldError, InfinitesimalValue, Model, OrderedField, Poly, Rational, TowerValue};
use crate::kernel::{is_right_angle, midpoint, transport_segment, transport_triangle, Triangle};
use crate::plane::{
    between, circle_circle_intersect, collinear, line_circle_intersect, line_line_intersect,
    sq_distance, CircleT, Intersection, LineEq, LineMeet, Point, RayT, SegmentT, Vec2,
};

/// A line remembered with the direction it was declared in, so that
/// "side +1" (the left) is meaningful.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedLine<F> {
    pub anchor: Point<F>,
    pub dir: Vec2<F>,
}

impl<F: OrderedField> DirectedLine<F> {
    pub fn eq(&self) -> LineEq<F> {
        LineEq::through_dir(&self.anchor, &self.dir).expect("nonzero direction")
    }

    pub fn side(&self, p: &Point<F>) -> i8 {
        match self.dir.cross(&p.minus(&self.anchor)).sign() {
            Ordering::Greater => 1,
            Ordering::Less => -1,
            Ordering::Equal => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value<F> {
    Point(Point<F>),
    Line(DirectedLine<F>),
    Ray(RayT<F>),
    Circle(CircleT<F>),
}

impl<F: OrderedField> Value<F> {
    pub fn kind(&self) -> Kind {
        match self {
            Value::Point(_) => Kind::Point,
            Value::Line(_) => Kind::Line,
            Value::Ray(_) => Kind::Ray,
            Value::Circle(_) => Kind::Circle,
        }
    }

    fn directed(&self) -> Option<DirectedLine<F>> {
        match self {
            Value::Line(l) => Some(l.clone()),
            Value::Ray(r) => Some(DirectedLine {
                anchor: r.base().clone(),
                dir: r.dir().clone(),
            }),
            _ => None,
        }
    }
}

impl<F: OrderedField> fmt::Display for Value<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Point(p) => write!(f, "{p}"),
            Value::Line(l) => write!(f, "line through {} along ({}, {})", l.anchor, l.dir.x, l.dir.y),
            Value::Ray(r) => write!(f, "ray from {} along ({}, {})", r.base(), r.dir().x, r.dir().y),
            Value::Circle(c) => write!(f, "circle at {} with squared radius {}", c.center(), c.sq_radius()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssertionRecord {
    pub pos: Pos,
    pub text: String,
    pub kind: &'static str,
    pub passed: bool,
    /// Why the check could not be evaluated, if it could not.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Env<F> {
    pub objects: IndexMap<String, Value<F>>,
    pub log: Vec<AssertionRecord>,
}

impl<F: OrderedField> Env<F> {
    fn new() -> Self {
        Env {
            objects: IndexMap::new(),
            log: Vec::new(),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Value<F>> {
        self.objects.get(name)
    }

    pub fn point(&self, name: &str) -> Option<&Point<F>> {
        match self.objects.get(name) {
            Some(Value::Point(p)) => Some(p),
            _ => None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.log.iter().all(|r| r.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureKind {
    NotConstructibleInModel(Model),
    NoSuchIntersection,
    AmbiguousIntersection,
    Geometry(GeomError),
    ModelMismatch(FieldError),
    UndeclaredIdentifier(String),
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureKind::NotConstructibleInModel(m) => {
                write!(f, "not constructible in the {m} model")
            }
            FailureKind::NoSuchIntersection => f.write_str("no such intersection"),
            FailureKind::AmbiguousIntersection => {
                f.write_str("disambiguator does not single out one intersection point")
            }
            FailureKind::Geometry(e) => write!(f, "{e}"),
            FailureKind::ModelMismatch(e) => write!(f, "{e}"),
            FailureKind::UndeclaredIdentifier(n) => write!(f, "undeclared identifier `{n}`"),
        }
    }
}

impl FailureKind {
    pub fn name(&self) -> &'static str {
        match self {
            FailureKind::NotConstructibleInModel(_) => "NotConstructibleInModel",
            FailureKind::NoSuchIntersection => "NoSuchIntersection",
            FailureKind::AmbiguousIntersection => "AmbiguousIntersection",
            FailureKind::Geometry(_) => "Geometry",
            FailureKind::ModelMismatch(_) => "ModelMismatch",
            FailureKind::UndeclaredIdentifier(_) => "UndeclaredIdentifier",
        }
    }
}

impl From<GeomError> for FailureKind {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::NotConstructibleInModel(m) => FailureKind::NotConstructibleInModel(m),
            GeomError::Field(e @ FieldError::ModelMismatch { .. }) => FailureKind::ModelMismatch(e),
            other => FailureKind::Geometry(other),
        }
    }
}

/// A construction that could not be carried out; execution stops there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuntimeFailure {
    pub pos: Pos,
    pub text: String,
    pub kind: FailureKind,
}

impl fmt::Display for RuntimeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: `{}`: {}",
            self.pos.line, self.pos.column, self.text, self.kind
        )
    }
}

impl std::error::Error for RuntimeFailure {}

pub fn execute<F: OrderedField>(script: &Script) -> Result<Env<F>, RuntimeFailure> {
    match execute_partial(script) {
        (env, None) => Ok(env),
        (_, Some(f)) => Err(f),
    }
}

/// Run statements until the first runtime failure, keeping everything
/// defined and checked before it.
pub fn execute_partial<F: OrderedField>(script: &Script) -> (Env<F>, Option<RuntimeFailure>) {
    let mut env = Env::new();
    for stmt in &script.stmts {
        if let Err(kind) = step(&mut env, stmt) {
            let failure = RuntimeFailure {
                pos: stmt.pos,
                text: stmt.to_string(),
                kind,
            };
            return (env, Some(failure));
        }
    }
    (env, None)
}

fn lookup<'a, F>(env: &'a Env<F>, name: &str) -> Result<&'a Value<F>, FailureKind> {
    env.objects
        .get(name)
        .ok_or_else(|| FailureKind::UndeclaredIdentifier(name.to_string()))
}

fn pt<F: OrderedField>(env: &Env<F>, name: &str) -> Result<Point<F>, FailureKind> {
    match lookup(env, name)? {
        Value::Point(p) => Ok(p.clone()),
        _ => Err(FailureKind::UndeclaredIdentifier(name.to_string())),
    }
}

fn straight<F: OrderedField>(env: &Env<F>, name: &str) -> Result<DirectedLine<F>, FailureKind> {
    lookup(env, name)?
        .directed()
        .ok_or_else(|| FailureKind::UndeclaredIdentifier(name.to_string()))
}

fn ray<F: OrderedField>(env: &Env<F>, name: &str) -> Result<RayT<F>, FailureKind> {
    match lookup(env, name)? {
        Value::Ray(r) => Ok(r.clone()),
        _ => Err(FailureKind::UndeclaredIdentifier(name.to_string())),
    }
}

/// Value of an `eps` polynomial in the model `F`.
pub fn eval_poly<F: OrderedField>(p: &Poly) -> Result<F, FailureKind> {
    if p.is_constant() {
        return Ok(F::from_rational(p.constant_term()));
    }
    let eps = F::eps().ok_or(FailureKind::ModelMismatch(FieldError::ModelMismatch {
        left: Model::Infinitesimal,
        right: F::MODEL,
    }))?;
    let mut acc = F::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * eps.clone() + F::from_rational(c.clone());
    }
    Ok(acc)
}

fn step<F: OrderedField>(env: &mut Env<F>, stmt: &Stmt) -> Result<(), FailureKind> {
    let (name, value) = match &stmt.kind {
        StmtKind::Point { name, x, y } => {
            (name, Value::Point(Point::new(eval_poly(x)?, eval_poly(y)?)))
        }
        StmtKind::Line { name, from, to } => {
            let (a, b) = (pt(env, from)?, pt(env, to)?);
            if a == b {
                return Err(GeomError::DegenerateInput("line through one point").into());
            }
            let dir = b.minus(&a);
            (name, Value::Line(DirectedLine { anchor: a, dir }))
        }
        StmtKind::Ray { name, from, toward } => {
            (name, Value::Ray(RayT::toward(&pt(env, from)?, &pt(env, toward)?)?))
        }
        StmtKind::Circle {
            name,
            center,
            through,
        } => (
            name,
            Value::Circle(CircleT::through(&pt(env, center)?, &pt(env, through)?)?),
        ),
        StmtKind::Construct { name, op } => (name, construct(env, op)?),
        StmtKind::Assert(a) => {
            let (passed, detail) = match check(env, a) {
                Ok(b) => (b, None),
                Err(FailureKind::UndeclaredIdentifier(n)) => {
                    return Err(FailureKind::UndeclaredIdentifier(n))
                }
                Err(e) => (false, Some(e.to_string())),
            };
            env.log.push(AssertionRecord {
                pos: stmt.pos,
                text: stmt.to_string(),
                kind: a.keyword(),
                passed,
                detail,
            });
            return Ok(());
        }
    };
    env.objects.insert(name.clone(), value);
    Ok(())
}

fn construct<F: OrderedField>(env: &Env<F>, op: &Construction) -> Result<Value<F>, FailureKind> {
    let v = match op {
        Construction::Intersect {
            first,
            second,
            disamb,
        } => Value::Point(intersect(env, first, second, disamb)?),
        Construction::Midpoint { a, b } => Value::Point(midpoint(&pt(env, a)?, &pt(env, b)?)?),
        Construction::Foot { point, line } => {
            Value::Point(straight(env, line)?.eq().foot(&pt(env, point)?))
        }
        Construction::Erect { point, line, side } => {
            let l = straight(env, line)?;
            let p = pt(env, point)?;
            if l.side(&p) != 0 {
                return Err(GeomError::PointNotOnLine.into());
            }
            let left = l.dir.perp();
            let dir = if *side == Side::Left { left } else { left.neg() };
            Value::Ray(RayT::new(p, dir)?)
        }
        Construction::Transport { a, b, ray: r } => {
            let s = SegmentT::new(pt(env, a)?, pt(env, b)?)?;
            Value::Point(transport_segment(&s, &ray(env, r)?)?)
        }
        Construction::TriangleCopy {
            a,
            b,
            c,
            a2,
            b2,
            side,
        } => {
            let t = Triangle::new(pt(env, a)?, pt(env, b)?, pt(env, c)?)?;
            let base = SegmentT::new(pt(env, a2)?, pt(env, b2)?)?;
            Value::Point(transport_triangle(&t, &base, side.sign())?)
        }
        Construction::Bisect(angle) => Value::Ray(bisect_angle(&angle_of(env, angle)?)?),
        Construction::CopyAngle {
            angle,
            ray: r,
            side,
        } => Value::Ray(copy_angle(&angle_of(env, angle)?, &ray(env, r)?, side.sign())?),
    };
    Ok(v)
}

fn angle_of<F: OrderedField>(env: &Env<F>, a: &AngleRef) -> Result<AngleT<F>, FailureKind> {
    Ok(AngleT::from_points(
        &pt(env, &a.a)?,
        &pt(env, &a.vertex)?,
        &pt(env, &a.b)?,
    )?)
}

fn intersect<F: OrderedField>(
    env: &Env<F>,
    first: &str,
    second: &str,
    disamb: &Disambiguator,
) -> Result<Point<F>, FailureKind> {
    let (v1, v2) = (lookup(env, first)?, lookup(env, second)?);
    let found = match (v1, v2) {
        (Value::Circle(c1), Value::Circle(c2)) => circle_circle_intersect(c1, c2)?,
        (Value::Circle(c), other) | (other, Value::Circle(c)) => {
            let l = other
                .directed()
                .ok_or_else(|| FailureKind::UndeclaredIdentifier(first.to_string()))?;
            line_circle_intersect(&l.eq(), c)
        }
        _ => {
            let l1 = straight(env, first)?;
            let l2 = straight(env, second)?;
            match line_line_intersect(&l1.eq(), &l2.eq()) {
                LineMeet::Point(p) => Intersection::One(p),
                LineMeet::Parallel => Intersection::Empty,
                LineMeet::Identical => return Err(FailureKind::AmbiguousIntersection),
            }
        }
    };
    if found == Intersection::NotConstructibleInModel {
        return Err(FailureKind::NotConstructibleInModel(F::MODEL));
    }
    let on_rays = |p: &Point<F>| {
        [v1, v2].iter().all(|v| match v {
            Value::Ray(r) => r.contains(p),
            _ => true,
        })
    };
    let candidates: Vec<Point<F>> = found.points().into_iter().filter(on_rays).collect();
    if candidates.is_empty() {
        return Err(FailureKind::NoSuchIntersection);
    }
    let mut chosen: Vec<Point<F>> = match disamb {
        Disambiguator::Side { side, line } => {
            let l = straight(env, line)?;
            candidates
                .into_iter()
                .filter(|p| l.side(p) == side.sign())
                .collect()
        }
        Disambiguator::Nearest(anchor) => {
            let a = pt(env, anchor)?;
            let best = candidates
                .iter()
                .map(|p| sq_distance(&a, p))
                .min()
                .expect("nonempty");
            candidates
                .into_iter()
                .filter(|p| sq_distance(&a, p) == best)
                .collect()
        }
    };
    match chosen.len() {
        0 => Err(FailureKind::NoSuchIntersection),
        1 => Ok(chosen.pop().expect("one point")),
        _ => Err(FailureKind::AmbiguousIntersection),
    }
}

fn check<F: OrderedField>(env: &Env<F>, a: &Assertion) -> Result<bool, FailureKind> {
    Ok(match a {
        Assertion::Congruent(s, t) => {
            sq_distance(&pt(env, &s.a)?, &pt(env, &s.b)?)
                == sq_distance(&pt(env, &t.a)?, &pt(env, &t.b)?)
        }
        Assertion::Between(x, y, z) => between(&pt(env, x)?, &pt(env, y)?, &pt(env, z)?)?,
        Assertion::RightAngle(angle) => is_right_angle(&angle_of(env, angle)?),
        Assertion::Collinear(x, y, z) => collinear(&pt(env, x)?, &pt(env, y)?, &pt(env, z)?),
        Assertion::SameSide { p, q, line } => {
            let l = straight(env, line)?;
            let (s1, s2) = (l.side(&pt(env, p)?), l.side(&pt(env, q)?));
            s1 != 0 && s1 == s2
        }
    })
}

/// An executed script whose model was chosen at run time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DynEnv {
    Rational(Env<Rational>),
    Tower(Env<TowerValue>),
    Infinitesimal(Env<InfinitesimalValue>),
}

/// Floating-point image of a named object, for drawing. Infinitesimal
/// parts of coordinates are dropped.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Point { x: f64, y: f64 },
    Line { anchor: (f64, f64), dir: (f64, f64) },
    Ray { base: (f64, f64), dir: (f64, f64) },
    Circle { center: (f64, f64), radius: f64 },
}

impl DynEnv {
    pub fn model(&self) -> Model {
        match self {
            DynEnv::Rational(_) => Model::Rational,
            DynEnv::Tower(_) => Model::Tower,
            DynEnv::Infinitesimal(_) => Model::Infinitesimal,
        }
    }

    pub fn log(&self) -> &[AssertionRecord] {
        match self {
            DynEnv::Rational(e) => &e.log,
            DynEnv::Tower(e) => &e.log,
            DynEnv::Infinitesimal(e) => &e.log,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.log().iter().all(|r| r.passed)
    }

    /// Names with their exact values printed, in definition order.
    pub fn describe(&self) -> Vec<(String, Kind, String)> {
        fn go<F: OrderedField>(e: &Env<F>) -> Vec<(String, Kind, String)> {
            e.objects
                .iter()
                .map(|(n, v)| (n.clone(), v.kind(), v.to_string()))
                .collect()
        }
        match self {
            DynEnv::Rational(e) => go(e),
            DynEnv::Tower(e) => go(e),
            DynEnv::Infinitesimal(e) => go(e),
        }
    }

    /// Objects whose coordinates are all finite, in definition order.
    pub fn shapes(&self) -> Vec<(String, Shape)> {
        fn pair<F: OrderedField>(x: &F, y: &F) -> Option<(f64, f64)> {
            Some((x.to_f64()?, y.to_f64()?))
        }
        fn go<F: OrderedField>(e: &Env<F>) -> Vec<(String, Shape)> {
            e.objects
                .iter()
                .filter_map(|(n, v)| {
                    let shape = match v {
                        Value::Point(p) => {
                            let (x, y) = pair(&p.x, &p.y)?;
                            Shape::Point { x, y }
                        }
                        Value::Line(l) => Shape::Line {
                            anchor: pair(&l.anchor.x, &l.anchor.y)?,
                            dir: pair(&l.dir.x, &l.dir.y)?,
                        },
                        Value::Ray(r) => Shape::Ray {
                            base: pair(&r.base().x, &r.base().y)?,
                            dir: pair(&r.dir().x, &r.dir().y)?,
                        },
                        Value::Circle(c) => Shape::Circle {
                            center: pair(&c.center().x, &c.center().y)?,
                            radius: c.sq_radius().to_f64()?.sqrt(),
                        },
                    };
                    Some((n.clone(), shape))
                })
                .collect()
        }
        match self {
            DynEnv::Rational(e) => go(e),
            DynEnv::Tower(e) => go(e),
            DynEnv::Infinitesimal(e) => go(e),
        }
    }
}

/// Execute `script` in `model`, keeping the partial environment on failure.
pub fn run(script: &Script, model: Model) -> (DynEnv, Option<RuntimeFailure>) {
    match model {
        Model::Rational => {
            let (e, f) = execute_partial::<Rational>(script);
            (DynEnv::Rational(e), f)
        }
        Model::Tower => {
            let (e, f) = execute_partial::<TowerValue>(script);
            (DynEnv::Tower(e), f)
        }
        Model::Infinitesimal => {
            let (e, f) = execute_partial::<InfinitesimalValue>(script);
            (DynEnv::Infinitesimal(e), f)
        }
    }
}
