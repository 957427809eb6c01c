use std::fmt;

use crate::field::Poly;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// Kind of a named object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Point,
    Line,
    Ray,
    Circle,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Point => "point",
            Kind::Line => "line",
            Kind::Ray => "ray",
            Kind::Circle => "circle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

impl Script {
    /// Statements without their positions, for comparing scripts that
    /// differ only in layout and comments.
    pub fn structure(&self) -> Vec<&StmtKind> {
        self.stmts.iter().map(|s| &s.kind).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stmt {
    pub pos: Pos,
    pub kind: StmtKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    /// Coordinates are polynomials in `eps` with rational coefficients;
    /// anything but a constant needs the infinitesimal model.
    Point { name: String, x: Poly, y: Poly },
    /// Directed line from the first point toward the second.
    Line { name: String, from: String, to: String },
    Ray { name: String, from: String, toward: String },
    Circle { name: String, center: String, through: String },
    Construct { name: String, op: Construction },
    Assert(Assertion),
}

impl StmtKind {
    /// The name this statement defines and its kind.
    pub fn defines(&self) -> Option<(&str, Kind)> {
        match self {
            StmtKind::Point { name, .. } => Some((name, Kind::Point)),
            StmtKind::Line { name, .. } => Some((name, Kind::Line)),
            StmtKind::Ray { name, .. } => Some((name, Kind::Ray)),
            StmtKind::Circle { name, .. } => Some((name, Kind::Circle)),
            StmtKind::Construct { name, op } => Some((name, op.result_kind())),
            StmtKind::Assert(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn sign(self) -> i8 {
        match self {
            Side::Left => 1,
            Side::Right => -1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "+1",
            Side::Right => "-1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Disambiguator {
    /// The point on the given side of a line or ray read as a directed line.
    Side { side: Side, line: String },
    Nearest(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegRef {
    pub a: String,
    pub b: String,
}

/// Angle `a vertex b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleRef {
    pub a: String,
    pub vertex: String,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    Intersect { first: String, second: String, disamb: Disambiguator },
    Midpoint { a: String, b: String },
    Foot { point: String, line: String },
    Erect { point: String, line: String, side: Side },
    Transport { a: String, b: String, ray: String },
    TriangleCopy { a: String, b: String, c: String, a2: String, b2: String, side: Side },
    Bisect(AngleRef),
    CopyAngle { angle: AngleRef, ray: String, side: Side },
}

impl Construction {
    pub fn result_kind(&self) -> Kind {
        match self {
            Construction::Erect { .. } | Construction::Bisect(_) | Construction::CopyAngle { .. } => {
                Kind::Ray
            }
            _ => Kind::Point,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assertion {
    Congruent(SegRef, SegRef),
    Between(String, String, String),
    RightAngle(AngleRef),
    Collinear(String, String, String),
    SameSide { p: String, q: String, line: String },
}

impl Assertion {
    pub fn keyword(&self) -> &'static str {
        match self {
            Assertion::Congruent(..) => "congruent",
            Assertion::Between(..) => "between",
            Assertion::RightAngle(_) => "right_angle",
            Assertion::Collinear(..) => "collinear",
            Assertion::SameSide { .. } => "same_side",
        }
    }
}

impl fmt::Display for SegRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.a, self.b)
    }
}

impl fmt::Display for AngleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.a, self.vertex, self.b)
    }
}

impl fmt::Display for Disambiguator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Disambiguator::Side { side, line } => write!(f, "side {side} of {line}"),
            Disambiguator::Nearest(p) => write!(f, "nearest {p}"),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Intersect { first, second, disamb } => {
                write!(f, "intersect {first} {second} {disamb}")
            }
            Construction::Midpoint { a, b } => write!(f, "midpoint {a} {b}"),
            Construction::Foot { point, line } => write!(f, "foot {point} on {line}"),
            Construction::Erect { point, line, side } => {
                write!(f, "erect {point} on {line} side {side}")
            }
            Construction::Transport { a, b, ray } => write!(f, "transport {a} {b} onto {ray}"),
            Construction::TriangleCopy { a, b, c, a2, b2, side } => {
                write!(f, "triangle_copy {a} {b} {c} onto {a2} {b2} side {side}")
            }
            Construction::Bisect(angle) => write!(f, "bisect {angle}"),
            Construction::CopyAngle { angle, ray, side } => {
                write!(f, "copy_angle {angle} onto {ray} side {side}")
            }
        }
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "assert {} ", self.keyword())?;
        match self {
            Assertion::Congruent(s, t) => write!(f, "{s} {t}"),
            Assertion::Between(a, b, c) | Assertion::Collinear(a, b, c) => {
                write!(f, "{a} {b} {c}")
            }
            Assertion::RightAngle(angle) => write!(f, "{angle}"),
            Assertion::SameSide { p, q, line } => write!(f, "{p} {q} of {line}"),
        }
    }
}

impl fmt::Display for StmtKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StmtKind::Point { name, x, y } => write!(f, "point {name} = ({x}, {y})"),
            StmtKind::Line { name, from, to } => write!(f, "line {name} = through {from} {to}"),
            StmtKind::Ray { name, from, toward } => {
                write!(f, "ray {name} = from {from} toward {toward}")
            }
            StmtKind::Circle { name, center, through } => {
                write!(f, "circle {name} = center {center} through {through}")
            }
            StmtKind::Construct { name, op } => write!(f, "{name} = {op}"),
            StmtKind::Assert(a) => write!(f, "{a}"),
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)
    }
}

/// One statement per line, in canonical spelling.
impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
