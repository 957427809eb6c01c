//! Deterministic SVG drawings of executed scripts.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use euclid_kernel::dsl::{ast::Assertion, DynEnv, Script, Shape, StmtKind};
use euclid_kernel::field::Model;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ViewBox {
    Auto,
    /// `x0, y0, x1, y1` in plane coordinates (y up).
    Fixed(f64, f64, f64, f64),
}

impl FromStr for ViewBox {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(ViewBox::Auto);
        }
        let nums: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| format!("bad viewbox `{s}`: {e}"))?;
        match nums[..] {
            [x0, y0, x1, y1] if x0 < x1 && y0 < y1 && nums.iter().all(|v| v.is_finite()) => {
                Ok(ViewBox::Fixed(x0, y0, x1, y1))
            }
            _ => Err(format!("viewbox must be `auto` or x0,y0,x1,y1 with x0<x1, y0<y1; got `{s}`")),
        }
    }
}

/// Warning placed in drawings of infinitesimal-model scripts.
pub const PROJECTION_WARNING: &str =
    "UnrenderableModel: infinitesimal parts of coordinates were dropped for drawing";

fn num(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Segments named in congruence assertions, each once, in script order.
fn segments(script: &Script) -> Vec<(String, String)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for stmt in &script.stmts {
        if let StmtKind::Assert(Assertion::Congruent(s, t)) = &stmt.kind {
            for r in [s, t] {
                let key = if r.a <= r.b {
                    (r.a.clone(), r.b.clone())
                } else {
                    (r.b.clone(), r.a.clone())
                };
                if r.a != r.b && seen.insert(key) {
                    out.push((r.a.clone(), r.b.clone()));
                }
            }
        }
    }
    out
}

fn bounds(shapes: &[(String, Shape)]) -> (f64, f64, f64, f64) {
    let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut add = |x: f64, y: f64| {
        b = (b.0.min(x), b.1.min(y), b.2.max(x), b.3.max(y));
    };
    for (_, s) in shapes {
        match s {
            Shape::Point { x, y } => add(*x, *y),
            Shape::Circle { center, radius } => {
                add(center.0 - radius, center.1 - radius);
                add(center.0 + radius, center.1 + radius);
            }
            Shape::Line { anchor, .. } => add(anchor.0, anchor.1),
            Shape::Ray { base, .. } => add(base.0, base.1),
        }
    }
    if !b.0.is_finite() {
        return (-1.0, -1.0, 1.0, 1.0);
    }
    let pad = ((b.2 - b.0).max(b.3 - b.1) * 0.1).max(0.5);
    (b.0 - pad, b.1 - pad, b.2 + pad, b.3 + pad)
}

/// Part of `a + t d` inside the box, for `t` in `[t_min, inf)`.
fn clip(a: (f64, f64), d: (f64, f64), t_min: f64, bx: (f64, f64, f64, f64)) -> Option<((f64, f64), (f64, f64))> {
    let (mut lo, mut hi) = (t_min, f64::INFINITY);
    for (p, q, min, max) in [(a.0, d.0, bx.0, bx.2), (a.1, d.1, bx.1, bx.3)] {
        if q == 0.0 {
            if p < min || p > max {
                return None;
            }
        } else {
            let (t1, t2) = ((min - p) / q, (max - p) / q);
            lo = lo.max(t1.min(t2));
            hi = hi.min(t1.max(t2));
        }
    }
    (lo < hi).then(|| ((a.0 + lo * d.0, a.1 + lo * d.1), (a.0 + hi * d.0, a.1 + hi * d.1)))
}

/// SVG 1.1 drawing of `env`: circles, lines and rays clipped to the view,
/// segments from congruence assertions, and labeled points. The y axis
/// points up in the plane and down in SVG, so y is negated on output.
pub fn render_svg(script: &Script, env: &DynEnv, view: ViewBox) -> String {
    let shapes = env.shapes();
    let bx = match view {
        ViewBox::Auto => bounds(&shapes),
        ViewBox::Fixed(x0, y0, x1, y1) => (x0, y0, x1, y1),
    };
    let (w, h) = (bx.2 - bx.0, bx.3 - bx.1);
    let unit = w.max(h) / 300.0;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"600\" height=\"{}\">",
        num(bx.0),
        num(-bx.3),
        num(w),
        num(h),
        (600.0 * h / w).round()
    );
    if env.model() == Model::Infinitesimal {
        let _ = writeln!(out, "<!-- warning: {PROJECTION_WARNING} -->");
    }
    let _ = writeln!(
        out,
        "<g fill=\"none\" stroke=\"black\" stroke-width=\"{}\">",
        num(unit)
    );
    for (name, s) in &shapes {
        if let Shape::Circle { center, radius } = s {
            let _ = writeln!(
                out,
                "<circle id=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                escape(name),
                num(center.0),
                num(-center.1),
                num(*radius)
            );
        }
    }
    for (name, s) in &shapes {
        let (class, a, d, t_min) = match s {
            Shape::Line { anchor, dir } => ("line", *anchor, *dir, f64::NEG_INFINITY),
            Shape::Ray { base, dir } => ("ray", *base, *dir, 0.0),
            _ => continue,
        };
        if let Some((p, q)) = clip(a, d, t_min, bx) {
            let _ = writeln!(
                out,
                "<polyline id=\"{}\" class=\"{class}\" stroke=\"gray\" points=\"{},{} {},{}\"/>",
                escape(name),
                num(p.0),
                num(-p.1),
                num(q.0),
                num(-q.1)
            );
        }
    }
    let point = |n: &str| {
        shapes.iter().find_map(|(name, s)| match s {
            Shape::Point { x, y } if name == n => Some((*x, *y)),
            _ => None,
        })
    };
    for (a, b) in segments(script) {
        if let (Some(p), Some(q)) = (point(&a), point(&b)) {
            let _ = writeln!(
                out,
                "<line class=\"segment\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                num(p.0),
                num(-p.1),
                num(q.0),
                num(-q.1)
            );
        }
    }
    out.push_str("</g>\n");
    let r = 2.5 * unit;
    let _ = writeln!(out, "<g fill=\"black\" font-family=\"sans-serif\" font-size=\"{}\">", num(12.0 * unit));
    for (name, s) in &shapes {
        if let Shape::Point { x, y } = s {
            // A dot drawn as two arcs, so that `circle` elements are only
            // the script's circles.
            let _ = writeln!(
                out,
                "<path class=\"point\" d=\"M {} {} a {r} {r} 0 1 0 {} 0 a {r} {r} 0 1 0 {} 0\"/>",
                num(x - r),
                num(-y),
                num(2.0 * r),
                num(-2.0 * r),
                r = num(r)
            );
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\">{}</text>",
                num(x + 1.5 * r),
                num(-y - 1.5 * r),
                escape(name)
            );
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}
