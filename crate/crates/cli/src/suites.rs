//! Seeded randomized checks of the axioms and theorems, one suite each.
//!
//! Instances start on a small integer lattice and are perturbed by
//! rationals with bounded denominators (plus multiples of `eps` in the
//! infinitesimal model). Generators only produce inputs that meet each
//! check's preconditions, and in models without general square roots they
//! stick to directions of rational length so that every construction stays
//! inside the model.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use euclid_kernel::angle::{angle_class, angle_sum, compare_angles, copy_angle, dyadic_measure, AngleT};
use euclid_kernel::coords::{
    apply_motion, coordinate_set_probe, coords_independent_check, motion_from_axes, AxisSystem,
    ProbeOutcome, RigidMotion,
};
use euclid_kernel::error::GeomError;
use euclid_kernel::field::{InfinitesimalValue, Model, OrderedField, Rational, TowerValue};
use euclid_kernel::kernel::{
    check_axiom_r1, check_rhombus_theorem, check_rigidity, count_right_angles, directed_side,
    transport_line_bijection, transport_triangle, transport_with_aux, Rhombus, Triangle,
};
use euclid_kernel::plane::{
    between, circle_circle_intersect, collinear, side_of_line, sq_distance, CircleT, LineEq,
    Point, RayT, SegmentT, Vec2,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    AxiomT,
    R1,
    R2,
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Thm5,
    AngleOrder,
    Lotschnitt,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::AxiomT,
        Suite::R1,
        Suite::R2,
        Suite::Thm1,
        Suite::Thm2,
        Suite::Thm3,
        Suite::Thm4,
        Suite::Thm5,
        Suite::AngleOrder,
        Suite::Lotschnitt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::AxiomT => "axiom-t",
            Suite::R1 => "r1",
            Suite::R2 => "r2",
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::Thm3 => "thm3",
            Suite::Thm4 => "thm4",
            Suite::Thm5 => "thm5",
            Suite::AngleOrder => "angle-order",
            Suite::Lotschnitt => "lotschnitt",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == lower)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseFailure {
    pub case: usize,
    /// Seed of the generator for this case alone.
    pub seed: u64,
    pub instance: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub model: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<CaseFailure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Seed for case `index` of `suite`, independent of scheduling.
pub fn case_seed(seed: u64, suite: Suite, model: Model, index: usize) -> u64 {
    let mut z = seed
        ^ (suite as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (model as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9)
        ^ (index as u64).wrapping_mul(0x94D0_49BB_1331_11EB);
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Run `cases` instances of `suite` in `model`, in parallel, merged by case
/// index.
pub fn run_suite(suite: Suite, model: Model, cases: usize, seed: u64) -> SuiteReport {
    let failures: Vec<CaseFailure> = (0..cases)
        .into_par_iter()
        .filter_map(|i| {
            let s = case_seed(seed, suite, model, i);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let outcome = match model {
                Model::Rational => run_case::<Rational>(suite, &mut rng),
                Model::Tower => run_case::<TowerValue>(suite, &mut rng),
                Model::Infinitesimal => run_case::<InfinitesimalValue>(suite, &mut rng),
            };
            outcome.err().map(|(instance, detail)| CaseFailure {
                case: i,
                seed: s,
                instance,
                detail,
            })
        })
        .collect();
    SuiteReport {
        suite: suite.name().to_string(),
        model: model.name().to_string(),
        seed,
        cases,
        failures,
    }
}

type CaseResult = Result<(), (String, String)>;

fn run_case<F: OrderedField>(suite: Suite, rng: &mut ChaCha8Rng) -> CaseResult {
    let mut g = Gen::<F> {
        rng,
        _f: std::marker::PhantomData,
    };
    match suite {
        Suite::AxiomT => axiom_t(&mut g),
        Suite::R1 => axiom_r1(&mut g),
        Suite::R2 => axiom_r2(&mut g),
        Suite::Thm1 => thm1(&mut g),
        Suite::Thm2 => thm2(&mut g),
        Suite::Thm3 => thm3(&mut g),
        Suite::Thm4 => thm4(&mut g),
        Suite::Thm5 => thm5(&mut g),
        Suite::AngleOrder => angle_order(&mut g),
        Suite::Lotschnitt => lotschnitt(&mut g),
    }
}

const ROTATIONS: [(i64, i64, i64); 10] = [
    (1, 0, 1),
    (0, 1, 1),
    (-1, 0, 1),
    (3, 4, 5),
    (-4, 3, 5),
    (4, -3, 5),
    (5, 12, 13),
    (-12, -5, 13),
    (8, 15, 17),
    (7, -24, 25),
];

struct Gen<'a, F> {
    rng: &'a mut ChaCha8Rng,
    _f: std::marker::PhantomData<F>,
}

impl<F: OrderedField> Gen<'_, F> {
    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    fn sign(&mut self) -> i8 {
        if self.rng.gen_bool(0.5) {
            1
        } else {
            -1
        }
    }

    /// Small rational with denominator at most 8, plus an `eps` multiple
    /// when the model has one.
    fn perturbation(&mut self) -> F {
        let d = self.int(1, 8);
        let n = self.int(-d + 1, d - 1);
        let mut v = F::from_ratio(n, d);
        if let Some(e) = F::eps() {
            v = v + e * F::from_i64(self.int(-3, 3));
        }
        v
    }

    fn coord(&mut self) -> F {
        F::from_i64(self.int(-12, 12)) + self.perturbation()
    }

    fn point(&mut self) -> Point<F> {
        Point::new(self.coord(), self.coord())
    }

    fn lattice_dir(&mut self) -> Vec2<F> {
        loop {
            let (x, y) = (self.int(-9, 9), self.int(-9, 9));
            if x != 0 || y != 0 {
                return Vec2::from_i64(x, y);
            }
        }
    }

    fn rotation(&mut self) -> (i64, i64, i64) {
        ROTATIONS[self.rng.gen_range(0..ROTATIONS.len())]
    }

    fn rotate(&mut self, v: &Vec2<F>) -> Vec2<F> {
        let (c, s, h) = self.rotation();
        rotate(v, (c, s, h))
    }

    /// A vector congruent to `v` in a random direction: any direction when
    /// the model has roots, a rational rotation otherwise.
    fn congruent_vec(&mut self, v: &Vec2<F>) -> Vec2<F> {
        if F::MODEL.has_sqrt() {
            let w = self.lattice_dir();
            let k = (v.sq_norm() / w.sq_norm()).try_sqrt().ok().flatten().expect("tower root");
            w.scale(&k)
        } else {
            self.rotate(v)
        }
    }

    /// Nonzero direction; of rational length unless the model has roots.
    fn direction(&mut self) -> Vec2<F> {
        if F::MODEL.has_sqrt() {
            self.lattice_dir()
        } else {
            let k = F::from_i64(self.int(1, 4)) + F::from_ratio(self.int(0, 3), 4);
            let base = Vec2::new(k, F::zero());
            self.rotate(&base)
        }
    }
}

fn rotate<F: OrderedField>(v: &Vec2<F>, (c, s, h): (i64, i64, i64)) -> Vec2<F> {
    let (c, s) = (F::from_ratio(c, h), F::from_ratio(s, h));
    Vec2::new(
        c.clone() * v.x.clone() - s.clone() * v.y.clone(),
        s * v.x.clone() + c * v.y.clone(),
    )
}

macro_rules! ensure {
    ($cond:expr, $inst:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(($inst.clone(), format!($($msg)+)));
        }
    };
}

fn geom<T>(r: Result<T, GeomError>, inst: &str) -> Result<T, (String, String)> {
    r.map_err(|e| (inst.to_string(), e.to_string()))
}

fn non_collinear<F: OrderedField>(g: &mut Gen<'_, F>) -> (Point<F>, Point<F>, Point<F>) {
    loop {
        let (a, b, c) = (g.point(), g.point(), g.point());
        if !collinear(&a, &b, &c) {
            return (a, b, c);
        }
    }
}

/// Triangle ABC and a congruent base A'B' placed elsewhere.
fn triangle_and_base<F: OrderedField>(
    g: &mut Gen<'_, F>,
) -> (Triangle<F>, Point<F>, Point<F>) {
    let (a, b, c) = non_collinear(g);
    let a2 = g.point();
    let b2 = a2.plus(&g.congruent_vec(&b.minus(&a)));
    (Triangle { a, b, c }, a2, b2)
}

fn axiom_t<F: OrderedField>(g: &mut Gen<'_, F>) -> CaseResult {
    let (t, a2, b2) = triangle_and_base(g);
    let inst = format!("ABC = {} {} {}, A'B' = {} {}", t.a, t.b, t.c, a2, b2);
    let base = geom(SegmentT::new(a2.clone(), b2.clone()), &inst)?;
    let mut found = Vec::new();
    for side in [1, -1] {
        let c2 = geom(transport_triangle(&t, &base, side), &inst)?;
        ensure!(sq_distance(&a2, &c2) == sq_distance(&t.a, &t.c), inst, "A'C' differs from AC on side {side}");
        ensure!(sq_distance(&b2, &c2) == sq_distance(&t.b, &t.c), inst, "B'C' differs from BC on side {side}");
        ensure!(directed_side(&a2, &b2, &c2) == side, inst, "copy landed on the wrong side");
        found.push(c2);
    }
    ensure!(found[0] != found[1], inst, "the two copies coincide");
    Ok(())
}

fn axiom_r1<F: OrderedField>(g: &mut Gen<'_, F>) -> CaseResult {
    let right = |g: &mut Gen<'_, F>| {
        let o = g.point();
        let d = g.direction();
        let e = if g.sign() > 0 { d.perp() } else { d.perp().neg() };
        AngleT::new(
            RayT::new(o.clone(), d).expect("nonzero"),
            RayT::new(o, e).expect("nonzero"),
        )
        .expect("right angle")
    };
    let (r1, r2) = (right(g), right(g));
    // Leg lengths are rational so that the marks exist in every model.
    let leg = |g: &mut Gen<'_, F>| {
        let l = F::from_i64(g.int(1, 9)) + F::from_ratio(g.int(0, 4), 5);
        l.square()
    };
    let (l1, l2) = (leg(g), leg(g));
    let inst = format!(
        "right angles at {} and {}, squared legs {l1}, {l2}",
        r1.vertex(),
        r2.vertex()
    );
    let ok = geom(check_axiom_r1(&r1, &r2, (&l1, &l2)), &inst)?;
    ensure!(ok, inst, "hypotenuses differ");
    Ok(())
}

fn axiom_r2<F: OrderedField>(g: &mut Gen<'_, F>) -> CaseResult {
    let (a, b, c) = non_collinear(g);
    let inst = format!("ABC = {a} {b} {c}");
    let t = Triangle::new(a.clone(), b.clone(), c).expect("non-collinear");
    ensure!(count_right_angles(&t) <= 1, inst, "more than one right angle");
    // A right triangle on AB has exactly one.
    let k = F::from_i64(g.int(1, 5)) + g.perturbation().abs();
    let c2 = a.plus(&b.minus(&a).perp().scale(&k));
    let inst = format!("{inst}; right triangle {a} {b} {c2}");
    let t2 = Triangle::new(a, b, c2).expect("non-collinear");
    ensure!(count_right_angles(&t2) == 1, inst, "right triangle counted {} right angles", count_right_angles(&t2));
    Ok(())
}

fn thm1<F: OrderedField>(g: &mut Gen<'_, F>) -> CaseResult {
    let a = g.point();
    let d = g.lattice_dir();
    let b = a.plus(&d);
    let a2 = g.point();
    let b2 = a2.plus(&g.congruent_vec(&d));
    let ks: Vec<F> = (0..3)
        .map(|_| F::from_i64(g.int(-6, 6)) + g.perturbation())
        .collect();
    let pts: Vec<Point<F>> = ks.iter().map(|k| a.plus(&d.scale(k))).collect();
    let inst = format!(
        "AB = {a} {b}, A'B' = {a2} {b2}, X = {} {} {}",
        pts[0], pts[1], pts[2]
    );
    let ab = geom(SegmentT::new(a.clone(), b), &inst)?;
    let ab2 = geom(SegmentT::new(a2, b2), &inst)?;
    let mut imgs = Vec::new();
    for p in &pts {
        imgs.push(geom(transport_line_bijection(&ab, &ab2, p), &inst)?);
    }
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        ensure!(
            sq_distance(&pts[i], &pts[j]) == sq_distance(&imgs[i], &imgs[j]),
            inst,
            "congruence not preserved for points {i}, {j}"
        );
    }
    if pts[0] != pts[1] && pts[1] != pts[2] && pts[0] != pts[2] {
        let before = geom(between(&pts[0], &pts[1], &pts[2]), &inst)?;
        let after = geom(between(&imgs[0], &imgs[1], &imgs[2]), &inst)?;
        ensure!(before == after, inst, "betweenness not preserved");
    }
    Ok(())
}

fn thm2<F: OrderedField>(g: &mut Gen<'_, F>) -> CaseResult {
    // Two congruent isosceles halves ABC and DCB sharing the base BC.
    let a = g.point();
    let u = g.lattice_dir();
    let v = loop {
        let v = g.congruent_vec(&u);
        if !v.cross(&u).is_zero() {
            break v;
        }
    };
    let (b, c) = (a.plus(&u), a.plus(&v));
    let d = b.plus(&v);
    let inst = format!("ABDC = {a} {b} {d} {c}");
    let r = geom(Rhombus::new(a, b, d, c), &inst)?;
    let rep = check_rhombus_theorem(&r);
    ensure!(rep.midpoint_ok, inst, "diagonals do not meet at the common midpoint");
    ensure!(rep.perpendicular_ok, inst, "diagonals are not perpendicular");
    Ok(())
}

fn thm3<F: OrderedField>(g: &mut Gen<'_, F>) -> CaseResult {
    let (c1, c2, p) = non_collinear(g);
    let (k1, k2) = if F::MODEL.has_sqrt() && g.rng.gen_bool(0.5) {
        let r = |g: &mut Gen<'_, F>| F::from_i64(g.int(1, 200));
        (
            CircleT::new(c1.clone(), r(g)).expect("positive"),
            CircleT::new(c2.clone(), r(g)).expect("positive"),
        )
    } else {
        (
            CircleT::through(&c1, &p).expect("distinct"),
            CircleT::through(&c2, &p).expect("distinct"),
        )
    };
    let inst = format!(
        "circles ({}, r^2 = {}), ({}, r^2 = {})",
        c1,
        k1.sq_radius(),
        c2,
        k2.sq_radius()
    );
    let pts = geom(circle_circle_intersect(&k1, &k2), &inst)?.points();
    ensure!(pts.len() <= 2, inst, "{} intersection points", pts.len());
    let centers = geom(LineEq::through(&c1, &c2), &inst)?;
    for q in &pts {
        ensure!(k1.contains(q) && k2.contains(q), inst, "{q} is not on both circles");
    }
    for s in [1, -1] {
        let on_side: Vec<&Point<F>> = pts.iter().filter(|q| side_of_line(q, &centers) == s).collect();
        ensure!(on_side.len() <= 1, inst, "two intersections on side {s}");
        if let Some(q) = on_side.first() {
            let same = geom(check_rigidity(&c1, &c2, q, q), &inst)?;
            ensure!(same, inst, "rigidity check failed");
        }
    }
    Ok(())
}

fn thm4<F: OrderedField>(g: &mut Gen<'_, F>) -> CaseResult {
    let (t, a2, b2) = triangle_and_base(g);
    let verts = [t.a.clone(), t.b.clone(), t.c.clone()];
    let on_side_line = |g: &mut Gen<'_, F>| {
        let e = g.rng.gen_range(0..3);
        let k = F::from_ratio(g.int(-8, 16), 8) + g.perturbation();
        let (p, q) = (&verts[e], &verts[(e + 1) % 3]);
        p.plus(&q.minus(p).scale(&k))
    };
    let (d, e) = (on_side_line(g), on_side_line(g));
    let side = g.sign();
    let inst = format!(
        "ABC = {} {} {}, A'B' = {a2} {b2}, side {side}, D = {d}, E = {e}",
        t.a, t.b, t.c
    );
    let base = geom(SegmentT::new(a2, b2), &inst)?;
    let out = geom(transport_with_aux(&t, &base, side, &d, &e), &inst)?;
    ensure!(out.congruent, inst, "D'E' is not congruent to DE");
    ensure!(out.foot_check, inst, "apex rebuilt from its foot disagrees with the copy");
    Ok(())
}

fn axes<F: OrderedField>(g: &mut Gen<'_, F>) -> (AxisSystem<F>, Vec2<F>, Vec2<F>) {
    let o = g.point();
    let d = g.direction();
    let e = if g.sign() > 0 { d.perp() } else { d.perp().neg() };
    let e = e.scale(&F::from_i64(g.int(1, 3)));
    let ax = AxisSystem::from_dirs(o, &d, &e).expect("perpendicular");
    (ax, d, e)
}

fn thm5<F: OrderedField>(g: &mut Gen<'_, F>) -> CaseResult {
    let (ax1, d1, e1) = axes(g);
    let (ax2, _, _) = axes(g);
    let inst = format!(
        "axes at {} along {}/{} and at {} along {}/{}",
        ax1.origin(),
        Point::new(d1.x.clone(), d1.y.clone()),
        Point::new(e1.x.clone(), e1.y.clone()),
        ax2.origin(),
        Point::new(ax2.first().direction().x, ax2.first().direction().y),
        Point::new(ax2.second().direction().x, ax2.second().direction().y),
    );
    let m = geom(motion_from_axes(&ax1, &ax2), &inst)?;
    ensure!(m.is_orthogonal(), inst, "linear part is not orthogonal");
    ensure!(apply_motion(&m, ax1.origin()) == *ax2.origin(), inst, "origin not mapped to origin");
    // Uniqueness on samples: rescaled axis directions give the same motion,
    // and the motion back composes to the identity.
    let k = F::from_i64(g.int(2, 5));
    let ax1b = geom(
        AxisSystem::from_dirs(ax1.origin().clone(), &d1.scale(&k), &e1),
        &inst,
    )?;
    let m2 = geom(motion_from_axes(&ax1b, &ax2), &inst)?;
    ensure!(m2 == m, inst, "motion depends on the scale of the axis directions");
    let back = geom(motion_from_axes(&ax2, &ax1), &inst)?;
    ensure!(m.then(&back) == RigidMotion::identity(), inst, "motion and its inverse do not compose to the identity");
    for i in 0..10 {
        let (p, q) = (g.point(), g.point());
        let (p2, q2) = (apply_motion(&m, &p), apply_motion(&m, &q));
        ensure!(
            sq_distance(&p, &q) == sq_distance(&p2, &q2),
            inst,
            "pair {i} ({p}, {q}) changed length"
        );
        let same = geom(coords_independent_check(&p, &ax1, &ax2), &inst)?;
        ensure!(same, inst, "coordinates of {p} do not transfer between the systems");
    }
    Ok(())
}

fn random_angle<F: OrderedField>(g: &mut Gen<'_, F>) -> AngleT<F> {
    loop {
        let o = g.point();
        let (u, v) = (g.direction(), g.direction());
        if !u.cross(&v).is_zero() {
            return AngleT::new(
                RayT::new(o.clone(), u).expect("nonzero"),
                RayT::new(o, v).expect("nonzero"),
            )
            .expect("valid angle");
        }
    }
}

fn float_degrees<F: OrderedField>(a: &AngleT<F>) -> Option<f64> {
    let (u, v) = (a.ray1().dir(), a.ray2().dir());
    let dot = u.dot(v).to_f64()?;
    let cross = u.cross(v).abs().to_f64()?;
    Some(cross.atan2(dot).to_degrees())
}

fn angle_order<F: OrderedField>(g: &mut Gen<'_, F>) -> CaseResult {
    let (a, b) = (random_angle(g), random_angle(g));
    let inst = format!(
        "angles at {} and {}, classes {} and {}",
        a.vertex(),
        b.vertex(),
        angle_class(&a),
        angle_class(&b)
    );
    let ord = compare_angles(&a, &b);
    ensure!(compare_angles(&b, &a) == ord.reverse(), inst, "comparison is not antisymmetric");
    if let (Some(x), Some(y)) = (float_degrees(&a), float_degrees(&b)) {
        if (x - y).abs() > 1e-6 {
            let expected = x.partial_cmp(&y).expect("finite");
            ensure!(ord == expected, inst, "order {ord:?} disagrees with {x:.6} vs {y:.6} degrees");
        }
    }
    let (ma, mb) = (dyadic_measure(&a, 10), dyadic_measure(&b, 10));
    if ma.upper < mb.lower {
        ensure!(ord == Ordering::Less, inst, "brackets {ma} < {mb} but order is {ord:?}");
    }
    if let Some(s) = angle_sum(&a, &b) {
        ensure!(s > angle_class(&a) && s > angle_class(&b), inst, "sum does not exceed its parts");
    }
    let target = RayT::new(g.point(), g.direction()).expect("nonzero");
    let side = g.sign();
    let copy = geom(copy_angle(&a, &target, side), &inst)?;
    let copied = geom(AngleT::new(target.clone(), copy.clone()), &inst)?;
    ensure!(angle_class(&copied) == angle_class(&a), inst, "copy is not congruent");
    ensure!(target.side(&copy.base().plus(copy.dir())) == side, inst, "copy on the wrong side");
    Ok(())
}

fn lotschnitt<F: OrderedField>(g: &mut Gen<'_, F>) -> CaseResult {
    let (ax, _, _) = axes(g);
    let pair = (g.coord().into_value(), g.coord().into_value());
    let inst = format!("axes at {}, coordinates ({}, {})", ax.origin(), pair.0, pair.1);
    let items = coordinate_set_probe(&ax, std::slice::from_ref(&pair));
    match &items[0].outcome {
        ProbeOutcome::Realized(_) => Ok(()),
        ProbeOutcome::NotRealized(e) => Err((inst, format!("not realized: {e}"))),
        ProbeOutcome::ModelMismatch(e) => Err((inst, format!("model mismatch: {e}"))),
    }
}
