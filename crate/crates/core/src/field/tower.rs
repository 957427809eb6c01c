//! Constructible numbers as a tower of quadratic extensions of the rationals.
//!
//! A tower is a chain `Q = K0 < K1 < ... < Kn` where each `Ki = K(i-1)(sqrt ri)`
//! for a positive `ri` in `K(i-1)` that is not a square there. An element
//! of `Ki` is stored as `a + b*sqrt(ri)` with `a, b` in `K(i-1)` and `b != 0`;
//! elements with `b = 0` are demoted to the level below, so every value sits
//! at the lowest level of its chain that contains it.
//!
//! Levels are adjoined on demand by [`TowerValue::sqrt`]. Two values living
//! on different chains are combined by absorbing one chain into the other:
//! each foreign radicand is re-expressed over the host chain and either
//! found to be a square there or adjoined as a new level. Level identity is
//! structural (parent plus radicand), so rebuilding the same extension twice
//! yields interchangeable towers.
//!
//! Every level is a genuine extension because the square test at each level
//! is complete: `a + b*sqrt(r)` with `b != 0` is a square in `K(sqrt r)` iff
//! `a^2 - b^2 r = n^2` for some `n` in `K` and one of `(a +- n)/2` is a
//! square in `K`. Hence the order (sign of `a + b*sqrt r` decided from the
//! signs of `a`, `b` and `a^2 - b^2 r`) is exact and total.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::{rational_sqrt, rational_to_f64, Rational};
use super::{FieldError, FieldValue, Model, OrderedField};

#[derive(Clone)]
pub struct TowerValue(Repr);

#[derive(Clone)]
enum Repr {
    Rat(Rational),
    Ext(Arc<Ext>),
}

struct Ext {
    level: Arc<Level>,
    a: TowerValue,
    b: TowerValue,
    fp: u64,
}

struct Level {
    parent: Option<Arc<Level>>,
    radicand: TowerValue,
    depth: usize,
    fp: u64,
}

type LevelRef = Option<Arc<Level>>;

fn hash_of<T: Hash>(t: T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

impl Level {
    fn adjoin(parent: LevelRef, radicand: TowerValue) -> Arc<Level> {
        let depth = level_depth(&parent) + 1;
        let fp = hash_of((parent.as_ref().map(|p| p.fp), radicand.fingerprint(), depth));
        Arc::new(Level {
            parent,
            radicand,
            depth,
            fp,
        })
    }
}

fn level_depth(l: &LevelRef) -> usize {
    l.as_ref().map_or(0, |l| l.depth)
}

fn level_eq(a: &Arc<Level>, b: &Arc<Level>) -> bool {
    Arc::ptr_eq(a, b)
        || (a.fp == b.fp
            && a.depth == b.depth
            && a.radicand.structural_eq(&b.radicand)
            && opt_level_eq(&a.parent, &b.parent))
}

fn opt_level_eq(a: &LevelRef, b: &LevelRef) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(a), Some(b)) => level_eq(a, b),
        _ => false,
    }
}

fn ancestor_at(l: &LevelRef, depth: usize) -> LevelRef {
    let mut cur = l.clone();
    while level_depth(&cur) > depth {
        cur = cur.unwrap().parent.clone();
    }
    cur
}

/// `a` is `b` or lies below it on the same chain.
fn is_below_or_eq(a: &LevelRef, b: &LevelRef) -> bool {
    let da = level_depth(a);
    da <= level_depth(b) && opt_level_eq(&ancestor_at(b, da), a)
}

fn chain_from_root(l: &LevelRef) -> Vec<Arc<Level>> {
    let mut out = Vec::new();
    let mut cur = l.clone();
    while let Some(lv) = cur {
        cur = lv.parent.clone();
        out.push(lv);
    }
    out.reverse();
    out
}

impl TowerValue {
    pub fn from_rational(q: Rational) -> Self {
        TowerValue(Repr::Rat(q))
    }

    fn zero_v() -> Self {
        TowerValue(Repr::Rat(<Rational as Zero>::zero()))
    }

    fn generator(level: Arc<Level>) -> Self {
        let a = TowerValue::zero_v();
        let b = TowerValue::from_rational(<Rational as One>::one());
        let fp = hash_of((level.fp, a.fingerprint(), b.fingerprint()));
        TowerValue(Repr::Ext(Arc::new(Ext { level, a, b, fp })))
    }

    fn level(&self) -> LevelRef {
        match &self.0 {
            Repr::Rat(_) => None,
            Repr::Ext(e) => Some(e.level.clone()),
        }
    }

    /// Number of radical levels above the rationals this value needs.
    pub fn depth(&self) -> usize {
        match &self.0 {
            Repr::Rat(_) => 0,
            Repr::Ext(e) => e.level.depth,
        }
    }

    /// The rational value, if the element is rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.0 {
            Repr::Rat(q) => Some(q),
            Repr::Ext(_) => None,
        }
    }

    fn fingerprint(&self) -> u64 {
        match &self.0 {
            Repr::Rat(q) => hash_of(("q", q.numer(), q.denom())),
            Repr::Ext(e) => e.fp,
        }
    }

    fn structural_eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Rat(x), Repr::Rat(y)) => x == y,
            (Repr::Ext(x), Repr::Ext(y)) => {
                Arc::ptr_eq(x, y)
                    || (x.fp == y.fp
                        && level_eq(&x.level, &y.level)
                        && x.a.structural_eq(&y.a)
                        && x.b.structural_eq(&y.b))
            }
            _ => false,
        }
    }

    fn is_zero_v(&self) -> bool {
        matches!(&self.0, Repr::Rat(q) if Zero::is_zero(q))
    }

    /// Non-negative square root, adjoining a new level when no element of the
    /// value's own tower squares to it.
    pub fn sqrt(&self) -> Result<TowerValue, FieldError> {
        self.sqrt_with_hints(&[])
    }

    fn sqrt_with_hints(&self, hints: &[&TowerValue]) -> Result<TowerValue, FieldError> {
        if sign_c(self) == Ordering::Less {
            return Err(FieldError::NegativeArgument);
        }
        let mut host = self.level();
        let mut x = self.clone();
        for h in hints {
            let hl = h.level();
            if is_below_or_eq(&hl, &host) {
                continue;
            }
            if is_below_or_eq(&host, &hl) {
                host = hl;
                continue;
            }
            if prefer_as_host(&hl, &host) {
                let mut new_host = hl;
                let images = absorb(&mut new_host, &host);
                x = map_into(&x, &new_host, &images);
                host = new_host;
            } else {
                absorb(&mut host, &hl);
            }
        }
        if let Some(root) = try_sqrt_in(&host, &x) {
            return Ok(root);
        }
        Ok(TowerValue::generator(Level::adjoin(host, x)))
    }
}

fn make(level: &Arc<Level>, a: TowerValue, b: TowerValue) -> TowerValue {
    if b.is_zero_v() {
        return a;
    }
    let fp = hash_of((level.fp, a.fingerprint(), b.fingerprint()));
    TowerValue(Repr::Ext(Arc::new(Ext {
        level: level.clone(),
        a,
        b,
        fp,
    })))
}

// Arithmetic on values whose levels lie on one chain.

fn add_c(x: &TowerValue, y: &TowerValue) -> TowerValue {
    match (&x.0, &y.0) {
        (Repr::Rat(p), Repr::Rat(q)) => TowerValue::from_rational(p + q),
        (Repr::Ext(e), _) if e.level.depth > y.depth() => {
            make(&e.level, add_c(&e.a, y), e.b.clone())
        }
        (_, Repr::Ext(f)) if f.level.depth > x.depth() => {
            make(&f.level, add_c(x, &f.a), f.b.clone())
        }
        (Repr::Ext(e), Repr::Ext(f)) => make(&e.level, add_c(&e.a, &f.a), add_c(&e.b, &f.b)),
        _ => unreachable!("depth mismatch"),
    }
}

fn neg_c(x: &TowerValue) -> TowerValue {
    match &x.0 {
        Repr::Rat(q) => TowerValue::from_rational(-q),
        Repr::Ext(e) => make(&e.level, neg_c(&e.a), neg_c(&e.b)),
    }
}

fn sub_c(x: &TowerValue, y: &TowerValue) -> TowerValue {
    add_c(x, &neg_c(y))
}

fn mul_c(x: &TowerValue, y: &TowerValue) -> TowerValue {
    match (&x.0, &y.0) {
        (Repr::Rat(p), Repr::Rat(q)) => TowerValue::from_rational(p * q),
        (Repr::Ext(e), _) if e.level.depth > y.depth() => {
            make(&e.level, mul_c(&e.a, y), mul_c(&e.b, y))
        }
        (_, Repr::Ext(f)) if f.level.depth > x.depth() => {
            make(&f.level, mul_c(x, &f.a), mul_c(x, &f.b))
        }
        (Repr::Ext(e), Repr::Ext(f)) => {
            let r = &e.level.radicand;
            let a = add_c(&mul_c(&e.a, &f.a), &mul_c(&mul_c(&e.b, &f.b), r));
            let b = add_c(&mul_c(&e.a, &f.b), &mul_c(&e.b, &f.a));
            make(&e.level, a, b)
        }
        _ => unreachable!("depth mismatch"),
    }
}

fn inv_c(x: &TowerValue) -> TowerValue {
    match &x.0 {
        Repr::Rat(q) => {
            assert!(!Zero::is_zero(q), "division by zero");
            TowerValue::from_rational(q.recip())
        }
        Repr::Ext(e) => {
            let r = &e.level.radicand;
            let norm = sub_c(&mul_c(&e.a, &e.a), &mul_c(&mul_c(&e.b, &e.b), r));
            let inv = inv_c(&norm);
            make(&e.level, mul_c(&e.a, &inv), neg_c(&mul_c(&e.b, &inv)))
        }
    }
}

fn sign_c(x: &TowerValue) -> Ordering {
    match &x.0 {
        Repr::Rat(q) => q.cmp(&<Rational as Zero>::zero()),
        Repr::Ext(e) => {
            let sa = sign_c(&e.a);
            let sb = sign_c(&e.b);
            if sa == Ordering::Equal || sa == sb {
                return sb;
            }
            // Opposite signs: compare a^2 with b^2 r (never equal, r is no square).
            let a2 = mul_c(&e.a, &e.a);
            let b2r = mul_c(&mul_c(&e.b, &e.b), &e.level.radicand);
            if sign_c(&sub_c(&a2, &b2r)) == Ordering::Greater {
                sa
            } else {
                sb
            }
        }
    }
}

fn decompose(x: &TowerValue, level: &Arc<Level>) -> (TowerValue, TowerValue) {
    match &x.0 {
        Repr::Ext(e) if level_eq(&e.level, level) => (e.a.clone(), e.b.clone()),
        _ => (x.clone(), TowerValue::zero_v()),
    }
}

/// Square root of `x` inside the field of chain `ctx`, if one exists there.
fn try_sqrt_in(ctx: &LevelRef, x: &TowerValue) -> Option<TowerValue> {
    match sign_c(x) {
        Ordering::Less => return None,
        Ordering::Equal => return Some(TowerValue::zero_v()),
        Ordering::Greater => {}
    }
    let Some(level) = ctx else {
        return rational_sqrt(x.as_rational().expect("rational at level 0"))
            .map(TowerValue::from_rational);
    };
    let parent = &level.parent;
    let r = &level.radicand;
    let (a, b) = decompose(x, level);
    if b.is_zero_v() {
        if let Some(s) = try_sqrt_in(parent, &a) {
            return Some(s);
        }
        let t = try_sqrt_in(parent, &mul_c(&a, &inv_c(r)))?;
        return Some(make(level, TowerValue::zero_v(), t));
    }
    let norm = sub_c(&mul_c(&a, &a), &mul_c(&mul_c(&b, &b), r));
    let n = try_sqrt_in(parent, &norm)?;
    let half = TowerValue::from_rational(Rational::new(1.into(), 2.into()));
    for cand in [add_c(&a, &n), sub_c(&a, &n)] {
        let cand = mul_c(&cand, &half);
        if sign_c(&cand) != Ordering::Greater {
            continue;
        }
        if let Some(u) = try_sqrt_in(parent, &cand) {
            let v = mul_c(&b, &inv_c(&add_c(&u, &u)));
            let s = make(level, u, v);
            return Some(if sign_c(&s) == Ordering::Less {
                neg_c(&s)
            } else {
                s
            });
        }
    }
    None
}

/// Deterministic choice of which chain hosts a join, so that joining the
/// same two chains in either order builds the same tower.
fn prefer_as_host(a: &LevelRef, b: &LevelRef) -> bool {
    let (da, db) = (level_depth(a), level_depth(b));
    if da != db {
        return da > db;
    }
    a.as_ref().map(|l| l.fp) >= b.as_ref().map(|l| l.fp)
}

/// Extend `host` until it contains the field of chain `other`. Returns the
/// image in the host of each generator of `other` not already on the host.
fn absorb(host: &mut LevelRef, other: &LevelRef) -> Vec<(Arc<Level>, TowerValue)> {
    let mut images: Vec<(Arc<Level>, TowerValue)> = Vec::new();
    for lv in chain_from_root(other) {
        if is_below_or_eq(&Some(lv.clone()), host) {
            continue;
        }
        let radicand = map_into(&lv.radicand, host, &images);
        let image = match try_sqrt_in(host, &radicand) {
            Some(root) => root,
            None => {
                let new_level = Level::adjoin(host.clone(), radicand);
                *host = Some(new_level.clone());
                TowerValue::generator(new_level)
            }
        };
        images.push((lv, image));
    }
    images
}

fn map_into(x: &TowerValue, host: &LevelRef, images: &[(Arc<Level>, TowerValue)]) -> TowerValue {
    match &x.0 {
        Repr::Rat(_) => x.clone(),
        Repr::Ext(e) => {
            if is_below_or_eq(&Some(e.level.clone()), host) {
                return x.clone();
            }
            let image = images
                .iter()
                .find(|(l, _)| level_eq(l, &e.level))
                .map(|(_, v)| v)
                .expect("level absorbed before use");
            let a = map_into(&e.a, host, images);
            let b = map_into(&e.b, host, images);
            add_c(&a, &mul_c(&b, image))
        }
    }
}

/// Bring two values onto a common chain.
fn unify(x: &TowerValue, y: &TowerValue) -> (TowerValue, TowerValue) {
    let (lx, ly) = (x.level(), y.level());
    if is_below_or_eq(&lx, &ly) || is_below_or_eq(&ly, &lx) {
        return (x.clone(), y.clone());
    }
    if prefer_as_host(&lx, &ly) {
        let mut host = lx;
        let images = absorb(&mut host, &ly);
        (x.clone(), map_into(y, &host, &images))
    } else {
        let mut host = ly;
        let images = absorb(&mut host, &lx);
        (map_into(x, &host, &images), y.clone())
    }
}

impl Add for TowerValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (x, y) = unify(&self, &rhs);
        add_c(&x, &y)
    }
}

impl Sub for TowerValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let (x, y) = unify(&self, &rhs);
        sub_c(&x, &y)
    }
}

impl Mul for TowerValue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (x, y) = unify(&self, &rhs);
        mul_c(&x, &y)
    }
}

impl Div for TowerValue {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let (x, y) = unify(&self, &rhs);
        mul_c(&x, &inv_c(&y))
    }
}

impl Neg for TowerValue {
    type Output = Self;
    fn neg(self) -> Self {
        neg_c(&self)
    }
}

impl PartialEq for TowerValue {
    fn eq(&self, other: &Self) -> bool {
        self.structural_eq(other) || self.cmp(other) == Ordering::Equal
    }
}

impl Eq for TowerValue {}

impl Ord for TowerValue {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Repr::Rat(p), Repr::Rat(q)) = (&self.0, &other.0) {
            return p.cmp(q);
        }
        sign_c(&(self.clone() - other.clone()))
    }
}

impl PartialOrd for TowerValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TowerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rat(q) => write!(f, "{q}"),
            Repr::Ext(e) => {
                if e.a.is_zero_v() {
                    write!(f, "({}*sqrt({}))", e.b, e.level.radicand)
                } else {
                    write!(f, "({} + {}*sqrt({}))", e.a, e.b, e.level.radicand)
                }
            }
        }
    }
}

impl fmt::Debug for TowerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TowerValue({self})")
    }
}

fn approx(x: &TowerValue) -> f64 {
    match &x.0 {
        Repr::Rat(q) => rational_to_f64(q),
        Repr::Ext(e) => approx(&e.a) + approx(&e.b) * approx(&e.level.radicand).sqrt(),
    }
}

impl OrderedField for TowerValue {
    const MODEL: Model = Model::Tower;

    fn from_rational(q: Rational) -> Self {
        TowerValue::from_rational(q)
    }

    fn sign(&self) -> Ordering {
        sign_c(self)
    }

    fn try_sqrt(&self) -> Result<Option<Self>, FieldError> {
        self.sqrt().map(Some)
    }

    fn try_sqrt_near(&self, hints: &[&Self]) -> Result<Option<Self>, FieldError> {
        self.sqrt_with_hints(hints).map(Some)
    }

    fn valuation(&self) -> Option<i64> {
        if self.is_zero_v() {
            None
        } else {
            Some(0)
        }
    }

    fn to_f64(&self) -> Option<f64> {
        Some(approx(self))
    }

    fn into_value(self) -> FieldValue {
        FieldValue::Tower(self)
    }

    fn from_value(value: &FieldValue) -> Result<Self, FieldError> {
        match value {
            FieldValue::Tower(v) => Ok(v.clone()),
            other => Err(FieldError::ModelMismatch {
                left: other.model(),
                right: Model::Tower,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: i64) -> TowerValue {
        TowerValue::from_i64(n)
    }

    fn tq(n: i64, d: i64) -> TowerValue {
        TowerValue::from_ratio(n, d)
    }

    #[test]
    fn sqrt_two_squares_back() {
        let s = t(2).sqrt().unwrap();
        assert_eq!(s.clone() * s.clone(), t(2));
        assert_eq!(s.depth(), 1);
        assert!(s < tq(3, 2));
        assert!(s > tq(7, 5));
    }

    #[test]
    fn perfect_squares_do_not_grow_the_tower() {
        assert_eq!(t(4).sqrt().unwrap(), t(2));
        assert_eq!(t(4).sqrt().unwrap().depth(), 0);
        let s2 = t(2).sqrt().unwrap();
        // (1 + sqrt 2)^2 = 3 + 2 sqrt 2
        let sq = t(3) + t(2) * s2.clone();
        let root = sq.sqrt().unwrap();
        assert_eq!(root.depth(), 1);
        assert_eq!(root, t(1) + s2.clone());
        // 8 = (2 sqrt 2)^2 inside Q(sqrt 2)
        let eight = s2.clone() * s2.clone() * t(4);
        assert_eq!(eight.sqrt_with_hints(&[&s2]).unwrap().depth(), 1);
    }

    #[test]
    fn independent_radicals_join() {
        let s2 = t(2).sqrt().unwrap();
        let s3 = t(3).sqrt().unwrap();
        let s6 = t(6).sqrt().unwrap();
        let prod = s2.clone() * s3.clone();
        assert_eq!(prod, s6);
        // (sqrt2 + sqrt3)^2 = 5 + 2 sqrt 6
        let sum = s2 + s3;
        assert_eq!(sum.clone() * sum, t(5) + t(2) * s6);
    }

    #[test]
    fn nested_radicals() {
        // sqrt(3 + sqrt 3) * sqrt(3 - sqrt 3) = sqrt 6
        let s3 = t(3).sqrt().unwrap();
        let a = (t(3) + s3.clone()).sqrt().unwrap();
        let b = (t(3) - s3).sqrt().unwrap();
        assert_eq!(a * b, t(6).sqrt().unwrap());
    }

    #[test]
    fn division_and_sign() {
        let s5 = t(5).sqrt().unwrap();
        let x = (t(1) + s5.clone()) / (t(3) - s5.clone());
        assert_eq!(x * (t(3) - s5.clone()), t(1) + s5.clone());
        assert_eq!((t(2) - s5.clone()).sign(), Ordering::Less);
        assert_eq!((s5 - t(2)).sign(), Ordering::Greater);
    }

    #[test]
    fn negative_sqrt_is_an_error() {
        assert_eq!(t(-1).sqrt().unwrap_err(), FieldError::NegativeArgument);
    }

    #[test]
    fn display_is_parenthesized() {
        let s2 = t(2).sqrt().unwrap();
        assert_eq!((t(1) + s2).to_string(), "(1 + 1*sqrt(2))");
    }
}
