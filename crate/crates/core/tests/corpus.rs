use std::path::PathBuf;

use euclid_kernel::dsl::{parse, run, FailureKind, Script};
use euclid_kernel::field::Model;

fn load(name: &str) -> Script {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name);
    let src = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse(&src).unwrap_or_else(|e| panic!("{name}: {e}"))
}

const TOWER_CORPUS: [&str; 5] = [
    "i1_equilateral.euclid",
    "i2_transport.euclid",
    "midpoint_perp_bisector.euclid",
    "angle_bisect_rhombus.euclid",
    "rhombus_diagonals.euclid",
];

#[test]
fn corpus_passes_in_tower_model() {
    for name in TOWER_CORPUS {
        let (env, failure) = run(&load(name), Model::Tower);
        assert!(failure.is_none(), "{name}: {failure:?}");
        assert!(!env.log().is_empty(), "{name} checks nothing");
        for r in env.log() {
            assert!(r.passed, "{name}: {} failed", r.text);
        }
    }
}

#[test]
fn equilateral_needs_a_root_the_rationals_lack() {
    let (_, failure) = run(&load("i1_equilateral.euclid"), Model::Rational);
    let failure = failure.expect("runtime failure");
    assert_eq!(failure.kind, FailureKind::NotConstructibleInModel(Model::Rational));
    assert_eq!(failure.pos.line, 8);
}

#[test]
fn rational_corpus_members_also_pass_in_rationals() {
    for name in ["angle_bisect_rhombus.euclid", "rhombus_diagonals.euclid"] {
        let (env, failure) = run(&load(name), Model::Rational);
        assert!(failure.is_none(), "{name}: {failure:?}");
        assert!(env.all_passed(), "{name}");
    }
}

#[test]
fn infinitesimal_doubling_never_crosses() {
    let (env, failure) = run(&load("nonarch_doubling.euclid"), Model::Infinitesimal);
    assert!(failure.is_none(), "{failure:?}");
    assert_eq!(env.log().len(), 128);
    assert!(env.all_passed());
}

#[test]
fn archimedean_doubling_crosses_at_once() {
    let (env, failure) = run(&load("arch_doubling.euclid"), Model::Rational);
    assert!(failure.is_none(), "{failure:?}");
    assert_eq!(env.log().len(), 128);
    // Both segments cross at the first doubling and stay across.
    assert!(env.log().iter().all(|r| !r.passed));
}

#[test]
fn corpus_round_trips_through_the_printer() {
    for name in TOWER_CORPUS.iter().chain(&["nonarch_doubling.euclid"]) {
        let s = load(name);
        let again = parse(&s.to_string()).unwrap();
        assert_eq!(s.structure(), again.structure(), "{name}");
    }
}
