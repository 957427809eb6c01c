use euclid_kernel::dsl::{parse, run};
use euclid_kernel::field::Model;
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = String> {
    (-20i64..20, 1i64..9, 0usize..3).prop_map(|(n, d, k)| {
        let c = if d == 1 { n.to_string() } else { format!("{n}/{d}") };
        match k {
            0 => c,
            1 => format!("{c}*eps"),
            _ => format!("{c}*eps^{k}"),
        }
    })
}

fn coordinate() -> impl Strategy<Value = String> {
    prop::collection::vec(coeff(), 1..3).prop_map(|terms| terms.join(" + ").replace("+ -", "- "))
}

/// A well-scoped script over points P0..Pn with lines, circles and checks.
fn script() -> impl Strategy<Value = String> {
    let points = prop::collection::vec((coordinate(), coordinate()), 3..6);
    let extra = prop::collection::vec((0u8..6, 0usize..6, 0usize..6, 0usize..6, prop::bool::ANY), 0..8);
    (points, extra).prop_map(|(points, extra)| {
        let n = points.len();
        let mut out: Vec<String> = points
            .iter()
            .enumerate()
            .map(|(i, (x, y))| format!("point P{i} = ({x}, {y})"))
            .collect();
        out.push("line base = through P0 P1".into());
        out.push("circle k0 = center P0 through P1".into());
        for (j, (op, a, b, c, s)) in extra.into_iter().enumerate() {
            let (a, b, c) = (a % n, b % n, c % n);
            let sign = if s { "+1" } else { "-1" };
            out.push(match op {
                0 => format!("line l{j} = through P{a} P{b}"),
                1 => format!("circle c{j} = center P{a} through P{b}"),
                2 => format!("X{j} = intersect k0 base side {sign} of base"),
                3 => format!("assert congruent P{a} P{b} P{b} P{c}"),
                4 => format!("assert same_side P{a} P{b} of base   # trailing comment"),
                _ => format!("r{j} = erect P{a} on base side {sign}\n\n# a comment line"),
            });
        }
        out.join("\n")
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_structurally_identity(src in script()) {
        let s = parse(&src).unwrap();
        let printed = s.to_string();
        let again = parse(&printed).unwrap();
        prop_assert_eq!(s.structure(), again.structure());
        // Printing is canonical: a second round changes nothing.
        prop_assert_eq!(again.to_string(), printed);
    }

    #[test]
    fn parser_never_panics(src in "[ -~\n]{0,80}") {
        if let Err(e) = parse(&src) {
            prop_assert!(e.line >= 1 && e.column >= 1);
            prop_assert!(e.line <= src.lines().count().max(1) + 1);
        }
    }

    #[test]
    fn execution_is_deterministic(src in script()) {
        let s = parse(&src).unwrap();
        prop_assert_eq!(run(&s, Model::Infinitesimal), run(&s, Model::Infinitesimal));
    }
}
