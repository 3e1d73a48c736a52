use knotsym::analysis::{certify_spa, check_amphicheiral_necessary, check_union_det, CertificateFailure};
use knotsym::construct::{expand_almost, expand_template, Expansion, QuarterTemplate, Switch, TwistSpec};
use knotsym::invariants::{alexander, determinant};
use knotsym::{Diagram, Error};

const NAMES: [&str; 4] = ["ta", "tb", "tc", "td"];

fn load(name: &str) -> QuarterTemplate {
    QuarterTemplate::load(format!(
        "{}/data/templates/{name}.tpl",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap()
}

fn grid(slots: usize, values: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..slots {
        out = out
            .into_iter()
            .flat_map(|v| {
                values.iter().map(move |&n| {
                    let mut w = v.clone();
                    w.push(n);
                    w
                })
            })
            .collect();
    }
    out
}

fn knots(t: &QuarterTemplate, values: &[i64], max: usize) -> Vec<(TwistSpec, Expansion)> {
    let mut out = vec![];
    for x in grid(t.x_slots(), values) {
        for y in grid(t.y_slots(), values) {
            let s = TwistSpec::new(x.clone(), y);
            match expand_template(t, &s) {
                Ok(e) if e.crossing_count() <= max => out.push((s, e)),
                Ok(_) | Err(Error::NotAKnot { .. }) => {}
                Err(e) => panic!("{} {s}: {e}", t.name),
            }
        }
    }
    out
}

#[test]
fn shipped_templates_roundtrip() {
    for name in NAMES {
        let t = load(name);
        t.check().unwrap();
        let again: QuarterTemplate = t.to_string().parse().unwrap();
        assert_eq!(again.to_string(), t.to_string());
    }
}

#[test]
fn expansions_pass_every_check() {
    let mut total = 0;
    for name in NAMES {
        let t = load(name);
        for (s, e) in knots(&t, &[-2, -1, 0, 1, 2], 18) {
            let ctx = format!("{name}{s}");
            assert!(e.diagram.validate().is_valid(), "{ctx}");
            assert_eq!(
                e.crossing_count(),
                4 * t.crossings.len()
                    + 2 * s
                        .x_twists
                        .iter()
                        .chain(&s.y_twists)
                        .map(|n| n.unsigned_abs() as usize)
                        .sum::<usize>(),
                "{ctx}"
            );
            assert!(certify_spa(&e.diagram, &e.rho).is_ok(), "{ctx}");
            let r = check_amphicheiral_necessary(&e.diagram).unwrap();
            assert!(r.jones_palindromic && r.alexander_square(), "{ctx}");
            assert!(check_union_det(&e.diagram, &e.partial).unwrap(), "{ctx}");
            total += 1;
        }
    }
    assert!(total >= 100, "{total}");
}

#[test]
fn even_twists_square_the_partial_alexander() {
    for name in NAMES {
        let t = load(name);
        for (s, e) in knots(&t, &[-2, 0, 2], 20) {
            let k = alexander(&e.diagram).unwrap().delta;
            let j = alexander(&e.partial).unwrap().delta;
            assert_eq!(k, &j * &j, "{name}{s}");
        }
    }
}

#[test]
fn fourteen_crossing_example() {
    let t = load("ta");
    assert_eq!(t.crossings.len(), 1);
    let e = expand_template(&t, &"(-4|1)".parse().unwrap()).unwrap();
    assert_eq!(e.crossing_count(), 14);
    assert_eq!(determinant(&e.diagram).unwrap(), 49);
    assert_eq!(determinant(&e.partial).unwrap(), 7);
}

#[test]
fn almost_template_keeps_symmetry_but_breaks_det_law() {
    let t = load("ta");
    let s: TwistSpec = "(-2|-1)"
        .parse::<TwistSpec>()
        .unwrap()
        .with_switch("I,III:c1".parse().unwrap());
    let e = expand_almost(&t, &s).unwrap();
    let n = e.crossing_count();
    assert!((0..n).all(|i| e.rho[e.rho[i]] == i && e.rho[i] != i));
    assert!(certify_spa(&e.diagram, &e.rho).is_ok());
    let r = check_amphicheiral_necessary(&e.diagram).unwrap();
    assert!(r.jones_palindromic && r.alexander_square());
    assert!(!check_union_det(&e.diagram, &e.partial).unwrap());
}

#[test]
fn almost_template_needs_exactly_one_switch() {
    let t = load("tb");
    let s = TwistSpec::new(vec![1], vec![1]);
    assert!(expand_almost(&t, &s).is_err());
    let sw: Switch = "I,III:c1".parse().unwrap();
    assert!(expand_template(&t, &s.clone().with_switch(sw.clone())).is_err());
    let two = s.with_switch(sw).with_switch("II,IV:c2".parse().unwrap());
    assert!(expand_almost(&t, &two).is_err());
}

#[test]
fn lone_switch_is_rejected_by_certificate() {
    for name in NAMES {
        let t = load(name);
        for (s, e) in knots(&t, &[-1, 1], 18) {
            for c in 0..e.crossing_count() {
                let mut xs = e.diagram.crossings().to_vec();
                xs[c] = xs[c].switched();
                let d = Diagram::new(xs);
                let errs = certify_spa(&d, &e.rho).expect_err(&format!("{name}{s} crossing {c}"));
                assert!(
                    errs.iter()
                        .any(|f| matches!(f, CertificateFailure::SignNotFlipped { .. })),
                    "{errs:?}"
                );
            }
        }
    }
}
