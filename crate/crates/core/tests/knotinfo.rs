use std::collections::HashMap;

use knotsym::invariants::{
    alexander, bracket_bruteforce, bracket_contract, goeritz, jones, normalize_alexander,
};
use knotsym::{parse_dt, Diagram, LaurentPoly};

struct Expected {
    det: u64,
    alexander: LaurentPoly,
    jones: LaurentPoly,
}

fn oracle() -> HashMap<String, Expected> {
    let text = include_str!("data/knotinfo_oracle.txt");
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split('|').map(str::trim).collect();
            let e = Expected {
                det: f[1].parse().unwrap(),
                alexander: f[2].parse().unwrap(),
                jones: f[3].parse().unwrap(),
            };
            (f[0].to_string(), e)
        })
        .collect()
}

fn catalog() -> Vec<(String, Diagram)> {
    include_str!("../data/catalog.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let (name, code) = l.split_once(' ').unwrap();
            (name.to_string(), parse_dt(code).unwrap())
        })
        .collect()
}

#[test]
fn catalog_matches_knotinfo() {
    let expected = oracle();
    let cat = catalog();
    assert_eq!(cat.len(), expected.len());
    for (name, d) in &cat {
        let e = &expected[name];
        assert!(d.validate().is_valid(), "{name}");
        assert!(d.is_knot(), "{name}");
        let alex = alexander(d).unwrap();
        assert_eq!(
            alex.delta,
            normalize_alexander(&e.alexander).unwrap(),
            "{name} alexander"
        );
        assert_eq!(alex.determinant(), e.det, "{name} det");
        assert_eq!(goeritz(d).unwrap().abs_determinant(), e.det, "{name} goeritz");
        // DT codes fix a knot only up to mirror image.
        let v = jones(d).unwrap().jones_in_t();
        assert!(v == e.jones || v.invert_variable() == e.jones, "{name} jones {v}");
    }
}

#[test]
fn engines_agree_on_catalog() {
    for (name, d) in catalog() {
        assert_eq!(bracket_contract(&d), bracket_bruteforce(&d).unwrap(), "{name}");
    }
}
