use knotsym::analysis::Catalog;
use knotsym::construct::{rosette, BraidWord};
use knotsym::diagram::trefoil;
use knotsym::invariants::determinant;

const SNAPSHOT: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/catalog_fingerprints.txt");

#[test]
fn fingerprints_match_snapshot() {
    let got = Catalog::builtin().snapshot();
    if std::env::var_os("UPDATE_SNAPSHOT").is_some() {
        std::fs::write(SNAPSHOT, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(SNAPSHOT).expect("snapshot missing; run with UPDATE_SNAPSHOT=1");
    for (g, w) in got.lines().zip(want.lines()) {
        assert_eq!(g, w);
    }
    assert_eq!(got.lines().count(), want.lines().count());
}

fn names(d: &knotsym::Diagram) -> Vec<String> {
    Catalog::builtin()
        .identify(d)
        .unwrap()
        .iter()
        .map(|c| c.to_string())
        .collect()
}

#[test]
fn rosettes_are_identified() {
    assert_eq!(names(&rosette(2).unwrap()), ["4_1 (amphicheiral)"]);
    assert_eq!(names(&rosette(4).unwrap()), ["8_18 (amphicheiral)"]);
    let r5 = rosette(5).unwrap();
    assert_eq!(determinant(&r5).unwrap(), 121);
    assert_eq!(names(&r5), ["10_123 (amphicheiral)"]);
}

#[test]
fn braid_trefoil_is_mirror_of_catalog_entry() {
    let right = "braid:2: 1 1 1".parse::<BraidWord>().unwrap().closure();
    let c = Catalog::builtin();
    let r = c.identify(&right).unwrap();
    let l = c.identify(&trefoil()).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].name, "3_1");
    assert_ne!(r[0].mirror, l[0].mirror);
}
