"""Smoke test for the knotsym Python module.

Build and install first:  pip install --no-build-isolation -e crates/py
Run:                      python python/smoke_test.py
"""
import json
import pathlib

import knotsym

ROOT = pathlib.Path(__file__).resolve().parent.parent
TEMPLATES = ROOT / "crates" / "core" / "data" / "templates"


def main():
    trefoil = knotsym.Diagram.from_dt("dt:(4 6 2)")
    assert trefoil.crossing_count == 3 and trefoil.is_knot
    assert trefoil.determinant() == 3 == trefoil.goeritz_determinant()
    assert str(trefoil.alexander()) == "t^-1 - 1 + t"
    assert not trefoil.jones().is_palindromic()
    assert trefoil.validate() == []

    r5, r7 = knotsym.Diagram.rosette(5), knotsym.Diagram.rosette(7)
    assert (r5.determinant(), r7.determinant()) == (121, 841)
    assert knotsym.check_amphicheiral(r7) == (True, True)
    assert knotsym.identify(knotsym.Diagram.rosette(2)) == ["4_1 (amphicheiral)"]
    try:
        knotsym.Diagram.rosette(6)
    except knotsym.KnotsymError as e:
        assert "multi-component rosette" in str(e)
    else:
        raise AssertionError("rosette(6) should fail")

    f = knotsym.LaurentPoly([(0, 2), (1, -4), (2, 3), (3, -4), (4, 2)])
    assert knotsym.poly_sqrt(f * f) == f

    walked = trefoil.random_walk(20, 10, seed=1)
    assert walked.jones() == trefoil.jones()

    k, j = knotsym.symmetric_union(trefoil, [1])
    assert k.determinant() == 9 and knotsym.check_union_det(k, j)

    t = knotsym.QuarterTemplate.load(str(TEMPLATES / "ta.tpl"))
    e = t.expand([-4], [1])
    assert e.diagram.crossing_count == 14
    assert knotsym.certify_spa(e.diagram, e.rho) == []
    assert knotsym.check_amphicheiral(e.diagram) == (True, True)
    assert knotsym.check_union_det(e.diagram, e.partial)

    almost = t.expand([-2], [-1], switch="I,III:c1")
    assert knotsym.certify_spa(almost.diagram, almost.rho) == []
    assert not knotsym.check_union_det(almost.diagram, almost.partial)

    report = json.loads(knotsym.batch(["rosette:5", "template:ta.tpl(0|1)"], base_dir=str(TEMPLATES), jobs=2))
    assert report["summary"]["ok"] == 2, report
    print("python smoke test passed")


if __name__ == "__main__":
    main()
