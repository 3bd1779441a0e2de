"""Smoke test for the spinecell Python bindings.

Build first: pip install --no-build-isolation -e crates/py
Run with: python python/smoke_test.py  (or pytest python/)
"""

import spinecell

SPHERE = [(1, []), (0, []), (0, []), (1, [])]


def test_census_spheres_are_recognized():
    for kind in ("boundary4simplex", "minimal-s3"):
        t = spinecell.Triangulation.census(kind)
        assert t.is_closed_manifold()
        assert t.homology() == SPHERE
        out = spinecell.recognize(t)
        assert out.verdict == "SPHERE", out.line
        assert out.exit_code == 0
        end = spinecell.Spine.replay(t, out.trace)
        assert end.is_point()


def test_lens_space_is_refused():
    out = spinecell.recognize(spinecell.Triangulation.census("lens:3,1"))
    assert out.verdict == "NOT_SIMPLY_CONNECTED"
    assert out.detail == "H1=Z/3"
    assert out.exit_code == 2


def test_star_spine_collapses():
    t = spinecell.Triangulation.census("boundary4simplex")
    s = spinecell.Spine.build(t, 0, "star")
    assert s.counts() == (6, 10, 5)
    assert s.chi == 1
    assert s.homology() == [(1, []), (0, []), (0, []), (0, [])]
    end, point = s.collapse()
    assert point and end.is_point() and end.check_invariants()


def test_round_trip_and_scramble():
    t = spinecell.Triangulation.census("boundary4simplex")
    u = t.scramble(50, 7)
    assert spinecell.Triangulation.parse(u.serialize()).serialize() == u.serialize()
    assert u.homology() == SPHERE
    assert spinecell.recognize(u).line == spinecell.recognize(u).line


def test_oracles():
    assert spinecell.smith_normal_form([[2, 4], [6, 8]]) == ([2, 4], 2)
    hollow = [[0], [1], [2], [0, 1], [1, 2], [0, 2]]
    assert spinecell.simplicial_homology(hollow)[:2] == [(1, []), (1, [])]


def test_errors_are_value_errors():
    try:
        spinecell.Triangulation.parse("tetrahedra banana\n")
    except ValueError as e:
        assert "syntax" in str(e)
    else:
        raise AssertionError("parse accepted garbage")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"ok {name}")
