import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tilework.geometry import (
    IDENTITY,
    Isometry,
    NumericFailure,
    PatchInputError,
    PiAngle,
    PolygonPatch,
    render_svg,
    solve_livio_pentagon,
    validate_patch,
)

from golden import LIVIO


def square(x, y, s=1):
    return [(x, y), (x + s, y), (x + s, y + s), (x, y + s)]


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=60)


@given(rationals, rationals)
def test_piangle_add_sub_roundtrip(a, b):
    a, b = PiAngle.of(a), PiAngle.of(b)
    assert (a + b) - b == a


@given(st.integers(1, 40), st.integers(3, 30))
def test_piangle_repeated_valence_angle(n, q):
    total = PiAngle(0)
    for _ in range(n):
        total = total + PiAngle(2, q)
    assert total == PiAngle(2 * n, q)


def test_piangle_lowest_terms_and_str():
    a = PiAngle(-4, 6)
    assert (a.numerator, a.denominator) == (-2, 3)
    assert str(a) == "-2/3 π"
    assert PiAngle.parse(str(a)) == a
    assert PiAngle(3, -6).denominator > 0


def test_piangle_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        PiAngle(1, 0)


angles = st.floats(-10, 10, allow_nan=False)
coords = st.floats(-100, 100, allow_nan=False)
isometries = st.builds(Isometry, angles, st.tuples(coords, coords), st.booleans())
points = st.tuples(st.floats(-10, 10), st.floats(-10, 10))


@given(isometries, points)
def test_isometry_inverse(t, p):
    q = (t.inverse() @ t)(p)
    assert q == pytest.approx(p, abs=1e-9)
    q = (t @ t.inverse())(p)
    assert q == pytest.approx(p, abs=1e-9)


@given(isometries, isometries, isometries, points)
def test_isometry_associative(a, b, c, p):
    left = ((a @ b) @ c)(p)
    right = (a @ (b @ c))(p)
    assert left == pytest.approx(right, abs=1e-8)
    assert (a @ b)(p) == pytest.approx(a(b(p)), abs=1e-8)


def test_identity():
    assert IDENTITY((3, 4)) == (3, 4)


def test_squares_sharing_edge_valid():
    assert validate_patch(PolygonPatch([(square(0, 0), "a"), (square(1, 0), "b")])).valid


def test_overlapping_squares():
    v = validate_patch(PolygonPatch([(square(0, 0), "a"), (square(Fraction(1, 2), 0), "b")]))
    assert v.kind == "overlap" and v.indices == (0, 1)
    assert str(v) == "overlap(0,1)"


def test_l_shape_in_square_region_has_gap():
    patch = PolygonPatch([(square(0, 0), "a"), (square(1, 0), "b"), (square(0, 1), "c")])
    assert validate_patch(patch).valid  # alone the L is a fine disk
    v = validate_patch(patch, region=square(0, 0, 2))
    assert v.kind == "gap"
    x, y = v.point
    assert 1 < x < 2 and 1 < y < 2


def test_ring_has_hole():
    cells = [square(x, y) for x in range(3) for y in range(3) if (x, y) != (1, 1)]
    v = validate_patch(PolygonPatch([(c, "r") for c in cells]))
    assert v.kind == "gap"
    assert 1 < v.point[0] < 2 and 1 < v.point[1] < 2


def test_degenerate_polygon_rejected():
    with pytest.raises(PatchInputError):
        validate_patch(PolygonPatch([([(0, 0), (1, 0), (2, 0)], "flat")]))
    with pytest.raises(PatchInputError):
        validate_patch(PolygonPatch([([(0, 0), (1, 0), (1, 0), (0, 1)], "dup")]))


def test_tolerance_must_be_positive():
    with pytest.raises(ValueError):
        validate_patch(PolygonPatch([(square(0, 0), "a")]), 0)


grid_patch = PolygonPatch([(square(x, y), f"{x}{y}") for x in range(3) for y in range(2)])


@given(st.permutations(range(6)), isometries)
@settings(max_examples=50)
def test_validate_symmetric_and_isometry_invariant(perm, iso):
    tiles = [grid_patch.tiles[i] for i in perm]
    assert validate_patch(PolygonPatch(tiles)).valid
    assert validate_patch(PolygonPatch(tiles).transformed(iso), 1e-7).valid
    bad = tiles + [(square(Fraction(1, 2), Fraction(1, 2)), "x")]
    assert validate_patch(PolygonPatch(bad)).kind == "overlap"
    assert validate_patch(PolygonPatch(bad).transformed(iso), 1e-7).kind == "overlap"


def test_livio_relations():
    sol = solve_livio_pentagon()
    a, b, c, d, e = sol.angles
    assert a == math.pi - d
    assert e == 2 * d
    assert b + c == pytest.approx(2 * math.pi - 2 * d, abs=1e-15)
    assert 2 * a + e == pytest.approx(2 * math.pi, abs=1e-15)
    assert sum(sol.angles) == pytest.approx(3 * math.pi, abs=1e-12)
    assert sol.residual < 1e-9
    assert max(sol.angles) > math.pi  # non-convex
    assert sol.angles == pytest.approx(LIVIO, abs=1e-8)
    edges = [math.dist(sol.vertices[i], sol.vertices[(i + 1) % 5]) for i in range(5)]
    assert edges == pytest.approx([1.0] * 5, abs=1e-9)


def test_livio_stable():
    assert solve_livio_pentagon().angles == pytest.approx(solve_livio_pentagon().angles, abs=1e-9)


def test_livio_tolerance_range():
    with pytest.raises(ValueError):
        solve_livio_pentagon(1e-2)
    assert issubclass(NumericFailure, ArithmeticError)


def test_regular_pentagon_fails_relation():
    a = PiAngle(3, 5)
    assert a * 2 + a == PiAngle(9, 5)  # 2A + E with every angle 3/5 pi
    assert a * 2 + a != PiAngle(2)


def test_svg_one_path_per_tile():
    one = render_svg(PolygonPatch([(square(0, 0), "a")]))
    assert one.count("<path") == 1
    four = render_svg(grid_patch.__class__(grid_patch.tiles[:4]))
    assert four.count("<path") == 4
    assert render_svg(grid_patch) == render_svg(grid_patch)
    assert 'fill="#dddddd"' in one
    assert 'fill="#ff0000"' in render_svg(PolygonPatch([(square(0, 0), "a")]), {"a": "#ff0000"})


def test_svg_empty_patch():
    with pytest.raises(ValueError):
        render_svg(PolygonPatch([]))


def test_patch_json_roundtrip():
    assert PolygonPatch.from_json(grid_patch.to_json()).tiles == grid_patch.tiles
