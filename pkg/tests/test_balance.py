import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tilework import balance as B
from tilework.geometry import PiAngle

from golden import OCTAGON_SQUARE


def test_tile_imbalance_worked_values():
    assert B.tile_imbalance([3] * 8) == PiAngle(-2, 3)
    assert B.tile_imbalance([3] * 4) == PiAngle(2, 3)
    assert B.tile_imbalance([4] * 4) == PiAngle(0)
    assert B.tile_imbalance([3] * 6) == PiAngle(0)


@pytest.mark.parametrize("bad", [[3, 3], [3, 3, 1], []])
def test_tile_imbalance_domain(bad):
    with pytest.raises(ValueError):
        B.tile_imbalance(bad)


def test_classify():
    assert B.classify_vertex_uniform(4, 4) == ("flat", PiAngle(0))
    assert B.classify_vertex_uniform(7, 3) == ("hyperbolic", PiAngle(-1, 3))
    assert B.classify_vertex_uniform(3, 6) == ("flat", PiAngle(0))
    assert B.classify_vertex_uniform(3, 3)[0] == "elliptic"
    with pytest.raises(ValueError):
        B.classify_vertex_uniform(2, 5)


@given(st.integers(3, 40), st.integers(3, 40))
def test_classify_flat_iff(n, q):
    kind, k = B.classify_vertex_uniform(n, q)
    assert (kind == "flat") == ((n - 2) * (q - 2) == 4)
    assert k == PiAngle(Fraction(2 * n, q) - (n - 2))


def one_tile(n, q):
    faces = [list(range(n))]
    return B.MapConfiguration(faces, {v: q for v in range(n)})


def test_single_tiles():
    assert B.configuration_imbalance(one_tile(4, 3)) == PiAngle(2, 3)
    r = B.verify_lemma(one_tile(6, 3))
    assert r.lhs == r.rhs == PiAngle(0) and r.equal and r.bound_ok


def grid(w, h, mode):
    faces = [[(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)] for x in range(w) for y in range(h)]
    vals = None if mode == B.PATCH else {v: 4 for f in faces for v in f}
    return B.MapConfiguration(faces, vals)


def test_square_grid_configurations():
    assert B.configuration_imbalance(grid(2, 2, B.AMBIENT)) == PiAngle(0)
    r = B.verify_lemma(grid(3, 3, B.AMBIENT))
    assert r.lhs == r.rhs == PiAngle(0) and r.equal
    c = grid(3, 3, B.PATCH)
    assert c.valence((1, 1)) == 4
    r = B.verify_lemma(c)
    assert r.equal and r.bound_ok and r.lhs != PiAngle(0)


def test_euler_fixture():
    for mode in (B.AMBIENT, B.PATCH):
        c = B.euler_fixture(mode)
        assert c.counts() == (91, 125, 35)
        assert c.euler() == 1
        assert sorted(set(c.labels)) == ["octagon", "square"]
        assert c.labels.count("octagon") == 14
        r = B.verify_lemma(c)
        assert r.equal and r.bound_ok
    assert B.verify_lemma(B.euler_fixture()).lhs == PiAngle(14, 3)


def test_topology_errors():
    with pytest.raises(B.TopologyError):
        B.MapConfiguration([])
    # two squares touching at a corner only
    with pytest.raises(B.TopologyError):
        B.MapConfiguration([[0, 1, 2, 3], [2, 4, 5, 6]])
    # annulus of eight squares
    ring = [[(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)] for x in range(3) for y in range(3) if (x, y) != (1, 1)]
    with pytest.raises(B.TopologyError):
        B.MapConfiguration(ring)
    # ambient valence smaller than the tiles seen
    with pytest.raises(B.TopologyError):
        B.MapConfiguration(grid(2, 2, B.PATCH).faces, {v: 3 for f in grid(2, 2, B.PATCH).faces for v in f})


def test_json_roundtrip():
    c = B.euler_fixture()
    back = B.MapConfiguration.from_json(c.to_json())
    assert back.counts() == c.counts()
    assert B.verify_lemma(back) == B.verify_lemma(c)


@pytest.mark.parametrize("name", sorted(B.TESSELLATIONS))
def test_lemma_on_random_disks(name):
    rng = random.Random(20240917)
    for _ in range(100):
        c = B.random_configuration(name, rng)
        assert c.euler() == 1
        r = B.verify_lemma(c)
        assert r.equal, (name, r)
        n = len(c.boundary)
        assert -n < (r.lhs - PiAngle(2)).coefficient < n


@given(st.sampled_from(sorted(B.TESSELLATIONS)), st.floats(-4, 4), st.floats(-4, 4), st.floats(0, 5), st.sampled_from([B.AMBIENT, B.PATCH]))
@settings(max_examples=40, deadline=None)
def test_lemma_property(name, x, y, r, mode):
    c = B.disk_configuration(name, r, (x, y), mode)
    rep = B.verify_lemma(c)
    assert c.euler() == 1 and rep.equal and rep.bound_ok


def test_series_matches_independent_counts():
    rows = B.average_imbalance_series("octagon-square", sorted(OCTAGON_SQUARE))
    for r, n, ratio, k in rows:
        octs, squares, coeff = OCTAGON_SQUARE[r]
        assert n == octs + squares
        assert k == PiAngle.of(coeff)
    ratios = [row[2] for row in rows]
    assert all(a > b for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] < 0.05


def test_flat_series():
    for name in ("square", "hexagon"):
        for r, n, ratio, k in B.average_imbalance_series(name, [2, 5, 10]):
            assert k == PiAngle(0) and ratio == 0 and n > 0


def test_radius_budget():
    with pytest.raises(ValueError):
        B.disk_configuration("square", 10**4)
    with pytest.raises(KeyError):
        B.tessellation("penrose")
