import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tilework import polyform as P
from tilework.polyform import FLAT, HEX, IN, OUT, decorate

HEXAGON = decorate("hex", [(0, 0)])
DOMINO = decorate("square", [(0, 0), (1, 0)])
TROMINO = decorate("square", [(0, 0), (1, 0), (0, 1)])


def wrap_of(dom):
    return P._wrapper(dom.vectors)


def check_domain(tile, dom):
    (a, _), (_, d) = dom.vectors
    assert dom.tiles * len(tile.cells) == a * d
    assert P.validate_placements(tile, dom.placements, wrap_of(dom))


def check_corona(tile, witness, k):
    """Independent check that ``witness`` holds ``k`` complete rings."""
    assert P.validate_placements(tile, [p for p, _ in witness])
    rings = {}
    for p, ring in witness:
        rings.setdefault(ring, set()).update(p.shape(tile).cells)
    assert sorted(rings) == list(range(k + 1))
    inner = set(rings[0])
    for j in range(1, k + 1):
        outer = inner | rings[j]
        for x, y in inner:
            for dx, dy in tile.lat.vertex_nbrs:
                assert (x + dx, y + dy) in outer
        inner = outer


def test_polyform_validation():
    with pytest.raises(ValueError):
        decorate("square", [(0, 0), (2, 0)])
    with pytest.raises(ValueError):
        decorate("tri", [(0, 0)])
    with pytest.raises(ValueError):
        decorate("square", [(0, 0), (1, 0)], {((0, 0), 0): IN})  # internal edge
    assert decorate(HEX, [(0, 0)]).lattice == "hex"


def test_census():
    assert P.edge_census(HEXAGON) == (0, 0, 6)
    mann = P.mann_census_fixture()
    assert P.edge_census(mann) == (7, 4, 1)
    v = P.census_nontiler(mann)
    assert v.outcome == "no_tiling_proved" and v.deficit == 3
    assert P.census_nontiler(HEXAGON).outcome == "inconclusive"
    balanced = decorate("hex", [(0, 0)], {((0, 0), 0): IN, ((0, 0), 3): OUT})
    assert P.census_nontiler(balanced).outcome == "inconclusive"


def test_census_orientation_invariant():
    mann = P.mann_census_fixture()
    for rot, refl, shape in mann.orientations():
        assert P.edge_census(shape) == (7, 4, 1)


def test_corona_examples():
    assert P.corona_search(HEXAGON, 2).level == "periodic"
    res = P.corona_search(HEXAGON, 2, check_periodic=False)
    assert res.level == 2 and not res.limit_hit
    check_corona(HEXAGON, res.witnesses[-1], 2)
    spiky = decorate("hex", [(0, 0)], {((0, 0), d): IN for d in range(6)})
    assert P.corona_search(spiky, 1).level == 0
    rows = decorate("hex", [(0, 0)], {((0, 0), 0): IN, ((0, 0), 3): OUT})
    res = P.corona_search(rows, 2)
    assert res.level == "periodic" and res.domain.tiles == 1


def test_corona_monotone():
    for tile in (HEXAGON, TROMINO, DOMINO):
        res = P.corona_search(tile, 2, check_periodic=False)
        assert res.level == 2
        for k in range(1, res.level + 1):
            check_corona(tile, res.witnesses[k - 1], k)
            # the inner rings of a level-k witness are a level-(k-1) witness
            check_corona(tile, [(p, r) for p, r in res.witnesses[k - 1] if r < k], k - 1)


def test_mann_fixture_has_no_corona():
    res = P.corona_search(P.mann_census_fixture(), 2)
    assert res.level == 0 and not res.limit_hit


def test_domain_examples():
    d = P.fundamental_domain_search(DOMINO, 4)
    assert d.tiles == 1 and d.orbit_count == 1
    check_domain(DOMINO, d)
    d = P.fundamental_domain_search(HEXAGON)
    assert d.tiles == 1
    check_domain(HEXAGON, d)
    d = P.fundamental_domain_search(TROMINO, 6, tiles=2, rectangular=True)
    assert d.tiles == 2 and d.vectors == ((2, 0), (0, 3))
    check_domain(TROMINO, d)
    check_domain(TROMINO, P.fundamental_domain_search(TROMINO, 6))


def test_domain_area_must_fit_tile():
    with pytest.raises(ValueError):
        P.fundamental_domain_search(TROMINO, 2)


def test_json_roundtrip():
    t = P.mann_census_fixture()
    assert P.DecoratedPolyform.from_json(t.to_json()) == t


def test_orientation_counts():
    assert len(HEXAGON.orientations()) == 1
    assert len(DOMINO.orientations()) == 2
    assert len(TROMINO.orientations()) == 4


def test_to_patch():
    d = P.fundamental_domain_search(TROMINO, 6, tiles=2, rectangular=True)
    patch = P.to_patch(TROMINO, d.placements)
    assert len(patch) == 6


@st.composite
def decorated(draw):
    lattice = draw(st.sampled_from(["square", "hex"]))
    lat = P.LATTICES[lattice]
    cells = {(0, 0)}
    for _ in range(draw(st.integers(0, 2))):
        c = draw(st.sampled_from(sorted(cells)))
        cells.add(lat.step(c, draw(st.integers(0, lat.n - 1))))
    bare = decorate(lattice, cells)
    edges = bare.boundary_edges()
    decs = draw(st.lists(st.sampled_from([IN, OUT, FLAT]), min_size=len(edges), max_size=len(edges)))
    return decorate(lattice, cells, dict(zip(edges, decs)))


@given(decorated())
@settings(max_examples=60, deadline=None)
def test_census_and_domain_exclusive(tile):
    proved = P.census_nontiler(tile).outcome == "no_tiling_proved"
    dom = P.fundamental_domain_search(tile, 6, budget=10**5)
    assert not (proved and dom is not None)
    if dom is not None:
        check_domain(tile, dom)
        i, o, _ = P.edge_census(tile)
        assert i == o


@given(decorated())
@settings(max_examples=40, deadline=None)
def test_census_invariant_under_isometry(tile):
    c = P.edge_census(tile)
    for _, _, shape in tile.orientations():
        assert P.edge_census(shape.translated(3, -2)) == c
