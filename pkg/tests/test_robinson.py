from collections import Counter
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tilework import robinson as R
from tilework.wang import GridPlacement, is_valid, iter_rectangle

elbows = st.sampled_from(sorted(R.ELBOWS))


def test_tile_universe():
    tiles = R.universe()
    assert len(tiles) == R.ORIENTED_COUNT == 32
    assert len({t.signature for t in tiles}) == len(tiles)
    assert {t.base for t in tiles} == set(R.BASE_TILES)
    assert [b for b in R.BASE_TILES if R.RobinsonTile(b, 0, False).cornered] == ["cross_cornered"]
    for t in tiles:
        contacts = Counter(e.contact for e in t.edges.values())
        if t.kind == "cross":
            assert contacts == {"bump": 4}
            assert t.elbow in R.ELBOWS
        else:
            assert contacts == {"bump": 1, "nick": 3}


def test_single_cell_valid():
    for t in R.universe():
        assert R.validate(R.RobinsonPatch(1, 1, {(0, 0): t})) == (True, None)


def test_validate_needs_all_cells():
    with pytest.raises(ValueError):
        R.validate(R.RobinsonPatch(2, 1, {(0, 0): R.universe()[0]}))


def test_block_one():
    b = R.generate_block(1, ["NE"])
    assert (b.width, b.height) == (3, 3)
    assert R.validate(b)[0]
    assert {c for c, t in b.cells.items() if t.cornered} == {(0, 0), (2, 0), (0, 2), (2, 2)}
    center = b.cells[(1, 1)]
    assert center.kind == "cross" and not center.cornered and center.elbow == "NE"


def test_rotated_center_breaks_block():
    b = R.generate_block(1, ["NE"])
    c = b.cells[(1, 1)]
    cells = dict(b.cells)
    cells[(1, 1)] = R.RobinsonTile(c.base, (c.rotation + 1) % 4, c.reflected)
    ok, v = R.validate(R.RobinsonPatch(3, 3, cells))
    assert not ok
    assert (1, 1) in (v.cell, v.other)
    assert v.component in ("contact", "rail")


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_blocks_valid_with_corners_on_even_cells(k):
    b = R.generate_block(k, ["SW", "NE", "NW", "SE"][:k])
    assert b.width == b.height == 2 ** (k + 1) - 1
    assert R.validate(b)[0]
    for (c, r), t in b.cells.items():
        assert t.cornered == (c % 2 == 0 and r % 2 == 0)


def test_block_sides():
    assert [R.block_side(k) for k in (1, 2, 3)] == [3, 7, 15]
    with pytest.raises(ValueError):
        R.generate_block(2, ["NE"])
    with pytest.raises(ValueError):
        R.generate_block(1, ["UP"])


@given(st.lists(elbows, min_size=2, max_size=4))
@settings(max_examples=30, deadline=None)
def test_quadrants_are_smaller_blocks(choices):
    k = len(choices)
    b = R.generate_block(k, choices)
    for name in R.ELBOWS:
        sub = R.generate_block(k - 1, R.induced_choices(k, choices, name))
        assert R.quadrant(b, name).cells == sub.cells
    assert b.cells[((b.width - 1) // 2,) * 2].elbow == choices[-1]


@given(st.lists(elbows, min_size=1, max_size=4))
@settings(max_examples=30, deadline=None)
def test_corner_rule_in_blocks(choices):
    b = R.generate_block(len(choices), choices)
    for c, r in product(range(b.width - 1), repeat=2):
        group = [b.cells[(c + i, r + j)] for i in (0, 1) for j in (0, 1)]
        assert sum(t.cornered for t in group) == 1


def test_choice_changes_only_elbow_decorations():
    a = R.generate_block(2, ["NE", "NE"])
    b = R.generate_block(2, ["NE", "SW"])
    diff = [c for c in a.cells if a.cells[c] != b.cells[c]]
    assert diff
    mid = 3
    assert all(c == mid or r == mid for c, r in diff)
    for c in diff:
        assert a.cells[c].kind == b.cells[c].kind
        assert a.cells[c].cornered == b.cells[c].cornered


def test_forcing_four_completions():
    res = R.verify_forcing_3x3()
    assert res.count == 4
    assert all(R.validate(p)[0] for p in res.completions)
    centers = {p.cells[(1, 1)].elbow for p in res.completions}
    assert centers == set(R.ELBOWS)


def test_forcing_without_cornered_cross():
    assert R.verify_forcing_3x3(forbid_cornered=True).count == 0


def test_forcing_budget():
    from tilework._util import BudgetExceeded

    with pytest.raises(BudgetExceeded):
        R.verify_forcing_3x3(budget=10)


def test_forcing_matches_wang_flattening():
    # independent route: the same 3x3 search through the generic Wang solver
    ts = R.wang_tileset()
    corner = R.RobinsonTile("cross_cornered", 0, False).label() + "@00"
    seed = GridPlacement.seed(3, 3, {(0, 0): corner})
    via_wang = {frozenset((c, n.split("@")[0]) for c, n in p.cells.items()) for p in iter_rectangle(ts, 3, 3, seed)}
    direct = {frozenset((c, t.label()) for c, t in p.cells.items()) for p in R.verify_forcing_3x3().completions}
    assert via_wang == direct


def test_forcing_jobs_deterministic():
    one = R.verify_forcing_3x3(jobs=1)
    many = R.verify_forcing_3x3(jobs=4)
    assert [p.to_json() for p in one.completions] == [p.to_json() for p in many.completions]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_squares(k):
    squares = R.square_hierarchy(R.generate_block(k, ["NE"] * k))
    sizes = Counter(s.side for s in squares)
    assert sizes == {2**j: 4 ** (k - j) for j in range(1, k + 1)}
    for a, b in combinations(squares, 2):
        if a.side == b.side:
            assert max(abs(a.center[0] - b.center[0]), abs(a.center[1] - b.center[1])) > a.side


def test_squares_need_block_structure():
    b = R.generate_block(2, ["NE", "NE"])
    with pytest.raises(R.StructureError):
        R.square_hierarchy(b.sub(0, 0, 5, 5))


def test_patch_json_roundtrip():
    b = R.generate_block(2, ["NW", "SE"])
    assert R.RobinsonPatch.from_json(b.to_json()).cells == b.cells


def test_wang_flattening():
    ts = R.wang_tileset()
    assert len(ts) == 4 + 28 * 3
    assert {R.from_wang_name(t.name) for t in ts} == set(R.universe())
    for k in (1, 2, 3):
        b = R.generate_block(k, ["NE"] * k)
        cells = {(c, r): f"{t.label()}@{c % 2}{r % 2}" for (c, r), t in b.cells.items()}
        assert is_valid(ts, GridPlacement(b.width, b.height, cells))
