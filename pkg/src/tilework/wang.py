"""Wang tiles on the square lattice.

Cells are addressed ``(column, row)`` with row 0 at the bottom.  A tile's
north label must equal the south label of the tile above it and its east
label the west label of the tile to its right.  Tiles are never rotated.
"""

import json
from dataclasses import dataclass, field
from typing import NamedTuple

from ._util import BudgetExceeded, Counter, pmap


class WangTile(NamedTuple):
    name: str
    n: str
    e: str
    s: str
    w: str


class WangTileSet:
    """An immutable, ordered collection of uniquely named Wang tiles."""

    def __init__(self, tiles):
        tiles = tuple(t if isinstance(t, WangTile) else WangTile(*t) for t in tiles)
        if not tiles:
            raise ValueError("a tile set needs at least one tile")
        names = [t.name for t in tiles]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate tile names: {dup}")
        self.tiles = tiles
        self.index = {t.name: i for i, t in enumerate(tiles)}

    def __len__(self):
        return len(self.tiles)

    def __iter__(self):
        return iter(self.tiles)

    def __getitem__(self, name):
        return self.tiles[self.index[name]]

    def __eq__(self, other):
        return isinstance(other, WangTileSet) and self.tiles == other.tiles

    def __hash__(self):
        return hash(self.tiles)

    def __getstate__(self):
        return self.tiles

    def __setstate__(self, tiles):
        self.__init__(tiles)

    @property
    def alphabet(self):
        return frozenset(lab for t in self.tiles for lab in t[1:])

    def to_json(self):
        return {"tiles": [{"name": t.name, "n": t.n, "e": t.e, "s": t.s, "w": t.w} for t in self.tiles]}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(WangTile(str(t["name"]), str(t["n"]), str(t["e"]), str(t["s"]), str(t["w"])) for t in data["tiles"])


@dataclass(frozen=True)
class GridPlacement:
    width: int
    height: int
    cells: dict = field(default_factory=dict)  # (col, row) -> tile name
    pinned: frozenset = frozenset()

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("placement dimensions must be positive")
        for c, r in self.cells:
            if not (0 <= c < self.width and 0 <= r < self.height):
                raise ValueError(f"cell {(c, r)} outside {self.width}x{self.height}")
        object.__setattr__(self, "pinned", frozenset(self.pinned))

    def __hash__(self):
        return hash((self.width, self.height, tuple(sorted(self.cells.items())), self.pinned))

    def row(self, r):
        return [self.cells.get((c, r)) for c in range(self.width)]

    def rows(self):
        """Tile names, top row first (the way the grid reads on paper)."""
        return [self.row(r) for r in reversed(range(self.height))]

    @property
    def complete(self):
        return len(self.cells) == self.width * self.height

    @classmethod
    def seed(cls, width, height, cells):
        """A placement whose given cells are all pinned."""
        return cls(width, height, dict(cells), frozenset(cells))

    def to_json(self):
        return {
            "width": self.width,
            "height": self.height,
            "cells": [[c, r, name] for (c, r), name in sorted(self.cells.items(), key=lambda kv: (kv[0][1], kv[0][0]))],
            "pinned": sorted([c, r] for c, r in self.pinned),
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        cells = {(int(c), int(r)): str(name) for c, r, name in data["cells"]}
        pinned = frozenset((int(c), int(r)) for c, r in data.get("pinned", []))
        return cls(int(data["width"]), int(data["height"]), cells, pinned)


@dataclass(frozen=True)
class TilingVerdict:
    outcome: str  # "tiles_with_period" | "no_tiling" | "unknown"
    domain: GridPlacement = None
    vectors: tuple = None
    witness_size: tuple = None
    budget_exhausted: bool = False

    def to_json(self):
        out = {"outcome": self.outcome}
        if self.domain is not None:
            out["domain"] = self.domain.to_json()
            out["vectors"] = [list(v) for v in self.vectors]
        if self.witness_size is not None:
            out["witness_size"] = list(self.witness_size)
        if self.outcome == "unknown":
            out["budget_exhausted"] = self.budget_exhausted
        return out


# ---------------------------------------------------------------------------
# validation


def violations(tileset, placement, torus=False):
    """Every mismatched edge as ``((c, r), (c2, r2), side)``; O(cells)."""
    bad = []
    w, h = placement.width, placement.height
    cells = placement.cells
    for (c, r), name in sorted(cells.items()):
        if name not in tileset.index:
            bad.append(((c, r), None, "unknown tile"))
            continue
        t = tileset[name]
        right = ((c + 1) % w, r) if torus else (c + 1, r)
        up = (c, (r + 1) % h) if torus else (c, r + 1)
        if right in cells and (torus or c + 1 < w):
            other = tileset.tiles[tileset.index[cells[right]]] if cells[right] in tileset.index else None
            if other is not None and other.w != t.e:
                bad.append(((c, r), right, "east"))
        if up in cells and (torus or r + 1 < h):
            other = tileset.tiles[tileset.index[cells[up]]] if cells[up] in tileset.index else None
            if other is not None and other.s != t.n:
                bad.append(((c, r), up, "north"))
    return bad


def is_valid(tileset, placement, torus=False):
    return placement.complete and not violations(tileset, placement, torus)


def periodic_extend(placement, width, height):
    """Repeat a torus domain across a ``width x height`` rectangle."""
    w, h = placement.width, placement.height
    cells = {(c, r): placement.cells[(c % w, r % h)] for c in range(width) for r in range(height)}
    return GridPlacement(width, height, cells)


# ---------------------------------------------------------------------------
# search


def _search(tileset, width, height, torus=False, seed=None, counter=None):
    """Yield complete assignments (lists of tile indices, row-major)."""
    tiles = tileset.tiles
    counter = counter or Counter(what="wang search")
    ncell = width * height
    labels = {}
    for t in tiles:
        for lab in t[1:]:
            labels.setdefault(lab, len(labels))
    tn = [labels[t.n] for t in tiles]
    te = [labels[t.e] for t in tiles]
    ts = [labels[t.s] for t in tiles]
    tw = [labels[t.w] for t in tiles]
    nt = len(tiles)

    # candidate lists keyed by required (west, south), None = unconstrained
    by_ws = {}
    for i in range(nt):
        for key in ((tw[i], ts[i]), (tw[i], None), (None, ts[i]), (None, None)):
            by_ws.setdefault(key, []).append(i)

    fixed = [None] * ncell
    if seed is not None:
        if seed.width > width or seed.height > height:
            raise ValueError("seed does not fit inside the search rectangle")
        for (c, r), name in seed.cells.items():
            fixed[r * width + c] = tileset.index[name]
        if violations(tileset, seed):
            raise ValueError("seed placement is internally inconsistent")

    grid = [0] * ncell
    stack = []  # per depth: (candidate list, next position)

    def candidates(pos):
        c, r = pos % width, pos // width
        west = te[grid[pos - 1]] if c > 0 else None
        south = tn[grid[pos - width]] if r > 0 else None
        cand = by_ws.get((west, south), ())
        if fixed[pos] is not None:
            cand = [fixed[pos]] if fixed[pos] in cand else []
        if torus:
            need_e = tw[grid[pos - c]] if c == width - 1 and width > 1 else None
            need_n = ts[grid[c]] if r == height - 1 and height > 1 else None
            if c == width - 1 and width == 1:
                cand = [i for i in cand if te[i] == tw[i]]
            if r == height - 1 and height == 1:
                cand = [i for i in cand if tn[i] == ts[i]]
            if need_e is not None:
                cand = [i for i in cand if te[i] == need_e]
            if need_n is not None:
                cand = [i for i in cand if tn[i] == need_n]
        if torus and pos > 0:
            # shift any torus filling so its smallest tile index sits at (0, 0)
            cand = [i for i in cand if i >= grid[0]]
        # later pinned neighbours prune early
        if c + 1 < width and fixed[pos + 1] is not None:
            cand = [i for i in cand if te[i] == tw[fixed[pos + 1]]]
        if r + 1 < height and fixed[pos + width] is not None:
            cand = [i for i in cand if tn[i] == ts[fixed[pos + width]]]
        return cand

    stack.append([candidates(0), 0])
    pos = 0
    while stack:
        frame = stack[-1]
        cand, k = frame
        if k >= len(cand):
            stack.pop()
            pos -= 1
            continue
        frame[1] = k + 1
        grid[pos] = cand[k]
        counter.tick()
        if pos == ncell - 1:
            yield list(grid)
            continue
        pos += 1
        stack.append([candidates(pos), 0])


def _to_placement(tileset, width, height, grid, seed=None):
    cells = {(i % width, i // width): tileset.tiles[t].name for i, t in enumerate(grid)}
    pinned = seed.pinned if seed is not None else frozenset()
    return GridPlacement(width, height, cells, pinned)


def _check_dims(width, height):
    if width < 1 or height < 1:
        raise ValueError("width and height must be positive")


def iter_rectangle(tileset, width, height, seed=None, budget=None):
    """All valid fillings of the rectangle, in canonical order."""
    _check_dims(width, height)
    counter = Counter(budget, "rectangle search")
    for grid in _search(tileset, width, height, seed=seed, counter=counter):
        yield _to_placement(tileset, width, height, grid, seed)


def solve_rectangle(tileset, width, height, seed=None, budget=None):
    """First valid filling in (row, column, tile index) order, or None."""
    for placement in iter_rectangle(tileset, width, height, seed, budget):
        return placement
    return None


def solve_torus(tileset, width, height, budget=None):
    """A filling that also matches across the wrap-around edges, or None."""
    _check_dims(width, height)
    counter = Counter(budget, "torus search")
    for grid in _search(tileset, width, height, torus=True, counter=counter):
        return _to_placement(tileset, width, height, grid)
    return None


def _torus_job(args):
    tileset, w, h, budget = args
    try:
        return solve_torus(tileset, w, h, budget), False
    except BudgetExceeded:
        return None, True


def _rect_job(args):
    tileset, w, h, budget = args
    try:
        return solve_rectangle(tileset, w, h, budget=budget) is not None, False
    except BudgetExceeded:
        return True, True


def decide_up_to(tileset, max_size, budget=None, jobs=1):
    """Both halves of the brute-force semi-decision procedure, up to a size.

    Sizes grow together: at size ``s`` every torus with ``max(w, h) == s`` is
    tried, then every rectangle with ``max(w, h) == s``.  A torus filling
    certifies a periodic tiling; an unfillable rectangle certifies that no
    tiling exists.  Neither within ``max_size`` gives ``unknown``.
    """
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    limited = False
    for s in range(1, max_size + 1):
        shapes = sorted(
            ((w, h) for w in range(1, s + 1) for h in range(1, s + 1) if max(w, h) == s),
            key=lambda wh: (wh[0] * wh[1], wh[0]),
        )
        results = pmap(_torus_job, [(tileset, w, h, budget) for w, h in shapes], jobs)
        for (w, h), (found, hit) in zip(shapes, results):
            limited |= hit
            if found is not None:
                return TilingVerdict("tiles_with_period", found, ((w, 0), (0, h)))
        results = pmap(_rect_job, [(tileset, w, h, budget) for w, h in shapes], jobs)
        for (w, h), (ok, hit) in zip(shapes, results):
            limited |= hit
            if not ok:
                return TilingVerdict("no_tiling", witness_size=(w, h))
    return TilingVerdict("unknown", budget_exhausted=limited)
