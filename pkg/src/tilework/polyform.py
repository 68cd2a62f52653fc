"""Decorated polyominoes and polyhexes.

Cells live on the square lattice or on the hexagonal lattice in axial
coordinates.  Boundary edges carry a decoration: ``in`` (bulging inwards),
``out`` or ``flat``; across a shared edge ``in`` must meet ``out`` and
``flat`` must meet ``flat``.

Three questions are asked of such a tile: does the edge census alone rule
out tiling, how many coronas (concentric rings) fit around one copy, and is
there a translational fundamental domain of small area.
"""

import json
import math
from dataclasses import dataclass, field

from ._util import BudgetExceeded, Counter
from .geometry import PolygonPatch

IN, OUT, FLAT = "in", "out", "flat"
MATE = {IN: OUT, OUT: IN, FLAT: FLAT}
CORONA_BUDGET = 10**7
DOMAIN_AREA = 16


class Lattice:
    def __init__(self, name, dirs, vertex_nbrs):
        self.name = name
        self.dirs = dirs
        self.n = len(dirs)
        self.vertex_nbrs = vertex_nbrs  # edge or vertex contact

    def step(self, cell, d):
        dx, dy = self.dirs[d % self.n]
        return cell[0] + dx, cell[1] + dy

    def opposite(self, d):
        return (d + self.n // 2) % self.n

    def rotate(self, cell):
        x, y = cell
        if self.n == 4:
            return -y, x
        return -y, x + y

    def reflect(self, cell):
        x, y = cell
        if self.n == 4:
            return x, -y
        return x + y, -y

    def transform(self, cell, rot, refl):
        if refl:
            cell = self.reflect(cell)
        for _ in range(rot % self.n):
            cell = self.rotate(cell)
        return cell

    def transform_dir(self, d, rot, refl):
        if refl:
            d = -d % self.n
        return (d + rot) % self.n

    def center(self, cell):
        x, y = cell
        if self.n == 4:
            return float(x), float(y)
        return x + y / 2, y * 3**0.5 / 2

    def outline(self, cell):
        cx, cy = self.center(cell)
        if self.n == 4:
            return [(cx - 0.5, cy - 0.5), (cx + 0.5, cy - 0.5), (cx + 0.5, cy + 0.5), (cx - 0.5, cy + 0.5)]
        r = 1 / 3**0.5
        return [(cx + r * math.cos(math.radians(30 + 60 * k)), cy + r * math.sin(math.radians(30 + 60 * k))) for k in range(6)]


SQUARE = Lattice("square", ((1, 0), (0, 1), (-1, 0), (0, -1)), ((1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)))
HEX = Lattice("hex", ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)), ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)))
LATTICES = {"square": SQUARE, "hex": HEX}


@dataclass(frozen=True)
class DecoratedPolyform:
    lattice: str
    cells: frozenset
    decorations: dict = field(default_factory=dict)  # (cell, dir) -> in | out | flat

    def __post_init__(self):
        if isinstance(self.lattice, Lattice):
            object.__setattr__(self, "lattice", self.lattice.name)
        lat = LATTICES.get(self.lattice)
        if lat is None:
            raise ValueError(f"unknown lattice {self.lattice!r}")
        cells = frozenset(tuple(c) for c in self.cells)
        object.__setattr__(self, "cells", cells)
        if not cells:
            raise ValueError("a polyform needs at least one cell")
        start = min(cells)
        seen, todo = {start}, [start]
        while todo:
            c = todo.pop()
            for d in range(lat.n):
                nb = lat.step(c, d)
                if nb in cells and nb not in seen:
                    seen.add(nb)
                    todo.append(nb)
        if seen != cells:
            raise ValueError("cells are not edge-connected")
        decs = {}
        for (cell, d), dec in self.decorations.items():
            cell = tuple(cell)
            if dec not in MATE:
                raise ValueError(f"bad decoration {dec!r}")
            if cell not in cells or lat.step(cell, d) in cells:
                raise ValueError(f"decoration on non-boundary edge {(cell, d)}")
            decs[(cell, d % lat.n)] = dec
        object.__setattr__(self, "decorations", decs)

    def __hash__(self):
        return hash((self.lattice, self.cells, tuple(sorted(self.decorations.items()))))

    @property
    def lat(self):
        return LATTICES[self.lattice]

    def boundary_edges(self):
        lat = self.lat
        return [(c, d) for c in sorted(self.cells) for d in range(lat.n) if lat.step(c, d) not in self.cells]

    def decoration(self, cell, d):
        return self.decorations.get((cell, d), FLAT)

    def oriented(self, rot, refl=False):
        lat = self.lat
        decs = {(lat.transform(c, rot, refl), lat.transform_dir(d, rot, refl)): v for (c, d), v in self.decorations.items()}
        return DecoratedPolyform(self.lattice, {lat.transform(c, rot, refl) for c in self.cells}, decs).normalized()

    def translated(self, dx, dy):
        decs = {((c[0] + dx, c[1] + dy), d): v for (c, d), v in self.decorations.items()}
        return DecoratedPolyform(self.lattice, {(c[0] + dx, c[1] + dy) for c in self.cells}, decs)

    def normalized(self):
        x0, y0 = min(self.cells)
        return self.translated(-x0, -y0)

    def key(self):
        edges = tuple(self.decoration(c, d) for c, d in self.boundary_edges())
        return tuple(sorted(self.cells)), edges

    def orientations(self, reflections=True):
        """Distinct orientations as ``(rot, refl, shape)``, canonically ordered."""
        out = {}
        for refl in (False, True) if reflections else (False,):
            for rot in range(self.lat.n):
                shape = self.oriented(rot, refl)
                out.setdefault(shape.key(), (rot, refl, shape))
        return [out[k] for k in sorted(out)]

    def to_json(self):
        return {
            "lattice": self.lattice,
            "cells": [list(c) for c in sorted(self.cells)],
            "edges": [{"cell": list(c), "dir": d, "dec": v} for (c, d), v in sorted(self.decorations.items())],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        decs = {(tuple(e["cell"]), int(e["dir"])): e["dec"] for e in data.get("edges", [])}
        return cls(data["lattice"], {tuple(c) for c in data["cells"]}, decs)


def decorate(lattice, cells, decs=None):
    """Convenience constructor; ``decs`` maps ``(cell, dir)`` to a decoration."""
    return DecoratedPolyform(lattice, frozenset(map(tuple, cells)), dict(decs or {}))


# ---------------------------------------------------------------------------
# edge census


def edge_census(t):
    counts = {IN: 0, OUT: 0, FLAT: 0}
    for c, d in t.boundary_edges():
        counts[t.decoration(c, d)] += 1
    return counts[IN], counts[OUT], counts[FLAT]


@dataclass(frozen=True)
class CensusVerdict:
    outcome: str  # "no_tiling_proved" | "inconclusive"
    deficit: int

    def __str__(self):
        if self.outcome == "no_tiling_proved":
            return f"no_tiling_proved(deficit {self.deficit} per tile)"
        return "inconclusive"


def census_nontiler(t):
    """Too many inward bulges: N copies leave at least ``(in - out) N`` of them
    unmatched, all on the boundary, which only grows like the radius."""
    inward, outward, _ = edge_census(t)
    if inward > outward:
        return CensusVerdict("no_tiling_proved", inward - outward)
    return CensusVerdict("inconclusive", inward - outward)


def mann_census_fixture():
    """Three hexagons in a triangle, seven edges inward, four outward, one flat."""
    cells = [(0, 0), (1, 0), (0, 1)]
    t = decorate("hex", cells)
    edges = t.boundary_edges()
    decs = {e: IN for e in edges[:7]}
    decs.update({e: OUT for e in edges[7:11]})
    return decorate("hex", cells, decs)


# ---------------------------------------------------------------------------
# placements


@dataclass(frozen=True)
class Placement:
    rotation: int
    reflected: bool
    offset: tuple

    def shape(self, tile):
        return tile.oriented(self.rotation, self.reflected).translated(*self.offset)


class _Board:
    """Occupied cells with per-edge decorations; supports undo."""

    def __init__(self, lat, wrap=None):
        self.lat = lat
        self.wrap = wrap or (lambda c: c)
        self.owner = {}
        self.edges = {}  # cell -> {dir: decoration or None for internal}

    def fits(self, shape):
        lat, wrap = self.lat, self.wrap
        local = {}
        for c in shape.cells:
            wc = wrap(c)
            if wc in local or wc in self.owner:
                return False
            local[wc] = c
        for c in shape.cells:
            for d in range(lat.n):
                nb = lat.step(c, d)
                if nb in shape.cells:
                    continue
                mine = shape.decoration(c, d)
                back = lat.opposite(d)
                wnb = wrap(nb)
                if wnb in local:
                    # the copy meets itself across a wrap
                    c2 = local[wnb]
                    if lat.step(c2, back) in shape.cells or MATE[mine] != shape.decoration(c2, back):
                        return False
                elif wnb in self.owner:
                    theirs = self.edges[wnb][back]
                    if theirs is None or MATE[mine] != theirs:
                        return False
        return True

    def place(self, shape, ident):
        lat, wrap = self.lat, self.wrap
        for c in shape.cells:
            wc = wrap(c)
            self.owner[wc] = ident
            self.edges[wc] = {d: (None if lat.step(c, d) in shape.cells else shape.decoration(c, d)) for d in range(lat.n)}

    def remove(self, shape):
        for c in shape.cells:
            wc = self.wrap(c)
            del self.owner[wc]
            del self.edges[wc]


def _anchored(orients, target):
    """Every placement of an orientation that covers ``target``."""
    for rot, refl, shape in orients:
        for a in sorted(shape.cells):
            off = (target[0] - a[0], target[1] - a[1])
            yield Placement(rot, refl, off), shape.translated(*off)


def validate_placements(tile, placements, wrap=None):
    """Independent re-check: no overlaps, every shared edge mates."""
    lat = tile.lat
    wrap = wrap or (lambda c: c)
    occ = {}
    for i, p in enumerate(placements):
        shape = p.shape(tile)
        for c in shape.cells:
            wc = wrap(c)
            if wc in occ:
                return False
            occ[wc] = (i, c, shape)
    for wc, (i, c, shape) in occ.items():
        for d in range(lat.n):
            nb = lat.step(c, d)
            if nb in shape.cells:
                continue
            other = occ.get(wrap(nb))
            if other is None:
                continue
            j, c2, shape2 = other
            back = lat.step(c2, lat.opposite(d))
            if back in shape2.cells:
                return False
            if MATE[shape.decoration(c, d)] != shape2.decoration(c2, lat.opposite(d)):
                return False
    return True


# ---------------------------------------------------------------------------
# fundamental domains


@dataclass(frozen=True)
class Domain:
    vectors: tuple  # two lattice vectors spanning the period lattice
    placements: tuple
    orbit_count: int

    @property
    def tiles(self):
        return len(self.placements)


def _hnf_bases(index, rectangular=False):
    for a in range(1, index + 1):
        if index % a:
            continue
        d = index // a
        for b in range(1 if rectangular else a):
            yield (a, 0), (b, d)


def _wrapper(basis):
    (a, _), (b, d) = basis

    def wrap(c):
        x, y = c
        k = y // d
        x -= k * b
        y -= k * d
        return x % a, y

    return wrap


def _domain_on(tile, basis, orients, counter):
    lat = tile.lat
    wrap = _wrapper(basis)
    (a, _), (b, d) = basis
    cells = [(x, y) for y in range(d) for x in range(a)]
    board = _Board(lat, wrap)
    chosen = []

    def rec():
        counter.tick()
        free = next((c for c in cells if c not in board.owner), None)
        if free is None:
            return True
        for p, shape in _anchored(orients, free):
            if board.fits(shape):
                board.place(shape, len(chosen))
                chosen.append(p)
                if rec():
                    return True
                chosen.pop()
                board.remove(shape)
        return False

    return tuple(chosen) if rec() else None


def fundamental_domain_search(tile, max_area=DOMAIN_AREA, tiles=None, rectangular=False, reflections=True, budget=None):
    """Smallest translational fundamental domain, or None.

    Period lattices are enumerated by Hermite normal form ``(a, 0), (b, d)``
    in order of index, so the first hit uses the fewest copies.
    ``tiles`` restricts the number of copies; ``rectangular`` keeps ``b = 0``.
    """
    k = len(tile.cells)
    if max_area < k:
        raise ValueError("max_area is smaller than the tile")
    counter = Counter(budget, "domain search")
    orients = tile.orientations(reflections)
    counts = [tiles] if tiles else range(1, max_area // k + 1)
    for m in counts:
        for basis in _hnf_bases(m * k, rectangular):
            found = _domain_on(tile, basis, orients, counter)
            if found is not None:
                kinds = {(p.rotation, p.reflected) for p in found}
                shapes = {tile.oriented(r, f).key() for r, f in kinds}
                return Domain(basis, found, len(shapes))
    return None


# ---------------------------------------------------------------------------
# coronas


@dataclass
class CoronaResult:
    level: object  # int, or "periodic"
    witnesses: list = field(default_factory=list)  # witnesses[k-1]: placements with ring index
    limit_hit: bool = False
    domain: Domain = None

    @property
    def periodic(self):
        return self.level == "periodic"

    def __str__(self):
        if self.periodic:
            return "periodic"
        return f"{self.level}{' (budget hit)' if self.limit_hit else ''}"


def _neighbours(lat, cells):
    out = set()
    for x, y in cells:
        for dx, dy in lat.vertex_nbrs:
            c = (x + dx, y + dy)
            if c not in cells:
                out.add(c)
    return out


def _simply_connected(lat, cells):
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    lo_x, hi_x, lo_y, hi_y = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    start = (lo_x, lo_y)
    seen, todo = {start}, [start]
    while todo:
        c = todo.pop()
        for d in range(lat.n):
            nb = lat.step(c, d)
            if lo_x <= nb[0] <= hi_x and lo_y <= nb[1] <= hi_y and nb not in cells and nb not in seen:
                seen.add(nb)
                todo.append(nb)
    total = (hi_x - lo_x + 1) * (hi_y - lo_y + 1)
    return len(seen) + len(cells) == total


def corona_search(tile, max_level, reflections=True, budget=None, check_periodic=True, domain_area=DOMAIN_AREA):
    """Largest ``k <= max_level`` with ``k`` complete rings around one copy.

    A ring covers every cell touching the patch so far (edge or vertex
    contact) and leaves the patch without holes.  A translational domain
    found first short-circuits to ``"periodic"``.
    """
    if max_level < 1:
        raise ValueError("max_level must be >= 1")
    if check_periodic:
        try:
            dom = fundamental_domain_search(tile, max(domain_area, len(tile.cells)), reflections=reflections, budget=budget)
        except BudgetExceeded:
            dom = None
        if dom is not None:
            return CoronaResult("periodic", [], False, dom)
    lat = tile.lat
    orients = tile.orientations(reflections)
    counter = Counter(CORONA_BUDGET if budget is None else budget, "corona search")
    board = _Board(lat)
    center = Placement(0, False, (0, 0))
    board.place(tile, 0)
    patch = set(tile.cells)
    placed = [(center, 0)]
    best = [0, []]

    def ring(level, targets, added_cells):
        counter.tick()
        free = next((c for c in targets if c not in board.owner), None)
        if free is None:
            cells = patch | added_cells
            if not _simply_connected(lat, cells):
                return False
            if level > best[0]:
                best[0] = level
                best[1] = best[1][: level - 1] + [list(placed)]
            if level == max_level:
                return True
            saved = set(patch)
            patch.update(added_cells)
            nxt = sorted(_neighbours(lat, patch))
            done = ring(level + 1, nxt, set())
            patch.clear()
            patch.update(saved)
            return done
        for p, shape in _anchored(orients, free):
            if board.fits(shape):
                board.place(shape, len(placed))
                placed.append((p, level))
                if ring(level, targets, added_cells | shape.cells):
                    return True
                placed.pop()
                board.remove(shape)
        return False

    limit = False
    try:
        ring(1, sorted(_neighbours(lat, patch)), set())
    except BudgetExceeded:
        limit = True
    return CoronaResult(best[0], best[1], limit, None)


def to_patch(tile, placements, labels=None):
    """Cells of placed copies as polygons, labelled by copy index or ``labels``."""
    lat = tile.lat
    tiles = []
    for i, p in enumerate(placements):
        if isinstance(p, tuple):
            p = p[0]
        for c in sorted(p.shape(tile).cells):
            tiles.append((lat.outline(c), labels[i] if labels else f"copy{i}"))
    return PolygonPatch(tiles)
