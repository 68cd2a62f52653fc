"""Robinson's six tiles, their hierarchical blocks and a forcing check.

Edge encoding.  Every tile edge is crossed by exactly one arrow: a *bump*
where the arrow leaves the tile, a *nick* where it enters.  Crosses have four
bumps; each of the four passing ("arm") tiles has one bump, the head of its
main line, and three nicks.  On top of the arrows run thin rails, the lines
that outline Robinson's squares.  A rail crosses an edge off-centre, in its
``low`` half (west or south) or its ``high`` half (east or north).
Neighbouring tiles match when contacts are complementary and rails agree.
Finally the corner rule: around every vertex exactly one tile is cornered.

Canonical orientations (main arrow pointing north for arms, elbow pointing
north-east for crosses):

=================  ======================================================
``cross_cornered``   4 bumps; rails on N (high) and E (high) -- the elbow
``cross``            the same, cornerless
``arm``              no rails
``arm_side``         a rail beside the main line, crossing N and S high
``arm_across``       a rail across the tail half, crossing E and W low
``arm_both``         both of the above
=================  ======================================================

Under rotations and reflections these give ``ORIENTED_COUNT`` = 32 distinct
oriented tiles.
"""

import json
from dataclasses import dataclass
from typing import NamedTuple

from ._util import Counter, pmap
from .geometry import PolygonPatch
from .wang import WangTile, WangTileSet

N, E, S, W = 0, 1, 2, 3
SIDES = (N, E, S, W)
SIDE_NAMES = "NESW"
VEC = {N: (0, 1), E: (1, 0), S: (0, -1), W: (-1, 0)}
OPPOSITE = {N: S, S: N, E: W, W: E}
ELBOWS = {"NE": (1, 1), "NW": (-1, 1), "SE": (1, -1), "SW": (-1, -1)}
ELBOW_NAMES = {v: k for k, v in ELBOWS.items()}

BASE_TILES = ("cross_cornered", "cross", "arm", "arm_side", "arm_across", "arm_both")
ORIENTED_COUNT = 32
FORCING_BUDGET = 10**6


class StructureError(ValueError):
    pass


class EdgeLabel(NamedTuple):
    contact: str  # "bump" | "nick"
    rail: str  # None | "low" | "high"


def _canonical_edges(base):
    bump, nick = "bump", "nick"
    if base.startswith("cross"):
        return {N: EdgeLabel(bump, "high"), E: EdgeLabel(bump, "high"), S: EdgeLabel(bump, None), W: EdgeLabel(bump, None)}
    side = base in ("arm_side", "arm_both")
    across = base in ("arm_across", "arm_both")
    return {
        N: EdgeLabel(bump, "high" if side else None),
        S: EdgeLabel(nick, "high" if side else None),
        E: EdgeLabel(nick, "low" if across else None),
        W: EdgeLabel(nick, "low" if across else None),
    }


def _transform_point(p, rot, refl):
    x, y = p
    if refl:
        x = -x
    for _ in range(rot % 4):
        x, y = -y, x
    return x, y


def _side_of(p):
    x, y = p
    if abs(x) > abs(y):
        return (E if x > 0 else W), y
    return (N if y > 0 else S), x


def _transform_edges(edges, rot, refl):
    """Move every edge record under ``rot`` quarter turns after an optional mirror."""
    out = {}
    for side, lab in edges.items():
        dx, dy = VEC[side]
        off = 0 if lab.rail is None else (1 if lab.rail == "high" else -1)
        # a crossing point: 2 units out along the side, 1 unit along the edge
        p = (2 * dx + off * abs(dy), 2 * dy + off * abs(dx))
        new_side, along = _side_of(_transform_point(p, rot, refl))
        rail = None if lab.rail is None else ("high" if along > 0 else "low")
        out[new_side] = EdgeLabel(lab.contact, rail)
    return out


@dataclass(frozen=True)
class RobinsonTile:
    base: str
    rotation: int = 0  # quarter turns counterclockwise
    reflected: bool = False  # mirror in the vertical axis, applied first

    @property
    def kind(self):
        return "cross" if self.base.startswith("cross") else "passing"

    @property
    def cornered(self):
        return self.base == "cross_cornered"

    @property
    def edges(self):
        return _transform_edges(_canonical_edges(self.base), self.rotation, self.reflected)

    @property
    def signature(self):
        e = self.edges
        return (self.cornered, tuple(e[s] for s in SIDES))

    @property
    def elbow(self):
        """Elbow direction of a cross, e.g. ``"NE"``; None for arms."""
        if self.kind != "cross":
            return None
        e = self.edges
        dx = 1 if e[E].rail else -1
        dy = 1 if e[N].rail else -1
        return ELBOW_NAMES[(dx, dy)]

    @property
    def main(self):
        """Side where an arm's main arrow leaves the tile."""
        if self.kind == "cross":
            return None
        return next(s for s, lab in self.edges.items() if lab.contact == "bump")

    def label(self):
        refl = "m" if self.reflected else ""
        return f"{self.base}/r{self.rotation}{refl}"


def oriented_tiles():
    """One representative per distinct oriented tile, in a fixed order."""
    seen = {}
    for base in BASE_TILES:
        for refl in (False, True):
            for rot in range(4):
                t = RobinsonTile(base, rot, refl)
                seen.setdefault(t.signature, t)
    return list(seen.values())


_UNIVERSE = None


def universe():
    global _UNIVERSE
    if _UNIVERSE is None:
        _UNIVERSE = oriented_tiles()
    return _UNIVERSE


def tile_for(cornered, edges):
    key = (cornered, tuple(edges[s] for s in SIDES))
    for t in universe():
        if t.signature == key:
            return t
    raise StructureError(f"no Robinson tile has edges {edges} (cornered={cornered})")


# ---------------------------------------------------------------------------
# patches and validation


@dataclass(frozen=True)
class RobinsonPatch:
    width: int
    height: int
    cells: dict  # (col, row) -> RobinsonTile

    def __hash__(self):
        return hash((self.width, self.height, tuple(sorted(self.cells.items()))))

    def __getitem__(self, cell):
        return self.cells[cell]

    def sub(self, c0, r0, width, height):
        cells = {(c - c0, r - r0): t for (c, r), t in self.cells.items() if c0 <= c < c0 + width and r0 <= r < r0 + height}
        return RobinsonPatch(width, height, cells)

    def to_json(self):
        return {
            "width": self.width,
            "height": self.height,
            "cells": [
                [c, r, t.base, t.rotation, t.reflected]
                for (c, r), t in sorted(self.cells.items(), key=lambda kv: (kv[0][1], kv[0][0]))
            ],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        cells = {(int(c), int(r)): RobinsonTile(base, int(rot), bool(refl)) for c, r, base, rot, refl in data["cells"]}
        return cls(int(data["width"]), int(data["height"]), cells)

    def to_polygons(self):
        tiles = []
        for (c, r), t in sorted(self.cells.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            tiles.append(([(c, r), (c + 1, r), (c + 1, r + 1), (c, r + 1)], t.base))
        return PolygonPatch(tiles)


class Violation(NamedTuple):
    cell: tuple
    other: tuple
    component: str  # "contact" | "rail" | "corner"


def edge_violation(a, b, side):
    """Why tile ``b`` cannot sit on ``side`` of tile ``a`` (None if it can)."""
    ea = a.edges[side]
    eb = b.edges[OPPOSITE[side]]
    if ea.contact == eb.contact:
        return "contact"
    if ea.rail != eb.rail:
        return "rail"
    return None


def check(patch):
    """First violation in row-major order, or None."""
    cells = patch.cells
    for r in range(patch.height):
        for c in range(patch.width):
            t = cells[(c, r)]
            for side, (dc, dr) in ((E, (1, 0)), (N, (0, 1))):
                nb = (c + dc, r + dr)
                if nb in cells:
                    why = edge_violation(t, cells[nb], side)
                    if why:
                        return Violation((c, r), nb, why)
            if c + 1 < patch.width and r + 1 < patch.height:
                group = [(c, r), (c + 1, r), (c, r + 1), (c + 1, r + 1)]
                if sum(cells[g].cornered for g in group) != 1:
                    return Violation((c, r), (c + 1, r + 1), "corner")
    return None


def validate(patch):
    """``(ok, first_violation)``."""
    missing = [(c, r) for r in range(patch.height) for c in range(patch.width) if (c, r) not in patch.cells]
    if missing:
        raise ValueError(f"unassigned cells: {missing[:5]}")
    v = check(patch)
    return v is None, v


# ---------------------------------------------------------------------------
# hierarchical blocks


def _level(x):
    """Cross level of a coordinate: 1 + trailing zero bits of x + 1."""
    x += 1
    if x == 0:
        return 64  # -1 sits on every level
    n = 1
    while x % 2 == 0:
        x //= 2
        n += 1
    return n


def block_side(k):
    return 2 ** (k + 1) - 1


def generate_block(k, choices):
    """The level-``k`` block, side ``2**(k+1) - 1``, built from the top down.

    ``choices[-1]`` is the elbow of the central cross.  Every smaller cross
    has its elbow forced towards the centre of the next larger block, so
    the earlier entries only have to be valid elbow names.
    """
    choices = list(choices)
    if k < 1:
        raise ValueError("level must be >= 1")
    if len(choices) != k:
        raise ValueError(f"need {k} elbow choices, got {len(choices)}")
    for ch in choices:
        if ch not in ELBOWS:
            raise ValueError(f"bad elbow {ch!r}; use one of {sorted(ELBOWS)}")
    m = block_side(k)
    top = k + 1
    center = m // 2

    elbow = {}
    for y in range(m):
        for x in range(m):
            lx, ly = _level(x), _level(y)
            if lx != ly:
                continue
            if lx == top:
                elbow[(x, y)] = ELBOWS[choices[-1]]
            else:
                half = 2 ** (lx - 1)
                dx = 1 if _level(x + half) == lx + 1 else -1
                dy = 1 if _level(y + half) == lx + 1 else -1
                elbow[(x, y)] = (dx, dy)

    # rails: side -> offset per cell
    rails = {}
    for (x, y), (dx, dy) in elbow.items():
        lvl = _level(x)
        reach = 2**lvl if lvl < top else m  # the top cross runs to the edge
        h_off = "high" if dy > 0 else "low"
        v_off = "high" if dx > 0 else "low"
        rails[((x, y), E if dx > 0 else W)] = h_off
        rails[((x, y), N if dy > 0 else S)] = v_off
        for i in range(1, reach):
            cx = x + dx * i
            if not 0 <= cx < m or (cx, y) in elbow:
                break
            rails[((cx, y), E)] = h_off
            rails[((cx, y), W)] = h_off
        for i in range(1, reach):
            cy = y + dy * i
            if not 0 <= cy < m or (x, cy) in elbow:
                break
            rails[((x, cy), N)] = v_off
            rails[((x, cy), S)] = v_off

    cells = {}
    for y in range(m):
        for x in range(m):
            if (x, y) in elbow:
                contacts = {s: "bump" for s in SIDES}
            else:
                lx, ly = _level(x), _level(y)
                if lx > ly:
                    # on a vertical arm of the nearest level-lx cross in this column
                    yc = min((yy for yy in range(-(2**lx), m + 2**lx) if _level(yy) == lx), key=lambda yy: abs(yy - y))
                    head = N if y > yc else S
                else:
                    xc = min((xx for xx in range(-(2**ly), m + 2**ly) if _level(xx) == ly), key=lambda xx: abs(xx - x))
                    head = E if x > xc else W
                contacts = {s: ("bump" if s == head else "nick") for s in SIDES}
            edges = {s: EdgeLabel(contacts[s], rails.get(((x, y), s))) for s in SIDES}
            cells[(x, y)] = tile_for((x, y) in elbow and _level(x) == 1, edges)
    assert cells[(center, center)].elbow == choices[-1]
    return RobinsonPatch(m, m, cells)


def induced_choices(k, choices, quadrant):
    """Choices that regenerate the given quadrant (``"SW"`` etc.) of a block."""
    dx, dy = ELBOWS[quadrant]
    inward = ELBOW_NAMES[(-dx, -dy)]
    return list(choices[: k - 2]) + [inward]


def quadrant(patch, name):
    half = (patch.width - 1) // 2
    dx, dy = ELBOWS[name]
    c0 = 0 if dx < 0 else half + 1
    r0 = 0 if dy < 0 else half + 1
    return patch.sub(c0, r0, half, half)


# ---------------------------------------------------------------------------
# forcing around a cornered cross


class ForcingResult(NamedTuple):
    count: int
    completions: tuple


def _forcing_job(args):
    center, forbid_cornered, budget = args
    tiles = [t for t in universe() if not (forbid_cornered and t.cornered)]
    counter = Counter(budget, "forcing search")
    fixed = {(1, 1): [center]}
    if forbid_cornered:
        corner = None
    else:
        corner = RobinsonTile("cross_cornered", 0, False)  # elbow NE, into the patch
        fixed[(0, 0)] = [corner]
    order = [(c, r) for r in range(3) for c in range(3)]
    found = []
    cells = {}

    def fits(cell, t):
        c, r = cell
        for side, (dc, dr) in VEC.items():
            nb = cells.get((c + dc, r + dr))
            if nb is not None and edge_violation(t, nb, side):
                return False
        for dc in (-1, 0):
            for dr in (-1, 0):
                group = [cells.get((c + dc + i, r + dr + j)) for i in (0, 1) for j in (0, 1) if (dc + i, dr + j) != (0, 0)]
                if all(g is not None for g in group):
                    if sum(g.cornered for g in group) + t.cornered != 1:
                        return False
        return True

    def rec(i):
        counter.tick()
        if i == len(order):
            found.append(RobinsonPatch(3, 3, dict(cells)))
            return
        cell = order[i]
        for t in fixed.get(cell, tiles):
            if fits(cell, t):
                cells[cell] = t
                rec(i + 1)
                del cells[cell]

    # the center is placed first so its neighbours can see it
    cells[(1, 1)] = center
    order.remove((1, 1))
    rec(0)
    return found


def verify_forcing_3x3(forbid_cornered=False, budget=FORCING_BUDGET, jobs=1):
    """Enumerate every valid 3x3 patch with a cornered cross at its SW corner.

    The cornered cross's elbow points into the patch.  With
    ``forbid_cornered`` no cornered tile may be used anywhere.
    """
    centers = [t for t in universe() if not (forbid_cornered and t.cornered)]
    results = pmap(_forcing_job, [(c, forbid_cornered, budget) for c in centers], jobs)
    completions = [p for group in results for p in group]
    for p in completions:
        ok, v = validate(p)
        if not ok:
            raise AssertionError(f"forcing search produced an invalid patch: {v}")
    return ForcingResult(len(completions), tuple(completions))


# ---------------------------------------------------------------------------
# squares


class Square(NamedTuple):
    center: tuple  # cell-centre coordinates
    side: int
    corners: tuple


def _follow(patch, start, step, side, offset):
    """Walk from a cross along a rail until the next cross; distance or None."""
    (x, y), (dx, dy) = start, step
    i = 1
    while True:
        cell = (x + dx * i, y + dy * i)
        if cell not in patch.cells:
            return None
        t = patch.cells[cell]
        if t.kind == "cross":
            return i if t.edges[OPPOSITE[side]].rail == offset else None
        if t.edges[OPPOSITE[side]].rail != offset or t.edges[side].rail != offset:
            return None
        i += 1


def square_hierarchy(patch):
    """Squares outlined by rails, grouped by side length, checked disjoint."""
    m = patch.width
    if patch.height != m or (m + 1) & m or m < 3:
        raise StructureError("patch is not a generated block (side must be 2**(k+1) - 1)")
    ok, v = validate(patch)
    if not ok:
        raise StructureError(f"patch is not valid: {v}")
    if patch.cells[(m // 2, m // 2)].kind != "cross":
        raise StructureError("block centre is not a cross")
    squares = []
    for (x, y), t in sorted(patch.cells.items()):
        if t.elbow != "NE":
            continue
        right = _follow(patch, (x, y), (1, 0), E, "high")
        up = _follow(patch, (x, y), (0, 1), N, "high")
        if right is None or up is None or right != up:
            continue
        L = right
        far = patch.cells.get((x + L, y + L))
        if far is None or far.elbow != "SW":
            continue
        if _follow(patch, (x + L, y + L), (-1, 0), W, "low") != L:
            continue
        if _follow(patch, (x + L, y + L), (0, -1), S, "low") != L:
            continue
        corners = ((x, y), (x + L, y), (x + L, y + L), (x, y + L))
        squares.append(Square((x + L / 2, y + L / 2), L, corners))
    by_size = {}
    for sq in squares:
        by_size.setdefault(sq.side, []).append(sq)
    for side, group in by_size.items():
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                ax, ay = a.corners[0]
                bx, by = b.corners[0]
                if ax <= bx + side and bx <= ax + side and ay <= by + side and by <= ay + side:
                    raise StructureError(f"squares of side {side} at {a.center} and {b.center} overlap")
    return sorted(squares, key=lambda s: (s.side, s.center))


def square_outlines(squares):
    """Square outlines through cell centres, for SVG overlays."""
    return [[(x + 0.5, y + 0.5) for x, y in sq.corners] for sq in squares]


# ---------------------------------------------------------------------------
# flattening to Wang tiles


def _edge_token(label, parity, flip):
    contact = label.contact
    if flip:
        contact = "nick" if contact == "bump" else "bump"
    return f"{contact[0]}{label.rail[0] if label.rail else '-'}{parity}"


def wang_tileset():
    """Robinson tiles as Wang tiles, with parity tokens enforcing the corner rule.

    Cornered crosses take parity (0, 0); the other tiles take each of the
    three remaining classes.  Every label carries the parity of the cell
    below or left of the edge, so both coordinates alternate consistently.  North and east labels are written as seen from
    this tile, south and west ones with the contact flipped, so equal labels
    mean complementary contacts.
    """
    out = []
    for i, t in enumerate(universe()):
        parities = [(0, 0)] if t.cornered else [(0, 1), (1, 0), (1, 1)]
        for px, py in parities:
            e = t.edges
            out.append(
                WangTile(
                    f"{t.label()}@{px}{py}",
                    _edge_token(e[N], f"{px}{py}", False),
                    _edge_token(e[E], f"{px}{py}", False),
                    _edge_token(e[S], f"{px}{1 - py}", True),
                    _edge_token(e[W], f"{1 - px}{py}", True),
                )
            )
    return WangTileSet(out)


def from_wang_name(name):
    label = name.split("@")[0]
    base, orient = label.split("/")
    return RobinsonTile(base, int(orient[1]), orient.endswith("m"))
