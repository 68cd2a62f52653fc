"""Combinatorial imbalance of tiles and configurations, and Euler's formula.

A tile whose corners have valences ``q_1..q_n`` (tiles meeting there) has
imbalance ``sum(2 pi / q_i) - (n - 2) pi``.  A configuration is a disk cut
into tiles; its imbalance uses the same formula on its boundary, where a
boundary vertex met by ``k`` tiles of the configuration has valence angle
``k * 2 pi / q``.  The Tiling Lemma says the two sides always agree.

Valences come in two flavours, chosen explicitly:

``ambient``
    ``q`` is the valence in the surrounding tessellation (given per vertex).
``patch``
    only the configuration counts: ``q = k`` inside, ``q = k + 1`` on the
    boundary, as if the outside were one more tile.

All values are exact :class:`PiAngle` instances.
"""

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import PiAngle

AMBIENT = "ambient"
PATCH = "patch"
MAX_TILES = 10**6


class TopologyError(ValueError):
    """The map is not a topological disk cut into disks."""


def _valence_angle(q):
    if q < 2:
        raise ValueError(f"valence must be >= 2, got {q}")
    return PiAngle(Fraction(2, q))


def tile_imbalance(valences):
    valences = list(valences)
    if len(valences) < 3:
        raise ValueError("a tile needs at least three corners")
    total = PiAngle(0)
    for q in valences:
        if int(q) != q:
            raise ValueError(f"valences are integers, got {q}")
        total = total + _valence_angle(int(q))
    return total - PiAngle(len(valences) - 2)


def classify_vertex_uniform(n, q):
    """``(kind, imbalance)`` for tiles with ``n`` neighbours, ``q`` at every vertex."""
    if n < 3 or q < 3:
        raise ValueError("need n >= 3 and q >= 3")
    k = tile_imbalance([q] * n)
    if k.sign() == 0:
        return "flat", k
    return ("elliptic" if k.sign() > 0 else "hyperbolic"), k


@dataclass
class MapConfiguration:
    faces: list  # vertex-id cycles, counterclockwise
    valences: dict = None  # ambient valence per vertex; None means patch mode
    positions: dict = field(default_factory=dict)
    labels: list = None

    def __post_init__(self):
        self.faces = [tuple(f) for f in self.faces]
        self._check()

    @property
    def mode(self):
        return PATCH if self.valences is None else AMBIENT

    @property
    def vertices(self):
        return sorted(self._corners, key=repr)

    @property
    def edges(self):
        return sorted(self._edges, key=repr)

    @property
    def boundary(self):
        return list(self._boundary)

    def euler(self):
        return len(self._corners) - len(self._edges) + len(self.faces)

    def counts(self):
        return len(self._corners), len(self._edges), len(self.faces)

    def _check(self):
        if not self.faces:
            raise TopologyError("configuration has no tiles")
        directed = {}
        corners = {}
        for i, f in enumerate(self.faces):
            if len(f) < 3 or len(set(f)) != len(f):
                raise TopologyError(f"tile {i} is not a simple cycle")
            for j, v in enumerate(f):
                w = f[(j + 1) % len(f)]
                if (v, w) in directed:
                    raise TopologyError(f"edge {v}->{w} used twice in one direction (tiles {directed[(v, w)]}, {i})")
                directed[(v, w)] = i
                corners[v] = corners.get(v, 0) + 1
        self._corners = corners
        self._edges = {frozenset(e) for e in directed}
        nxt = {}
        for v, w in directed:
            if (w, v) not in directed:
                if v in nxt:
                    raise TopologyError(f"boundary pinches at vertex {v}")
                nxt[v] = w
        if not nxt:
            raise TopologyError("configuration has no boundary")
        start = min(nxt, key=repr)
        cycle = [start]
        while True:
            w = nxt[cycle[-1]]
            if w == start:
                break
            if len(cycle) > len(nxt):
                raise TopologyError("boundary does not close")
            cycle.append(w)
        if len(cycle) != len(nxt):
            raise TopologyError("boundary has more than one component")
        self._boundary = cycle
        # connectivity through shared edges
        parent = list(range(len(self.faces)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for (v, w), i in directed.items():
            j = directed.get((w, v))
            if j is not None:
                parent[find(i)] = find(j)
        if len({find(i) for i in range(len(self.faces))}) != 1:
            raise TopologyError("configuration is not connected")
        if self.euler() != 1:
            raise TopologyError(f"v - e + f = {self.euler()}, not 1")
        if self.valences is not None:
            on_boundary = set(cycle)
            for v, k in corners.items():
                q = self.valences.get(v)
                if q is None:
                    raise TopologyError(f"no ambient valence for vertex {v}")
                if k > q or (v not in on_boundary and k != q):
                    raise TopologyError(f"vertex {v}: {k} tiles here but ambient valence {q}")

    def valence(self, v):
        """Valence a tile sees at vertex ``v``."""
        k = self._corners[v]
        if self.valences is not None:
            return self.valences[v]
        return k + 1 if v in set(self._boundary) else k

    def face_valences(self, i):
        return [self.valence(v) for v in self.faces[i]]

    def to_json(self):
        ids = {v: str(n) for n, v in enumerate(self.vertices)}
        out = {"faces": [[ids[v] for v in f] for f in self.faces]}
        if self.positions:
            out["vertices"] = {ids[v]: list(map(float, self.positions[v])) for v in self.vertices if v in self.positions}
        if self.valences is not None:
            out["valences"] = {ids[v]: self.valences[v] for v in self.vertices}
        if self.labels:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        faces = [[str(v) for v in f] for f in data["faces"]]
        positions = {str(k): tuple(v) for k, v in data.get("vertices", {}).items()}
        valences = data.get("valences")
        if valences is not None:
            valences = {str(k): int(v) for k, v in valences.items()}
        return cls(faces, valences, positions, data.get("labels"))


def configuration_imbalance(c):
    """From the boundary alone: valence angles minus ``(n - 2) pi``."""
    total = PiAngle(0)
    for v in c.boundary:
        total = total + _valence_angle(c.valence(v)) * c._corners[v]
    return total - PiAngle(len(c.boundary) - 2)


@dataclass(frozen=True)
class LemmaReport:
    lhs: PiAngle
    rhs: PiAngle
    boundary: int

    @property
    def equal(self):
        return self.lhs == self.rhs

    @property
    def bound_ok(self):
        return abs(self.lhs - PiAngle(2)) < PiAngle(self.boundary)

    def as_dict(self):
        return {"lhs": str(self.lhs), "rhs": str(self.rhs), "equal": self.equal, "bound_ok": self.bound_ok}


def verify_lemma(c):
    rhs = PiAngle(0)
    for i in range(len(c.faces)):
        rhs = rhs + tile_imbalance(c.face_valences(i))
    return LemmaReport(configuration_imbalance(c), rhs, len(c.boundary))


# ---------------------------------------------------------------------------
# periodic tessellations
#
# Vertex keys are exact: integers for the square grid, triangular-lattice
# coordinates for hexagons, and (p, q, r, s) = ((p + q sqrt2) / 2,
# (r + s sqrt2) / 2) for octagons and squares.

SQRT2 = math.sqrt(2)
SQRT3 = math.sqrt(3)


class Tessellation:
    name = None
    valence = None

    def tiles_near(self, cx, cy, r):
        """``(label, keys)`` for tiles whose bounding circle meets the disk."""
        raise NotImplementedError

    def position(self, key):
        raise NotImplementedError


class SquareGrid(Tessellation):
    name = "square"
    valence = 4

    def tiles_near(self, cx, cy, r):
        for i in range(math.floor(cx - r) - 1, math.ceil(cx + r) + 1):
            for j in range(math.floor(cy - r) - 1, math.ceil(cy + r) + 1):
                yield "square", [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]

    def position(self, key):
        return float(key[0]), float(key[1])


class HexGrid(Tessellation):
    name = "hexagon"
    valence = 3
    _RING = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))

    def position(self, key):
        u, v = key
        return u + v / 2, v * SQRT3 / 2

    def tiles_near(self, cx, cy, r):
        vv = cy * 2 / SQRT3
        uu = cx - vv / 2
        span = int(r * 1.5) + 3
        for u in range(int(uu) - span, int(uu) + span + 1):
            for v in range(int(vv) - span, int(vv) + span + 1):
                if (u - v) % 3:
                    continue
                yield "hexagon", [(u + du, v + dv) for du, dv in self._RING]


class OctagonSquare(Tessellation):
    """Octagons of edge 1 centred on the lattice ``(1 + sqrt2) Z^2``, squares between."""

    name = "octagon-square"
    valence = 3

    def position(self, key):
        p, q, r, s = key
        return (p + q * SQRT2) / 2, (r + s * SQRT2) / 2

    @staticmethod
    def _pt(cx, cy, dx, dy):
        # centre (cx, cy) in half-units of (1 + sqrt2); offsets as (p, q) half-unit pairs
        return (2 * cx + dx[0], 2 * cx + dx[1], 2 * cy + dy[0], 2 * cy + dy[1])

    def octagon(self, i, j):
        h, a = (1, 0), (1, 1)  # 1/2 and (1 + sqrt2)/2
        neg = lambda t: (-t[0], -t[1])  # noqa: E731
        offs = [(a, neg(h)), (a, h), (h, a), (neg(h), a), (neg(a), h), (neg(a), neg(h)), (neg(h), neg(a)), (h, neg(a))]
        return [self._pt(i, j, dx, dy) for dx, dy in offs]

    def square(self, i, j):
        # square centred at (i + 1/2, j + 1/2) * (1 + sqrt2)
        o, e, n = self.octagon(i, j), self.octagon(i + 1, j), self.octagon(i, j + 1)
        return [o[1], e[3], n[0], o[2]]

    def tiles_near(self, cx, cy, r):
        a = 1 + SQRT2
        lo_i, hi_i = math.floor((cx - r) / a) - 1, math.ceil((cx + r) / a) + 1
        lo_j, hi_j = math.floor((cy - r) / a) - 1, math.ceil((cy + r) / a) + 1
        for i in range(lo_i, hi_i + 1):
            for j in range(lo_j, hi_j + 1):
                yield "octagon", self.octagon(i, j)
                yield "square", self.square(i, j)


TESSELLATIONS = {t.name: t for t in (SquareGrid(), HexGrid(), OctagonSquare())}


def tessellation(name):
    try:
        return TESSELLATIONS[name]
    except KeyError:
        raise KeyError(f"unknown tessellation {name!r}; have {sorted(TESSELLATIONS)}") from None


def _dist_to_polygon(pt, poly):
    x, y = pt
    inside = False
    best = math.inf
    n = len(poly)
    for k in range(n):
        (x0, y0), (x1, y1) = poly[k], poly[(k + 1) % n]
        if (y0 > y) != (y1 > y) and x < x0 + (y - y0) * (x1 - x0) / (y1 - y0):
            inside = not inside
        dx, dy = x1 - x0, y1 - y0
        t = max(0.0, min(1.0, ((x - x0) * dx + (y - y0) * dy) / (dx * dx + dy * dy)))
        best = min(best, math.hypot(x - x0 - t * dx, y - y0 - t * dy))
    return 0.0 if inside else best


def disk_configuration(tess, r, center=(0.0, 0.0), mode=AMBIENT, max_tiles=MAX_TILES):
    """Tiles whose closure meets the closed disk, as a map configuration."""
    if isinstance(tess, str):
        tess = tessellation(tess)
    if r < 0:
        raise ValueError("radius must be non-negative")
    # rough tile count guard before building anything
    if math.pi * (r + 3) ** 2 > max_tiles:
        raise ValueError(f"radius {r} exceeds the tile budget of {max_tiles}")
    faces, labels, positions = [], [], {}
    seen = set()
    for label, keys in tess.tiles_near(center[0], center[1], r):
        key = frozenset(keys)
        if key in seen:
            continue
        seen.add(key)
        pts = [tess.position(k) for k in keys]
        if _dist_to_polygon(center, pts) <= r + 1e-12:
            faces.append(keys)
            labels.append(label)
            positions.update(zip(keys, pts))
    valences = None if mode == PATCH else {v: tess.valence for v in positions}
    return MapConfiguration(faces, valences, positions, labels)


def average_imbalance_series(tess, radii, center=(0.0, 0.0)):
    """``(r, N_r, |K_r| / N_r, K_r)`` per radius; ``K_r`` is exact."""
    if isinstance(tess, str):
        tess = tessellation(tess)
    out = []
    for r in radii:
        c = disk_configuration(tess, r, center, AMBIENT)
        k = configuration_imbalance(c)
        n = len(c.faces)
        out.append((r, n, abs(float(k)) / n, k))
    return out


def random_configuration(tess, rng=None, mode=None, max_radius=6.0):
    """A random disk configuration (random centre and radius) for property tests."""
    rng = rng or random.Random()
    if isinstance(tess, str):
        tess = tessellation(tess)
    mode = mode or rng.choice([AMBIENT, PATCH])
    center = (rng.uniform(-5, 5), rng.uniform(-5, 5))
    r = rng.uniform(0.0, max_radius)
    return disk_configuration(tess, r, center, mode)


def find_configuration(tess, v, e, f, radii=None, centers=None):
    """First disk configuration with the given counts, or None."""
    if isinstance(tess, str):
        tess = tessellation(tess)
    radii = radii or [x / 20 for x in range(1, 200)]
    centers = centers or [(0.0, 0.0)]
    for c in centers:
        for r in radii:
            try:
                conf = disk_configuration(tess, r, c)
            except TopologyError:
                continue
            if conf.counts() == (v, e, f):
                return conf
    return None


def octagon_square_block(octagons, squares, mode=AMBIENT):
    """Configuration from explicit octagon and square lattice indices.

    Octagon ``(i, j)`` is centred at ``(i, j) * (1 + sqrt2)``; square
    ``(i, j)`` sits up and to the right of it.
    """
    t = TESSELLATIONS["octagon-square"]
    faces = [t.octagon(i, j) for i, j in octagons] + [t.square(i, j) for i, j in squares]
    labels = ["octagon"] * len(octagons) + ["square"] * len(squares)
    positions = {k: t.position(k) for f in faces for k in f}
    valences = None if mode == PATCH else {k: t.valence for k in positions}
    return MapConfiguration(faces, valences, positions, labels)


def euler_fixture(mode=AMBIENT):
    """Two columns of seven octagons flanked by three columns of squares.

    91 vertices, 125 edges, 35 tiles (14 octagons, 21 squares).
    """
    octagons = [(i, j) for i in range(2) for j in range(7)]
    squares = [(i, j) for i in range(-1, 2) for j in range(7)]
    return octagon_square_block(octagons, squares, mode)
