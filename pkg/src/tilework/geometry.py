"""Planar primitives: exact pi-angles, isometries, polygon patches.

Patch validation works exactly when every coordinate is an ``int`` or a
``Fraction`` and falls back to tolerance tests for floating point input.
"""

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np
from scipy.optimize import root

DEFAULT_TOLERANCE = 1e-9
DEFAULT_FILL = "#dddddd"


class PatchInputError(ValueError):
    """A polygon in a patch is degenerate (zero area, repeated vertices)."""


class NumericFailure(ArithmeticError):
    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


# ---------------------------------------------------------------------------
# exact angles


@dataclass(frozen=True, order=False)
class PiAngle:
    """The angle ``(numerator / denominator) * pi``, kept in lowest terms."""

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        if self.denominator == 0:
            raise ZeroDivisionError("PiAngle denominator must be non-zero")
        f = Fraction(self.numerator, self.denominator)
        object.__setattr__(self, "numerator", f.numerator)
        object.__setattr__(self, "denominator", f.denominator)

    @classmethod
    def of(cls, value):
        """Build from a rational coefficient of pi."""
        f = Fraction(value)
        return cls(f.numerator, f.denominator)

    @classmethod
    def parse(cls, text):
        """Inverse of ``str``: ``"-2/3 π"``, ``"2 π"``, ``"0"``."""
        body = text.replace("π", "").replace("pi", "").strip()
        return cls.of(Fraction(body or "1"))

    @property
    def coefficient(self):
        return Fraction(self.numerator, self.denominator)

    def _coerce(self, other):
        if isinstance(other, PiAngle):
            return other.coefficient
        if other == 0:
            return Fraction(0)
        return NotImplemented

    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return PiAngle.of(self.coefficient + c)

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return PiAngle.of(self.coefficient - c)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return PiAngle.of(c - self.coefficient)

    def __neg__(self):
        return PiAngle.of(-self.coefficient)

    def __abs__(self):
        return PiAngle.of(abs(self.coefficient))

    def __mul__(self, k):
        if not isinstance(k, (int, Rational)):
            return NotImplemented
        return PiAngle.of(self.coefficient * k)

    __rmul__ = __mul__

    def __truediv__(self, k):
        if not isinstance(k, (int, Rational)):
            return NotImplemented
        return PiAngle.of(self.coefficient / k)

    def __lt__(self, other):
        return self.coefficient < self._coerce(other)

    def __le__(self, other):
        return self.coefficient <= self._coerce(other)

    def __gt__(self, other):
        return self.coefficient > self._coerce(other)

    def __ge__(self, other):
        return self.coefficient >= self._coerce(other)

    def __float__(self):
        return float(self.coefficient) * math.pi

    def sign(self):
        return (self.numerator > 0) - (self.numerator < 0)

    def __str__(self):
        if self.denominator == 1:
            return f"{self.numerator} π"
        return f"{self.numerator}/{self.denominator} π"


TWO_PI = PiAngle(2)


# ---------------------------------------------------------------------------
# isometries


def _cos_sin(theta):
    # quarter turns stay exact so rational coordinates remain rational
    q = theta / (math.pi / 2)
    k = round(q)
    if abs(q - k) < 1e-12:
        return ((1, 0), (0, 1), (-1, 0), (0, -1))[k % 4]
    return math.cos(theta), math.sin(theta)


@dataclass(frozen=True)
class Isometry:
    """``p -> R(rotation) . F(p) + translation``; ``F`` mirrors in the x-axis."""

    rotation: float = 0.0
    translation: tuple = (0, 0)
    reflected: bool = False

    def __call__(self, point):
        x, y = point
        if self.reflected:
            y = -y
        c, s = _cos_sin(self.rotation)
        tx, ty = self.translation
        return (c * x - s * y + tx, s * x + c * y + ty)

    def apply(self, points):
        return [self(p) for p in points]

    def compose(self, other):
        """``self ∘ other``: apply ``other`` first."""
        tx, ty = self(other.translation)
        if self.reflected:
            rot = self.rotation - other.rotation
        else:
            rot = self.rotation + other.rotation
        return Isometry(rot, (tx, ty), self.reflected != other.reflected)

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self):
        if self.reflected:
            rot = self.rotation
        else:
            rot = -self.rotation
        head = Isometry(rot, (0, 0), self.reflected)
        tx, ty = head(self.translation)
        return Isometry(rot, (-tx, -ty), self.reflected)

    def scaled(self, factor):
        """Conjugate by the dilation ``p -> factor * p``."""
        tx, ty = self.translation
        return Isometry(self.rotation, (tx * factor, ty * factor), self.reflected)

    def to_json(self):
        return {
            "rotation": self.rotation,
            "translation": [float(self.translation[0]), float(self.translation[1])],
            "reflect": self.reflected,
        }


IDENTITY = Isometry()


# ---------------------------------------------------------------------------
# polygons and patches


def signed_area(poly):
    n = len(poly)
    total = 0
    for i in range(n):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % n]
        total += x0 * y1 - x1 * y0
    return total / 2


def polygon_area(poly):
    return abs(signed_area(poly))


def centroid(poly):
    a = signed_area(poly)
    cx = cy = 0
    n = len(poly)
    for i in range(n):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % n]
        w = x0 * y1 - x1 * y0
        cx += (x0 + x1) * w
        cy += (y0 + y1) * w
    return (cx / (6 * a), cy / (6 * a))


def is_exact(value):
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def _orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _segments_cross(p1, p2, q1, q2, eps):
    d1 = _orient(q1, q2, p1)
    d2 = _orient(q1, q2, p2)
    d3 = _orient(p1, p2, q1)
    d4 = _orient(p1, p2, q2)
    return ((d1 > eps and d2 < -eps) or (d1 < -eps and d2 > eps)) and (
        (d3 > eps and d4 < -eps) or (d3 < -eps and d4 > eps)
    )


def is_simple(poly, eps=0):
    n = len(poly)
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if _segments_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n], eps):
                return False
    return True


@dataclass(frozen=True)
class PolygonPatch:
    """A finite collection of labelled polygons, stored counterclockwise."""

    tiles: tuple

    def __init__(self, tiles):
        fixed = []
        for poly, label in tiles:
            poly = tuple(tuple(p) for p in poly)
            if signed_area(poly) < 0:
                poly = poly[::-1]
            fixed.append((poly, str(label)))
        object.__setattr__(self, "tiles", tuple(fixed))

    def __len__(self):
        return len(self.tiles)

    def __iter__(self):
        return iter(self.tiles)

    @property
    def polygons(self):
        return [poly for poly, _ in self.tiles]

    @property
    def labels(self):
        return [label for _, label in self.tiles]

    def transformed(self, iso):
        return PolygonPatch([(iso.apply(poly), label) for poly, label in self.tiles])

    def area(self):
        return sum(polygon_area(p) for p in self.polygons)

    def bbox(self):
        xs = [p[0] for poly in self.polygons for p in poly]
        ys = [p[1] for poly in self.polygons for p in poly]
        return min(xs), min(ys), max(xs), max(ys)

    def to_json(self):
        return {
            "tiles": [
                {"label": label, "vertices": [[_jnum(x), _jnum(y)] for x, y in poly]}
                for poly, label in self.tiles
            ]
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls([(t["vertices"], t.get("label", "")) for t in data["tiles"]])


def _jnum(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else float(v)
    return v


@dataclass(frozen=True)
class PatchVerdict:
    kind: str  # "valid" | "overlap" | "gap"
    indices: tuple = ()
    point: tuple = None

    @property
    def valid(self):
        return self.kind == "valid"

    def __bool__(self):
        return self.valid

    def __str__(self):
        if self.kind == "overlap":
            return "overlap({},{})".format(*self.indices)
        if self.kind == "gap":
            return "gap({:.6g},{:.6g})".format(*map(float, self.point))
        return "valid"


def triangulate(poly, eps=0):
    """Ear clipping for a simple counterclockwise polygon."""
    pts = list(poly)
    tris = []
    guard = 0
    while len(pts) > 3:
        n = len(pts)
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            turn = _orient(a, b, c)
            if abs(turn) <= eps:
                # collinear vertex carries no area
                del pts[i]
                break
            if turn < 0:
                continue
            if any(
                _in_triangle(p, a, b, c, eps)
                for p in pts
                if p is not a and p is not b and p is not c and p not in (a, b, c)
            ):
                continue
            tris.append((a, b, c))
            del pts[i]
            break
        else:
            guard += 1
            if guard > 2:
                raise PatchInputError("polygon could not be triangulated; is it simple?")
    if len(pts) == 3 and abs(_orient(*pts)) > eps:
        tris.append(tuple(pts))
    return tris


def _in_triangle(p, a, b, c, eps):
    return _orient(a, b, p) >= -eps and _orient(b, c, p) >= -eps and _orient(c, a, p) >= -eps


def _clip(subject, clipper):
    """Sutherland-Hodgman: subject polygon clipped by a convex ccw clipper."""
    out = list(subject)
    m = len(clipper)
    for i in range(m):
        if not out:
            break
        a, b = clipper[i], clipper[(i + 1) % m]
        inp, out = out, []
        for j in range(len(inp)):
            p, q = inp[j - 1], inp[j]
            pin = _orient(a, b, p) >= 0
            qin = _orient(a, b, q) >= 0
            if qin:
                if not pin:
                    out.append(_intersect(p, q, a, b))
                out.append(q)
            elif pin:
                out.append(_intersect(p, q, a, b))
    return out


def _intersect(p, q, a, b):
    d1 = _orient(a, b, p)
    d2 = _orient(a, b, q)
    t = d1 / (d1 - d2)
    return (p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t)


def overlap_area(tris_a, tris_b):
    total = 0
    for ta in tris_a:
        for tb in tris_b:
            if not _bbox_hit(_bbox(ta), _bbox(tb), 0):
                continue
            clipped = _clip(ta, tb)
            if len(clipped) >= 3:
                total += polygon_area(clipped)
    return total


def _bbox(poly):
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    return min(xs), min(ys), max(xs), max(ys)


def _bbox_hit(a, b, eps):
    return a[0] < b[2] - eps and b[0] < a[2] - eps and a[1] < b[3] - eps and b[1] < a[3] - eps


def _key(p, exact):
    if exact:
        return (Fraction(p[0]), Fraction(p[1]))
    return (round(float(p[0]), 7) + 0.0, round(float(p[1]), 7) + 0.0)


def _check_polygon(poly, eps, exact):
    if len(poly) < 3:
        raise PatchInputError("polygon needs at least three vertices")
    keys = [_key(p, exact) for p in poly]
    if len(set(keys)) != len(keys):
        raise PatchInputError(f"polygon has duplicate vertices: {poly}")
    if polygon_area(poly) <= eps:
        raise PatchInputError(f"polygon has zero area: {poly}")


def _boundary_loops(polys, exact, eps):
    """Directed boundary pieces left after cancelling shared edges, as loops."""
    points = {}
    for poly in polys:
        for p in poly:
            points.setdefault(_key(p, exact), p)
    # bucket vertices for the segment splitting pass
    cell = None
    if not exact:
        xs = [float(p[0]) for p in points.values()]
        span = (max(xs) - min(xs)) if xs else 1.0
        cell = max(span / max(1, int(math.sqrt(len(points)))), 1e-6)
    buckets = {}
    if cell is not None:
        for k, p in points.items():
            buckets.setdefault((math.floor(float(p[0]) / cell), math.floor(float(p[1]) / cell)), []).append(k)

    def candidates(a, b):
        if cell is None:
            return points.keys()
        x0, x1 = sorted((float(a[0]), float(b[0])))
        y0, y1 = sorted((float(a[1]), float(b[1])))
        out = []
        for i in range(math.floor(x0 / cell) - 1, math.floor(x1 / cell) + 2):
            for j in range(math.floor(y0 / cell) - 1, math.floor(y1 / cell) + 2):
                out.extend(buckets.get((i, j), ()))
        return out

    count = {}
    for poly in polys:
        n = len(poly)
        for i in range(n):
            a, b = poly[i], poly[(i + 1) % n]
            ka, kb = _key(a, exact), _key(b, exact)
            dx, dy = b[0] - a[0], b[1] - a[1]
            length2 = dx * dx + dy * dy
            inner = []
            for k in candidates(a, b):
                if k == ka or k == kb:
                    continue
                p = points[k]
                cross = dx * (p[1] - a[1]) - dy * (p[0] - a[0])
                if exact:
                    if cross != 0:
                        continue
                elif abs(cross) > eps * math.sqrt(length2) + 1e-9:
                    continue
                t = (dx * (p[0] - a[0]) + dy * (p[1] - a[1])) / length2
                if (exact and 0 < t < 1) or (not exact and 1e-9 < t < 1 - 1e-9):
                    inner.append((t, k))
            chain = [ka] + [k for _, k in sorted(inner)] + [kb]
            for u, v in zip(chain, chain[1:]):
                if count.get((v, u), 0) > 0:
                    count[(v, u)] -= 1
                    if not count[(v, u)]:
                        del count[(v, u)]
                else:
                    count[(u, v)] = count.get((u, v), 0) + 1
    outgoing = {}
    for (u, v), c in sorted(count.items()):
        for _ in range(c):
            outgoing.setdefault(u, []).append(v)
    loops = []
    while outgoing:
        start = min(outgoing)
        loop = [start]
        cur = start
        while True:
            nxt = outgoing[cur].pop()
            if not outgoing[cur]:
                del outgoing[cur]
            if nxt == start:
                break
            loop.append(nxt)
            cur = nxt
            if cur not in outgoing:
                break
        loops.append([points[k] for k in loop])
    return loops


def _interior_point(poly):
    if signed_area(poly) < 0:
        poly = poly[::-1]
    c = centroid(poly)
    tris = triangulate(poly)
    if tris and any(_in_triangle(c, *t, 0) for t in tris):
        return c
    if not tris:
        return c
    best = max(tris, key=polygon_area)
    return centroid(best)


def validate_patch(patch, tolerance=DEFAULT_TOLERANCE, region=None):
    """Check that the tiles of ``patch`` have disjoint interiors and no holes.

    With ``region`` (a polygon) the tiles must also cover exactly that region.
    Returns a :class:`PatchVerdict`.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    polys = patch.polygons
    exact = all(is_exact(c) for poly in polys for p in poly for c in p)
    if region is not None:
        exact = exact and all(is_exact(c) for p in region for c in p)
    eps = 0 if exact else tolerance
    for poly in polys:
        _check_polygon(poly, eps, exact)

    tris = [triangulate(p, eps) for p in polys]
    boxes = [_bbox(p) for p in polys]
    order = sorted(range(len(polys)), key=lambda i: boxes[i][0])
    for pos, i in enumerate(order):
        for j in order[pos + 1:]:
            if boxes[j][0] >= boxes[i][2] - eps:
                break
            if not _bbox_hit(boxes[i], boxes[j], eps):
                continue
            if overlap_area(tris[i], tris[j]) > eps:
                return PatchVerdict("overlap", tuple(sorted((i, j))))

    pieces = list(polys)
    if region is not None:
        region = [tuple(p) for p in region]
        if signed_area(region) > 0:
            region = region[::-1]
        pieces.append(region)
    loops = _boundary_loops(pieces, exact, eps)
    bad = [loop for loop in loops if len(loop) >= 3 and abs(signed_area(loop)) > eps]
    if region is None:
        bad = [loop for loop in bad if signed_area(loop) < 0]
    if bad:
        worst = max(bad, key=lambda loop: abs(signed_area(loop)))
        return PatchVerdict("gap", (), _interior_point(worst))
    return PatchVerdict("valid")


# ---------------------------------------------------------------------------
# Livio's pentagon

_VERTEX_NAMES = "ABCDE"


def livio_angles(d, spread):
    """Angles (A..E) left free by the three vertex relations."""
    return (
        math.pi - d,
        math.pi - d + spread / 2,
        math.pi - d - spread / 2,
        d,
        2 * d,
    )


def _closure(angles):
    heading = 0.0
    total = 0j
    for a in angles:
        heading += math.pi - a
        total += cmath.exp(1j * heading)
    return total


def unit_pentagon(angles):
    """Vertices of the unit-edge pentagon with the given interior angles."""
    pts = [(0.0, 0.0)]
    heading = 0.0
    x = y = 0.0
    for a in angles[1:]:
        x += math.cos(heading)
        y += math.sin(heading)
        pts.append((x, y))
        heading += math.pi - a
    return pts


@dataclass(frozen=True)
class LivioPentagon:
    angles: tuple
    vertices: tuple
    residual: float

    def as_dict(self):
        return dict(zip(_VERTEX_NAMES, self.angles))


def solve_livio_pentagon(tolerance=DEFAULT_TOLERANCE):
    """The non-convex equilateral pentagon with 2A+E = B+C+2D = B+C+E = 2π.

    Unknowns are D and B-C; the remaining angles follow exactly from the
    relations and the closing condition fixes both unknowns.
    """
    if not 0 < tolerance <= 1e-3:
        raise ValueError("tolerance must lie in (0, 1e-3]")

    def residual(p):
        z = _closure(livio_angles(*p))
        return [z.real, z.imag]

    found = []
    worst = math.inf
    for d0 in np.linspace(0.1, 1.5, 8):
        for s0 in np.linspace(-3.0, 3.0, 9):
            sol = root(residual, [d0, s0], method="hybr", tol=1e-14)
            r = math.hypot(*residual(sol.x))
            worst = min(worst, r)
            if not sol.success or r > tolerance:
                continue
            angles = livio_angles(*sol.x)
            if not all(0 < a < 2 * math.pi for a in angles):
                continue
            if not any(a > math.pi + 1e-6 for a in angles):
                continue
            if not is_simple(unit_pentagon(angles), 1e-12):
                continue
            if not any(np.allclose(angles, f, atol=1e-7) for f in found):
                found.append(angles)
    if not found:
        raise NumericFailure("no non-convex solution converged", worst)
    if len(found) > 1:
        raise NumericFailure(f"{len(found)} distinct non-convex solutions", 0.0)
    angles = tuple(float(a) for a in found[0])
    return LivioPentagon(angles, tuple(unit_pentagon(angles)), abs(_closure(angles)))


# ---------------------------------------------------------------------------
# SVG


def _fmt(v):
    s = f"{float(v):.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(patch, style=None, overlays=(), scale=40.0, stroke="#333333"):
    """SVG 1.1 text for ``patch``; one ``path`` per tile, y axis pointing up.

    ``style`` maps labels to fill colours, missing labels get DEFAULT_FILL.
    ``overlays`` is a sequence of point lists drawn as closed polylines.
    """
    if not len(patch):
        raise ValueError("cannot render an empty patch")
    style = style or {}
    x0, y0, x1, y1 = (float(v) for v in patch.bbox())
    pad = 0.05 * max(x1 - x0, y1 - y0, 1e-9)
    width = (x1 - x0 + 2 * pad) * scale
    height = (y1 - y0 + 2 * pad) * scale

    def tx(p):
        return (float(p[0]) - x0 + pad) * scale, (y1 + pad - float(p[1])) * scale

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
    ]
    sw = _fmt(max(0.5, scale / 40))
    for poly, label in patch.tiles:
        pts = [tx(p) for p in poly]
        d = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in pts) + " Z"
        fill = style.get(label, DEFAULT_FILL)
        lines.append(f'<path d="{d}" fill="{fill}" stroke="{stroke}" stroke-width="{sw}"/>')
    for ring in overlays:
        pts = [tx(p) for p in ring]
        pts.append(pts[0])
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        lines.append(f'<polyline points="{coords}" fill="none" stroke="#c0392b" stroke-width="{sw}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
