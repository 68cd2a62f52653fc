"""Derive child placements for the shipped substitution rules.

Each inflated prototile is filled with copies of the prototiles by a
corner-filling search: the lowest-leftmost corner of the uncovered region
must be a corner of some tile, with one tile edge running along the region's
outgoing boundary edge.  The first tiling found is written to
``src/tilework/data/substitutions.json``.

Needs shapely (a dev dependency only).
"""

import json
import math
from fractions import Fraction
from pathlib import Path

from shapely.geometry import Polygon
from shapely.geometry.polygon import orient

EPS = 1e-9
PHI = (1 + 5**0.5) / 2
H = 3**0.5 / 2
OUT = Path(__file__).resolve().parents[1] / "src" / "tilework" / "data" / "substitutions.json"


def iso_tri(base, leg):
    return [(0, 0), (base, 0), (base / 2, math.sqrt(leg * leg - base * base / 4))]


def tri(a, b, base):
    """Triangle on ``base`` with base angles ``a`` and ``b`` in degrees."""
    a, b = math.radians(a), math.radians(b)
    side = base * math.sin(b) / math.sin(a + b)
    return [(0, 0), (base, 0), (side * math.cos(a), side * math.sin(a))]


SYSTEMS = {
    "chair": dict(scale=2, scale_expr="2", tiles={"chair": [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]}),
    "sphinx": dict(scale=2, scale_expr="2", tiles={"sphinx": [(0, 0), (3, 0), (2.5, H), (1.5, H), (1, 2 * H)]}),
    "pinwheel": dict(scale=5**0.5, scale_expr="sqrt(5)", tiles={"pinwheel": [(0, 0), (2, 0), (2, 1)]}),
    "dimer": dict(scale=2, scale_expr="2", tiles={"dimer": [(0, 0), (2, 0), (2, 1), (0, 1)]}),
    "half-hex": dict(scale=2, scale_expr="2", tiles={"half-hex": [(0, 0), (2, 0), (1.5, H), (0.5, H)]}),
    "gold": dict(
        scale=PHI,
        scale_expr="(1+sqrt(5))/2",
        tiles={"gold-acute": iso_tri(1, PHI), "gold-obtuse": iso_tri(PHI, 1)},
    ),
    "silver": dict(
        scale=1 + 2**0.5,
        scale_expr="1+sqrt(2)",
        tiles={
            "silver-right": [(0, 0), (2**0.5, 0), (2**0.5 / 2, 2**0.5 / 2)],
            "silver-narrow": tri(22.5, 67.5, 2**0.5),
        },
    ),
    # halves of the fat and thin rhombs; whole rhombs do not subdivide into rhombs
    "penrose-rhombs": dict(
        scale=PHI,
        scale_expr="(1+sqrt(5))/2",
        tiles={"fat": iso_tri(PHI, 1), "thin": iso_tri(1 / PHI, 1)},
    ),
}


def transform(pts, rot, t, refl):
    c, s = math.cos(rot), math.sin(rot)
    out = []
    for x, y in pts:
        if refl:
            y = -y
        out.append((c * x - s * y + t[0], s * x + c * y + t[1]))
    return out


def corner_angle(pts, i):
    """Interior angle at vertex i of a CCW polygon."""
    ax, ay = pts[i - 1]
    bx, by = pts[i]
    cx, cy = pts[(i + 1) % len(pts)]
    a1 = math.atan2(ay - by, ax - bx)
    a2 = math.atan2(cy - by, cx - bx)
    return (a1 - a2) % (2 * math.pi)


def pieces(geom):
    if geom.is_empty:
        return []
    if geom.geom_type == "Polygon":
        return [geom] if geom.area > EPS else []
    return [g for g in geom.geoms if g.geom_type == "Polygon" and g.area > EPS]


def clean_ring(coords):
    pts = list(coords)[:-1]
    out = []
    for p in pts:
        if not out or math.dist(out[-1], p) > 1e-7:
            out.append(p)
    if len(out) > 1 and math.dist(out[0], out[-1]) <= 1e-7:
        out.pop()
    # drop straight-through vertices and zero-width spikes
    changed = True
    while changed and len(out) > 3:
        changed = False
        for i in range(len(out)):
            a = corner_angle(out, i)
            if abs(a - math.pi) < 1e-7 or a < 1e-7 or a > 2 * math.pi - 1e-7:
                out.pop(i)
                changed = True
                break
    return out


def fill(region, tiles, allow_reflect, depth=0):
    parts = pieces(region)
    if not parts:
        return []
    # lowest-leftmost vertex over all exterior rings
    best = None
    for part in parts:
        ring = clean_ring(orient(part, 1.0).exterior.coords)
        for i, p in enumerate(ring):
            key = (round(p[1], 7), round(p[0], 7))
            if best is None or key < best[0]:
                best = (key, ring, i)
    _, ring, i = best
    v = ring[i]
    nxt = ring[(i + 1) % len(ring)]
    beta = math.atan2(nxt[1] - v[1], nxt[0] - v[0])
    room = corner_angle(ring, i)
    for name, proto in tiles.items():
        for refl in (False, True) if allow_reflect else (False,):
            base = transform(proto, 0, (0, 0), refl)
            order = list(range(len(base)))
            if refl:
                order.reverse()
            q = [base[k] for k in order]
            for j in range(len(q)):
                if corner_angle(q, j) > room + 1e-7:
                    continue
                e = (q[(j + 1) % len(q)][0] - q[j][0], q[(j + 1) % len(q)][1] - q[j][1])
                rot = beta - math.atan2(e[1], e[0])
                # snap to a multiple of 7.5 degrees when close
                step = math.pi / 24
                if abs(rot / step - round(rot / step)) < 1e-9:
                    rot = round(rot / step) * step
                rot %= 2 * math.pi
                c, s = math.cos(rot), math.sin(rot)
                qx, qy = q[j]
                t = (v[0] - (c * qx - s * qy), v[1] - (s * qx + c * qy))
                placed = Polygon(transform(proto, rot, t, refl))
                if placed.difference(region).area > 1e-9:
                    continue
                rest = region.difference(placed)
                sol = fill(rest, tiles, allow_reflect, depth + 1)
                if sol is not None:
                    return [(name, rot, t, refl)] + sol
    return None


def nice(x):
    """Small rationals exactly, everything else as a float."""
    f = Fraction(x).limit_denominator(64)
    if abs(float(f) - x) < 1e-12:
        return f.numerator if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    return x


def derive(name, spec):
    lam = spec["scale"]
    tiles = spec["tiles"]
    allow_reflect = True
    rules = {}
    for pname, proto in tiles.items():
        parent = Polygon([(lam * x, lam * y) for x, y in proto])
        sol = fill(parent, tiles, allow_reflect=False)
        if sol is None:
            sol = fill(parent, tiles, allow_reflect)
        if sol is None:
            raise SystemExit(f"{name}/{pname}: no subdivision found")
        rules[pname] = [
            {
                "tile": child,
                "rotation": nice(math.degrees(rot) % 360),
                "translation": [nice(t[0]), nice(t[1])],
                "reflect": refl,
            }
            for child, rot, t, refl in sol
        ]
    return {
        "scale": spec["scale_expr"],
        "reflections": any(c["reflect"] for r in rules.values() for c in r),
        "prototiles": {k: [[nice(x), nice(y)] for x, y in v] for k, v in tiles.items()},
        "rules": rules,
    }


def main():
    data = {}
    for name, spec in SYSTEMS.items():
        data[name] = derive(name, spec)
        counts = {p: len(r) for p, r in data[name]["rules"].items()}
        print(name, counts, "reflections" if data[name]["reflections"] else "")
    OUT.write_text(json.dumps(data, indent=1) + "\n")


if __name__ == "__main__":
    main()
