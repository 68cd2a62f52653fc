"""Independent reference values, computed without the tilework package.

Run once and paste the printed literals into tests/golden.py.

- Livio pentagon: mpmath findroot at 40 digits, unknowns (D, B) instead of
  the library's (D, B - C).
- Octagon-square disks: shapely polygons of the tessellation, tile counts
  per disk.  Every vertex has valence 3, so an octagon contributes -2/3 pi,
  a square +2/3 pi, and K = 2/3 pi (squares - octagons).
- Substitution counts: closed forms (4^n, Fibonacci, Pell-like recurrences).
"""

import math
from fractions import Fraction

import mpmath as mp
from shapely.geometry import Point, Polygon


def livio():
    mp.mp.dps = 40

    def angles(d, b):
        return [mp.pi - d, b, 2 * mp.pi - 2 * d - b, d, 2 * d]

    def closure(d, b):
        h, z = 0, mp.mpc(0)
        for a in angles(d, b):
            h += mp.pi - a
            z += mp.expj(h)
        return [mp.re(z), mp.im(z)]

    found = set()
    for d0 in mp.linspace(0.1, 1.5, 8):
        for b0 in mp.linspace(0.2, 6, 12):
            try:
                d, b = mp.findroot(closure, (d0, b0))
            except (ValueError, ZeroDivisionError):
                continue
            a = angles(d, b)
            if all(0 < x < 2 * mp.pi for x in a) and any(x > mp.pi for x in a):
                found.add(tuple(float(x) for x in a))
    return sorted(found)


def octagon_square(radii):
    a = 1 + math.sqrt(2)
    h, q = 0.5, a / 2
    out = []
    for r in radii:
        disk = Point(0, 0).buffer(r + 1e-9, 256)
        n = math.ceil(r / a) + 2
        octs = squares = 0
        for i in range(-n, n + 1):
            for j in range(-n, n + 1):
                cx, cy = i * a, j * a
                octagon = Polygon([(cx + x, cy + y) for x, y in [(q, -h), (q, h), (h, q), (-h, q), (-q, h), (-q, -h), (-h, -q), (h, -q)]])
                sx, sy = cx + a / 2, cy + a / 2
                square = Polygon([(sx + x, sy + y) for x, y in [(0, -h * math.sqrt(2)), (h * math.sqrt(2), 0), (0, h * math.sqrt(2)), (-h * math.sqrt(2), 0)]])
                octs += octagon.intersects(disk)
                squares += square.intersects(disk)
        out.append((r, octs, squares, Fraction(2, 3) * (squares - octs)))
    return out


def counts():
    fib = [1, 1]
    while len(fib) < 20:
        fib.append(fib[-1] + fib[-2])
    return {"chair": [4**n for n in range(7)], "fib": fib}


if __name__ == "__main__":
    print("LIVIO =", livio())
    for row in octagon_square([5, 10, 20, 40]):
        print("OCTAGON_SQUARE", row)
    print(counts())
