"""Counting curvature: valence angles, imbalance and the tiling lemma.

A tile's imbalance is the sum of 2 pi / q over its corners minus (n - 2) pi.
Add up the tiles of any disk-like patch and you get the patch's own
imbalance, which is bounded by its boundary.  So in a plane tiling the
average imbalance per tile has to vanish.
"""

from tilework import balance

print("octagon, three tiles per corner:", balance.tile_imbalance([3] * 8))
print("square, three tiles per corner: ", balance.tile_imbalance([3] * 4))

fixture = balance.euler_fixture()
v, e, f = fixture.counts()
print(f"\noctagon-square patch: {v} - {e} + {f} = {fixture.euler()}")
print("lemma:", balance.verify_lemma(fixture).as_dict())

print("\nradius  tiles  K_r        |K_r|/N_r")
for r, n, ratio, k in balance.average_imbalance_series("octagon-square", [5, 10, 20, 40]):
    print(f"{r:6g} {n:6d}  {str(k):10s} {ratio:.4f}")

# Seven neighbours and three tiles at every vertex cannot happen in the plane.
for n, q in [(4, 4), (6, 3), (3, 6), (7, 3), (5, 3)]:
    kind, k = balance.classify_vertex_uniform(n, q)
    print(f"n={n} q={q}: {kind:10s} {k}")
