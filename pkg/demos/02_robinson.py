"""Robinson's tiles: forced crosses, nested squares, no period.

Writes robinson_block.svg with the marked squares of a 31x31 block drawn
over the tiles.
"""

from collections import Counter
from pathlib import Path

from tilework import geometry, robinson, wang

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

print(f"{len(robinson.BASE_TILES)} base tiles, {robinson.ORIENTED_COUNT} under rotation and reflection")

# Put a cornered cross in a corner; the rest of the 3x3 is forced up to the
# direction of the central cross.
forced = robinson.verify_forcing_3x3()
print("3x3 completions around a cornered cross:", forced.count)
for p in forced.completions:
    print("  centre", p.cells[(1, 1)].label())
print("with no cornered tiles at all:", robinson.verify_forcing_3x3(forbid_cornered=True).count)

# Forced crosses assemble into blocks of side 3, 7, 15, 31, ...
block = robinson.generate_block(4, ["NE", "SW", "NW", "SE"])
print(f"\nblock side {block.width}: valid={robinson.validate(block)[0]}")
squares = robinson.square_hierarchy(block)
print("squares by side:", dict(sorted(Counter(s.side for s in squares).items())))

svg = geometry.render_svg(
    block.to_polygons(),
    style={"cross_cornered": "#f4c27a", "cross": "#b9d3ee"},
    overlays=robinson.square_outlines(squares),
    scale=16,
)
(out / "robinson_block.svg").write_text(svg)

# As Wang tiles the set has no torus filling and no dead rectangle up to 6x6.
verdict = wang.decide_up_to(robinson.wang_tileset(), 6)
print("\nbrute force up to 6x6:", verdict.to_json())
