"""Decorated polyhexes: counting bumps, coronas, and periodic domains."""

from pathlib import Path

from tilework import geometry, polyform

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

# Seven edges bulge in and four bulge out.  N copies leave at least 3N
# inward bulges unmatched, and only the boundary can hold them.
mann = polyform.mann_census_fixture()
print("census (in, out, flat):", polyform.edge_census(mann))
print("verdict:", polyform.census_nontiler(mann))
print("coronas:", polyform.corona_search(mann, 2))

# A hexagon with one bump and one dent on opposite sides stacks into rows.
rows = polyform.decorate("hex", [(0, 0)], {((0, 0), 0): polyform.IN, ((0, 0), 3): polyform.OUT})
print("\nbump/dent hexagon:", polyform.corona_search(rows, 2))

# Two L-trominoes make a 2x3 brick.
tromino = polyform.decorate("square", [(0, 0), (1, 0), (0, 1)])
dom = polyform.fundamental_domain_search(tromino, 6, tiles=2, rectangular=True)
print("L-tromino domain:", dom.vectors, f"{dom.tiles} tiles, {dom.orbit_count} orientations")

res = polyform.corona_search(tromino, 2, check_periodic=False)
patch = polyform.to_patch(tromino, res.witnesses[-1], [f"ring{r}" for _, r in res.witnesses[-1]])
style = {"ring0": "#f4c27a", "ring1": "#b9d3ee", "ring2": "#c7e3b5"}
(out / "tromino_coronas.svg").write_text(geometry.render_svg(patch, style, scale=24))
print(f"two coronas around an L-tromino: {len(res.witnesses[-1])} copies")
