"""Rep-tiles and substitution: inflate, subdivide, repeat.

Writes one SVG per shipped system.
"""

from pathlib import Path

from tilework import geometry, substitution

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

palette = ["#f4c27a", "#b9d3ee", "#c7e3b5", "#e8b4c8"]

for name, sys in substitution.systems().items():
    bad = substitution.first_failure(substitution.validate_rule(sys))
    levels = 2 if sys.scale > 2 else 3
    patch = substitution.expand(sys, sys.names[0], levels)
    style = {p: palette[i % len(palette)] for i, p in enumerate(sys.names)}
    (out / f"{name}.svg").write_text(geometry.render_svg(patch, style, scale=20))
    print(f"{name:15s} scale {sys.scale_expr:14s} rule {'ok' if bad is None else bad}  level {levels}: {substitution.census(patch, sys)}")

# The substitution matrix predicts every count without building anything.
pen = substitution.system("penrose-rhombs")
print("\npenrose matrix", substitution.substitution_matrix(pen).tolist())
for n in range(1, 9):
    c = substitution.predicted_counts(pen, "fat", n)
    print(f"  n={n}: fat {c['fat']:4d} thin {c['thin']:4d} ratio {c['fat'] / c['thin']:.5f}")
