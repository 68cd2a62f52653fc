"""Substitution tilings: prototiles that subdivide into smaller copies.

A rule lists, for each prototile ``P``, child placements inside the inflated
tile ``scale * P``; children are full-size prototiles.  Expanding a patch
inflates it by ``scale`` and replaces every tile by its children, so the
tile placed by ``T`` becomes the children ``D T D^-1 C`` where ``D`` is the
dilation and ``C`` the child's placement.

Rule data ships in ``data/substitutions.json``.  Rotations there are in
degrees; coordinates are numbers or ``"p/q"`` strings.
"""

import ast
import json
import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import numpy as np

from ._util import BudgetExceeded, pmap
from .geometry import Isometry, PatchVerdict, PolygonPatch, is_exact, polygon_area, validate_patch

EXPAND_BUDGET = 10**6


@dataclass(frozen=True)
class Child:
    tile: str
    placement: Isometry


@dataclass
class SubstitutionSystem:
    name: str
    prototiles: dict  # name -> vertex list
    scale: float
    rules: dict  # name -> [Child]
    scale_expr: str = None
    reflections: bool = False

    def __post_init__(self):
        if self.scale <= 1:
            raise ValueError("scale must exceed 1")
        for parent, children in self.rules.items():
            if parent not in self.prototiles:
                raise ValueError(f"rule for unknown prototile {parent!r}")
            for c in children:
                if c.tile not in self.prototiles:
                    raise ValueError(f"rule for {parent!r} uses unknown prototile {c.tile!r}")
        missing = set(self.prototiles) - set(self.rules)
        if missing:
            raise ValueError(f"no rule for {sorted(missing)}")

    @property
    def names(self):
        return list(self.prototiles)

    @property
    def exact(self):
        coords = [c for poly in self.prototiles.values() for p in poly for c in p]
        coords += [c for kids in self.rules.values() for k in kids for c in k.placement.translation]
        return isinstance(self.scale, int) and all(is_exact(c) for c in coords)

    def tile(self, name, placement):
        return placement.apply(self.prototiles[name])

    @classmethod
    def from_json(cls, name, data):
        if isinstance(data, str):
            data = json.loads(data)
        protos = {k: [(_num(x), _num(y)) for x, y in v] for k, v in data["prototiles"].items()}
        rules = {}
        for parent, kids in data["rules"].items():
            rules[parent] = [
                Child(
                    k["tile"],
                    Isometry(
                        _radians(k.get("rotation", 0)),
                        (_num(k["translation"][0]), _num(k["translation"][1])),
                        bool(k.get("reflect", False)),
                    ),
                )
                for k in kids
            ]
        expr = str(data["scale"])
        scale = _eval_scale(expr)
        if abs(scale - round(scale)) < 1e-12:
            scale = int(round(scale))
        return cls(name, protos, scale, rules, expr, bool(data.get("reflections", False)))

    def to_json(self):
        def num(v):
            if isinstance(v, Fraction) and v.denominator != 1:
                return f"{v.numerator}/{v.denominator}"
            return int(v) if is_exact(v) else v

        return {
            "scale": self.scale_expr or repr(self.scale),
            "reflections": self.reflections,
            "prototiles": {k: [[num(x), num(y)] for x, y in v] for k, v in self.prototiles.items()},
            "rules": {
                parent: [
                    {
                        "tile": c.tile,
                        "rotation": round(math.degrees(c.placement.rotation), 12) % 360,
                        "translation": [num(t) for t in c.placement.translation],
                        "reflect": c.placement.reflected,
                    }
                    for c in kids
                ]
                for parent, kids in self.rules.items()
            },
        }


def _num(v):
    if isinstance(v, str):
        return Fraction(v)
    return v


def _radians(deg):
    deg = Fraction(deg) if isinstance(deg, (int, str)) else deg
    return math.radians(float(deg))


_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def _eval_scale(expr):
    """Arithmetic on numbers and ``sqrt`` only, e.g. ``(1+sqrt(5))/2``."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return node.value
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.Call) and getattr(node.func, "id", None) == "sqrt" and len(node.args) == 1:
            return math.sqrt(ev(node.args[0]))
        raise ValueError(f"unsupported scale expression {expr!r}")

    return ev(ast.parse(expr, mode="eval"))


_SYSTEMS = None


def systems():
    """The shipped rule library, keyed by system name."""
    global _SYSTEMS
    if _SYSTEMS is None:
        text = resources.files("tilework").joinpath("data/substitutions.json").read_text()
        _SYSTEMS = {name: SubstitutionSystem.from_json(name, d) for name, d in json.loads(text).items()}
    return _SYSTEMS


def system(name):
    try:
        return systems()[name]
    except KeyError:
        raise KeyError(f"unknown substitution system {name!r}; have {sorted(systems())}") from None


def substitution_matrix(sys):
    """``M[i, j]`` = number of type-``i`` children in the rule for type ``j``."""
    names = sys.names
    idx = {n: i for i, n in enumerate(names)}
    m = np.zeros((len(names), len(names)), dtype=np.int64)
    for parent, kids in sys.rules.items():
        for c in kids:
            m[idx[c.tile], idx[parent]] += 1
    return m


def predicted_counts(sys, seed, n):
    names = sys.names
    e = np.zeros(len(names), dtype=np.int64)
    e[names.index(seed)] = 1
    v = np.linalg.matrix_power(substitution_matrix(sys), n) @ e
    return {name: int(v[i]) for i, name in enumerate(names)}


def _step(sys, placed, levels):
    lam = sys.scale
    rules = sys.rules
    for _ in range(levels):
        placed = [(c.tile, t.scaled(lam) @ c.placement) for name, t in placed for c in rules[name]]
    return placed


def _step_job(args):
    sys, chunk, levels = args
    return _step(sys, chunk, levels)


def expand_placements(sys, seed, n, budget=EXPAND_BUDGET, jobs=1):
    """``(prototile, isometry)`` pairs after ``n`` rounds, depth-first order."""
    if seed not in sys.prototiles:
        raise KeyError(f"unknown prototile {seed!r}")
    if n < 0:
        raise ValueError("levels must be >= 0")
    total = sum(predicted_counts(sys, seed, n).values())
    if total > budget:
        raise BudgetExceeded(budget, f"expansion to {total} tiles")
    placed = [(seed, Isometry())]
    if n == 0:
        return placed
    placed = _step(sys, placed, 1)
    if jobs and jobs > 1 and n > 1:
        # tiles evolve independently, so chunking changes no arithmetic
        k = max(1, math.ceil(len(placed) / jobs))
        chunks = [placed[i:i + k] for i in range(0, len(placed), k)]
        return [p for part in pmap(_step_job, [(sys, c, n - 1) for c in chunks], jobs) for p in part]
    return _step(sys, placed, n - 1)


def expand(sys, seed, n, budget=EXPAND_BUDGET, jobs=1):
    """Patch of tiles after ``n`` rounds of inflate-and-subdivide."""
    return PolygonPatch([(sys.tile(name, t), name) for name, t in expand_placements(sys, seed, n, budget, jobs)])


def census(patch, sys=None):
    counts = {}
    for label in patch.labels:
        if sys is not None and label not in sys.prototiles:
            raise KeyError(f"unknown prototile label {label!r}")
        counts[label] = counts.get(label, 0) + 1
    if sys is not None:
        return {name: counts.get(name, 0) for name in sys.names}
    return counts


@dataclass(frozen=True)
class RuleVerdict:
    prototile: str
    verdict: PatchVerdict
    child_area: float
    parent_area: float

    @property
    def area_ok(self):
        if is_exact(self.child_area) and is_exact(self.parent_area):
            return self.child_area == self.parent_area
        return abs(self.child_area - self.parent_area) <= 1e-9 * abs(self.parent_area)

    @property
    def ok(self):
        return self.verdict.valid and self.area_ok

    def __str__(self):
        if self.ok:
            return f"{self.prototile}: valid"
        if not self.verdict.valid:
            return f"{self.prototile}: {self.verdict}"
        return f"{self.prototile}: children cover area {self.child_area}, parent needs {self.parent_area}"


def validate_rule(sys, tolerance=1e-9):
    """One verdict per prototile: do its children exactly tile the inflated parent?"""
    out = {}
    lam = sys.scale
    for name in sys.names:
        parent = [(lam * x, lam * y) for x, y in sys.prototiles[name]]
        kids = PolygonPatch([(sys.tile(c.tile, c.placement), c.tile) for c in sys.rules[name]])
        verdict = validate_patch(kids, tolerance, region=parent)
        out[name] = RuleVerdict(name, verdict, kids.area(), polygon_area(parent))
    return out


def first_failure(verdicts):
    for v in verdicts.values():
        if not v.ok:
            return v
    return None


def perturbed(sys, prototile, child, dx, dy):
    """Copy of ``sys`` with one child shifted, for negative tests."""
    rules = {k: list(v) for k, v in sys.rules.items()}
    c = rules[prototile][child]
    tx, ty = c.placement.translation
    rules[prototile][child] = Child(c.tile, Isometry(c.placement.rotation, (tx + dx, ty + dy), c.placement.reflected))
    return SubstitutionSystem(sys.name, sys.prototiles, sys.scale, rules, sys.scale_expr, sys.reflections)
