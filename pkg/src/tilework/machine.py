"""Binary Turing machines and their compilation into Wang tiles.

A compiled machine is a tile set plus a pinned seed row.  Row ``r`` above
the seed holds the machine's configuration at time ``r``: each cell's top
label is either a tape symbol or ``"q:s"`` for the head in state ``q``
reading ``s``.  The state travels sideways along the row as a signal
(``">q"`` moving right, ``"<q"`` moving left), so every row is forced by the
row beneath it.  Nothing sits on top of a halt head, hence a halting run
cannot be completed past the row where it halts.

Tile count for ``k`` working states: 2 tape + 2k action + 4(k+1) merge
+ filler + seed + 2 boundary = ``6k + 10``.
"""

import json
from dataclasses import dataclass, field
from typing import NamedTuple

from .wang import GridPlacement, WangTile, WangTileSet, solve_rectangle

SYMBOLS = (0, 1)
MOVES = {"L": -1, "R": 1}

SIDE = "-"
BLANK = "_"
LEFT_EDGE = "|L"
RIGHT_EDGE = "|R"


class MalformedMachine(ValueError):
    pass


@dataclass(frozen=True)
class TuringMachine:
    states: tuple
    transitions: dict  # (state, symbol) -> (write, move, next)
    halt: str = "H"

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        if not self.states:
            raise MalformedMachine("machine needs a start state")
        if self.halt in self.states:
            raise MalformedMachine("halt state must not be listed among working states")
        for (q, s), (write, move, nxt) in self.transitions.items():
            if q == self.halt:
                raise MalformedMachine("halt state has no transitions")
            if q not in self.states or s not in SYMBOLS:
                raise MalformedMachine(f"bad transition key {(q, s)}")
            if write not in SYMBOLS or move not in MOVES:
                raise MalformedMachine(f"bad action {(write, move)} for {(q, s)}")
            if nxt != self.halt and nxt not in self.states:
                raise MalformedMachine(f"unknown next state {nxt!r}")

    def __hash__(self):
        return hash((self.states, tuple(sorted(self.transitions.items())), self.halt))

    @property
    def start(self):
        return self.states[0]

    def check_total(self):
        missing = [(q, s) for q in self.states for s in SYMBOLS if (q, s) not in self.transitions]
        if missing:
            raise MalformedMachine(f"missing transitions: {missing}")

    @classmethod
    def from_table(cls, table, halt="H"):
        """``{"A": ("0RB", "1RB"), ...}``: entries for symbol 0 and 1, start first."""
        trans = {}
        for q, entries in table.items():
            for s, entry in zip(SYMBOLS, entries):
                if entry is not None:
                    trans[(q, s)] = _parse_entry(entry)
        return cls(tuple(table), trans, halt)

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        states = list(data["states"])
        start = data.get("start", states[0])
        if start not in states:
            raise MalformedMachine(f"start state {start!r} not listed")
        states.remove(start)
        states.insert(0, start)
        trans = {}
        for key, entry in data["delta"].items():
            q, s = key.split(",")
            trans[(q.strip(), int(s))] = _parse_entry(entry)
        return cls(tuple(states), trans, data.get("halt", "H"))

    def to_json(self):
        return {
            "states": list(self.states),
            "start": self.start,
            "halt": self.halt,
            "delta": {f"{q},{s}": f"{w}{m}{n}" for (q, s), (w, m, n) in sorted(self.transitions.items())},
        }


def _parse_entry(entry):
    entry = entry.strip()
    if len(entry) < 3:
        raise MalformedMachine(f"bad table entry {entry!r}")
    return int(entry[0]), entry[1], entry[2:]


# the three-state example machine
SAMPLE = TuringMachine.from_table({"A": ("0RB", "1RB"), "B": ("1LA", "0RC"), "C": ("1RB", "0LH")})


@dataclass(frozen=True)
class MachineConfiguration:
    time: int
    state: str
    head: int
    tape: dict = field(default_factory=dict)  # cell -> symbol, zeros omitted

    def __post_init__(self):
        object.__setattr__(self, "tape", {k: v for k, v in self.tape.items() if v})

    def __hash__(self):
        return hash((self.time, self.state, self.head, tuple(sorted(self.tape.items()))))

    def read(self, cell=None):
        return self.tape.get(self.head if cell is None else cell, 0)

    def cells(self, lo, hi):
        return [self.tape.get(i, 0) for i in range(lo, hi + 1)]


def initial(machine):
    return MachineConfiguration(0, machine.start, 0, {})


def step(machine, config):
    """One transition.  The result has ``state == machine.halt`` on halting."""
    if config.state == machine.halt:
        raise ValueError("configuration is already halted")
    key = (config.state, config.read())
    if key not in machine.transitions:
        raise MalformedMachine(f"no transition for {key}")
    write, move, nxt = machine.transitions[key]
    tape = dict(config.tape)
    tape[config.head] = write
    return MachineConfiguration(config.time + 1, nxt, config.head + MOVES[move], tape)


def is_halted(machine, config):
    return config.state == machine.halt


class RunResult(NamedTuple):
    halted_at: int  # None while still running
    final: MachineConfiguration
    trace: tuple

    @property
    def running(self):
        return self.halted_at is None


def run(machine, max_steps):
    """Iterate ``step`` up to ``max_steps`` times; the trace starts at t=0."""
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    config = initial(machine)
    trace = [config]
    for _ in range(max_steps):
        config = step(machine, config)
        trace.append(config)
        if config.state == machine.halt:
            return RunResult(config.time, config, tuple(trace))
    return RunResult(None, config, tuple(trace))


def steps_executed(machine, limit):
    """Number of transitions the machine performs, capped at ``limit``."""
    res = run(machine, limit)
    return limit if res.running else res.halted_at


# ---------------------------------------------------------------------------
# compilation


class Role(NamedTuple):
    kind: str  # tape | head | action | merge | filler | halt | boundary | seed
    state: str = None
    symbol: int = None


def head_label(q, s):
    return f"{q}:{s}"


@dataclass(frozen=True)
class CompiledTiles:
    machine: TuringMachine
    tileset: WangTileSet
    decoding: dict  # tile name -> Role
    rows: int
    seed: GridPlacement

    @property
    def width(self):
        return 2 * self.rows + 3

    def seed_row(self, rows):
        """The pinned bottom row for a ``(2*rows + 3) x (rows + 1)`` rectangle."""
        width = 2 * rows + 3
        cells = {(c, 0): "tape0" for c in range(1, width - 1)}
        cells[(0, 0)] = "edgeL"
        cells[(width - 1, 0)] = "edgeR"
        cells[(rows + 1, 0)] = "seed"
        return GridPlacement(width, rows + 1, cells, frozenset(cells))

    def complete(self, rows, budget=None):
        """A filling of ``rows`` rows above the seed, or None."""
        return solve_rectangle(self.tileset, 2 * rows + 3, rows + 1, self.seed_row(rows), budget)

    def decode_row(self, placement, r):
        """Machine configuration written on the tops of row ``r``."""
        width = placement.width
        center = (width - 1) // 2
        state = head = None
        tape = {}
        for c in range(1, width - 1):
            top = self.tileset[placement.cells[(c, r)]].n
            if ":" in top:
                if state is not None:
                    raise ValueError(f"row {r} carries two heads")
                q, s = top.split(":")
                state, head, sym = q, c - center, int(s)
            else:
                sym = int(top)
            if sym:
                tape[c - center] = sym
        if state is None:
            raise ValueError(f"row {r} carries no head")
        return MachineConfiguration(r, state, head, tape)

    def decode(self, placement):
        return [self.decode_row(placement, r) for r in range(placement.height)]

    def to_json(self):
        return {"tileset": self.tileset.to_json(), "seed": self.seed.to_json()}


def expected_tile_count(machine):
    return 6 * len(machine.states) + 10


def compile_machine(machine, rows=8):
    machine.check_total()
    tiles = [WangTile("fill", BLANK, BLANK, BLANK, BLANK)]
    roles = {"fill": Role("filler")}
    tiles.append(WangTile("seed", head_label(machine.start, 0), SIDE, BLANK, SIDE))
    roles["seed"] = Role("seed", machine.start, 0)
    for s in SYMBOLS:
        tiles.append(WangTile(f"tape{s}", str(s), SIDE, str(s), SIDE))
        roles[f"tape{s}"] = Role("tape", None, s)
    tiles.append(WangTile("edgeL", LEFT_EDGE, SIDE, LEFT_EDGE, BLANK))
    tiles.append(WangTile("edgeR", RIGHT_EDGE, BLANK, RIGHT_EDGE, SIDE))
    roles["edgeL"] = Role("boundary")
    roles["edgeR"] = Role("boundary")
    for q in machine.states:
        for s in SYMBOLS:
            write, move, nxt = machine.transitions[(q, s)]
            name = f"act:{q}{s}"
            if move == "R":
                tile = WangTile(name, str(write), f">{nxt}", head_label(q, s), SIDE)
            else:
                tile = WangTile(name, str(write), SIDE, head_label(q, s), f"<{nxt}")
            tiles.append(tile)
            roles[name] = Role("action", q, s)
    for q in machine.states + (machine.halt,):
        kind = "halt" if q == machine.halt else "merge"
        for s in SYMBOLS:
            name = f"in>{q}{s}"
            tiles.append(WangTile(name, head_label(q, s), SIDE, str(s), f">{q}"))
            roles[name] = Role(kind, q, s)
            name = f"in<{q}{s}"
            tiles.append(WangTile(name, head_label(q, s), f"<{q}", str(s), SIDE))
            roles[name] = Role(kind, q, s)
    tileset = WangTileSet(tiles)
    compiled = CompiledTiles(machine, tileset, roles, rows, None)
    object.__setattr__(compiled, "seed", compiled.seed_row(rows))
    return compiled


compile = compile_machine  # noqa: A001 - mirrors the operation name


def corpus():
    """Small machines used to exercise the compiler: halting and not."""
    table = {
        "halt1": {"A": ("1RH", "1RH")},
        "loop": {"A": ("0RA", "0RA")},
        "left": {"A": ("1LA", "1LA")},
        "bb2": {"A": ("1RB", "1LB"), "B": ("1LA", "1RH")},
        "bb3": {"A": ("1RB", "1RH"), "B": ("0RC", "1RB"), "C": ("1LC", "1LA")},
        "bounce": {"A": ("1RB", "0LB"), "B": ("1LA", "0RA")},
        "eraser": {"A": ("1RB", "0RH"), "B": ("1LC", "0RB"), "C": ("0LA", "1LC")},
        "zigzag": {"A": ("1RB", "1LC"), "B": ("0LA", "1RB"), "C": ("1LA", "0RH")},
        "sweep": {"A": ("1RA", "0LB"), "B": ("1LB", "1RH")},
        "wander": {"A": ("1LB", "0RC"), "B": ("1RA", "1LB"), "C": ("0LA", "1RH")},
    }
    return {name: TuringMachine.from_table(t) for name, t in table.items()}
