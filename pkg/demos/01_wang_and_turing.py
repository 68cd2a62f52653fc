"""Wang tiles, and a Turing machine written into them.

A tile set either tiles the plane or it does not, and brute force only
settles one side at a time: a torus filling proves a periodic tiling, an
unfillable square proves there is none.  Wang's construction shows why
nothing better is possible in general.
"""

from tilework import machine, wang

dimer = wang.WangTileSet([("L", "o", "x", "o", "o"), ("R", "o", "o", "o", "x")])
print("dimer on a 2x2 torus:", wang.solve_torus(dimer, 2, 2).rows())
print("dimer verdict:", wang.decide_up_to(dimer, 4).outcome)

stuck = wang.WangTileSet([("m", "c", "a", "c", "b")])
print("east a, west b:", wang.decide_up_to(stuck, 4).to_json())

# The sample machine runs forever; compile it and let the solver do the work.
tm = machine.SAMPLE
compiled = machine.compile_machine(tm, rows=6)
print(f"\n{len(compiled.tileset)} tiles for {len(tm.states)} states")
filled = compiled.complete(6)
for config in compiled.decode(filled):
    tape = "".join(str(config.read(i)) for i in range(-3, 5))
    print(f"t={config.time} state={config.state} head={config.head:+d} tape[-3..4]={tape}")

# Row r of the tiling is the machine at time r.  A halting machine leaves
# nothing that can sit on its halt tile, so the tiling stops there.
halts = machine.TuringMachine.from_table({"A": ("1RB", "1LB"), "B": ("1LA", "1RH")})
steps = machine.run(halts, 100).halted_at
comp = machine.compile_machine(halts)
print(f"\nbb2 halts after {steps} steps")
for n in (steps, steps + 1):
    print(f"  {n} rows fill: {comp.complete(n) is not None}")
