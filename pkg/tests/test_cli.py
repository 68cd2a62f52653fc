import json
import subprocess
import sys

import pytest

from tilework import machine, polyform
from tilework.cli import build_parser, main


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_balance_tile(capsys):
    assert run(capsys, "balance", "tile", "--valences", "3,3,3,3,3,3,3,3") == (0, "-2/3 π\n", "")


def test_tm_run(capsys, files):
    sample = files("sample.json", machine.SAMPLE.to_json())
    code, out, _ = run(capsys, "tm", "run", sample, "--steps", "1000")
    assert (code, out) == (0, "running\n")
    halt = files("halt.json", {"states": ["A"], "delta": {"A,0": "1RH", "A,1": "1RH"}})
    assert run(capsys, "tm", "run", halt, "--steps", "5")[:2] == (0, "halted 1\n")


def test_tm_compile(capsys, files, tmp_path):
    halt = files("halt.json", {"states": ["A"], "delta": {"A,0": "1RH", "A,1": "1RH"}})
    assert run(capsys, "tm", "compile", halt, "--rows", "1", "--complete")[0] == 0
    assert run(capsys, "tm", "compile", halt, "--rows", "2", "--complete")[0] == 1
    out = tmp_path / "c.json"
    assert run(capsys, "tm", "compile", halt, "-o", str(out))[0] == 0
    assert "tileset" in json.loads(out.read_text())


def test_wang_exit_codes(capsys, files):
    mismatch = files("mismatch.json", {"tiles": [{"name": "m", "n": "c", "e": "a", "s": "c", "w": "b"}]})
    assert run(capsys, "wang", "torus", mismatch, "--size", "1x1")[0] == 1
    assert run(capsys, "wang", "decide", mismatch, "--max", "3")[0] == 1
    dimer = files("dimer.json", {"tiles": [{"name": "L", "n": "o", "e": "x", "s": "o", "w": "o"}, {"name": "R", "n": "o", "e": "o", "s": "o", "w": "x"}]})
    code, out, _ = run(capsys, "wang", "solve", dimer, "--size", "2x2")
    assert code == 0 and json.loads(out)["cells"][0] == [0, 0, "L"]
    assert run(capsys, "wang", "decide", dimer, "--max", "2")[0] == 0


def test_wang_unknown_and_budget(capsys, tmp_path, files):
    from tilework import robinson

    rob = files("rob.json", robinson.wang_tileset().to_json())
    code, out, _ = run(capsys, "wang", "decide", rob, "--max", "2")
    assert code == 2 and json.loads(out)["outcome"] == "unknown"
    code, _, err = run(capsys, "wang", "solve", rob, "--size", "5x5", "--budget", "3")
    assert code == 2 and "unknown" in err


def test_malformed_json(capsys, files):
    bad = files("bad.json", '{"tiles": [1,\n 2,, ]}')
    code, _, err = run(capsys, "wang", "solve", bad, "--size", "2x2")
    assert code == 64
    assert "line 2" in err and "column" in err


def test_usage_errors(capsys, files):
    assert run(capsys, "bogus")[0] == 64
    assert run(capsys, "wang", "solve", "x.json", "--size", "2")[0] == 64
    assert run(capsys, "wang", "solve", "missing.json", "--size", "2x2")[0] == 64
    assert run(capsys, "balance", "tile", "--valences", "3,3")[0] == 64
    assert run(capsys, "subst", "expand", "nope")[0] == 64
    wrong = files("wrong.json", {"tiles": [{"name": "a"}]})
    assert run(capsys, "wang", "solve", wrong, "--size", "1x1")[0] == 64


def test_help_everywhere(capsys):
    parser = build_parser()
    groups = parser._subparsers._group_actions[0].choices
    for gname, gparser in groups.items():
        with pytest.raises(SystemExit) as exc:
            main([gname, "--help"])
        assert exc.value.code == 0
        sub = gparser._subparsers
        if sub is None:
            continue
        for verb in sub._group_actions[0].choices:
            with pytest.raises(SystemExit) as exc:
                main([gname, verb, "--help"])
            assert exc.value.code == 0
            assert "--jobs" in capsys.readouterr().out


def test_robinson_commands(capsys, tmp_path):
    blk = tmp_path / "b.json"
    assert run(capsys, "robinson", "block", "--level", "2", "--choices", "NE,SW", "-o", str(blk))[0] == 0
    assert run(capsys, "robinson", "check", str(blk))[:2] == (0, "valid\n")
    data = json.loads(blk.read_text())
    data["cells"][0][3] = (data["cells"][0][3] + 1) % 4
    blk.write_text(json.dumps(data))
    assert run(capsys, "robinson", "check", str(blk))[0] == 1
    assert run(capsys, "robinson", "force")[:2] == (0, "4\n")
    assert run(capsys, "robinson", "block", "--level", "2", "--choices", "NE")[0] == 64
    svg = tmp_path / "b.svg"
    assert run(capsys, "robinson", "block", "--level", "1", "--svg", str(svg))[0] == 0
    assert svg.read_text().count("<path") == 9


def test_subst_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "subst", "expand", "penrose-rhombs", "--seed", "fat", "--levels", "4")
    assert code == 0 and json.loads(out) == {"fat": 34, "thin": 21}
    code, out, _ = run(capsys, "subst", "validate")
    assert code == 0 and out.count(": valid") == 11
    svg = tmp_path / "c.svg"
    assert run(capsys, "subst", "expand", "chair", "--levels", "1", "--svg", str(svg))[0] == 0
    assert svg.read_text().count("<path") == 4
    pj = tmp_path / "c.json"
    assert run(capsys, "subst", "expand", "chair", "--levels", "1", "-o", str(pj))[0] == 0
    out_svg = tmp_path / "r.svg"
    assert run(capsys, "render", str(pj), "-o", str(out_svg))[0] == 0
    assert out_svg.read_text() == svg.read_text()


def test_balance_commands(capsys):
    code, out, _ = run(capsys, "balance", "lemma")
    rep = json.loads(out)
    assert code == 0 and (rep["vertices"], rep["edges"], rep["tiles"], rep["euler"]) == (91, 125, 35, 1)
    assert rep["lhs"] == rep["rhs"] == "14/3 π"
    assert run(capsys, "balance", "classify", "--n", "7", "--q", "3")[:2] == (0, "hyperbolic -1/3 π\n")
    code, out, _ = run(capsys, "balance", "series", "octagon-square", "--radii", "5,10")
    assert code == 0 and "K=-10/3 π" in out


def test_poly_commands(capsys, files):
    mann = files("mann.json", polyform.mann_census_fixture().to_json())
    code, out, _ = run(capsys, "poly", "census", mann)
    assert code == 0 and out.startswith("in=7 out=4 flat=1\nno_tiling_proved")
    hexagon = files("hex.json", polyform.decorate("hex", [(0, 0)]).to_json())
    assert run(capsys, "poly", "census", hexagon)[0] == 2
    assert run(capsys, "poly", "corona", hexagon, "--max", "2")[:2] == (0, "periodic\n")
    tromino = files("l.json", polyform.decorate("square", [(0, 0), (1, 0), (0, 1)]).to_json())
    code, out, _ = run(capsys, "poly", "domain", tromino, "--tiles", "2", "--rectangular")
    assert code == 0 and json.loads(out)["vectors"] == [[2, 0], [0, 3]]
    assert run(capsys, "poly", "domain", mann, "--max-area", "6")[0] == 1
    assert run(capsys, "poly", "domain", tromino, "--max-area", "2")[0] == 64


def test_module_entry_point(tmp_path):
    p = subprocess.run([sys.executable, "-m", "tilework", "balance", "tile", "--valences", "4,4,4,4"], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.strip() == "0 π"
