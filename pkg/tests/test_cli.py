import json
import os
import subprocess
import sys

import pytest

from fatgraph_xi import examples as X
from fatgraph_xi import io, verify
from fatgraph_xi.cli import main
from fatgraph_xi.enumeration import enumerate_graphs


@pytest.fixture
def ladder_file(tmp_path):
    p = tmp_path / "ladder.fg"
    io.dump(X.ladder(2), p)
    return str(p)


@pytest.fixture
def punctured_file(tmp_path):
    p = tmp_path / "p.fg"
    io.dump(X.balanced_nonzero(), p)
    return str(p)


def run_json(capsys, argv):
    rc = main(argv + ["--json"])
    return rc, json.loads(capsys.readouterr().out)


def test_validate(capsys, ladder_file, tmp_path):
    rc, d = run_json(capsys, ["validate", "--file", ladder_file])
    assert rc == 0 and d["ok"] and d["genus"] == 2
    bad = tmp_path / "bad.fg"
    bad.write_text("fatgraph v1 punctured\nv0: 0 2 4\nv1: 5 3 1\n")
    rc, d = run_json(capsys, ["validate", "--file", str(bad)])
    assert rc == 1 and d["error"] == "MultipleBoundaryCycles"


def test_missing_file_is_usage_error(capsys, tmp_path):
    assert main(["validate", "--file", str(tmp_path / "nope.fg")]) == 2


def test_bad_arguments_exit_2():
    with pytest.raises(SystemExit) as e:
        main(["xi"])
    assert e.value.code == 2


def test_info_and_xi(capsys, ladder_file):
    rc, d = run_json(capsys, ["info", "--file", ladder_file])
    assert rc == 0 and len(d["types"]) == 7 and d["chord_diagram"] is False
    rc, d = run_json(capsys, ["xi", "--file", ladder_file])
    assert rc == 0 and d["xi"] == [0, -2, 0, -1] and d["primitive"]
    main(["xi", "--file", ladder_file, "--mod2"])
    out = capsys.readouterr().out
    assert "xi=[0,-2,0,-1]" in out and "xi_mod2=[0,0,0,1]" in out


def test_punctured_xi(capsys, punctured_file):
    rc, d = run_json(capsys, ["xi", "--file", punctured_file])
    assert rc == 0 and any(d["xi"]) and not any(d["xi_mod2"])
    rc, d2 = run_json(capsys, ["xi", "--file", punctured_file, "--dart", "3"])
    assert d2["pairings"] == d["pairings"]


def test_flip_and_cocycle(capsys, ladder_file, tmp_path):
    out = tmp_path / "f.fg"
    rc, d = run_json(capsys, ["flip", "--file", ladder_file, "--edge", "2", "--out", str(out)])
    assert rc == 0 and out.exists()
    assert main(["flip", "--file", ladder_file, "--edge", "0"]) == 1   # the tail
    assert "TailEdge" in capsys.readouterr().err
    rc, d = run_json(capsys, ["cocycle", "--file", ladder_file, "--flips", "2 2"])
    assert rc == 0


def test_walk(capsys, tmp_path):
    rc, d = run_json(capsys, ["walk", "--genus", "2", "--steps", "50", "--seed", "3"])
    rc2, d2 = run_json(capsys, ["walk", "--genus", "2", "--steps", "50", "--seed", "3"])
    assert rc == rc2 == 0 and d == d2 and d["ok"]


def test_enumerate(capsys, tmp_path):
    rc, d = run_json(capsys, ["enumerate", "--genus", "2", "--out", str(tmp_path / "cls")])
    assert rc == 0 and d["count"] == 105
    files = sorted((tmp_path / "cls").iterdir())
    assert len(files) == 105
    got = {io.load(f, check=True) for f in files}
    assert got == set(enumerate_graphs(2))
    rc, d = run_json(capsys, ["enumerate", "--genus", "2", "--kind", "punctured"])
    assert d["count"] == 9
    assert main(["enumerate", "--genus", "9"]) == 2


def test_spin(capsys, ladder_file):
    rc, d = run_json(capsys, ["spin", "--file", ladder_file])
    assert rc == 0


def test_glue_and_tailslide(capsys, ladder_file, tmp_path):
    g1 = tmp_path / "g1.fg"
    io.dump(X.ladder(1), g1)
    rc, d = run_json(capsys, ["glue", "--file", ladder_file, "--guest", str(g1), "--dart", "3"])
    assert rc == 0
    rc, d = run_json(capsys, ["tailslide", "--file", ladder_file, "--steps", "18"])
    assert rc == 0


def test_verify_small(capsys):
    rc, d = run_json(capsys, ["verify", "all", "--genus", "1", "--exhaustive"])
    assert rc == 0 and d["classes"] == 1 and d["failures"] == 0
    main(["verify", "invariants", "--genus", "2", "--exhaustive"])
    assert "105 classes, 0 failures" in capsys.readouterr().out


def test_verify_guards():
    assert main(["verify", "all", "--genus", "3", "--exhaustive"]) == 2
    assert main(["verify", "all", "--genus", "0"]) == 2


def test_verify_writes_counterexample(capsys, tmp_path, monkeypatch):
    def broken(cfg):
        r = verify.SuiteResult("invariants")
        r.checked = 1
        r.fail("planted", X.ladder(1), "forced")
        return r
    monkeypatch.setitem(verify.RUNNERS, "invariants", broken)
    rc = main(["verify", "invariants", "--genus", "1", "--out", str(tmp_path), "--seed", "5"])
    out = capsys.readouterr().out
    assert rc == 1
    path = tmp_path / "counterexample-planted.fg"
    assert path.exists() and io.load(path) == X.ladder(1)
    assert "seed 5" in out


def test_console_entry_point(ladder_file):
    env = dict(os.environ, FATGRAPH_THREADS="1")
    out = subprocess.run([sys.executable, "-m", "fatgraph_xi.cli", "xi", "--file", ladder_file],
                         capture_output=True, text=True, env=env)
    assert out.returncode == 0 and out.stdout.startswith("xi=[0,-2,0,-1]")
