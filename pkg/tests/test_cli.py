import csv

import pytest

from muposet.balloon import pi_sequence
from muposet.cli import main
from muposet.mobius import downset
from muposet.perm import parse


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,want", [
    (["mu", "2413"], "-3"),
    (["mu", "25314"], "4"),
    (["mu", "--from", "2413", "2413"], "1"),
    (["mu", "--from", "321", "123"], "0"),
    (["mu", "--method", "chains", "2413"], "-3"),
    (["mu", "--method", "auto", "2735416"], "1"),
    (["mu", "2,8,4,6,3,5,1,7"], "-6"),
    (["balloon", "21"], "264315"),
    (["balloon", "--unwrap", "2413"], "not-a-balloon"),
    (["balloon", "--unwrap", "264315"], "21"),
    (["balloon", "--alpha", "2413", "--at", "2,2", "1"], "25314"),
    (["sequence", "8"], "28463517  mu=-6"),
])
def test_outputs(capsys, argv, want):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == want


@pytest.mark.parametrize("argv", [
    ["mu", "1,1"], ["mu", "abc"], ["balloon", "--alpha", "2413", "--at", "9,9", "1"],
    ["balloon", "--at", "1,1", "1"], ["balloon", "--alpha", "21", "--at", "x", "1"],
    ["sequence", "0"], ["sweep", "--len", "12"], ["export", "plot", "--csv", "x.csv"],
    ["mu", "--method", "chains", "--from", "1", "12"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("muposet:")


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nope"])
    assert exc.value.code == 2


def test_sweep(capsys, tmp_path):
    out_csv = tmp_path / "s.csv"
    code, out, _ = run(capsys, "sweep", "--len", "5", "--out", str(out_csv))
    lines = out.splitlines()
    assert code == 0
    assert "n=4 max=3 witness=2413" in lines
    assert "n=5 max=6 witness=24153" in lines
    assert "bound n=5 2^(floor(n/4)-1)=1 ok" in lines
    rows = list(csv.reader(out_csv.open()))
    assert rows[0] == ["perm", "mu"] and ["2413", "-3"] in rows
    assert (tmp_path / "s.png").stat().st_size > 0


def test_sweep_parallel_output_is_stable(capsys):
    _, a, _ = run(capsys, "sweep", "--len", "7", "--jobs", "2")
    _, b, _ = run(capsys, "sweep", "--len", "7")
    assert a == b


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "thm5.1", "--max-len", "8")
    assert code == 0 and "verified (theorem)" in out and "1, -1, 1, -3, 4, -1, 1, -6" in out
    code, out, _ = run(capsys, "verify", "thm6.2", "--max-len", "4")
    assert code == 0
    code, out, _ = run(capsys, "verify", "thm4.1", "--max-len", "11")
    assert code == 0


def test_conjecture(capsys):
    code, out, _ = run(capsys, "conjecture", "7.2", "--max-len", "1")
    assert code == 0 and "consistent (conjecture)" in out
    code, out, _ = run(capsys, "conjecture", "7.2", "--max-len", "4")
    assert code == 1 and "counterexample: (1,0) beta=2413" in out


def test_export_hasse(capsys, tmp_path):
    dot = tmp_path / "h.dot"
    assert run(capsys, "export", "hasse", "12", "--dot", str(dot))[0] == 0
    text = dot.read_text()
    assert text.count("->") == 1 and '"1" -> "12"' in text
    run(capsys, "export", "hasse", "2413", "--dot", str(dot))
    nodes = [l for l in dot.read_text().splitlines() if l.strip().endswith('";') and "->" not in l]
    assert len(nodes) == len(downset(parse("2413")))


def test_export_plot(capsys, tmp_path):
    f = tmp_path / "p.csv"
    assert run(capsys, "export", "plot", "--sequence", "21", "--csv", str(f))[0] == 0
    rows = list(csv.reader(f.open()))
    assert rows[0] == ["index", "value"]
    assert tuple(int(v) for _, v in rows[1:]) == pi_sequence(21)
    assert f.with_suffix(".png").exists()
    g = tmp_path / "q.csv"
    assert run(capsys, "export", "plot", "2413", "--csv", str(g))[0] == 0


def test_cache_file(capsys, tmp_path, monkeypatch):
    path = tmp_path / "mu.txt"
    assert run(capsys, "--cache", str(path), "mu", "2413")[0] == 0
    assert path.read_text().startswith("muposet v1 canonical=1\n")
    assert "2413\t-3" in path.read_text()
    env = tmp_path / "env.txt"
    monkeypatch.setenv("MUPOSET_CACHE", str(env))
    run(capsys, "sequence", "5")
    assert "25314\t4" in env.read_text()
    env.write_text("muposet v9 canonical=1\n")
    code, _, err = run(capsys, "mu", "12")
    assert code == 2 and "version" in err
