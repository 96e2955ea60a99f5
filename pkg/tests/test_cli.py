from __future__ import annotations

import io
import subprocess
import sys

import pytest

from exactmatch.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_NO, EXIT_YES, main
from exactmatch.generators import generate

OCTAGON = "p em 8 8 2\n" + "".join(f"e {i} {i % 8 + 1} {'rb'[(i - 1) % 2]}\n" for i in range(1, 9))


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def test_solve_yes_and_verify(write, tmp_path):
    inst = write("a.em", generate("planted-em", {"n": 10, "k": 3}, 4))
    code, text = run(["solve", inst])
    assert code == EXIT_YES and text.startswith("s yes r=3")
    rep = write("a.out", text)
    assert run(["verify", inst, rep]) == (EXIT_YES, "s valid r=3\n")


def test_solve_no(write):
    code, text = run(["solve", write("o.em", OCTAGON)])
    assert (code, text) == (EXIT_NO, "s no\n")


def test_trace_and_plot(write, tmp_path):
    tr, png = tmp_path / "t.txt", tmp_path / "t.png"
    code, _ = run(["solve", write("o.em", OCTAGON), "--trace", str(tr), "--plot", str(png)])
    assert code == EXIT_NO
    assert all(line.startswith("t ") for line in tr.read_text().splitlines())
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_budget_exit(write):
    code, text = run(["solve", write("o.em", OCTAGON), "--alpha", "1", "--budget", "1"])
    assert code in (EXIT_NO, EXIT_BUDGET)
    assert text in ("s no\n", "s budget\n")


def test_input_errors(write):
    assert run(["solve", write("bad.em", "p em 2 1 0\ne 1 2 q\n")])[0] == EXIT_INPUT
    assert run(["solve", "/nonexistent/file"])[0] == EXIT_INPUT
    assert run(["nosuchcommand"])[0] == EXIT_INPUT
    assert run(["bcpm", write("o.em", OCTAGON)])[0] == EXIT_INPUT  # not declared bipartite
    assert run(["solve", write("m.mocp", "p mocp 2 1\na 1 2 1\n")])[0] == EXIT_INPUT
    assert run(["gen", "complete", "n"])[0] == EXIT_INPUT


def test_bcpm_and_cpm(write):
    inst = write("b.em", generate("complete-bipartite", {"nA": 4, "k": 2}, 3))
    code, text = run(["bcpm", inst])
    assert code == EXIT_YES
    r = int(text.split()[2][2:])
    assert r <= 2 and r % 2 == 0
    rep = write("b.out", text)
    assert run(["verify", inst, rep, "--problem", "bcpm"])[0] == EXIT_YES
    code, text = run(["cpm", write("o.em", OCTAGON)])
    assert code == EXIT_YES and int(text.split()[2][2:]) % 2 == 0


def test_approx_on_planted(write):
    for seed in range(10):
        inst = write(f"p{seed}.em", generate("planted-em", {"n": 12, "k": 4, "p": 0.6}, seed))
        code, text = run(["solve", inst, "--mode", "approx"])
        assert code == EXIT_YES
        rep = write(f"p{seed}.out", text)
        assert run(["verify", inst, rep, "--approx"])[0] == EXIT_YES


def test_verify_rejects_wrong_count(write):
    inst = write("a.em", "p em 2 1 1\ne 1 2 b\n")
    rep = write("a.out", "s yes r=0\nm 1 2\n")
    assert run(["verify", inst, rep]) == (EXIT_NO, "s invalid r=0\n")


def test_mocp(write):
    code, text = run(["mocp", write("t.mocp", "p mocp 3 3\na 1 2 1\na 2 3 2\na 3 1 0\n")])
    assert code == EXIT_YES and text.splitlines()[0] == "s yes w=3"
    assert len(text.splitlines()) == 4
    assert run(["mocp", write("e.mocp", "p mocp 2 2\na 1 2 1\na 2 1 1\n")]) == (EXIT_NO, "s no\n")


def test_gen_to_file(tmp_path):
    out = tmp_path / "g.em"
    code, _ = run(["gen", "complete", "n=6", "--seed", "2", "-o", str(out)])
    assert code == EXIT_YES and out.read_text() == generate("complete", {"n": "6"}, 2)


def test_module_entry_point(tmp_path):
    p = tmp_path / "o.em"
    p.write_text(OCTAGON)
    res = subprocess.run([sys.executable, "-m", "exactmatch.cli", "solve", str(p)], capture_output=True, text=True)
    assert res.returncode == EXIT_NO and res.stdout == "s no\n"
