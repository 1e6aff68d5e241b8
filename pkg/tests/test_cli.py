from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from almostplanar.cli import main
from almostplanar.core.graph6 import decode, encode
from almostplanar.core.canon import is_isomorphic
from almostplanar.families import K5, K33, named_graph, wheel
from almostplanar.recognition import decide_by_definition


def run(argv, stdin: str = "", monkeypatch=None):
    out = io.StringIO()
    if monkeypatch is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv, out)
    return code, out.getvalue()


def test_gen():
    assert run(["gen", "DW:3"]) == (0, encode(K5) + "\n")
    code, text = run(["gen", "M:3", "W:4"])
    a, b = text.split()
    assert code == 0 and is_isomorphic(decode(a), K33) and is_isomorphic(decode(b), wheel(4))


def test_gen_unknown_key(capsys):
    code, _ = run(["gen", "nope"])
    assert code == 2 and "known keys" in capsys.readouterr().err


def test_check_examples(monkeypatch):
    assert run(["check", "--method", "definition"], encode(K5) + "\n", monkeypatch) == (0, f"{encode(K5)} almost-planar\n")
    code, text = run(["check", "-n", "K33+"])
    assert code == 1 and text.split()[1:] == ["neither", "agree"]
    code, text = run(["check", "-n", "K:4"])
    assert code == 0 and text.split()[1] == "planar"


@pytest.mark.parametrize("method", ["definition", "obstructions", "structural", "all"])
def test_check_methods_json(method):
    code, text = run(["check", "--method", method, "--json", "-n", "DW:5", "-n", "EX3"])
    recs = [json.loads(line) for line in text.splitlines()]
    assert code == 1 and [r["class"] for r in recs] == ["almost-planar", "neither"]


def test_check_set_f_needs_three_connected(capsys):
    code, _ = run(["check", "--method", "obstructions", "--set", "F", "-n", "K33+"])
    assert code == 2 and "3-connected" in capsys.readouterr().err


def test_parse_error_reports_line(monkeypatch, capsys):
    code, _ = run(["check"], f"{encode(K5)}\n\n!!bad\n", monkeypatch)
    assert code == 2 and "line 3" in capsys.readouterr().err


def test_usage_errors():
    assert run([])[0] == 2
    assert run(["check", "-n", "K5", "-f", "x"])[0] == 2
    assert run(["check", "-f", "/nonexistent/file"])[0] == 2
    assert run(["verify", "nosuch"])[0] == 2
    assert run(["enumerate", "11"])[0] == 2


def test_minor():
    assert run(["minor", "LK33", "K33h"]) == (0, "present\n")
    assert run(["minor", "W:6", "K5"]) == (1, "absent\n")
    code, text = run(["minor", "--json", "M:5", "K33"])
    assert code == 0 and json.loads(text)["model"]["branch_sets"]
    assert run(["minor", "M:8", "M:7"])[0] == 2
    assert run(["minor", "--limit", "14", "M:8", "M:7"])[0] == 0


def test_enumerate():
    code, text = run(["enumerate", "6", "--filter", "nonplanar"])
    assert code == 0 and len(text.split()) == 14
    code, text = run(["enumerate", "6", "--filter", "nonplanar", "--filter", "3-connected"])
    assert len(text.split()) == 10
    code, text = run(["enumerate", "5", "--filter", "almost-planar"])
    assert text.split() == [encode(decode(text.split()[0]))] and is_isomorphic(decode(text.split()[0]), K5)


def test_certify_round_trip(tmp_path, monkeypatch):
    code, text = run(["certify", "-n", "K5", "-n", "K33+", "-n", "K:4"])
    assert code == 0 and len(text.splitlines()) == 3
    path = tmp_path / "certs.jsonl"
    path.write_text(text)
    code, audit = run(["certify", "--check", str(path)])
    assert code == 0 and all(json.loads(line)["valid"] for line in audit.splitlines())
    # flip one claimed class and the audit must fail
    recs = [json.loads(line) for line in text.splitlines()]
    recs[0]["verdict"]["class"] = "planar"
    path.write_text("\n".join(json.dumps(r) for r in recs))
    code, audit = run(["certify", "--check", str(path)])
    assert code == 1 and not json.loads(audit.splitlines()[0])["valid"]
    code, _ = run(["certify", "--check", "-"], "{not json\n", monkeypatch)
    assert code == 2


def test_verify_suite_streams_and_summarises():
    code, text = run(["verify", "lemma-mobius", "--max-n", "5"])
    recs = [json.loads(line) for line in text.splitlines()]
    assert code == 0 and recs[-1]["summary"] and recs[-1]["records"] == 3
    code, text = run(["verify", "thm4", "--max-n", "6"])
    assert code == 0 and json.loads(text.splitlines()[-1])["violations"] == 0


@pytest.mark.parametrize("key", ["K5", "K33", "EX1", "EX3", "EX6", "K5+", "K33oe", "DW:4", "M:4", "C2:7", "AW:6",
                                 "Wclass:4,0;4,1;3,none", "LK33", "Cube+v"])
def test_gen_pipes_into_check(key, monkeypatch):
    _, g6 = run(["gen", key])
    code, text = run(["check", "--method", "definition"], g6, monkeypatch)
    want = decide_by_definition(named_graph(key), certificates=False).kind.value
    assert text.split()[1] == want and code == (1 if want == "neither" else 0)


def test_console_entry_point():
    gen = subprocess.run([sys.executable, "-m", "almostplanar", "gen", "DW:3"], capture_output=True, text=True)
    chk = subprocess.run([sys.executable, "-m", "almostplanar", "check"], input=gen.stdout, capture_output=True, text=True)
    assert gen.returncode == 0 and chk.returncode == 0 and "almost-planar agree" in chk.stdout
