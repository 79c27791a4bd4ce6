import io
import json

import pytest

from adesign.cli import main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def trailer(text):
    return dict(line.split(None, 1) for line in text.split("--\n", 1)[1].splitlines() if line.strip())


@pytest.fixture
def fano_file(tmp_path):
    path = tmp_path / "fano.json"
    code, _ = run("construct", "dev", "--group", "Z7", "--set", "1,2,4", "--out", str(path))
    assert code == 0
    return path


def test_construct_verify_roundtrip(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("construct", "qr-log", "--q", "11", "--out", str(a))[0] == 0
    assert run("construct", "qr-log", "--q", "11", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert len(data["blocks"]) == 20
    code, text = run("verify", str(a), "--t", "2")
    assert code == 0 and "reproduced" in text
    assert trailer(text)["exit"] == "0"


def test_verify_refuted_exit_one(tmp_path):
    a = tmp_path / "a.json"
    run("construct", "qr-log", "--q", "11", "--out", str(a))
    code, text = run("verify", str(a), "--t", "4")
    assert code == 1 and "Refuted" in text


def test_construct_stdout_json():
    code, text = run("construct", "qr-log", "--q", "7")
    assert code == 0
    data = json.loads(text.splitlines()[0])
    assert len(data["blocks"]) == 12 and data["claim"]["status"] == "Confirmed"


def test_bad_parameters_exit_two(tmp_path):
    assert run("construct", "qr-log", "--q", "5")[0] == 2
    assert run("construct", "qr-log", "--q", "15")[0] == 2
    assert run("construct", "nope")[0] == 2
    assert run("tables", "--which", "3")[0] == 2
    assert run("bogus")[0] == 2
    empty = tmp_path / "empty.json"
    empty.write_text("")
    assert run("verify", str(empty))[0] == 2
    assert run("code", str(tmp_path / "missing.json"))[0] == 2


def test_analyze():
    code, text = run("analyze", "--group", "Z13", "--set", "1,3,9")
    assert code == 0
    assert "ADS(13,3,0,6)" in text
    code, text = run("analyze", "--group", "Z7", "--set", "1,2,4")
    assert code == 0 and "DS(7,3,1)" in text


def test_analyze_lift():
    code, text = run("analyze", "--group", "Z7", "--set", "1,2,4", "--lift", "0")
    assert code == 0 and "Z2 x" in text


def test_code_extend(fano_file):
    code, text = run("code", str(fano_file))
    assert code == 0
    assert "rank" in text
    code, text = run("code", str(fano_file), "--extend")
    assert code == 0


def test_tables():
    code, text = run("tables", "--which", "1")
    assert code == 1 and "Refuted" in text and "Confirmed" in text
    code, text = run("tables", "--which", "2")
    assert code == 1 and "Confirmed" in text


def test_cap_env(monkeypatch, tmp_path):
    a = tmp_path / "a.json"
    run("construct", "qr-log", "--q", "11", "--out", str(a))
    monkeypatch.setenv("ADESIGN_CAP", "3")
    code, _ = run("verify", str(a), "--t", "2")
    assert code == 2
    monkeypatch.delenv("ADESIGN_CAP")
    assert run("verify", str(a), "--t", "2", "--cap", "3")[0] == 2
    assert run("verify", str(a), "--t", "2")[0] == 0
