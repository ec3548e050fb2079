from __future__ import annotations

import json

import pytest

from diagcover import formats
from diagcover.catalog import make
from diagcover.cli import main


@pytest.fixture
def grp_file(tmp_path):
    def write(spec: str):
        path = tmp_path / f"{spec.lower()}.grp.json"
        path.write_text(formats.emit_group(make(spec)))
        return str(path)
    return write


def test_gamma_from_file(grp_file, capsys):
    assert main(["gamma", grp_file("S3")]) == 0
    out = capsys.readouterr().out
    assert out.startswith("gamma = 2")


def test_gamma_cyclic_file(grp_file, capsys):
    assert main(["gamma", grp_file("C6")]) == 2
    assert "cyclic group: no normal covering exists" in capsys.readouterr().err


def test_classes_and_maximals(capsys):
    assert main(["classes", "A5"]) == 0
    assert "5 classes, |G| = 60" in capsys.readouterr().out
    assert main(["maximals", "A5"]) == 0
    assert "3 classes of maximal subgroups" in capsys.readouterr().out


def test_verify_cover_exit_codes(capsys):
    assert main(["verify-cover", "S3", "--component", "(0 1 2)", "--component", "(0 1)"]) == 0
    assert main(["verify-cover", "S3", "--component", "(0 1 2)"]) == 1
    assert main(["verify-cover", "S3", "--component", "(0 1 2);(0 1)"]) == 2  # not proper
    assert main(["verify-cover", "S3", "--component", "(0 9)"]) == 2


def test_is_basic(capsys):
    assert main(["is-basic", "A5"]) == 0
    assert main(["is-basic", "S4"]) == 1


def test_diagonal(capsys):
    assert main(["diagonal", "--T", "A5", "--ell", "1"]) == 0
    out = capsys.readouterr().out
    assert "|W| = 14400" in out and "|W_omega0| = 240" in out


def test_cap_exit_code(capsys):
    assert main(["gamma", "S5", "--cap", "10"]) == 3
    assert main(["gamma", "S6", "--lattice-cap", "100"]) == 3


def test_usage_errors(capsys):
    assert main(["gamma", "Q8"]) == 2
    assert main(["example", "verify", "--T", "A5", "--p", "5"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_example_json_is_byte_identical(tmp_path):
    args = ["example", "verify", "--T", "A5", "--U", "aut", "--p", "7", "--samples", "40", "--seed", "42", "--json"]
    a, b = tmp_path / "a.cert.json", tmp_path / "b.cert.json"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    doc = formats.load_certificate(a.read_text())
    assert doc["kind"] == "example" and doc["seed"] == 42
    assert formats.replay(doc)


def test_json_to_stdout(capsys):
    assert main(["gamma", "A5", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "gamma" and doc["body"]["gamma"] == 2
    assert formats.replay(doc)


def test_lemma_commands(capsys):
    assert main(["lemma", "twist", "--T", "A5"]) == 0
    assert "bijective: 0" in capsys.readouterr().out
    assert main(["lemma", "cyclic-regular", "--L", "AGL1:7"]) == 0
    assert main(["lemma", "power-twist", "--T", "A5", "--phi", "0", "--a", "2"]) == 0
    assert main(["lemma", "tower", "--q", "32", "--p", "3"]) == 2
