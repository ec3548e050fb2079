from __future__ import annotations

import json

import pytest

from diagcover import formats
from diagcover.catalog import make
from diagcover.cover import gamma, verify_normal_covering
from diagcover.example import build_spec, covering_certificate
from diagcover.group import subgroup
from diagcover.perm import Permutation


def test_parse_cycles():
    assert formats.parse_cycles("(0 1 2)", 3) == Permutation([1, 2, 0])
    assert formats.parse_cycles("()", 4).is_identity()
    assert formats.parse_cycles("", 2).is_identity()
    assert formats.parse_cycles("(3 4) (0 2 1)", 5) == Permutation.from_cycles([(0, 2, 1), (3, 4)], 5)


@pytest.mark.parametrize("bad", ["(0 1)(1 2)", "(0 5)", "0 1", "(0 1", "(a b)", "(0,1)"])
def test_parse_cycles_errors(bad):
    with pytest.raises(formats.FormatError):
        formats.parse_cycles(bad, 3)


@pytest.mark.parametrize("spec", ["S3", "A5", "D5", "V4", "AGL1:7", "PSL2:7", "C1"])
def test_group_roundtrip(spec):
    G = make(spec)
    text = formats.emit_group(G)
    H = formats.parse_group(text)
    assert H.degree == G.degree and H.generators == G.generators
    assert formats.emit_group(H) == text
    G.materialize()
    H.materialize()
    assert set(G.elements) == set(H.elements)


def test_group_file_layout():
    data = json.loads(formats.emit_group(make("S3")))
    assert data == {"degree": 3, "generators": ["(0 1)", "(0 1 2)"], "name": "S3"}
    with pytest.raises(formats.FormatError):
        formats.parse_group('{"generators": []}')
    with pytest.raises(formats.FormatError):
        formats.parse_group("not json")


def test_certificate_kinds():
    doc = formats.certificate("lemma", {"name": "twist"}, {"holds": True})
    assert set(doc) == {"kind", "subject", "body", "version"}
    assert formats.certificate("example", {}, {}, seed=3)["seed"] == 3
    with pytest.raises(ValueError):
        formats.certificate("other", {}, {})


def test_load_certificate_requires_fields():
    with pytest.raises(formats.FormatError):
        formats.load_certificate('{"kind": "gamma"}')


def test_dumps_is_stable():
    a = formats.dumps({"b": 1, "a": [1, 2]})
    assert a == formats.dumps({"a": [1, 2], "b": 1})
    assert a.endswith("\n")


def test_replay_gamma_and_cover():
    G = make("S4")
    G.materialize()
    doc = formats.certificate("gamma", formats.group_to_dict(G), formats.gamma_body(gamma(G)))
    assert formats.replay(json.loads(formats.dumps(doc)))
    comps = [subgroup(G, [Permutation.from_cycles([(0, 1, 2)], 4)])]
    cert = verify_normal_covering(G, comps)
    doc = formats.certificate("cover", {"group": formats.group_to_dict(G)}, formats.cover_body(cert))
    assert formats.replay(doc)
    assert doc["body"]["covered"] is False


def test_replay_example_and_tamper():
    spec = build_spec("A5", "inn", 7)
    body = covering_certificate(spec, 20, 5).to_body()
    doc = formats.certificate("example", formats.example_subject("A5", "inn", 7, 20), body, seed=5)
    assert formats.replay(doc)
    doc["body"]["samples"][0]["k"] = 99
    assert not formats.replay(doc)
    doc = formats.certificate("example", formats.example_subject("A5", "inn", 7, 20), body, seed=6)
    assert not formats.replay(doc)


def test_replay_lemma():
    from diagcover.lemmas import run_named

    params = {"T": "A5", "phi": 4}
    doc = formats.certificate("lemma", {"name": "twist", "params": params}, run_named("twist", params))
    assert formats.replay(doc)
