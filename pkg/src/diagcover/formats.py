"""JSON files for groups (``.grp.json``) and certificates (``.cert.json``).

Cycle notation is 0-based, e.g. ``"(0 1 2)(3 4)"``; the identity is ``"()"``.
Certificates are written with sorted keys and fixed indentation so that
re-running a computation with the same inputs gives byte-identical output.
"""

from __future__ import annotations

import json
import re

from . import __version__
from .group import PermGroup, SubgroupRecord
from .perm import Permutation

_CYCLES_RE = re.compile(r"^(\(\s*\d*(?:\s+\d+)*\s*\))*$")


class FormatError(ValueError):
    pass


def parse_cycles(text: str, degree: int) -> Permutation:
    compact = text.strip()
    if compact in ("", "()"):
        return Permutation.identity(degree)
    if not _CYCLES_RE.match(re.sub(r"\)\s+\(", ")(", compact)):
        raise FormatError(f"malformed cycle notation: {text!r}")
    cycles = [[int(x) for x in body.split()] for body in re.findall(r"\(([^)]*)\)", compact)]
    try:
        return Permutation.from_cycles([c for c in cycles if c], degree)
    except ValueError as exc:
        raise FormatError(f"{exc} in {text!r}") from None


def format_cycles(p: Permutation) -> str:
    return str(p)


def group_to_dict(G: PermGroup) -> dict:
    out = {"degree": G.degree, "generators": [format_cycles(g) for g in G.generators]}
    if G.name:
        out["name"] = G.name
    return out


def group_from_dict(data: dict) -> PermGroup:
    try:
        degree = int(data["degree"])
        gens = [parse_cycles(s, degree) for s in data.get("generators", [])]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad group file: {exc}") from None
    return PermGroup(degree, gens, name=data.get("name"))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_group(text: str) -> PermGroup:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad JSON: {exc}") from None
    return group_from_dict(data)


def emit_group(G: PermGroup) -> str:
    return dumps(group_to_dict(G))


def subgroup_to_dict(H: SubgroupRecord) -> dict:
    return {"generators": [format_cycles(g) for g in H.generators], "order": H.order}


# ---------------------------------------------------------------------------
# certificates

KINDS = ("cover", "gamma", "example", "lemma", "report")


def certificate(kind: str, subject: dict, body: dict, seed: int | None = None) -> dict:
    if kind not in KINDS:
        raise ValueError(f"unknown certificate kind {kind!r}")
    doc = {"kind": kind, "subject": subject, "body": body, "version": __version__}
    if seed is not None:
        doc["seed"] = seed
    return doc


def cover_body(cert) -> dict:
    return {
        "components": [subgroup_to_dict(H) for H in cert.components],
        "assignments": [
            {"representative": format_cycles(a.representative), "component": a.component,
             "conjugator": format_cycles(a.conjugator)}
            for a in cert.assignments
        ],
        "uncovered": [format_cycles(r) for r in cert.uncovered],
        "covered": cert.ok,
    }


def gamma_body(result) -> dict:
    return {"gamma": result.value, "witness": cover_body(result.witness)}


def example_subject(T_spec: str, U_kind: str, p: int, samples: int) -> dict:
    return {"T": T_spec, "U": U_kind, "p": p, "samples": samples}


def load_certificate(text: str) -> dict:
    data = json.loads(text)
    for key in ("kind", "subject", "body", "version"):
        if key not in data:
            raise FormatError(f"certificate lacks {key!r}")
    return data


def replay(doc: dict) -> bool:
    """Recompute a certificate from its embedded inputs and compare bodies."""
    from .cover import gamma, verify_normal_covering
    from .example import build_spec, covering_certificate
    from .lemmas import run_named

    kind, subject = doc["kind"], doc["subject"]
    if kind == "gamma":
        G = group_from_dict(subject)
        G.materialize()
        body = gamma_body(gamma(G))
    elif kind == "cover":
        G = group_from_dict(subject["group"])
        G.materialize()
        from .group import subgroup
        comps = [subgroup(G, [parse_cycles(s, G.degree) for s in c["generators"]])
                 for c in doc["body"]["components"]]
        body = cover_body(verify_normal_covering(G, comps))
    elif kind == "example":
        spec = build_spec(subject["T"], subject["U"], subject["p"])
        body = covering_certificate(spec, subject["samples"], doc["seed"]).to_body()
    elif kind == "lemma":
        body = run_named(subject["name"], subject["params"])
    else:
        raise FormatError(f"cannot replay kind {kind!r}")
    return dumps(body) == dumps(doc["body"])
