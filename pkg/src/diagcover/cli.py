"""Command-line front end.

Exit codes: 0 success / property holds, 1 property fails, 2 usage or
validation error, 3 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog, formats
from .cover import gamma, is_basic, verify_normal_covering
from .diagonal import WGroup
from .example import build_spec, covering_certificate, sigma_parts_are_full_cycles
from .group import DEFAULT_CAP, LATTICE_CAP, CapExceededError, conjugacy_classes, subgroup
from .lattice import maximal_subgroup_classes
from .lemmas import LEMMAS, run_named


def load_group(text: str, cap: int):
    """A catalog specifier (``A5``, ``PSL2:11``, ...) or a path to a ``.grp.json`` file."""
    path = Path(text)
    if text.endswith(".json") or path.is_file():
        G = formats.parse_group(path.read_text(encoding="utf-8"))
    else:
        G = catalog.make(text)
    G.materialize(cap)
    return G


def _emit(args, doc: dict, text_lines: list[str]) -> None:
    if args.json:
        out = formats.dumps(doc)
        if args.out:
            Path(args.out).write_text(out, encoding="utf-8")
        else:
            sys.stdout.write(out)
    else:
        for line in text_lines:
            print(line)


def cmd_classes(args) -> int:
    G = load_group(args.group, args.cap)
    table = conjugacy_classes(G)
    rows = [{"representative": str(c.representative), "size": c.size, "order": c.element_order}
            for c in table]
    lines = [f"{len(table)} classes, |G| = {G.order}"]
    lines += [f"  {r['representative']:<24} size {r['size']:>6}  order {r['order']}" for r in rows]
    _emit(args, formats.certificate("report", formats.group_to_dict(G), {"classes": rows}), lines)
    return 0


def cmd_maximals(args) -> int:
    G = load_group(args.group, args.cap)
    found = maximal_subgroup_classes(G, args.lattice_cap)
    rows = [{**formats.subgroup_to_dict(M), "class_size": n} for M, n in found]
    lines = [f"{len(rows)} classes of maximal subgroups of |G| = {G.order}"]
    lines += [f"  order {r['order']:>6}  conjugates {r['class_size']:>4}  <{', '.join(r['generators'])}>"
              for r in rows]
    _emit(args, formats.certificate("report", formats.group_to_dict(G), {"maximals": rows}), lines)
    return 0


def cmd_gamma(args) -> int:
    G = load_group(args.group, args.cap)
    res = gamma(G, args.lattice_cap)
    body = formats.gamma_body(res)
    lines = [f"gamma = {res.value}"]
    for i, H in enumerate(res.witness.components):
        lines.append(f"  component {i}: order {H.order} <{', '.join(map(str, H.generators))}>")
    _emit(args, formats.certificate("gamma", formats.group_to_dict(G), body), lines)
    return 0


def cmd_verify_cover(args) -> int:
    G = load_group(args.group, args.cap)
    comps = []
    for spec in args.component:
        gens = [formats.parse_cycles(s, G.degree) for s in spec.split(";") if s.strip()]
        comps.append(subgroup(G, gens))
    cert = verify_normal_covering(G, comps)
    body = formats.cover_body(cert)
    if cert.ok:
        lines = [f"normal {len(comps)}-covering verified ({len(cert.assignments)} classes assigned)"]
    else:
        lines = ["not a normal covering; uncovered classes:"] + [f"  {r}" for r in cert.uncovered]
    subject = {"group": formats.group_to_dict(G)}
    _emit(args, formats.certificate("cover", subject, body), lines)
    return 0 if cert.ok else 1


def cmd_is_basic(args) -> int:
    G = load_group(args.group, args.cap)
    flag, ev = is_basic(G, args.lattice_cap)
    quotients = [{"normal_order": q.normal_subgroup.order, "quotient_order": q.quotient_order,
                  "quotient_gamma": q.quotient_gamma} for q in ev.quotients]
    body = {"basic": flag, "gamma": ev.gamma, "quotients": quotients, "reason": ev.reason}
    lines = [f"basic = {flag}" + (f" ({ev.reason})" if ev.reason else ""), f"gamma = {ev.gamma}"]
    for q in quotients:
        qg = "inf (cyclic)" if q["quotient_gamma"] is None else q["quotient_gamma"]
        lines.append(f"  |N| = {q['normal_order']}: |G/N| = {q['quotient_order']}, gamma(G/N) = {qg}")
    _emit(args, formats.certificate("report", formats.group_to_dict(G), body), lines)
    return 0 if flag else 1


def cmd_diagonal(args) -> int:
    aut = catalog.cached_automorphism_action(args.T)
    wg = WGroup(aut, args.ell)
    W, stab = wg.build(args.cap)
    body = {"omega": wg.omega_size, "order": W.order, "predicted_order": wg.predicted_order,
            "stabilizer_order": stab.order, "out_order": aut.out_order}
    lines = [f"|Omega| = {wg.omega_size}", f"|W| = {W.order} (predicted {wg.predicted_order})",
             f"|W_omega0| = {stab.order}"]
    _emit(args, formats.certificate("report", {"T": args.T, "ell": args.ell}, body), lines)
    return 0 if W.order == wg.predicted_order else 1


def cmd_example(args) -> int:
    spec = build_spec(args.T, args.U, args.p)
    cert = covering_certificate(spec, args.samples, args.seed)
    ok = cert.recheck() and sigma_parts_are_full_cycles(cert)
    body = cert.to_body()
    s = body["summary"]
    lines = [f"{s['total']} samples verified: {s['tag_H']} in H, {s['tag_K']} conjugated into K"
             if ok else "certificate re-verification FAILED"]
    subject = formats.example_subject(args.T, args.U, args.p, args.samples)
    _emit(args, formats.certificate("example", subject, body, seed=args.seed), lines)
    return 0 if ok else 1


def cmd_lemma(args) -> int:
    params = {}
    for key in ("T", "L", "q", "p", "a", "phi", "t"):
        v = getattr(args, key.lower() if key not in ("T", "L") else key, None)
        if v is not None:
            params[key] = v
    body = run_named(args.name, params)
    lines = [f"{k}: {v}" for k, v in body.items()]
    _emit(args, formats.certificate("lemma", {"name": args.name, "params": params}, body), lines)
    return 0 if body.get("holds", True) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="materialization cap")
    common.add_argument("--lattice-cap", type=int, default=LATTICE_CAP, help="subgroup-lattice cap")
    common.add_argument("--json", action="store_true", help="write a JSON certificate")
    common.add_argument("--out", help="write JSON here instead of stdout")

    parser = argparse.ArgumentParser(prog="diagcover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (
        ("classes", cmd_classes, "conjugacy classes"),
        ("maximals", cmd_maximals, "conjugacy classes of maximal subgroups"),
        ("gamma", cmd_gamma, "normal covering number with witness"),
        ("is-basic", cmd_is_basic, "gamma = 2 with no proper quotient of gamma 2"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("group", help="specifier such as A5 or a .grp.json file")
        p.set_defaults(func=fn)

    p = sub.add_parser("verify-cover", parents=[common], help="check a proposed normal covering")
    p.add_argument("group")
    p.add_argument("--component", action="append", required=True,
                   help="generators of one component, separated by ';'")
    p.set_defaults(func=cmd_verify_cover)

    p = sub.add_parser("diagonal", parents=[common], help="build W on Omega = N/D")
    p.add_argument("--T", required=True)
    p.add_argument("--ell", type=int, default=1)
    p.set_defaults(func=cmd_diagonal)

    p = sub.add_parser("example", help="groups H x| <sigma> and their 2-covering")
    esub = p.add_subparsers(dest="action", required=True)
    v = esub.add_parser("verify", parents=[common], help="seeded covering certificate")
    v.add_argument("--T", required=True)
    v.add_argument("--U", choices=("inn", "aut"), default="aut")
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_example)

    p = sub.add_parser("lemma", parents=[common], help="run one oracle")
    p.add_argument("name", choices=LEMMAS)
    p.add_argument("--T")
    p.add_argument("--L")
    p.add_argument("--q", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--phi", type=int, help="index into the sorted automorphism list")
    p.add_argument("--t", type=int, help="index into the sorted element list of T")
    p.set_defaults(func=cmd_lemma)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
