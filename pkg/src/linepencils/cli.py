"""Command line interface.

Exit codes: 0 success, 2 invalid input, 3 inconclusive result.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from . import fixtures, io
from .classes import admissible_classes, triangle_census
from .errors import PencilError, SearchBoundExceeded
from .manifest import SCHEMA, input_hash, run_manifest
from .pencils import SearchOptions, enumerate_pencils

EXIT_OK, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 2, 3


class _Done(Exception):
    def __init__(self, payload: dict[str, Any], text: str, code: int = EXIT_OK):
        self.payload, self.text, self.code = payload, text, code


def _emit(args, command: str, payload: dict[str, Any], text: str) -> None:
    if args.format == "structured":
        body = {"schema": SCHEMA, "command": command}
        body.update(payload)
        print(json.dumps(body, indent=2, sort_keys=True))
    else:
        print(text)


def _load(args):
    return io.load(args.file)


def _options(args) -> SearchOptions:
    return SearchOptions(max_fibers=getattr(args, "max_fibers", 8),
                         include_nonmaximal=getattr(args, "include_nonmaximal", False))


def _pencil_obj(P) -> dict[str, Any]:
    return {"k": P.k, "kind": "point" if P.is_point_type else "pencil",
            "fibers": [list(F) for F in P.fibers],
            "weights": {str(l): w for l, w in P.weights},
            "base_points": [list(p) for p in P.base_points],
            "matrix": P.matrix()}


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args):
    c = _load(args)
    payload = {"valid": True, "lines": c.n, "points": [list(p) for p in c.points],
               "input_hash": input_hash(c)}
    return payload, f"valid: {c.n} lines, {len(c.points)} multiple points"


def cmd_pencils(args):
    c = _load(args)
    ps = enumerate_pencils(c, _options(args))
    npt = sum(P.is_point_type for P in ps)
    other = len(ps) - npt
    lines = [f"{len(ps)} classes ({npt} point-type, {other} pencil{'' if other == 1 else 's'})"]
    for i, P in enumerate(ps):
        lines.append(f"  [{i}] {P.describe()}  base points: {len(P.base_points)}")
    return {"classes": len(ps), "pencils": [_pencil_obj(P) for P in ps]}, "\n".join(lines)


def cmd_classes(args):
    c = _load(args)
    cl = admissible_classes(c, _options(args))
    lines = [f"{len(cl)} maximal admissible classes"]
    objs = []
    for i, a in enumerate(cl):
        lines.append(f"  [{i}] k={a.k} {a.label()}")
        objs.append({"index": i, "k": a.k, "kind": a.kind, "label": a.label(),
                     "matrix": [list(r) for r in a.matrix]})
    return {"classes": objs}, "\n".join(lines)


def cmd_triangles(args):
    c = _load(args)
    cl = admissible_classes(c, _options(args))
    census = triangle_census(cl, all_k=args.all_k)
    lines = [f"{len(census.triangles)} triangles among {len(census.scope)} classes",
             f"  {'class':<28} {'k':>2} {'triangles':>9}"]
    rows = []
    for i in census.scope:
        a = cl[i]
        lines.append(f"  {a.label():<28} {a.k:>2} {census.counts[i]:>9}")
        rows.append({"index": i, "label": a.label(), "kind": a.kind, "k": a.k, "triangles": census.counts[i]})
    payload = {"triangles": [list(t) for t in census.triangles], "counts": rows}
    return payload, "\n".join(lines)


def _scalar_name(M) -> str:
    m = len(M)
    for s, name in ((1, "Id"), (-1, "-Id")):
        if all(M[i][j] == s * (i == j) for i in range(m) for j in range(m)):
            return name
    return "other"


def cmd_rigidity(args):
    from .rigidity import rigidity_check
    c = _load(args)
    report = rigidity_check(c, _options(args))
    lines = [report.verdict]
    if report.reason:
        lines.append(f"  reason: {report.reason}")
    for k, v in report.certificate.items():
        if k == "identity_members":
            v = f"{len(v)} ({', '.join(map(_scalar_name, v))})" if v else "0"
        lines.append(f"  {k}: {v}")
    if report.witness is not None:
        lines.append("  witness (basis e_1..e_{n-1}):")
        lines.append("\n".join("    " + r for r in io.format_matrix(report.witness.B).splitlines()))
    code = EXIT_INCONCLUSIVE if report.verdict == "Inconclusive" else EXIT_OK
    raise _Done(report.summary(), "\n".join(lines), code)


def _matrix(args):
    return io.parse_matrix(Path(args.matrix).read_text(encoding="utf-8"))


def cmd_aut1(args):
    from .rigidity import CandidateAutomorphism, is_aut1
    c = _load(args)
    M = _matrix(args)
    phi = CandidateAutomorphism.from_basis(M) if len(M) == c.n - 1 else CandidateAutomorphism.from_generating(M)
    ok = is_aut1(c, phi)
    return {"aut1": ok, "det": phi.det}, f"aut1: {str(ok).lower()} (det {phi.det})"


def cmd_os(args):
    from .duality import is_os_automorphism, os_coefficients
    c = _load(args)
    M = _matrix(args)
    ok = is_os_automorphism(c, M)
    bad = len(os_coefficients(c, M))
    return {"os_automorphism": ok, "nonzero_coefficients": bad}, \
        f"os automorphism: {str(ok).lower()} ({bad} nonzero coefficients)"


def cmd_duality(args):
    from .duality import duality_check
    c = _load(args)
    ok = duality_check(c, _matrix(args))
    return {"agree": True, "value": ok}, f"duality agrees: both sides {str(ok).lower()}"


def cmd_fixtures(args):
    if args.action == "list":
        names = sorted(fixtures.FIXTURES)
        return {"fixtures": names}, "\n".join(names)
    if not args.name:
        raise PencilError("fixtures emit needs a fixture name")
    try:
        c = fixtures.get(args.name)
    except KeyError as exc:
        raise PencilError(exc.args[0]) from None
    return io.to_structured(c), io.serialize(c).rstrip("\n")


def cmd_manifest(args):
    c = _load(args)
    parts = ("classes",) + (() if args.no_triangles else ("triangles",)) + (() if args.no_rigidity else ("rigidity",))
    m = run_manifest(c, "manifest", parts, _options(args))
    payload = {"input_hash": m.input_hash, "summary": m.summary, "options": m.options}
    if args.output:
        Path(args.output).write_text(m.to_json() + "\n", encoding="utf-8")
    return payload, json.dumps(m.summary, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--max-fibers", type=int, default=8, metavar="K")
    search.add_argument("--include-nonmaximal", action="store_true",
                        help="keep classes that are maximal only on their own support")

    p = argparse.ArgumentParser(prog="linepencils", description="Pencils and rigidity of line combinatorics.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, parents=(), help=None, file=True):
        sp = sub.add_parser(name, parents=[common, *parents], help=help)
        if file:
            sp.add_argument("file")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, help="check an input file")
    add("pencils", cmd_pencils, [search], help="one pencil per maximal admissible class")
    add("classes", cmd_classes, [search], help="maximal admissible classes")
    add("triangles", cmd_triangles, [search], help="triangle census").add_argument(
        "--all-k", action="store_true", help="count triangles among classes of every fiber count")
    add("rigidity", cmd_rigidity, [search], help="homological rigidity verdict")
    for name, func in (("aut1-check", cmd_aut1), ("os-check", cmd_os), ("duality", cmd_duality)):
        add(name, func).add_argument("--matrix", required=True)
    fx = add("fixtures", cmd_fixtures, file=False, help="bundled fixtures")
    fx.add_argument("action", choices=("list", "emit"))
    fx.add_argument("name", nargs="?")
    mf = add("manifest", cmd_manifest, [search], help="result summary for the corpus")
    mf.add_argument("--output")
    mf.add_argument("--no-rigidity", action="store_true")
    mf.add_argument("--no-triangles", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, text = args.func(args)
        code = EXIT_OK
    except _Done as done:
        payload, text, code = done.payload, done.text, done.code
    except SearchBoundExceeded as exc:
        print(f"error: {getattr(args, 'file', '-')}: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (PencilError, OSError) as exc:
        print(f"error: {getattr(args, 'file', '-')}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(args, args.command, payload, text)
    return code


if __name__ == "__main__":
    sys.exit(main())
