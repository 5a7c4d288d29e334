"""Text and structured (JSON) forms of combinatorics and integer matrices.

Text format::

    # comment
    lines: 6
    point: 1 2 3
    point: 1 5 6
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .combinatorics import LineCombinatorics, validate
from .errors import ParseError, ValidationError


def serialize(c: LineCombinatorics) -> str:
    out = [f"lines: {c.n}"]
    out += ["point: " + " ".join(map(str, p)) for p in c.points]
    return "\n".join(out) + "\n"


def to_structured(c: LineCombinatorics) -> dict[str, Any]:
    return {"lines": c.n, "points": [list(p) for p in c.points]}


def from_structured(obj: dict[str, Any]) -> LineCombinatorics:
    if not isinstance(obj, dict) or "lines" not in obj:
        raise ParseError("structured input needs a 'lines' key")
    n = obj["lines"]
    pts = obj.get("points", [])
    if not isinstance(n, int) or not isinstance(pts, list):
        raise ParseError("'lines' must be an integer and 'points' an array")
    for p in pts:
        if not isinstance(p, list) or not all(isinstance(i, int) for i in p):
            raise ParseError(f"point {p!r} is not an array of integers")
    return validate(n, pts)


def parse(text: str) -> LineCombinatorics:
    """Parse either the text format or a JSON object."""
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
        return from_structured(obj)
    n = None
    points = []
    point_lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value', got {raw.strip()!r}", lineno)
        key = key.strip()
        try:
            values = [int(tok) for tok in rest.split()]
        except ValueError:
            raise ParseError(f"non-integer entry in {raw.strip()!r}", lineno) from None
        if key == "lines":
            if n is not None:
                raise ParseError("duplicate 'lines' header", lineno)
            if len(values) != 1:
                raise ParseError("'lines' takes exactly one integer", lineno)
            n = values[0]
        elif key == "point":
            if values != sorted(set(values)):
                raise ParseError("point indices must be strictly increasing", lineno)
            points.append(values)
            point_lines.append(lineno)
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    if n is None:
        raise ParseError("missing 'lines' header")
    try:
        return validate(n, points)
    except ValidationError as exc:
        # attach the line number of the latest point mentioned in the message
        hits = [lineno for p, lineno in zip(points, point_lines) if str(tuple(p)) in str(exc)]
        if hits:
            exc.args = (f"line {max(hits)}: {exc.args[0]}",)
        raise


def load(path: Union[str, Path]) -> LineCombinatorics:
    return parse(Path(path).read_text(encoding="utf-8"))


def parse_matrix(text: str) -> list[list[int]]:
    """Whitespace-separated integer grid; blank lines and # comments ignored."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.replace(",", " ").split()])
        except ValueError:
            raise ParseError(f"non-integer matrix entry in {raw.strip()!r}", lineno) from None
    if not rows:
        raise ParseError("empty matrix")
    if len({len(r) for r in rows}) != 1:
        raise ParseError("matrix rows have different lengths")
    return rows


def format_matrix(M) -> str:
    width = max((len(str(x)) for row in M for x in row), default=1)
    return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in M)
