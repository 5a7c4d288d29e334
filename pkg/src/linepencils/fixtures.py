"""Named combinatorics used throughout the tests and the bundled corpus."""
from __future__ import annotations

from itertools import combinations
from typing import Callable, Optional, Sequence, Union

from .combinatorics import LineCombinatorics, validate
from .errors import UnsupportedField


def ceva() -> LineCombinatorics:
    """Six lines, four triple points (the complete quadrilateral)."""
    return validate(6, [(1, 2, 3), (1, 5, 6), (2, 4, 6), (3, 4, 5)])


def generalized_ceva() -> LineCombinatorics:
    """Ceva plus the three lines through pairs of its double points.

    Line 7 joins l1∩l4 and l2∩l5, line 8 joins l1∩l4 and l3∩l6, line 9 joins
    l2∩l5 and l3∩l6.
    """
    return validate(9, [(1, 2, 3), (1, 5, 6), (2, 4, 6), (3, 4, 5),
                        (1, 4, 7, 8), (2, 5, 7, 9), (3, 6, 8, 9)])


def pencil_of_lines(k: int) -> LineCombinatorics:
    """k concurrent lines."""
    if k < 1:
        raise ValueError("need at least one line")
    return validate(k, [tuple(range(1, k + 1))] if k >= 3 else [])


def ten_line_example() -> LineCombinatorics:
    """Ten lines with ten triple points and one quintuple point."""
    triples = [(1, 6, 7), (1, 8, 9), (2, 9, 10), (2, 7, 8), (3, 6, 8),
               (3, 7, 10), (4, 6, 10), (4, 7, 9), (5, 8, 10), (5, 6, 9)]
    return validate(10, triples + [(1, 2, 3, 4, 5)])


# ---------------------------------------------------------------------------
# affine planes over small fields

# addition and multiplication tables; GF(4) = {0, 1, w, w+1} encoded 0..3
_GF4_MUL = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]


def _field(q: int):
    if q in (2, 3, 5):
        return (lambda a, b: (a + b) % q), (lambda a, b: (a * b) % q)
    if q == 4:
        return (lambda a, b: a ^ b), (lambda a, b: _GF4_MUL[a][b])
    raise UnsupportedField(f"no built-in field with {q} elements (supported: 2, 3, 4, 5)")


DirectionChoice = Union[str, Sequence[Sequence[int]]]


def finite_field(q: int, choices: Optional[Union[DirectionChoice, Sequence[DirectionChoice]]] = None) -> LineCombinatorics:
    """Lines of the affine plane over GF(q) as a line combinatorics.

    Lines are numbered direction by direction (slopes 0, 1, ..., then the
    vertical direction last), ``q`` lines per direction.  Every affine point is
    a multiple point of multiplicity q+1.  ``choices`` fixes how the q parallel
    lines of each direction meet: ``"general"`` (all doubles, the default),
    ``"concurrent"`` (one common point), or an explicit list of points given
    with local indices 0..q-1.  A single choice applies to every direction.
    """
    add, mul = _field(q)
    elems = range(q)
    directions = [("slope", m) for m in elems] + [("vertical", None)]
    if choices is None or isinstance(choices, str):
        per_dir = [choices or "general"] * len(directions)
    elif choices and all(isinstance(x, int) for x in choices[0]):
        per_dir = [choices] * len(directions)
    else:
        per_dir = list(choices)
        if len(per_dir) != len(directions):
            raise ValueError(f"need {len(directions)} direction choices, got {len(per_dir)}")

    line_no = {}
    for d, (kind, m) in enumerate(directions):
        for b in elems:
            line_no[(d, b)] = d * q + b + 1

    def on_line(d, b, x, y):
        kind, m = directions[d]
        if kind == "vertical":
            return x == b
        return y == add(mul(m, x), b)

    points = []
    for x in elems:
        for y in elems:
            points.append(tuple(line_no[(d, b)] for d in range(len(directions))
                                for b in elems if on_line(d, b, x, y)))
    for d, choice in enumerate(per_dir):
        if choice == "general":
            local = []
        elif choice == "concurrent":
            local = [tuple(range(q))] if q >= 3 else []
        else:
            local = [tuple(p) for p in choice if len(p) >= 3]
        points.extend(tuple(line_no[(d, b)] for b in p) for p in local)
    return validate(len(line_no), points)


def hesse() -> LineCombinatorics:
    """Twelve lines through the nine flexes of a smooth cubic."""
    return finite_field(3, "general")


def degenerate_hesse() -> LineCombinatorics:
    """Hesse with the parallel classes made concurrent (not realizable over C)."""
    return finite_field(3, "concurrent")


def maclane() -> LineCombinatorics:
    """Eight lines with eight triple points: AG(2,3) minus a point, dualized.

    Lines are the affine points other than the origin; triple points are the
    affine lines missing the origin.
    """
    pts = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]
    idx = {p: k + 1 for k, p in enumerate(pts)}
    triples = set()
    for a, b in combinations(pts, 2):
        c = ((-a[0] - b[0]) % 3, (-a[1] - b[1]) % 3)
        if c != (0, 0) and c not in (a, b):
            triples.add(tuple(sorted((idx[a], idx[b], idx[c]))))
    return validate(8, sorted(triples))


def generic(n: int) -> LineCombinatorics:
    """n lines in general position."""
    return validate(n, [])


FIXTURES: dict[str, Callable[[], LineCombinatorics]] = {
    "ceva": ceva,
    "generalized_ceva": generalized_ceva,
    "hesse": hesse,
    "degenerate_hesse": degenerate_hesse,
    "finite_field_2": lambda: finite_field(2),
    "maclane": maclane,
    "pencil_3": lambda: pencil_of_lines(3),
    "pencil_4": lambda: pencil_of_lines(4),
    "tenline": ten_line_example,
    "triangle": lambda: generic(3),
}


def get(name: str) -> LineCombinatorics:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(FIXTURES))}") from None
