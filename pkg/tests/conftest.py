import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from linepencils.combinatorics import validate
from linepencils import fixtures
from linepencils.errors import NotIndecomposable
from linepencils.pencils import vinberg_clauses

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL_FIXTURES = ["ceva", "generalized_ceva", "finite_field_2", "maclane", "pencil_3",
                  "pencil_4", "tenline", "triangle"]
ALL_FIXTURES = sorted(fixtures.FIXTURES)


def random_combinatorics(rng: random.Random, n: int, tries: int = 12):
    """Greedy random set of multiple points with no shared pair."""
    used = set()
    points = []
    for _ in range(tries):
        size = rng.choice((3, 3, 3, 4, 5))
        if size > n:
            continue
        p = sorted(rng.sample(range(1, n + 1), size))
        pairs = {(a, b) for i, a in enumerate(p) for b in p[i + 1:]}
        if pairs & used:
            continue
        used |= pairs
        points.append(p)
    return validate(n, points)


@st.composite
def combinatorics(draw, min_lines=1, max_lines=8):
    n = draw(st.integers(min_lines, max_lines))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_combinatorics(random.Random(seed), n)


def random_unimodular(rng: random.Random, m: int, bound: int = 2, steps: int = 40):
    """Random walk on GL(m, Z) by elementary row moves and swaps, entries kept in [-bound, bound]."""
    B = [[int(i == j) * rng.choice((-1, 1)) for j in range(m)] for i in range(m)]
    for _ in range(steps):
        if m > 1 and rng.random() < 0.2:
            i, j = rng.sample(range(m), 2)
            B[i], B[j] = B[j], B[i]
            continue
        if m < 2:
            break
        i, j = rng.sample(range(m), 2)
        t = rng.choice((-1, 1))
        row = [x + t * y for x, y in zip(B[i], B[j])]
        if all(abs(x) <= bound for x in row):
            B[i] = row
    return B


def random_equal_column_sum(rng: random.Random, n: int, bound: int = 2, steps: int = 60):
    """Random unimodular n x n matrix with all column sums equal, entries in [-bound, bound].

    Moves: add t * row k to row i and subtract it from row j (column sums kept),
    and row swaps.
    """
    sign = rng.choice((-1, 1))
    A = [[sign * int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if rng.random() < 0.2:
            i, j = rng.sample(range(n), 2)
            A[i], A[j] = A[j], A[i]
            continue
        if n < 3:
            continue
        i, j, k = rng.sample(range(n), 3)
        t = rng.choice((-1, 1))
        ri = [x + t * y for x, y in zip(A[i], A[k])]
        rj = [x - t * y for x, y in zip(A[j], A[k])]
        if all(abs(x) <= bound for x in ri + rj):
            A[i], A[j] = ri, rj
    return A


def random_block(rng: random.Random, m: int):
    """Indecomposable, nonpositive off-diagonal, symmetric zero pattern."""
    while True:
        B = [[0] * m for _ in range(m)]
        for i in range(m):
            B[i][i] = rng.randint(-3, 3)
            for j in range(i + 1, m):
                if rng.random() < 0.6:
                    B[i][j], B[j][i] = rng.randint(-3, -1), rng.randint(-3, -1)
        try:
            vinberg_clauses(B)
        except NotIndecomposable:
            continue
        return B


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion in the terminal report

_acceptance: dict[int, tuple[str, bool]] = {}


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    num, title = crit
    ok = report.passed if report.when == "call" else (report.outcome != "failed")
    prev = _acceptance.get(num, (title, True))
    _acceptance[num] = (title, prev[1] and ok)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        rep.criterion = (marker.args[0], marker.args[1])


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_acceptance):
        title, ok = _acceptance[num]
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {title}")
