"""Triangle census of a fixture or input file, with pairwise Υ statistics.

    python3 scripts/census.py tenline
    python3 scripts/census.py path/to/file.lines --all-k
"""
import argparse
import time
from collections import Counter
from itertools import combinations
from pathlib import Path

from linepencils import fixtures, io
from linepencils.classes import admissible_classes, collinearity_from_triangles, triangle_census, upsilon


def load(source: str):
    return io.load(source) if Path(source).exists() else fixtures.get(source)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("source", help="fixture name or input file")
    ap.add_argument("--all-k", action="store_true")
    args = ap.parse_args(argv)

    c = load(args.source)
    t0 = time.perf_counter()
    cl = admissible_classes(c)
    t1 = time.perf_counter()
    census = triangle_census(cl, all_k=args.all_k)
    t2 = time.perf_counter()
    print(f"{len(cl)} classes ({t1 - t0:.2f}s), {len(census.triangles)} triangles ({t2 - t1:.2f}s)")

    hist = Counter((cl[i].kind, cl[i].k, v) for i, v in census.counts.items())
    print(f"\n{'kind':<8}{'k':>3}{'triangles':>11}{'classes':>9}")
    for (kind, k, v), mult in sorted(hist.items()):
        print(f"{kind:<8}{k:>3}{v:>11}{mult:>9}")

    pairs = Counter((cl[i].kind, cl[j].kind, upsilon((cl[i], cl[j])))
                    for i, j in combinations(census.scope, 2))
    print("\npairwise Υ in scope")
    for (a, b, u), mult in sorted(pairs.items()):
        print(f"  {a:>6}-{b:<6} Υ={u}  x{mult}")

    pts = [a for a in cl if a.kind == "point"]
    if len(pts) >= 3:
        verdict = Counter(collinearity_from_triangles(pts).values())
        print("\nalignment of multiple-point triples from triangles:", dict(sorted(verdict.items())))


if __name__ == "__main__":
    main()
