"""Step through the rigidity argument for the ten-line combinatorics."""
import time

from linepencils import fixtures
from linepencils.classes import admissible_classes, collinearity_from_triangles, triangle_census
from linepencils.rigidity import (automorphism_class_permutations, constraint_space,
                                  rigidity_check, triangle_preserving_permutations)


def step(title, t0):
    print(f"[{time.perf_counter() - t0:6.2f}s] {title}")


def main() -> None:
    t0 = time.perf_counter()
    c = fixtures.ten_line_example()
    cl = admissible_classes(c)
    step(f"{len(cl)} maximal classes", t0)
    for a in cl:
        print(f"    k={a.k} {a.label()}")

    census = triangle_census(cl)
    by_kind = {}
    for i, v in census.counts.items():
        by_kind.setdefault(cl[i].kind, set()).add(v)
    step(f"{len(census.triangles)} triangles; per-class counts {by_kind}", t0)

    pts = [a for a in cl if a.kind == "point" and a.k == 3]
    verdict = collinearity_from_triangles(pts)
    aligned = [t for t, v in verdict.items() if v == "aligned"]
    undetermined = sum(v == "undetermined" for v in verdict.values())
    step(f"{len(aligned)} aligned triples of triple points recovered ({undetermined} undetermined)", t0)

    sigmas = triangle_preserving_permutations(census, cl)
    induced = automorphism_class_permutations(c, cl)
    step(f"{len(sigmas)} triangle-preserving class permutations, {len(induced)} induced by line automorphisms", t0)

    ident = tuple(range(len(cl)))
    point_idx = [i for i, a in enumerate(cl) if a.kind == "point"]
    s1 = constraint_space(c, ident, cl, point_idx)
    step(f"point classes fixed: constraint space dim {s1.dim}, diagonal={s1.diagonal}", t0)
    s2 = constraint_space(c, ident, cl)
    step(f"all classes fixed: dim {s2.dim}, scalar={s2.scalar}", t0)

    rep = rigidity_check(c)
    step(f"verdict: {rep.verdict}", t0)
    for k, v in rep.certificate.items():
        if k != "identity_members":
            print(f"    {k}: {v}")


if __name__ == "__main__":
    main()
