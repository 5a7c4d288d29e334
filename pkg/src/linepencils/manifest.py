"""Result summaries, run manifests and the bundled corpus."""
from __future__ import annotations

import hashlib
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass
from importlib import resources
from typing import Any, Optional

from .classes import admissible_classes, triangle_census
from .combinatorics import LineCombinatorics
from .errors import ManifestMismatch
from .io import parse, serialize
from .pencils import SearchOptions

SCHEMA = 1


def input_hash(c: LineCombinatorics) -> str:
    return hashlib.sha256(serialize(c).encode()).hexdigest()


PARTS = ("classes", "triangles", "rigidity")


def summarize(c: LineCombinatorics, options: SearchOptions = SearchOptions(),
              parts: tuple[str, ...] = PARTS) -> dict[str, Any]:
    """Class counts per k, triangle-count histogram and the rigidity verdict."""
    classes = admissible_classes(c, options)
    by_k = Counter(a.k for a in classes)
    out: dict[str, Any] = {
        "lines": c.n,
        "classes": len(classes),
        "classes_by_k": {str(k): by_k[k] for k in sorted(by_k)},
        "point_type": sum(1 for a in classes if a.kind == "point"),
    }
    if "triangles" in parts:
        census = triangle_census(classes)
        tri = Counter((classes[i].kind, v) for i, v in census.counts.items())
        out["triangles"] = len(census.triangles)
        out["triangle_counts"] = [[kind, count, mult] for (kind, count), mult in sorted(tri.items())]
    if "rigidity" in parts:
        from .rigidity import rigidity_check
        out["rigidity"] = rigidity_check(c, options).verdict
    return out


@dataclass
class RunManifest:
    input_hash: str
    command: str
    options: dict[str, Any]
    summary: dict[str, Any]
    timing: float = 0.0
    schema: int = SCHEMA

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def run_manifest(c: LineCombinatorics, command: str = "summary", parts: tuple[str, ...] = PARTS,
                 options: SearchOptions = SearchOptions()) -> RunManifest:
    t0 = time.perf_counter()
    summary = summarize(c, options, parts)
    opts = {"max_fibers": options.max_fibers, "include_nonmaximal": options.include_nonmaximal}
    return RunManifest(input_hash(c), command, opts, summary, round(time.perf_counter() - t0, 3))


def compare(expected: dict[str, Any], actual: dict[str, Any]) -> None:
    """Raise ManifestMismatch listing every key of ``expected`` that differs."""
    diffs = [f"{k}: expected {v!r}, got {actual.get(k)!r}" for k, v in expected.items() if actual.get(k) != v]
    if diffs:
        raise ManifestMismatch("; ".join(diffs))


# ---------------------------------------------------------------------------
# corpus


def _corpus():
    return resources.files("linepencils") / "corpus"


def corpus_names() -> list[str]:
    return sorted(p.name[:-len(".lines")] for p in _corpus().iterdir() if p.name.endswith(".lines"))


def corpus_combinatorics(name: str) -> LineCombinatorics:
    return parse((_corpus() / f"{name}.lines").read_text(encoding="utf-8"))


def corpus_expected(name: str) -> Optional[dict[str, Any]]:
    path = _corpus() / f"{name}.expected.json"
    if not path.is_file():
        return None
    data = json.loads(path.read_text(encoding="utf-8"))
    if data.get("schema") != SCHEMA:
        raise ManifestMismatch(f"{name}: unsupported manifest schema {data.get('schema')!r}")
    return data


def check_corpus_entry(name: str) -> dict[str, Any]:
    """Recompute a corpus entry and compare it with its expected-results file."""
    expected = corpus_expected(name)
    if expected is None:
        raise ManifestMismatch(f"{name}: no expected-results file")
    c = corpus_combinatorics(name)
    if expected.get("input_hash") not in (None, input_hash(c)):
        raise ManifestMismatch(f"{name}: input hash differs from manifest")
    want = expected["summary"]
    parts = tuple(p for p in ("triangles", "rigidity") if p in want)
    actual = summarize(c, parts=parts)
    compare(want, actual)
    return actual
