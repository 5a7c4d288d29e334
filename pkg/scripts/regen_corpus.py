"""Rewrite the bundled corpus (inputs and expected results) from the fixtures.

    python3 scripts/regen_corpus.py            # rewrite everything
    python3 scripts/regen_corpus.py --check    # recompute and compare only
"""
import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from linepencils import fixtures, io
from linepencils.errors import ManifestMismatch
from linepencils.manifest import check_corpus_entry, run_manifest

CORPUS = Path(__file__).resolve().parents[1] / "src" / "linepencils" / "corpus"


@dataclass(frozen=True)
class Entry:
    name: str
    comment: str
    parts: tuple[str, ...] = ("classes", "triangles", "rigidity")


ENTRIES = [
    Entry("ceva", "six lines, four triple points"),
    Entry("degenerate_hesse", "GF(3) plane with concurrent parallel classes", ("classes",)),
    Entry("finite_field_2", "affine plane over GF(2)"),
    Entry("generalized_ceva", "Ceva plus three lines through its double points"),
    # the class permutation search gives up on the Hesse configuration
    Entry("hesse", "affine plane over GF(3)", ("classes", "triangles")),
    Entry("maclane", "eight lines, eight triple points"),
    Entry("pencil_3", "three concurrent lines"),
    Entry("pencil_4", "four concurrent lines"),
    Entry("tenline", "ten lines, ten triple points and one quintuple point"),
    Entry("triangle", "three lines in general position"),
]


def write(entry: Entry) -> None:
    c = fixtures.get(entry.name)
    (CORPUS / f"{entry.name}.lines").write_text(f"# {entry.comment}\n" + io.serialize(c), encoding="utf-8")
    m = run_manifest(c, "manifest", entry.parts)
    (CORPUS / f"{entry.name}.expected.json").write_text(m.to_json() + "\n", encoding="utf-8")
    print(f"{entry.name:<18} {m.summary['classes']:>4} classes  {m.timing:>7.2f}s")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare instead of writing")
    ap.add_argument("names", nargs="*", help="subset of entries")
    args = ap.parse_args(argv)
    entries = [e for e in ENTRIES if not args.names or e.name in args.names]
    failed = 0
    for e in entries:
        if args.check:
            try:
                summary = check_corpus_entry(e.name)
                print(f"{e.name:<18} ok  {json.dumps(summary, sort_keys=True)}")
            except ManifestMismatch as exc:
                failed += 1
                print(f"{e.name:<18} MISMATCH  {exc}")
        else:
            write(e)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
