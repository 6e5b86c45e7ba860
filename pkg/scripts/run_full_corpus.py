#!/usr/bin/env python3
"""Twenty-author, 100-book experiment with combined features.

Needs the texts listed in the bundled twenty_authors.csv as <book_id>.txt in
BOOKS_DIR. Reports combined-feature LOOCV accuracy against 3x the 5% chance
level; the original figures are not expected to reproduce exactly.
"""

import argparse
import os
import sys
from pathlib import Path

from mesotext import cli, corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("books_dir")
    ap.add_argument("--out", default="runs/full_corpus")
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    args = ap.parse_args()

    manifest = corpus.bundled_manifest("twenty_authors")
    entries = corpus.load_manifest(manifest, base_dir=args.books_dir)
    missing = [e.book_id for e in entries if not Path(e.source).exists()]
    if missing:
        print(f"warning: {len(missing)} texts missing, they will be reported as failures", file=sys.stderr)
    code = cli.main([
        "run", "--manifest", str(manifest), "--books-dir", args.books_dir, "--out", args.out,
        "--cache-dir", str(Path(args.out) / "cache"), "--jobs", str(args.jobs), "--render-k", "0",
    ])
    table = (Path(args.out) / "reports" / "accuracy_table.tsv").read_text().splitlines()
    header = table[0].split("\t")[1:]
    combined = next(r for r in table if r.startswith("All combined")).split("\t")[1:]
    acc = dict(zip(header, (float(c.rstrip("%")) for c in combined)))
    print(f"combined svm {acc.get('svm', float('nan')):.1f}% (needs > 15.0%), "
          f"random forest {acc.get('random_forest', float('nan')):.1f}%")
    return code


if __name__ == "__main__":
    sys.exit(main())
