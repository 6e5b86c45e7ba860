#!/usr/bin/env python3
"""Four-author experiment (Darwin, Hardy, Poe, Twain): LOOCV accuracy and PCA.

Needs the 20 texts as <book_id>.txt in BOOKS_DIR (ids are in the bundled
four_authors.csv manifest). Prints the accuracy table and the silhouette of
the two-component projection, then compares them with the 2x-chance bar.
"""

import argparse
import os
import sys
import time
from pathlib import Path

from mesotext import cli, corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("books_dir")
    ap.add_argument("--out", default="runs/four_authors")
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--render", action="store_true", help="also draw k=10 networks")
    args = ap.parse_args()

    manifest = corpus.bundled_manifest("four_authors")
    entries = corpus.load_manifest(manifest, base_dir=args.books_dir)
    missing = [e.book_id for e in entries if not Path(e.source).exists()]
    if missing:
        sys.exit(f"missing texts in {args.books_dir}: {', '.join(missing)}")

    start = time.perf_counter()
    code = cli.main([
        "run", "--manifest", str(manifest), "--books-dir", args.books_dir, "--out", args.out,
        "--cache-dir", str(Path(args.out) / "cache"), "--jobs", str(args.jobs),
        "--render-k", "10" if args.render else "0",
    ])
    minutes = (time.perf_counter() - start) / 60
    out = Path(args.out)
    table = (out / "reports" / "accuracy_table.tsv").read_text().splitlines()
    header = table[0].split("\t")[1:]
    combined = next(r for r in table if r.startswith("All combined")).split("\t")[1:]
    best = max(float(c.rstrip("%")) for c in combined)
    print(f"\nruntime {minutes:.1f} min, exit status {code}")
    print("combined:", ", ".join(f"{h} {c}" for h, c in zip(header, combined)))
    print(f"best {best:.1f}% vs bar 50.0% (chance 25%): {'met' if best >= 50 else 'not met'}")
    print((out / "reports" / "pca_summary.txt").read_text().strip())
    return code


if __name__ == "__main__":
    sys.exit(main())
