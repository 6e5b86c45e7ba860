#!/usr/bin/env python3
"""Write a toy multi-author corpus plus manifest for smoke-testing the pipeline.

    python scripts/make_synthetic_corpus.py runs/toy --books 5 --paragraphs 150
    mesotext run --manifest runs/toy/manifest.csv --out runs/toy/out --k-list 5:30:5
"""

import argparse

from mesotext.synthetic import write_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("directory")
    ap.add_argument("--books", type=int, default=5, help="books per author")
    ap.add_argument("--paragraphs", type=int, default=150)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    path = write_corpus(args.directory, books_per_author=args.books, n_par=args.paragraphs, seed=args.seed)
    print(path)


if __name__ == "__main__":
    main()
