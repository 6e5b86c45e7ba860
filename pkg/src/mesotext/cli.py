"""Command line entry point: ingest, build, measure, features, classify, pairwise, pca, render.

Every stage reads the previous stage's files under ``--out`` so partial
reruns are possible; ``run`` chains them all.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import corpus
from .config import ConfigError, RunConfig, parse_k_list
from .features import ALL_MEASUREMENTS, DatasetMatrix, book_features, standardize
from .learn import frequent_words_features, loocv, make_trainer, pairwise_matrix, pca, silhouette
from .learn.evaluation import pairwise_csv
from .layout import LayoutConfig, coords_csv, fr_layout, render_svg
from .mesonet import format_k, read_edgelist, write_edgelist, write_graphml
from .netmeasures import NodeMeasureTable, measure_network
from .pipeline import book_networks
from .textproc import TooFewParagraphsError, load_lemma_table, load_stopwords

log = logging.getLogger("mesotext")

EXIT_OK, EXIT_PARTIAL, EXIT_CONFIG = 0, 1, 2


class StageError(RuntimeError):
    pass


# output layout


def text_path(cfg, book_id):
    return cfg.out_dir / "texts" / f"{book_id}.txt"


def network_path(cfg, book_id, k, suffix="edgelist"):
    return cfg.out_dir / "networks" / book_id / f"k{format_k(k)}.{suffix}"


def measure_path(cfg, book_id, k):
    return cfg.out_dir / "measures" / book_id / f"k{format_k(k)}.csv"


def svg_path(cfg, book_id, k):
    return cfg.out_dir / "svg" / f"{book_id}_k{format_k(k)}.svg"


def write_text(path, text: str) -> None:
    corpus.atomic_write_bytes(path, text.encode("utf-8"))


def save_config(cfg: RunConfig) -> None:
    write_text(cfg.out_dir / "config.json", cfg.to_json())


def load_entries(cfg):
    if not cfg.manifest:
        raise ConfigError("--manifest is required")
    try:
        return corpus.load_manifest(cfg.manifest, base_dir=cfg.books_dir)
    except (OSError, corpus.ManifestError) as exc:
        raise ConfigError(str(exc)) from None


def _map(cfg, fn, items):
    if cfg.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# stages


def _ingest_one(args):
    cfg, entry = args
    try:
        book = corpus.fetch_text(entry, cfg.cache_dir or corpus.default_cache_dir())
    except corpus.FetchError as exc:
        return entry.book_id, str(exc)
    write_text(text_path(cfg, entry.book_id), book.body + "\n")
    return entry.book_id, None


def cmd_ingest(cfg) -> int:
    entries = load_entries(cfg)
    save_config(cfg)
    failed = 0
    for book_id, err in _map(cfg, _ingest_one, [(cfg, e) for e in entries]):
        if err:
            failed += 1
            log.error("ingest %s: %s", book_id, err)
        else:
            log.info("ingested %s", book_id)
    return EXIT_PARTIAL if failed else EXIT_OK


def _build_one(args):
    cfg, entry = args
    src = text_path(cfg, entry.book_id)
    if not src.exists():
        return entry.book_id, [], f"missing {src} (run ingest first)"
    stopwords = load_stopwords(cfg.stopwords)
    lemmas = load_lemma_table(cfg.lemmas)
    try:
        nets = book_networks(
            src.read_text("utf-8"), stopwords, lemmas, cfg.delta, cfg.k_values, entry.book_id
        )
    except (TooFewParagraphsError, ValueError) as exc:
        return entry.book_id, [], str(exc)
    rows = []
    for k, net in nets.pruned.items():
        path = network_path(cfg, entry.book_id, k)
        path.parent.mkdir(parents=True, exist_ok=True)
        write_edgelist(net, path)
        write_graphml(net, network_path(cfg, entry.book_id, k, "graphml"))
        rows.append(
            f"{entry.book_id}\t{len(nets.text.paragraphs)}\t{nets.n_windows}\t{format_k(k)}"
            f"\t{net.edge_count}\t{net.average_degree:.6f}"
        )
    return entry.book_id, rows, None


def cmd_build(cfg) -> int:
    entries = load_entries(cfg)
    save_config(cfg)
    lines = ["book_id\tparagraphs\twindows\tk\tedges\tachieved_k"]
    failed = 0
    for book_id, rows, err in _map(cfg, _build_one, [(cfg, e) for e in entries]):
        if err:
            failed += 1
            log.error("build %s skipped: %s", book_id, err)
            lines.append(f"{book_id}\tSKIPPED\t{err}")
        lines += rows
    write_text(cfg.out_dir / "build_log.tsv", "\n".join(lines) + "\n")
    return EXIT_PARTIAL if failed else EXIT_OK


def _measure_one(args):
    cfg, entry = args
    for k in cfg.k_values:
        src = network_path(cfg, entry.book_id, k)
        if not src.exists():
            return entry.book_id, f"missing network {src} (run build first)"
        table = measure_network(read_edgelist(src))
        dst = measure_path(cfg, entry.book_id, k)
        dst.parent.mkdir(parents=True, exist_ok=True)
        table.write(dst)
    return entry.book_id, None


def cmd_measure(cfg) -> int:
    entries = load_entries(cfg)
    save_config(cfg)
    failed = 0
    for book_id, err in _map(cfg, _measure_one, [(cfg, e) for e in entries]):
        if err:
            failed += 1
            log.error("measure %s: %s", book_id, err)
    return EXIT_PARTIAL if failed else EXIT_OK


def cmd_features(cfg) -> int:
    entries = load_entries(cfg)
    save_config(cfg)
    vectors, texts, failed = [], [], 0
    for e in entries:
        try:
            tables = {}
            for k in cfg.k_values:
                path = measure_path(cfg, e.book_id, k)
                if not path.exists():
                    raise StageError(f"missing measurements {path} (run measure first)")
                tables[k] = NodeMeasureTable.read(path)
            vectors.append(book_features(tables, e.book_id, e.author, cfg.k_values, cfg.measurements))
            texts.append((e.book_id, e.author, text_path(cfg, e.book_id).read_text("utf-8")))
        except (StageError, OSError, ValueError) as exc:
            failed += 1
            log.error("features %s: %s", e.book_id, exc)
    if not vectors:
        log.error("no feature vectors produced")
        return EXIT_PARTIAL
    DatasetMatrix.from_vectors(vectors).write_csv(cfg.out_dir / "features.csv")
    frequent_words_features(texts, cfg.top_n).write_csv(cfg.out_dir / "baseline_features.csv")
    return EXIT_PARTIAL if failed else EXIT_OK


def _load_features(cfg, name="features.csv") -> DatasetMatrix:
    path = cfg.out_dir / name
    if not path.exists():
        raise StageError(f"missing {path} (run features first)")
    return DatasetMatrix.read_csv(path)


def _trainer(cfg, kind, names):
    return make_trainer(kind, seed=cfg.seed, feature_names=names, c_param=cfg.c_param, n_trees=cfg.n_trees)


def cmd_classify(cfg) -> int:
    save_config(cfg)
    data = _load_features(cfg)
    reports_dir = cfg.out_dir / "reports"
    clfs = cfg.classifiers
    subsets = [(f"k={format_k(k)}", data.select_columns(f"k{format_k(k)}:")) for k in cfg.k_values]
    subsets.append(("All combined", data))
    n_authors = len(set(data.authors))
    table = ["average_degree\t" + "\t".join({"rf": "random_forest", "svm": "svm"}[c] for c in clfs)]
    for label, sub in subsets:
        cells = []
        for c in clfs:
            rep = loocv(sub.X, sub.authors, _trainer(cfg, c, sub.feature_names), sub.book_ids, jobs=cfg.jobs)
            tag = label.replace("=", "").replace(" ", "_").lower()
            write_text(reports_dir / f"{c}_{tag}.txt", rep.to_text(f"{c} {label}"))
            write_text(reports_dir / f"confusion_{c}_{tag}.csv", rep.confusion_csv())
            cells.append(f"{100 * rep.accuracy:.1f}%")
        table.append(f"{label}\t" + "\t".join(cells))
    table.append("chance\t" + "\t".join(f"{100 / n_authors:.1f}%" for _ in clfs))
    text = "\n".join(table) + "\n"
    write_text(reports_dir / "accuracy_table.tsv", text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_pairwise(cfg) -> int:
    save_config(cfg)
    for name, out in (("features.csv", "pairwise_mesoscopic.csv"), ("baseline_features.csv", "pairwise_frequent_words.csv")):
        data = _load_features(cfg, name)
        authors, mat = pairwise_matrix(data, _trainer(cfg, "svm", data.feature_names), jobs=cfg.jobs)
        write_text(cfg.out_dir / "reports" / out, pairwise_csv(authors, mat))
    return EXIT_OK


def cmd_pca(cfg) -> int:
    save_config(cfg)
    data = _load_features(cfg)
    z = standardize(data)
    res = pca(z.X, 2)
    lines = ["book_id,author,pc1,pc2"]
    lines += [f"{b},{a},{x!r},{y!r}" for b, a, (x, y) in zip(data.book_ids, data.authors, res.coords.tolist())]
    write_text(cfg.out_dir / "reports" / "pca.csv", "\n".join(lines) + "\n")
    summary = (
        f"explained_variance_ratio={res.explained_variance_ratio[0]:.6f},{res.explained_variance_ratio[1]:.6f}\n"
        f"silhouette={silhouette(res.coords, data.authors):.6f}\n"
    )
    write_text(cfg.out_dir / "reports" / "pca_summary.txt", summary)
    sys.stdout.write(summary)
    return EXIT_OK


def cmd_render(cfg, book_ids=None) -> int:
    save_config(cfg)
    if not book_ids:
        book_ids = [e.book_id for e in load_entries(cfg)]
    k = cfg.render_k
    failed = 0
    layout_cfg = LayoutConfig(iterations=cfg.layout_iterations, seed=cfg.seed)
    for book_id in book_ids:
        src = network_path(cfg, book_id, k)
        if not src.exists():
            log.error("render %s: missing network %s (run build with k=%s)", book_id, src, format_k(k))
            failed += 1
            continue
        net = read_edgelist(src)
        emb = fr_layout(net, layout_cfg)
        dst = svg_path(cfg, book_id, k)
        write_text(dst, render_svg(net, emb))
        write_text(dst.with_suffix(".coords.csv"), coords_csv(emb))
        log.info("wrote %s", dst)
    return EXIT_PARTIAL if failed else EXIT_OK


def cmd_run(cfg) -> int:
    worst = EXIT_OK
    for stage in (cmd_ingest, cmd_build, cmd_measure, cmd_features):
        worst = max(worst, stage(cfg))
    for stage in (cmd_classify, cmd_pairwise, cmd_pca):
        worst = max(worst, stage(cfg))
    if cfg.render_k > 0:
        worst = max(worst, cmd_render(cfg))
    return worst


# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--manifest", default="", help="book manifest (book_id,author,title,source)")
    common.add_argument("--delta", type=int, default=20, help="paragraphs per window (default 20)")
    common.add_argument("--k-list", default="5:50:5", help="average degrees, start:stop:step or a,b,c")
    common.add_argument("--classifier", choices=("svm", "rf", "both"), default="both")
    common.add_argument("--measurements", default=",".join(ALL_MEASUREMENTS), help="comma-separated subset")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default="runs/default", help="output directory")
    common.add_argument("--stopwords", help="stopword file, one word per line")
    common.add_argument("--lemmas", help="lemma table, inflected<TAB>lemma per line")
    common.add_argument("--cache-dir", help=f"download cache (default ${corpus.CACHE_ENV} or ~/.cache/mesotext)")
    common.add_argument("--books-dir", help="resolve relative manifest sources against this directory")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--trees", type=int, default=50, help="random forest size")
    common.add_argument("--top-n", type=int, default=20, help="frequent-words baseline vocabulary size")
    common.add_argument("--render-k", type=float, default=10.0, help="average degree drawn by render (0: run skips rendering)")
    common.add_argument("--layout-iterations", type=int, default=1000)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="mesotext", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("ingest", "fetch and clean the manifest's texts"),
        ("build", "window networks pruned to each average degree"),
        ("measure", "node measurements for every built network"),
        ("features", "feature matrix and frequent-words baseline"),
        ("classify", "leave-one-out accuracy per average degree and combined"),
        ("pairwise", "author-by-author accuracy matrices"),
        ("pca", "two-component PCA of the feature matrix"),
        ("render", "force-directed SVG drawings"),
        ("run", "ingest through pca, then render"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "render":
            p.add_argument("--book", action="append", dest="books", help="book id (repeatable; default all)")
    return parser


def config_from_args(args) -> RunConfig:
    return RunConfig(
        manifest=args.manifest,
        delta=args.delta,
        k_values=parse_k_list(args.k_list),
        measurements=tuple(m.strip() for m in args.measurements.split(",") if m.strip()),
        classifier=args.classifier,
        seed=args.seed,
        out=args.out,
        stopwords=args.stopwords,
        lemmas=args.lemmas,
        cache_dir=args.cache_dir or os.environ.get(corpus.CACHE_ENV),
        books_dir=args.books_dir,
        jobs=args.jobs,
        n_trees=args.trees,
        top_n=args.top_n,
        render_k=args.render_k,
        layout_iterations=args.layout_iterations,
    )


COMMANDS = {
    "ingest": cmd_ingest,
    "build": cmd_build,
    "measure": cmd_measure,
    "features": cmd_features,
    "classify": cmd_classify,
    "pairwise": cmd_pairwise,
    "pca": cmd_pca,
    "run": cmd_run,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s"
    )
    try:
        cfg = config_from_args(args)
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
        if args.command == "render":
            return cmd_render(cfg, args.books)
        return COMMANDS[args.command](cfg)
    except ConfigError as exc:
        log.error("config error: %s", exc)
        return EXIT_CONFIG
    except StageError as exc:
        log.error("%s", exc)
        return EXIT_PARTIAL


if __name__ == "__main__":
    sys.exit(main())
