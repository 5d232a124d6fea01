"""Command-line front end: ``mlstc label|baseline|bench|generate|export|wedges``."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import cover as cv
from . import labeling as lb
from . import metrics as mt
from .generate import CORRELATED, ER, generate
from .graph import DEFAULT_COLUMNS, MultilayerGraph, ParseError, read_mledges, write_mledges
from .ilpexport import EXPORTERS
from .wedge import build_wedge_graph, build_wedge_hypergraph, dump_wedge_graph

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_BUDGET, EXIT_INVARIANT = 0, 2, 3, 4, 5

BENCH_HEADER = ["dataset", "algorithm", "method", "variant", "weak_pct", "strong_pct", "mu",
                "objective", "inserted", "runtime_ms", "ratio", "status"]
SIZES_HEADER = ["dataset", "stc_nodes", "stc_edges", "stcplus_nodes", "stcplus_edges"]

log = logging.getLogger("mlstc")


class InvariantViolation(RuntimeError):
    pass


@dataclass
class RunConfig:
    input: Path
    columns: tuple[str, ...] = DEFAULT_COLUMNS
    method: str = cv.PRICING
    plus: bool = False
    postprocess: bool = True
    labels_out: Path | None = None
    stats_out: Path | None = None
    budget: int = cv.DEFAULT_EXACT_BUDGET
    node_limit: int | None = None
    greedy_weighted: bool = True
    mu_existing_only: bool = False
    time_all: bool = False
    trace: bool = False
    extra: dict = field(default_factory=dict)


def _columns(text: str) -> tuple[str, ...]:
    cols = tuple(c.strip() for c in text.split(","))
    if sorted(cols) != sorted(DEFAULT_COLUMNS):
        raise argparse.ArgumentTypeError(f"--columns must order {','.join(DEFAULT_COLUMNS)}")
    return cols


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _out_path(cfg: RunConfig, explicit: Path | None, suffix: str) -> Path:
    if explicit is not None:
        return explicit
    tag = cfg.method + ("-plus" if cfg.plus else "")
    return Path(f"{cfg.input.stem}.{cfg.extra.get('kind', 'ml')}-{tag}.{suffix}")


def _load(cfg: RunConfig) -> MultilayerGraph:
    return read_mledges(cfg.input, cfg.columns)


def _check(G, L, what: str) -> None:
    rep = lb.validate(G, L)
    if not rep.ok:
        raise InvariantViolation(
            f"{what}: {len(rep.violations)} STC violations, d_k = {rep.disagreement_count}")


def cmd_label(cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    G = _load(cfg)
    t1 = time.perf_counter()
    trace = cv.stderr_trace if cfg.trace else None
    kw = dict(budget=cfg.budget, node_limit=cfg.node_limit, trace=trace,
              greedy_weighted=cfg.greedy_weighted)
    if cfg.plus:
        L = lb.approx_min_ml_stc_plus(G, cfg.method, cfg.postprocess, **kw)
        if cfg.method == cv.EXACT:
            print("note: exact hypergraph cover is optimal for the insert-everywhere "
                  "variant and a 2-approximation otherwise", file=sys.stderr)
    else:
        L = lb.approx_min_ml_stc(G, cfg.method, **kw)
    elapsed = (time.perf_counter() - (t0 if cfg.time_all else t1)) * 1000
    _check(G, L, "labelling")
    report = mt.stats_report(G, L, elapsed, cfg.mu_existing_only)
    lb.write_labels_csv(G, L, _out_path(cfg, cfg.labels_out, "labels.csv"))
    _out_path(cfg, cfg.stats_out, "stats.json").write_text(report.to_json(), encoding="utf-8")
    print(report.summary())
    return EXIT_OK


def cmd_baseline(cfg: RunConfig) -> int:
    cfg.extra["kind"] = "baseline"
    t0 = time.perf_counter()
    G = _load(cfg)
    t1 = time.perf_counter()
    per_layer = lb.baseline_per_layer(G, cfg.method, cfg.plus, postprocess=cfg.postprocess,
                                      budget=cfg.budget, node_limit=cfg.node_limit,
                                      greedy_weighted=cfg.greedy_weighted)
    raw = lb.combine(per_layer)
    fixed = lb.enforce_consistency(per_layer)
    elapsed = (time.perf_counter() - (t0 if cfg.time_all else t1)) * 1000
    _check(G, fixed, "repaired baseline")
    labels = _out_path(cfg, cfg.labels_out, "labels.csv")
    stats = _out_path(cfg, cfg.stats_out, "stats.json")
    raw_labels = labels.with_name(labels.name.replace(".labels.csv", "") + ".raw.labels.csv") \
        if labels.name.endswith(".labels.csv") else labels.with_name(labels.name + ".raw")
    raw_stats = stats.with_name(stats.name.replace(".stats.json", "") + ".raw.stats.json") \
        if stats.name.endswith(".stats.json") else stats.with_name(stats.name + ".raw")
    r_raw = mt.stats_report(G, raw, elapsed, cfg.mu_existing_only)
    r_fix = mt.stats_report(G, fixed, elapsed, cfg.mu_existing_only)
    lb.write_labels_csv(G, raw, raw_labels)
    lb.write_labels_csv(G, fixed, labels)
    raw_stats.write_text(r_raw.to_json(), encoding="utf-8")
    stats.write_text(r_fix.to_json(), encoding="utf-8")
    print("per-layer:", r_raw.summary())
    print("repaired: ", r_fix.summary())
    return EXIT_OK


# ---- bench ----------------------------------------------------------------

def bench_cells() -> list[tuple[str, str, str]]:
    cells = [(alg, m, var) for alg in ("baseline", "multilayer")
             for m in (cv.PRICING, cv.GREEDY) for var in ("stc", "stc+")]
    cells += [("multilayer", cv.EXACT, "stc"), ("baseline", cv.EXACT, "stc")]
    return cells


def run_cell(path: str, columns, alg: str, method: str, variant: str, opts: dict) -> dict:
    """One bench cell; never raises, failures land in ``status``."""
    row = dict(dataset=Path(path).stem, algorithm=alg, method=method, variant=variant)
    if method == cv.EXACT and opts.get("skip_exact"):
        return {**row, "status": "skipped"}
    try:
        G = read_mledges(path, columns)
        plus = variant == "stc+"
        kw = dict(budget=opts.get("budget", cv.DEFAULT_EXACT_BUDGET),
                  node_limit=opts.get("node_limit"),
                  greedy_weighted=opts.get("greedy_weighted", True))
        t = time.perf_counter()
        if alg == "multilayer":
            L = (lb.approx_min_ml_stc_plus(G, method, True, **kw) if plus
                 else lb.approx_min_ml_stc(G, method, **kw))
            mu_L = L
        else:
            per_layer = lb.baseline_per_layer(G, method, plus, **kw)
            mu_L = lb.combine(per_layer)
            # exact per-layer labels are reported as solved, without repair
            L = mu_L if method == cv.EXACT else lb.enforce_consistency(per_layer)
        ms = (time.perf_counter() - t) * 1000
        rep = mt.stats_report(G, L, ms)
        mu = mt.stats_report(G, mu_L, mu_existing_only=opts.get("mu_existing_only", False)).mu
        return {**row, "weak_pct": rep.weak_pct, "strong_pct": rep.strong_pct, "mu": mu,
                "objective": rep.objective_min, "inserted": rep.inserted_count,
                "runtime_ms": rep.runtime_ms, "status": "ok"}
    except cv.ExactBudgetExceeded:
        return {**row, "status": "budget"}
    except Exception as exc:  # recorded, the run goes on
        return {**row, "status": f"error: {type(exc).__name__}: {exc}"}


def wedge_sizes(path: str, columns) -> dict:
    G = read_mledges(path, columns)
    W, H = build_wedge_graph(G), build_wedge_hypergraph(G)
    return dict(dataset=Path(path).stem, stc_nodes=len(W.nodes), stc_edges=len(W.adjacency),
                stcplus_nodes=len(H.nodes), stcplus_edges=len(H.hyperedges))


def _bench_inputs(paths: list[Path]) -> list[Path]:
    out = []
    for p in paths:
        if p.is_dir():
            out.extend(sorted(p.glob("*.mledges")))
        elif p.exists():
            out.append(p)
        else:
            raise FileNotFoundError(2, "No such file or directory", str(p))
    if not out:
        raise FileNotFoundError(2, "no .mledges datasets found", ", ".join(map(str, paths)))
    return out


def cmd_bench(args) -> int:
    inputs = _bench_inputs(args.paths)
    opts = dict(skip_exact=args.skip_exact, budget=args.budget, node_limit=args.node_limit,
                greedy_weighted=not args.greedy_raw, mu_existing_only=args.mu_existing_only)
    jobs = [(str(p), args.columns, *cell, opts) for p in inputs for cell in bench_cells()]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            futures = [pool.submit(run_cell, *j) for j in jobs]
            rows = [f.result() for f in futures]
    else:
        rows = [run_cell(*j) for j in jobs]
    # approximation ratio of the multilayer STC cells against the exact optimum
    exact = {r["dataset"]: r["objective"] for r in rows
             if r["algorithm"] == "multilayer" and r["method"] == cv.EXACT and r["status"] == "ok"}
    for r in rows:
        ref = exact.get(r["dataset"])
        if r["algorithm"] == "multilayer" and r["variant"] == "stc" and r["status"] == "ok" \
                and ref is not None:
            r["ratio"] = round(r["objective"] / ref, 4) if ref else 1.0
    order = {c: i for i, c in enumerate(bench_cells())}
    rows.sort(key=lambda r: (r["dataset"], order[(r["algorithm"], r["method"], r["variant"])]))
    _write_csv(args.out, BENCH_HEADER, rows)
    if args.sizes_out is not None:
        _write_csv(args.sizes_out, SIZES_HEADER, [wedge_sizes(str(p), args.columns) for p in inputs])
    failed = [r for r in rows if r["status"] not in ("ok", "skipped")]
    for r in failed:
        print(f"{r['dataset']} {r['algorithm']} {r['method']} {r['variant']}: {r['status']}",
              file=sys.stderr)
    return EXIT_OK


def _write_csv(path, header, rows) -> None:
    fh = sys.stdout if path is None else open(path, "w", encoding="utf-8", newline="")
    try:
        w = csv.DictWriter(fh, header, restval="", lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    finally:
        if fh is not sys.stdout:
            fh.close()


# ---- generate / export / wedges -------------------------------------------

def cmd_generate(args) -> int:
    if args.n < 1 or args.k < 1 or not 0 <= args.p <= 1:
        print("error: need n >= 1, k >= 1 and 0 <= p <= 1", file=sys.stderr)
        return EXIT_USAGE
    out = Path(args.output)
    if args.count > 1:
        out.mkdir(parents=True, exist_ok=True)
    for j in range(args.count):
        seed = args.seed + j
        G = generate(args.mode, args.n, args.k, args.p, seed, args.epsilon)
        target = out / f"{args.mode}_n{args.n}_k{args.k}_p{args.p}_s{seed}.mledges" \
            if args.count > 1 else out
        write_mledges(G, target)
    return EXIT_OK


def cmd_export(args) -> int:
    G = read_mledges(args.input, args.columns)
    doc = EXPORTERS[args.model](G, reduced=not args.full) if args.model == "plus" \
        else EXPORTERS[args.model](G)
    out = Path(args.output) if args.output else Path(f"{Path(args.input).stem}.{args.model}.lp")
    out.write_text(doc.to_text(), encoding="ascii")
    Path(str(out) + ".manifest").write_text(doc.manifest(G), encoding="utf-8")
    print(f"{out}: {len(doc.binaries)} binaries, {len(doc.rows)} rows")
    return EXIT_OK


def cmd_wedges(args) -> int:
    G = read_mledges(args.input, args.columns)
    W = build_wedge_hypergraph(G) if args.plus else build_wedge_graph(G)
    sys.stdout.write(dump_wedge_graph(W, G))
    return EXIT_OK


# ---- argument parsing -----------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mlstc", description="Strong/weak tie labelling of multilayer graphs.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, methods=cv.METHODS):
        p.add_argument("--columns", type=_columns, default=DEFAULT_COLUMNS,
                       help="field order of the input, default layer,src,dst")
        p.add_argument("--budget", type=_positive_int, default=cv.DEFAULT_EXACT_BUDGET,
                       help="largest cover instance (edges) the exact solver accepts")
        p.add_argument("--node-limit", type=_positive_int, default=None,
                       help="branch-and-bound node limit for the exact solver")
        p.add_argument("--greedy-raw", action="store_true",
                       help="greedy ranks by raw uncovered count, ignoring weights")
        p.add_argument("--mu-existing-only", action="store_true",
                       help="leave inserted edges out of the consistency score")

    for name, helptext in (("label", "consistent multilayer labelling"),
                           ("baseline", "per-layer labelling plus consistency repair")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("input", type=Path)
        p.add_argument("--method", choices=cv.METHODS, default=cv.PRICING)
        p.add_argument("--plus", action="store_true", help="allow new weak edges")
        if name == "label":
            p.add_argument("--no-postprocess", dest="postprocess", action="store_false")
            p.add_argument("--trace", action="store_true", help="print pricing steps to stderr")
        else:
            p.add_argument("--postprocess", action="store_true")
        p.add_argument("--labels-out", type=Path)
        p.add_argument("--stats-out", type=Path)
        p.add_argument("--time-all", action="store_true", help="include parsing in runtime_ms")
        common(p)

    p = sub.add_parser("bench", help="run all algorithm cells on datasets")
    p.add_argument("paths", nargs="+", type=Path, help=".mledges files or directories")
    p.add_argument("--skip-exact", action="store_true")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--out", type=Path, help="bench CSV (default stdout only)")
    p.add_argument("--sizes-out", type=Path, help="wedge (hyper)graph sizes CSV")
    common(p)

    p = sub.add_parser("generate", help="write seeded random .mledges files")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--mode", choices=(ER, CORRELATED), default=ER)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--count", type=_positive_int, default=1,
                   help="number of files, seeds seed..seed+count-1, output is a directory")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("export", help="write an integer program in LP format")
    p.add_argument("input", type=Path)
    p.add_argument("--model", choices=sorted(EXPORTERS), default="min")
    p.add_argument("--full", action="store_true", help="plus model over all node pairs")
    p.add_argument("-o", "--output")
    p.add_argument("--columns", type=_columns, default=DEFAULT_COLUMNS)

    p = sub.add_parser("wedges", help="dump the wedge (hyper)graph")
    p.add_argument("input", type=Path)
    p.add_argument("--plus", action="store_true")
    p.add_argument("--columns", type=_columns, default=DEFAULT_COLUMNS)
    return ap


def _config(args) -> RunConfig:
    return RunConfig(input=args.input, columns=args.columns, method=args.method, plus=args.plus,
                     postprocess=args.postprocess, labels_out=args.labels_out,
                     stats_out=args.stats_out, budget=args.budget, node_limit=args.node_limit,
                     greedy_weighted=not args.greedy_raw, mu_existing_only=args.mu_existing_only,
                     time_all=args.time_all, trace=getattr(args, "trace", False))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "label":
            return cmd_label(_config(args))
        if args.command == "baseline":
            return cmd_baseline(_config(args))
        if args.command == "bench":
            return cmd_bench(args)
        if args.command == "generate":
            return cmd_generate(args)
        if args.command == "export":
            return cmd_export(args)
        return cmd_wedges(args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename or exc}", file=sys.stderr)
        return EXIT_IO
    except (OSError, ParseError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except cv.ExactBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
