"""Experiment sweeps, deterministic parallel execution, and report emission.

All sweeps share the same report shape: per-instance records plus
aggregates (counterexample count, extremal frontier).  Instance RNG
streams are derived from (seed, instance index), so results are byte
identical under any worker count.
"""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import multiprocessing
import random
import time
from dataclasses import dataclass, field

from .altpath import validate
from .errors import BadParams, IoFailure, TooLarge, VacuousParams
from .graph_core import (
    OrientedGraph,
    blowup_directed_cycle,
    graph_from_code,
    min_pseudo_semidegree,
    min_semidegree,
    num_oriented,
    random_oriented,
)
from .oracle import OracleBudget, longest_alt_path_exact
from .rotation_engine import EngineBudget, find_alternating_path

CSV_COLUMNS = [
    "graph_id",
    "n",
    "edges",
    "min_pseudo_semidegree",
    "min_semidegree",
    "oracle_L",
    "finder_outcome",
    "rounds",
    "micros",
]


@dataclass
class SweepConfig:
    mode: str  # exhaustive | random | blowup | corollary | oddcase
    n: int | None = None
    n_range: tuple[int, int] | None = None
    k: int | None = None
    samples: int = 1000
    p: float = 0.5
    seed: int = 0
    workers: int = 1
    t_range: tuple[int, int] = (3, 5)
    b_range: tuple[int, int] = (1, 3)
    max_n_exhaustive: int = 6
    max_n_subset_dp: int = 22
    stable: bool = False
    aggregate_only: bool = False
    debug: bool = False
    chunk_size: int = 2000

    def __post_init__(self):
        if self.samples <= 0 or self.workers <= 0:
            raise BadParams("samples and workers must be positive")

    def ns(self) -> list[int]:
        if self.n_range is not None:
            return list(range(self.n_range[0], self.n_range[1] + 1))
        if self.n is not None:
            return [self.n]
        raise BadParams(f"mode {self.mode!r} needs n or n-range")


@dataclass
class SweepReport:
    config: dict
    records: list[dict]
    aggregates: dict = field(default_factory=dict)


def max_k_for(pseudo: int | None) -> int:
    """Largest k with pseudo-semidegree > 5k/8; 0 when undefined."""
    if pseudo is None:
        return 0
    return (8 * pseudo - 1) // 5


def _mix_seed(seed: int, idx: int) -> int:
    return (seed << 24) ^ (idx * 0x9E3779B1) ^ idx


def _now_micros() -> int:
    return time.perf_counter_ns() // 1000


def _new_agg() -> dict:
    return {
        "instances": 0,
        "counterexamples": 0,
        "finder_failures": 0,
        "violations": 0,
        "skipped": 0,
        "frontier": {},
    }


def _agg_add_frontier(agg: dict, pseudo: int | None, length: int) -> None:
    if pseudo is None:
        return
    key = str(pseudo)
    cur = agg["frontier"].get(key)
    if cur is None or length < cur:
        agg["frontier"][key] = length


def _merge_agg(into: dict, other: dict) -> None:
    for key in ("instances", "counterexamples", "finder_failures", "violations", "skipped"):
        into[key] += other[key]
    for pseudo, length in other["frontier"].items():
        cur = into["frontier"].get(pseudo)
        if cur is None or length < cur:
            into["frontier"][pseudo] = length


def _base_record(graph_id: str, g: OrientedGraph) -> dict:
    return {
        "graph_id": graph_id,
        "n": g.n,
        "edges": g.edge_count,
        "min_pseudo_semidegree": min_pseudo_semidegree(g),
        "min_semidegree": min_semidegree(g) if g.n else None,
        "oracle_L": None,
        "finder_outcome": "",
        "rounds": 0,
        "micros": 0,
        "violation": None,
    }


def _theorem_instance(cfg: SweepConfig, graph_id: str, g: OrientedGraph, agg: dict) -> dict:
    t0 = _now_micros()
    rec = _base_record(graph_id, g)
    agg["instances"] += 1
    budget = OracleBudget(max_n_subset_dp=cfg.max_n_subset_dp)
    if g.n > budget.max_n_subset_dp:
        rec["violation"] = "skipped:TooLarge"
        agg["skipped"] += 1
        return rec
    length, _ = longest_alt_path_exact(g, budget)
    rec["oracle_L"] = length
    pseudo = rec["min_pseudo_semidegree"]
    _agg_add_frontier(agg, pseudo, length)
    kmax = max_k_for(pseudo)
    if kmax >= 1 and length < kmax:
        rec["violation"] = f"counterexample:L={length}<k={kmax}"
        agg["counterexamples"] += 1
    if kmax >= 1:
        out = find_alternating_path(
            g, kmax, EngineBudget(oracle=budget, debug=cfg.debug)
        )
        rec["finder_outcome"] = out.outcome
        rec["rounds"] = out.rounds
        ok = (
            out.outcome == "found"
            and out.path is not None
            and out.path.order == kmax
            and (kmax < 2 or validate(g, out.path))
        )
        if not ok:
            rec["violation"] = (rec["violation"] or "") + f"|finder:{out.outcome}"
            agg["finder_failures"] += 1
    if not cfg.stable:
        rec["micros"] = _now_micros() - t0
    return rec


def _oddcase_instance(cfg: SweepConfig, graph_id: str, g: OrientedGraph, agg: dict) -> dict:
    t0 = _now_micros()
    rec = _base_record(graph_id, g)
    agg["instances"] += 1
    budget = OracleBudget(max_n_subset_dp=cfg.max_n_subset_dp)
    if g.n > budget.max_n_subset_dp:
        rec["violation"] = "skipped:TooLarge"
        agg["skipped"] += 1
        return rec
    length, _ = longest_alt_path_exact(g, budget)
    rec["oracle_L"] = length
    pseudo = rec["min_pseudo_semidegree"]
    _agg_add_frontier(agg, pseudo, length)
    if pseudo is not None and length % 2 == 1 and length < 2 * pseudo - 1:
        rec["violation"] = f"oddcase:L={length}<2*{pseudo}-1"
        agg["violations"] += 1
    if not cfg.stable:
        rec["micros"] = _now_micros() - t0
    return rec


def _random_graph(cfg: SweepConfig, idx: int) -> OrientedGraph:
    inst_seed = _mix_seed(cfg.seed, idx)
    rng = random.Random(inst_seed)
    ns = cfg.ns()
    n = ns[rng.randrange(len(ns))]
    return random_oriented(n, cfg.p, inst_seed + 1)


def _exhaustive_chunk(args) -> tuple[int, list[dict], dict]:
    cfg, lo, hi, instance_kind = args
    n = cfg.n
    agg = _new_agg()
    records = []
    handler = _theorem_instance if instance_kind == "theorem" else _oddcase_instance
    for code in range(lo, hi):
        g = graph_from_code(n, code)
        rec = handler(cfg, f"exh{n}-{code}", g, agg)
        if not cfg.aggregate_only or rec["violation"]:
            records.append(rec)
    return lo, records, agg


def _random_chunk(args) -> tuple[int, list[dict], dict]:
    cfg, lo, hi, instance_kind = args
    agg = _new_agg()
    records = []
    handler = _theorem_instance if instance_kind == "theorem" else _oddcase_instance
    for idx in range(lo, hi):
        g = _random_graph(cfg, idx)
        rec = handler(cfg, f"rnd-{idx}", g, agg)
        if not cfg.aggregate_only or rec["violation"]:
            records.append(rec)
    return lo, records, agg


def _config_dict(cfg: SweepConfig) -> dict:
    doc = dataclasses.asdict(cfg)
    if cfg.stable:
        # execution-only knobs; normalized so stable reports are byte
        # identical under any worker count and chunking
        doc["workers"] = 1
        doc["chunk_size"] = SweepConfig.chunk_size
    return doc


def _run_chunked(cfg: SweepConfig, total: int, worker, instance_kind: str) -> SweepReport:
    chunks = [
        (cfg, lo, min(lo + cfg.chunk_size, total), instance_kind)
        for lo in range(0, total, cfg.chunk_size)
    ]
    if cfg.workers <= 1 or len(chunks) <= 1:
        results = [worker(c) for c in chunks]
    else:
        with multiprocessing.Pool(cfg.workers) as pool:
            results = list(pool.imap_unordered(worker, chunks))
    results.sort(key=lambda r: r[0])
    agg = _new_agg()
    records: list[dict] = []
    for _, recs, part in results:
        records.extend(recs)
        _merge_agg(agg, part)
    return SweepReport(_config_dict(cfg), records, agg)


def run_theorem_sweep(cfg: SweepConfig) -> SweepReport:
    """Oracle plus constructive finder over an exhaustive or random family."""
    if cfg.mode == "exhaustive":
        n = cfg.ns()[0]
        if n > cfg.max_n_exhaustive:
            raise TooLarge(f"exhaustive n={n} above bound {cfg.max_n_exhaustive}")
        cfg.n = n
        return _run_chunked(cfg, num_oriented(n), _exhaustive_chunk, "theorem")
    if cfg.mode == "random":
        return _run_chunked(cfg, cfg.samples, _random_chunk, "theorem")
    raise BadParams(f"theorem sweep does not support mode {cfg.mode!r}")


def run_oddcase_sweep(cfg: SweepConfig) -> SweepReport:
    """Check odd-length maxima against twice the pseudo-semidegree minus one."""
    if cfg.mode == "exhaustive":
        n = cfg.ns()[0]
        if n > cfg.max_n_exhaustive:
            raise TooLarge(f"exhaustive n={n} above bound {cfg.max_n_exhaustive}")
        cfg.n = n
        return _run_chunked(cfg, num_oriented(n), _exhaustive_chunk, "oddcase")
    return _run_chunked(cfg, cfg.samples, _random_chunk, "oddcase")


def run_blowup_suite(
    t_range: tuple[int, int] = (3, 5),
    b_range: tuple[int, int] = (1, 3),
    stable: bool = False,
    max_n_subset_dp: int = 22,
) -> SweepReport:
    """Tightness construction: class size b forces semidegree b and maximum order 2b."""
    cfg = SweepConfig(mode="blowup", t_range=t_range, b_range=b_range, stable=stable)
    agg = _new_agg()
    records = []
    budget = OracleBudget(max_n_subset_dp=max_n_subset_dp)
    for t in range(t_range[0], t_range[1] + 1):
        for b in range(b_range[0], b_range[1] + 1):
            t0 = _now_micros()
            g = blowup_directed_cycle(t, b)
            rec = _base_record(f"blowup-{t}x{b}", g)
            agg["instances"] += 1
            if g.n > budget.max_n_subset_dp:
                rec["violation"] = "skipped:TooLarge"
                agg["skipped"] += 1
                records.append(rec)
                continue
            length, _ = longest_alt_path_exact(g, budget)
            rec["oracle_L"] = length
            _agg_add_frontier(agg, rec["min_pseudo_semidegree"], length)
            if min_semidegree(g) != b or length != 2 * b:
                rec["violation"] = f"blowup:semideg={min_semidegree(g)},L={length},b={b}"
                agg["violations"] += 1
            if not stable:
                rec["micros"] = _now_micros() - t0
            records.append(rec)
    return SweepReport(_config_dict(cfg), records, agg)


def _corollary_chunk(args) -> tuple[int, list[dict], dict]:
    cfg, lo, hi, _kind = args
    agg = _new_agg()
    records = []
    k = cfg.k
    ns = cfg.ns()
    budget = OracleBudget(max_n_subset_dp=cfg.max_n_subset_dp)
    for idx in range(lo, hi):
        t0 = _now_micros()
        inst_seed = _mix_seed(cfg.seed, idx)
        n = ns[idx % len(ns)]
        g = random_oriented(n, 1.0, inst_seed)  # tournaments are the densest case
        rec = _base_record(f"crl-{idx}", g)
        agg["instances"] += 1
        needed = (5 * k + 4) * n / 4
        if g.edge_count <= needed:
            rec["violation"] = "skipped:edge-bound-not-met"
            agg["skipped"] += 1
            records.append(rec)
            continue
        length, _ = longest_alt_path_exact(g, budget)
        rec["oracle_L"] = length
        _agg_add_frontier(agg, rec["min_pseudo_semidegree"], length)
        if length < k:
            rec["violation"] = f"corollary:L={length}<k={k}"
            agg["violations"] += 1
        if not cfg.stable:
            rec["micros"] = _now_micros() - t0
        records.append(rec)
    return lo, records, agg


def run_corollary_sweep(cfg: SweepConfig) -> SweepReport:
    """Dense-graph corollary: edge count above (5k+4)n/4 forces an order-k path."""
    if cfg.k is None or cfg.k < 1:
        raise BadParams("corollary sweep needs k >= 1")
    for n in cfg.ns():
        if n * (n - 1) // 2 <= (5 * cfg.k + 4) * n / 4:
            raise VacuousParams(
                f"n={n}: max edge count {n * (n - 1) // 2} cannot exceed "
                f"{(5 * cfg.k + 4) * n / 4:g}"
            )
        if n > cfg.max_n_subset_dp:
            raise TooLarge(f"n={n} beyond oracle budget")
    return _run_chunked(cfg, cfg.samples, _corollary_chunk, "corollary")


# --- report emission -------------------------------------------------------


def report_to_json(report: SweepReport) -> str:
    doc = {
        "config": report.config,
        "aggregates": report.aggregates,
        "records": report.records,
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def report_to_csv(report: SweepReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in report.records:
        writer.writerow(["" if rec[c] is None else rec[c] for c in CSV_COLUMNS])
    return buf.getvalue()


def emit_report(report: SweepReport, fmt: str, path: str) -> None:
    if fmt == "json":
        text = report_to_json(report)
    elif fmt == "csv":
        text = report_to_csv(report)
    else:
        raise BadParams(f"unknown report format {fmt!r}")
    try:
        with open(path, "w", encoding="ascii") as f:
            f.write(text)
    except OSError as exc:
        raise IoFailure(f"cannot write report to {path}: {exc}") from exc


def read_report_csv(path: str) -> list[dict]:
    """Round-trip reader for the CSV report format."""
    try:
        with open(path, "r", encoding="ascii") as f:
            rows = list(csv.DictReader(f))
    except OSError as exc:
        raise IoFailure(f"cannot read report from {path}: {exc}") from exc
    out = []
    for row in rows:
        rec: dict = {}
        for col in CSV_COLUMNS:
            val = row[col]
            if col in ("graph_id", "finder_outcome"):
                rec[col] = val
            elif val == "":
                rec[col] = None
            else:
                rec[col] = int(val)
        out.append(rec)
    return out


def sweep_failed(report: SweepReport) -> bool:
    agg = report.aggregates
    return bool(
        agg.get("counterexamples", 0)
        or agg.get("finder_failures", 0)
        or agg.get("violations", 0)
    )
