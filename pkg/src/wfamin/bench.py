"""Timing and counting runs over the benchmark families."""
from __future__ import annotations

import csv
import gc
import io
import math
import statistics
import time
from dataclasses import dataclass

from .automaton import augment
from .generators import fibonacci_automaton, railroad_automaton
from .refine import ALGORITHMS

FAMILIES = {
    "fibonacci": fibonacci_automaton,
    "railroad": railroad_automaton,
}

REPORT_FIELDS = ["family", "param", "n", "m", "algorithm", "median_seconds",
                 "transitions_touched", "dequeues", "splits", "ratio"]


def complexity_model(family: str, algorithm: str, param: int, n: int) -> float:
    """Expected growth of the running time, used to normalise timings.

    Fibonacci: quadratic for dsa, ``k * F_k`` for the predecessor
    algorithms.  Railroad: ``n^2`` for dsa and pcsa, ``n`` for fpcsa, where
    ``n`` is the family parameter.
    """
    if family == "fibonacci":
        return float(n) ** 2 if algorithm == "dsa" else float(param * n)
    if family == "railroad":
        return float(param) if algorithm == "fpcsa" else float(param) ** 2
    raise ValueError(f"unknown family {family!r}")


@dataclass
class BenchRecord:
    family: str
    param: int
    n: int
    m: int
    algorithm: str
    seconds: float | None
    transitions_touched: int | None
    dequeues: int | None
    splits: int | None

    @property
    def skipped(self) -> bool:
        return self.seconds is None

    @property
    def ratio(self) -> float | None:
        if self.seconds is None:
            return None
        return self.seconds / complexity_model(self.family, self.algorithm, self.param, self.n)

    def row(self) -> list:
        def fmt(x):
            return "-" if x is None else x
        ratio = self.ratio
        return [self.family, self.param, self.n, self.m, self.algorithm,
                "-" if self.seconds is None else f"{self.seconds:.6f}",
                fmt(self.transitions_touched), fmt(self.dequeues), fmt(self.splits),
                "-" if ratio is None else f"{ratio:.4e}"]


def bench_run(family: str, params, algorithms, repetitions: int = 1,
              timeout: float | None = None) -> list[BenchRecord]:
    """Minimise each generated automaton with each algorithm.

    Records the median wall time over ``repetitions`` and the counters of
    the last run.  Once an algorithm needs more than ``timeout`` seconds,
    its cells for the remaining (larger) parameters are skipped.
    """
    try:
        make = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None
    for algo in algorithms:
        if algo not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {algo!r}")
    if repetitions < 1:
        raise ValueError("repetitions must be positive")
    records = []
    timed_out: set[str] = set()
    for param in params:
        aut = make(param)
        aug = augment(aut)
        n, m = aut.n, len(aut.transitions)
        for algo in algorithms:
            if algo in timed_out:
                records.append(BenchRecord(family, param, n, m, algo, None, None, None, None))
                continue
            run = ALGORITHMS[algo]
            times = []
            gc_was_enabled = gc.isenabled()
            gc.disable()
            try:
                for _ in range(repetitions):
                    start = time.perf_counter()
                    part = run(aug)
                    times.append(time.perf_counter() - start)
            finally:
                if gc_was_enabled:
                    gc.enable()
            seconds = statistics.median(times)
            st = part.stats
            records.append(BenchRecord(family, param, n, m, algo, seconds,
                                       st.transitions_touched, st.dequeues, st.splits))
            if timeout is not None and seconds > timeout:
                timed_out.add(algo)
    return records


def format_report(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_FIELDS)
    for rec in records:
        writer.writerow(rec.row())
    return buf.getvalue()


def ratio_spread(records) -> float:
    """Max over min of the normalised ratios of the non-skipped records."""
    ratios = [r.ratio for r in records if r.ratio is not None]
    if not ratios:
        return math.nan
    return max(ratios) / min(ratios)


def parse_params(text: str) -> list[int]:
    """Parse ``10..16``, ``2^8..2^12`` (powers of two), or ``3,5,8``."""
    text = text.strip()
    if ".." in text:
        lo, hi = (s.strip() for s in text.split("..", 1))
        if lo.startswith("2^") and hi.startswith("2^"):
            return [2 ** e for e in range(int(lo[2:]), int(hi[2:]) + 1)]
        return list(range(int(lo), int(hi) + 1))
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        out.append(2 ** int(tok[2:]) if tok.startswith("2^") else int(tok))
    return out
