# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause
"""
Benchmark harness: run algorithms over a directory of instances.
"""

import csv
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import (
    IO,
    Any,
    Dict,
    Iterable,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from . import approx, const, formats
from .bounds import lower_bound
from .core import Instance, validate
from .errors import InfeasibleSchedule, PeakpackError, ResourceExceeded
from .exact import Limits, exact_opt

LOG = logging.getLogger(__name__)


class BenchRow(NamedTuple):
    instance: str
    algorithm: str
    peak: Optional[int]
    lower_bound: Fraction
    opt: Optional[int]
    ratio: Optional[Fraction]
    wall_time: float


class Summary(NamedTuple):
    algorithm: str
    runs: int
    failures: int
    max_ratio: Optional[Fraction]
    mean_ratio: Optional[Fraction]


Task = Tuple[str, Dict[str, Any], Sequence[str], Fraction, Limits]


def load_directory(directory: Path) -> List[Tuple[str, Instance]]:
    """
    Every `*.json` instance in `directory`, by file name.
    """
    instances = []
    for path in sorted(directory.glob("*.json")):
        with path.open() as fh:
            instances.append((path.stem, formats.read_instance(fh)))
    return instances


def _optimum(instance: Instance, limits: Limits) -> Optional[int]:
    if (len(instance) > const.EXACT_JOBS
            or instance.deadline > const.EXACT_DEADLINE):
        return None
    try:
        return exact_opt(instance, limits)[0]
    except ResourceExceeded as e:
        LOG.warning("no optimum: %s", e)
        return None


def run_instance(task: Task) -> List[BenchRow]:
    """
    Run every algorithm on one instance.  A failing algorithm gives a
    row without peak and ratio.
    """
    name, document, algorithms, eps, limits = task
    instance = formats.instance_from_document(document)
    t_prime = lower_bound(instance).t
    opt = _optimum(instance, limits)
    reference = Fraction(opt) if opt is not None else t_prime

    rows = []
    for algorithm in algorithms:
        began = time.perf_counter()
        try:
            schedule, certificate = approx.run(instance, algorithm, eps,
                                               limits)
            violations = validate(instance, schedule)
            if violations:
                raise InfeasibleSchedule(violations)
            level = certificate.peak  # type: Optional[int]
        except PeakpackError as e:
            LOG.warning("%s failed on %s: %s", algorithm, name, e)
            level = None
        elapsed = time.perf_counter() - began

        ratio = None if level is None else Fraction(level) / reference
        rows.append(
            BenchRow(name, algorithm, level, t_prime, opt, ratio, elapsed)
        )
    return rows


def bench(
        instances: Iterable[Tuple[str, Instance]],
        algorithms: Sequence[str],
        eps: Fraction = const.EPSILON,
        limits: Limits = Limits(),
        workers: int = const.WORKERS,
) -> List[BenchRow]:
    """
    Run `algorithms` on every instance, one instance per worker task.
    Rows come back in input order.
    """
    tasks = [
        (name, formats.instance_document(instance), tuple(algorithms),
         Fraction(eps), limits) for name, instance in instances
    ]  # type: List[Task]

    if workers <= 1:
        results = [run_instance(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_instance, tasks))
    LOG.info("benchmarked %d instances", len(tasks))
    return [row for rows in results for row in rows]


def summarize(rows: Iterable[BenchRow]) -> List[Summary]:
    grouped = {}  # type: Dict[str, List[BenchRow]]
    for row in rows:
        grouped.setdefault(row.algorithm, []).append(row)

    summaries = []
    for algorithm, group in grouped.items():
        ratios = [r.ratio for r in group if r.ratio is not None]
        summaries.append(
            Summary(
                algorithm,
                len(group),
                len(group) - len(ratios),
                max(ratios) if ratios else None,
                sum(ratios, Fraction(0)) / len(ratios) if ratios else None,
            )
        )
    return summaries


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return str(formats.rational(value))
    if isinstance(value, float):
        return "{:.6f}".format(value)
    return str(value)


def write_csv(rows: Iterable[BenchRow], fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(const.CSV_COLUMNS)
    for row in rows:
        writer.writerow([_cell(getattr(row, c)) for c in const.CSV_COLUMNS])
