# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause

import contextlib
import logging
import shutil
from fractions import Fraction
from pathlib import Path
from typing import IO, Any, Iterator, List, Optional, Tuple

import click
import texttable

from . import __version__, aeptas, approx, bench, const, formats, option
from .bounds import lower_bound
from .core import Instance, Schedule, profile, validate
from .errors import InfeasibleSchedule, PeakpackError, ResourceExceeded
from .exact import (
    REFERENCES,
    Limits,
    exact_decision,
    exact_opt,
)
from .generate import KINDS, MAX_ENERGY, generate
from .params import epsilon_params
from .render import render as render_svg
from .repack import Container, container_peak, repack as repack_schedule

LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]
BENCH_ALGORITHMS = ["auto", "lshape", "ffdh", "nfdh"]


class CommandError(click.ClickException):
    """
    A `PeakpackError` on its way out, keeping the exit code of the
    error.
    """

    def __init__(self, error: PeakpackError) -> None:
        super().__init__(str(error))
        self.exit_code = error.exit_code


class EchoHandler(logging.Handler):
    def emit(self, record: logging.LogRecord) -> None:
        try:
            click.echo(self.format(record), err=True)
        except Exception:  # pylint: disable=broad-except
            self.handleError(record)


@contextlib.contextmanager
def reporting() -> Iterator[None]:
    try:
        yield
    except PeakpackError as e:
        raise CommandError(e)


def setup_logging(verbose: int) -> None:
    root = logging.getLogger()
    if not any(isinstance(h, EchoHandler) for h in root.handlers):
        handler = EchoHandler()
        handler.setFormatter(
            logging.Formatter("%(levelname)s %(name)s: %(message)s")
        )
        root.addHandler(handler)
    root.setLevel(LEVELS[min(verbose, len(LEVELS) - 1)])


def draw_table(header: List[str], rows: List[List[Any]]) -> str:
    size = shutil.get_terminal_size()
    table = texttable.Texttable(max_width=size.columns)
    table.header(header)
    table.set_cols_dtype(["t" for _ in header])
    table.add_rows(rows, False)
    return str(table.draw())


def limits_of(max_nodes: int, timeout: float) -> Limits:
    if max_nodes < 1 or timeout <= 0:
        raise click.BadParameter("node and time limits must be positive")
    return Limits(max_nodes, timeout)


def read_instance(fh: IO[str]) -> Instance:
    try:
        return formats.read_instance(fh)
    except PeakpackError as e:
        raise CommandError(e)


def _show(value: Optional[Fraction]) -> Any:
    return None if value is None else formats.rational(value)


def _cell(value: Optional[Fraction]) -> str:
    return "-" if value is None else str(formats.rational(value))


def limit_options(f: Any) -> Any:
    f = option.add(
        "--timeout",
        type=float,
        default=const.TIMEOUT,
        show_default=True,
        help="Time budget of the exact search in seconds.",
    )(f)
    f = option.add(
        "--max-nodes",
        type=int,
        default=const.MAX_NODES,
        show_default=True,
        help="Node budget of the exact search.",
    )(f)
    return f


def epsilon_option(f: Any) -> Any:
    return option.add(
        "--epsilon",
        "-e",
        type=option.RATIONAL,
        default=str(const.EPSILON),
        show_default=True,
        help="Accuracy parameter in (0, 1/3].",
    )(f)


def output_option(f: Any) -> Any:
    return option.add(
        "--output",
        "-o",
        type=click.File("w"),
        default="-",
        help="Output file (default: standard output).",
    )(f)


@click.group()
@option.add_config(
    "--config",
    "-c",
    help="Configuration file.",
)
@option.add(
    "--verbose",
    "-v",
    count=True,
    help="Log more (can be given twice).",
)
@click.version_option(version=__version__)
def cli(verbose: int) -> None:
    setup_logging(verbose)


@cli.command()
@click.argument("instance", type=click.File())
@option.add(
    "--format",
    "fmt",
    type=click.Choice(["json", "table"]),
    default="json",
    show_default=True,
    help="Output format.",
)
def bounds(instance: IO[str], fmt: str) -> None:
    """
    Print the lower bounds T1..T4 and their maximum T'.
    """
    result = lower_bound(read_instance(instance))

    if fmt == "table":
        click.echo(
            draw_table(
                ["bound", "value"],
                [[k, str(formats.rational(v))]
                 for k, v in result._asdict().items()],
            )
        )
    else:
        document = {
            k: formats.rational(v)
            for k, v in result._asdict().items()
        }
        formats.write_document(document, click.get_text_stream("stdout"))


@cli.command()
@click.argument("instance", type=click.File())
@option.add(
    "--algorithm",
    "-a",
    type=click.Choice(approx.ALGORITHMS),
    default="auto",
    show_default=True,
    help="Algorithm to run.",
)
@epsilon_option
@limit_options
@output_option
@option.add(
    "--certificate",
    type=click.File("w"),
    help="Write the dispatch certificate to this file.",
)
def solve(
        instance: IO[str],
        algorithm: str,
        epsilon: Fraction,
        max_nodes: int,
        timeout: float,
        output: IO[str],
        certificate: Optional[IO[str]],
) -> None:
    """
    Schedule an instance.
    """
    limits = limits_of(max_nodes, timeout)
    problem = read_instance(instance)
    with reporting():
        schedule, cert = approx.run(problem, algorithm, epsilon, limits)
        formats.write_schedule(problem, schedule, algorithm, output)

    if certificate:
        formats.write_document(
            {
                "branch": cert.branch,
                "t_prime": formats.rational(cert.t_prime),
                "bound": _show(cert.bound),
                "peak": cert.peak,
                "reference_peak": cert.reference_peak,
            },
            certificate,
        )


@cli.command()
@click.argument("instance", type=click.File())
@option.add(
    "--decide",
    type=option.RATIONAL,
    help="Only decide whether a peak of at most this value is possible.",
)
@limit_options
@output_option
def exact(
        instance: IO[str],
        decide: Optional[Fraction],
        max_nodes: int,
        timeout: float,
        output: IO[str],
) -> None:
    """
    Solve an instance optimally by branch and bound.
    """
    limits = limits_of(max_nodes, timeout)
    problem = read_instance(instance)

    if decide is not None:
        with reporting():
            answer = exact_decision(problem, decide, limits)
        formats.write_document(
            {"value": formats.rational(decide), "answer": answer}, output
        )
        return

    try:
        _, schedule = exact_opt(problem, limits)
    except ResourceExceeded as e:
        if e.incumbent is not None:
            formats.write_schedule(problem, e.incumbent, "incumbent", output)
        raise CommandError(e)
    with reporting():
        formats.write_schedule(problem, schedule, "exact", output)


def side_by_side(problem: Instance, jobs: List[str]) -> Container:
    members = problem.subset(jobs)
    starts = []  # type: List[Tuple[str, int]]
    cursor = 0
    for job in members:
        starts.append((job.id, cursor))
        cursor += job.p
    height = max((j.e for j in members), default=0)
    return Container(cursor, height, Schedule(starts))


@cli.command()
@click.argument("instance", type=click.File())
@option.add(
    "--base",
    type=click.File(),
    required=True,
    help="Schedule of the jobs outside the container.",
)
@option.add(
    "--overflow",
    type=click.File(),
    required=True,
    help="Jobs of the container, placed side by side.",
)
@epsilon_option
@option.add(
    "--bound",
    type=option.RATIONAL,
    help="T (default: the larger of the base and container peaks).",
)
@output_option
def repack(
        instance: IO[str],
        base: IO[str],
        overflow: IO[str],
        epsilon: Fraction,
        bound: Optional[Fraction],
        output: IO[str],
) -> None:
    """
    Merge a container of jobs into a schedule of the other jobs.
    """
    problem = read_instance(instance)
    with reporting():
        params = epsilon_params(epsilon)
        schedule = formats.read_schedule(base)
        jobs = [j.id for j in formats.read_subset(overflow, problem)]
        container = side_by_side(problem, jobs)
        if bound is None:
            level = profile(problem, schedule, schedule).peak
            bound = Fraction(max(level, container_peak(problem, container)))
        container = container._replace(height=bound)
        result = repack_schedule(problem, schedule, bound, container, params)
        formats.write_schedule(problem, result, "repack", output)


@cli.command(name="aeptas")
@click.argument("instance", type=click.File())
@epsilon_option
@option.add(
    "--variant",
    type=click.Choice(aeptas.VARIANTS),
    default=aeptas.C2,
    show_default=True,
    help="Overflow container shape.",
)
@option.add(
    "--reference",
    type=click.Choice(REFERENCES),
    default="auto",
    show_default=True,
    help="Reference schedule for the large jobs.",
)
@limit_options
@output_option
@option.add(
    "--report",
    type=click.File("w"),
    help="Write the classification and slack to this file.",
)
def aeptas_command(
        instance: IO[str],
        epsilon: Fraction,
        variant: str,
        reference: str,
        max_nodes: int,
        timeout: float,
        output: IO[str],
        report: Optional[IO[str]],
) -> None:
    """
    Run the desk-scale AEPTAS pipeline.
    """
    limits = limits_of(max_nodes, timeout)
    problem = read_instance(instance)
    with reporting():
        lite = aeptas.schedule_lite(problem, epsilon, variant, limits,
                                    reference_kind=reference)
        schedule = aeptas.complete_schedule(problem, lite, variant)
        formats.write_schedule(problem, schedule, "aeptas", output)

    if report:
        classes = lite.classification
        formats.write_document(
            {
                "variant": variant,
                "bound": formats.rational(lite.bound),
                "steps": lite.steps,
                "delta": formats.rational(classes.delta),
                "mu": formats.rational(classes.mu),
                "classes": {
                    name: getattr(classes, name)
                    for name in (aeptas.LARGE, aeptas.HORIZONTAL,
                                 aeptas.VERTICAL, aeptas.SMALL,
                                 aeptas.MEDIUM)
                },
                "overflow": sorted(lite.overflow.contents),
                "reference": lite.reference_kind,
                "reference_peak": lite.reference_peak,
                "slack": formats.rational(lite.slack),
            },
            report,
        )


@cli.command()
@click.argument("instance", type=click.File())
@click.argument("schedule", type=click.File())
def verify(instance: IO[str], schedule: IO[str]) -> None:
    """
    Check a schedule and print its peak.
    """
    problem = read_instance(instance)
    with reporting():
        assignment = formats.read_schedule(schedule)
        violations = validate(problem, assignment)
        if violations:
            click.echo(
                draw_table(
                    ["kind", "job", "detail"],
                    [[v.kind, v.job, v.detail] for v in violations],
                )
            )
            raise InfeasibleSchedule(violations)
        level = profile(problem, problem.ids, assignment).peak
        t_prime = lower_bound(problem).t

    click.echo("Feasible schedule with peak {} (T' = {})".format(
        level, formats.rational(t_prime)))


@cli.command()
@click.argument("instance", type=click.File())
@click.argument("schedule", type=click.File())
@option.add(
    "--output",
    "-o",
    type=click.File("w"),
    default="-",
    help="SVG file (default: standard output).",
)
@option.add(
    "--t-prime",
    type=option.RATIONAL,
    help="Height of the lower bound guide (default: T').",
)
def render(
        instance: IO[str],
        schedule: IO[str],
        output: IO[str],
        t_prime: Optional[Fraction],
) -> None:
    """
    Draw a schedule as SVG.
    """
    problem = read_instance(instance)
    with reporting():
        render_svg(problem, formats.read_schedule(schedule), output, t_prime)


@cli.command()
@option.add(
    "--jobs",
    "-n",
    type=int,
    default=5,
    show_default=True,
    help="Number of jobs.",
)
@option.add(
    "--deadline",
    "-d",
    type=int,
    default=10,
    show_default=True,
    help="Deadline D.",
)
@option.add(
    "--kind",
    type=click.Choice(KINDS),
    default=KINDS[0],
    show_default=True,
    help="Job distribution.",
)
@option.add(
    "--max-energy",
    type=int,
    default=MAX_ENERGY,
    show_default=True,
    help="Largest energy demand.",
)
@option.add(
    "--seed",
    type=int,
    default=0,
    envvar="PEAKPACK_SEED",
    show_default=True,
    help="Random seed.",
)
@output_option
def gen(
        jobs: int,
        deadline: int,
        kind: str,
        max_energy: int,
        seed: int,
        output: IO[str],
) -> None:
    """
    Generate a random instance.
    """
    with reporting():
        formats.write_instance(
            generate(jobs, deadline, kind, seed, max_energy), output
        )


@cli.command(name="bench")
@click.argument(
    "directory",
    type=click.Path(exists=True, file_okay=False),
)
@option.add(
    "--algorithm",
    "-a",
    "algorithms",
    multiple=True,
    type=click.Choice(approx.ALGORITHMS),
    default=BENCH_ALGORITHMS,
    show_default=True,
    help="Algorithm to run (can be specified multiple times).",
)
@epsilon_option
@limit_options
@option.add(
    "--workers",
    "-j",
    type=int,
    default=const.WORKERS,
    show_default=True,
    help="Worker processes.",
)
@option.add(
    "--output",
    "-o",
    type=click.File("w"),
    default="bench.csv",
    show_default=True,
    help="CSV file with one row per instance and algorithm.",
)
def bench_command(
        directory: str,
        algorithms: Tuple[str, ...],
        epsilon: Fraction,
        max_nodes: int,
        timeout: float,
        workers: int,
        output: IO[str],
) -> None:
    """
    Run algorithms on every instance in a directory.
    """
    limits = limits_of(max_nodes, timeout)
    with reporting():
        epsilon_params(epsilon)
        instances = bench.load_directory(Path(directory))
        rows = bench.bench(instances, algorithms, epsilon, limits, workers)
    bench.write_csv(rows, output)

    summaries = bench.summarize(rows)
    if summaries:
        click.echo(
            draw_table(
                ["algorithm", "runs", "failures", "max ratio", "mean ratio"],
                [[s.algorithm, s.runs, s.failures,
                  _cell(s.max_ratio), _cell(s.mean_ratio)]
                 for s in summaries],
            )
        )
    click.echo("Benchmarked {} instances".format(len(instances)))
