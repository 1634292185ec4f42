"""
Hitting-time sweeps over graph families and the linear ``T`` versus degree fit.
"""
from __future__ import annotations
import asyncio
import csv
import math
import numpy as np
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, IO, List, Optional, Sequence, Tuple, Union
from cubewalk import hitting_logger as logger, settings
from cubewalk.core import msgrouter, family_graph, random_cubelike
from cubewalk.core.types import BitString
from cubewalk.exceptions import TooFewRows
from cubewalk.hitting.search import find_hitting_time
from cubewalk.walk import CoinPadding

__all__ = ['SweepRow',
           'SweepReport',
           'ConjectureVerdict',
           'family_sweep_async',
           'family_sweep',
           'degree_sweep_async',
           'degree_sweep',
           'conjecture_check']


@dataclass(frozen=True)
class SweepRow:
    family: str
    n: int
    delta: int
    T: int
    target: BitString
    p: float
    extra: int = 0

    def to_json(self) -> Dict[str, Union[str, int, float]]:
        return {'family': self.family,
                'n': self.n,
                'delta': self.delta,
                'T': self.T,
                'target': str(self.target),
                'p': self.p,
                'extra': self.extra}


class SweepReport:
    """
    Sweep rows in visiting order, with the least-squares fit ``T ≈ slope·delta + intercept``.
    """
    def __init__(self, family: str, rows: Sequence[SweepRow]):
        """
        Raises:
            TooFewRows: if fewer than two rows are given, a line fit needs two points.
        """
        if len(rows) < 2:
            raise TooFewRows(f"A sweep report needs at least 2 rows, got {len(rows)}")
        self.family = family
        self.rows = list(rows)
        deltas = np.array([r.delta for r in self.rows], dtype=np.float64)
        hits = np.array([r.T for r in self.rows], dtype=np.float64)
        design = np.column_stack([deltas, np.ones_like(deltas)])
        solution = np.linalg.lstsq(design, hits, rcond=None)[0]
        self.slope = float(solution[0])
        self.intercept = float(solution[1])

    def __len__(self):
        return len(self.rows)

    @property
    def parity_violations(self) -> int:
        """ Rows where ``T`` and ``delta`` differ in parity. """
        return sum(1 for r in self.rows if r.T % 2 != r.delta % 2)

    def write_csv(self, stream: IO[str]) -> None:
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(['family', 'n', 'delta', 'T', 'target_bits', 'p'])
        for r in self.rows:
            writer.writerow([r.family, r.n, r.delta, r.T, str(r.target), f"{r.p:.12g}"])
        stream.write(f"# slope={self.slope:.12g}\n")
        stream.write(f"# intercept={self.intercept:.12g}\n")
        stream.write(f"# parity_violations={self.parity_violations}\n")

    def write_plot_data(self, stream: IO[str]) -> None:
        """ Two tab separated columns ``delta`` and ``T``. """
        stream.write("delta\tT\n")
        for r in self.rows:
            stream.write(f"{r.delta}\t{r.T}\n")


@dataclass(frozen=True)
class ConjectureVerdict:
    slope: float
    slope_error: float
    max_deviation: float
    parity_violations: int
    rows: int

    def to_json(self) -> Dict[str, Union[int, float]]:
        return {'slope': self.slope,
                'slope_error': self.slope_error,
                'max_deviation': self.max_deviation,
                'parity_violations': self.parity_violations,
                'rows': self.rows}


def conjecture_check(report: SweepReport) -> ConjectureVerdict:
    """
    Compare a sweep against ``T ≈ π·delta/2`` with ``T`` and ``delta`` of equal parity. Reports, does not judge.

    Raises:
        TooFewRows: if the report has fewer than three rows.
    """
    if len(report) < 3:
        raise TooFewRows(f"Conjecture check needs at least 3 rows, got {len(report)}")
    deviation = max(abs(r.T - math.pi * r.delta / 2) for r in report.rows)
    return ConjectureVerdict(slope=report.slope,
                             slope_error=abs(report.slope - math.pi / 2),
                             max_deviation=float(deviation),
                             parity_violations=report.parity_violations,
                             rows=len(report))


def _family_row(family: str, n: int, extra: int, seed: int, padding: Optional[CoinPadding]) -> SweepRow:
    g = family_graph(family, n, extra, seed)
    record = find_hitting_time(g, padding=padding)
    return SweepRow(family, n, g.delta, record.T, record.target, record.p, extra)


def _degree_row(n: int, extra: int, seed: int, padding: Optional[CoinPadding]) -> SweepRow:
    g = random_cubelike(n, extra, seed)
    record = find_hitting_time(g, padding=padding)
    return SweepRow('random', n, g.delta, record.T, record.target, record.p, extra)


async def _run_rows(jobs: List[Tuple], worker, workers: Optional[int]) -> List[SweepRow]:
    loop = asyncio.get_running_loop()
    workers = workers if workers else settings.worker_count

    with ThreadPoolExecutor(max_workers=workers) as pool:
        async def _one(arguments) -> SweepRow:
            row = await loop.run_in_executor(pool, worker, *arguments)
            logger.debug(f"Sweep row done: {row}")
            msgrouter.on_sweep_row(row)
            return row

        return await asyncio.gather(*[_one(arguments) for arguments in jobs])


async def family_sweep_async(family: str,
                             n_values: Sequence[int],
                             extra: int = 0,
                             seed: int = 0,
                             workers: Optional[int] = None,
                             padding: Optional[CoinPadding] = None) -> SweepReport:
    """
    Find the default-window hitting time of one family member per dimension.

    Rows are evaluated on a thread pool and merged in order of ``n``, so the report does not depend on the number of
    workers.

    Args:
        family: one of :data:`cubewalk.core.FAMILIES`.
        n_values: the dimensions to visit.
        extra: extra generators for the ``random`` family.
        seed: random seed for the ``random`` family.
        workers: pool size, :attr:`cubewalk.Settings.worker_count` by default.
        padding: coin padding mode, chosen per graph by default.

    Raises:
        ValueError: if ``n_values`` is empty or the family is unknown.
        TooFewRows: if only one dimension is given.
    """
    if len(n_values) == 0:
        raise ValueError("A sweep needs at least one dimension")
    jobs = [(family, n, extra, seed, padding) for n in sorted(n_values)]
    rows = await _run_rows(jobs, _family_row, workers)
    return SweepReport(family, sorted(rows, key=lambda r: r.n))


def family_sweep(family: str,
                 n_values: Sequence[int],
                 extra: int = 0,
                 seed: int = 0,
                 workers: Optional[int] = None,
                 padding: Optional[CoinPadding] = None) -> SweepReport:
    """ Blocking variant of :func:`family_sweep_async`. """
    return asyncio.run(family_sweep_async(family, n_values, extra, seed, workers, padding))


async def degree_sweep_async(n: int,
                             extra_values: Sequence[int],
                             seed: int = 0,
                             workers: Optional[int] = None,
                             padding: Optional[CoinPadding] = None) -> SweepReport:
    """
    Fixed dimension, growing degree: one random cubelike graph with ``n + k`` generators per ``k``.

    Raises:
        ValueError: if ``extra_values`` is empty.
        TooManyExtras: if a ``k`` does not fit dimension ``n``.
    """
    if len(extra_values) == 0:
        raise ValueError("A degree sweep needs at least one extra generator count")
    jobs = [(n, k, seed, padding) for k in sorted(extra_values)]
    rows = await _run_rows(jobs, _degree_row, workers)
    return SweepReport('random', sorted(rows, key=lambda r: r.extra))


def degree_sweep(n: int,
                 extra_values: Sequence[int],
                 seed: int = 0,
                 workers: Optional[int] = None,
                 padding: Optional[CoinPadding] = None) -> SweepReport:
    return asyncio.run(degree_sweep_async(n, extra_values, seed, workers, padding))
