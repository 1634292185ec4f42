"""
One-shot hitting times.

A walk has a one-shot ``(T, p)`` hitting time from ``start`` to ``target`` if measuring the position after exactly
``T`` steps yields ``target`` with probability ``p``. The search reports the ``T`` inside a window with the largest
probability; the default window ``[1, ceil(π·delta/2) + padding]`` selects the first strong peak.

Unless told otherwise the coin padding follows :meth:`cubewalk.walk.CoinPadding.default_for`.
"""
from __future__ import annotations
import math
import numpy as np
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union
from cubewalk import hitting_logger as logger, settings
from cubewalk.core import CubelikeGraph, target_vertex
from cubewalk.core.types import BitString
from cubewalk.exceptions import EmptyWindow, WidthMismatch
from cubewalk.walk import CoinPadding, initial_state, evolve, step, position_distribution

__all__ = ['HittingRecord', 'one_shot_probability', 'default_window', 'find_hitting_time', 'probability_curve']

Window = Tuple[int, int]


@dataclass(frozen=True)
class HittingRecord:
    graph: str
    T: int
    start: BitString
    target: BitString
    p: float
    window: Window
    padding: str = CoinPadding.REFLECT.value

    def to_json(self) -> Dict[str, Union[str, int, float, list]]:
        return {'graph': self.graph,
                'T': self.T,
                'start': str(self.start),
                'target': str(self.target),
                'p': self.p,
                'window': list(self.window),
                'padding': self.padding}


def _check_vertex(g: CubelikeGraph, v: BitString, role: str) -> None:
    if v.width != g.n:
        raise WidthMismatch(f"{role} vertex {v} has width {v.width}, expected {g.n}")


def _padding(g: CubelikeGraph, padding: Optional[CoinPadding]) -> CoinPadding:
    return CoinPadding(padding) if padding is not None else CoinPadding.default_for(g)


def one_shot_probability(g: CubelikeGraph,
                         T: int,
                         start: BitString,
                         target: BitString,
                         padding: Optional[CoinPadding] = None) -> float:
    """
    Probability of measuring ``target`` after ``T`` steps from ``start``, coin traced out.

    Raises:
        WidthMismatch: if a vertex does not have width ``n``.
        ResourceLimitExceeded: if the walk state is too large.
    """
    _check_vertex(g, target, 'Target')
    state = evolve(initial_state(g, start, _padding(g, padding)), T)
    return position_distribution(state)[target]


def default_window(g: CubelikeGraph) -> Window:
    """ ``[1, ceil(π·delta/2) + settings.sweep.window_padding]``. """
    return 1, math.ceil(math.pi * g.delta / 2) + int(settings.sweep.window_padding)


def _target_probabilities(g: CubelikeGraph,
                          start: BitString,
                          target: BitString,
                          first: int,
                          last: int,
                          padding: CoinPadding) -> np.ndarray:
    state = evolve(initial_state(g, start, padding), first)
    probabilities = np.empty(last - first + 1)
    for i in range(len(probabilities)):
        if i:
            state = step(state)
        probabilities[i] = position_distribution(state)[target]
    return probabilities


def find_hitting_time(g: CubelikeGraph,
                      start: Optional[BitString] = None,
                      target: Optional[BitString] = None,
                      window: Optional[Window] = None,
                      padding: Optional[CoinPadding] = None) -> HittingRecord:
    """
    Search the step count with the highest target probability.

    Args:
        g: the graph.
        start: start vertex, ``0^n`` by default.
        target: target vertex, :func:`cubewalk.core.target_vertex` by default.
        window: inclusive ``(first, last)`` step range, :func:`default_window` by default.
        padding: coin padding mode, chosen per graph by default.

    Returns:
        the record of the best step. Probabilities within ``settings.tolerances.tie`` of the maximum tie, the smallest
        such ``T`` wins.

    Raises:
        EmptyWindow: if ``last < first``.
        ValueError: if ``first`` is negative.
        WidthMismatch: if a vertex does not have width ``n``.
    """
    start = start if start is not None else BitString.zero(g.n)
    target = target if target is not None else target_vertex(g)
    first, last = window if window is not None else default_window(g)
    if last < first:
        raise EmptyWindow(f"Search window [{first}, {last}] is empty")
    if first < 0:
        raise ValueError(f"Search window cannot start at a negative step, got {first}")
    _check_vertex(g, target, 'Target')
    padding = _padding(g, padding)

    probabilities = _target_probabilities(g, start, target, first, last, padding)
    tied = np.flatnonzero(probabilities >= probabilities.max() - float(settings.tolerances.tie))
    best = int(tied[0])
    record = HittingRecord(graph=g.descriptor,
                           T=first + best,
                           start=start,
                           target=target,
                           p=float(probabilities[best]),
                           window=(first, last),
                           padding=padding.value)
    logger.debug(f"Hitting time on {g.descriptor}: T={record.T} p={record.p:.6f} window={record.window}")
    return record


def probability_curve(g: CubelikeGraph,
                      T_max: int,
                      start: Optional[BitString] = None,
                      target: Optional[BitString] = None,
                      padding: Optional[CoinPadding] = None) -> np.ndarray:
    """
    Target probability after ``0, 1, ..., T_max`` steps, useful to spot later peaks outside the search window.
    """
    if T_max < 0:
        raise ValueError(f"Step count must be non-negative, got {T_max}")
    start = start if start is not None else BitString.zero(g.n)
    target = target if target is not None else target_vertex(g)
    _check_vertex(g, target, 'Target')
    return _target_probabilities(g, start, target, 0, T_max, _padding(g, padding))
