"""
Structured evolution ``U = S'(C' ⊗ I)``.

The coin is applied per position column, the shift per coin slice. XOR with a generator ``w`` permutes a slice of
``2^n`` amplitudes; viewing the slice as an n-dimensional ``2 x ... x 2`` tensor the permutation is a reversal of
the axes of the set bits of ``w``, so no index arrays are needed.
"""
from __future__ import annotations
import numpy as np
from typing import List, Tuple
from cubewalk import walk_logger as logger, settings
from cubewalk.core import CubelikeGraph
from cubewalk.walk.state import CoinPadding, WalkState, Distribution

__all__ = ['apply_coin', 'apply_shift', 'step', 'evolve', 'position_distribution', 'trace']


def _flip_axes(g: CubelikeGraph) -> List[Tuple[int, ...]]:
    # axis 0 of the reshaped slice is bit n-1
    return [tuple(g.n - 1 - j for j in w.set_bits()) for w in g.omega]


def _coin_inplace(amplitudes: np.ndarray, width: int) -> None:
    head = amplitudes[:width]
    sigma = head.sum(axis=0)
    head *= -1
    head += (2.0 / width) * sigma
    # padding slices: C' acts as -I there
    amplitudes[width:] *= -1


def _shift_inplace(amplitudes: np.ndarray, g: CubelikeGraph, axes: List[Tuple[int, ...]]) -> None:
    shape = (2,) * g.n
    for k, flip in enumerate(axes):
        block = amplitudes[k].reshape(shape)
        amplitudes[k] = np.flip(block, axis=flip).reshape(-1)


def _check(s: WalkState, T: int) -> None:
    drift = abs(s.norm() - 1.0)
    if drift > settings.tolerances.norm:
        logger.warning(f"Norm of {s.graph.descriptor} drifted by {drift:.3e} after {T} steps")
    if s.padding == CoinPadding.REFLECT:
        leak = s.padding_max()
        if leak > settings.tolerances.padding:
            logger.warning(f"Padded coin slots of {s.graph.descriptor} hold amplitude {leak:.3e} after {T} steps")


def apply_coin(s: WalkState) -> WalkState:
    """ Apply the coin: reflect every position column about the uniform state of the mixed slots. """
    out = s.copy()
    _coin_inplace(out.amplitudes, s.reflection_width)
    return out


def apply_shift(s: WalkState) -> WalkState:
    """ Apply ``S'``: move coin slice ``k-1`` along ``Ω(k)``, padding slices stay put. """
    out = s.copy()
    _shift_inplace(out.amplitudes, s.graph, _flip_axes(s.graph))
    return out


def step(s: WalkState) -> WalkState:
    return apply_shift(apply_coin(s))


def evolve(s: WalkState, T: int) -> WalkState:
    """
    Apply ``T`` walk steps.

    Raises:
        ValueError: if ``T`` is negative.
    """
    if T < 0:
        raise ValueError(f"Step count must be non-negative, got {T}")
    out = s.copy()
    axes = _flip_axes(s.graph)
    for _ in range(T):
        _coin_inplace(out.amplitudes, s.reflection_width)
        _shift_inplace(out.amplitudes, s.graph, axes)
    _check(out, T)
    logger.debug(f"Evolved {s.graph.descriptor} for {T} steps")
    return out


def position_distribution(s: WalkState) -> Distribution:
    """ Trace out the coin: ``p(a) = Σ_c |amp(c, a)|^2``. """
    probabilities = np.square(np.abs(s.amplitudes)).sum(axis=0)
    return Distribution(s.graph.n, probabilities)


def trace(s: WalkState, T: int) -> List[Distribution]:
    """ Position distributions after 0, 1, ..., T steps. """
    if T < 0:
        raise ValueError(f"Step count must be non-negative, got {T}")
    out = s.copy()
    axes = _flip_axes(s.graph)
    distributions = [position_distribution(out)]
    for _ in range(T):
        _coin_inplace(out.amplitudes, s.reflection_width)
        _shift_inplace(out.amplitudes, s.graph, axes)
        distributions.append(position_distribution(out))
    _check(out, T)
    return distributions
