"""
Dense reference operators built directly from their definitions. Only used as a test and verification oracle.

Basis index is ``coin * 2^n + position``, which is also the statevector index of the circuit executor.
"""
import numpy as np
from cubewalk import settings
from cubewalk.core import CubelikeGraph
from cubewalk.exceptions import TooManyWires
from cubewalk.walk.state import CoinPadding

__all__ = ['coin_state', 'coin_matrix', 'shift_matrix', 'step_matrix']


def _check_dense(wires: int) -> None:
    limit = settings.limits.dense_wires
    if wires > limit:
        raise TooManyWires(f"Dense operators on {wires} wires exceed the dense limit of {limit}")


def coin_state(g: CubelikeGraph, padding: CoinPadding = CoinPadding.REFLECT) -> np.ndarray:
    """ ``|D'>``: uniform over the first ``delta`` coin slots, zero on padding. Uniform over all slots for ``LOOP``. """
    width = g.coin_slots if padding == CoinPadding.LOOP else g.delta
    d = np.zeros(g.coin_slots, dtype=np.complex128)
    d[:width] = 1 / np.sqrt(width)
    return d


def coin_matrix(g: CubelikeGraph, padding: CoinPadding = CoinPadding.REFLECT) -> np.ndarray:
    """ ``C' = 2|D'><D'| - I`` on the ``2^m`` dimensional coin space. """
    d = coin_state(g, padding)
    return 2 * np.outer(d, d.conj()) - np.eye(g.coin_slots, dtype=np.complex128)


def shift_matrix(g: CubelikeGraph) -> np.ndarray:
    """ ``S'`` as a ``2^(n+m)`` permutation matrix. """
    _check_dense(g.wires)
    size = g.coin_slots * g.vertex_count
    columns = np.arange(size)
    coins, positions = np.divmod(columns, g.vertex_count)
    generators = np.zeros(g.coin_slots, dtype=np.int64)
    generators[:g.delta] = g.omega.values
    rows = coins * g.vertex_count + (positions ^ generators[coins])
    s = np.zeros((size, size), dtype=np.complex128)
    s[rows, columns] = 1
    return s


def step_matrix(g: CubelikeGraph, padding: CoinPadding = CoinPadding.REFLECT) -> np.ndarray:
    """ ``U = S'(C' ⊗ I)``. """
    _check_dense(g.wires)
    coin = np.kron(coin_matrix(g, padding), np.eye(g.vertex_count, dtype=np.complex128))
    return shift_matrix(g) @ coin
