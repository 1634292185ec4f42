from __future__ import annotations
import csv
import numpy as np
from enum import Enum
from typing import IO, Iterable, List, Tuple
from cubewalk import walk_logger as logger, settings
from cubewalk.core import CubelikeGraph
from cubewalk.core.types import BitString
from cubewalk.exceptions import WidthMismatch, ResourceLimitExceeded

__all__ = ['CoinPadding', 'WalkState', 'Distribution', 'initial_state', 'write_distribution_csv', 'write_trace_csv']


class CoinPadding(str, Enum):
    """
    How the ``2^m - delta`` padded coin slots take part in the walk.

    ``REFLECT`` is the padded coin ``C' = 2|D'><D'| - I``: padding starts empty and stays empty. ``LOOP`` is the full
    ``2^m`` dimensional Grover diffusion with the coin started uniform over all slots, every padded slot then acts as a
    self-loop since the shift leaves it in place.
    """
    REFLECT = 'reflect'
    LOOP = 'loop'

    @classmethod
    def default_for(cls, g: CubelikeGraph) -> CoinPadding:
        """ ``LOOP`` for complete graphs (n >= 2), their one padded slot is the identity. Otherwise ``REFLECT``. """
        if g.n >= 2 and g.delta == g.vertex_count - 1:
            return cls.LOOP
        return cls.REFLECT


def check_state_size(g: CubelikeGraph) -> None:
    """
    Raises:
        ResourceLimitExceeded: if the amplitude table of ``g`` exceeds ``settings.limits.max_wires``.
    """
    limit = settings.limits.max_wires
    if g.wires > limit:
        logger.debug(f"Refusing walk state for {g.descriptor}: {g.wires} wires > {limit}")
        raise ResourceLimitExceeded(f"Walk on {g.descriptor} needs {g.wires} wires, the limit is {limit}")


class WalkState:
    """
    Joint coin ⊗ position state.

    Amplitudes are coin-major: ``amplitudes[c, a]`` is the coefficient of ``|α_c>|v_a>``, shape ``(2^m, 2^n)``.
    Coin slots ``c >= delta`` are padding, how the coin treats them is set by ``padding``.
    """
    def __init__(self, graph: CubelikeGraph, amplitudes: np.ndarray, padding: CoinPadding = CoinPadding.REFLECT):
        expected = (graph.coin_slots, graph.vertex_count)
        if amplitudes.shape != expected:
            raise ValueError(f"Amplitude table shape {amplitudes.shape} does not match {expected}")
        self.graph = graph
        self.amplitudes = amplitudes
        self.padding = CoinPadding(padding)

    @property
    def reflection_width(self) -> int:
        """ Number of leading coin slots the Grover reflection mixes. """
        if self.padding == CoinPadding.LOOP:
            return self.graph.coin_slots
        return self.graph.delta

    def copy(self) -> WalkState:
        return WalkState(self.graph, self.amplitudes.copy(), self.padding)

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))

    def padding_max(self) -> float:
        """ Largest amplitude magnitude on the padded coin slots, 0 when ``delta == 2^m``. """
        padding = self.amplitudes[self.graph.delta:]
        if padding.size == 0:
            return 0.0
        return float(np.abs(padding).max())

    def flat(self) -> np.ndarray:
        """ The state as a vector indexed by ``coin * 2^n + position`` (wire j is bit j). """
        return self.amplitudes.reshape(-1)

    @classmethod
    def from_flat(cls,
                  graph: CubelikeGraph,
                  vector: np.ndarray,
                  padding: CoinPadding = CoinPadding.REFLECT) -> WalkState:
        amplitudes = np.asarray(vector, dtype=np.complex128).reshape(graph.coin_slots, graph.vertex_count)
        return cls(graph, amplitudes, padding)


class Distribution:
    """ Probability of each vertex, the position marginal of a walk state. """
    def __init__(self, n: int, probabilities: np.ndarray):
        self.n = n
        self.probabilities = probabilities

    def __len__(self):
        return len(self.probabilities)

    def __getitem__(self, vertex) -> float:
        if isinstance(vertex, BitString):
            if vertex.width != self.n:
                raise WidthMismatch(f"Vertex {vertex} has width {vertex.width}, expected {self.n}")
            vertex = vertex.value
        return float(self.probabilities[vertex])

    def total(self) -> float:
        return float(self.probabilities.sum())

    def argmax(self) -> BitString:
        return BitString(int(np.argmax(self.probabilities)), self.n)

    def rows(self, by_probability: bool = False) -> List[Tuple[int, str, float]]:
        """
        ``(vertex, bits, probability)`` rows, ascending by vertex or descending by probability.
        """
        order: Iterable[int]
        if by_probability:
            # stable sort keeps ascending vertex order between ties
            order = np.argsort(-self.probabilities, kind='stable')
        else:
            order = range(len(self.probabilities))
        return [(int(v), str(BitString(int(v), self.n)), float(self.probabilities[v])) for v in order]


def initial_state(g: CubelikeGraph, start: BitString, padding: CoinPadding = CoinPadding.REFLECT) -> WalkState:
    """
    The walker at ``start`` with the coin in the uniform superposition over the ``delta`` real edges, or over all
    ``2^m`` slots for :attr:`CoinPadding.LOOP`.

    Raises:
        WidthMismatch: if ``start`` does not have width ``n``.
        ResourceLimitExceeded: if the state exceeds the configured wire limit.
    """
    if start.width != g.n:
        raise WidthMismatch(f"Start vertex {start} has width {start.width}, expected {g.n}")
    check_state_size(g)
    state = WalkState(g, np.zeros((g.coin_slots, g.vertex_count), dtype=np.complex128), padding)
    width = state.reflection_width
    state.amplitudes[:width, start.value] = 1 / np.sqrt(width)
    return state


def _format_probability(p: float) -> str:
    return f"{p:.12g}"


def write_distribution_csv(dist: Distribution, stream: IO[str], by_probability: bool = False) -> None:
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(['vertex', 'bits', 'probability'])
    for vertex, bits, p in dist.rows(by_probability):
        writer.writerow([vertex, bits, _format_probability(p)])


def write_trace_csv(distributions: Iterable[Distribution], stream: IO[str]) -> None:
    """ One row per step per vertex, the plot data behind distribution bar charts. """
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(['step', 'vertex', 'bits', 'probability'])
    for step, dist in enumerate(distributions):
        for vertex, bits, p in dist.rows():
            writer.writerow([step, vertex, bits, _format_probability(p)])
