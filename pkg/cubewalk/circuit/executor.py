"""
Reference statevector executor for gate programs.

The state of ``N`` wires is held as a ``2 x ... x 2`` tensor, wire ``w`` on axis ``N-1-w`` so the flat index is
``Σ bit_w 2^w``: position wires form the low bits, then the coin, then ancillas. For the walk layout this equals the
``coin * 2^n + position`` index of :class:`cubewalk.walk.WalkState`. Gates act on views selected by basic indexing;
a trailing batch axis lets :func:`program_matrix` run every basis column at once.
"""
from __future__ import annotations
import numpy as np
from dataclasses import dataclass
from typing import Dict, Optional, Union
from cubewalk import circuit_logger as logger, settings
from cubewalk.core import CubelikeGraph
from cubewalk.core.types import BitString
from cubewalk.circuit.gates import Gate, GateKind, GateProgram
from cubewalk.circuit.compiler import CoinStrategy, StrategyLike, compile_step, compile_walk
from cubewalk.exceptions import TooManyWires, WidthMismatch
from cubewalk.walk import WalkState, dense, evolve, initial_state

__all__ = ['execute_program',
           'program_matrix',
           'ancilla_zero_probability',
           'to_walk_state',
           'EquivalenceReport',
           'verify_equivalence',
           'verify_walk']

_SQRT_HALF = 1 / np.sqrt(2)


def _check_executor(p: GateProgram, limit: int) -> None:
    if p.wire_count > limit:
        logger.debug(f"Refusing to execute program on {p.wire_count} wires, limit {limit}")
        raise TooManyWires(f"Program uses {p.wire_count} wires, the executor limit is {limit}")


def _apply(psi: np.ndarray, gate: Gate, wire_count: int) -> None:
    if gate.kind == GateKind.GPHASE:
        psi *= gate.phase
        return

    index = [slice(None)] * psi.ndim
    for c in gate.controls:
        index[wire_count - 1 - c] = 1
    axis = wire_count - 1 - gate.target
    index[axis] = 0
    zero = tuple(index)
    index[axis] = 1
    one = tuple(index)

    a0 = psi[zero].copy()
    a1 = psi[one]
    if gate.kind in (GateKind.X, GateKind.MCX):
        psi[zero] = a1
        psi[one] = a0
    elif gate.kind == GateKind.H:
        psi[zero] = (a0 + a1) * _SQRT_HALF
        psi[one] = (a0 - a1) * _SQRT_HALF
    else:
        # RY(θ) = [[cos θ/2, -sin θ/2], [sin θ/2, cos θ/2]]
        c = np.cos(gate.angle / 2)
        s = np.sin(gate.angle / 2)
        psi[zero] = c * a0 - s * a1
        psi[one] = s * a0 + c * a1


def _run(p: GateProgram, columns: np.ndarray) -> np.ndarray:
    wire_count = p.wire_count
    psi = columns.reshape((2,) * wire_count + (columns.shape[1],))
    for gate in p:
        _apply(psi, gate, wire_count)
    return psi.reshape(columns.shape)


def execute_program(p: GateProgram, initial: Union[int, np.ndarray] = 0) -> np.ndarray:
    """
    Apply ``p`` to a basis state (or a given statevector) and return the final statevector.

    Args:
        p: the program.
        initial: basis index of the start state, or a full statevector of length ``2^wire_count``.

    Raises:
        TooManyWires: if ``p`` spans more than ``settings.limits.executor_wires`` wires.
        ValueError: if the initial state does not fit the program.
    """
    _check_executor(p, settings.limits.executor_wires)
    size = 1 << p.wire_count
    if isinstance(initial, np.ndarray):
        if initial.shape != (size,):
            raise ValueError(f"Initial state has shape {initial.shape}, expected ({size},)")
        vector = initial.astype(np.complex128).reshape(size, 1)
    else:
        if not 0 <= initial < size:
            raise ValueError(f"Initial basis index {initial} out of range 0..{size - 1}")
        vector = np.zeros((size, 1), dtype=np.complex128)
        vector[initial, 0] = 1
    return _run(p, vector).reshape(-1)


def program_matrix(p: GateProgram) -> np.ndarray:
    """
    The dense unitary of ``p``, column ``j`` is the program applied to basis state ``j``.

    Raises:
        TooManyWires: if ``p`` spans more than ``settings.limits.dense_wires`` wires.
    """
    _check_executor(p, settings.limits.dense_wires)
    return _run(p, np.eye(1 << p.wire_count, dtype=np.complex128))


def ancilla_zero_probability(p: GateProgram, vector: np.ndarray) -> float:
    """ Probability that every ancilla of ``p`` reads 0 in ``vector``. """
    block = vector[:1 << (p.n + p.m)]
    return float(np.vdot(block, block).real)


def to_walk_state(g: CubelikeGraph, p: GateProgram, vector: np.ndarray) -> WalkState:
    """
    View an executor result as a walk state, dropping the (all zero) ancilla block.

    Raises:
        WidthMismatch: if the program layout does not belong to ``g``.
    """
    if (p.n, p.m) != (g.n, g.m):
        raise WidthMismatch(f"Program layout n={p.n}, m={p.m} does not match {g.descriptor} (n={g.n}, m={g.m})")
    return WalkState.from_flat(g, vector[:1 << g.wires])


@dataclass(frozen=True)
class EquivalenceReport:
    graph: str
    T: int
    strategy: str
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tolerance

    def to_json(self) -> Dict[str, Union[str, int, float, bool]]:
        return {'graph': self.graph,
                'T': self.T,
                'strategy': self.strategy,
                'max_deviation': self.max_deviation,
                'tolerance': self.tolerance,
                'pass': self.passed}


def verify_equivalence(g: CubelikeGraph,
                       T: int = 1,
                       strategy: Optional[StrategyLike] = None,
                       program: Optional[GateProgram] = None) -> EquivalenceReport:
    """
    Compare a gate program column by column against the dense ``U^T``, phases included.

    Args:
        g: the graph.
        T: number of steps the program is expected to implement.
        strategy: coin strategy used to compile the default program, see :meth:`CoinStrategy.default_for`.
        program: program to check instead of ``T`` compiled steps, reported with strategy ``program``. Ancillas
            must start and end in ``|0>``; the comparison is restricted to that subspace.

    Raises:
        TooManyWires: if the program or ``g`` exceed the dense limit.
        WidthMismatch: if ``program`` does not use the layout of ``g``.
        DegreeNotPowerOfTwo: propagated from the compiler.
    """
    if T < 0:
        raise ValueError(f"Step count must be non-negative, got {T}")
    if program is None:
        strategy = CoinStrategy(strategy) if strategy is not None else CoinStrategy.default_for(g)
        label = strategy.value
        program = GateProgram(g.n, g.m)
        step_program = compile_step(g, strategy)
        for _ in range(T):
            program = program + step_program
    elif (program.n, program.m) != (g.n, g.m):
        raise WidthMismatch(f"Program layout n={program.n}, m={program.m} does not match {g.descriptor}")
    else:
        label = 'program'

    expected = np.linalg.matrix_power(dense.step_matrix(g), T)
    size = 1 << g.wires
    actual = program_matrix(program)[:size, :size]
    deviation = float(np.abs(actual - expected).max())
    report = EquivalenceReport(graph=g.descriptor,
                               T=T,
                               strategy=label,
                               max_deviation=deviation,
                               tolerance=float(settings.tolerances.equivalence))
    logger.debug(f"Equivalence check {report}")
    return report


def verify_walk(g: CubelikeGraph,
                T: int,
                strategy: Optional[StrategyLike] = None,
                program: Optional[GateProgram] = None) -> EquivalenceReport:
    """
    Run a compiled walk from ``|0...0>`` and compare its amplitudes with the walk engine started at ``0^n``.

    Any probability left outside the all-zero ancilla block counts as deviation.

    Args:
        g: the graph.
        T: number of steps.
        strategy: coin strategy for the default :func:`compile_walk` program.
        program: a compiled walk to check instead, reported with strategy ``program``.

    Raises:
        TooManyWires: if the program exceeds the executor limit.
        WidthMismatch: if ``program`` does not use the layout of ``g``.
    """
    if program is None:
        strategy = CoinStrategy(strategy) if strategy is not None else CoinStrategy.default_for(g)
        program = compile_walk(g, T, strategy)
        label = strategy.value
    else:
        label = 'program'
    vector = execute_program(program)
    state = to_walk_state(g, program, vector)
    expected = evolve(initial_state(g, BitString.zero(g.n)), T)
    leaked = abs(1 - ancilla_zero_probability(program, vector))
    deviation = max(leaked, float(np.abs(state.amplitudes - expected.amplitudes).max()))
    report = EquivalenceReport(graph=g.descriptor,
                               T=T,
                               strategy=label,
                               max_deviation=deviation,
                               tolerance=float(settings.tolerances.equivalence))
    logger.debug(f"Walk check {report}")
    return report
