"""
Lowering of the walk operators to gate programs.

Coin strategies:

* ``paper-diffusion``: ``H^m X^m (i) H MCX H (i) X^m H^m`` on the coin wires. Equals the Grover coin exactly, the
  two ``i`` global phases included. Only valid when ``delta == 2^m``.
* ``prepare-reflect``: ``W R_0 W^†`` where ``R_0 = 2|0^m><0^m| - I`` and ``W|0^m> = |D'>`` is a network of RY and
  multi-controlled RY gates. Realises the padded coin ``C'`` for any degree.

The shift visits every coin basis state once: before block ``k`` the X pattern ``B(α_{k-1})`` relabels coin state
``α_{k-1}`` to ``1^m`` and the block's MCX gates, all controlled on ``1^m``, move that slice along ``Ω(k)``.
"""
from __future__ import annotations
import math
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union
from cubewalk import circuit_logger as logger
from cubewalk.core import CubelikeGraph, b_sequence
from cubewalk.circuit.gates import Gate, GateProgram, gate_counts
from cubewalk.exceptions import DegreeNotPowerOfTwo

__all__ = ['CoinStrategy',
           'coin_wires',
           'prepare_coin_state',
           'compile_coin',
           'compile_shift',
           'compile_step',
           'compile_walk']


class CoinStrategy(str, Enum):
    PAPER_DIFFUSION = 'paper-diffusion'
    PREPARE_REFLECT = 'prepare-reflect'

    @classmethod
    def default_for(cls, g: CubelikeGraph) -> CoinStrategy:
        """ The diffusion circuit when it applies, the state preparation based reflection otherwise. """
        if g.delta == g.coin_slots:
            return cls.PAPER_DIFFUSION
        return cls.PREPARE_REFLECT


StrategyLike = Union[CoinStrategy, str]


def coin_wires(g: CubelikeGraph) -> List[int]:
    """ Coin wires, least significant bit of the edge index first. """
    return [g.n + j for j in range(g.m)]


def _controlled_ry(conditions: Sequence[Tuple[int, int]], target: int, angle: float) -> List[Gate]:
    """ RY on ``target`` if every ``(wire, value)`` condition holds; 0-valued conditions are X conjugated. """
    flips = [w for w, value in conditions if value == 0]
    gates = [Gate.x(w) for w in flips]
    if conditions:
        gates.append(Gate.cry([w for w, _ in conditions], target, angle))
    else:
        gates.append(Gate.ry(target, angle))
    gates.extend(Gate.x(w) for w in flips)
    return gates


def prepare_coin_state(g: CubelikeGraph) -> GateProgram:
    """
    The network ``W`` with ``W|0^m> = |D'>``, uniform over the coin values ``0..delta-1``.

    Works from the most significant coin bit down along the binary expansion of ``delta - 1``. Where that bit is 1
    the branch splits: bit value 0 leaves a full subtree (every lower bit uniform), bit value 1 continues along the
    boundary with the remaining states.
    """
    gates: List[Gate] = []
    top = g.delta - 1
    for j in reversed(range(g.m)):
        if not (top >> j) & 1:
            continue
        remaining = (top & ((1 << (j + 1)) - 1)) + 1
        boundary = [(g.n + i, (top >> i) & 1) for i in range(g.m - 1, j, -1)]
        gates.extend(_controlled_ry(boundary, g.n + j, 2 * math.acos(math.sqrt((1 << j) / remaining))))
        full_branch = boundary + [(g.n + j, 0)]
        for i in reversed(range(j)):
            gates.extend(_controlled_ry(full_branch, g.n + i, math.pi / 2))
    return GateProgram(g.n, g.m, gates)


def _reflect_about_zero(g: CubelikeGraph) -> List[Gate]:
    """ ``2|0^m><0^m| - I``: X-conjugated multi-controlled Z with the two ``i`` phases. """
    wires = coin_wires(g)
    last = wires[-1]
    gates = [Gate.x(w) for w in wires]
    gates.append(Gate.gphase(1j))
    gates.append(Gate.h(last))
    if g.m > 1:
        gates.append(Gate.mcx(wires[:-1], last))
    else:
        gates.append(Gate.x(last))
    gates.append(Gate.h(last))
    gates.append(Gate.gphase(1j))
    gates.extend(Gate.x(w) for w in wires)
    return gates


def compile_coin(g: CubelikeGraph, strategy: Optional[StrategyLike] = None) -> GateProgram:
    """
    Compile the coin operator. Without a strategy :meth:`CoinStrategy.default_for` picks one.

    Raises:
        DegreeNotPowerOfTwo: for ``paper-diffusion`` when ``delta < 2^m``.
        ValueError: for an unknown strategy.
    """
    strategy = CoinStrategy(strategy) if strategy is not None else CoinStrategy.default_for(g)
    if strategy == CoinStrategy.PAPER_DIFFUSION:
        if g.delta != g.coin_slots:
            raise DegreeNotPowerOfTwo(f"paper-diffusion needs a power of two degree, {g.descriptor} has "
                                      f"delta={g.delta} < 2^{g.m}; use prepare-reflect")
        hadamards = [Gate.h(w) for w in coin_wires(g)]
        return GateProgram(g.n, g.m, hadamards + _reflect_about_zero(g) + hadamards)

    prepare = prepare_coin_state(g)
    reflect = GateProgram(g.n, g.m, _reflect_about_zero(g))
    return prepare.inverse() + reflect + prepare


def compile_shift(g: CubelikeGraph) -> GateProgram:
    """ Compile ``S'``: ``2^m`` blocks of X relabeling followed, for real edges, by MCX moves. """
    gates: List[Gate] = []
    wires = coin_wires(g)
    for k, pattern in enumerate(b_sequence(g.m), start=1):
        gates.extend(Gate.x(g.n + j) for j in pattern.set_bits())
        if k <= g.delta:
            gates.extend(Gate.mcx(wires, p) for p in g.omega.element(k).set_bits())
    program = GateProgram(g.n, g.m, gates)
    logger.debug(f"Shift for {g.descriptor}: {gate_counts(program)}")
    return program


def compile_step(g: CubelikeGraph, strategy: Optional[StrategyLike] = None) -> GateProgram:
    """ One walk step, coin then shift. """
    return compile_coin(g, strategy) + compile_shift(g)


def compile_walk(g: CubelikeGraph, T: int, strategy: Optional[StrategyLike] = None) -> GateProgram:
    """
    Coin initialisation followed by ``T`` steps, starting from ``|0...0>``.

    The coin is initialised with a Hadamard on every coin wire when ``delta == 2^m``, otherwise with the
    :func:`prepare_coin_state` network, so the walk starts in ``|D'>|0^n>`` in both cases.

    Raises:
        ValueError: if ``T < 1``.
        DegreeNotPowerOfTwo: propagated from :func:`compile_coin`.
    """
    if T < 1:
        raise ValueError(f"A compiled walk needs at least one step, got T={T}")
    if g.delta == g.coin_slots:
        program = GateProgram(g.n, g.m, [Gate.h(w) for w in coin_wires(g)])
    else:
        program = prepare_coin_state(g)
    step = compile_step(g, strategy)
    for _ in range(T):
        program = program + step
    logger.debug(f"Compiled {T} step walk on {g.descriptor} with {len(program)} gates")
    return program
