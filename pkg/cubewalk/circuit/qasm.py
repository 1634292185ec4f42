"""
OpenQASM 2.0 export of gate programs, and a reader for the subset it writes.

Two lowering passes run before emission. Controlled rotations are always expanded into ``ry`` and MCX gates since
``qelib1.inc`` has no multi-controlled RY. MCX gates with three or more controls are either kept as declared
``opaque mcxK`` gates or replaced by a Toffoli V-chain over an ``anc`` register that is returned to ``|0>``.

Global phases cannot be expressed in QASM 2.0. Each one is written as a ``// gphase <re> <im>`` annotation and the
product of all of them is recorded in the header.
"""
from __future__ import annotations
import re
from enum import Enum
from typing import Dict, List, Optional, Union
from cubewalk import circuit_logger as logger
from cubewalk.circuit.gates import Gate, GateKind, GateProgram
from cubewalk.exceptions import ProgramFormatError

__all__ = ['McxLowering', 'expand_controlled_rotations', 'lower_mcx_ancilla_ladder', 'emit_qasm', 'parse_qasm']


class McxLowering(str, Enum):
    OPAQUE = 'opaque'
    ANCILLA_LADDER = 'ancilla-ladder'


def expand_controlled_rotations(p: GateProgram) -> GateProgram:
    """ Replace every ``CRY(c, t, θ)`` by ``RY(t, θ/2) MCX(c, t) RY(t, -θ/2) MCX(c, t)``. """
    gates: List[Gate] = []
    for g in p:
        if g.kind != GateKind.CRY:
            gates.append(g)
            continue
        gates.append(Gate.ry(g.target, g.angle / 2))
        gates.append(Gate.mcx(g.controls, g.target))
        gates.append(Gate.ry(g.target, -g.angle / 2))
        gates.append(Gate.mcx(g.controls, g.target))
    return GateProgram(p.n, p.m, gates, p.ancillas)


def _v_chain(controls, target: int, first_ancilla: int) -> List[Gate]:
    k = len(controls)
    compute = [Gate.mcx((controls[0], controls[1]), first_ancilla)]
    for i in range(1, k - 1):
        compute.append(Gate.mcx((controls[i + 1], first_ancilla + i - 1), first_ancilla + i))
    return compute + [Gate.mcx((first_ancilla + k - 2,), target)] + compute[::-1]


def lower_mcx_ancilla_ladder(p: GateProgram) -> GateProgram:
    """
    Replace every MCX with ``k >= 3`` controls by a Toffoli V-chain on ``k - 1`` ancilla wires.

    The ancillas are appended after the existing wires and end every chain in ``|0>`` again. A program without such
    gates is returned unchanged.
    """
    widest = max((len(g.controls) for g in p if g.kind == GateKind.MCX), default=0)
    if widest < 3:
        return p
    first = p.wire_count
    gates: List[Gate] = []
    for g in p:
        if g.kind == GateKind.MCX and len(g.controls) >= 3:
            gates.extend(_v_chain(g.controls, g.target, first))
        else:
            gates.append(g)
    return GateProgram(p.n, p.m, gates, p.ancillas + widest - 1)


def _real(value: float) -> str:
    # QASM 2.0 reals need a decimal point
    text = repr(float(value))
    mantissa, e, exponent = text.partition('e')
    if '.' not in mantissa:
        mantissa += '.0'
    return mantissa + e + exponent


def _wire(p: GateProgram, w: int) -> str:
    base = p.n + p.m
    if w < base:
        return f"q[{w}]"
    return f"anc[{w - base}]"


def _statement(p: GateProgram, g: Gate) -> str:
    if g.kind == GateKind.H:
        return f"h {_wire(p, g.target)};"
    if g.kind == GateKind.X:
        return f"x {_wire(p, g.target)};"
    if g.kind == GateKind.RY:
        return f"ry({_real(g.angle)}) {_wire(p, g.target)};"
    if g.kind == GateKind.GPHASE:
        return f"// gphase {_real(g.phase.real)} {_real(g.phase.imag)}"
    if g.kind == GateKind.MCX:
        arity = len(g.controls)
        name = {1: 'cx', 2: 'ccx'}.get(arity, f"mcx{arity}")
        return f"{name} {','.join(_wire(p, w) for w in g.controls + (g.target,))};"
    raise ProgramFormatError(f"Gate {g.to_text()} has no QASM form, expand controlled rotations first")


def emit_qasm(p: GateProgram, mcx_lowering: Union[McxLowering, str] = McxLowering.OPAQUE) -> str:
    """
    Render ``p`` as OpenQASM 2.0 followed by a measurement of the position wires.

    Args:
        p: the program.
        mcx_lowering: ``opaque`` declares one parameter free gate per MCX arity above two, ``ancilla-ladder`` lowers
            those gates to Toffoli chains on an ``anc`` register.

    Returns:
        the QASM text, identical for identical inputs.
    """
    mcx_lowering = McxLowering(mcx_lowering)
    lowered = expand_controlled_rotations(p)
    if mcx_lowering == McxLowering.ANCILLA_LADDER:
        lowered = lower_mcx_ancilla_ladder(lowered)

    phase = 1 + 0j
    for g in lowered:
        if g.kind == GateKind.GPHASE:
            phase *= g.phase

    lines = ['OPENQASM 2.0;',
             'include "qelib1.inc";',
             f"// cubewalk program n={p.n} m={p.m} mcx={mcx_lowering.value}",
             f"// global phase {_real(phase.real)} {_real(phase.imag)}"]
    arities = sorted({len(g.controls) for g in lowered if g.kind == GateKind.MCX and len(g.controls) >= 3})
    for arity in arities:
        arguments = ','.join(f"c{i}" for i in range(arity))
        lines.append(f"opaque mcx{arity} {arguments},t;")
    lines.append(f"qreg q[{p.n + p.m}];")
    if lowered.ancillas:
        lines.append(f"qreg anc[{lowered.ancillas}];")
    lines.append(f"creg c[{p.n}];")
    lines.extend(_statement(lowered, g) for g in lowered)
    lines.extend(f"measure q[{j}] -> c[{j}];" for j in range(p.n))
    logger.debug(f"Emitted QASM for {len(lowered)} gates, lowering {mcx_lowering.value}")
    return '\n'.join(lines) + '\n'


_REGISTER = re.compile(r'^(qreg|creg)\s+(\w+)\[(\d+)\];$')
_GATE = re.compile(r'^(\w+)(?:\(([^)]*)\))?\s+([^;]+);$')
_OPERAND = re.compile(r'^(q|anc)\[(\d+)\]$')
_MCX_NAME = re.compile(r'^mcx(\d+)$')


def parse_qasm(text: str) -> GateProgram:
    """
    Read QASM written by :func:`emit_qasm` back into a gate program.

    ``n`` is the classical register size, ``m`` the rest of ``q``, ancillas the size of ``anc``. Measurements are
    dropped and ``// gphase`` annotations become GPHASE gates.

    Raises:
        ProgramFormatError: for statements outside the emitted subset or missing registers.
    """
    registers: Dict[str, int] = {}
    pending: List[Union[Gate, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith('//'):
            tokens = line[2:].split()
            if len(tokens) == 3 and tokens[0] == 'gphase':
                try:
                    pending.append(Gate.gphase(complex(float(tokens[1]), float(tokens[2]))))
                except ValueError:
                    raise ProgramFormatError(f"Line {lineno}: invalid phase annotation {raw!r}")
            continue
        if line.startswith(('OPENQASM', 'include', 'opaque', 'measure', 'barrier')):
            continue
        register = _REGISTER.match(line)
        if register:
            registers[register.group(2)] = int(register.group(3))
            continue
        if _GATE.match(line) is None:
            raise ProgramFormatError(f"Line {lineno}: unsupported statement {raw!r}")
        pending.append(line)

    if 'q' not in registers or 'c' not in registers:
        raise ProgramFormatError("QASM text needs 'qreg q[..]' and 'creg c[..]'")
    n = registers['c']
    m = registers['q'] - n
    base = registers['q']
    gates = []
    for item in pending:
        if isinstance(item, Gate):
            gates.append(item)
            continue
        gates.append(_parse_gate(item, base))
    return GateProgram(n, m, gates, registers.get('anc', 0))


def _parse_gate(line: str, base: int) -> Gate:
    match = _GATE.match(line)
    assert match is not None
    name, argument, operands = match.groups()
    wires = []
    for operand in operands.split(','):
        found = _OPERAND.match(operand.strip())
        if found is None:
            raise ProgramFormatError(f"Unknown operand {operand.strip()!r} in {line!r}")
        index = int(found.group(2))
        wires.append(index if found.group(1) == 'q' else base + index)

    arity: Optional[int] = {'cx': 1, 'ccx': 2}.get(name)
    mcx_name = _MCX_NAME.match(name)
    if mcx_name:
        arity = int(mcx_name.group(1))
    try:
        if name == 'h' and len(wires) == 1:
            return Gate.h(wires[0])
        if name == 'x' and len(wires) == 1:
            return Gate.x(wires[0])
        if name == 'ry' and len(wires) == 1 and argument is not None:
            return Gate.ry(wires[0], float(argument))
    except ValueError:
        raise ProgramFormatError(f"Invalid angle in {line!r}")
    if arity is not None and len(wires) == arity + 1:
        return Gate.mcx(wires[:-1], wires[-1])
    raise ProgramFormatError(f"Unsupported gate {line!r}")
