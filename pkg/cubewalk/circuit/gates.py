"""
Abstract gate programs over ``n + m`` wires (plus optional ancillas).

Wires ``0..n-1`` hold the position, bit j of the vertex label on wire j. Wires ``n..n+m-1`` hold the coin, wire
``n`` is the least significant bit of the edge index. Ancillas, if any, follow the coin wires.

Text dump format, one gate per line::

    # program n=2 m=1 ancillas=0
    H 2
    X 2
    MCX 2 -> 0
    GPHASE i
    RY 4 1.2309594173407747
    CRY 4,5 -> 3 0.5
"""
from __future__ import annotations
from dataclasses import dataclass
from enum import IntEnum
from typing import Dict, Iterator, List, Sequence, Tuple
from cubewalk.exceptions import InvalidGate, ProgramFormatError

__all__ = ['GateKind', 'Gate', 'GateProgram', 'GateCounts', 'gate_counts']

_PHASE_NAMES = {1j: 'i', -1j: '-i', 1: '1', -1: '-1'}
_PHASE_VALUES = {'i': 1j, '-i': -1j, '1': 1 + 0j, '-1': -1 + 0j}


class GateKind(IntEnum):
    H = 0
    X = 1
    MCX = 2
    GPHASE = 3
    RY = 4
    CRY = 5


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    target: int = -1
    controls: Tuple[int, ...] = ()
    angle: float = 0.0
    phase: complex = 1 + 0j

    @classmethod
    def h(cls, wire: int) -> Gate:
        return cls(GateKind.H, target=wire)

    @classmethod
    def x(cls, wire: int) -> Gate:
        return cls(GateKind.X, target=wire)

    @classmethod
    def mcx(cls, controls: Sequence[int], target: int) -> Gate:
        return cls(GateKind.MCX, target=target, controls=tuple(controls))

    @classmethod
    def gphase(cls, factor: complex) -> Gate:
        return cls(GateKind.GPHASE, phase=complex(factor))

    @classmethod
    def ry(cls, wire: int, angle: float) -> Gate:
        return cls(GateKind.RY, target=wire, angle=float(angle))

    @classmethod
    def cry(cls, controls: Sequence[int], wire: int, angle: float) -> Gate:
        return cls(GateKind.CRY, target=wire, controls=tuple(controls), angle=float(angle))

    @property
    def wires(self) -> Tuple[int, ...]:
        if self.kind == GateKind.GPHASE:
            return ()
        return self.controls + (self.target,)

    def validate(self, wire_count: int) -> None:
        """
        Raises:
            InvalidGate: if a wire is out of range, an MCX/CRY target is among its controls or lacks controls, or a
                GPHASE factor is not a unit complex number.
        """
        if self.kind == GateKind.GPHASE:
            if abs(abs(self.phase) - 1) > 1e-12:
                raise InvalidGate(f"Global phase factor {self.phase} does not have modulus 1")
            return
        for w in self.wires:
            if not 0 <= w < wire_count:
                raise InvalidGate(f"{self.kind.name} uses wire {w} outside 0..{wire_count - 1}")
        if self.kind in (GateKind.MCX, GateKind.CRY):
            if len(self.controls) == 0:
                raise InvalidGate(f"{self.kind.name} needs at least one control")
            if self.target in self.controls:
                raise InvalidGate(f"{self.kind.name} target {self.target} is also a control")
            if len(set(self.controls)) != len(self.controls):
                raise InvalidGate(f"{self.kind.name} repeats a control wire")

    def inverse(self) -> Gate:
        if self.kind == GateKind.GPHASE:
            return Gate.gphase(self.phase.conjugate())
        if self.kind in (GateKind.RY, GateKind.CRY):
            return Gate(self.kind, target=self.target, controls=self.controls, angle=-self.angle)
        return self

    def to_text(self) -> str:
        if self.kind == GateKind.GPHASE:
            return f"GPHASE {_PHASE_NAMES.get(self.phase, repr(self.phase))}"
        if self.kind in (GateKind.H, GateKind.X):
            return f"{self.kind.name} {self.target}"
        if self.kind == GateKind.RY:
            return f"RY {self.target} {self.angle!r}"
        controls = ','.join(str(c) for c in self.controls)
        if self.kind == GateKind.MCX:
            return f"MCX {controls} -> {self.target}"
        return f"CRY {controls} -> {self.target} {self.angle!r}"

    @classmethod
    def from_text(cls, line: str) -> Gate:
        """
        Raises:
            ProgramFormatError: if the line is not a gate in the dump format.
        """
        tokens = line.split()
        try:
            name = tokens[0]
            if name == 'H':
                return cls.h(int(tokens[1]))
            elif name == 'X':
                return cls.x(int(tokens[1]))
            elif name == 'RY':
                return cls.ry(int(tokens[1]), float(tokens[2]))
            elif name == 'GPHASE':
                token = tokens[1]
                return cls.gphase(_PHASE_VALUES[token] if token in _PHASE_VALUES else complex(token))
            elif name in ('MCX', 'CRY'):
                if tokens[2] != '->':
                    raise ValueError("missing '->'")
                controls = [int(c) for c in tokens[1].split(',')]
                if name == 'MCX':
                    return cls.mcx(controls, int(tokens[3]))
                return cls.cry(controls, int(tokens[3]), float(tokens[4]))
        except (IndexError, ValueError) as e:
            raise ProgramFormatError(f"Invalid gate line {line!r}: {e}")
        raise ProgramFormatError(f"Unknown gate {tokens[0]!r} in line {line!r}")


@dataclass(frozen=True)
class GateCounts:
    x_count: int = 0
    mcx_count: int = 0
    h_count: int = 0
    phase_count: int = 0
    rotation_count: int = 0

    def to_json(self) -> Dict[str, int]:
        return {'x': self.x_count,
                'mcx': self.mcx_count,
                'h': self.h_count,
                'phases': self.phase_count,
                'rotations': self.rotation_count}


class GateProgram:
    """
    An immutable, ordered list of gates on ``n`` position wires, ``m`` coin wires and ``ancillas`` helper wires.
    """
    def __init__(self, n: int, m: int, gates: Sequence[Gate] = (), ancillas: int = 0):
        """
        Raises:
            InvalidGate: if any gate does not fit the wire layout.
        """
        self.n = n
        self.m = m
        self.ancillas = ancillas
        self._gates: Tuple[Gate, ...] = tuple(gates)
        for g in self._gates:
            g.validate(self.wire_count)

    @property
    def wire_count(self) -> int:
        return self.n + self.m + self.ancillas

    @property
    def gates(self) -> Tuple[Gate, ...]:
        return self._gates

    def __len__(self) -> int:
        return len(self._gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self._gates)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GateProgram):
            return False
        return (self.n, self.m, self.ancillas, self._gates) == (other.n, other.m, other.ancillas, other._gates)

    def __add__(self, other: GateProgram) -> GateProgram:
        if (self.n, self.m, self.ancillas) != (other.n, other.m, other.ancillas):
            raise ValueError("Cannot concatenate programs with different wire layouts")
        return GateProgram(self.n, self.m, self._gates + other._gates, self.ancillas)

    def inverse(self) -> GateProgram:
        return GateProgram(self.n, self.m, [g.inverse() for g in reversed(self._gates)], self.ancillas)

    def to_text(self) -> str:
        lines = [f"# program n={self.n} m={self.m} ancillas={self.ancillas}"]
        lines.extend(g.to_text() for g in self._gates)
        return '\n'.join(lines) + '\n'

    @classmethod
    def from_text(cls, text: str) -> GateProgram:
        """
        Parse the dump format.

        Raises:
            ProgramFormatError: if the header is missing or a line is malformed.
            InvalidGate: if a gate does not fit the declared wires.
        """
        lines = [line.strip() for line in text.splitlines()]
        lines = [line for line in lines if line]
        if not lines or not lines[0].startswith('# program'):
            raise ProgramFormatError("Missing '# program n=<n> m=<m> ancillas=<a>' header")
        header: Dict[str, int] = {}
        for token in lines[0].split()[2:]:
            key, _, value = token.partition('=')
            try:
                header[key] = int(value)
            except ValueError:
                raise ProgramFormatError(f"Invalid header field {token!r}")
        if 'n' not in header or 'm' not in header:
            raise ProgramFormatError("Program header needs n and m")
        gates: List[Gate] = [Gate.from_text(line) for line in lines[1:] if not line.startswith('#')]
        return cls(header['n'], header['m'], gates, header.get('ancillas', 0))


def gate_counts(p: GateProgram) -> GateCounts:
    """ Exact tallies of each gate kind in ``p``. """
    tally = {kind: 0 for kind in GateKind}
    for g in p:
        tally[g.kind] += 1
    return GateCounts(x_count=tally[GateKind.X],
                      mcx_count=tally[GateKind.MCX],
                      h_count=tally[GateKind.H],
                      phase_count=tally[GateKind.GPHASE],
                      rotation_count=tally[GateKind.RY] + tally[GateKind.CRY])
