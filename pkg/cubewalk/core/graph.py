"""
Cubelike graphs ``Cay(Z_2^n, Ω)`` and the bit bookkeeping used by the shift compiler.

Vertices are n-bit strings, vertex ``v`` is adjacent to ``v ⊕ Ω(k)`` for every generator. Generators are kept in
canonical (lexicographic, i.e. increasing integer) order unless explicitly requested otherwise. The edge ``k`` (1
based) is stored on the coin register as the integer ``k - 1``.

Generating set file format
::

    # anything after '#' is a comment
    n=4
    0101
    0111
    1001
    1010
"""
from __future__ import annotations
import numpy as np
from functools import reduce
from typing import Iterable, Iterator, List, Optional, Sequence, Union
from cubewalk import core_logger as logger, settings
from cubewalk.core.types import BitString
from cubewalk.exceptions import (IdentityInGeneratingSet, DuplicateGenerator, EmptyGeneratingSet,
                                 DimensionTooSmall, TooManyExtras, EdgeIndexOutOfRange, WidthMismatch,
                                 GeneratingSetFormatError, ResourceLimitExceeded)

__all__ = ['GeneratingSet',
           'CubelikeGraph',
           'coin_width',
           'make_graph',
           'hypercube',
           'augmented_cube',
           'complete_graph',
           'random_cubelike',
           'family_graph',
           'FAMILIES',
           'target_vertex',
           'neighbor',
           'b_sequence',
           'parse_generating_set',
           'load_generating_set',
           'format_generating_set']

GeneratorLike = Union[BitString, str]


def coin_width(delta: int) -> int:
    """
    Smallest coin register width ``m`` with ``delta <= 2^m``.

    A single edge (``delta == 1``) still gets one coin wire.
    """
    return max(1, (delta - 1).bit_length())


def _check_wires(n: int, m: int) -> None:
    limit = settings.limits.max_wires
    if n + m > limit:
        logger.debug(f"Rejecting graph with n={n}, m={m}: {n + m} wires > limit {limit}")
        raise ResourceLimitExceeded(f"Graph needs {n + m} wires (n={n}, m={m}), the limit is {limit}")


class GeneratingSet:
    """
    An ordered set of nonzero generators of equal width.
    """
    def __init__(self, elements: Sequence[BitString]):
        """
        Args:
            elements: the generators in the order they label the edges.

        Raises:
            EmptyGeneratingSet: if no elements are given.
            WidthMismatch: if the elements do not share one width.
            IdentityInGeneratingSet: if ``0^n`` is present.
            DuplicateGenerator: if an element repeats.
        """
        if len(elements) == 0:
            raise EmptyGeneratingSet("A generating set needs at least one element")

        width = elements[0].width
        seen = set()
        for e in elements:
            if e.width != width:
                raise WidthMismatch(f"Generator {e} has width {e.width}, expected {width}")
            if e.value == 0:
                raise IdentityInGeneratingSet(f"Identity element {e} is not allowed in a generating set")
            if e.value in seen:
                raise DuplicateGenerator(f"Generator {e} occurs more than once")
            seen.add(e.value)

        self._elements = tuple(elements)
        self.width = width

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[BitString]:
        return iter(self._elements)

    def __getitem__(self, index: int) -> BitString:
        return self._elements[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GeneratingSet):
            return False
        return self._elements == other._elements

    def __str__(self):
        return '{' + ','.join(str(e) for e in self._elements) + '}'

    def element(self, k: int) -> BitString:
        """
        The k-th generator ``Ω(k)``, 1 based.

        Raises:
            EdgeIndexOutOfRange: if k is not in ``1..len(self)``.
        """
        if not 1 <= k <= len(self._elements):
            raise EdgeIndexOutOfRange(f"Edge index {k} out of range 1..{len(self._elements)}")
        return self._elements[k - 1]

    @property
    def values(self) -> List[int]:
        return [e.value for e in self._elements]

    def is_canonical(self) -> bool:
        values = self.values
        return all(a < b for a, b in zip(values, values[1:]))

    def canonical(self) -> GeneratingSet:
        return GeneratingSet(sorted(self._elements))


class CubelikeGraph:
    """
    The cubelike graph ``Cay(Z_2^n, Ω)`` of dimension ``n`` and degree ``delta = |Ω|``.

    ``m`` is the coin register width, ``2^(m-1) < delta <= 2^m`` (with ``m >= 1``).
    """
    def __init__(self, n: int, omega: GeneratingSet, name: Optional[str] = None):
        if omega.width != n:
            raise WidthMismatch(f"Generating set width {omega.width} does not match dimension {n}")
        self.n = n
        self.omega = omega
        self.delta = len(omega)
        self.m = coin_width(self.delta)
        self.name = name

    @property
    def vertex_count(self) -> int:
        return 1 << self.n

    @property
    def coin_slots(self) -> int:
        return 1 << self.m

    @property
    def wires(self) -> int:
        return self.n + self.m

    @property
    def descriptor(self) -> str:
        """ Human readable identifier, the family name when known. """
        if self.name:
            return self.name
        return f"cubelike(n={self.n};{','.join(str(e) for e in self.omega)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, CubelikeGraph):
            return False
        return self.n == other.n and self.omega == other.omega

    def __repr__(self):
        return f"<CubelikeGraph {self.descriptor} delta={self.delta} m={self.m}>"


def _as_bitstring(element: GeneratorLike) -> BitString:
    if isinstance(element, BitString):
        return element
    return BitString.from_string(element)


def make_graph(n: int,
               elements: Iterable[GeneratorLike],
               canonicalize: bool = True,
               name: Optional[str] = None) -> CubelikeGraph:
    """
    Create a cubelike graph from its generators.

    Args:
        n: dimension.
        elements: generators as :class:`BitString` or binary text, each of width ``n``.
        canonicalize: sort the generators lexicographically.
        name: optional family descriptor.

    Raises:
        WidthMismatch: if an element's width differs from ``n``.
        IdentityInGeneratingSet: if ``0^n`` is present.
        DuplicateGenerator: if an element repeats.
        EmptyGeneratingSet: if no elements are given.
        ResourceLimitExceeded: if ``n + m`` exceeds ``settings.limits.max_wires``.
    """
    bits = [_as_bitstring(e) for e in elements]
    for b in bits:
        if b.width != n:
            raise WidthMismatch(f"Generator {b} has width {b.width}, expected {n}")
    omega = GeneratingSet(bits)
    if canonicalize:
        omega = omega.canonical()
    graph = CubelikeGraph(n, omega, name)
    _check_wires(graph.n, graph.m)
    logger.debug(f"Created {graph!r}")
    return graph


def hypercube(n: int) -> CubelikeGraph:
    """ The hypercube ``Q_n`` generated by the n unit vectors. """
    if n < 1:
        raise DimensionTooSmall(f"Hypercube dimension must be at least 1, got {n}")
    return make_graph(n, [BitString(1 << j, n) for j in range(n)], name=f"hypercube({n})")


def augmented_cube(n: int) -> CubelikeGraph:
    """ The augmented cube ``AQ_n``: unit vectors plus the suffix-ones strings ``0^(n-i)1^i``. """
    if n < 2:
        raise DimensionTooSmall(f"Augmented cube dimension must be at least 2, got {n}")
    values = {1 << j for j in range(n)} | {(1 << i) - 1 for i in range(1, n + 1)}
    return make_graph(n, [BitString(v, n) for v in values], name=f"augmented({n})")


def complete_graph(n: int) -> CubelikeGraph:
    """ The complete graph on ``2^n`` vertices, every nonzero string is a generator. """
    if n < 1:
        raise DimensionTooSmall(f"Complete graph dimension must be at least 1, got {n}")
    _check_wires(n, coin_width((1 << n) - 1))
    return make_graph(n, [BitString(v, n) for v in range(1, 1 << n)], name=f"complete({n})")


def _nonbasis_value(index: int) -> int:
    # index-th (0 based) nonzero value that is not a power of two
    target = index + 1
    v = target
    while v - v.bit_length() < target:
        v += 1
    return v


def random_cubelike(n: int, extra: int, seed: int = 0) -> CubelikeGraph:
    """
    A hypercube with ``extra`` additional generators sampled uniformly without replacement from the nonzero
    non-unit strings. The result has degree ``n + extra`` and is deterministic for a fixed seed.

    Raises:
        TooManyExtras: if ``extra`` is outside ``0..2^n - 1 - n``.
    """
    if n < 1:
        raise DimensionTooSmall(f"Dimension must be at least 1, got {n}")
    available = (1 << n) - 1 - n
    if extra < 0 or extra > available:
        raise TooManyExtras(f"Cannot add {extra} extra generators in dimension {n}, choose 0..{available}")
    _check_wires(n, coin_width(n + extra))

    rng = np.random.default_rng(seed)
    picks = rng.choice(available, size=extra, replace=False) if extra else []
    values = [1 << j for j in range(n)] + [_nonbasis_value(int(i)) for i in picks]
    return make_graph(n, [BitString(v, n) for v in values], name=f"random(n={n},k={extra},seed={seed})")


FAMILIES = ('hypercube', 'augmented', 'complete', 'random')


def family_graph(family: str, n: int, extra: int = 0, seed: int = 0) -> CubelikeGraph:
    """
    Build a graph of a built-in family by name.

    Raises:
        ValueError: for an unknown family.
    """
    if family == 'hypercube':
        return hypercube(n)
    elif family == 'augmented':
        return augmented_cube(n)
    elif family == 'complete':
        return complete_graph(n)
    elif family == 'random':
        return random_cubelike(n, extra, seed)
    raise ValueError(f"Unknown graph family {family!r}, choose from {', '.join(FAMILIES)}")


def target_vertex(g: CubelikeGraph) -> BitString:
    """ The XOR of all generators. """
    return BitString(reduce(lambda acc, v: acc ^ v, g.omega.values, 0), g.n)


def neighbor(g: CubelikeGraph, v: BitString, k: int) -> BitString:
    """
    The vertex reached from ``v`` along edge ``k`` (1 based), ``v ⊕ Ω(k)``.

    Raises:
        EdgeIndexOutOfRange: if ``k`` is not in ``1..delta``.
        WidthMismatch: if ``v`` does not have width ``n``.
    """
    if v.width != g.n:
        raise WidthMismatch(f"Vertex {v} has width {v.width}, expected {g.n}")
    return v ^ g.omega.element(k)


def b_sequence(m: int) -> List[BitString]:
    """
    The X-gate patterns ``B(α_0), ..., B(α_{2^m - 1})`` that relabel each coin state to ``1^m`` in turn.

    ``B(α_0) = 1^m``; afterwards ``B(α_k) = 0^(m-r)1^r`` with ``r`` the number of trailing bits in which ``k-1``
    and ``k`` differ (the carry length of the binary increment).
    """
    if m < 1:
        raise ValueError(f"Coin width must be at least 1, got {m}")
    sequence = [BitString.ones(m)]
    for k in range(1, 1 << m):
        r = (k ^ (k - 1)).bit_length()
        sequence.append(BitString((1 << r) - 1, m))
    return sequence


def parse_generating_set(text: str, name: Optional[str] = None) -> CubelikeGraph:
    """
    Parse the generating set text format into a canonical graph.

    Raises:
        GeneratingSetFormatError: if the ``n=<int>`` header is missing or malformed, or a line is not binary.
        WidthMismatch: if a generator's width differs from ``n``.
    """
    n = None
    elements = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if n is None:
            key, sep, value = line.partition('=')
            if not sep or key.strip() != 'n':
                raise GeneratingSetFormatError(f"Line {lineno}: expected header 'n=<int>', got {raw!r}")
            try:
                n = int(value)
            except ValueError:
                raise GeneratingSetFormatError(f"Line {lineno}: invalid dimension {value.strip()!r}")
            if n < 1:
                raise GeneratingSetFormatError(f"Line {lineno}: dimension must be at least 1, got {n}")
            continue
        try:
            element = BitString.from_string(line)
        except ValueError as e:
            raise GeneratingSetFormatError(f"Line {lineno}: {e}")
        if element.width != n:
            raise WidthMismatch(f"Line {lineno}: generator {line} has width {element.width}, expected {n}")
        elements.append(element)

    if n is None:
        raise GeneratingSetFormatError("Missing header 'n=<int>'")
    return make_graph(n, elements, canonicalize=True, name=name)


def load_generating_set(path: str) -> CubelikeGraph:
    with open(path, 'r') as f:
        return parse_generating_set(f.read())


def format_generating_set(g: CubelikeGraph) -> str:
    lines = [f"# {g.descriptor}", f"n={g.n}"] + [str(e) for e in g.omega]
    return '\n'.join(lines) + '\n'
