from __future__ import annotations
from bitarray import bitarray  # type: ignore
from bitarray.util import int2ba, ba2int  # type: ignore
from typing import List, Union

__all__ = ['BitString']


class BitString:
    """
    A fixed width binary string ``x_{n-1}...x_1x_0`` backed by an unsigned integer.

    Bit ``j`` of :attr:`value` is ``x_j``. Text is big-endian: the leftmost character is ``x_{n-1}``.
    """
    __slots__ = ('_value', '_width')

    def __init__(self, value: int, width: int) -> None:
        """
        Args:
            value: unsigned integer holding the bits.
            width: number of bits, at least 1.

        Raises:
            ValueError: if the width is smaller than 1 or the value does not fit the width.
        """
        if width < 1:
            raise ValueError(f"Invalid BitString: width {width} must be at least 1")
        if value < 0 or value >= (1 << width):
            raise ValueError(f"Invalid BitString: value {value} does not fit in {width} bits")
        self._value = value
        self._width = width

    @property
    def value(self) -> int:
        return self._value

    @property
    def width(self) -> int:
        return self._width

    @classmethod
    def from_string(cls, text: str) -> BitString:
        """
        Parse big-endian binary text such as ``'0101'``.

        Raises:
            ValueError: if the text is empty or holds characters other than ``0`` and ``1``.
        """
        text = text.strip()
        if len(text) == 0:
            raise ValueError("Cannot parse BitString from empty text")
        if not set(text) <= {'0', '1'}:
            raise ValueError(f"Cannot parse BitString from {text!r}: only '0' and '1' are allowed")
        bits = bitarray(text, endian='big')
        return cls(ba2int(bits), len(bits))

    @classmethod
    def zero(cls, width: int) -> BitString:
        return cls(0, width)

    @classmethod
    def ones(cls, width: int) -> BitString:
        return cls((1 << width) - 1, width)

    def to_bitarray(self) -> bitarray:
        return int2ba(self._value, length=self._width, endian='big')

    def weight(self) -> int:
        """ Hamming weight, the number of 1 bits. """
        return self.to_bitarray().count(1)

    def set_bits(self) -> List[int]:
        """ Positions ``j`` with ``x_j == 1``, ascending. """
        return [j for j in range(self._width) if (self._value >> j) & 1]

    def __xor__(self, other: Union[BitString, int]) -> BitString:
        if isinstance(other, BitString):
            if other._width != self._width:
                raise ValueError(f"Cannot XOR BitStrings of width {self._width} and {other._width}")
            return BitString(self._value ^ other._value, self._width)
        return BitString(self._value ^ other, self._width)

    def __int__(self) -> int:
        return self._value

    def __index__(self) -> int:
        return self._value

    def __len__(self) -> int:
        """ Count of bits. """
        return self._width

    def __eq__(self, other) -> bool:
        if other is None:
            return False

        if not isinstance(other, BitString):
            return False

        return self._value == other._value and self._width == other._width

    def __hash__(self):
        return hash((self._value, self._width))

    def __str__(self):
        return self.to_bitarray().to01()

    def __repr__(self):
        return f"<BitString {self}>"

    def _compare_to(self, other) -> int:
        if not isinstance(other, BitString):
            raise TypeError(f"Cannot compare {type(self).__name__} to type {type(other).__name__}")

        if self._width != other._width:
            raise ValueError(f"Cannot compare BitString of width {self._width} with width {other._width}")

        return (self._value > other._value) - (self._value < other._value)

    def __lt__(self, other):
        return self._compare_to(other) < 0

    def __gt__(self, other):
        return self._compare_to(other) > 0

    def __le__(self, other):
        return self._compare_to(other) <= 0

    def __ge__(self, other):
        return self._compare_to(other) >= 0
