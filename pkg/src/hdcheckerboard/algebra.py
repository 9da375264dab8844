"""Exact dyadic scalars, quaternions and octonion-coordinate vectors.

Every value here is immutable and hashable. Arithmetic is exact: a
:class:`Dyadic` is ``numerator / 2**log2_denominator`` kept in canonical
form (odd numerator unless the denominator is 1).
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Union

DyadicLike = Union["Dyadic", int, str, Fraction]


@total_ordering
class Dyadic:
    """Exact rational with a power-of-two denominator."""

    __slots__ = ("numerator", "log2_denominator")

    def __init__(self, numerator: int = 0, log2_denominator: int = 0) -> None:
        if log2_denominator < 0:
            numerator <<= -log2_denominator
            log2_denominator = 0
        if numerator == 0:
            log2_denominator = 0
        else:
            # strip common factors of two
            tz = (numerator & -numerator).bit_length() - 1
            shift = min(tz, log2_denominator)
            numerator >>= shift
            log2_denominator -= shift
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "log2_denominator", log2_denominator)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    @classmethod
    def coerce(cls, value: DyadicLike) -> Dyadic:
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a dyadic value")
        if isinstance(value, int):
            return cls(value, 0)
        if isinstance(value, Fraction):
            den = value.denominator
            if den & (den - 1):
                raise ValueError(f"{value} has a non power-of-two denominator")
            return cls(value.numerator, den.bit_length() - 1)
        if isinstance(value, str):
            return parse_dyadic(value)
        raise TypeError(f"cannot convert {type(value).__name__} to Dyadic")

    @classmethod
    def half(cls, halves: int) -> Dyadic:
        """The value ``halves / 2``."""
        return cls(halves, 1)

    # arithmetic -----------------------------------------------------------

    def _aligned(self, other: Dyadic) -> tuple[int, int, int]:
        e = max(self.log2_denominator, other.log2_denominator)
        a = self.numerator << (e - self.log2_denominator)
        b = other.numerator << (e - other.log2_denominator)
        return a, b, e

    def __add__(self, other: DyadicLike) -> Dyadic:
        other = _maybe(other)
        if other is NotImplemented:
            return other
        a, b, e = self._aligned(other)
        return Dyadic(a + b, e)

    __radd__ = __add__

    def __sub__(self, other: DyadicLike) -> Dyadic:
        other = _maybe(other)
        if other is NotImplemented:
            return other
        a, b, e = self._aligned(other)
        return Dyadic(a - b, e)

    def __rsub__(self, other: DyadicLike) -> Dyadic:
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other: DyadicLike) -> Dyadic:
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return Dyadic(self.numerator * other.numerator,
                      self.log2_denominator + other.log2_denominator)

    __rmul__ = __mul__

    def __neg__(self) -> Dyadic:
        return Dyadic(-self.numerator, self.log2_denominator)

    def __pos__(self) -> Dyadic:
        return self

    def __abs__(self) -> Dyadic:
        return Dyadic(abs(self.numerator), self.log2_denominator)

    def halved(self) -> Dyadic:
        return Dyadic(self.numerator, self.log2_denominator + 1)

    def __bool__(self) -> bool:
        return self.numerator != 0

    # comparison -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Dyadic):
            return (self.numerator == other.numerator
                    and self.log2_denominator == other.log2_denominator)
        if isinstance(other, int) and not isinstance(other, bool):
            return self.log2_denominator == 0 and self.numerator == other
        return NotImplemented

    def __lt__(self, other: DyadicLike) -> bool:
        other = _maybe(other)
        if other is NotImplemented:
            return other
        a, b, _ = self._aligned(other)
        return a < b

    def __hash__(self) -> int:
        if self.log2_denominator == 0:
            return hash(self.numerator)
        return hash((self.numerator, self.log2_denominator))

    # conversions ----------------------------------------------------------

    def is_integer(self) -> bool:
        return self.log2_denominator == 0

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.log2_denominator)

    def __float__(self) -> float:
        return float(self.to_fraction())

    def __int__(self) -> int:
        if self.log2_denominator:
            raise ValueError(f"{self} is not an integer")
        return self.numerator

    def __repr__(self) -> str:
        return f"Dyadic({self.numerator}, {self.log2_denominator})"

    def __str__(self) -> str:
        """Render as ``p`` or ``p/2^q``."""
        if self.log2_denominator == 0:
            return str(self.numerator)
        return f"{self.numerator}/2^{self.log2_denominator}"

    def decimal(self) -> str:
        """Exact decimal rendering (``0.5``, ``-1.5``, ``0.125``)."""
        if self.log2_denominator == 0:
            return str(self.numerator)
        q = self.log2_denominator
        digits = abs(self.numerator) * 5 ** q
        s = str(digits).rjust(q + 1, "0")
        sign = "-" if self.numerator < 0 else ""
        return f"{sign}{s[:-q]}.{s[-q:]}"


def _maybe(value):
    if isinstance(value, Dyadic):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Dyadic(value)
    return NotImplemented


_DYADIC_POW = re.compile(r"^\s*([+-]?\d+)\s*/\s*2\^(\d+)\s*$")
_DYADIC_FRAC = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")
_DYADIC_DEC = re.compile(r"^\s*([+-]?)(\d*)(?:\.(\d*))?\s*$")


def parse_dyadic(text: str) -> Dyadic:
    """Parse ``"3"``, ``"-0.5"``, ``"3/4"`` or ``"3/2^2"`` exactly."""
    m = _DYADIC_POW.match(text)
    if m:
        return Dyadic(int(m.group(1)), int(m.group(2)))
    m = _DYADIC_FRAC.match(text)
    if m:
        return Dyadic.coerce(Fraction(int(m.group(1)), int(m.group(2))))
    m = _DYADIC_DEC.match(text)
    if m and (m.group(2) or m.group(3)):
        sign, whole, frac = m.group(1), m.group(2) or "0", m.group(3) or ""
        value = Fraction(int(whole + frac), 10 ** len(frac))
        if sign == "-":
            value = -value
        return Dyadic.coerce(value)
    raise ValueError(f"not a dyadic rational: {text!r}")


ZERO = Dyadic(0)
ONE = Dyadic(1)
HALF = Dyadic(1, 1)


class Quaternion:
    """Quaternion ``re + ci*i + cj*j + ck*k`` with dyadic components.

    Uses the Hamilton convention ``ij = k``, ``jk = i``, ``ki = j``.
    """

    __slots__ = ("re", "ci", "cj", "ck")

    def __init__(self, re: DyadicLike = 0, ci: DyadicLike = 0,
                 cj: DyadicLike = 0, ck: DyadicLike = 0) -> None:
        object.__setattr__(self, "re", Dyadic.coerce(re))
        object.__setattr__(self, "ci", Dyadic.coerce(ci))
        object.__setattr__(self, "cj", Dyadic.coerce(cj))
        object.__setattr__(self, "ck", Dyadic.coerce(ck))

    def __setattr__(self, name, value):
        raise AttributeError("Quaternion is immutable")

    @classmethod
    def from_halves(cls, a: int, b: int, c: int, d: int) -> Quaternion:
        return cls(Dyadic(a, 1), Dyadic(b, 1), Dyadic(c, 1), Dyadic(d, 1))

    @property
    def components(self) -> tuple[Dyadic, Dyadic, Dyadic, Dyadic]:
        return (self.re, self.ci, self.cj, self.ck)

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __lt__(self, other: Quaternion) -> bool:
        return self.components < other.components

    def __add__(self, other: Quaternion) -> Quaternion:
        return Quaternion(self.re + other.re, self.ci + other.ci,
                          self.cj + other.cj, self.ck + other.ck)

    def __sub__(self, other: Quaternion) -> Quaternion:
        return Quaternion(self.re - other.re, self.ci - other.ci,
                          self.cj - other.cj, self.ck - other.ck)

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.re, -self.ci, -self.cj, -self.ck)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return qmul(self, other)
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return self.scale(other)

    def __rmul__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return self.scale(other)

    def scale(self, s: DyadicLike) -> Quaternion:
        s = Dyadic.coerce(s)
        return Quaternion(self.re * s, self.ci * s, self.cj * s, self.ck * s)

    def conj(self) -> Quaternion:
        return qconj(self)

    def norm_sq(self) -> Dyadic:
        return norm_sq(self)

    def is_zero(self) -> bool:
        return not any(self.components)

    def __repr__(self) -> str:
        return f"Quaternion({format_quaternion(self)!r})"

    def __str__(self) -> str:
        return format_quaternion(self)


def qmul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product ``a * b``."""
    a0, a1, a2, a3 = a.re, a.ci, a.cj, a.ck
    b0, b1, b2, b3 = b.re, b.ci, b.cj, b.ck
    return Quaternion(
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def qconj(a: Quaternion) -> Quaternion:
    return Quaternion(a.re, -a.ci, -a.cj, -a.ck)


def norm_sq(a: Quaternion) -> Dyadic:
    return a.re * a.re + a.ci * a.ci + a.cj * a.cj + a.ck * a.ck


Q_ONE = Quaternion(1)
Q_I = Quaternion(0, 1)
Q_J = Quaternion(0, 0, 1)
Q_K = Quaternion(0, 0, 0, 1)


def format_quaternion(q: Quaternion) -> str:
    """Render as ``a+bi+cj+dk`` with components as ``p`` or ``p/2^q``."""
    out = str(q.re)
    for value, unit in zip((q.ci, q.cj, q.ck), "ijk"):
        text = str(value)
        if not text.startswith("-"):
            text = "+" + text
        out += text + unit
    return out


_TERM = re.compile(
    r"([+-]?)\s*((?:\d+\s*/\s*2\^\d+)|(?:\d+\s*/\s*\d+)|(?:\d*\.?\d+))?\s*([ijk]?)")


def parse_quaternion(text: str) -> Quaternion:
    """Parse ``a+bi+cj+dk`` text.

    Accepts the canonical rendering of :func:`format_quaternion` as well as
    the short forms ``1+i-j-k``, ``-i`` or ``(1+i+j+k)/2``.
    """
    s = text.replace(" ", "").replace("−", "-")
    scale = None
    m = re.fullmatch(r"\((.*)\)/(\d+)", s)
    if m:
        s, scale = m.group(1), Dyadic.coerce(Fraction(1, int(m.group(2))))
    if not s:
        raise ValueError("empty quaternion")
    comps = {"": ZERO, "i": ZERO, "j": ZERO, "k": ZERO}
    pos = 0
    seen = set()
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"malformed quaternion: {text!r}")
        if pos > 0 and not m.group(1):
            raise ValueError(f"malformed quaternion: {text!r}")
        sign, num, unit = m.groups()
        if unit in seen:
            raise ValueError(f"repeated component {unit or 'real'!r} in {text!r}")
        seen.add(unit)
        value = parse_dyadic(num) if num else ONE
        comps[unit] = -value if sign == "-" else value
        pos = m.end()
    q = Quaternion(comps[""], comps["i"], comps["j"], comps["k"])
    return q.scale(scale) if scale is not None else q


class OctonionVector:
    """Eight dyadic coordinates over ``{1, e1, ..., e7}``.

    Only the vector-space structure is provided: no octonion product.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[DyadicLike]) -> None:
        coords = tuple(Dyadic.coerce(c) for c in coords)
        if len(coords) != 8:
            raise ValueError("an octonion vector has 8 coordinates")
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("OctonionVector is immutable")

    def __add__(self, other: OctonionVector) -> OctonionVector:
        return OctonionVector(a + b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> OctonionVector:
        return OctonionVector(-a for a in self.coords)

    def halved(self) -> OctonionVector:
        return OctonionVector(a.halved() for a in self.coords)

    def norm_sq(self) -> Dyadic:
        total = ZERO
        for a in self.coords:
            total = total + a * a
        return total

    def norm(self) -> float:
        return float(self.norm_sq()) ** 0.5

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OctonionVector):
            return NotImplemented
        return self.coords == other.coords

    def __lt__(self, other: OctonionVector) -> bool:
        return self.coords < other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return "OctonionVector(({}))".format(", ".join(c.decimal() for c in self.coords))
