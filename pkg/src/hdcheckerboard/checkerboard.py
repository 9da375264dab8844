"""Checkerboard path sums in 2 and 4 dimensions.

A path of ``T`` link steps starts with an incoming direction; each step
whose link differs from the previous one is a corner and multiplies the
running weight, on the right, by a unit quaternion. The amplitude for an
endpoint is kept symbolic in the per-corner magnitude ``mu``::

    A(mu) = sum_C Q_C * mu**C

``propagate`` computes the ``Q_C`` by a transfer-matrix sweep (compiled
kernel when available), ``brute_force`` by enumerating every direction
sequence with exact quaternion products.
"""
from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple

from . import _backend
from .algebra import Dyadic, Quaternion, Q_I, Q_J, Q_K, Q_ONE, qconj, qmul
from .lattice import LatticeError, LatticePoint

CONVENTIONS = ("signed", "axis")
DEFAULT_BUDGET = 10 ** 7


class BudgetExceeded(RuntimeError):
    """Brute-force enumeration would visit more sequences than allowed."""


class UndefinedPhaseError(ValueError):
    """Phase requested for a zero amplitude."""


@dataclass(frozen=True)
class Direction:
    dim: int
    link: Quaternion
    name: str

    @property
    def point(self) -> LatticePoint:
        q = self.link
        comps = q.components if self.dim == 4 else (q.re, q.ci)
        return LatticePoint.of(*comps)

    def __str__(self) -> str:
        return self.name


_LINKS_4D = [
    ("F1", Quaternion.from_halves(1, 1, 1, 1)),
    ("F2", Quaternion.from_halves(1, 1, -1, -1)),
    ("F3", Quaternion.from_halves(1, -1, 1, -1)),
    ("F4", Quaternion.from_halves(1, -1, -1, 1)),
]
# 2-D links are left unnormalised (1 +- i) so everything stays dyadic
_LINKS_2D = [("R", Quaternion(1, 1)), ("L", Quaternion(1, -1))]


def future_links(dim: int) -> list[Direction]:
    """The future lightcone links in canonical order (F1..F4, or R, L)."""
    if dim == 4:
        return [Direction(4, q, n) for n, q in _LINKS_4D]
    if dim == 2:
        return [Direction(2, q, n) for n, q in _LINKS_2D]
    raise LatticeError(f"checkerboard dimension must be 2 or 4, got {dim}")


def direction(dim: int, name: str) -> Direction:
    for d in future_links(dim):
        if d.name.lower() == name.strip().lower():
            return d
    raise LatticeError(f"no future link named {name!r} in dimension {dim}")


def lightcone_links() -> list[Quaternion]:
    """All 8 lightcone links of 4HD: the 4 future links, then the 4 past ones
    ``(-1-i+j+k)/2, (-1+i-j+k)/2, (-1+i+j-k)/2, (-1-i-j-k)/2``."""
    future = [q for _, q in _LINKS_4D]
    return future + [-future[1], -future[2], -future[3], -future[0]]


# The quaternion group {+-1, +-i, +-j, +-k}; index 0 is the identity.
QUATERNION_GROUP: tuple[Quaternion, ...] = (
    Q_ONE, -Q_ONE, Q_I, -Q_I, Q_J, -Q_J, Q_K, -Q_K,
)
_GROUP_INDEX = {q: n for n, q in enumerate(QUATERNION_GROUP)}


def group_index(q: Quaternion) -> int:
    try:
        return _GROUP_INDEX[q]
    except KeyError:
        raise ValueError(f"{q} is not in the quaternion group") from None


@lru_cache(maxsize=None)
def group_table() -> tuple[tuple[int, ...], ...]:
    """Multiplication table of the quaternion group by index."""
    return tuple(tuple(group_index(qmul(a, b)) for b in QUATERNION_GROUP)
                 for a in QUATERNION_GROUP)


def turn_factor(prev: Direction, nxt: Direction) -> Quaternion:
    """The ``q`` in ``{1, +-i, +-j, +-k}`` with ``nxt.link == q * prev.link``."""
    if prev.dim != nxt.dim:
        raise LatticeError("turn between links of different dimension")
    q = qmul(nxt.link, qconj(prev.link))
    n = prev.link.norm_sq()
    if n != 1:
        q = q.scale(Dyadic(1, n.numerator.bit_length() - 1))  # unnormalised 2-D links: |l|^2 = 2
    if q not in _GROUP_INDEX or q == -Q_ONE:
        raise ValueError(f"no unit turn factor from {prev} to {nxt}")
    return q


def corner_weight(prev: Direction, nxt: Direction, convention: str = "signed") -> Quaternion:
    """Unit quaternion multiplied in at a corner from ``prev`` to ``nxt``.

    In two dimensions every corner carries ``-i``. In four dimensions the
    signed convention uses ``-e`` with ``e`` the turn factor itself; the
    axis convention uses minus the positive unit of its axis.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    if prev == nxt:
        return Q_ONE
    q = turn_factor(prev, nxt)
    if prev.dim == 2:
        return -Q_I
    if convention == "signed":
        return -q
    return -Quaternion(*(abs(c) for c in q.components))


@dataclass(frozen=True)
class AmplitudePoly:
    """Exact amplitude ``sum_C coeffs[C] * mu**C``; zero coefficients are dropped."""

    coeffs: Mapping[int, Quaternion] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(c): q for c, q in sorted(self.coeffs.items()) if not q.is_zero()}
        object.__setattr__(self, "coeffs", clean)

    def __eq__(self, other):
        if not isinstance(other, AmplitudePoly):
            return NotImplemented
        return dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def __getitem__(self, corners: int) -> Quaternion:
        return self.coeffs.get(corners, Quaternion())

    def to_json(self) -> list[dict]:
        out = []
        for c, q in self.coeffs.items():
            coeff = {name: str(v) for name, v in zip(("re", "i", "j", "k"), q.components) if v}
            out.append({"C": c, "coeff": coeff})
        return out

    @classmethod
    def from_json(cls, items: Iterable[Mapping]) -> AmplitudePoly:
        coeffs = {}
        for item in items:
            c = item["coeff"]
            coeffs[int(item["C"])] = Quaternion(*(Dyadic.coerce(c.get(k, "0"))
                                                  for k in ("re", "i", "j", "k")))
        return cls(coeffs)

    def __repr__(self) -> str:
        body = ", ".join(f"{c}: {q}" for c, q in self.coeffs.items())
        return f"AmplitudePoly({{{body}}})"


@dataclass(frozen=True)
class PathQuery:
    dim: int
    initial_direction: Direction
    steps: int
    endpoint: LatticePoint

    def __post_init__(self):
        if self.dim not in (2, 4):
            raise LatticeError("dimension must be 2 or 4")
        if self.initial_direction.dim != self.dim:
            raise LatticeError("initial direction has the wrong dimension")
        if self.endpoint.dim != self.dim:
            raise LatticeError("endpoint has the wrong dimension")
        if self.steps < 1:
            raise ValueError("steps must be positive")


def _link_counts(dim: int, steps: int, endpoint: LatticePoint) -> tuple[int, ...] | None:
    """Number of uses of each future link for a T-step path to endpoint
    (the links are orthogonal), or None if unreachable."""
    links = [d.point.halves for d in future_links(dim)]
    counts = []
    for lk in links:
        dot = sum(a * b for a, b in zip(endpoint.halves, lk))
        nn = sum(a * a for a in lk)
        if dot % nn or dot < 0:
            return None
        counts.append(dot // nn)
    if sum(counts) != steps:
        return None
    rebuilt = [sum(n * lk[ax] for n, lk in zip(counts, links)) for ax in range(dim)]
    if tuple(rebuilt) != endpoint.halves:
        return None
    return tuple(counts)


def _endpoint_of(dim: int, counts: tuple[int, ...]) -> LatticePoint:
    links = [d.point.halves for d in future_links(dim)]
    return LatticePoint(tuple(sum(n * lk[ax] for n, lk in zip(counts, links))
                              for ax in range(dim)))


def _factor_table(dim: int, convention: str) -> list[list[int]]:
    links = future_links(dim)
    return [[group_index(corner_weight(p, n, convention)) for n in links] for p in links]


@lru_cache(maxsize=32)
def _sweep(dim: int, start: int, steps: int, convention: str, backend: str | None):
    table = _factor_table(dim, convention)
    return _backend.dp_counts(len(table), steps, start, table, group_table(), backend)


def _poly_from_cells(cells: Mapping[tuple[int, int], int]) -> AmplitudePoly:
    acc: dict[int, list[int]] = {}
    for (c, g), n in cells.items():
        q = QUATERNION_GROUP[g]
        row = acc.setdefault(c, [0, 0, 0, 0])
        for k, v in enumerate(q.components):
            row[k] += n * v.numerator
    return AmplitudePoly({c: Quaternion(*row) for c, row in acc.items()})


def _counts_from_cells(cells: Mapping[tuple[int, int], int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for (c, _), n in cells.items():
        out[c] = out.get(c, 0) + n
    return dict(sorted(out.items()))


def _start_index(query_dim: int, d: Direction) -> int:
    return [x.name for x in future_links(query_dim)].index(d.name)


def propagate(query: PathQuery, convention: str = "signed",
              backend: str | None = None) -> AmplitudePoly:
    """Exact amplitude polynomial for one endpoint (zero if unreachable)."""
    counts = _link_counts(query.dim, query.steps, query.endpoint)
    if counts is None:
        return AmplitudePoly()
    cells = _sweep(query.dim, _start_index(query.dim, query.initial_direction),
                   query.steps, convention, backend).get(counts, {})
    return _poly_from_cells(cells)


def propagate_all(dim: int, start: Direction, steps: int, convention: str = "signed",
                  backend: str | None = None) -> dict[LatticePoint, AmplitudePoly]:
    """Amplitude polynomials for every reachable endpoint, sorted by endpoint."""
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    sweep = _sweep(dim, _start_index(dim, start), steps, convention, backend)
    return {_endpoint_of(dim, vec): _poly_from_cells(cells)
            for vec, cells in sorted(sweep.items(), key=lambda kv: _endpoint_of(dim, kv[0]))}


def count_paths(query: PathQuery, backend: str | None = None) -> dict[int, int]:
    """``N(C)``: number of paths to the endpoint with ``C`` corners."""
    counts = _link_counts(query.dim, query.steps, query.endpoint)
    if counts is None:
        return {}
    cells = _sweep(query.dim, _start_index(query.dim, query.initial_direction),
                   query.steps, "signed", backend).get(counts, {})
    return _counts_from_cells(cells)


def count_paths_all(dim: int, start: Direction, steps: int,
                    backend: str | None = None) -> dict[LatticePoint, dict[int, int]]:
    sweep = _sweep(dim, _start_index(dim, start), steps, "signed", backend)
    return {_endpoint_of(dim, vec): _counts_from_cells(cells) for vec, cells in sweep.items()}


# brute-force oracle --------------------------------------------------------

def enumeration_budget() -> int:
    raw = os.environ.get("CHECKERBOARD_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def brute_force_all(dim: int, start: Direction, steps: int, convention: str = "signed"
                    ) -> tuple[dict[LatticePoint, AmplitudePoly], dict[LatticePoint, dict[int, int]]]:
    """Enumerate every direction sequence; return amplitudes and path counts
    for all endpoints."""
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    links = future_links(dim)
    if len(links) ** steps > enumeration_budget():
        raise BudgetExceeded(
            f"{len(links)}^{steps} sequences exceed the enumeration budget {enumeration_budget()}")
    weights = {(p.name, n.name): corner_weight(p, n, convention) for p in links for n in links}
    amps: dict[tuple[int, ...], dict[int, Quaternion]] = {}
    counts: dict[tuple[int, ...], dict[int, int]] = {}
    zero_pos = (0,) * dim
    steps_of = {d.name: d.point.halves for d in links}

    # depth-first over sequences; prefixes share their partial products
    stack = [(0, start, zero_pos, 0, Q_ONE)]
    while stack:
        depth, prev, pos, corners, weight = stack.pop()
        if depth == steps:
            a = amps.setdefault(pos, {})
            a[corners] = a.get(corners, Quaternion()) + weight
            n = counts.setdefault(pos, {})
            n[corners] = n.get(corners, 0) + 1
            continue
        for d in links:
            step = steps_of[d.name]
            new_pos = tuple(x + y for x, y in zip(pos, step))
            if d == prev:
                stack.append((depth + 1, d, new_pos, corners, weight))
            else:
                w = qmul(weight, weights[(prev.name, d.name)])
                stack.append((depth + 1, d, new_pos, corners + 1, w))
    polys = {LatticePoint(p): AmplitudePoly(a) for p, a in sorted(amps.items())}
    ncs = {LatticePoint(p): dict(sorted(n.items())) for p, n in sorted(counts.items())}
    return polys, ncs


def brute_force(query: PathQuery, convention: str = "signed") -> AmplitudePoly:
    polys, _ = brute_force_all(query.dim, query.initial_direction, query.steps, convention)
    return polys.get(query.endpoint, AmplitudePoly())


# numeric layer -------------------------------------------------------------

class NumericQuaternion(NamedTuple):
    re: float
    i: float
    j: float
    k: float

    def __abs__(self) -> float:
        return math.sqrt(self.re ** 2 + self.i ** 2 + self.j ** 2 + self.k ** 2)

    def to_json(self) -> dict[str, str]:
        return {name: repr(float(v)) for name, v in zip(("re", "i", "j", "k"), self)}


@dataclass(frozen=True)
class EvaluationParams:
    mass: float
    epsilon: float
    dim: int = 4
    convention: str = "signed"

    def __post_init__(self):
        if self.mass <= 0 or self.epsilon <= 0:
            raise ValueError("mass and epsilon must be positive")
        if self.dim not in (2, 4):
            raise ValueError("dimension must be 2 or 4")
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}")

    @property
    def mu(self) -> float:
        """Per-corner magnitude: ``m*eps`` in 2-D, ``m*sqrt(3)*eps`` in 4-D."""
        if self.dim == 2:
            return self.mass * self.epsilon
        return self.mass * math.sqrt(3) * self.epsilon


def evaluate(poly: AmplitudePoly, params: EvaluationParams | float) -> NumericQuaternion:
    mu = params.mu if isinstance(params, EvaluationParams) else float(params)
    acc = [0.0, 0.0, 0.0, 0.0]
    for c, q in poly.coeffs.items():
        scale = mu ** c
        for n, v in enumerate(q.components):
            acc[n] += float(v) * scale
    return NumericQuaternion(*acc)


def phase(amp: NumericQuaternion | Iterable[float]) -> float:
    """Angle between the amplitude and the real axis, in ``[0, pi]``."""
    amp = NumericQuaternion(*amp)
    size = abs(amp)
    if size == 0.0:
        raise UndefinedPhaseError("phase of a zero amplitude is undefined")
    return math.acos(max(-1.0, min(1.0, amp.re / size)))


def effective_step_length(mass: float, h: float = 1.0, c: float = 1.0) -> float:
    """Compton wavelength ``h / (m c)``."""
    if mass <= 0 or h <= 0 or c <= 0:
        raise ValueError("mass, h and c must be positive")
    return h / (mass * c)


# group structure of the lightcone links ------------------------------------

def left_transition_factors() -> dict[tuple[int, int], list[Quaternion]]:
    """For each ordered pair of the 8 links, every ``q`` in the quaternion
    group with ``links[b] == q * links[a]``."""
    links = lightcone_links()
    return {(a, b): [q for q in QUATERNION_GROUP if qmul(q, la) == lb]
            for a, la in enumerate(links) for b, lb in enumerate(links)}


def two_link_products() -> set[Quaternion]:
    """``{u * v}`` over ordered pairs of links. The links form one coset of
    the quaternion group, so this is a single coset too (8 elements)."""
    links = lightcone_links()
    return {qmul(u, v) for u in links for v in links}


def link_closure() -> set[Quaternion]:
    """Closure of the 8 links under multiplication: the 24 Hurwitz units
    ``{+-1, +-i, +-j, +-k, (+-1+-i+-j+-k)/2}``."""
    elements = set(lightcone_links())
    while True:
        grown = elements | {qmul(a, b) for a in elements for b in elements}
        if grown == elements:
            return elements
        elements = grown


def is_group(elements: set[Quaternion]) -> bool:
    """Closure under product and inverse (inverse of a unit is its conjugate)."""
    return (all(qmul(a, b) in elements for a in elements for b in elements)
            and all(qconj(a) in elements and a.norm_sq() == 1 for a in elements))


# endpoint expressions ------------------------------------------------------

_SUM_TERM = re.compile(r"([+-]?)(\d*)\*?([A-Za-z]\w*)")


def parse_endpoint(dim: int, text: str) -> LatticePoint:
    """Parse a link sum like ``F1+F2``, ``2R+L``, ``5*F1`` or explicit
    comma-separated coordinates in half-units (``1,1,1,1`` is F1)."""
    s = text.replace(" ", "")
    if "," in s or re.fullmatch(r"[+-]?\d+", s):
        try:
            halves = tuple(int(x) for x in s.split(","))
        except ValueError:
            raise LatticeError(f"malformed coordinates {text!r}") from None
        if len(halves) != dim:
            raise LatticeError(f"expected {dim} coordinates, got {len(halves)}")
        return LatticePoint(halves)
    total = LatticePoint((0,) * dim)
    pos = 0
    while pos < len(s):
        m = _SUM_TERM.match(s, pos)
        if not m or (pos and not m.group(1)):
            raise LatticeError(f"malformed link sum {text!r}")
        k = int(m.group(2) or 1)
        if m.group(1) == "-":
            k = -k
        total = total + direction(dim, m.group(3)).point.scaled(k)
        pos = m.end()
    return total
