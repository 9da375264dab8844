"""Lattice families: Z^n, D_n, glued cosets, HyperDiamond nHD and E8 roots.

Points are stored in half-units (twice the coordinate) so every supported
lattice membership test is integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering
from itertools import product
from typing import Iterable, Sequence

from . import _backend
from .algebra import Dyadic, DyadicLike, OctonionVector, Quaternion


class LatticeError(ValueError):
    """Dimension mismatch or an unsupported lattice request."""


@total_ordering
@dataclass(frozen=True)
class LatticePoint:
    """A point with coordinates in (1/2)Z, held as integer half-units."""

    halves: tuple[int, ...]

    def __post_init__(self):
        if not self.halves:
            raise LatticeError("a lattice point needs at least one coordinate")

    @classmethod
    def of(cls, *coords: DyadicLike | float) -> LatticePoint:
        """Build from coordinate values, e.g. ``LatticePoint.of(0.5, 0.5, 1, 0)``."""
        halves = []
        for c in coords:
            if isinstance(c, float):
                h = c * 2
                if h != int(h):
                    raise LatticeError(f"{c} is not a half-integer")
                halves.append(int(h))
                continue
            d = Dyadic.coerce(c)
            if d.log2_denominator > 1:
                raise LatticeError(f"{d} is not a half-integer")
            halves.append(d.numerator << (1 - d.log2_denominator))
        return cls(tuple(halves))

    @classmethod
    def from_quaternion(cls, q: Quaternion) -> LatticePoint:
        return cls.of(*q.components)

    @property
    def dim(self) -> int:
        return len(self.halves)

    @property
    def coords(self) -> tuple[Dyadic, ...]:
        return tuple(Dyadic(h, 1) for h in self.halves)

    def to_quaternion(self) -> Quaternion:
        if self.dim != 4:
            raise LatticeError("only 4-dimensional points are quaternions")
        return Quaternion(*self.coords)

    def __add__(self, other: LatticePoint) -> LatticePoint:
        _same_dim(self, other)
        return LatticePoint(tuple(a + b for a, b in zip(self.halves, other.halves)))

    def __sub__(self, other: LatticePoint) -> LatticePoint:
        _same_dim(self, other)
        return LatticePoint(tuple(a - b for a, b in zip(self.halves, other.halves)))

    def __neg__(self) -> LatticePoint:
        return LatticePoint(tuple(-a for a in self.halves))

    def scaled(self, k: int) -> LatticePoint:
        return LatticePoint(tuple(k * a for a in self.halves))

    def norm_sq(self) -> Dyadic:
        return Dyadic(sum(a * a for a in self.halves), 2)

    def is_zero(self) -> bool:
        return not any(self.halves)

    def __lt__(self, other: LatticePoint) -> bool:
        return self.halves < other.halves

    def decimals(self) -> list[str]:
        return [c.decimal() for c in self.coords]

    def __str__(self) -> str:
        return "(" + ", ".join(self.decimals()) + ")"


def _same_dim(p: LatticePoint, q: LatticePoint) -> None:
    if p.dim != q.dim:
        raise LatticeError(f"dimension mismatch: {p.dim} vs {q.dim}")


@dataclass(frozen=True)
class LatticeSpec:
    """A lattice family.

    ``kind`` is one of ``"hypercubic"`` (Z^n), ``"checkerboard"`` (D_n),
    ``"hyperdiamond"`` (nHD = D_n u ([1] + D_n)) or ``"glued"``
    (``base u (glue + base)``).
    """

    kind: str
    dim: int
    base: LatticeSpec | None = None
    glue: LatticePoint | None = field(default=None)

    def __post_init__(self):
        if self.kind not in ("hypercubic", "checkerboard", "hyperdiamond", "glued"):
            raise LatticeError(f"unknown lattice kind {self.kind!r}")
        if self.dim < 1:
            raise LatticeError("dimension must be positive")
        if self.kind == "glued":
            if self.base is None or self.glue is None:
                raise LatticeError("a glued coset needs a base lattice and a glue vector")
            if self.base.dim != self.dim or self.glue.dim != self.dim:
                raise LatticeError("glue, base and spec dimensions must agree")

    @property
    def name(self) -> str:
        if self.kind == "hypercubic":
            return f"Z{self.dim}"
        if self.kind == "checkerboard":
            return f"D{self.dim}"
        if self.kind == "hyperdiamond":
            return f"{self.dim}HD"
        return f"{self.base.name}u([{','.join(self.glue.decimals())}]+{self.base.name})"


def hypercubic(n: int) -> LatticeSpec:
    return LatticeSpec("hypercubic", n)


def checkerboard(n: int) -> LatticeSpec:
    return LatticeSpec("checkerboard", n)


def hyperdiamond(n: int) -> LatticeSpec:
    return LatticeSpec("hyperdiamond", n)


def glued(base: LatticeSpec, glue: LatticePoint) -> LatticeSpec:
    return LatticeSpec("glued", base.dim, base=base, glue=glue)


def glue_vector(n: int) -> LatticePoint:
    """The all-halves glue vector ``[1] = (0.5, ..., 0.5)``."""
    return LatticePoint((1,) * n)


def parse_lattice(text: str) -> LatticeSpec:
    """Parse names like ``4hd``, ``d4``, ``z4`` (case-insensitive)."""
    t = text.strip().lower()
    try:
        if t.endswith("hd"):
            return hyperdiamond(int(t[:-2]))
        if t.startswith("d"):
            return checkerboard(int(t[1:]))
        if t.startswith("z"):
            return hypercubic(int(t[1:]))
    except ValueError:
        pass
    raise LatticeError(f"unknown lattice name {text!r}")


def _in_hypercubic(h: Sequence[int]) -> bool:
    return all(x % 2 == 0 for x in h)


def _in_dn(h: Sequence[int]) -> bool:
    return _in_hypercubic(h) and sum(h) % 4 == 0


def _member(spec: LatticeSpec, h: Sequence[int]) -> bool:
    if spec.kind == "hypercubic":
        return _in_hypercubic(h)
    if spec.kind == "checkerboard":
        return _in_dn(h)
    if spec.kind == "hyperdiamond":
        return _in_dn(h) or _in_dn([x - 1 for x in h])
    g = spec.glue.halves
    return _member(spec.base, h) or _member(spec.base, [x - y for x, y in zip(h, g)])


def contains(spec: LatticeSpec, p: LatticePoint) -> bool:
    """Membership of ``p`` in the lattice (or packing) ``spec``."""
    if p.dim != spec.dim:
        raise LatticeError(f"point has dimension {p.dim}, lattice {spec.name} has {spec.dim}")
    return _member(spec, p.halves)


def _coset_shifts(spec: LatticeSpec) -> list[tuple[int, ...]]:
    # half-unit offsets of the integer cosets making up the structure
    if spec.kind in ("hypercubic", "checkerboard"):
        return [(0,) * spec.dim]
    if spec.kind == "hyperdiamond":
        return [(0,) * spec.dim, (1,) * spec.dim]
    shifts = []
    for s in _coset_shifts(spec.base):
        shifts.append(s)
        shifts.append(tuple(a + b for a, b in zip(s, spec.glue.halves)))
    return shifts


def _box_candidates(spec: LatticeSpec, radius_halves: int) -> set[tuple[int, ...]]:
    """Half-integer points within the box that lie in some integer coset of spec."""
    out = set()
    for shift in _coset_shifts(spec):
        axes = []
        for s in shift:
            axes.append([v for v in range(-radius_halves, radius_halves + 1) if (v - s) % 2 == 0])
        out.update(product(*axes))
    return out


NEIGHBOR_BOX_HALVES = 3  # radius 1.5


def nearest_neighbors(spec: LatticeSpec) -> list[LatticePoint]:
    """Minimal-norm nonzero members, sorted lexicographically."""
    if spec.dim > 8:
        raise LatticeError("nearest-neighbor enumeration supports dim <= 8")
    best = None
    found: list[tuple[int, ...]] = []
    for h in _box_candidates(spec, NEIGHBOR_BOX_HALVES):
        if not any(h) or not _member(spec, h):
            continue
        n = sum(x * x for x in h)
        if best is None or n < best:
            best, found = n, [h]
        elif n == best:
            found.append(h)
    return [LatticePoint(h) for h in sorted(found)]


def next_nearest_4hd() -> list[LatticePoint]:
    """Endpoints of two-link paths from the origin of 4HD, excluding the
    backtrack ``u + (-u)`` and the straight continuation ``u + u``."""
    links = nearest_neighbors(hyperdiamond(4))
    out = {u + v for u in links for v in links if u != v and not (u + v).is_zero()}
    return sorted(out)


def is_extension_closed(spec: LatticeSpec) -> bool:
    """True when every nearest-neighbor link ``u`` can be continued: ``2u`` is
    again a member. Holds exactly for even-dimensional HyperDiamonds."""
    if spec.kind != "hyperdiamond":
        raise LatticeError("extension closure is defined for HyperDiamond structures")
    if spec.dim > 8:
        raise LatticeError("extension closure supports dim <= 8")
    return all(contains(spec, u) and contains(spec, u.scaled(2))
               for u in nearest_neighbors(spec))


def minkowski_norm(p: LatticePoint, c_sq: DyadicLike) -> Dyadic:
    """``c_sq * t**2 - sum(x**2)`` with the first coordinate as time."""
    if p.dim not in (2, 4):
        raise LatticeError("Minkowski norm is defined for 2 and 4 dimensions")
    t, *space = p.coords
    total = Dyadic.coerce(c_sq) * t * t
    for x in space:
        total = total - x * x
    return total


# E8 roots in octonion coordinates ------------------------------------------

_E8_HALF_QUADS_96 = [
    (0, 1, 2, 3), (0, 2, 5, 7), (0, 2, 4, 6),
    (4, 5, 6, 7), (1, 3, 4, 6), (1, 3, 5, 7),
]
_E8_HALF_QUADS_128 = [
    (0, 3, 4, 7), (0, 1, 5, 6), (0, 3, 6, 7), (0, 1, 4, 7),
    (1, 2, 6, 7), (2, 3, 4, 7), (1, 2, 4, 5), (2, 3, 5, 6),
]


@dataclass(frozen=True)
class RootList:
    dim: int
    points: tuple
    strata: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.points)


def _half_sign_vectors(quads: Iterable[tuple[int, ...]]) -> list[OctonionVector]:
    out = []
    for quad in quads:
        for signs in product((1, -1), repeat=4):
            coords = [Dyadic(0)] * 8
            for axis, s in zip(quad, signs):
                coords[axis] = Dyadic(s, 1)
            out.append(OctonionVector(coords))
    return out


def e8_roots() -> RootList:
    """The 240 E8 roots in the octonion basis ``{1, e1, ..., e7}``.

    Strata: the 16 signed basis units, then 96 and 128 half-vectors
    ``(+-a +-b +-c +-d)/2`` over two fixed families of coordinate quadruples.
    """
    units = []
    for axis in range(8):
        for s in (1, -1):
            coords = [Dyadic(0)] * 8
            coords[axis] = Dyadic(s)
            units.append(OctonionVector(coords))
    strata = [units, _half_sign_vectors(_E8_HALF_QUADS_96),
              _half_sign_vectors(_E8_HALF_QUADS_128)]
    points = [p for stratum in strata for p in stratum]
    if len(set(points)) != len(points):
        raise AssertionError("duplicate E8 roots")
    return RootList(8, tuple(sorted(points)), tuple(len(s) for s in strata))


# 8 -> 4 decomposition harness ----------------------------------------------

@dataclass
class IdentityCheck:
    """Disagreements between a left and a right point set within the box."""

    name: str
    left: str
    right: str
    left_count: int
    right_count: int
    left_only: list[LatticePoint]
    right_only: list[LatticePoint]

    @property
    def holds(self) -> bool:
        return not self.left_only and not self.right_only


@dataclass
class DecompositionReport:
    box_radius: Dyadic
    candidates: int
    d8_split: IdentityCheck
    e8_split: IdentityCheck
    backend: str

    @property
    def as_expected(self) -> bool:
        """The direct-sum split of D8 holds; the 4HD + 4HD split of E8 fails
        in both directions."""
        return (self.d8_split.holds and bool(self.e8_split.left_only)
                and bool(self.e8_split.right_only))


def _norm_then_lex(h):
    return (sum(x * x for x in h), h)


def decomposition_harness(box_radius: DyadicLike = 2, backend: str | None = None
                          ) -> DecompositionReport:
    """Compare the D8 and E8 = 8HD point sets against their 4+4 splittings on
    every half-integer point with all ``|x_i| <= box_radius``.

    Checked identities:

    * ``D8 = (D4 (+) D4) u ((1,0,0,0,1,0,0,0) + D4 (+) D4)``
    * ``8HD = 4HD (+) 4HD``

    Witness lists are ordered by norm, then lexicographically.
    """
    r = Dyadic.coerce(box_radius)
    if r.log2_denominator > 1 or r < 0:
        raise LatticeError("box radius must be a non-negative half-integer")
    if r > 2:
        raise LatticeError("box radius is limited to 2")
    halves = r.numerator << (1 - r.log2_denominator)
    counts, d8_only, rhs_only, e8_only, hd_only = _backend.decomposition_scan(halves, backend)

    def pts(hs):
        return [LatticePoint(tuple(h)) for h in sorted(hs, key=_norm_then_lex)]

    d8 = IdentityCheck("d8_split", "D8", "D4+D4 u (diag + D4+D4)",
                       counts["d8"], counts["rhs20"], pts(d8_only), pts(rhs_only))
    e8 = IdentityCheck("e8_split", "E8", "4HD+4HD",
                       counts["e8"], counts["hd_sum"], pts(e8_only), pts(hd_only))
    return DecompositionReport(r, counts["candidates"], d8, e8,
                               _backend.get_kernels(backend).NAME)
