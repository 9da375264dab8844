"""Link labels and the proton / pion / graviton signature schedules.

A schedule lists, per constituent, rows of ``(tick, signature)`` where the
signature is the spatial sign pattern of a future link (``"+i-j-k"``) or
``"rest"``. Validators check the periodic patterns each particle is built
from; they do not check lattice adjacency.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Quaternion, parse_quaternion

INTERNAL_NAMES = ("E", "R", "G", "B")
SPACETIME_NAMES = ("T", "X", "Y", "Z")
REST = "rest"

# spatial signs (i, j, k) of the four future links, in label order
_LABEL_SIGNS = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))


@dataclass(frozen=True)
class SignatureLabel:
    """Label of one of the 16 patterns ``+-1+-i+-j+-k``.

    ``index`` picks E/T, R/X, G/Y or B/Z; ``sign`` is -1 for the past link.
    ``index is None`` marks a pattern outside the 8 labeled links.
    """

    index: int | None
    sign: int = 1

    @property
    def labeled(self) -> bool:
        return self.index is not None

    def _name(self, names: Sequence[str]) -> str:
        if self.index is None:
            return "unlabeled"
        return ("-" if self.sign < 0 else "") + names[self.index]

    @property
    def internal(self) -> str:
        return self._name(INTERNAL_NAMES)

    @property
    def spacetime(self) -> str:
        return self._name(SPACETIME_NAMES)

    def __str__(self) -> str:
        if self.index is None:
            return "unlabeled"
        return f"{self.internal}/{self.spacetime}"


UNLABELED = SignatureLabel(None, 0)


def _sign_pattern(pattern: Quaternion | str) -> tuple[int, int, int, int]:
    q = parse_quaternion(pattern) if isinstance(pattern, str) else pattern
    comps = q.components
    mag = abs(comps[0])
    if not mag or any(abs(c) != mag for c in comps):
        raise ValueError(f"{pattern!s} is not a +-1+-i+-j+-k pattern")
    return tuple(1 if c > 0 else -1 for c in comps)


def signature_label(pattern: Quaternion | str) -> SignatureLabel:
    """Label ``pattern`` (``1+i-j-k``, or the same scaled by 1/2) as a
    future or past link, or return :data:`UNLABELED`."""
    t, *space = _sign_pattern(pattern)
    spatial = tuple(s * t for s in space)
    if spatial in _LABEL_SIGNS:
        return SignatureLabel(_LABEL_SIGNS.index(spatial), t)
    return UNLABELED


def label_link(index: int, sign: int = 1) -> Quaternion:
    """The unscaled link pattern carrying a label (``label_link(1) == 1+i-j-k``)."""
    si, sj, sk = _LABEL_SIGNS[index]
    return Quaternion(sign, sign * si, sign * sj, sign * sk)


def label_from_name(name: str) -> SignatureLabel:
    sign = -1 if name.startswith("-") else 1
    bare = name.lstrip("+-")
    for names in (INTERNAL_NAMES, SPACETIME_NAMES):
        if bare in names:
            return SignatureLabel(names.index(bare), sign)
    raise ValueError(f"unknown link label {name!r}")


def _signature_of(spatial: str) -> SignatureLabel:
    return signature_label("1" + spatial)


# schedules -----------------------------------------------------------------

KINDS = ("proton", "pion", "graviton")
_SIG = re.compile(r"^([+-]i)([+-]j)([+-]k)$")


@dataclass(frozen=True)
class Entry:
    tick: int
    signature: str

    def __post_init__(self):
        if self.signature != REST and not _SIG.match(self.signature):
            raise ValueError(f"malformed signature {self.signature!r}")

    @property
    def is_rest(self) -> bool:
        return self.signature == REST

    def cell(self) -> str:
        return str(self.tick) if self.is_rest else f"{self.tick}{self.signature}"


@dataclass(frozen=True)
class ParticlePath:
    kind: str
    constituents: dict[str, tuple[Entry, ...]]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown particle kind {self.kind!r}")
        object.__setattr__(self, "constituents",
                           {name: tuple(rows) for name, rows in self.constituents.items()})

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "constituents": {
                name: [{"tick": e.tick, "signature": e.signature} for e in rows]
                for name, rows in self.constituents.items()
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> ParticlePath:
        try:
            rows = {name: tuple(Entry(int(e["tick"]), str(e["signature"])) for e in entries)
                    for name, entries in data["constituents"].items()}
            return cls(data["kind"], rows)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed particle table: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> ParticlePath:
        return cls.from_dict(json.loads(text))

    def render(self) -> str:
        """Table rendering: a header of constituent names, then one line per
        row with cells such as ``3+i-j-k`` (or ``4`` for a rest entry)."""
        names = list(self.constituents)
        lines = [" & ".join(names)]
        for row in zip(*(self.constituents[n] for n in names)):
            lines.append(" & ".join(e.cell() for e in row))
        return "\n".join(lines) + "\n"


def _schedule(kind: str, columns: dict[str, list[str]]) -> ParticlePath:
    rows = {}
    for name, cells in columns.items():
        entries = []
        for cell in cells:
            m = re.fullmatch(r"(\d+)(.*)", cell)
            entries.append(Entry(int(m.group(1)), m.group(2) or REST))
        rows[name] = entries
    return ParticlePath(kind, rows)


def _cells(spec: str) -> list[list[str]]:
    return [line.split() for line in spec.strip().splitlines()]


_PROTON = _cells("""
1+i-j-k 1-i+j-k 1-i-j+k
2-i+j-k 2-i-j+k 2+i-j-k
3-i-j+k 3+i-j-k 2-i+j-k
4+i-j-k 4-i+j-k 4-i-j+k
5-i+j-k 5-i-j+k 5+i-j-k
6-i-j+k 6+i-j-k 6-i+j-k
7+i-j-k 7-i+j-k 7-i-j+k
""")

_PION = _cells("""
0 0
1+i+j+k 1-i+j-k
2 2
3+i-j-k 3-i-j+k
4 4
5-i+j-k 5+i+j+k
6 6
7-i-j+k 7+i-j-k
8 8
9+i+j+k 9-i+j-k
10 10
11+i-j-k 11-i-j+k
12 12
13-i+j-k 13+i+j+k
14 14
15-i-j+k 15+i-j-k
16 16
""")

_GRAVITON = _cells("""
0 0 0 0
1+i+j+k 1+i-j-k 1-i+j-k 1-i-j+k
2 2 2 2
3+i+j+k 3+i-j-k 3-i+j-k 3-i-j+k
4 4 4 4
5+i+j+k 5+i-j-k 5-i+j-k 5-i-j+k
6 6 6 6
7+i+j+k 7+i-j-k 7-i+j-k 7-i-j+k
8 8 8 8
""")

_TABLES = {
    "proton": (("R-Quark", "G-Quark", "B-Quark"), _PROTON),
    "pion": (("Quark", "AntiQuark"), _PION),
    "graviton": (("T", "X", "Y", "Z"), _GRAVITON),
}


def builtin_table(kind: str) -> ParticlePath:
    """The tabulated schedule for ``kind``, transcribed as printed (the
    proton's B-Quark third row keeps its time coordinate 2)."""
    if kind not in _TABLES:
        raise ValueError(f"unknown particle kind {kind!r}")
    names, rows = _TABLES[kind]
    columns = {n: [row[c] for row in rows] for c, n in enumerate(names)}
    return _schedule(kind, columns)


# validation ----------------------------------------------------------------

@dataclass
class Anomaly:
    constituent: str
    tick: int
    description: str

    def to_dict(self) -> dict:
        return {"constituent": self.constituent, "tick": self.tick,
                "description": self.description}


@dataclass
class ValidationReport:
    kind: str
    anomalies: list[Anomaly] = field(default_factory=list)
    pattern_ok: bool = True
    pattern_summary: str = ""

    @property
    def ok(self) -> bool:
        return not self.anomalies

    def to_dict(self) -> dict:
        return {"kind": self.kind, "ok": self.ok, "pattern_ok": self.pattern_ok,
                "pattern_summary": self.pattern_summary,
                "anomalies": [a.to_dict() for a in self.anomalies]}


def _check_ticks(path: ParticlePath, report: ValidationReport) -> None:
    for name, rows in path.constituents.items():
        if not rows:
            continue
        first = rows[0].tick
        for n, entry in enumerate(rows):
            expected = first + n
            if entry.tick != expected:
                report.anomalies.append(Anomaly(
                    name, expected,
                    f"time coordinate {entry.tick} where {expected} expected"))


def _labels(path: ParticlePath, report: ValidationReport) -> dict[str, list[SignatureLabel | None]]:
    out = {}
    for name, rows in path.constituents.items():
        labels = []
        for n, entry in enumerate(rows):
            if entry.is_rest:
                labels.append(None)
                continue
            lab = _signature_of(entry.signature)
            if not lab.labeled:
                report.anomalies.append(Anomaly(
                    name, rows[0].tick + n, f"signature {entry.signature} is not a link label"))
            labels.append(lab)
        out[name] = labels
    return out


def _pattern_fail(report: ValidationReport, name: str, tick: int, text: str) -> None:
    report.pattern_ok = False
    report.anomalies.append(Anomaly(name, tick, text))


def _validate_proton(path, report, labels):
    colors = {1, 2, 3}  # R, G, B
    names = list(path.constituents)
    n_rows = min(len(v) for v in labels.values())
    for r in range(n_rows):
        row = [labels[n][r] for n in names]
        tick = path.constituents[names[0]][0].tick + r
        if any(lab is None or lab.sign < 0 for lab in row) or {lab.index for lab in row} != colors:
            _pattern_fail(report, "*", tick, "row signatures are not one each of R, G, B")
            continue
        if r + 1 < n_rows:
            for n in names:
                cur, nxt = labels[n][r], labels[n][r + 1]
                if nxt is None or nxt.index != cur.index % 3 + 1:
                    _pattern_fail(report, n, tick + 1, "rotation R->G->B broken")
    if report.pattern_ok:
        report.pattern_summary = "3-link rotating: R->G->B each tick, period 3"


def _by_tick(path, name):
    return {e.tick: e for e in path.constituents[name]}


def _validate_pion(path, report, labels):
    names = list(path.constituents)
    if len(names) != 2:
        _pattern_fail(report, "*", 0, "a pion has exactly two constituents")
        return
    q, a = (_by_tick(path, n) for n in names)
    checked = 0
    for src, dst, dst_name in ((q, a, names[1]), (a, q, names[0])):
        for tick, entry in src.items():
            later = dst.get(tick + 4)
            if entry.is_rest or later is None:
                continue
            checked += 1
            if later.signature != entry.signature:
                _pattern_fail(report, dst_name, tick + 4,
                              f"exchange broken: expected {entry.signature}")
    if report.pattern_ok:
        report.pattern_summary = (f"2-link exchange: signatures swap after 4 ticks, "
                                  f"period 8 ({checked} exchanges checked)")


def _validate_graviton(path, report, labels):
    seen = set()
    for name, labs in labels.items():
        moving = [lab for lab in labs if lab is not None]
        if not moving:
            continue
        if len(set(moving)) != 1:
            _pattern_fail(report, name, path.constituents[name][0].tick,
                          "signature changes between ticks")
        seen.add(moving[0])
    if {(lab.index, lab.sign) for lab in seen} != {(i, 1) for i in range(4)}:
        _pattern_fail(report, "*", 0, "constituents do not cover the 4 future links")
    if report.pattern_ok:
        report.pattern_summary = "4-link: constant signatures covering T, X, Y, Z"


_VALIDATORS = {"proton": _validate_proton, "pion": _validate_pion,
               "graviton": _validate_graviton}


def validate(path: ParticlePath) -> ValidationReport:
    """Check tick bookkeeping, signature labels and the kind's pattern.

    Tick anomalies are reported but do not stop the pattern checks.
    """
    if path.kind not in _VALIDATORS:
        raise ValueError(f"unknown particle kind {path.kind!r}")
    report = ValidationReport(path.kind)
    _check_ticks(path, report)
    labels = _labels(path, report)
    _VALIDATORS[path.kind](path, report, labels)
    return report
