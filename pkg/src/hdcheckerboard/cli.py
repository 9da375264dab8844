"""Command-line interface.

Exit codes: 0 success, 2 a check or validation came out unexpectedly,
64 usage errors (bad flags, bad values, enumeration budget exceeded).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import checkerboard as cb
from . import lattice as lt
from . import particles as pt
from . import selfcheck
from .algebra import format_quaternion

EXIT_OK = 0
EXIT_CHECK = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    """Output was produced but the verb's expectation was not met."""

    def __init__(self, payload, message):
        super().__init__(message)
        self.payload = payload


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Output:
    """JSON payload plus a tabular view for ``--format csv``."""

    def __init__(self, payload, header=None, rows=None):
        self.payload = payload
        self.header = header
        self.rows = rows

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.payload) + "\n"
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if self.header is None:
            writer.writerow(["key", "value"])
            for k, v in _flatten(self.payload):
                writer.writerow([k, v])
        else:
            writer.writerow(self.header)
            writer.writerows(self.rows)
        return buf.getvalue()


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list):
        for n, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{n}]")
    else:
        yield prefix, json.dumps(obj) if isinstance(obj, bool) else obj


def _points(points) -> Output:
    arr = [p.decimals() for p in points]
    dim = len(arr[0]) if arr else 0
    return Output(arr, [f"x{n}" for n in range(dim)], arr)


def _poly_output(poly: cb.AmplitudePoly) -> Output:
    rows = [[c] + [str(v) for v in q.components] for c, q in poly.coeffs.items()]
    return Output({"poly": poly.to_json()}, ["C", "re", "i", "j", "k"], rows)


# verbs ---------------------------------------------------------------------

def cmd_links(args) -> Output:
    if args.all:
        if args.dim != 4:
            raise UsageError("--all is only defined for --dim 4")
        names = ["F1", "F2", "F3", "F4", "-F2", "-F3", "-F4", "-F1"]
        items = list(zip(names, cb.lightcone_links()))
    else:
        items = [(d.name, d.link) for d in cb.future_links(args.dim)]
    payload = []
    rows = []
    for name, q in items:
        coords = [c.decimal() for c in (q.components if args.dim == 4 else q.components[:2])]
        payload.append({"name": name, "link": format_quaternion(q), "coords": coords})
        rows.append([name, format_quaternion(q)] + coords)
    return Output(payload, ["name", "link"] + [f"x{n}" for n in range(args.dim)], rows)


def cmd_neighbors(args) -> Output:
    return _points(lt.nearest_neighbors(lt.parse_lattice(args.lattice)))


def cmd_roots(args) -> Output:
    roots = lt.e8_roots()
    if args.count_only:
        return Output({"total": len(roots), "strata": list(roots.strata)})
    arr = [[c.decimal() for c in r.coords] for r in roots.points]
    return Output(arr, ["x0"] + [f"e{n}" for n in range(1, 8)], arr)


def cmd_nn24(args) -> Output:
    return _points(lt.next_nearest_4hd())


def cmd_closure(args) -> Output:
    spec = lt.parse_lattice(args.lattice)
    return Output({"lattice": spec.name, "extension_closed": lt.is_extension_closed(spec)})


def _identity_json(check: lt.IdentityCheck, limit: int) -> dict:
    return {
        "identity": f"{check.left} = {check.right}",
        "holds": check.holds,
        "left_count": check.left_count,
        "right_count": check.right_count,
        "left_only_count": len(check.left_only),
        "right_only_count": len(check.right_only),
        "left_only": [p.decimals() for p in check.left_only[:limit]],
        "right_only": [p.decimals() for p in check.right_only[:limit]],
    }


def cmd_decompose(args) -> Output:
    rep = lt.decomposition_harness(args.box_radius)
    payload = {
        "box_radius": rep.box_radius.decimal(),
        "candidates": rep.candidates,
        "d8_split": _identity_json(rep.d8_split, args.witnesses),
        "e8_split": _identity_json(rep.e8_split, args.witnesses),
        "as_expected": rep.as_expected,
    }
    rows = [[c.name, c.holds, c.left_count, c.right_count, len(c.left_only), len(c.right_only)]
            for c in (rep.d8_split, rep.e8_split)]
    out = Output(payload, ["identity", "holds", "left_count", "right_count",
                           "left_only", "right_only"], rows)
    if not rep.as_expected:
        raise CheckFailed(out, "decomposition results differ from the expected outcome")
    return out


def _query(args) -> tuple[cb.Direction, cb.PathQuery | None]:
    start = cb.direction(args.dim, args.start)
    if args.end is None:
        return start, None
    end = cb.parse_endpoint(args.dim, args.end)
    return start, cb.PathQuery(args.dim, start, args.steps, end)


def cmd_propagate(args) -> Output:
    start, query = _query(args)
    if query is not None:
        if args.method == "brute":
            return _poly_output(cb.brute_force(query, args.convention))
        return _poly_output(cb.propagate(query, args.convention))
    if args.method == "brute":
        polys, _ = cb.brute_force_all(args.dim, start, args.steps, args.convention)
    else:
        polys = cb.propagate_all(args.dim, start, args.steps, args.convention)
    payload = {"endpoints": [{"end": p.decimals(), "poly": poly.to_json()}
                             for p, poly in polys.items()]}
    rows = [[" ".join(p.decimals()), c] + [str(v) for v in q.components]
            for p, poly in polys.items() for c, q in poly.coeffs.items()]
    return Output(payload, ["end", "C", "re", "i", "j", "k"], rows)


def cmd_count(args) -> Output:
    start, query = _query(args)
    if query is None:
        raise UsageError("count requires --end")
    if args.method == "brute":
        _, counts = cb.brute_force_all(args.dim, start, args.steps)
        n = counts.get(query.endpoint, {})
    else:
        n = cb.count_paths(query)
    rows = [[c, v] for c, v in n.items()]
    return Output({"counts": [{"C": c, "N": v} for c, v in n.items()]}, ["C", "N"], rows)


def _mu(args) -> float:
    if args.mu is not None:
        return args.mu
    if args.mass is None or args.epsilon is None:
        raise UsageError("give --mu, or both --mass and --epsilon")
    return cb.EvaluationParams(args.mass, args.epsilon, args.dim, args.convention).mu


def _amplitude(args) -> tuple[float, cb.NumericQuaternion]:
    if args.poly is not None:
        try:
            poly = cb.AmplitudePoly.from_json(json.loads(args.poly).get("poly", []))
        except (ValueError, AttributeError, KeyError, TypeError) as exc:
            raise UsageError(f"malformed --poly: {exc}") from None
    else:
        _, query = _query(args)
        if query is None:
            raise UsageError("give --poly, or --start/--steps/--end")
        poly = cb.propagate(query, args.convention)
    mu = _mu(args)
    return mu, cb.evaluate(poly, mu)


def cmd_evaluate(args) -> Output:
    mu, amp = _amplitude(args)
    payload = {"mu": repr(mu), "amplitude": amp.to_json()}
    return Output(payload, ["mu", "re", "i", "j", "k"], [[repr(mu)] + [repr(v) for v in amp]])


def cmd_phase(args) -> Output:
    if args.amp is not None:
        try:
            amp = cb.NumericQuaternion(*(float(x) for x in args.amp.split(",")))
        except (ValueError, TypeError):
            raise UsageError("--amp takes four comma-separated reals") from None
    else:
        _, amp = _amplitude(args)
    try:
        angle = cb.phase(amp)
    except cb.UndefinedPhaseError as exc:
        raise CheckFailed(Output({"phase": None, "error": str(exc)}), str(exc)) from None
    return Output({"phase": repr(angle)}, ["phase"], [[repr(angle)]])


def cmd_steplen(args) -> Output:
    length = cb.effective_step_length(args.mass, args.h, args.c)
    return Output({"length": repr(length)}, ["length"], [[repr(length)]])


def cmd_particle(args) -> Output:
    if args.file:
        try:
            path = pt.ParticlePath.from_json(Path(args.file).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {args.file}: {exc}") from None
    else:
        if args.kind is None:
            raise UsageError("particle requires --kind or --file")
        path = pt.builtin_table(args.kind)
    # the printed proton table's tick anomaly is expected; anything else is not
    known = path.kind == "proton" and path == pt.builtin_table("proton")
    expected = selfcheck.EXPECTED_PROTON_ANOMALIES if known else []
    if args.render:
        sys.stdout.write(path.render())
        return None
    if not args.validate:
        d = path.to_dict()
        rows = [[name, e["tick"], e["signature"]] for name, es in d["constituents"].items()
                for e in es]
        return Output(d, ["constituent", "tick", "signature"], rows)
    rep = pt.validate(path)
    rows = [[a.constituent, a.tick, a.description] for a in rep.anomalies]
    out = Output(rep.to_dict(), ["constituent", "tick", "description"], rows)
    if [(a.constituent, a.tick) for a in rep.anomalies] != expected or not rep.pattern_ok:
        raise CheckFailed(out, "unexpected validation anomalies")
    return out


def cmd_selfcheck(args) -> Output:
    results = selfcheck.run_all()
    ok = all(r.ok for r in results)
    out = Output({"ok": ok, "checks": [r.to_dict() for r in results]},
                 ["name", "ok", "detail"], [[r.name, r.ok, r.detail] for r in results])
    if not ok:
        raise CheckFailed(out, "selfcheck failed: " + ", ".join(r.name for r in results if not r.ok))
    return out


# parser --------------------------------------------------------------------

def _add_query(p, need_end=False):
    p.add_argument("--dim", type=int, choices=(2, 4), default=4)
    p.add_argument("--start", default=None, help="F1..F4 (dim 4) or R|L (dim 2)")
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--end", default=None,
                   help="link sum such as F1+F2, or half-unit coordinates t,x,y,z")
    p.add_argument("--convention", choices=cb.CONVENTIONS, default="signed")


def _add_mu(p):
    p.add_argument("--mu", type=float, default=None, help="per-corner magnitude")
    p.add_argument("--mass", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--poly", default=None, help='JSON {"poly": [...]} as printed by propagate')


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hdcheckerboard",
                     description="Quaternionic checkerboard path sums and HyperDiamond lattices")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="verb", metavar="VERB", parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    p = sub.add_parser("links", help="future lightcone links")
    p.add_argument("--dim", type=int, choices=(2, 4), default=4)
    p.add_argument("--all", action="store_true", help="include the 4 past links (dim 4)")
    p.set_defaults(func=cmd_links)

    p = sub.add_parser("neighbors", help="nearest neighbors of the origin")
    p.add_argument("--lattice", required=True, help="e.g. 4hd, d4, z4, 8hd")
    p.set_defaults(func=cmd_neighbors)

    p = sub.add_parser("roots", help="E8 roots in octonion coordinates")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("nn24", help="4HD next-to-nearest neighbors")
    p.set_defaults(func=cmd_nn24)

    p = sub.add_parser("closure", help="lattice-vs-packing test for nHD")
    p.add_argument("--lattice", required=True)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("decompose", help="8 -> 4+4 decomposition harness")
    p.add_argument("--box-radius", default="2")
    p.add_argument("--witnesses", type=int, default=16, help="witnesses listed per direction")
    p.set_defaults(func=cmd_decompose)

    for verb, func, hlp in (("propagate", cmd_propagate, "exact amplitude polynomial"),
                            ("count", cmd_count, "path counts per corner number")):
        p = sub.add_parser(verb, help=hlp)
        _add_query(p)
        p.add_argument("--method", choices=("dp", "brute"), default="dp")
        p.set_defaults(func=func)

    p = sub.add_parser("evaluate", help="numeric amplitude")
    _add_query(p)
    _add_mu(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("phase", help="propagator phase")
    _add_query(p)
    _add_mu(p)
    p.add_argument("--amp", default=None, help="numeric amplitude re,i,j,k")
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("steplen", help="Compton step length h/(m c)")
    p.add_argument("--mass", type=float, required=True)
    p.add_argument("--h", type=float, default=1.0)
    p.add_argument("--c", type=float, default=1.0)
    p.set_defaults(func=cmd_steplen)

    p = sub.add_parser("particle", help="particle signature tables")
    p.add_argument("--kind", choices=pt.KINDS)
    p.add_argument("--file", default=None, help="load a table from JSON")
    p.add_argument("--validate", action="store_true")
    p.add_argument("--render", action="store_true", help="print the table as text")
    p.set_defaults(func=cmd_particle)

    p = sub.add_parser("selfcheck", help="run every invariant check")
    p.set_defaults(func=cmd_selfcheck)
    return parser


def _check_query_args(args) -> None:
    if getattr(args, "func", None) in (cmd_propagate, cmd_count, cmd_evaluate, cmd_phase):
        needs = args.func in (cmd_propagate, cmd_count) or (
            args.poly is None and getattr(args, "amp", None) is None)
        if needs and (args.start is None or args.steps is None):
            raise UsageError("--start and --steps are required")
        if args.steps is not None and args.steps < 1:
            raise UsageError("--steps must be positive")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.verb is None:
            raise UsageError("missing verb")
        _check_query_args(args)
        out = args.func(args)
    except UsageError as exc:
        print(f"hdcheckerboard: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except cb.BudgetExceeded as exc:
        print(f"hdcheckerboard: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CheckFailed as exc:
        sys.stdout.write(exc.payload.render(args.format))
        print(f"hdcheckerboard: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (ValueError, lt.LatticeError) as exc:
        print(f"hdcheckerboard: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if out is not None:
        sys.stdout.write(out.render(args.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
