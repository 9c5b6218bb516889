"""Command line front end.

Exit status: 0 on success, 1 on a domain error (one diagnostic line on
stderr, ``<ErrorType> <message>``), 2 on usage errors such as unknown verbs,
missing files or malformed arguments.  All numbers are printed exactly.

Divisors are comma-separated integers.  With a fan (or a model exported
from a fan) they are coefficients on the fan rays; with any other model
they are coordinates in the model basis.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from typing import Sequence

from . import io as nio
from .errors import NSIError
from .exact import format_rat
from .ktheory import frobenius_ch2_limit, pair_limit, self_pair_limit
from .ledger import bogomolov_check, defect_sweep, delta, rr_defect
from .resolution import discrepancies, graph_from_hj, hj_expand, validate as validate_graph
from .surface import (NormalSurfaceModel, discrepancy_cycle, mumford_pullback, pair,
                      sharp_pullback)
from .toric import chi, export_surface_model, resolve_fan_2d, singular_cones, validate_fan


class UsageError(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _hj(text: str) -> tuple[int, int]:
    vals = _ints(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError("--hj takes n,q")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nsi", description="Exact intersection numbers on normal surfaces and toric varieties.")
    sub = p.add_subparsers(dest="verb", required=True, metavar="verb")

    def add(name, help_, *opts):
        sp = sub.add_parser(name, help=help_)
        for o in opts:
            o(sp)
        return sp

    fan = lambda sp: sp.add_argument("--fan", required=True, help="fan JSON file")
    model = lambda sp: sp.add_argument("--model", required=True, help="model or fan JSON file")
    d = lambda sp: sp.add_argument("--d", type=_ints, required=True, help="divisor coefficients")
    ls = lambda sp: sp.add_argument("--L", type=_ints, action="append", default=[],
                                    help="Cartier divisor to cut with (rank 3; repeatable)")
    out = lambda sp: sp.add_argument("--output", help="CSV output path")
    period = lambda sp: sp.add_argument("--period", type=int, help="override the quasi-polynomial period")

    sp = add("validate", "check a fan, model or resolution graph")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--fan")
    g.add_argument("--model")
    g.add_argument("--graph")

    sp = add("resolve", "minimal resolution of a toric surface or cyclic quotient")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--fan")
    g.add_argument("--hj", type=_hj, help="n,q for the singularity 1/n(1,q)")

    sp = add("pullback", "Mumford pullback of a Weil divisor", model, d)
    sp.add_argument("--sharp", action="store_true", help="round exceptional coefficients up (toric models)")

    sp = add("pair", "intersection number D1.D2 on a surface", model)
    sp.add_argument("--d1", type=_ints, required=True)
    sp.add_argument("--d2", type=_ints, required=True)

    add("chi", "Euler characteristic of O(D) from the toric oracle", fan, d)

    sp = add("limit-pair", "intersection number as a limit of Euler characteristics", fan, ls, out, period)
    sp.add_argument("--d1", type=_ints, required=True)
    sp.add_argument("--d2", type=_ints, help="second divisor (default: D1 itself)")

    sp = add("frobenius-ch2", "ch2 of O(D) from Frobenius scalings", fan, d, ls, period)
    sp.add_argument("--p", type=int, required=True)

    sp = add("discrepancy", "discrepancies of the exceptional curves")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--model")
    g.add_argument("--graph")
    g.add_argument("--hj", type=_hj)

    add("rr-defect", "Riemann-Roch defect of O(D) per singular point", fan, d, out)

    sp = add("defect-sweep", "extreme defects over a box of divisors", fan)
    sp.add_argument("--bound", type=int, required=True)

    add("export-model", "write the resolution model of a toric surface", fan, out)

    sp = add("bogomolov", "Bogomolov inequality for sheaf data", model)
    sp.add_argument("--sheaf", required=True)
    return p


# ------------------------------------------------------------------ loading

def _load(path):
    try:
        return nio.read_json(path)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}")
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise UsageError(f"{path}: not a JSON file ({exc})")


def _fan(path):
    data = _load(path)
    if nio.kind_of(data) != "fan":
        raise UsageError(f"{path}: expected a fan file")
    from .toric import Fan
    return Fan.from_dict(data)


def _model(path) -> tuple[NormalSurfaceModel, bool]:
    """Model and whether divisors are given in ray coordinates."""
    data = _load(path)
    kind = nio.kind_of(data)
    if kind == "fan":
        from .toric import Fan
        return export_surface_model(Fan.from_dict(data)), True
    if kind != "model":
        raise UsageError(f"{path}: expected a model or fan file")
    m = NormalSurfaceModel.from_dict(data)
    return m, m.source_rays is not None


def _weil(model: NormalSurfaceModel, rays: bool, D):
    return model.weil(D) if rays else D


def _emit_csv(path, writer, obj) -> None:
    buf = io.StringIO()
    writer(obj, buf)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}")


def _vec(v) -> str:
    return ",".join(format_rat(x) for x in v)


# ----------------------------------------------------------------- dispatch

def run(args, out) -> None:
    verb = args.verb
    if verb == "validate":
        if args.fan:
            fan = _fan(args.fan)
            validate_fan(fan)
            extra = f", {len(singular_cones(fan))} singular cones" if fan.lattice_rank == 2 else ""
            print(f"ok: rank {fan.lattice_rank}, {len(fan.rays)} rays{extra}", file=out)
        elif args.model:
            m, _ = _model(args.model)
            print(f"ok: {len(m)} basis classes, {len(m.exceptional_groups)} singular points", file=out)
        else:
            from .resolution import ResolutionGraph
            validate_graph(ResolutionGraph.from_dict(_load(args.graph)))
            print("ok", file=out)
    elif verb == "resolve":
        if args.hj:
            n, q = args.hj
            print(",".join(str(-b) for b in hj_expand(n, q)), file=out)
        else:
            res = resolve_fan_2d(_fan(args.fan))
            for r, (kind, j) in zip(res.fan.rays, res.provenance):
                print(f"{r[0]},{r[1]} {kind} {j}", file=out)
    elif verb == "pullback":
        m, rays = _model(args.model)
        f = sharp_pullback if args.sharp else mumford_pullback
        print(_vec(f(m, _weil(m, rays, args.d))), file=out)
    elif verb == "pair":
        m, rays = _model(args.model)
        print(format_rat(pair(m, _weil(m, rays, args.d1), _weil(m, rays, args.d2))), file=out)
    elif verb == "chi":
        print(chi(_fan(args.fan), args.d).chi, file=out)
    elif verb == "limit-pair":
        fan = _fan(args.fan)
        if args.d2 is None:
            result = self_pair_limit(fan, args.d1, args.L, period=args.period)
            if args.output:
                _emit_csv(args.output, nio.write_convergence_csv, result)
            print(format_rat(result.value), file=out)
        else:
            if args.output or args.period:
                raise UsageError("--output and --period apply to a single divisor")
            print(format_rat(pair_limit(fan, args.d1, args.d2, args.L)), file=out)
    elif verb == "frobenius-ch2":
        print(format_rat(frobenius_ch2_limit(_fan(args.fan), args.d, args.p, args.L, period=args.period)), file=out)
    elif verb == "discrepancy":
        if args.model:
            m, _ = _model(args.model)
            cyc = discrepancy_cycle(m)
            for g in m.exceptional_groups:
                for i in g:
                    print(f"{m.basis[i]} {format_rat(cyc[i])}", file=out)
        else:
            from .resolution import ResolutionGraph
            graph = graph_from_hj(*args.hj) if args.hj else ResolutionGraph.from_dict(_load(args.graph))
            for c, a in zip(graph.curves, discrepancies(graph)):
                print(f"{c.label} {format_rat(a)}", file=out)
    elif verb == "rr-defect":
        report = rr_defect(_fan(args.fan), args.d)
        if args.output:
            _emit_csv(args.output, nio.write_defect_csv, report)
        print(format_rat(report.total_defect), file=out)
    elif verb == "defect-sweep":
        lo, hi = defect_sweep(_fan(args.fan), args.bound)
        print(f"{format_rat(lo)},{format_rat(hi)}", file=out)
    elif verb == "export-model":
        text = nio.dumps(export_surface_model(_fan(args.fan)).to_dict())
        if args.output:
            try:
                with open(args.output, "w", encoding="utf-8") as fh:
                    fh.write(text)
            except OSError as exc:
                raise UsageError(f"cannot write {args.output}: {exc.strerror}")
        else:
            out.write(text)
    elif verb == "bogomolov":
        m, _ = _model(args.model)
        data = nio.sheaf_from_dict(_load(args.sheaf))
        ok = bogomolov_check(data, m)
        print(f"{'true' if ok else 'false'} delta={format_rat(delta(data, m))}", file=out)


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        run(args, out)
    except UsageError as exc:
        print(f"nsi: error: {exc}", file=err)
        return 2
    except (KeyError, TypeError) as exc:
        print(f"nsi: error: malformed input ({exc})", file=err)
        return 2
    except NSIError as exc:
        print(f"{type(exc).__name__} {exc}", file=err)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
