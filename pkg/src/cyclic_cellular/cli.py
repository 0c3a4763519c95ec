"""Command line front end.

Every command prints one JSON document (or a table with --pretty). Exit status
is 0 on success, 1 when a verification fails and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import ast
import json
import random
import sys
import time
from typing import Any

from .arith import ParseError, Poly
from .combinatorics import Permutation
from .core import (CellularityError, Report, abelian_diagnostic, cell_module_action, export_datum,
                   gram_matrix, is_symmetric, verify_cell_datum, verify_cyclic_data)
from .fixtures import FIXTURES, fixture, group_trace, murphy_datum, young_subgroup_datum

TARGETS = ("murphy", "young", "wreath", "abrauer", "brauer") + FIXTURES
COMMANDS = ("verify", "dims", "basis", "mul", "gram", "cellmod", "close", "trace")


class UsageError(Exception):
    pass


# -- building the requested object ------------------------------------------------------

def _algebra(args):
    name = getattr(args, "A", None) or "S2"
    try:
        return fixture(name)
    except KeyError as exc:
        raise UsageError(str(exc)) from None


def _trace_for(A):
    try:
        return group_trace(A)
    except ValueError:
        return None


def _need_n(args, default=None):
    if args.n is None:
        if default is None:
            raise UsageError(f"--n is required for target {args.target}")
        return default
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    return args.n


def build_datum(args):
    t = args.target
    if t == "murphy":
        return murphy_datum(_need_n(args))
    if t == "young":
        if not args.alpha:
            raise UsageError("--alpha is required for target young")
        return young_subgroup_datum(tuple(_parse_literal(args.alpha, "alpha")))
    if t == "wreath":
        from .wreath import wreath_as_cell_datum
        A = _algebra(args)
        if A.cyclic is None:
            raise UsageError(f"{A.name} has no cyclic cellular data, so its wreath basis is undefined")
        return wreath_as_cell_datum(A, _need_n(args))
    if t in ("abrauer", "brauer"):
        from .abrauer import brauer_as_cell_datum
        A = _algebra(args)
        if A.cyclic is None:
            raise UsageError(f"{A.name} has no cyclic cellular data")
        return brauer_as_cell_datum(A, _trace_for(A), _need_n(args))
    if t in FIXTURES:
        return fixture(t)
    raise UsageError(f"unknown target {t!r}")


def _parse_literal(text: str, what: str):
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError):
        raise UsageError(f"cannot parse {what} {text!r}") from None


def _tuplify(x):
    if isinstance(x, (list, tuple)):
        return tuple(_tuplify(y) for y in x)
    return x


def find_level(datum, text: str):
    """Match a level literal such as [2,1], [[1],[]], (0,[]) or + against the poset."""
    elems = datum.poset.elements
    for g in elems:
        if str(g) == text:
            return g
    try:
        val = _tuplify(ast.literal_eval(text))
    except (ValueError, SyntaxError):
        val = text
    for g in elems:
        if g == val:
            return g
    loose = [g for g in elems if _normal(g) == _normal(val)]
    if len(loose) == 1:
        return loose[0]
    raise UsageError(f"level {text!r} not found; levels are {[_show(g) for g in elems]}")


def _normal(x):
    """Drop empty parts so [] matches ((),()) and (0,[]) matches (0,((),()))."""
    if isinstance(x, tuple):
        items = [_normal(y) for y in x]
        return tuple(y for y in items if y != ())
    return x


def _show(x):
    if hasattr(x, "to_list"):
        return x.to_list()
    if isinstance(x, tuple):
        return [_show(y) for y in x]
    if isinstance(x, Permutation):
        return list(x.one_line())
    if isinstance(x, Poly):
        return str(x)
    return x


def _extra_names(args, datum) -> dict:
    extra = {"1": datum.unit}
    extra.update({nm: g for nm, g in datum.generators})
    if args.target == "murphy":
        amb = datum.ambient
        extra.update({f"p{p}": amb.to_cell({p: 1}) for p in amb.elements})
    return extra


def parse_element(args, datum, text: str) -> dict:
    from .core import parse_vector
    if args.target in ("abrauer", "brauer") and "[" in text and "(" in text:
        bb = datum.ambient
        return bb.to_cell(bb.cat.parse(text))
    try:
        return parse_vector(text, datum._name_index, extra=_extra_names(args, datum))
    except ParseError as exc:
        raise UsageError(str(exc)) from None


def _ambient_text(datum, x) -> str:
    amb = datum.ambient
    if amb is None:
        return datum.format(x)
    from .fixtures import GroupAmbient
    from .core import format_vector
    if isinstance(amb, GroupAmbient):
        return format_vector(amb.to_group(x), lambda g: f"p{g}" if isinstance(g, Permutation) else str(g))
    if hasattr(amb, "alg"):  # wreath
        return amb.alg.format(amb.to_ambient(x))
    return amb.cat.format(amb.to_ambient(x))


def _matrix(mat):
    return [[str(c) for c in row] for row in mat]


# -- commands ------------------------------------------------------------------------------

def cmd_verify(args) -> tuple[dict, bool]:
    datum = build_datum(args)
    report = Report()
    sample = None
    if args.sample:
        rng = random.Random(args.seed)
        sample = sorted(rng.sample(range(datum.dim), min(args.sample, datum.dim)))
    cellular = verify_cell_datum(datum, report, jobs=args.jobs, sample=sample)
    has_cyclic = datum.cyclic is not None
    cyc_report = Report()
    cyclic = verify_cyclic_data(datum, cyc_report, sample=sample) if has_cyclic else False
    result: dict[str, Any] = {
        "target": datum.name, "dim": datum.dim, "levels": len(datum.poset),
        "cellular": cellular, "strict": bool(report.counts.get("strict_involution")),
        "cyclic": cyclic, "cyclic_data_supplied": has_cyclic,
        "checks": {k: v for k, v in report.counts.items() if k != "strict_involution"},
        "cyclic_checks": cyc_report.counts,
        "violations": report.violations + (cyc_report.violations if has_cyclic else []),
        "sampled": sample is not None,
    }
    ok = cellular and (cyclic or not has_cyclic)
    if args.target in FIXTURES and datum.dim <= 40:
        result["abelian_diagnostic"] = abelian_diagnostic(datum)
    if args.target == "wreath" and args.induced:
        from .wreath import check_induced_module
        ind = Report()
        for lam in datum.poset.elements:
            check_induced_module(datum.ambient.A, datum.ambient.n, lam, ind)
        result["induced_module"] = {"ok": ind.ok, "checks": ind.counts, "violations": ind.violations}
        ok = ok and ind.ok
    if args.target in ("abrauer", "brauer"):
        from .abrauer import cell_chain_check, certify_change_of_basis
        cb = Report()
        certify_change_of_basis(datum.ambient, cb, sample=sample)
        cell_chain_check(datum, cb, sample=sample)
        result["change_of_basis"] = {"ok": cb.ok, "checks": cb.counts, "violations": cb.violations}
        ok = ok and cb.ok
    if args.export:
        with open(args.export, "w") as fh:
            json.dump(export_datum(datum, structure_constants=args.structure_constants), fh,
                      indent=2, sort_keys=True, default=str)
        result["exported"] = args.export
    result["ok"] = ok
    return result, ok


def cmd_dims(args) -> tuple[dict, bool]:
    t = args.target
    if t == "wreath":
        from math import factorial
        from .wreath import wreath_dimension
        A = _algebra(args)
        n = _need_n(args)
        dim = wreath_dimension(A, n)
        expected = A.dim ** n * factorial(n)
        return {"target": f"{A.name}wrS{n}", "dim": dim, "expected": expected}, dim == expected
    if t in ("abrauer", "brauer"):
        from .abrauer import level_sizes
        from .combinatorics import double_factorial_odd
        A = _algebra(args)
        n = _need_n(args)
        sizes = level_sizes(A, n)
        dim = sum(k * k for _, k in sizes)
        expected = A.dim ** n * double_factorial_odd(n)
        return {"target": f"D{n}({A.name})", "dim": dim, "expected": expected,
                "levels": [{"level": _show(g), "index_set_size": k} for g, k in sizes]}, dim == expected
    datum = build_datum(args)
    out = {"target": datum.name, "dim": datum.dim,
           "levels": [{"level": _show(g), "index_set_size": len(datum.T[g])} for g in datum.poset.elements]}
    if t == "murphy":
        from math import factorial
        out["expected"] = factorial(args.n)
        return out, datum.dim == out["expected"]
    return out, True


def cmd_basis(args) -> tuple[dict, bool]:
    datum = build_datum(args)
    wanted = find_level(datum, args.level) if args.level else None
    rows = []
    for i, (g, s, t) in enumerate(datum.labels):
        if wanted is not None and g != wanted:
            continue
        rows.append({"index": i, "name": datum.basis_names[i], "level": _show(g),
                     "s": _show(s), "t": _show(t), "value": _ambient_text(datum, {i: Poly(1)})})
    return {"target": datum.name, "dim": datum.dim, "basis": rows}, True


def cmd_mul(args) -> tuple[dict, bool]:
    if args.target == "brauer" and not args.cell:
        from .diagrams import BrauerCategory
        A = _algebra(args)
        cat = BrauerCategory(A, _trace_for(A))
        x, y = _diagram_arg(cat, args, args.x), _diagram_arg(cat, args, args.y)
        try:
            prod = x * y
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return {"x": cat.format(x), "y": cat.format(y), "product": cat.format(prod),
                "shape": [prod.k, prod.l]}, True
    datum = build_datum(args)
    x, y = parse_element(args, datum, args.x), parse_element(args, datum, args.y)
    prod = datum.mul(x, y)
    return {"target": datum.name, "x": datum.format(x), "y": datum.format(y),
            "product": datum.format(prod), "product_expanded": _ambient_text(datum, prod)}, True


def cmd_gram(args) -> tuple[dict, bool]:
    datum = build_datum(args)
    levels = [find_level(datum, args.level)] if args.level else datum.poset.elements
    out = []
    for g in levels:
        try:
            mat = gram_matrix(datum, g, check=args.check)
        except CellularityError as exc:
            return {"target": datum.name, "error": str(exc)}, False
        out.append({"level": _show(g), "size": len(mat), "symmetric": is_symmetric(mat),
                    "zero": all(not c for row in mat for c in row), "matrix": _matrix(mat)})
    return {"target": datum.name, "gram": out}, True


def cmd_cellmod(args) -> tuple[dict, bool]:
    datum = build_datum(args)
    if not args.lam:
        raise UsageError("--lam is required")
    g = find_level(datum, args.lam)
    if args.element:
        elems = [(args.element, parse_element(args, datum, args.element))]
    else:
        elems = datum.generators
    mats = []
    for name, a in elems:
        try:
            mats.append({"element": name, "matrix": _matrix(cell_module_action(datum, g, a))})
        except CellularityError as exc:
            return {"target": datum.name, "error": str(exc)}, False
    out = {"target": datum.name, "level": _show(g), "basis": [_show(t) for t in datum.T[g]], "action": mats}
    ok = True
    if args.target == "wreath":
        from .wreath import check_induced_module
        rep = Report()
        ok = check_induced_module(datum.ambient.A, datum.ambient.n, g, rep)
        out["induced_module"] = {"ok": ok, "checks": rep.counts, "violations": rep.violations}
    return out, ok


def _brauer_cat(args):
    from .diagrams import BrauerCategory
    A = _algebra(args)
    return BrauerCategory(A, _trace_for(A))


def _diagram_arg(cat, args, text: str):
    """A diagram sum, or "1" for the identity on --n strands."""
    if text.strip() == "1" and args.n is not None:
        return cat.identity(args.n)
    return cat.parse(text)


def cmd_close(args) -> tuple[dict, bool]:
    from .diagrams import closure
    cat = _brauer_cat(args)
    x = _diagram_arg(cat, args, args.x)
    if x.k != x.l or x.k == 0:
        raise UsageError("closure needs an (n, n) diagram with n >= 1")
    y = closure(x)
    return {"x": cat.format(x), "closure": cat.format(y) if y.k else str(y.scalar()), "shape": [y.k, y.l]}, True


def cmd_trace(args) -> tuple[dict, bool]:
    if args.target == "wreath":
        datum = build_datum(args)
        wb = datum.ambient
        x = parse_element(args, datum, args.x)
        tr = _trace_for(wb.A)
        if tr is None:
            raise UsageError(f"{wb.A.name} has no trace")
        return {"x": datum.format(x), "trace": str(wb.alg.trace(wb.to_ambient(x), tr))}, True
    from .diagrams import global_trace
    cat = _brauer_cat(args)
    x = _diagram_arg(cat, args, args.x)
    if x.k != x.l:
        raise UsageError("trace needs an (n, n) diagram")
    return {"x": cat.format(x), "trace": str(global_trace(x))}, True


HANDLERS = {"verify": cmd_verify, "dims": cmd_dims, "basis": cmd_basis, "mul": cmd_mul,
            "gram": cmd_gram, "cellmod": cmd_cellmod, "close": cmd_close, "trace": cmd_trace}

GROUP_COMMANDS = {
    "wreath": ("verify", "dims", "basis", "mul", "gram", "cellmod", "trace"),
    "abrauer": ("verify", "dims", "basis", "mul", "gram", "cellmod"),
    "brauer": ("verify", "dims", "basis", "mul", "gram", "cellmod", "close", "trace"),
}


# -- argument parsing --------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, cmd: str, target: str | None):
    if target is None:
        default = "brauer" if cmd in ("close",) else None
        p.add_argument("--target", choices=TARGETS, default=default, required=default is None and cmd != "trace",
                       help="object to work with")
    else:
        p.set_defaults(target=target)
    p.add_argument("--A", choices=FIXTURES, default=None, help="coefficient algebra (default S2)")
    p.add_argument("--n", type=int, default=None, help="rank / number of strands")
    p.add_argument("--alpha", help="composition for the young target, e.g. [2,1]")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for verification")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="JSON output (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="human readable tables")
    p.set_defaults(pretty=False)
    if cmd == "verify":
        p.add_argument("--sample", type=int, default=0, help="check only this many random basis elements")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--induced", action="store_true", help="also check the induced cell modules (wreath)")
        p.add_argument("--export", help="write the datum description as JSON to this file")
        p.add_argument("--structure-constants", action="store_true", help="include products in --export")
    if cmd in ("basis", "gram"):
        p.add_argument("--level", help="restrict to one level")
    if cmd == "gram":
        p.add_argument("--check", action="store_true", help="check independence of (s, v)")
    if cmd == "cellmod":
        p.add_argument("--lam", "--level", dest="lam", help="level of the cell module")
        p.add_argument("--element", help="act by this element instead of the generators")
    if cmd == "mul":
        p.add_argument("x")
        p.add_argument("y")
        p.add_argument("--cell", action="store_true", help="for brauer: parse basis names, not diagrams")
    if cmd in ("close", "trace"):
        p.add_argument("x", help="element literal")
        if cmd == "trace" and target is None:
            p.set_defaults(target="brauer")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclic-cellular",
                                     description="Cellular bases of wreath products and A-Brauer algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd in COMMANDS:
        p = sub.add_parser(cmd, help=f"{cmd} (choose the object with --target)")
        _common(p, cmd, None)
        p.set_defaults(handler=cmd)
    for group, cmds in GROUP_COMMANDS.items():
        g = sub.add_parser(group, help=f"shorthand for --target {group}")
        gsub = g.add_subparsers(dest="subcommand", required=True)
        for cmd in cmds:
            p = gsub.add_parser(cmd)
            _common(p, cmd, group)
            p.set_defaults(handler=cmd)
    return parser


# -- output -------------------------------------------------------------------------------------

def render_pretty(doc: Any, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v and not _is_matrix(v) and not _is_flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_pretty(v, indent + 1))
            elif _is_matrix(v):
                lines.append(f"{pad}{k}:")
                lines.append(_table(v, pad + "  "))
            else:
                lines.append(f"{pad}{k}: {_flat(v)}")
    elif isinstance(doc, list):
        for item in doc:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                lines.append(render_pretty(item, indent + 1))
            else:
                lines.append(f"{pad}- {_flat(item)}")
    else:
        lines.append(f"{pad}{doc}")
    return "\n".join(lines)


def _is_matrix(v) -> bool:
    return isinstance(v, list) and v and all(isinstance(r, list) and all(isinstance(c, str) for c in r) for r in v)


def _is_flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _flat(v) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _table(mat, pad: str) -> str:
    width = max((len(c) for row in mat for c in row), default=1)
    return "\n".join(pad + "  ".join(c.rjust(width) for c in row) for row in mat)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.target is None:
        parser.error("--target is required")
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    start = time.perf_counter()
    try:
        result, ok = HANDLERS[args.handler](args)
    except (UsageError, ParseError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    doc = {"command": args.handler, "ok": ok, "result": result,
           "timing": {"seconds": round(time.perf_counter() - start, 3)}}
    if args.pretty:
        print(render_pretty(doc))
    else:
        print(json.dumps(doc, indent=2, sort_keys=True, default=str))
    return 0 if ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
