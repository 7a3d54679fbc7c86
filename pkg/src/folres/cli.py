"""Command-line front end.

Subcommands read a germ either from ``--form``/``--sep`` or, when no form is
given, from an input JSON document on standard input (the format written by
``folres example``). Reports are JSON with sorted keys.

Exit codes: 0 success, 1 usage or input error, 2 an identity check failed,
3 non-rational singular point or depth limit reached.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from .corpus import CorpusEntry, corpus, entry_from_json, entry_to_json, family_entry
from .errors import DepthExceeded, FolresError, NonRationalSingularity
from .foliation import CurveGerm
from .invariants import build_balanced_equation, invariant_report, obstruction_dimension
from .parsing import parse_form, parse_poly
from .reduction import reduce, tree_to_dot, tree_to_json
from .verify import check_entry

SCHEMA = "folres/1"
BALANCED_COMMANDS = ("invariants", "balanced", "obstruction")


class UsageError(FolresError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--form", help='1-form such as "x dy - y dx"; read JSON from stdin if omitted')
    p.add_argument("--sep", action="append", default=[], help="isolated separatrix equation (repeatable)")
    p.add_argument("--assert-complete", action="store_true",
                   help="assert that --sep lists every isolated separatrix")
    p.add_argument("--max-depth", type=int, default=None, help="blow-up generations (default 50 or FOLRES_MAX_DEPTH)")
    p.add_argument("--seed", type=int, default=None, help="seed for pencil attachment points")
    p.add_argument("--jet-order", type=int, default=16, help="accepted for compatibility; push-down is exact")
    p.add_argument("--dot", help="write the dual tree in DOT format to this path")
    p.add_argument("--out", help="write the JSON report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="folres", description="Reduction of singularities of plane foliations over Q.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in (
        ("reduce", "reduce the germ and print the resolution tree"),
        ("invariants", "full invariant report"),
        ("balanced", "balanced equation of separatrices"),
        ("obstruction", "dimension of the obstruction space"),
    ):
        _add_common(sub.add_parser(name, help=help_))
    ex = sub.add_parser("example", help="print an input document for a built-in germ")
    ex.add_argument("name", help='"klughertz" (the dicritical family) or a corpus entry name')
    ex.add_argument("--n", type=int)
    ex.add_argument("--r", help="comma-separated orders r_j")
    ex.add_argument("--t", help="comma-separated rational tangency points t_j")
    ex.add_argument("--out")
    cc = sub.add_parser("corpus-check", help="run every identity on the corpus")
    cc.add_argument("--fixture", help="JSON list of input documents replacing the built-in corpus")
    cc.add_argument("--max-depth", type=int, default=None)
    cc.add_argument("--seed", type=int, default=None)
    cc.add_argument("--out")
    return ap


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, path: Optional[str]):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_entry(args, stdin) -> CorpusEntry:
    if args.form is not None:
        seps = [CurveGerm(parse_poly(s)) for s in args.sep]
        e = CorpusEntry("input", parse_form(args.form), seps)
        complete = args.assert_complete
    else:
        doc = json.loads(stdin.read())
        e = entry_from_json(doc)
        e.separatrices.extend(CurveGerm(parse_poly(s)) for s in args.sep)
        complete = args.assert_complete or bool(doc.get("separatrices_complete"))
    if args.command in BALANCED_COMMANDS and not complete:
        raise UsageError(f"{args.command} needs the complete list of isolated separatrices; "
                         "pass --assert-complete")
    return e


def _pencil(args):
    return "sequential" if args.seed is None else args.seed


def _run_germ(args, stdin) -> int:
    entry = _load_entry(args, stdin)
    tree = reduce(entry.omega, args.max_depth)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(tree_to_dot(tree))
    code = 0
    if args.command == "reduce":
        out = tree_to_json(tree)
        out["removed_unit"] = str(entry.omega.removed_unit)
    elif args.command == "balanced":
        F = build_balanced_equation(tree, entry.separatrices, _pencil(args))
        out = {"schema": SCHEMA, "form": str(tree.omega), "balanced": F.to_json()}
    elif args.command == "obstruction":
        F = build_balanced_equation(tree, entry.separatrices, _pencil(args))
        out = {"schema": SCHEMA, "form": str(tree.omega), "obstruction": obstruction_dimension(tree, F.poles)}
    else:
        rep = invariant_report(tree, entry.separatrices, _pencil(args))
        out = rep.to_json()
        out["tree"] = tree_to_json(tree)
        code = 0 if rep.ok else 2
    _emit(dumps(out), args.out)
    return code


def _run_example(args) -> int:
    if args.name in ("klughertz", "family"):
        if args.n is None or args.r is None or args.t is None:
            raise UsageError("the family needs --n, --r and --t")
        r = [int(k) for k in args.r.split(",")]
        t = [Fraction(s) for s in args.t.split(",")]
        doc = entry_to_json(family_entry(args.n, r, t))
    else:
        names = {e.name: e for e in corpus()}
        if args.name not in names:
            raise UsageError(f"unknown example {args.name!r}; choose from {', '.join(sorted(names))}")
        doc = entry_to_json(names[args.name])
    _emit(dumps(doc), args.out)
    return 0


def _run_corpus_check(args) -> int:
    if args.fixture:
        with open(args.fixture, encoding="utf-8") as fh:
            entries = [entry_from_json(d) for d in json.load(fh)]
    else:
        entries = corpus()
    pencil = "sequential" if args.seed is None else args.seed
    results = sorted((check_entry(e, args.max_depth, pencil) for e in entries), key=lambda r: r["name"])
    ok = all(r["ok"] for r in results)
    _emit(dumps({"schema": SCHEMA, "ok": ok, "entries": results}), args.out)
    return 0 if ok else 2


def _error_json(exc: Exception) -> dict:
    d = {"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, NonRationalSingularity):
        d["residual"] = None if exc.residual is None else str(exc.residual)
        d["location"] = exc.location
    if isinstance(exc, DepthExceeded):
        d["offending"] = exc.offending
    if hasattr(exc, "position"):
        d["position"] = exc.position
    return d


def main(argv: Optional[List[str]] = None, stdin=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    try:
        args = build_parser().parse_args(argv)
        if args.command == "example":
            return _run_example(args)
        if args.command == "corpus-check":
            return _run_corpus_check(args)
        return _run_germ(args, stdin)
    except (NonRationalSingularity, DepthExceeded) as exc:
        sys.stderr.write(dumps(_error_json(exc)))
        return 3
    except (FolresError, ValueError, json.JSONDecodeError) as exc:
        sys.stderr.write(dumps(_error_json(exc)))
        return 1


if __name__ == "__main__":
    sys.exit(main())
