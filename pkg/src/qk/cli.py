"""Command line front-end.

    qk validate FILE
    qk construct VERB NAME [FILE] [--out OUT]
    qk check SUITE FILE [--max-hom N] [--max-obj N]

Exit codes: 0 pass, 1 semantic failure, 2 parse error, 3 missing fixture.
``QK_VERBOSE`` (0, 1 or 2) sets how much of the human summary goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Callable

from .caps import Caps
from .cauchy import cauchy_completion
from .enriched import validate_category, validate_distributor, validate_functor
from .errors import QKError
from .io import ParseError, Workspace, document, dumps, load_path
from .locale_sheaf import validate_ordered_sheaf, validate_sheaf
from .modules import category_of_module, module_of_category, validate_module
from .presheaf import presheaf_category
from .quantaloid import centre, idm, locale_suspension, validate_homomorphism, validate_quantaloid
from .report import Report
from .suites import SUITES, MissingFixture, run_suite

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_MISSING = 0, 1, 2, 3
DEFAULT_WORKSPACE = "workspace.json"


def verbosity() -> int:
    try:
        return max(0, min(2, int(os.environ.get("QK_VERBOSE", "1"))))
    except ValueError:
        return 1


def _summary(report: Report) -> str:
    level = verbosity()
    text = report.summary()
    if level == 0:
        return text.splitlines()[0]
    if level == 2:
        text += "".join(f"\n  ok   {c.name}" + (f" ({c.detail})" if c.detail else "")
                        for c in report.checks if c.passed)
    return text


def _emit_report(report: Report) -> int:
    sys.stdout.write(json.dumps(report.to_dict(), ensure_ascii=False, indent=1) + "\n")
    print(_summary(report), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


# validate ---------------------------------------------------------------------

def validate_workspace(ws: Workspace) -> Report:
    report = Report("validate")

    def record(kind: str, name: str, bad) -> None:
        report.add(f"{kind} {name}", not bad, bad[0].witness if bad else None,
                   f"{bad[0].axiom} ({bad[0].count} violations)" if bad else "")

    for n, q in ws.quantaloids.items():
        record("quantaloid", n, validate_quantaloid(q))
    for n, h in ws.homomorphisms.items():
        record("homomorphism", n, validate_homomorphism(h))
    for n, c in ws.categories.items():
        record("category", n, validate_category(c))
    for n, f in ws.functors.items():
        record("functor", n, validate_functor(f))
    for n, d in ws.distributors.items():
        record("distributor", n, validate_distributor(d))
    for n, m in ws.modules.items():
        record("module", n, validate_module(m))
    for n, s in ws.sheaves.items():
        record("sheaf", n, validate_sheaf(s))
    for n, o in ws.orders.items():
        record("order", n, validate_ordered_sheaf(o))
    return report


def cmd_validate(args: argparse.Namespace) -> int:
    ws = load_path(args.file)
    return _emit_report(validate_workspace(ws))


# construct ----------------------------------------------------------------------

def _base_name(ws: Workspace, kind: str, name: str) -> tuple[str, dict]:
    """Name of the base quantaloid and the document entry that defines it."""
    if kind == "category":
        qn, is_idm = ws.category_base[name]
        q = ws.quantaloids[qn]
        return (f"idm_{qn}", {f"idm_{qn}": idm(q)}) if is_idm else (qn, {qn: q})
    qn = ws.module_base[name]
    return qn, {qn: ws.quantaloids[qn]}


def _lookup(ws: Workspace, table: str, name: str, verb: str) -> object:
    items = getattr(ws, table)
    if name not in items:
        raise MissingFixture(f"construct {verb}", f"a {table[:-1]} named {name!r}")
    return items[name]


def construct(ws: Workspace, verb: str, name: str) -> dict:
    if verb == "idm":
        q = _lookup(ws, "quantaloids", name, verb)
        return document(quantaloids={f"idm_{name}": idm(q)})
    if verb == "centre":
        q = _lookup(ws, "quantaloids", name, verb)
        return document(quantaloids={f"Z_{name}": centre(q).quantale})
    if verb == "suspension":
        if name in ws.locales:
            lat = ws.locales[name].frame
        else:
            lat = _lookup(ws, "lattices", name, verb)
        return document(quantaloids={f"S_{name}": locale_suspension(lat)})
    if verb in ("presheaf-category", "cauchy-completion", "module-of-category"):
        c = _lookup(ws, "categories", name, verb)
        bn, qs = _base_name(ws, "category", name)
        if verb == "presheaf-category":
            return document(quantaloids=qs, categories={f"P_{name}": (presheaf_category(c), bn)})
        if verb == "cauchy-completion":
            cc, emb = cauchy_completion(c)
            return document(quantaloids=qs,
                            categories={name: (c, bn), f"cauchy_{name}": (cc, bn)},
                            functors={f"cauchy_{name}_embedding": (emb, name, f"cauchy_{name}")})
        return document(quantaloids=qs, modules={f"M_{name}": (module_of_category(c), bn)})
    if verb == "category-of-module":
        m = _lookup(ws, "modules", name, verb)
        bn, qs = _base_name(ws, "module", name)
        return document(quantaloids=qs, categories={f"A_{name}": (category_of_module(m), bn)})
    raise MissingFixture(f"construct {verb}", "a known verb")


VERBS = ("idm", "presheaf-category", "cauchy-completion", "category-of-module",
         "module-of-category", "centre", "suspension")


def cmd_construct(args: argparse.Namespace) -> int:
    ws = load_path(args.file)
    text = dumps(construct(ws, args.verb, args.name))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# check ------------------------------------------------------------------------------

def cmd_check(args: argparse.Namespace) -> int:
    ws = load_path(args.file)
    report = run_suite(args.suite, ws, Caps(args.max_hom, args.max_obj))
    return _emit_report(report)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qk", description="Finite quantaloid-enriched order theory.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("validate", help="run every structural validator on a workspace")
    v.add_argument("file")
    v.set_defaults(run=cmd_validate)
    c = sub.add_parser("construct", help="build a structure and print it as a document")
    c.add_argument("verb", choices=VERBS)
    c.add_argument("name")
    c.add_argument("file", nargs="?", default=DEFAULT_WORKSPACE)
    c.add_argument("--out")
    c.set_defaults(run=cmd_construct)
    k = sub.add_parser("check", help="run a theorem suite over a workspace")
    k.add_argument("suite", choices=sorted(SUITES))
    k.add_argument("file")
    k.add_argument("--max-hom", type=int, default=Caps.max_hom)
    k.add_argument("--max-obj", type=int, default=Caps.max_obj)
    k.set_defaults(run=cmd_check)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    handlers: dict[type, tuple[int, str]] = {
        ParseError: (EXIT_PARSE, "parse error"),
        MissingFixture: (EXIT_MISSING, "missing fixture"),
    }
    run: Callable[[argparse.Namespace], int] = args.run
    try:
        return run(args)
    except QKError as exc:
        code, label = next(((c, lbl) for t, (c, lbl) in handlers.items() if isinstance(exc, t)),
                           (EXIT_FAIL, type(exc).__name__))
        print(f"{label}: {exc}", file=sys.stderr)
        witness = getattr(exc, "witness", None)
        if witness is not None:
            print(f"witness: {witness if not hasattr(witness, 'name') else witness.name()}",
                  file=sys.stderr)
        return code


if __name__ == "__main__":
    raise SystemExit(main())
