"""Theorem suites over a workspace: each gathers the eligible definitions and
runs the corresponding checks, returning one report."""

from __future__ import annotations

from typing import Callable

from .caps import Caps
from .cauchy import QOrder, make_order
from .centre_morita import check_centre_invariance, check_centre_correspondence, duplication_equivalence
from .doctrine import check_kz, check_order_adjunction, check_algebra_characterisation
from .enriched import QCategory
from .errors import CertificationError, PreconditionError, QKError, ResourceError
from .io import Workspace
from .locale_sheaf import (category_of_ordered_sheaf, ordered_sheaf_of_module,
                           run_both_readings, validate_ordered_sheaf, validate_sheaf)
from .modules import QModule, check_module_round_trips, validate_module
from .quantaloid import (Quantaloid, check_idm_extension, idm, idm_completion,
                         unsplit_idempotent, validate_homomorphism, validate_quantaloid)
from .report import Report


class MissingFixture(QKError):
    """The workspace lacks what a suite or construction needs."""

    def __init__(self, suite: str, requirement: str) -> None:
        super().__init__(f"{suite} requires {requirement}")
        self.requirement = requirement


def _require(cond: bool, suite: str, requirement: str) -> None:
    if not cond:
        raise MissingFixture(suite, requirement)


def _valid_quantaloids(ws: Workspace, report: Report) -> dict[str, Quantaloid]:
    out = {}
    for name, q in ws.quantaloids.items():
        bad = validate_quantaloid(q)
        if bad:
            report.reject(name, f"invalid quantaloid: {bad[0].axiom} at {bad[0].witness}")
        else:
            out[name] = q
    return out


def _modules_over(ws: Workspace, qname: str) -> dict[str, QModule]:
    return {n: m for n, m in ws.modules.items() if ws.module_base[n] == qname}


def _orders_over(ws: Workspace, qname: str, report: Report) -> dict[str, QOrder]:
    """Declared categories over ``Idm(q)`` and ordered sheaves on the locale ``q``
    that certify as Q-orders; the rest are recorded as rejected inputs."""
    q = ws.quantaloids[qname]
    out = {}
    for n, c in ws.categories.items():
        if ws.category_base[n] == (qname, True):
            try:
                out[n] = make_order(q, c)
            except CertificationError as exc:
                report.reject(n, str(exc))
    for n, o in ws.orders.items():
        if ws.locales.get(qname) is not None and o.sheaf.locale == ws.locales[qname]:
            bad = validate_sheaf(o.sheaf) or validate_ordered_sheaf(o)
            if bad:
                report.reject(n, f"invalid ordered sheaf: {bad[0].axiom}")
                continue
            out[n] = make_order(q, category_of_ordered_sheaf(o))
    return out


def suite_idm_extension(ws: Workspace, caps: Caps) -> Report:
    report = Report("lemma1")
    qs = _valid_quantaloids(ws, report)
    _require(bool(qs), "lemma1", "at least one valid quantaloid")
    for name, q in qs.items():
        res = check_idm_extension(q, idm(q), idm_completion(q).embedding())
        report.extend(res.report, f"{name} -> Idm({name}): ")
    for name, h in ws.homomorphisms.items():
        if validate_homomorphism(h):
            report.reject(name, "not a homomorphism")
            continue
        unsplit = unsplit_idempotent(h.target)
        if unsplit is not None:
            report.reject(name, f"target idempotent {unsplit} does not split")
            continue
        report.extend(check_idm_extension(h.source, h.target, h).report, f"{name}: ")
    return report


def suite_module_round_trips(ws: Workspace, caps: Caps) -> Report:
    report = Report("corollary3")
    _require(bool(ws.modules), "corollary3", "at least one module")
    for qname in dict.fromkeys(ws.module_base.values()):
        report.extend(check_module_round_trips(ws.quantaloids[qname], _modules_over(ws, qname)),
                      f"{qname}/")
    return report


def suite_order_adjunction(ws: Workspace, caps: Caps) -> Report:
    report = Report("lemma4")
    found = 0
    for qname in ws.quantaloids:
        for n, o in _orders_over(ws, qname, report).items():
            try:
                caps.check(o.category)
            except ResourceError as exc:
                report.reject(n, f"exceeds caps: {exc}")
                continue
            found += 1
            report.extend(check_order_adjunction(o, caps), f"{n}: ")
    _require(found > 0, "lemma4", "a Q-order within caps (a category over an idm base or an ordered sheaf)")
    return report


def suite_algebras(ws: Workspace, caps: Caps) -> Report:
    report = Report("theorem6")
    found = False
    for qname, q in ws.quantaloids.items():
        mods = _modules_over(ws, qname)
        orders = _orders_over(ws, qname, report)
        if not mods and not orders:
            continue
        found = True
        report.extend(check_algebra_characterisation(q, mods, orders), f"{qname}/")
    _require(found, "theorem6", "modules or Q-orders")
    return report


def suite_sheaf_example(ws: Workspace, caps: Caps) -> Report:
    report = Report("example3")
    items = dict(ws.orders)
    for n, m in ws.modules.items():
        loc = ws.locales.get(ws.module_base[n])
        if loc is not None and not validate_module(m):
            items[f"sheaf of {n}"] = ordered_sheaf_of_module(loc, m)
    _require(bool(items), "example3", "an ordered sheaf or a module over a locale")
    for n, o in items.items():
        sub, divergence = run_both_readings(o)
        report.extend(sub, f"{n}: ")
        report.add(f"{n}: readings compared", True,
                   detail="divergence: " + divergence[0] if divergence else "no divergence")
    return report


def suite_centres(ws: Workspace, caps: Caps) -> Report:
    report = Report("prop8")
    qs = _valid_quantaloids(ws, report)
    _require(bool(qs), "prop8", "at least one valid quantaloid")
    for name, q in qs.items():
        samples = {n: m for n, m in _modules_over(ws, name).items() if not validate_module(m)}
        report.extend(check_centre_correspondence(q, samples), f"{name}: ")
    return report


def suite_centre_invariance(ws: Workspace, caps: Caps) -> Report:
    report = Report("prop10")
    qs = _valid_quantaloids(ws, report)
    _require(bool(qs), "prop10", "at least one valid quantaloid")
    for name, (f, g) in ws.equivalences.items():
        try:
            report.extend(check_centre_invariance(f.source, f.target, (f, g)), f"{name}: ")
        except PreconditionError as exc:
            report.reject(name, str(exc))
        except QKError as exc:
            report.reject(name, str(exc))
    for name, q in qs.items():
        q2, f, g = duplication_equivalence(q, 0)
        report.extend(check_centre_invariance(q, q2, (f, g)), f"{name} vs duplicate: ")
    return report


def suite_kz(ws: Workspace, caps: Caps) -> Report:
    """Beyond the caps this raises ResourceError rather than skipping."""
    report = Report("kz")
    _require(bool(ws.categories), "kz", "at least one category")
    for n, c in ws.categories.items():
        report.extend(check_kz(c, caps), f"{n}: ")
    return report


SUITES: dict[str, Callable[[Workspace, Caps], Report]] = {
    "lemma1": suite_idm_extension,
    "corollary3": suite_module_round_trips,
    "lemma4": suite_order_adjunction,
    "theorem6": suite_algebras,
    "example3": suite_sheaf_example,
    "prop8": suite_centres,
    "prop10": suite_centre_invariance,
    "kz": suite_kz,
}


def run_suite(name: str, ws: Workspace, caps: Caps | None = None) -> Report:
    return SUITES[name](ws, caps or Caps())


__all__ = ["MissingFixture", "SUITES", "run_suite", "QCategory"]
