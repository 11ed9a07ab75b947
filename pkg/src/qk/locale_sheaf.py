"""Finite locales, sheaves with internal orders, their categories over
``Idm(Omega)``, and the downset/presheaf correspondence."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import chain, combinations, product
from typing import Iterator, Mapping, Sequence

from .cauchy import make_order
from .enriched import QCategory, validate_category
from .errors import CertificationError, InputError
from .modules import QModule
from .presheaf import Presheaf, enumerate_presheaves, is_cocomplete, representable
from .quantaloid import Quantaloid, idm, idm_completion, locale_suspension
from .report import Report, Violation, ViolationLog
from .suplattice import FiniteSuplattice


def _subsets(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


@dataclass(frozen=True)
class FiniteLocale:
    frame: FiniteSuplattice
    quantaloid: Quantaloid = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        f = self.frame
        for a, b, c in product(f.elements, repeat=3):
            if f.meet2(a, f.join2(b, c)) != f.join2(f.meet2(a, b), f.meet2(a, c)):
                raise InputError(
                    f"not distributive at ({f.names[a]}, {f.names[b]}, {f.names[c]})")
        object.__setattr__(self, "quantaloid", locale_suspension(f))

    @property
    def idm(self) -> Quantaloid:
        return idm(self.quantaloid)

    def covers(self, v: int) -> Iterator[tuple[int, ...]]:
        """Every family of elements whose join is ``v`` (the empty one for bottom)."""
        below = self.frame.down(v)
        for s in _subsets(below):
            if self.frame.join(s) == v:
                yield s

    def arrow(self, k: int, l: int, w: int) -> int:
        """Index in ``Idm(Omega)``'s ``hom(k, l)`` of the frame element ``w``."""
        return idm_completion(self.quantaloid).members[k][l].index(w)

    def element(self, k: int, l: int, i: int) -> int:
        return idm_completion(self.quantaloid).members[k][l][i]


@dataclass(frozen=True)
class FiniteSheaf:
    """``sections[v]`` names the sections over ``v``; ``restrict[v][u]`` is
    the restriction table ``F(v) -> F(u)`` when ``u <= v`` and None otherwise."""

    locale: FiniteLocale
    sections: tuple[tuple[str, ...], ...]
    restrict: tuple[tuple[tuple[int, ...] | None, ...], ...]

    def __post_init__(self) -> None:
        f = self.locale.frame
        if len(self.sections) != len(f) or len(self.restrict) != len(f):
            raise InputError("sheaf data must cover every frame element")
        for v, u in product(f.elements, repeat=2):
            t = self.restrict[v][u]
            if f.leq(u, v) != (t is not None):
                raise InputError(f"restriction {f.names[v]}->{f.names[u]} present iff u <= v")
            if t is not None and (len(t) != len(self.sections[v])
                                  or any(not 0 <= i < len(self.sections[u]) for i in t)):
                raise InputError(f"bad restriction table {f.names[v]}->{f.names[u]}")

    @classmethod
    def build(cls, locale: FiniteLocale, sections: Mapping[str, Sequence[str]],
              restrict: Mapping[tuple[str, str], Mapping[str, str]]) -> "FiniteSheaf":
        """Named form. Identity restrictions may be omitted, as may the
        restrictions to bottom when it carries a single section."""
        f = locale.frame
        secs = tuple(tuple(sections.get(n, ())) for n in f.names)
        table = []
        for v in f.elements:
            row = []
            for u in f.elements:
                if not f.leq(u, v):
                    row.append(None)
                elif u == v or not secs[v]:
                    row.append(tuple(range(len(secs[v]))))
                elif (f.names[v], f.names[u]) in restrict:
                    m = restrict[(f.names[v], f.names[u])]
                    row.append(tuple(secs[u].index(m[s]) for s in secs[v]))
                elif len(secs[u]) == 1:
                    row.append(tuple(0 for _ in secs[v]))
                else:
                    raise InputError(f"missing restriction {f.names[v]}->{f.names[u]}")
            table.append(tuple(row))
        return cls(locale, secs, tuple(table))

    @property
    def frame(self) -> FiniteSuplattice:
        return self.locale.frame

    def res(self, v: int, u: int, x: int) -> int:
        return self.restrict[v][u][x]

    def all_sections(self) -> list[tuple[int, int]]:
        return [(v, x) for v in self.frame.elements for x in range(len(self.sections[v]))]

    def label(self, v: int, x: int) -> str:
        return f"{self.sections[v][x]}@{self.frame.names[v]}"

    def matching_families(self, cover: Sequence[int]) -> Iterator[tuple[int, ...]]:
        f = self.frame
        for fam in product(*(range(len(self.sections[u])) for u in cover)):
            if all(self.res(a, f.meet2(a, b), s) == self.res(b, f.meet2(a, b), t)
                   for (a, s), (b, t) in combinations(zip(cover, fam), 2)):
                yield fam


def validate_sheaf(sh: FiniteSheaf) -> list[Violation]:
    f = sh.frame
    log = ViolationLog()
    for v in f.elements:
        if sh.restrict[v][v] != tuple(range(len(sh.sections[v]))):
            log.add("identity restriction", f.names[v])
    for v, u, w in product(f.elements, repeat=3):
        if f.leq(w, u) and f.leq(u, v):
            for x in range(len(sh.sections[v])):
                if sh.res(u, w, sh.res(v, u, x)) != sh.res(v, w, x):
                    log.add("functoriality", (f.names[v], f.names[u], f.names[w], sh.sections[v][x]))
    for v in f.elements:
        for cover in sh.locale.covers(v):
            for fam in sh.matching_families(cover):
                glue = [x for x in range(len(sh.sections[v]))
                        if all(sh.res(v, u, x) == s for u, s in zip(cover, fam))]
                if len(glue) != 1:
                    log.add("gluing", (f.names[v], [f.names[u] for u in cover],
                                       [sh.sections[u][s] for u, s in zip(cover, fam)]),
                            f"{len(glue)} amalgamations")
    return log.result()


@dataclass(frozen=True)
class OrderedSheaf:
    """``leq[v][x][y]`` says ``x <=_v y``; ``antisymmetric`` selects the strict reading."""

    sheaf: FiniteSheaf
    leq: tuple[tuple[tuple[bool, ...], ...], ...]
    antisymmetric: bool = True

    @classmethod
    def build(cls, sheaf: FiniteSheaf, relations: Mapping[str, Sequence[tuple[str, str]]],
              antisymmetric: bool = True) -> "OrderedSheaf":
        """``relations[v]`` lists generating pairs ``x <= y``; reflexive-transitive closure is taken."""
        f = sheaf.frame
        rows = []
        for v in f.elements:
            secs = sheaf.sections[v]
            n = len(secs)
            m = [[i == j for j in range(n)] for i in range(n)]
            for x, y in relations.get(f.names[v], ()):
                m[secs.index(x)][secs.index(y)] = True
            for k, i, j in product(range(n), repeat=3):
                if m[i][k] and m[k][j]:
                    m[i][j] = True
            rows.append(tuple(tuple(r) for r in m))
        return cls(sheaf, tuple(rows), antisymmetric)

    def with_reading(self, antisymmetric: bool) -> "OrderedSheaf":
        return OrderedSheaf(self.sheaf, self.leq, antisymmetric)

    def le(self, v: int, x: int, y: int) -> bool:
        return self.leq[v][x][y]


def validate_ordered_sheaf(o: OrderedSheaf) -> list[Violation]:
    sh = o.sheaf
    f = sh.frame
    log = ViolationLog()
    for v in f.elements:
        if len(o.leq[v]) != len(sh.sections[v]):
            raise InputError(f"order at {f.names[v]} has the wrong size")
    for v in f.elements:
        n = range(len(sh.sections[v]))
        for x in n:
            if not o.le(v, x, x):
                log.add("reflexivity", sh.label(v, x))
        for x, y, z in product(n, repeat=3):
            if o.le(v, x, y) and o.le(v, y, z) and not o.le(v, x, z):
                log.add("transitivity", (sh.label(v, x), sh.label(v, y), sh.label(v, z)))
        if o.antisymmetric:
            for x, y in combinations(n, 2):
                if o.le(v, x, y) and o.le(v, y, x):
                    log.add("antisymmetry", (sh.label(v, x), sh.label(v, y)))
    for v, u in product(f.elements, repeat=2):
        if f.leq(u, v):
            for x, y in product(range(len(sh.sections[v])), repeat=2):
                if o.le(v, x, y) and not o.le(u, sh.res(v, u, x), sh.res(v, u, y)):
                    log.add("stability", (sh.label(v, x), sh.label(v, y), f.names[u]))
    for v in f.elements:
        for cover in sh.locale.covers(v):
            for x, y in product(range(len(sh.sections[v])), repeat=2):
                if (not o.le(v, x, y)
                        and all(o.le(u, sh.res(v, u, x), sh.res(v, u, y)) for u in cover)):
                    log.add("locality", (sh.label(v, x), sh.label(v, y),
                                         [f.names[u] for u in cover]))
    return log.result()


def _require_valid(o: OrderedSheaf) -> None:
    bad = validate_sheaf(o.sheaf) or validate_ordered_sheaf(o)
    if bad:
        raise InputError(f"invalid ordered sheaf: {bad[0].axiom} at {bad[0].witness}")


# the associated Idm(Omega)-category ----------------------------------------------

def level_hom(o: OrderedSheaf, y: tuple[int, int], x: tuple[int, int]) -> int:
    """Greatest level (as a frame element) at which ``y <= x``."""
    sh = o.sheaf
    f = sh.frame
    (ty, yi), (tx, xi) = y, x
    levels = [w for w in f.down(f.meet2(tx, ty))
              if o.le(w, sh.res(ty, w, yi), sh.res(tx, w, xi))]
    return f.join(levels)


def category_of_ordered_sheaf(o: OrderedSheaf) -> QCategory:
    _require_valid(o)
    sh = o.sheaf
    loc = sh.locale
    objs = sh.all_sections()
    return QCategory.build(
        loc.idm, [sh.label(v, x) for v, x in objs], [v for v, _ in objs],
        lambda i, j: loc.arrow(objs[j][0], objs[i][0], level_hom(o, objs[i], objs[j])))


def hom_set_is_principal(o: OrderedSheaf) -> tuple[bool, tuple[str, str] | None]:
    """The set of levels where ``y <= x`` is the downset of its join."""
    sh = o.sheaf
    f = sh.frame
    for y, x in product(sh.all_sections(), repeat=2):
        levels = {w for w in f.down(f.meet2(x[0], y[0]))
                  if o.le(w, sh.res(y[0], w, y[1]), sh.res(x[0], w, x[1]))}
        if levels != set(f.down(f.join(levels))):
            return False, (sh.label(*y), sh.label(*x))
    return True, None


# downsets and presheaves -----------------------------------------------------------

@dataclass(frozen=True)
class Downset:
    """``member[v]`` is a frozenset of section indices over ``v`` (empty unless ``v <= level``)."""

    over: OrderedSheaf = field(compare=False, repr=False)
    level: int
    member: tuple[frozenset[int], ...]

    def describe(self) -> str:
        sh = self.over.sheaf
        parts = [sh.label(v, x) for v in sh.frame.elements for x in sorted(self.member[v])]
        return f"{sh.frame.names[self.level]}{{{','.join(parts)}}}"


def validate_downset(s: Downset) -> list[Violation]:
    o = s.over
    sh = o.sheaf
    f = sh.frame
    log = ViolationLog()
    for v in f.elements:
        if s.member[v] and not f.leq(v, s.level):
            log.add("inside truncation", f.names[v])
        for x in s.member[v]:
            for u in f.down(v):
                if sh.res(v, u, x) not in s.member[u]:
                    log.add("closed under restriction", (sh.label(v, x), f.names[u]))
            for y in range(len(sh.sections[v])):
                if o.le(v, y, x) and y not in s.member[v]:
                    log.add("downclosed", (sh.label(v, y), sh.label(v, x)))
    for v in f.down(s.level):
        for cover in sh.locale.covers(v):
            for x in range(len(sh.sections[v])):
                if x not in s.member[v] and all(sh.res(v, u, x) in s.member[u] for u in cover):
                    log.add("closed under gluing", (sh.label(v, x), [f.names[u] for u in cover]))
    return log.result()


def enumerate_downsets(o: OrderedSheaf, u: int) -> list[Downset]:
    sh = o.sheaf
    f = sh.frame
    choices = [list(_subsets(range(len(sh.sections[v])))) if f.leq(v, u) else [()]
               for v in f.elements]
    out = []
    for pick in product(*choices):
        d = Downset(o, u, tuple(frozenset(p) for p in pick))
        if not validate_downset(d):
            out.append(d)
    return out


def principal_downset(o: OrderedSheaf, x: tuple[int, int]) -> Downset:
    sh = o.sheaf
    f = sh.frame
    tx, xi = x
    return Downset(o, tx, tuple(
        frozenset(y for y in range(len(sh.sections[v])) if o.le(v, y, sh.res(tx, v, xi)))
        if f.leq(v, tx) else frozenset() for v in f.elements))


def downset_to_presheaf(s: Downset, cat: QCategory | None = None) -> Presheaf:
    """``phi(x) = V{v <= tx | x|v in S(v)}``."""
    o = s.over
    sh = o.sheaf
    f = sh.frame
    cat = cat or category_of_ordered_sheaf(o)
    vals = []
    for tx, xi in sh.all_sections():
        w = f.join(v for v in f.down(tx) if sh.res(tx, v, xi) in s.member[v])
        vals.append(sh.locale.arrow(s.level, tx, w))
    return Presheaf(cat, s.level, tuple(vals))


def presheaf_to_downset(o: OrderedSheaf, phi: Presheaf) -> Downset:
    """``S(v) = {x in F(v) | phi(x) = v}``."""
    sh = o.sheaf
    loc = sh.locale
    member = [set() for _ in sh.frame.elements]
    for a, (tx, xi) in enumerate(sh.all_sections()):
        if loc.element(phi.type, tx, phi.values[a]) == tx:
            member[tx].add(xi)
    return Downset(o, phi.type, tuple(frozenset(m) for m in member))


def check_example(o: OrderedSheaf) -> Report:
    """Bijection of downsets and presheaves; principal to representable."""
    f = o.sheaf.frame
    report = Report(f"example ({'strict' if o.antisymmetric else 'preorder'} reading)")
    cat = category_of_ordered_sheaf(o)
    ok, pair = hom_set_is_principal(o)
    report.add("level sets are principal", ok, pair)
    bad_cat = validate_category(cat)
    report.add("associated category is valid", not bad_cat, bad_cat[:1] or None)
    report.add("hom(x, x) = tx",
               all(cat.homs[a][a] == cat.base.identities[cat.types[a]] for a in cat.object_ids))
    try:
        make_order(o.sheaf.locale.quantaloid, cat)
        report.add("associated category is a Q-order", True)
    except CertificationError as exc:
        report.add("associated category is a Q-order", False, exc.witness.name(), str(exc))
    for u in f.elements:
        downs = enumerate_downsets(o, u)
        pres = enumerate_presheaves(cat, u)
        report.add(f"level {f.names[u]}: equal counts", len(downs) == len(pres),
                   detail=f"{len(downs)} downsets, {len(pres)} presheaves")
        bad_d = [d.describe() for d in downs
                 if presheaf_to_downset(o, downset_to_presheaf(d, cat)) != d]
        report.add(f"level {f.names[u]}: downset -> presheaf -> downset is identity",
                   not bad_d, bad_d[:1] or None)
        bad_p = [p.name() for p in pres
                 if downset_to_presheaf(presheaf_to_downset(o, p), cat).values != p.values]
        report.add(f"level {f.names[u]}: presheaf -> downset -> presheaf is identity",
                   not bad_p, bad_p[:1] or None)
        images = {downset_to_presheaf(d, cat).values for d in downs}
        report.add(f"level {f.names[u]}: images are presheaves",
                   images <= {p.values for p in pres})
    sh = o.sheaf
    bad = [sh.label(*x) for a, x in enumerate(sh.all_sections())
           if downset_to_presheaf(principal_downset(o, x), cat).values
           != representable(cat, a).values]
    report.add("principal downsets go to representables", not bad, bad[:1] or None)
    return report


# the suplattice criterion -----------------------------------------------------------

def _contained(o: OrderedSheaf, s: Downset, w: int, x: int) -> bool:
    """``w |- S subset of down(x)`` for ``x in F(w)``."""
    sh = o.sheaf
    return all(o.le(v, y, sh.res(w, v, x))
               for v in sh.frame.down(w) for y in s.member[v])


def downset_sup(o: OrderedSheaf, s: Downset) -> int | None:
    """A section over ``level`` that is a left-adjoint value at ``s``: for every
    ``w <= level`` and ``x in F(w)``, ``sup|w <= x`` iff ``S|w`` lies below ``x``."""
    sh = o.sheaf
    f = sh.frame
    u = s.level
    for c in range(len(sh.sections[u])):
        if all(o.le(w, sh.res(u, w, c), x) == _contained(o, s, w, x)
               for w in f.down(u) for x in range(len(sh.sections[w]))):
            return c
    return None


def _truncate(s: Downset, w: int) -> Downset:
    f = s.over.sheaf.frame
    return Downset(s.over, w, tuple(m if f.leq(v, w) else frozenset()
                                    for v, m in enumerate(s.member)))


def levelwise_sup(o: OrderedSheaf) -> tuple[bool, Downset | None]:
    """Criterion (a): every downset has a sup, and sups commute with restriction."""
    sh = o.sheaf
    f = sh.frame
    for u in f.elements:
        for s in enumerate_downsets(o, u):
            c = downset_sup(o, s)
            if c is None:
                return False, s
            for w in f.down(u):
                cw = downset_sup(o, _truncate(s, w))
                if cw is None or not (o.le(w, cw, sh.res(u, w, c))
                                      and o.le(w, sh.res(u, w, c), cw)):
                    return False, s
    return True, None


def check_suplattice_criterion(o: OrderedSheaf) -> Report:
    f = o.sheaf.frame
    report = Report(f"suplattice criterion ({'strict' if o.antisymmetric else 'preorder'} reading)")
    cat = category_of_ordered_sheaf(o)
    a, wa = levelwise_sup(o)
    coc = is_cocomplete(cat)
    b = bool(coc)
    report.add("(a) levelwise sup iff (b) category cocomplete", a == b,
               detail=f"(a)={a} (b)={b}")
    if not b:
        wd = presheaf_to_downset(o, coc.witness)
        report.add("witness of (b) has no sup under (a)", downset_sup(o, wd) is None,
                   (wa.describe() if wa else None, wd.describe()))
    return report


def run_both_readings(o: OrderedSheaf) -> tuple[Report, list[str]]:
    """Example and criterion checks under the strict and the preorder reading.
    A reading that rejects the input is recorded, never counted as a failure."""
    report = Report("example")
    outcomes = {}
    for strict in (True, False):
        tag = "strict" if strict else "preorder"
        oo = o.with_reading(strict)
        bad = validate_sheaf(oo.sheaf) or validate_ordered_sheaf(oo)
        if bad:
            report.reject(f"{tag} reading", f"{bad[0].axiom} at {bad[0].witness}")
            outcomes[tag] = "rejected"
            continue
        ex, cr = check_example(oo), check_suplattice_criterion(oo)
        report.extend(ex, f"[{tag}] ")
        report.extend(cr, f"[{tag}] ")
        outcomes[tag] = tuple(c.passed for c in ex.checks + cr.checks)
    divergence = [] if outcomes["strict"] == outcomes["preorder"] else [
        f"strict={'rejected' if outcomes['strict'] == 'rejected' else 'accepted'}, "
        f"preorder={'rejected' if outcomes['preorder'] == 'rejected' else 'accepted'}"]
    return report, divergence


# modules give ordered sheaves -----------------------------------------------------------

def ordered_sheaf_of_module(locale: FiniteLocale, m: QModule) -> OrderedSheaf:
    """``F(v)`` = fixpoints of ``v``, restriction is the action, order from ``M``."""
    if m.base != locale.quantaloid:
        raise InputError("module is not over the suspension of this locale")
    f = locale.frame
    car = m.carriers[0]
    acts = m.acts[0][0]
    fixed = [[y for y in car.elements if acts[v][y] == y] for v in f.elements]
    pos = [{y: i for i, y in enumerate(p)} for p in fixed]
    sections = tuple(tuple(car.names[y] for y in p) for p in fixed)
    restrict = tuple(tuple(tuple(pos[u][acts[u][y]] for y in fixed[v]) if f.leq(u, v) else None
                           for u in f.elements) for v in f.elements)
    sh = FiniteSheaf(locale, sections, restrict)
    leq = tuple(tuple(tuple(car.leq(y, z) for z in p) for y in p) for p in fixed)
    return OrderedSheaf(sh, leq, True)
