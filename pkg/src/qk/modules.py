"""Finite Q-modules, their morphisms, and the passage to and from cocomplete
Q-categories.

A module ``M`` assigns a suplattice ``M(X)`` to every object and, contravariantly,
a supmorphism ``act(f): M(B) -> M(A)`` to every arrow ``f: A -> B``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator, Sequence

from .enriched import QCategory, QFunctor, validate_functor
from .errors import ConversionError, InputError, PreconditionError
from .presheaf import (Presheaf, all_presheaves, is_cocomplete, presheaf_map,
                       supremum)
from .quantaloid import Quantaloid, idm_completion
from .report import Report, Violation, ViolationLog
from .suplattice import FiniteSuplattice, is_supmorphism, order_isomorphisms

Table = tuple[int, ...]


@dataclass(frozen=True)
class QModule:
    base: Quantaloid
    carriers: tuple[FiniteSuplattice, ...]
    # acts[A][B][f] is the table of act(f): carrier(B) -> carrier(A)
    acts: tuple[tuple[tuple[Table, ...], ...], ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        q = self.base
        n = len(q)
        if len(self.carriers) != n or len(self.acts) != n:
            raise InputError("module needs one carrier per object")
        for a, b in product(range(n), repeat=2):
            tables = self.acts[a][b]
            if len(tables) != len(q.homs[a][b]):
                raise InputError(
                    f"missing action tables for arrows {q.objects[a]} -> {q.objects[b]}")
            for t in tables:
                if len(t) != len(self.carriers[b]) or any(
                        not 0 <= y < len(self.carriers[a]) for y in t):
                    raise InputError("action table has the wrong shape")

    @classmethod
    def build(cls, base: Quantaloid, carriers: Sequence[FiniteSuplattice],
              act: Callable[[int, int, int, int], int]) -> "QModule":
        """``act(A, B, f, y)`` gives ``act(f)(y)`` for ``f: A -> B``."""
        n = len(base)
        acts = tuple(tuple(tuple(
            tuple(act(a, b, f, y) for y in carriers[b].elements)
            for f in base.homs[a][b].elements) for b in range(n)) for a in range(n))
        return cls(base, tuple(carriers), acts)

    def act(self, a: int, b: int, f: int, y: int) -> int:
        return self.acts[a][b][f][y]


def validate_module(m: QModule) -> list[Violation]:
    q = m.base
    log = ViolationLog()
    objs = q.objects
    for a, b in product(q.object_ids, repeat=2):
        hab = q.homs[a][b]
        ca, cb = m.carriers[a], m.carriers[b]
        for f in hab.elements:
            ok, wit = is_supmorphism(cb, ca, m.acts[a][b][f])
            if not ok:
                log.add("action is a supmorphism",
                        (objs[a], objs[b], hab.names[f], [cb.names[y] for y in wit]))
        for y in cb.elements:
            if m.acts[a][b][hab.bottom][y] != ca.bottom:
                log.add("empty join of arrows acts as bottom",
                        (objs[a], objs[b], cb.names[y]))
            for f1 in hab.elements:
                for f2 in hab.elements:
                    if f2 > f1 and m.acts[a][b][hab.join2(f1, f2)][y] != ca.join2(
                            m.acts[a][b][f1][y], m.acts[a][b][f2][y]):
                        log.add("binary join of arrows acts pointwise",
                                (objs[a], objs[b], hab.names[f1], hab.names[f2],
                                 cb.names[y]))
    for a in q.object_ids:
        t = m.acts[a][a][q.identities[a]]
        for y in m.carriers[a].elements:
            if t[y] != y:
                log.add("identity acts as identity", (objs[a], m.carriers[a].names[y]))
    for a, b, c in product(q.object_ids, repeat=3):
        for g in q.homs[b][c].elements:
            for f in q.homs[a][b].elements:
                gf = q.comp[a][b][c][g][f]
                tg, tf, tgf = m.acts[b][c][g], m.acts[a][b][f], m.acts[a][c][gf]
                for z in m.carriers[c].elements:
                    if tgf[z] != tf[tg[z]]:
                        log.add("contravariant functoriality",
                                (objs[a], objs[b], objs[c], q.homs[b][c].names[g],
                                 q.homs[a][b].names[f], m.carriers[c].names[z]))
    return log.result()


def representable_module(q: Quantaloid, a: int) -> QModule:
    """``Q(-, A)``: carrier ``hom(X, A)`` and ``act(f)(y) = y o f``."""
    return QModule.build(q, [q.homs[x][a] for x in q.object_ids],
                         lambda x, y, f, g: q.comp[x][y][a][g][f])


def zero_module(q: Quantaloid) -> QModule:
    one = FiniteSuplattice(("0",), ((True,),))
    return QModule.build(q, [one] * len(q), lambda a, b, f, y: 0)


# morphisms -------------------------------------------------------------------

@dataclass(frozen=True)
class ModuleMorphism:
    source: QModule
    target: QModule
    components: tuple[Table, ...]

    @classmethod
    def identity(cls, m: QModule) -> "ModuleMorphism":
        return cls(m, m, tuple(tuple(c.elements) for c in m.carriers))

    def then(self, other: "ModuleMorphism") -> "ModuleMorphism":
        return ModuleMorphism(self.source, other.target, tuple(
            tuple(other.components[a][y] for y in comp)
            for a, comp in enumerate(self.components)))


def validate_module_morphism(h: ModuleMorphism) -> list[Violation]:
    m, n = h.source, h.target
    q = m.base
    log = ViolationLog()
    for a in q.object_ids:
        ok, wit = is_supmorphism(m.carriers[a], n.carriers[a], h.components[a])
        if not ok:
            log.add("component is a supmorphism", (q.objects[a], wit))
    for a, b in product(q.object_ids, repeat=2):
        for f in q.homs[a][b].elements:
            for y in m.carriers[b].elements:
                lhs = h.components[a][m.acts[a][b][f][y]]
                rhs = n.acts[a][b][f][h.components[b][y]]
                if lhs != rhs:
                    log.add("naturality",
                            (q.objects[a], q.objects[b], q.homs[a][b].names[f],
                             m.carriers[b].names[y]))
    return log.result()


def morphism_leq(h: ModuleMorphism, k: ModuleMorphism) -> bool:
    return all(h.target.carriers[a].leq(x, y)
               for a, (ch, ck) in enumerate(zip(h.components, k.components))
               for x, y in zip(ch, ck))


def find_module_isomorphism(m: QModule, n: QModule) -> tuple[Table, ...] | None:
    """A natural family of lattice isomorphisms ``M -> N``, or None."""
    q = m.base
    if n.base != q:
        return None
    k = len(q)
    chosen: list[Table] = []

    def natural(upto: int) -> bool:
        for a in range(upto + 1):
            for x, y in ((a, upto), (upto, a)):
                for f in q.homs[x][y].elements:
                    tm, tn = m.acts[x][y][f], n.acts[x][y][f]
                    for e in m.carriers[y].elements:
                        if chosen[x][tm[e]] != tn[chosen[y][e]]:
                            return False
        return True

    def extend(a: int) -> Iterator[tuple[Table, ...]]:
        if a == k:
            yield tuple(chosen)
            return
        for iso in order_isomorphisms(m.carriers[a], n.carriers[a]):
            chosen.append(iso)
            if natural(a):
                yield from extend(a + 1)
            chosen.pop()

    return next(extend(0), None)


# module <-> cocomplete category ------------------------------------------------

def _tag(q: Quantaloid, x: int, name: str) -> str:
    return name if len(q) == 1 else f"{q.objects[x]}:{name}"


def module_objects(m: QModule) -> list[tuple[int, int]]:
    """Objects of the associated category as ``(X, x)`` pairs, in order."""
    return [(x, e) for x in m.base.object_ids for e in m.carriers[x].elements]


def category_of_module(m: QModule) -> QCategory:
    """``A_M``: ``hom(y, x) = V{f: X -> Y | act(f)(y) <= x}``."""
    if "category" in m._cache:
        return m._cache["category"]
    q = m.base
    objs = module_objects(m)

    def hom(i: int, j: int) -> int:
        (y_obj, y), (x_obj, x) = objs[i], objs[j]
        h = q.homs[x_obj][y_obj]
        tables = m.acts[x_obj][y_obj]
        cx = m.carriers[x_obj]
        return h.join(f for f in h.elements if cx.leq(tables[f][y], x))

    cat = QCategory.build(q, [_tag(q, x, m.carriers[x].names[e]) for x, e in objs],
                          [x for x, _ in objs], hom)
    m._cache["category"] = cat
    return cat


def module_object_index(m: QModule, x: int, e: int) -> int:
    return sum(len(m.carriers[y]) for y in range(x)) + e


def module_of_category(a_cat: QCategory) -> QModule:
    """Recover a module from a cocomplete category with skeletal fibres.

    ``carrier(X)`` is the fibre of type ``X`` under the underlying order and
    ``act(f)(y)`` is the supremum of the presheaf ``a |-> A(a, y) o f``.
    """
    if not is_cocomplete(a_cat):
        raise PreconditionError("category is not cocomplete",
                                is_cocomplete(a_cat).witness)
    skeletal, pair = a_cat.is_skeletal()
    if not skeletal:
        raise PreconditionError(f"objects {pair[0]!r} and {pair[1]!r} are isomorphic", pair)
    q = a_cat.base
    fibres = [a_cat.objects_of_type(x) for x in q.object_ids]
    carriers = [FiniteSuplattice.from_relation(
        [a_cat.objects[a] for a in fib],
        lambda i, j, fib=fib: a_cat.below(fib[i], fib[j])) for fib in fibres]
    pos = {a: i for fib in fibres for i, a in enumerate(fib)}

    def act(x: int, yb: int, f: int, yi: int) -> int:
        y = fibres[yb][yi]
        vals = tuple(q.comp[x][yb][a_cat.types[a]][a_cat.homs[a][y]][f]
                     for a in a_cat.object_ids)
        return pos[supremum(Presheaf(a_cat, x, vals))]

    return QModule.build(q, carriers, act)


def find_category_isomorphism(a_cat: QCategory, b_cat: QCategory) -> tuple[int, ...] | None:
    """A type- and hom-preserving bijection of objects, or None."""
    if a_cat.base != b_cat.base or len(a_cat) != len(b_cat):
        return None
    n = len(a_cat)
    mapping = [-1] * n
    used = [False] * n

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(mapping)
            return
        for j in range(n):
            if used[j] or b_cat.types[j] != a_cat.types[i]:
                continue
            mapping[i] = j
            if all(a_cat.homs[i][k] == b_cat.homs[j][mapping[k]]
                   and a_cat.homs[k][i] == b_cat.homs[mapping[k]][j] for k in range(i + 1)):
                used[j] = True
                yield from extend(i + 1)
                used[j] = False
            mapping[i] = -1

    return next(extend(0), None)


# morphisms <-> cocontinuous functors --------------------------------------------

def functor_of_morphism(h: ModuleMorphism) -> QFunctor:
    m, n = h.source, h.target
    mapping = tuple(module_object_index(n, x, h.components[x][e])
                    for x, e in module_objects(m))
    return QFunctor(category_of_module(m), category_of_module(n), mapping)


def cocontinuity_witness(g: QFunctor) -> Presheaf | None:
    """A presheaf whose supremum ``g`` fails to preserve, or None."""
    a_cat, b_cat = g.source, g.target
    pg = presheaf_map(g)
    sup_a = is_cocomplete(a_cat).sup
    sup_b = is_cocomplete(b_cat).sup
    for i, phi in enumerate(all_presheaves(a_cat)):
        lhs = g.mapping[sup_a.mapping[i]]
        rhs = sup_b.mapping[pg.mapping[i]]
        if not (b_cat.isomorphic(lhs, rhs)):
            return phi
    return None


def morphism_of_functor(g: QFunctor) -> ModuleMorphism:
    """Inverse direction: a cocontinuous functor between cocomplete skeletal
    categories becomes a morphism between the extracted modules."""
    a_cat, b_cat = g.source, g.target
    bad = validate_functor(g)
    if bad:
        raise ConversionError(f"not a functor: {bad[0].axiom}", bad[0].witness)
    if not is_cocomplete(a_cat) or not is_cocomplete(b_cat):
        raise ConversionError("source and target must be cocomplete")
    wit = cocontinuity_witness(g)
    if wit is not None:
        raise ConversionError(f"functor does not preserve the supremum of {wit.name()}", wit)
    m, n = module_of_category(a_cat), module_of_category(b_cat)
    q = a_cat.base
    comps = []
    for x in q.object_ids:
        fa, fb = a_cat.objects_of_type(x), b_cat.objects_of_type(x)
        pos = {b: i for i, b in enumerate(fb)}
        comps.append(tuple(pos[g.mapping[a]] for a in fa))
    return ModuleMorphism(m, n, tuple(comps))


# split-idempotent extension and restriction ---------------------------------------

def extend_to_idm(m: QModule) -> QModule:
    """Extend ``M`` to ``Idm(Q)`` with ``carrier(e) = fixpoints of act(e)``."""
    comp = idm_completion(m.base)
    q, iq = m.base, comp.quantaloid
    fixed = []
    carriers = []
    for a, e in comp.carriers:
        t = m.acts[a][a][e]
        pts = [y for y in m.carriers[a].elements if t[y] == y]
        fixed.append(pts)
        carriers.append(m.carriers[a].sub(pts))
    pos = [{y: i for i, y in enumerate(pts)} for pts in fixed]

    def act(k: int, l: int, b: int, yi: int) -> int:
        a, c = comp.carriers[k][0], comp.carriers[l][0]
        f = comp.members[k][l][b]
        return pos[k][m.acts[a][c][f][fixed[l][yi]]]

    return QModule.build(iq, carriers, act)


def restrict_along_embedding(m_idm: QModule, q: Quantaloid) -> QModule:
    comp = idm_completion(q)
    emb = comp.embedding()
    return QModule(q, tuple(m_idm.carriers[emb.object_map[a]] for a in q.object_ids),
                   tuple(tuple(tuple(
                       m_idm.acts[emb.object_map[a]][emb.object_map[b]][emb.arrow_maps[a][b][f]]
                       for f in q.homs[a][b].elements) for b in q.object_ids)
                       for a in q.object_ids))


def _round_trips(m: QModule, label: str, report: Report) -> None:
    cat = category_of_module(m)
    report.add(f"{label}: associated category is cocomplete", bool(is_cocomplete(cat)),
               None if is_cocomplete(cat) else is_cocomplete(cat).witness.name())
    if not is_cocomplete(cat):
        return
    back = module_of_category(cat)
    report.add(f"{label}: module -> category -> module is an isomorphism",
               find_module_isomorphism(m, back) is not None)
    report.add(f"{label}: category -> module -> category is an isomorphism",
               find_category_isomorphism(cat, category_of_module(back)) is not None)
    ident = ModuleMorphism.identity(m)
    g = functor_of_morphism(ident)
    report.add(f"{label}: identity morphism <-> identity functor",
               g.mapping == tuple(cat.object_ids)
               and morphism_of_functor(g).components == ident.components)


def check_module_round_trips(q: Quantaloid, samples: dict[str, QModule]) -> Report:
    """Instance-level round trips between modules and cocomplete categories,
    over ``Q`` and over ``Idm(Q)``."""
    report = Report("corollary3")
    for name, m in samples.items():
        bad = validate_module(m)
        if bad:
            report.reject(name, f"invalid module: {bad[0].axiom} at {bad[0].witness}")
            continue
        ext = extend_to_idm(m)
        bad = validate_module(ext)
        report.add(f"{name}: extension to Idm(Q) is a module", not bad,
                   bad[0].witness if bad else None)
        report.add(f"{name}: extension restricts back to M",
                   restrict_along_embedding(ext, q) == m)
        _round_trips(m, f"{name} over Q", report)
        _round_trips(ext, f"{name} over Idm(Q)", report)
    return report
