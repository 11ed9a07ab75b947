"""Presheaves, the presheaf category, Yoneda, weighted colimits and cocompleteness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from . import caps
from .enriched import (Distributor, QCategory, QFunctor, functor_leq, lifting,
                       represent, unit_category, validate_functor)
from .errors import ColimitMissing, InputError, ResourceError


@dataclass(frozen=True)
class Presheaf:
    """``phi: *_X -/-> A``, stored as ``values[a] = phi(a): X -> t(a)``."""

    over: QCategory = field(compare=False, repr=False)
    type: int
    values: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.values[a]

    def as_distributor(self) -> Distributor:
        star = unit_category(self.over.base, self.type)
        return Distributor(star, self.over, tuple((v,) for v in self.values))

    def value_names(self) -> list[str]:
        q, a_cat = self.over.base, self.over
        return [q.homs[self.type][a_cat.types[a]].names[v] for a, v in enumerate(self.values)]

    def name(self) -> str:
        x = self.over.base.objects[self.type]
        return f"{x}[{','.join(self.value_names())}]"


def is_presheaf(a_cat: QCategory, x: int, values) -> bool:
    q = a_cat.base
    t = a_cat.types
    for a2 in a_cat.object_ids:
        for a in a_cat.object_ids:
            c = q.comp[x][t[a]][t[a2]][a_cat.homs[a2][a]][values[a]]
            if not q.leq(x, t[a2], c, values[a2]):
                return False
    return True


def _enumerate(a_cat: QCategory, x: int) -> Iterator[tuple[int, ...]]:
    q = a_cat.base
    t = a_cat.types
    n = len(a_cat)
    vals = [0] * n

    def extend(k: int) -> Iterator[tuple[int, ...]]:
        if k == n:
            yield tuple(vals)
            return
        hom = q.homs[x][t[k]]
        lower, upper = hom.bottom, hom.top
        for a in range(k):
            lower = hom.join2(lower, q.comp[x][t[a]][t[k]][a_cat.homs[k][a]][vals[a]])
            upper = hom.meet2(upper, q.right_lifting(x, t[k], t[a], a_cat.homs[a][k], vals[a]))
        self_hom = a_cat.homs[k][k]
        comp = q.comp[x][t[k]][t[k]]
        for v in hom.elements:
            if hom.leq(lower, v) and hom.leq(v, upper) and hom.leq(comp[self_hom][v], v):
                vals[k] = v
                yield from extend(k + 1)

    yield from extend(0)


def enumerate_presheaves(a_cat: QCategory, x: int) -> list[Presheaf]:
    """Every presheaf of type ``x`` on ``a_cat``, without duplicates."""
    if not 0 <= x < len(a_cat.base):
        raise InputError(f"type {x} is not a base object")
    out = []
    for values in _enumerate(a_cat, x):
        out.append(Presheaf(a_cat, x, values))
        if len(out) > caps.MAX_PRESHEAVES:
            raise ResourceError(
                f"more than {caps.MAX_PRESHEAVES} presheaves on a {len(a_cat)}-object category")
    return out


def all_presheaves(a_cat: QCategory) -> tuple[Presheaf, ...]:
    """Presheaves of every type, ordered by type then enumeration order."""
    if "presheaves" not in a_cat._cache:
        out: list[Presheaf] = []
        for x in a_cat.base.object_ids:
            out.extend(enumerate_presheaves(a_cat, x))
            if len(out) > caps.MAX_PRESHEAVES:
                raise ResourceError(
                    f"more than {caps.MAX_PRESHEAVES} presheaves on a "
                    f"{len(a_cat)}-object category")
        a_cat._cache["presheaves"] = tuple(out)
    return a_cat._cache["presheaves"]


def presheaf_hom(psi: Presheaf, phi: Presheaf) -> int:
    """``P A(psi, phi)``: the largest ``f: t(phi) -> t(psi)`` with ``psi o f <= phi``."""
    a_cat = psi.over
    q = a_cat.base
    hom = q.homs[phi.type][psi.type]
    out = hom.top
    for a in a_cat.object_ids:
        out = hom.meet2(out, q.right_lifting(phi.type, psi.type, a_cat.types[a],
                                             psi.values[a], phi.values[a]))
    return out


def _names(items: tuple[Presheaf, ...]) -> list[str]:
    names = [p.name() for p in items]
    if len(set(names)) != len(names):
        names = [f"φ{i}" for i in range(len(items))]
    return names


def presheaf_category(a_cat: QCategory) -> QCategory:
    """``P A``: all presheaves of all types with the lifting homs."""
    if "P" not in a_cat._cache:
        items = all_presheaves(a_cat)
        cat = QCategory.build(a_cat.base, _names(items), [p.type for p in items],
                              lambda i, j: presheaf_hom(items[i], items[j]))
        a_cat._cache["P"] = cat
        a_cat._cache["P_index"] = {(p.type, p.values): i for i, p in enumerate(items)}
    return a_cat._cache["P"]


def presheaf_index(a_cat: QCategory, phi: Presheaf) -> int:
    presheaf_category(a_cat)
    try:
        return a_cat._cache["P_index"][(phi.type, phi.values)]
    except KeyError:
        raise InputError("not a presheaf on this category") from None


def representable(a_cat: QCategory, a: int) -> Presheaf:
    return Presheaf(a_cat, a_cat.types[a], tuple(a_cat.homs[b][a] for b in a_cat.object_ids))


def yoneda(a_cat: QCategory) -> QFunctor:
    pa = presheaf_category(a_cat)
    return QFunctor(a_cat, pa, tuple(presheaf_index(a_cat, representable(a_cat, a))
                                     for a in a_cat.object_ids))


def presheaf_from_distributor(phi: Distributor) -> Presheaf:
    if len(phi.source) != 1:
        raise InputError("a presheaf is a distributor out of a one-object category")
    return Presheaf(phi.target, phi.source.types[0], tuple(r[0] for r in phi.elements))


# weighted colimits -------------------------------------------------------------

def colimit(weight: Distributor, f: QFunctor) -> QFunctor:
    """The ``weight``-weighted colimit of ``f``.

    ``weight: A -/-> B`` and ``f: B -> C``; returns ``K: A -> C`` with
    ``C(K-, -) = [weight, C(F-, -)]``. Among isomorphic candidates the least
    object id is taken.
    """
    if weight.target != f.source:
        raise InputError("weight target and functor source differ")
    a_cat, c_cat = weight.source, f.target
    _, right = represent(f)
    theta = lifting(weight, right)
    mapping = []
    for a in a_cat.object_ids:
        row = tuple(theta.elements[a][c] for c in c_cat.object_ids)
        ta = a_cat.types[a]
        k = next((k for k in c_cat.object_ids
                  if c_cat.types[k] == ta and c_cat.homs[k] == row), None)
        if k is None:
            raise ColimitMissing(
                f"no colimit for weight at {a_cat.objects[a]!r}", a_cat.objects[a])
        mapping.append(k)
    return QFunctor(a_cat, c_cat, tuple(mapping))


@dataclass
class Cocompleteness:
    cocomplete: bool
    sup: QFunctor | None = None          # P A -> A, left adjoint to yoneda
    witness: Presheaf | None = None      # a presheaf without supremum

    def __bool__(self) -> bool:
        return self.cocomplete


def supremum(phi: Presheaf) -> int:
    """Object ``sup phi``; raises ColimitMissing when it does not exist."""
    k = colimit(phi.as_distributor(), QFunctor.identity(phi.over))
    return k.mapping[0]


def is_cocomplete(a_cat: QCategory) -> Cocompleteness:
    """Every presheaf has a supremum; on success the sup functor is verified
    to be a functor left adjoint to the Yoneda embedding."""
    if "cocomplete" in a_cat._cache:
        return a_cat._cache["cocomplete"]
    pa = presheaf_category(a_cat)
    items = all_presheaves(a_cat)
    sup = []
    result = None
    for phi in items:
        try:
            sup.append(supremum(phi))
        except ColimitMissing:
            result = Cocompleteness(False, witness=phi)
            break
    if result is None:
        lft = QFunctor(pa, a_cat, tuple(sup))
        y = yoneda(a_cat)
        if validate_functor(lft):
            raise AssertionError("supremum map is not a functor")
        if not (functor_leq(QFunctor.identity(pa), lft.then(y))
                and functor_leq(y.then(lft), QFunctor.identity(a_cat))):
            raise AssertionError("supremum map is not left adjoint to yoneda")
        result = Cocompleteness(True, sup=lft)
    a_cat._cache["cocomplete"] = result
    return result


def presheaf_map(f: QFunctor) -> QFunctor:
    """``P F: P A -> P B`` with ``PF(phi) = B(-, F-) (x) phi``."""
    a_cat, b_cat = f.source, f.target
    q = a_cat.base
    pa = presheaf_category(a_cat)
    presheaf_category(b_cat)
    mapping = []
    for phi in all_presheaves(a_cat):
        x = phi.type
        vals = []
        for b in b_cat.object_ids:
            tb = b_cat.types[b]
            hom = q.homs[x][tb]
            v = hom.bottom
            for a in a_cat.object_ids:
                ta = a_cat.types[a]
                v = hom.join2(v, q.comp[x][ta][tb][b_cat.homs[b][f.mapping[a]]][phi.values[a]])
            vals.append(v)
        mapping.append(presheaf_index(b_cat, Presheaf(b_cat, x, tuple(vals))))
    return QFunctor(pa, presheaf_category(b_cat), tuple(mapping))
