"""Categories, functors and distributors enriched in a finite quantaloid.

Index conventions, used throughout the package:

* ``A.hom(a2, a)`` is a base arrow ``t(a) -> t(a2)``;
* a distributor ``Phi: A -/-> B`` has elements ``Phi(b, a): t(a) -> t(b)``;
* the underlying order is ``a <= a2`` iff ``t(a) == t(a2)`` and
  ``1_{t(a)} <= A.hom(a, a2)``; for constant functors this is the functor order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator, Sequence

from .errors import InputError
from .quantaloid import Quantaloid
from .report import Violation, ViolationLog

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class QCategory:
    base: Quantaloid
    objects: tuple[str, ...]
    types: tuple[int, ...]
    homs: Matrix
    _cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        n = len(self.objects)
        if len(set(self.objects)) != n:
            raise InputError("duplicate object names in category")
        if len(self.types) != n or len(self.homs) != n:
            raise InputError("category data has the wrong shape")
        for t in self.types:
            if not 0 <= t < len(self.base):
                raise InputError(f"type {t} is not a base object")
        for a2 in range(n):
            row = self.homs[a2]
            if len(row) != n:
                raise InputError("hom matrix has the wrong shape")
            for a in range(n):
                if not 0 <= row[a] < len(self.base.homs[self.types[a]][self.types[a2]]):
                    raise InputError(
                        f"hom({self.objects[a2]}, {self.objects[a]}) is not an arrow "
                        "of the right type")

    @classmethod
    def build(cls, base: Quantaloid, objects: Sequence[str], types: Sequence[int],
              hom: Callable[[int, int], int]) -> "QCategory":
        n = len(objects)
        return cls(base, tuple(objects), tuple(types),
                   tuple(tuple(hom(a2, a) for a in range(n)) for a2 in range(n)))

    def __len__(self) -> int:
        return len(self.objects)

    @property
    def object_ids(self) -> range:
        return range(len(self.objects))

    def index(self, name: str) -> int:
        try:
            return self.objects.index(name)
        except ValueError:
            raise InputError(f"unknown object {name!r}") from None

    def hom(self, a2: int, a: int) -> int:
        return self.homs[a2][a]

    def hom_name(self, a2: int, a: int) -> str:
        return self.base.homs[self.types[a]][self.types[a2]].names[self.homs[a2][a]]

    def below(self, a: int, a2: int) -> bool:
        """Underlying order ``a <= a2``."""
        t = self.types[a]
        return (t == self.types[a2]
                and self.base.leq(t, t, self.base.identities[t], self.homs[a][a2]))

    def isomorphic(self, a: int, b: int) -> bool:
        return self.below(a, b) and self.below(b, a)

    def objects_of_type(self, x: int) -> list[int]:
        return [a for a in self.object_ids if self.types[a] == x]

    def is_skeletal(self) -> tuple[bool, tuple[str, str] | None]:
        for a in self.object_ids:
            for b in range(a + 1, len(self)):
                if self.isomorphic(a, b):
                    return False, (self.objects[a], self.objects[b])
        return True, None

    def describe(self) -> str:
        return f"{len(self)} objects over {len(self.base)}-object base"


def validate_category(cat: QCategory) -> list[Violation]:
    q = cat.base
    log = ViolationLog()
    t = cat.types
    for a in cat.object_ids:
        ta = t[a]
        if not q.leq(ta, ta, q.identities[ta], cat.homs[a][a]):
            log.add("unit inequality", cat.objects[a])
    for a2, a1, a in product(cat.object_ids, repeat=3):
        c = q.comp[t[a]][t[a1]][t[a2]][cat.homs[a2][a1]][cat.homs[a1][a]]
        if not q.leq(t[a], t[a2], c, cat.homs[a2][a]):
            log.add("composition inequality",
                    (cat.objects[a2], cat.objects[a1], cat.objects[a]))
    return log.result()


def unit_category(base: Quantaloid, x: int, name: str = "*") -> QCategory:
    """The one-object category ``*_x`` whose single hom is ``1_x``."""
    return QCategory(base, (name,), (x,), ((base.identities[x],),))


def discrete_category(base: Quantaloid, objects: Sequence[str],
                      types: Sequence[int]) -> QCategory:
    return QCategory.build(
        base, objects, types,
        lambda a2, a: base.identities[types[a]] if a == a2
        else base.homs[types[a]][types[a2]].bottom)


# functors ---------------------------------------------------------------

@dataclass(frozen=True)
class QFunctor:
    source: QCategory
    target: QCategory
    mapping: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    def then(self, other: "QFunctor") -> "QFunctor":
        """``other`` after ``self``."""
        return QFunctor(self.source, other.target,
                        tuple(other.mapping[b] for b in self.mapping))

    @classmethod
    def identity(cls, cat: QCategory) -> "QFunctor":
        return cls(cat, cat, tuple(cat.object_ids))


def validate_functor(f: QFunctor) -> list[Violation]:
    a_cat, b_cat = f.source, f.target
    if a_cat.base != b_cat.base:
        raise InputError("functor between categories over different bases")
    if len(f.mapping) != len(a_cat):
        raise InputError("functor object map is not total")
    q = a_cat.base
    log = ViolationLog()
    for a in a_cat.object_ids:
        if a_cat.types[a] != b_cat.types[f.mapping[a]]:
            log.add("type preservation", a_cat.objects[a])
    for a2, a in product(a_cat.object_ids, repeat=2):
        ta, ta2 = a_cat.types[a], a_cat.types[a2]
        if b_cat.types[f.mapping[a]] != ta or b_cat.types[f.mapping[a2]] != ta2:
            continue
        if not q.leq(ta, ta2, a_cat.homs[a2][a], b_cat.homs[f.mapping[a2]][f.mapping[a]]):
            log.add("action inequality", (a_cat.objects[a2], a_cat.objects[a]))
    return log.result()


def functor_leq(f: QFunctor, g: QFunctor) -> bool:
    """``F <= G`` iff ``1_{ta} <= B(Fa, Ga)`` for every object ``a``."""
    if f.source != g.source or f.target != g.target:
        raise InputError("functors are not parallel")
    b_cat = f.target
    q = b_cat.base
    for a in f.source.object_ids:
        ta = f.source.types[a]
        if not q.leq(ta, ta, q.identities[ta], b_cat.homs[f.mapping[a]][g.mapping[a]]):
            return False
    return True


def functors_isomorphic(f: QFunctor, g: QFunctor) -> bool:
    return functor_leq(f, g) and functor_leq(g, f)


# distributors ---------------------------------------------------------------

@dataclass(frozen=True)
class Distributor:
    """``Phi: source -/-> target`` with ``elements[b][a] = Phi(b, a)``."""

    source: QCategory
    target: QCategory
    elements: Matrix

    def __post_init__(self) -> None:
        if self.source.base != self.target.base:
            raise InputError("distributor between categories over different bases")
        q = self.source.base
        if len(self.elements) != len(self.target):
            raise InputError("distributor matrix has the wrong shape")
        for b, row in enumerate(self.elements):
            if len(row) != len(self.source):
                raise InputError("distributor matrix has the wrong shape")
            tb = self.target.types[b]
            for a, x in enumerate(row):
                if not 0 <= x < len(q.homs[self.source.types[a]][tb]):
                    raise InputError("distributor element is not an arrow of the right type")

    @classmethod
    def build(cls, source: QCategory, target: QCategory,
              elem: Callable[[int, int], int]) -> "Distributor":
        return cls(source, target,
                   tuple(tuple(elem(b, a) for a in source.object_ids)
                         for b in target.object_ids))

    def __call__(self, b: int, a: int) -> int:
        return self.elements[b][a]


def validate_distributor(phi: Distributor) -> list[Violation]:
    a_cat, b_cat = phi.source, phi.target
    q = a_cat.base
    log = ViolationLog()
    ta, tb = a_cat.types, b_cat.types
    for b, b2, a in product(b_cat.object_ids, b_cat.object_ids, a_cat.object_ids):
        c = q.comp[ta[a]][tb[b2]][tb[b]][b_cat.homs[b][b2]][phi.elements[b2][a]]
        if not q.leq(ta[a], tb[b], c, phi.elements[b][a]):
            log.add("left action", (b_cat.objects[b], b_cat.objects[b2], a_cat.objects[a]))
    for b, a2, a in product(b_cat.object_ids, a_cat.object_ids, a_cat.object_ids):
        c = q.comp[ta[a]][ta[a2]][tb[b]][phi.elements[b][a2]][a_cat.homs[a2][a]]
        if not q.leq(ta[a], tb[b], c, phi.elements[b][a]):
            log.add("right action", (b_cat.objects[b], a_cat.objects[a2], a_cat.objects[a]))
    return log.result()


def identity_distributor(cat: QCategory) -> Distributor:
    return Distributor(cat, cat, cat.homs)


def bottom_distributor(source: QCategory, target: QCategory) -> Distributor:
    q = source.base
    return Distributor.build(
        source, target,
        lambda b, a: q.homs[source.types[a]][target.types[b]].bottom)


def compose_dist(psi: Distributor, phi: Distributor) -> Distributor:
    """``(Psi (x) Phi)(c, a) = V_b Psi(c, b) o Phi(b, a)``."""
    if phi.target != psi.source:
        raise InputError("distributors are not composable")
    a_cat, b_cat, c_cat = phi.source, phi.target, psi.target
    q = a_cat.base
    ta, tb, tc = a_cat.types, b_cat.types, c_cat.types

    def elem(c: int, a: int) -> int:
        hom = q.homs[ta[a]][tc[c]]
        out = hom.bottom
        for b in b_cat.object_ids:
            x = q.comp[ta[a]][tb[b]][tc[c]][psi.elements[c][b]][phi.elements[b][a]]
            out = hom.join2(out, x)
        return out

    return Distributor.build(a_cat, c_cat, elem)


def lifting(phi: Distributor, psi: Distributor) -> Distributor:
    """``[Phi, Psi]``: the largest ``Theta: C -/-> A`` with ``Phi (x) Theta <= Psi``.

    ``Phi: A -/-> B`` and ``Psi: C -/-> B``. Elementwise it is the meet over
    ``b`` of the base right liftings of ``Psi(b, c)`` through ``Phi(b, a)``.
    """
    if phi.target != psi.target:
        raise InputError("lifting needs distributors with a common target")
    a_cat, b_cat, c_cat = phi.source, phi.target, psi.source
    q = a_cat.base
    ta, tb, tc = a_cat.types, b_cat.types, c_cat.types

    def elem(a: int, c: int) -> int:
        hom = q.homs[tc[c]][ta[a]]
        out = hom.top
        for b in b_cat.object_ids:
            x = q.right_lifting(tc[c], ta[a], tb[b], phi.elements[b][a], psi.elements[b][c])
            out = hom.meet2(out, x)
        return out

    return Distributor.build(c_cat, a_cat, elem)


def dist_leq(phi: Distributor, psi: Distributor) -> bool:
    if phi.source != psi.source or phi.target != psi.target:
        raise InputError("distributors are not parallel")
    q = phi.source.base
    ta, tb = phi.source.types, phi.target.types
    return all(q.leq(ta[a], tb[b], phi.elements[b][a], psi.elements[b][a])
               for b in phi.target.object_ids for a in phi.source.object_ids)


def dist_join(phi: Distributor, psi: Distributor) -> Distributor:
    if phi.source != psi.source or phi.target != psi.target:
        raise InputError("distributors are not parallel")
    q = phi.source.base
    ta, tb = phi.source.types, phi.target.types
    return Distributor.build(
        phi.source, phi.target,
        lambda b, a: q.homs[ta[a]][tb[b]].join2(phi.elements[b][a], psi.elements[b][a]))


def represent(f: QFunctor) -> tuple[Distributor, Distributor]:
    """The adjoint pair ``B(-, F-)`` and ``B(F-, -)`` represented by ``F``."""
    a_cat, b_cat = f.source, f.target
    left = Distributor.build(a_cat, b_cat, lambda b, a: b_cat.homs[b][f.mapping[a]])
    right = Distributor.build(b_cat, a_cat, lambda a, b: b_cat.homs[f.mapping[a]][b])
    return left, right


# enumeration and the laws of Dist(Q) ---------------------------------------------

def enumerate_functors(a_cat: QCategory, b_cat: QCategory) -> Iterator[QFunctor]:
    """Every functor ``a_cat -> b_cat`` by backtracking over type-preserving maps."""
    q = a_cat.base
    n = len(a_cat)
    mapping = [0] * n

    def extend(k: int) -> Iterator[QFunctor]:
        if k == n:
            yield QFunctor(a_cat, b_cat, tuple(mapping))
            return
        tk = a_cat.types[k]
        for b in b_cat.objects_of_type(tk):
            mapping[k] = b
            if all(q.leq(a_cat.types[j], a_cat.types[i], a_cat.homs[i][j],
                          b_cat.homs[mapping[i]][mapping[j]])
                   for i in range(k + 1) for j in range(k + 1) if k in (i, j)):
                yield from extend(k + 1)

    yield from extend(0)


def enumerate_distributors(a_cat: QCategory, b_cat: QCategory) -> list[Distributor]:
    """Every distributor ``a_cat -/-> b_cat``: all matrices, filtered by the action laws."""
    q = a_cat.base
    cells = [(b, a) for b in b_cat.object_ids for a in a_cat.object_ids]
    choices = [q.homs[a_cat.types[a]][b_cat.types[b]].elements for b, a in cells]
    out = []
    for pick in product(*choices):
        el = [[0] * len(a_cat) for _ in b_cat.object_ids]
        for (b, a), v in zip(cells, pick):
            el[b][a] = v
        phi = Distributor(a_cat, b_cat, tuple(tuple(r) for r in el))
        if not validate_distributor(phi):
            out.append(phi)
    return out


def check_dist_laws(cats: Sequence[QCategory]) -> list[Violation]:
    """Quantaloid laws of ``Dist(Q)`` over every distributor between the given
    categories: units, associativity, joins in each variable, and the lifting
    adjunction ``Phi (x) Theta <= Psi  iff  Theta <= [Phi, Psi]``."""
    log = ViolationLog()
    dists = {(i, j): enumerate_distributors(a, b)
             for i, a in enumerate(cats) for j, b in enumerate(cats)}
    for (i, j), ds in dists.items():
        for phi in ds:
            if (compose_dist(identity_distributor(cats[j]), phi) != phi
                    or compose_dist(phi, identity_distributor(cats[i])) != phi):
                log.add("unit", (i, j, phi.elements))
    for i, j, k in product(range(len(cats)), repeat=3):
        for phi, psi in product(dists[(i, j)], dists[(j, k)]):
            comp = compose_dist(psi, phi)
            for chi in dists[(k, k)]:
                if compose_dist(chi, comp) != compose_dist(compose_dist(chi, psi), phi):
                    log.add("associativity", (i, j, k, phi.elements, psi.elements, chi.elements))
            for phi2 in dists[(i, j)]:
                if compose_dist(psi, dist_join(phi, phi2)) != dist_join(comp, compose_dist(psi, phi2)):
                    log.add("join in the right variable", (i, j, k))
            for psi2 in dists[(j, k)]:
                if compose_dist(dist_join(psi, psi2), phi) != dist_join(comp, compose_dist(psi2, phi)):
                    log.add("join in the left variable", (i, j, k))
            for rho in dists[(i, k)]:
                # Theta = phi: A -/-> B, Phi = psi: B -/-> C, Psi = rho: A -/-> C
                if dist_leq(comp, rho) != dist_leq(phi, lifting(psi, rho)):
                    log.add("lifting adjunction", (i, j, k))
            bot = bottom_distributor(cats[i], cats[j])
            if compose_dist(psi, bot) != bottom_distributor(cats[i], cats[k]):
                log.add("empty join", (i, j, k))
    return log.result()
