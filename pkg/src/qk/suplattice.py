"""Finite complete lattices and supremum-preserving maps.

Elements are addressed by dense integer ids ``0..n-1``; the string names are
kept only for input and output. The element order of ``names`` is the stable
order used for every enumeration in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence

from .errors import InputError


def _closure(n: int, pairs: Iterable[tuple[int, int]]) -> list[list[bool]]:
    rel = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        rel[a][b] = True
    for k in range(n):
        rk = rel[k]
        for i in range(n):
            if rel[i][k]:
                ri = rel[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return rel


@dataclass(frozen=True)
class FiniteSuplattice:
    """A finite complete lattice given by its full order relation.

    ``leq[i][j]`` is true iff element ``i`` is below element ``j``. The
    constructor checks the partial-order axioms and that a bottom and all
    binary joins exist, which for a finite poset is the same as every subset
    having a join.
    """

    names: tuple[str, ...]
    leq_matrix: tuple[tuple[bool, ...], ...]
    _join: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _meet: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)
    bottom: int = field(init=False, repr=False, compare=False)
    top: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        names, leq = self.names, self.leq_matrix
        n = len(names)
        if len(set(names)) != n:
            raise InputError(f"duplicate element names in {names!r}")
        if len(leq) != n or any(len(row) != n for row in leq):
            raise InputError("order matrix has the wrong shape")
        for i in range(n):
            if not leq[i][i]:
                raise InputError(f"order is not reflexive at {names[i]!r}")
            for j in range(n):
                if i != j and leq[i][j] and leq[j][i]:
                    raise InputError(
                        f"order is not antisymmetric: {names[i]!r}, {names[j]!r}")
                if leq[i][j]:
                    for k in range(n):
                        if leq[j][k] and not leq[i][k]:
                            raise InputError(
                                "order is not transitive at "
                                f"{names[i]!r} <= {names[j]!r} <= {names[k]!r}")
        bottom = self._least(list(range(n))) if n else None
        if bottom is None:
            raise InputError("lattice has no bottom element (empty join missing)")
        join = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                ub = [k for k in range(n) if leq[i][k] and leq[j][k]]
                k = self._least(ub)
                if k is None:
                    raise InputError(
                        f"no join for {{{names[i]!r}, {names[j]!r}}}")
                join[i][j] = join[j][i] = k
        top = reduce(lambda a, b: join[a][b], range(n), bottom)
        meet = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                lb = [k for k in range(n) if leq[k][i] and leq[k][j]]
                m = reduce(lambda a, b: join[a][b], lb, bottom)
                meet[i][j] = meet[j][i] = m
        object.__setattr__(self, "_join", tuple(map(tuple, join)))
        object.__setattr__(self, "_meet", tuple(map(tuple, meet)))
        object.__setattr__(self, "_index", {nm: i for i, nm in enumerate(names)})
        object.__setattr__(self, "bottom", bottom)
        object.__setattr__(self, "top", top)

    def _least(self, candidates: list[int]) -> int | None:
        leq = self.leq_matrix
        for c in candidates:
            if all(leq[c][d] for d in candidates):
                return c
        return None

    # construction -------------------------------------------------------

    @classmethod
    def from_covers(cls, names: Sequence[str],
                    covers: Iterable[tuple[str, str]]) -> "FiniteSuplattice":
        """Build from covering pairs ``(lower, upper)``; the closure is taken."""
        names = tuple(names)
        idx = {nm: i for i, nm in enumerate(names)}
        pairs = []
        for lo, hi in covers:
            if lo not in idx or hi not in idx:
                raise InputError(f"unknown element in cover ({lo!r}, {hi!r})")
            pairs.append((idx[lo], idx[hi]))
        rel = _closure(len(names), pairs)
        return cls(names, tuple(map(tuple, rel)))

    @classmethod
    def from_relation(cls, names: Sequence[str],
                      leq: Callable[[int, int], bool]) -> "FiniteSuplattice":
        n = len(names)
        return cls(tuple(names),
                   tuple(tuple(bool(leq(i, j)) for j in range(n)) for i in range(n)))

    @classmethod
    def chain(cls, names: Sequence[str]) -> "FiniteSuplattice":
        """Linear order, listed from bottom to top."""
        return cls.from_relation(names, lambda i, j: i <= j)

    # queries --------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.names)

    @property
    def elements(self) -> range:
        return range(len(self.names))

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown element {name!r}") from None

    def name(self, x: int) -> str:
        return self.names[x]

    def leq(self, x: int, y: int) -> bool:
        return self.leq_matrix[x][y]

    def join2(self, x: int, y: int) -> int:
        return self._join[x][y]

    def meet2(self, x: int, y: int) -> int:
        return self._meet[x][y]

    def join(self, subset: Iterable[int]) -> int:
        j = self._join
        out = self.bottom
        for x in subset:
            self._check(x)
            out = j[out][x]
        return out

    def meet(self, subset: Iterable[int]) -> int:
        m = self._meet
        out = self.top
        for x in subset:
            self._check(x)
            out = m[out][x]
        return out

    def join_names(self, subset: Iterable[str]) -> str:
        return self.names[self.join(self.index(s) for s in subset)]

    def _check(self, x: int) -> None:
        if not 0 <= x < len(self.names):
            raise InputError(f"element id {x} out of range")

    def down(self, x: int) -> list[int]:
        return [y for y in self.elements if self.leq_matrix[y][x]]

    def sub(self, subset: Sequence[int]) -> "FiniteSuplattice":
        """Sub-suplattice on ``subset`` (order inherited; must be join-closed)."""
        subset = list(subset)
        chosen = set(subset)
        if self.bottom not in chosen:
            raise InputError("subset does not contain the bottom element")
        for x, y in combinations(subset, 2):
            if self._join[x][y] not in chosen:
                raise InputError("subset is not closed under joins")
        return FiniteSuplattice(
            tuple(self.names[x] for x in subset),
            tuple(tuple(self.leq_matrix[x][y] for y in subset) for x in subset))


@dataclass(frozen=True)
class SupMorphism:
    """A join-preserving map between finite suplattices (validated)."""

    source: FiniteSuplattice
    target: FiniteSuplattice
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        ok, witness = is_supmorphism(self.source, self.target, self.table)
        if not ok:
            names = [self.source.names[x] for x in witness]
            raise InputError(f"map does not preserve the join of {names}")

    def __call__(self, x: int) -> int:
        return self.table[x]

    def then(self, other: "SupMorphism") -> "SupMorphism":
        """``other`` after ``self``."""
        return SupMorphism(self.source, other.target,
                           tuple(other.table[y] for y in self.table))

    @classmethod
    def identity(cls, lattice: FiniteSuplattice) -> "SupMorphism":
        return cls(lattice, lattice, tuple(lattice.elements))


def is_supmorphism(source: FiniteSuplattice, target: FiniteSuplattice,
                   table: Sequence[int]) -> tuple[bool, tuple[int, ...] | None]:
    """Decide whether ``table`` preserves all joins.

    Returns ``(True, None)`` or ``(False, S)`` where ``S`` is a subset of the
    source whose join is not preserved. The empty subset is tried first, then
    all pairs; for finite lattices that covers every subset.
    """
    if len(table) != len(source):
        raise InputError("map is not total on the source lattice")
    for y in table:
        target._check(y)
    if table[source.bottom] != target.bottom:
        return False, ()
    for x, y in combinations(source.elements, 2):
        if table[source.join2(x, y)] != target.join2(table[x], table[y]):
            return False, (x, y)
    return True, None


def supmorphisms(source: FiniteSuplattice,
                 target: FiniteSuplattice) -> Iterator[tuple[int, ...]]:
    """All join-preserving maps, in lexicographic order of their tables."""
    n = len(source)
    order = sorted(source.elements, key=lambda x: sum(source.leq_matrix[y][x]
                                                     for y in source.elements))
    table = [-1] * n

    def extend(pos: int) -> Iterator[tuple[int, ...]]:
        if pos == n:
            yield tuple(table)
            return
        x = order[pos]
        for y in target.elements:
            table[x] = y
            if _consistent(x):
                yield from extend(pos + 1)
        table[x] = -1

    def _consistent(x: int) -> bool:
        if x == source.bottom and table[x] != target.bottom:
            return False
        for z, w in combinations([e for e in source.elements if table[e] >= 0], 2):
            j = source.join2(z, w)
            if table[j] >= 0 and table[j] != target.join2(table[z], table[w]):
                return False
        return True

    yield from extend(0)


def order_isomorphisms(a: FiniteSuplattice,
                       b: FiniteSuplattice) -> Iterator[tuple[int, ...]]:
    """All order isomorphisms ``a -> b`` as tables."""
    n = len(a)
    if n != len(b):
        return
    table = [-1] * n
    used = [False] * n

    def extend(x: int) -> Iterator[tuple[int, ...]]:
        if x == n:
            yield tuple(table)
            return
        for y in range(n):
            if used[y]:
                continue
            if all(a.leq(x, z) == b.leq(y, table[z]) and a.leq(z, x) == b.leq(table[z], y)
                   for z in range(x)):
                table[x], used[y] = y, True
                yield from extend(x + 1)
                table[x], used[y] = -1, False

    yield from extend(0)
