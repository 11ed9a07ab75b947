from __future__ import annotations

from itertools import combinations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qk.suplattice import FiniteSuplattice

settings.register_profile("desk", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("desk")


def _name(s: frozenset) -> str:
    return "{" + "".join(sorted(s)) + "}" if s else "∅"


@st.composite
def moore_lattices(draw, ground: str = "abc", max_extra: int = 4) -> FiniteSuplattice:
    """Lattice of a random Moore family on a small ground set (any finite lattice arises)."""
    subsets = [frozenset(c) for k in range(len(ground) + 1) for c in combinations(ground, k)]
    picked = draw(st.lists(st.sampled_from(subsets), max_size=max_extra))
    fam = {frozenset(ground)}
    for s in picked:
        fam |= {s & t for t in fam} | {s}
    while True:
        more = {s & t for s in fam for t in fam} - fam
        if not more:
            break
        fam |= more
    elems = sorted(fam, key=lambda s: (len(s), sorted(s)))
    return FiniteSuplattice.from_relation([_name(s) for s in elems],
                                          lambda i, j: elems[i] <= elems[j])


@st.composite
def frames(draw, size: int = 3) -> FiniteSuplattice:
    """Downset lattice of a random poset: a finite distributive lattice."""
    n = draw(st.integers(1, size))
    rel = {(i, j) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())}
    below = [{i} | {a for a, b in rel if b == i} for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            extra = set().union(*(below[j] for j in below[i])) - below[i]
            if extra:
                below[i] |= extra
                changed = True
    downs = set()
    for k in range(n + 1):
        for c in combinations(range(n), k):
            s = frozenset(c)
            if all(below[i] <= s for i in s):
                downs.add(s)
    elems = sorted(downs, key=lambda s: (len(s), sorted(s)))
    return FiniteSuplattice.from_relation(
        [_name(frozenset("pqr"[i] for i in s)) for s in elems],
        lambda i, j: elems[i] <= elems[j])
