"""Adjoint distributors, Cauchy completeness and completion, and Q-orders."""

from __future__ import annotations

from dataclasses import dataclass, field

from .enriched import (Distributor, QCategory, QFunctor, compose_dist, dist_leq,
                       enumerate_functors, functors_isomorphic, identity_distributor, lifting)
from .errors import CertificationError, ColimitMissing, InputError
from .presheaf import Presheaf, all_presheaves, colimit, presheaf_hom, representable
from .quantaloid import Quantaloid, idm
from .report import Violation, ViolationLog


@dataclass(frozen=True)
class AdjointPair:
    left: Distributor
    right: Distributor


def canonical_right_adjoint(phi: Distributor) -> Distributor:
    """``[Phi, B]``, the largest ``Psi`` with ``Phi (x) Psi <= B``."""
    return lifting(phi, identity_distributor(phi.target))


def check_adjoint(phi: Distributor) -> AdjointPair | None:
    """Return the adjoint pair if ``phi`` is a left adjoint, else None."""
    right = canonical_right_adjoint(phi)
    unit = dist_leq(identity_distributor(phi.source), compose_dist(right, phi))
    counit = dist_leq(compose_dist(phi, right), identity_distributor(phi.target))
    return AdjointPair(phi, right) if unit and counit else None


def is_cauchy_presheaf(phi: Presheaf) -> bool:
    return check_adjoint(phi.as_distributor()) is not None


def cauchy_presheaves(a_cat: QCategory) -> list[Presheaf]:
    if "cauchy" not in a_cat._cache:
        a_cat._cache["cauchy"] = [p for p in all_presheaves(a_cat) if is_cauchy_presheaf(p)]
    return a_cat._cache["cauchy"]


def representing_objects(a_cat: QCategory, phi: Presheaf) -> list[int]:
    return [c for c in a_cat.object_ids
            if a_cat.types[c] == phi.type and representable(a_cat, c).values == phi.values]


@dataclass
class CauchyCompleteness:
    complete: bool
    witness: Presheaf | None = None
    # Cauchy presheaf name -> representing object names (several when isomorphic)
    representations: dict[str, list[str]] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.complete


def is_cauchy_complete(a_cat: QCategory) -> CauchyCompleteness:
    """Every Cauchy presheaf equals some representable elementwise."""
    reps: dict[str, list[str]] = {}
    for phi in cauchy_presheaves(a_cat):
        objs = representing_objects(a_cat, phi)
        if not objs:
            return CauchyCompleteness(False, phi, reps)
        reps[phi.name()] = [a_cat.objects[c] for c in objs]
    return CauchyCompleteness(True, None, reps)


def cauchy_completion(a_cat: QCategory) -> tuple[QCategory, QFunctor]:
    """Category of Cauchy presheaves and the (fully faithful) embedding."""
    items = cauchy_presheaves(a_cat)
    names = [p.name() for p in items]
    if len(set(names)) != len(names):
        names = [f"φ{i}" for i in range(len(items))]
    cat = QCategory.build(a_cat.base, names, [p.type for p in items],
                          lambda i, j: presheaf_hom(items[i], items[j]))
    index = {(p.type, p.values): i for i, p in enumerate(items)}
    emb = tuple(index[(a_cat.types[a], representable(a_cat, a).values)]
                for a in a_cat.object_ids)
    return cat, QFunctor(a_cat, cat, emb)


@dataclass(frozen=True)
class QOrder:
    """A category over ``Idm(Q)`` certified to be Cauchy complete."""

    quantaloid: Quantaloid
    category: QCategory


def make_order(q: Quantaloid, a_cat: QCategory) -> QOrder:
    if a_cat.base != idm(q):
        raise InputError("category is not enriched in the split-idempotent completion")
    result = is_cauchy_complete(a_cat)
    if not result:
        raise CertificationError(
            f"not Cauchy complete: presheaf {result.witness.name()} is not representable",
            result.witness)
    return QOrder(q, a_cat)


def check_absoluteness(b_cat: QCategory, c_cat: QCategory, d_cat: QCategory) -> list[Violation]:
    """Colimits weighted by Cauchy presheaves on ``b_cat`` of functors
    ``F: b_cat -> c_cat`` are preserved by every ``G: c_cat -> d_cat``."""
    log = ViolationLog()
    weights = [p.as_distributor() for p in cauchy_presheaves(b_cat)]
    gs = list(enumerate_functors(c_cat, d_cat))
    for f in enumerate_functors(b_cat, c_cat):
        for w in weights:
            try:
                k = colimit(w, f)
            except ColimitMissing:
                continue
            for g in gs:
                try:
                    kg = colimit(w, f.then(g))
                except ColimitMissing:
                    log.add("preserved colimit exists", (f.mapping, g.mapping, w.elements))
                    continue
                if not functors_isomorphic(k.then(g), kg):
                    log.add("G o colim = colim(G o F)", (f.mapping, g.mapping, w.elements))
    return log.result()
