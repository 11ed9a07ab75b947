"""The presheaf doctrine: monad data, the KZ inequality, algebras, and the
instance-level checks relating algebras, cocomplete categories and modules."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .caps import Caps
from .cauchy import QOrder, make_order
from .centre_morita import alpha_hat, yoneda_morphisms
from .enriched import QCategory, QFunctor, functor_leq, functors_isomorphic, validate_functor
from .errors import CertificationError, InputError
from .modules import (ModuleMorphism, QModule, category_of_module, cocontinuity_witness,
                      extend_to_idm, find_category_isomorphism, find_module_isomorphism,
                      functor_of_morphism, module_of_category, morphism_of_functor,
                      restrict_along_embedding, validate_module)
from .presheaf import (Presheaf, all_presheaves, is_cocomplete, presheaf_category,
                       presheaf_hom, presheaf_map, representable, yoneda)
from .quantaloid import Quantaloid, centre, idm
from .report import Report
from .suplattice import FiniteSuplattice


@dataclass(frozen=True)
class DoctrineInstance:
    """``T``, ``eta`` and ``mu`` evaluated at one category."""

    category: QCategory

    @property
    def t(self) -> QCategory:
        return presheaf_category(self.category)

    @property
    def eta(self) -> QFunctor:
        return yoneda(self.category)

    @property
    def mu(self) -> QFunctor:
        """``mu_A: PPA -> PA``, the supremum map of ``PA``."""
        return is_cocomplete(self.t).sup


def check_kz(a_cat: QCategory, caps: Caps | None = None) -> Report:
    """Monad laws and ``T(eta_A) <= eta_{TA}`` at ``a_cat``; builds ``PPPA``."""
    (caps or Caps()).check(a_cat)
    report = Report("kz")
    d = DoctrineInstance(a_cat)
    pa = d.t
    dp = DoctrineInstance(pa)
    ppa = dp.t
    t_eta = presheaf_map(d.eta)
    eta_t = dp.eta
    mu, mu_t = d.mu, dp.mu
    report.add("T(eta) is a functor", not validate_functor(t_eta))
    report.add("mu is a functor", not validate_functor(mu))
    report.add("KZ inequality T(eta_A) <= eta_TA", functor_leq(t_eta, eta_t))
    ident = QFunctor.identity(pa).mapping
    report.add("mu o T(eta) = id", t_eta.then(mu).mapping == ident)
    report.add("mu o eta_T = id", eta_t.then(mu).mapping == ident)
    t_mu = presheaf_map(mu)
    lhs, rhs = t_mu.then(mu), mu_t.then(mu)
    bad = next((i for i in range(len(lhs.mapping)) if lhs.mapping[i] != rhs.mapping[i]), None)
    report.add("mu o T(mu) = mu o mu_T", bad is None,
               None if bad is None else presheaf_category(ppa).objects[bad])
    report.add("eta natural: T(eta) o eta = eta_T o eta",
               d.eta.then(t_eta).mapping == d.eta.then(eta_t).mapping)
    report.add("PPA and PPPA sizes", True, detail=f"{len(ppa)} and {len(presheaf_category(ppa))}")
    return report


# algebras ------------------------------------------------------------------------

@dataclass
class AlgebraResult:
    algebra: bool
    structure: QFunctor | None = None     # P A -> A, left adjoint to yoneda
    witness: Presheaf | None = None       # presheaf with no candidate value
    unique: bool = True                   # all candidate left adjoints isomorphic

    def __bool__(self) -> bool:
        return self.algebra


def _category(a: QOrder | QCategory) -> QCategory:
    return a.category if isinstance(a, QOrder) else a


def is_algebra(a: QOrder | QCategory) -> AlgebraResult:
    """Search for a left adjoint to yoneda directly from
    ``A(L phi, b) = PA(phi, Y b)``; agreement with ``is_cocomplete`` is asserted."""
    a_cat = _category(a)
    reps = [representable(a_cat, b) for b in a_cat.object_ids]
    mapping = []
    unique = True
    result = None
    for phi in all_presheaves(a_cat):
        row = tuple(presheaf_hom(phi, r) for r in reps)
        cands = [c for c in a_cat.objects_of_type(phi.type) if a_cat.homs[c] == row]
        if not cands:
            result = AlgebraResult(False, witness=phi)
            break
        unique &= all(a_cat.isomorphic(cands[0], c) for c in cands)
        mapping.append(cands[0])
    coc = is_cocomplete(a_cat)
    if result is None:
        result = AlgebraResult(True, QFunctor(presheaf_category(a_cat), a_cat, tuple(mapping)),
                               unique=unique)
        if not coc or coc.sup.mapping != result.structure.mapping:
            raise AssertionError("algebra structure disagrees with the supremum map")
        y = yoneda(a_cat)
        if not (functor_leq(QFunctor.identity(presheaf_category(a_cat)), result.structure.then(y))
                and functor_leq(y.then(result.structure), QFunctor.identity(a_cat))):
            raise AssertionError("algebra structure is not left adjoint to yoneda")
    elif coc:
        raise AssertionError("cocomplete category without algebra structure")
    return result


def _fresh(a_cat: QCategory) -> QCategory:
    """Same data, empty caches: forces every construction to be recomputed."""
    return QCategory(a_cat.base, a_cat.objects, a_cat.types, a_cat.homs)


def _same_category(a: QCategory, b: QCategory) -> bool:
    return (a.base == b.base and a.objects == b.objects
            and a.types == b.types and a.homs == b.homs)


def check_order_adjunction(order: QOrder, caps: Caps | None = None) -> Report:
    """The restricted adjunction at the inclusion of Q-orders into all
    ``Idm(Q)``-categories, evaluated at one order."""
    if not isinstance(order, QOrder):
        raise InputError("a certified Q-order is required")
    q, a_cat = order.quantaloid, order.category
    report = Report("lemma4")
    pa = presheaf_category(a_cat)
    try:
        make_order(q, pa)
        report.add("restricted monad: S(B) = P B is a Q-order", True)
    except CertificationError as exc:
        report.add("restricted monad: S(B) = P B is a Q-order", False, exc.witness, str(exc))
    y = yoneda(a_cat)
    report.add("restricted monad: xi_B = eta_WB (identical object maps)",
               y.mapping == yoneda(_fresh(a_cat)).mapping)
    report.add("restricted monad: unit is fully faithful",
               all(pa.homs[y.mapping[a]][y.mapping[b]] == a_cat.homs[a][b]
                   for a in a_cat.object_ids for b in a_cat.object_ids))
    report.add("restriction: T(W B) = W(S B) on objects",
               _same_category(pa, presheaf_category(_fresh(a_cat))))
    report.add("restriction: T and S agree on functors",
               presheaf_map(y).mapping == presheaf_map(yoneda(_fresh(a_cat))).mapping
               and presheaf_map(QFunctor.identity(a_cat)).mapping == tuple(pa.object_ids))
    kz = check_kz(a_cat, caps)
    report.extend(kz, "KZ: ")
    try:
        make_order(q, presheaf_category(pa))
        report.add("KZ: S S B is a Q-order", True)
    except CertificationError as exc:
        report.add("KZ: S S B is a Q-order", False, exc.witness, str(exc))
    alg_s = is_algebra(order)
    alg_t = is_algebra(a_cat)
    report.add("algebras: S-algebra iff T-algebra", alg_s.algebra == alg_t.algebra,
               detail=f"algebra={alg_s.algebra}")
    report.add("algebras: structure maps agree",
               (alg_s.structure is None) == (alg_t.structure is None)
               and (alg_s.structure is None or alg_s.structure.mapping == alg_t.structure.mapping))
    report.add("algebra iff cocomplete", alg_s.algebra == bool(is_cocomplete(a_cat)))
    report.add("structure unique up to isomorphism", alg_s.unique)
    if alg_s:
        s = alg_s.structure
        mu = DoctrineInstance(a_cat).mu
        # up to isomorphism: the structure map picks one object per class
        report.add("algebra laws: structure map unit law s o eta = id",
                   functors_isomorphic(y.then(s), QFunctor.identity(a_cat)))
        report.add("algebra laws: structure map associativity s o mu = s o T(s)",
                   functors_isomorphic(mu.then(s), presheaf_map(s).then(s)))
    return report


# modules as algebras -------------------------------------------------------------

def skeleton(a_cat: QCategory) -> QCategory:
    """Full subcategory on the least object of each isomorphism class."""
    keep = [a for a in a_cat.object_ids
            if not any(a_cat.isomorphic(b, a) for b in range(a))]
    return QCategory(a_cat.base, tuple(a_cat.objects[a] for a in keep),
                     tuple(a_cat.types[a] for a in keep),
                     tuple(tuple(a_cat.homs[a][b] for b in keep) for a in keep))


def module_preimage(a_cat: QCategory) -> QModule | None:
    """A module whose category is isomorphic to the skeleton of ``a_cat``.

    Independent of the colimit machinery: ``act(f)(y)`` must be the least
    ``x`` with ``f <= A(y, x)``.
    """
    sk = skeleton(a_cat)
    q = sk.base
    fibres = [sk.objects_of_type(x) for x in q.object_ids]
    try:
        carriers = [FiniteSuplattice.from_relation(
            [sk.objects[a] for a in fib],
            lambda i, j, fib=fib: sk.below(fib[i], fib[j])) for fib in fibres]
    except InputError:
        return None
    acts = []
    for x in q.object_ids:
        row = []
        for yb in q.object_ids:
            tables = []
            for f in q.homs[x][yb].elements:
                table = []
                for y in fibres[yb]:
                    ok = [i for i, c in enumerate(fibres[x])
                          if q.leq(x, yb, f, sk.homs[y][c])]
                    least = [i for i in ok if all(carriers[x].leq(i, j) for j in ok)]
                    if not least:
                        return None
                    table.append(least[0])
                tables.append(tuple(table))
            row.append(tuple(tables))
        acts.append(tuple(row))
    try:
        m = QModule(q, tuple(carriers), tuple(acts))
    except InputError:
        return None
    if validate_module(m):
        return None
    if find_category_isomorphism(category_of_module(m), sk) is None:
        return None
    return m


def is_module_image(a_cat: QCategory) -> bool:
    return module_preimage(a_cat) is not None


def _check_morphisms(label: str, m: QModule, morphisms, report: Report) -> None:
    bad_commute, bad_round = [], []
    for name, h in morphisms:
        g = functor_of_morphism(h)
        sa = is_algebra(g.source).structure
        sb = is_algebra(g.target).structure
        if sa.then(g).mapping != presheaf_map(g).then(sb).mapping:
            bad_commute.append(name)
        if morphism_of_functor(g).components != h.components:
            bad_round.append(name)
    report.add(f"{label}: morphisms commute with structure maps", not bad_commute,
               bad_commute[:1] or None)
    report.add(f"{label}: morphism -> functor -> morphism is exact", not bad_round,
               bad_round[:1] or None)


def check_algebra_characterisation(q: Quantaloid, modules: Mapping[str, QModule] | None = None,
                   orders: Mapping[str, QCategory | QOrder] | None = None,
                   max_morphisms: int = 12) -> Report:
    report = Report("theorem6")
    iq = idm(q)
    z = centre(iq)
    for name, m in (modules or {}).items():
        bad = validate_module(m)
        if bad:
            report.reject(name, f"invalid module: {bad[0].axiom} at {bad[0].witness}")
            continue
        ext = extend_to_idm(m)
        cat = category_of_module(ext)
        try:
            order = make_order(q, cat)
            report.add(f"{name}: A_M is a Q-order", True)
        except CertificationError as exc:
            report.add(f"{name}: A_M is a Q-order", False, exc.witness, str(exc))
            continue
        alg = is_algebra(order)
        report.add(f"{name}: A_M is an algebra", alg.algebra,
                   None if alg else alg.witness.name())
        if not alg:
            continue
        s = alg.structure
        wit = cocontinuity_witness(s)
        report.add(f"{name}: structure map is cocontinuous", wit is None,
                   None if wit is None else wit.name())
        y = yoneda(cat)
        report.add(f"{name}: structure map is left adjoint to yoneda",
                   functor_leq(QFunctor.identity(presheaf_category(cat)), s.then(y))
                   and functor_leq(y.then(s), QFunctor.identity(cat)))
        back = module_of_category(cat)
        report.add(f"{name}: module -> algebra -> module is an isomorphism",
                   find_module_isomorphism(ext, back) is not None)
        report.add(f"{name}: restriction recovers M", restrict_along_embedding(ext, q) == m)
        morphs = [("identity", ModuleMorphism.identity(ext))]
        morphs += [(f"centre {z.lattice.names[i]}", alpha_hat(fam, ext))
                   for i, fam in enumerate(z.families)]
        morphs += [(f"yoneda {lbl}", h) for lbl, h in yoneda_morphisms(ext)]
        _check_morphisms(name, ext, morphs[:max_morphisms], report)
    for name, o in (orders or {}).items():
        a_cat = _category(o)
        alg = bool(is_algebra(a_cat))
        coc = bool(is_cocomplete(a_cat))
        img = is_module_image(a_cat)
        report.add(f"{name}: algebra = cocomplete = module image", alg == coc == img,
                   detail=f"algebra={alg} cocomplete={coc} image={img}")
    return report
