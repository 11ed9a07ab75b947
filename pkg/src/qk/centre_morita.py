"""Centres of quantaloids versus centres of their module categories, and
transport of centres along equivalences of quantaloids."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping, Sequence

from .errors import InputError
from .modules import (ModuleMorphism, QModule, representable_module,
                      validate_module_morphism)
from .quantaloid import (Centre, Homomorphism, Quantaloid, centre, homomorphisms,
                         is_central, validate_homomorphism)
from .report import Report

Family = tuple[int, ...]


def representable_key(q: Quantaloid, a: int) -> str:
    return f"Q(-,{q.objects[a]})"


def with_representables(q: Quantaloid,
                        samples: Mapping[str, QModule] | None = None) -> dict[str, QModule]:
    out = {representable_key(q, a): representable_module(q, a) for a in q.object_ids}
    out.update(samples or {})
    return out


@dataclass(frozen=True)
class ModCentreElement:
    """A sampled endo-transformation of the identity on modules: one
    endomorphism per named sample module."""

    base: Quantaloid
    components: Mapping[str, ModuleMorphism]


def alpha_hat(alpha: Sequence[int], m: QModule) -> ModuleMorphism:
    """The endomorphism of ``m`` acting by ``alpha_A`` at each object ``A``."""
    q = m.base
    if len(alpha) != len(q) or not is_central(q, alpha):
        raise InputError("family is not in the centre")
    return ModuleMorphism(m, m, tuple(m.acts[a][a][alpha[a]] for a in q.object_ids))


def alpha_hat_family(alpha: Sequence[int],
                     samples: Mapping[str, QModule]) -> ModCentreElement:
    q = next(iter(samples.values())).base
    return ModCentreElement(q, {k: alpha_hat(alpha, m) for k, m in samples.items()})


def beta_bar(beta: ModCentreElement) -> Family:
    """Apply the component at each representable ``Q(-, A)`` to ``1_A``."""
    q = beta.base
    fam = []
    for a in q.object_ids:
        key = representable_key(q, a)
        h = beta.components.get(key)
        if h is None:
            raise InputError(f"missing component at representable {key}")
        if h.source != representable_module(q, a):
            raise InputError(f"component {key} is not on the representable module")
        fam.append(h.components[a][q.identities[a]])
    fam = tuple(fam)
    if not is_central(q, fam):
        raise InputError("resulting family is not natural")
    return fam


def _morphism_join(h: ModuleMorphism, k: ModuleMorphism) -> ModuleMorphism:
    m = h.target
    return ModuleMorphism(h.source, m, tuple(
        tuple(m.carriers[a].join2(x, y) for x, y in zip(ch, ck))
        for a, (ch, ck) in enumerate(zip(h.components, k.components))))


def _zero_morphism(m: QModule) -> ModuleMorphism:
    return ModuleMorphism(m, m, tuple(tuple(c.bottom for _ in c.elements) for c in m.carriers))


def yoneda_morphisms(m: QModule) -> Iterator[tuple[str, ModuleMorphism]]:
    """The morphisms ``Q(-, A) -> M`` sending ``g`` to ``act(g)(x)``."""
    q = m.base
    for a in q.object_ids:
        rep = representable_module(q, a)
        for x in m.carriers[a].elements:
            comps = tuple(tuple(m.acts[y][a][g][x] for g in q.homs[y][a].elements)
                          for y in q.object_ids)
            yield f"{q.objects[a]}:{m.carriers[a].names[x]}", ModuleMorphism(rep, m, comps)


def check_centre_correspondence(q: Quantaloid, samples: Mapping[str, QModule] | None = None) -> Report:
    """``beta_bar o alpha_hat = id`` exactly; homomorphism laws on both sides
    (the module side over the samples only); commutativity of the centre."""
    report = Report("prop8")
    mods = with_representables(q, samples)
    z = centre(q)
    fams = z.families
    t = z.quantale.comp[0][0][0]
    lat = z.lattice
    report.add("centre is commutative", z.is_commutative())
    hats = {i: alpha_hat_family(f, mods) for i, f in enumerate(fams)}
    bad = [z.lattice.names[i] for i, f in enumerate(fams) if beta_bar(hats[i]) != f]
    report.add("beta_bar(alpha_hat(a)) = a for every central a", not bad, bad or None)

    nat_bad = []
    for i in range(len(fams)):
        for key, h in hats[i].components.items():
            v = validate_module_morphism(h)
            if v:
                nat_bad.append((lat.names[i], key, v[0].axiom))
    report.add("alpha_hat components are module morphisms", not nat_bad, nat_bad[:1] or None)

    yon_bad = []
    for key, m in mods.items():
        for label, y in yoneda_morphisms(m):
            src_key = next(k for k, v in mods.items() if v == y.source)
            for i in range(len(fams)):
                lhs = hats[i].components[src_key].then(y)
                rhs = y.then(hats[i].components[key])
                if lhs.components != rhs.components:
                    yon_bad.append((lat.names[i], key, label))
    report.add("alpha_hat natural in module morphisms (sampled: Yoneda morphisms)",
               not yon_bad, yon_bad[:1] or None)

    unit = z.index(q.identities)
    report.add("alpha_hat preserves the unit",
               all(h.components == ModuleMorphism.identity(h.source).components
                   for h in hats[unit].components.values()))
    report.add("alpha_hat preserves the bottom",
               all(h.components == _zero_morphism(h.source).components
                   for h in hats[lat.bottom].components.values()))
    join_bad, comp_bad = [], []
    for i, j in product(range(len(fams)), repeat=2):
        for key in mods:
            hi, hj = hats[i].components[key], hats[j].components[key]
            if hats[lat.join2(i, j)].components[key].components != _morphism_join(hi, hj).components:
                join_bad.append((lat.names[i], lat.names[j], key))
            if hats[t[i][j]].components[key].components != hj.then(hi).components:
                comp_bad.append((lat.names[i], lat.names[j], key))
    report.add("alpha_hat preserves binary joins", not join_bad, join_bad[:1] or None)
    report.add("alpha_hat preserves composition", not comp_bad, comp_bad[:1] or None)

    # beta_bar side, sampled on joins and composites of alpha_hat families
    bj, bc = [], []
    for i, j in product(range(len(fams)), repeat=2):
        joined = ModCentreElement(q, {k: _morphism_join(hats[i].components[k], hats[j].components[k])
                                      for k in mods})
        composed = ModCentreElement(q, {k: hats[j].components[k].then(hats[i].components[k])
                                        for k in mods})
        if beta_bar(joined) != fams[lat.join2(i, j)]:
            bj.append((lat.names[i], lat.names[j]))
        if beta_bar(composed) != fams[t[i][j]]:
            bc.append((lat.names[i], lat.names[j]))
    ident = ModCentreElement(q, {k: ModuleMorphism.identity(m) for k, m in mods.items()})
    report.add("beta_bar preserves joins (sampled)", not bj, bj[:1] or None)
    report.add("beta_bar preserves composition (sampled)", not bc, bc[:1] or None)
    report.add("beta_bar preserves the unit (sampled)", beta_bar(ident) == tuple(q.identities))
    report.add("alpha_hat(beta_bar(b)) = b (sampled on the sample family)",
               all(alpha_hat_family(beta_bar(hats[i]), mods).components == hats[i].components
                   for i in range(len(fams))),
               detail="sampled, not proved")
    return report


# equivalences and transport ---------------------------------------------------------

def duplicate_object(q: Quantaloid, a: int, name: str | None = None) -> Quantaloid:
    """``q`` with an extra object isomorphic to ``a``."""
    n = len(q)
    src = list(range(n)) + [a]
    objects = list(q.objects) + [name or q.objects[a] + "'"]
    return Quantaloid.build(
        objects, lambda x, y: q.homs[src[x]][src[y]],
        lambda x, y, z, g, f: q.comp[src[x]][src[y]][src[z]][g][f],
        [q.identities[s] for s in src])


def duplication_equivalence(q: Quantaloid, a: int) -> tuple[Quantaloid, Homomorphism, Homomorphism]:
    q2 = duplicate_object(q, a)
    n = len(q)
    src = list(range(n)) + [a]
    inc = Homomorphism(q, q2, tuple(range(n)),
                       tuple(tuple(tuple(q.homs[x][y].elements) for y in range(n))
                             for x in range(n)))
    col = Homomorphism(q2, q, tuple(src),
                       tuple(tuple(tuple(q.homs[src[x]][src[y]].elements)
                                   for y in range(n + 1)) for x in range(n + 1)))
    return q2, inc, col


def _invertible(q: Quantaloid, x: int, y: int) -> list[tuple[int, int]]:
    out = []
    for f in q.homs[x][y].elements:
        for g in q.homs[y][x].elements:
            if (q.comp[x][y][x][g][f] == q.identities[x]
                    and q.comp[y][x][y][f][g] == q.identities[y]):
                out.append((f, g))
    return out


def find_natural_iso_to_identity(h: Homomorphism) -> tuple[tuple[int, int], ...] | None:
    """Invertible ``theta_A: H(A) -> A`` natural in ``A``; pairs ``(theta, inverse)``."""
    q = h.source
    if h.target != q:
        raise InputError("endo-homomorphism expected")
    n = len(q)
    chosen: list[tuple[int, int]] = []

    def natural(k: int) -> bool:
        for a in range(k + 1):
            for x, y in ((a, k), (k, a)):
                hx, hy = h.object_map[x], h.object_map[y]
                for f in q.homs[x][y].elements:
                    lhs = q.comp[hx][hy][y][chosen[y][0]][h.arrow_maps[x][y][f]]
                    rhs = q.comp[hx][x][y][f][chosen[x][0]]
                    if lhs != rhs:
                        return False
        return True

    def extend(k: int) -> Iterator[tuple[tuple[int, int], ...]]:
        if k == n:
            yield tuple(chosen)
            return
        for pair in _invertible(q, h.object_map[k], k):
            chosen.append(pair)
            if natural(k):
                yield from extend(k + 1)
            chosen.pop()

    return next(extend(0), None)


def find_equivalence(q: Quantaloid, q2: Quantaloid) -> tuple[Homomorphism, Homomorphism] | None:
    """Exhaustive search for an equivalence pair (desk-scale only)."""
    backs = list(homomorphisms(q2, q))
    for f in homomorphisms(q, q2):
        for g in backs:
            if (find_natural_iso_to_identity(f.then(g)) is not None
                    and find_natural_iso_to_identity(g.then(f)) is not None):
                return f, g
    return None


def transport_centre(f: Homomorphism, g: Homomorphism,
                     eps: Sequence[tuple[int, int]]) -> list[int]:
    """Map ``Z(Q) -> Z(Q')``: ``alpha |-> eps o F(alpha_G) o eps^-1``."""
    q, q2 = f.source, f.target
    z, z2 = centre(q), centre(q2)
    out = []
    for fam in z.families:
        new = []
        for b in q2.object_ids:
            gb = g.object_map[b]
            fgb = f.object_map[gb]
            mid = f.arrow_maps[gb][gb][fam[gb]]
            th, inv = eps[b]
            x = q2.comp[b][fgb][fgb][mid][inv]
            new.append(q2.comp[b][fgb][b][th][x])
        out.append(z2.index(tuple(new)))
    return out


def check_centre_invariance(q: Quantaloid, q2: Quantaloid,
                            equivalence: tuple[Homomorphism, Homomorphism]) -> Report:
    f, g = equivalence
    for h, label in ((f, "forward"), (g, "backward")):
        bad = validate_homomorphism(h)
        if bad:
            raise InputError(f"{label} map is not a homomorphism: {bad[0].axiom}")
    if f.source != q or f.target != q2 or g.source != q2 or g.target != q:
        raise InputError("equivalence data does not connect the given quantaloids")
    theta = find_natural_iso_to_identity(f.then(g))
    eps = find_natural_iso_to_identity(g.then(f))
    if theta is None:
        raise InputError("G o F is not isomorphic to the identity", "GF")
    if eps is None:
        raise InputError("F o G is not isomorphic to the identity", "FG")
    report = Report("prop10")
    z, z2 = centre(q), centre(q2)
    tau = transport_centre(f, g, eps)
    report.add("transport is a bijection of centres",
               sorted(tau) == list(range(len(z2.families))))
    l1, l2 = z.lattice, z2.lattice
    report.add("transport is an order isomorphism",
               all(l1.leq(i, j) == l2.leq(tau[i], tau[j])
                   for i in l1.elements for j in l1.elements))
    t1, t2 = z.quantale.comp[0][0][0], z2.quantale.comp[0][0][0]
    report.add("transport preserves composition",
               all(tau[t1[i][j]] == t2[tau[i]][tau[j]]
                   for i in l1.elements for j in l1.elements))
    report.add("transport preserves the unit",
               tau[z.quantale.identities[0]] == z2.quantale.identities[0])
    report.add("transport preserves joins",
               all(tau[l1.join2(i, j)] == l2.join2(tau[i], tau[j])
                   for i in l1.elements for j in l1.elements)
               and tau[l1.bottom] == l2.bottom)
    return report
