from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given

from test_enriched import fuzzy_categories
from qk.enriched import (QFunctor, functor_leq, identity_distributor, validate_category,
                         validate_functor)
from qk.errors import ColimitMissing, InputError
from qk.fixtures import desk
from qk.presheaf import (Presheaf, all_presheaves, colimit, enumerate_presheaves,
                         is_cocomplete, presheaf_category, presheaf_hom, presheaf_map,
                         representable, supremum, yoneda)


def _brute_presheaves(cat, x):
    q = cat.base
    t = cat.types
    out = []
    for vals in product(*(q.homs[x][t[a]].elements for a in cat.object_ids)):
        if all(q.leq(x, t[a2], q.comp[x][t[a]][t[a2]][cat.homs[a2][a]][vals[a]], vals[a2])
               for a2, a in product(cat.object_ids, repeat=2)):
            out.append(vals)
    return out


# presheaf counts per fixture category [DERIVED: brute force]
COUNTS = {"unit_two": 2, "twochain": 3, "disc_two": 4, "idm_two_disc": 5,
          "idm_two_chain": 4, "idm_omega3_m": 5}


@pytest.mark.parametrize("name", sorted(COUNTS))
def test_presheaf_counts(name):
    cat = desk().categories[name]
    brute = [(x, v) for x in cat.base.object_ids for v in _brute_presheaves(cat, x)]
    assert len(brute) == COUNTS[name]
    assert [(p.type, p.values) for p in all_presheaves(cat)] == sorted(brute)


@given(fuzzy_categories())
def test_enumeration_matches_brute_force(cat):
    assert sorted(p.values for p in enumerate_presheaves(cat, 0)) == _brute_presheaves(cat, 0)


@given(fuzzy_categories())
def test_yoneda_is_fully_faithful(cat):
    y = yoneda(cat)
    pa = presheaf_category(cat)
    assert validate_category(pa) == []
    assert validate_functor(y) == []
    for a2, a in product(cat.object_ids, repeat=2):
        assert pa.homs[y(a2)][y(a)] == cat.homs[a2][a]


@given(fuzzy_categories())
def test_yoneda_lemma(cat):
    pa = presheaf_category(cat)
    y = yoneda(cat)
    for i, phi in enumerate(all_presheaves(cat)):
        for a in cat.object_ids:
            assert pa.homs[y(a)][i] == phi.values[a]


@given(fuzzy_categories())
def test_presheaf_categories_are_cocomplete(cat):
    assert is_cocomplete(presheaf_category(cat))


def test_presheaf_category_of_twochain():
    pa = presheaf_category(desk().categories["twochain"])
    assert len(pa) == 3


def test_cocompleteness_of_fixtures():
    ws = desk()
    expected = {"unit_two": True, "twochain": True, "disc_two": False,
                "idm_two_disc": False, "idm_two_chain": True, "idm_omega3_m": False}
    for name, want in expected.items():
        res = is_cocomplete(ws.categories[name])
        assert bool(res) is want
        if want:
            assert functor_leq(yoneda(ws.categories[name]).then(res.sup),
                               QFunctor.identity(ws.categories[name]))
        else:
            with pytest.raises(ColimitMissing):
                supremum(res.witness)


def test_supremum_of_representable_is_its_object():
    cat = desk().categories["twochain"]
    for a in cat.object_ids:
        assert supremum(representable(cat, a)) == a


def test_colimit_with_identity_weight():
    cat = desk().categories["twochain"]
    ident = QFunctor.identity(cat)
    k = colimit(identity_distributor(cat), ident)
    assert k.mapping == ident.mapping


def test_presheaf_map_is_functorial():
    ws = desk()
    f = ws.functors["twochain_bottom"]
    pf = presheaf_map(f)
    assert validate_functor(pf) == []
    pid = presheaf_map(QFunctor.identity(f.source))
    assert pid.mapping == tuple(range(len(pid.source)))


def test_hom_between_presheaves():
    cat = desk().categories["twochain"]
    ps = all_presheaves(cat)
    for psi, phi in product(ps, repeat=2):
        h = presheaf_hom(psi, phi)
        assert h == (1 if all(a <= b for a, b in zip(psi.values, phi.values)) else 0)


def test_unknown_type():
    with pytest.raises(InputError):
        enumerate_presheaves(desk().categories["twochain"], 5)


def test_presheaf_name():
    cat = desk().categories["twochain"]
    assert Presheaf(cat, 0, (1, 1)).name() == "*[1,1]"
