from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import frames
from qk.enriched import (Distributor, QCategory, QFunctor, check_dist_laws, compose_dist,
                         dist_join, dist_leq, discrete_category, enumerate_distributors,
                         enumerate_functors, functor_leq, identity_distributor, lifting,
                         represent, unit_category, validate_category, validate_distributor,
                         validate_functor)
from qk.errors import InputError
from qk.fixtures import desk, two
from qk.quantaloid import locale_suspension


def _fuzzy(frame, picks):
    """Objects are frame elements; hom(a2, a) is the Heyting implication a => a2."""
    q = locale_suspension(frame)
    return QCategory.build(q, [f"x{i}" for i in range(len(picks))], [0] * len(picks),
                           lambda a2, a: q.right_extension(0, 0, 0, picks[a], picks[a2]))


@st.composite
def fuzzy_categories(draw, n=3):
    frame = draw(frames())
    picks = draw(st.lists(st.sampled_from(list(frame.elements)), min_size=1, max_size=n))
    return _fuzzy(frame, picks)


def _is_dist(a_cat, b_cat, m):
    q = a_cat.base
    ta, tb = a_cat.types, b_cat.types
    for b, a in product(b_cat.object_ids, a_cat.object_ids):
        for b2 in b_cat.object_ids:
            c = q.comp[ta[a]][tb[b]][tb[b2]][b_cat.homs[b2][b]][m[b][a]]
            if not q.leq(ta[a], tb[b2], c, m[b2][a]):
                return False
        for a2 in a_cat.object_ids:
            c = q.comp[ta[a2]][ta[a]][tb[b]][m[b][a]][a_cat.homs[a][a2]]
            if not q.leq(ta[a2], tb[b], c, m[b][a2]):
                return False
    return True


@pytest.mark.parametrize("name", sorted(desk().categories))
def test_fixture_categories_are_valid(name):
    assert validate_category(desk().categories[name]) == []


def test_invalid_category_witness():
    q = two()
    bad = QCategory.build(q, ["a", "b", "c"], [0, 0, 0],
                          lambda a2, a: 1 if a2 == a or (a, a2) in {(0, 1), (1, 2)} else 0)
    v = validate_category(bad)
    assert v[0].axiom == "composition inequality" and v[0].witness == ("c", "b", "a")


def test_type_errors_are_input_errors():
    q = two()
    with pytest.raises(InputError):
        QCategory(q, ("a",), (1,), ((1,),))
    with pytest.raises(InputError):
        QCategory(q, ("a", "a"), (0, 0), ((1, 0), (0, 1)))


@given(fuzzy_categories())
def test_fuzzy_sets_form_categories(cat):
    assert validate_category(cat) == []
    ident = identity_distributor(cat)
    assert validate_distributor(ident) == []
    assert compose_dist(ident, ident) == ident


def test_distributor_enumeration_matches_brute_force():
    ws = desk()
    cats = [ws.categories[n] for n in ("unit_two", "twochain", "disc_two")]
    q = cats[0].base
    for a_cat, b_cat in product(cats, repeat=2):
        brute = []
        cells = [(b, a) for b in b_cat.object_ids for a in a_cat.object_ids]
        for pick in product(q.homs[0][0].elements, repeat=len(cells)):
            m = [[0] * len(a_cat) for _ in b_cat.object_ids]
            for (b, a), v in zip(cells, pick):
                m[b][a] = v
            if _is_dist(a_cat, b_cat, m):
                brute.append(tuple(map(tuple, m)))
        assert sorted(d.elements for d in enumerate_distributors(a_cat, b_cat)) == sorted(brute)


def test_dist_laws_on_small_instances():
    ws = desk()
    assert check_dist_laws([ws.categories["unit_two"], ws.categories["twochain"]]) == []


def test_lifting_is_largest():
    ws = desk()
    a, b = ws.categories["twochain"], ws.categories["disc_two"]
    for phi in enumerate_distributors(a, b):
        for psi in enumerate_distributors(b, b):
            lift = lifting(phi, psi)
            sols = [t for t in enumerate_distributors(b, a) if dist_leq(compose_dist(phi, t), psi)]
            assert lift in sols
            assert all(dist_leq(t, lift) for t in sols)


def test_join_of_distributors():
    c = desk().categories["disc_two"]
    ds = enumerate_distributors(c, c)
    for phi, psi in product(ds, repeat=2):
        j = dist_join(phi, psi)
        assert validate_distributor(j) == []
        assert dist_leq(phi, j) and dist_leq(psi, j)


def test_functors():
    ws = desk()
    f = ws.functors["twochain_bottom"]
    assert validate_functor(f) == []
    chain = ws.categories["twochain"]
    unit = ws.categories["unit_two"]
    fs = list(enumerate_functors(unit, chain))
    assert [g.mapping for g in fs] == [(0,), (1,)]
    assert functor_leq(fs[0], fs[1]) and not functor_leq(fs[1], fs[0])
    left, right = represent(f)
    assert dist_leq(identity_distributor(unit), compose_dist(right, left))
    assert dist_leq(compose_dist(left, right), identity_distributor(chain))


def test_functor_enumeration_is_complete():
    ws = desk()
    for a, b in product(["unit_two", "twochain", "disc_two"], repeat=2):
        a_cat, b_cat = ws.categories[a], ws.categories[b]
        brute = [m for m in product(b_cat.object_ids, repeat=len(a_cat))
                 if not validate_functor(QFunctor(a_cat, b_cat, m))]
        assert [g.mapping for g in enumerate_functors(a_cat, b_cat)] == brute


def test_non_functor_is_reported():
    ws = desk()
    chain = ws.categories["twochain"]
    disc = ws.categories["disc_two"]
    v = validate_functor(QFunctor(chain, disc, (0, 1)))
    assert v and v[0].axiom == "action inequality"


def test_unit_and_discrete_categories():
    q = two()
    assert validate_category(unit_category(q, 0)) == []
    d = discrete_category(q, ["a", "b"], [0, 0])
    assert d.homs == ((1, 0), (0, 1))
    assert d.is_skeletal() == (True, None)


def test_distributor_shape_errors():
    c = desk().categories["twochain"]
    with pytest.raises(InputError):
        Distributor(c, c, ((1, 1),))
