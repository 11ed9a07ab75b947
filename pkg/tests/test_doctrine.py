from __future__ import annotations

import pytest
from hypothesis import given, settings

from test_enriched import fuzzy_categories
from test_modules import frame_modules
from qk.caps import Caps
from qk.cauchy import make_order
from qk.doctrine import (DoctrineInstance, check_kz, check_order_adjunction, check_algebra_characterisation,
                         is_algebra, is_module_image, module_preimage, skeleton)
from qk.errors import InputError, ResourceError
from qk.locale_sheaf import category_of_ordered_sheaf
from qk.fixtures import desk, omega3, two
from qk.modules import category_of_module, find_module_isomorphism
from qk.presheaf import is_cocomplete

SMALL = ["unit_two", "twochain", "disc_two", "idm_two_chain", "idm_two_disc", "idm_omega3_m"]


@pytest.mark.parametrize("name", SMALL)
def test_kz_on_fixtures(name):
    report = check_kz(desk().categories[name])
    assert report.passed, report.summary()


@settings(max_examples=10)
@given(fuzzy_categories(n=2))
def test_kz_on_generated_categories(cat):
    try:
        report = check_kz(cat)
    except ResourceError:
        return
    assert report.passed, report.summary()


def test_kz_refuses_beyond_caps():
    with pytest.raises(ResourceError):
        check_kz(desk().categories["idm_two_chain"], Caps(max_hom=4, max_obj=2))
    with pytest.raises(ResourceError):
        check_kz(desk().categories["idm_omega3_m"], Caps(max_hom=2, max_obj=3))


def test_monad_data_shapes():
    d = DoctrineInstance(desk().categories["twochain"])
    assert len(d.t) == 3
    assert d.eta.target == d.t
    assert d.mu.source == DoctrineInstance(d.t).t


@pytest.mark.parametrize("name", SMALL)
def test_algebra_iff_cocomplete(name):
    cat = desk().categories[name]
    assert bool(is_algebra(cat)) == bool(is_cocomplete(cat))


@given(fuzzy_categories())
def test_algebra_iff_cocomplete_generated(cat):
    res = is_algebra(cat)
    assert bool(res) == bool(is_cocomplete(cat))
    if res:
        assert res.unique


@given(frame_modules())
def test_module_preimage_recovers_module(m):
    cat = category_of_module(m)
    assert is_module_image(cat)
    back = module_preimage(cat)
    assert back is not None and find_module_isomorphism(m, back) is not None


def test_non_cocomplete_is_not_a_module_image():
    cat = desk().categories["disc_two"]
    assert not is_module_image(cat)
    assert module_preimage(cat) is None


def test_skeleton_of_preorder():
    ws = desk()
    cat = category_of_ordered_sheaf(ws.orders["two_preorder"])
    sk = skeleton(cat)
    assert sk.is_skeletal()[0]
    assert len(sk) < len(cat)


@pytest.mark.parametrize("name", ["idm_two_chain", "idm_two_disc"])
def test_order_adjunction_on_declared_orders(name):
    ws = desk()
    qname, _ = ws.category_base[name]
    order = make_order(ws.quantaloids[qname], ws.categories[name])
    report = check_order_adjunction(order)
    assert report.passed, report.summary()


def test_order_adjunction_requires_certified_order():
    with pytest.raises(InputError):
        check_order_adjunction(desk().categories["idm_two_chain"])


def test_algebra_characterisation_on_omega3():
    ws = desk()
    mods = {n: m for n, m in ws.modules.items() if ws.module_base[n] == "omega3"}
    report = check_algebra_characterisation(omega3(), mods, {})
    assert report.passed, report.summary()
    assert len(report.checks) > 10


def test_algebra_characterisation_with_orders():
    ws = desk()
    order = make_order(two(), ws.categories["idm_two_chain"])
    report = check_algebra_characterisation(two(), {"rep": ws.modules["two_rep"]}, {"chain": order})
    assert report.passed, report.summary()
