from __future__ import annotations

import pytest
from hypothesis import given

from conftest import frames
from qk.centre_morita import (ModCentreElement, alpha_hat, alpha_hat_family, beta_bar,
                              check_centre_invariance, check_centre_correspondence, duplication_equivalence,
                              find_equivalence, find_natural_iso_to_identity,
                              representable_key, with_representables, yoneda_morphisms)
from qk.errors import InputError
from qk.fixtures import desk, omega3, omega3_modules, qmin, qnc, two
from qk.modules import ModuleMorphism, representable_module, validate_module_morphism
from qk.quantaloid import Homomorphism, centre, locale_suspension


@pytest.mark.parametrize("builder", [two, omega3, qmin, qnc])
def test_centre_correspondence_on_fixture_quantaloids(builder):
    report = check_centre_correspondence(builder(), omega3_modules() if builder is omega3 else None)
    assert report.passed, report.summary()


@given(frames())
def test_centre_correspondence_on_generated_locales(frame):
    report = check_centre_correspondence(locale_suspension(frame))
    assert report.passed, report.summary()


def test_round_trip_is_exact():
    q = qnc()
    mods = with_representables(q)
    for fam in centre(q).families:
        assert beta_bar(alpha_hat_family(fam, mods)) == fam


def test_centre_of_a_commutative_quantale_is_itself():
    # a commutative quantale is its own centre
    q = omega3()
    z = centre(q)
    assert [f[0] for f in z.families] == list(q.homs[0][0].elements)


def test_non_central_family_is_refused():
    q = qnc()
    lat = q.homs[0][0]
    with pytest.raises(InputError, match="centre"):
        alpha_hat((lat.index("002"),), representable_module(q, 0))


def test_beta_bar_needs_representables():
    q = qnc()
    with pytest.raises(InputError, match="missing"):
        beta_bar(ModCentreElement(q, {}))


def test_beta_bar_rejects_non_natural_result():
    q = qnc()
    rep = representable_module(q, 0)
    lat = q.homs[0][0]
    # post-composition with a non-central map is a module endomorphism of Q(-, *)
    k = lat.index("002")
    comps = (tuple(q.comp[0][0][0][k][g] for g in lat.elements),)
    h = ModuleMorphism(rep, rep, comps)
    assert validate_module_morphism(h) == []
    with pytest.raises(InputError, match="natural"):
        beta_bar(ModCentreElement(q, {representable_key(q, 0): h}))


def test_yoneda_morphisms_are_morphisms():
    m = omega3_modules()["omega3_open"]
    items = list(yoneda_morphisms(m))
    assert len(items) == len(m.carriers[0])
    assert all(validate_module_morphism(h) == [] for _, h in items)


@pytest.mark.parametrize("builder", [two, omega3, qmin, qnc])
def test_duplication_preserves_centre(builder):
    q = builder()
    q2, f, g = duplication_equivalence(q, 0)
    assert len(centre(q2).families) == len(centre(q).families)
    report = check_centre_invariance(q, q2, (f, g))
    assert report.passed, report.summary()


def test_declared_equivalence():
    ws = desk()
    f, g = ws.equivalences["two_qmin"]
    report = check_centre_invariance(f.source, f.target, (f, g))
    assert report.passed, report.summary()


def test_search_finds_equivalence():
    assert find_equivalence(two(), qmin()) is not None
    assert find_equivalence(two(), omega3()) is None


def test_non_equivalence_is_refused():
    q = omega3()
    # collapse everything to bottom except the unit: not a homomorphism
    h = Homomorphism(q, q, (0,), (((0, 0, 2),),))
    with pytest.raises(InputError):
        check_centre_invariance(q, q, (h, h))


def test_natural_iso_to_identity():
    q = qmin()
    assert find_natural_iso_to_identity(Homomorphism.identity(q)) is not None
    swap = Homomorphism(q, q, (1, 0), tuple(tuple(tuple(q.homs[a][b].elements)
                                                  for b in range(2)) for a in range(2)))
    assert find_natural_iso_to_identity(swap) is not None
