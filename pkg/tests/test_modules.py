from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import frames
from qk.enriched import QFunctor
from qk.errors import ConversionError, PreconditionError
from qk.fixtures import broken_module, desk, omega3, omega3_modules, qnc
from qk.modules import (ModuleMorphism, QModule, category_of_module, check_module_round_trips,
                        extend_to_idm, find_category_isomorphism, find_module_isomorphism,
                        functor_of_morphism, module_of_category, morphism_of_functor,
                        representable_module, restrict_along_embedding, validate_module,
                        validate_module_morphism, zero_module)
from qk.presheaf import is_cocomplete
from qk.quantaloid import locale_suspension
from qk.suplattice import FiniteSuplattice


@st.composite
def frame_modules(draw, size: int = 3):
    """A sub-module ``down c`` or a quotient ``up c`` of the representable on a frame."""
    frame = draw(frames(size))
    q = locale_suspension(frame)
    c = draw(st.sampled_from(list(frame.elements)))
    if draw(st.booleans()):
        pts = frame.down(c)
        act = lambda f, y: frame.meet2(f, y)  # noqa: E731
    else:
        pts = [y for y in frame.elements if frame.leq(c, y)]
        act = lambda f, y: frame.join2(frame.meet2(f, y), c)  # noqa: E731
    carrier = FiniteSuplattice.from_relation([frame.names[y] for y in pts],
                                             lambda i, j: frame.leq(pts[i], pts[j]))
    pos = {y: i for i, y in enumerate(pts)}
    return QModule.build(q, [carrier], lambda a, b, f, y: pos[act(f, pts[y])])


@pytest.mark.parametrize("name", sorted(desk().modules))
def test_fixture_modules_are_valid(name):
    assert validate_module(desk().modules[name]) == []


def test_broken_module_fails_unit_law():
    v = validate_module(broken_module())
    assert "identity acts as identity" in {x.axiom for x in v}


@given(frame_modules())
def test_generated_modules_round_trip(m):
    assert validate_module(m) == []
    cat = category_of_module(m)
    assert is_cocomplete(cat)
    back = module_of_category(cat)
    assert find_module_isomorphism(m, back) is not None
    assert find_category_isomorphism(cat, category_of_module(back)) is not None


@given(frame_modules())
def test_idm_extension_restricts_back(m):
    ext = extend_to_idm(m)
    assert validate_module(ext) == []
    assert restrict_along_embedding(ext, m.base) == m


@given(frames())
def test_category_of_representable_is_heyting(frame):
    q = locale_suspension(frame)
    cat = category_of_module(representable_module(q, 0))
    for y, x in product(frame.elements, repeat=2):
        imp = [z for z in frame.elements if frame.leq(frame.meet2(z, y), x)]
        assert cat.homs[y][x] == frame.join(imp)


def test_round_trips_on_fixtures():
    ws = desk()
    for qname in ("two", "omega3", "qmin", "qnc"):
        samples = {n: m for n, m in ws.modules.items() if ws.module_base[n] == qname}
        report = check_module_round_trips(ws.quantaloids[qname], samples)
        assert report.passed, report.summary()


def test_round_trip_check_rejects_invalid_modules():
    report = check_module_round_trips(omega3(), {"broken": broken_module()})
    assert report.passed and report.rejected and report.rejected[0][0] == "broken"


def test_non_isomorphic_modules():
    mods = omega3_modules()
    assert find_module_isomorphism(mods["omega3_open"], mods["omega3_closed"]) is None


def test_morphisms():
    m = representable_module(qnc(), 0)
    ident = ModuleMorphism.identity(m)
    assert validate_module_morphism(ident) == []
    assert ident.then(ident) == ident
    g = functor_of_morphism(ident)
    assert morphism_of_functor(g).components == ident.components
    # a constant map to the top is not a supmorphism
    c = m.carriers[0]
    bad = ModuleMorphism(m, m, (tuple(c.top for _ in c.elements),))
    assert validate_module_morphism(bad)


def test_zero_module():
    z = zero_module(qnc())
    assert validate_module(z) == []
    assert len(category_of_module(z)) == 1


def test_module_of_non_cocomplete_category():
    with pytest.raises(PreconditionError):
        module_of_category(desk().categories["disc_two"])


def test_non_cocontinuous_functor_is_refused():
    ws = desk()
    cat = category_of_module(ws.modules["two_rep"])
    top = QFunctor(cat, cat, (1, 1))
    with pytest.raises(ConversionError):
        morphism_of_functor(top)
