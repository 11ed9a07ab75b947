"""Desk-scale fixtures, as Python builders and as the workspace document
``fixtures/desk.json`` (regenerate with ``python -m qk.fixtures``)."""

from __future__ import annotations

import sys
from functools import lru_cache
from itertools import product
from pathlib import Path

from .io import Workspace, document, dump_lattice, dump_module, dumps, load_document
from .modules import QModule
from .quantaloid import Quantaloid, idm, locale_suspension, suspension
from .suplattice import FiniteSuplattice, supmorphisms

DESK_PATH = Path(__file__).resolve().parents[2] / "fixtures" / "desk.json"


def two_lattice() -> FiniteSuplattice:
    return FiniteSuplattice.chain(["0", "1"])


def omega3_lattice() -> FiniteSuplattice:
    return FiniteSuplattice.chain(["⊥", "m", "⊤"])


def boolean4_lattice() -> FiniteSuplattice:
    return FiniteSuplattice.from_covers(["0", "a", "b", "1"],
                                        [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def two() -> Quantaloid:
    return locale_suspension(two_lattice())


def omega3() -> Quantaloid:
    return locale_suspension(omega3_lattice())


def qmin() -> Quantaloid:
    """Two isomorphic objects; every hom is the 2-chain, composition is min."""
    lat = two_lattice()
    return Quantaloid.build(["A", "B"], lambda a, b: lat,
                            lambda a, b, c, g, f: min(g, f), [1, 1])


def qnc() -> Quantaloid:
    """Join-preserving endomaps of the 3-chain under composition (non-commutative)."""
    c3 = FiniteSuplattice.chain(["0", "1", "2"])
    maps = list(supmorphisms(c3, c3))
    names = ["".join(str(v) for v in t) for t in maps]
    lat = FiniteSuplattice.from_relation(
        names, lambda i, j: all(x <= y for x, y in zip(maps[i], maps[j])))
    index = {t: i for i, t in enumerate(maps)}
    table = [[index[tuple(maps[g][maps[f][y]] for y in range(3))] for f in range(len(maps))]
             for g in range(len(maps))]
    return suspension(lat, table, index[(0, 1, 2)])


def scalar_module(q: Quantaloid, carrier: FiniteSuplattice, tables: dict[str, tuple[int, ...]]) -> QModule:
    """A module on a one-object ``q`` given by the action table of each element."""
    names = q.homs[0][0].names
    return QModule.build(q, [carrier], lambda a, b, f, y: tables[names[f]][y])


def omega3_modules() -> dict[str, QModule]:
    q, c2 = omega3(), two_lattice()
    return {
        "omega3_open": scalar_module(q, c2, {"⊥": (0, 0), "m": (0, 1), "⊤": (0, 1)}),
        "omega3_closed": scalar_module(q, c2, {"⊥": (0, 0), "m": (0, 0), "⊤": (0, 1)}),
    }


def broken_module() -> QModule:
    """The unit acts as zero, violating the unit law."""
    m = omega3_modules()["omega3_open"]
    acts = tuple(tuple(tuple((0, 0) if f == 2 else t for f, t in enumerate(row))
                       for row in r) for r in m.acts)
    return QModule(m.base, m.carriers, acts)


# the workspace document -------------------------------------------------------------

def _sheaf(locale: str, sections: dict, restrict: list | None = None) -> dict:
    return {"locale": locale, "sections": sections, "restrict": restrict or []}


def desk_document() -> dict:
    q_nc = qnc()
    base = document(quantaloids={"qmin": qmin(), "qnc": q_nc,
                                 "idm_omega3": idm(omega3())})
    doc: dict = {
        "lattices": {"c2": dump_lattice(two_lattice()), "c3": dump_lattice(omega3_lattice()),
                     "b4": dump_lattice(boolean4_lattice())},
        "locales": {"two": {"lattice": "c2"}, "omega3": {"lattice": "c3"},
                    "bool4": {"lattice": "b4"}},
        "quantaloids": base["quantaloids"],
    }
    ident2 = [[a, b, "0", "0"] for a, b in product("AB", repeat=2)] + \
             [[a, b, "1", "1"] for a, b in product("AB", repeat=2)]
    doc["homomorphisms"] = {
        "two_to_qmin": {"source": "two", "target": "qmin", "objects": {"*": "A"},
                        "arrows": [["*", "*", "0", "0"], ["*", "*", "1", "1"]]},
        "qmin_to_two": {"source": "qmin", "target": "two", "objects": {"A": "*", "B": "*"},
                        "arrows": ident2},
        "two_to_idm_omega3": {"source": "two", "target": "idm_omega3", "objects": {"*": "⊤"},
                              "arrows": [["*", "*", "0", "⊥"], ["*", "*", "1", "⊤"]]},
        "omega3_to_idm_omega3": {"source": "omega3", "target": "idm_omega3",
                                 "objects": {"*": "⊤"},
                                 "arrows": [["*", "*", x, x] for x in ("⊥", "m", "⊤")]},
    }
    doc["equivalences"] = {"two_qmin": {"forward": "two_to_qmin", "backward": "qmin_to_two"}}
    doc["categories"] = {
        "unit_two": {"base": "two", "objects": [["u", "*"]], "homs": [["u", "u", "1"]]},
        "twochain": {"base": "two", "objects": [["a", "*"], ["b", "*"]],
                     "homs": [["a", "a", "1"], ["b", "b", "1"], ["a", "b", "1"]]},
        "disc_two": {"base": "two", "objects": [["a", "*"], ["b", "*"]],
                     "homs": [["a", "a", "1"], ["b", "b", "1"]]},
        "idm_two_disc": {"base": {"idm": "two"},
                         "objects": [["z", "0"], ["a", "1"], ["b", "1"]],
                         "homs": [["a", "a", "1"], ["b", "b", "1"]]},
        "idm_two_chain": {"base": {"idm": "two"},
                          "objects": [["z", "0"], ["a", "1"], ["b", "1"]],
                          "homs": [["a", "a", "1"], ["b", "b", "1"], ["a", "b", "1"]]},
        "idm_omega3_m": {"base": {"idm": "omega3"}, "objects": [["x", "m"]],
                         "homs": [["x", "x", "m"]]},
    }
    doc["functors"] = {
        "twochain_bottom": {"source": "unit_two", "target": "twochain", "map": {"u": "a"}},
    }
    doc["distributors"] = {
        "twochain_id": {"source": "twochain", "target": "twochain",
                        "entries": [["a", "a", "1"], ["b", "b", "1"], ["a", "b", "1"]]},
    }
    mods: dict = {
        "two_rep": {"base": "two", "representable": "*"},
        "two_zero": {"base": "two", "zero": True},
        "omega3_rep": {"base": "omega3", "representable": "*"},
        "omega3_zero": {"base": "omega3", "zero": True},
        "qmin_rep": {"base": "qmin", "representable": "A"},
        "qnc_rep": {"base": "qnc", "representable": "*"},
    }
    for name, m in omega3_modules().items():
        mods[name] = dump_module(m, "omega3")
    doc["modules"] = mods
    doc["sheaves"] = {
        "two_xy": _sheaf("two", {"0": ["*"], "1": ["x", "y"]}),
        "two_xyt": _sheaf("two", {"0": ["*"], "1": ["x", "y", "t"]}),
        "omega3_split": _sheaf("omega3", {"⊥": ["*"], "m": ["p", "q"], "⊤": ["x", "y"]},
                               [["⊤", "m", {"x": "p", "y": "q"}]]),
        "omega3_one": _sheaf("omega3", {"⊥": ["*"], "m": ["p"], "⊤": ["x"]}),
        "omega3_pq": _sheaf("omega3", {"⊥": ["*"], "m": ["p", "q"]}),
        "omega3_merge": _sheaf("omega3", {"⊥": ["*"], "m": ["z"], "⊤": ["x", "y"]}),
        "bool4_grid": _sheaf("bool4", {"0": ["*"], "a": ["p", "q"], "b": ["r", "s"],
                                       "1": ["pr", "ps", "qr", "qs"]},
                             [["1", "a", {"pr": "p", "ps": "p", "qr": "q", "qs": "q"}],
                              ["1", "b", {"pr": "r", "ps": "s", "qr": "r", "qs": "s"}]]),
    }
    doc["orders"] = {
        "two_chain": {"sheaf": "two_xy", "leq": {"1": [["x", "y"]]}},
        "two_incomparable": {"sheaf": "two_xy", "leq": {}},
        "two_chain_top": {"sheaf": "two_xyt", "leq": {"1": [["x", "y"], ["y", "t"]]}},
        "two_preorder": {"sheaf": "two_xy", "leq": {"1": [["x", "y"], ["y", "x"]]},
                         "antisymmetric": False},
        "omega3_chain": {"sheaf": "omega3_split", "leq": {"m": [["p", "q"]], "⊤": [["x", "y"]]}},
        "omega3_terminal": {"sheaf": "omega3_one", "leq": {}},
        "omega3_points": {"sheaf": "omega3_pq", "leq": {}},
        "omega3_merged": {"sheaf": "omega3_merge", "leq": {}},
        "bool4_product": {"sheaf": "bool4_grid",
                          "leq": {"a": [["p", "q"]], "b": [["r", "s"]],
                                  "1": [["pr", "ps"], ["pr", "qr"], ["ps", "qs"], ["qr", "qs"]]}},
    }
    return doc


@lru_cache(maxsize=1)
def desk() -> Workspace:
    """The fixture workspace (cached; structures are immutable)."""
    return load_document(desk_document())


def main(argv: list[str] | None = None) -> int:
    path = Path((argv or sys.argv[1:] or [str(DESK_PATH)])[0])
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(desk_document()), encoding="utf-8")
    print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
