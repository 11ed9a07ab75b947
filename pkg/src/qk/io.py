"""JSON workspace documents: loading with located parse errors, and
deterministic dumping of constructed structures.

A document is an object whose keys are sections. Every definition has a
name unique across all sections; later sections refer to earlier ones by
name. Element references are element names. See the README for the schema.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Any

from .enriched import Distributor, QCategory, QFunctor
from .errors import InputError, QKError
from .locale_sheaf import FiniteLocale, FiniteSheaf, OrderedSheaf
from .modules import QModule, representable_module, zero_module
from .quantaloid import Homomorphism, Quantaloid, idm
from .suplattice import FiniteSuplattice

SECTIONS = ("lattices", "locales", "quantales", "quantaloids", "homomorphisms",
            "equivalences", "categories", "functors", "distributors", "modules",
            "sheaves", "orders")


class ParseError(QKError, ValueError):
    """Malformed document; ``location`` is a dotted path into it."""

    def __init__(self, location: str, message: str) -> None:
        super().__init__(f"{location}: {message}")
        self.location = location


@dataclass
class Workspace:
    lattices: dict[str, FiniteSuplattice] = field(default_factory=dict)
    locales: dict[str, FiniteLocale] = field(default_factory=dict)
    quantaloids: dict[str, Quantaloid] = field(default_factory=dict)
    homomorphisms: dict[str, Homomorphism] = field(default_factory=dict)
    equivalences: dict[str, tuple[Homomorphism, Homomorphism]] = field(default_factory=dict)
    categories: dict[str, QCategory] = field(default_factory=dict)
    functors: dict[str, QFunctor] = field(default_factory=dict)
    distributors: dict[str, Distributor] = field(default_factory=dict)
    modules: dict[str, QModule] = field(default_factory=dict)
    sheaves: dict[str, FiniteSheaf] = field(default_factory=dict)
    orders: dict[str, OrderedSheaf] = field(default_factory=dict)
    # quantaloid name for every category/module, and "idm" flag for categories
    category_base: dict[str, tuple[str, bool]] = field(default_factory=dict)
    module_base: dict[str, str] = field(default_factory=dict)
    kinds: dict[str, str] = field(default_factory=dict)

    def quantaloid_name(self, q: Quantaloid) -> str | None:
        return next((n for n, v in self.quantaloids.items() if v is q), None)


# loading ---------------------------------------------------------------------

class _Loader:
    def __init__(self, doc: Any) -> None:
        if not isinstance(doc, dict):
            raise ParseError("$", "document must be a JSON object")
        unknown = sorted(set(doc) - set(SECTIONS))
        if unknown:
            raise ParseError(unknown[0], "unknown section")
        self.doc = doc
        self.ws = Workspace()

    # helpers
    def _obj(self, x: Any, loc: str) -> dict:
        if not isinstance(x, dict):
            raise ParseError(loc, "expected an object")
        return x

    def _list(self, x: Any, loc: str) -> list:
        if not isinstance(x, list):
            raise ParseError(loc, "expected a list")
        return x

    def _key(self, d: dict, k: str, loc: str) -> Any:
        if k not in d:
            raise ParseError(f"{loc}.{k}", "missing field")
        return d[k]

    def _ref(self, table: dict, name: Any, loc: str, kind: str) -> Any:
        if not isinstance(name, str) or name not in table:
            raise ParseError(loc, f"unknown {kind} {name!r}")
        return table[name]

    def _index(self, names: tuple[str, ...], name: Any, loc: str, what: str) -> int:
        try:
            return names.index(name)
        except ValueError:
            raise ParseError(loc, f"{name!r} is not {what}") from None

    def _register(self, name: str, kind: str, loc: str) -> None:
        if name in self.ws.kinds:
            raise ParseError(loc, f"duplicate name {name!r} (already a {self.ws.kinds[name]})")
        self.ws.kinds[name] = kind

    def lattice(self, spec: Any, loc: str) -> FiniteSuplattice:
        if isinstance(spec, str):
            return self._ref(self.ws.lattices, spec, loc, "lattice")
        d = self._obj(spec, loc)
        names = self._list(self._key(d, "elements", loc), f"{loc}.elements")
        if not all(isinstance(n, str) for n in names):
            raise ParseError(f"{loc}.elements", "element names must be strings")
        if len(set(names)) != len(names):
            raise ParseError(f"{loc}.elements", "duplicate element names")
        pairs = []
        for i, p in enumerate(self._list(d.get("order", []), f"{loc}.order")):
            ploc = f"{loc}.order[{i}]"
            if not (isinstance(p, list) and len(p) == 2):
                raise ParseError(ploc, "expected a pair [lower, upper]")
            for x in p:
                self._index(tuple(names), x, ploc, "an element")
            pairs.append((p[0], p[1]))
        return FiniteSuplattice.from_covers(names, pairs)

    def run(self) -> Workspace:
        for section in SECTIONS:
            entries = self._obj(self.doc.get(section, {}), section)
            for name in entries:
                loc = f"{section}.{name}"
                self._register(name, section[:-1], loc)
                try:
                    getattr(self, "load_" + section)(name, entries[name], loc)
                except InputError as exc:
                    raise InputError(f"{loc}: {exc}") from None
        return self.ws

    # sections
    def load_lattices(self, name: str, spec: Any, loc: str) -> None:
        self.ws.lattices[name] = self.lattice(spec, loc)

    def load_locales(self, name: str, spec: Any, loc: str) -> None:
        d = self._obj(spec, loc)
        loc_ = FiniteLocale(self.lattice(self._key(d, "lattice", loc), f"{loc}.lattice"))
        self.ws.locales[name] = loc_
        self.ws.quantaloids[name] = loc_.quantaloid

    def load_quantales(self, name: str, spec: Any, loc: str) -> None:
        d = self._obj(spec, loc)
        lat = self.lattice(self._key(d, "lattice", loc), f"{loc}.lattice")
        unit = self._index(lat.names, self._key(d, "unit", loc), f"{loc}.unit", "an element")
        rows = self._list(self._key(d, "product", loc), f"{loc}.product")
        if len(rows) != len(lat) or any(not isinstance(r, list) or len(r) != len(lat)
                                        for r in rows):
            raise ParseError(f"{loc}.product", "product must be a square table over the elements")
        table = [[self._index(lat.names, v, f"{loc}.product[{i}][{j}]", "an element")
                  for j, v in enumerate(r)] for i, r in enumerate(rows)]
        obj = d.get("object", "*")
        self.ws.quantaloids[name] = Quantaloid.build(
            [obj], lambda a, b: lat, lambda a, b, c, g, f: table[g][f], [unit])

    def load_quantaloids(self, name: str, spec: Any, loc: str) -> None:
        d = self._obj(spec, loc)
        objs = tuple(self._list(self._key(d, "objects", loc), f"{loc}.objects"))
        if len(set(objs)) != len(objs) or not all(isinstance(o, str) for o in objs):
            raise ParseError(f"{loc}.objects", "object names must be distinct strings")
        n = len(objs)
        homs: list[list[FiniteSuplattice | None]] = [[None] * n for _ in range(n)]
        for i, h in enumerate(self._list(self._key(d, "homs", loc), f"{loc}.homs")):
            hloc = f"{loc}.homs[{i}]"
            h = self._obj(h, hloc)
            a = self._index(objs, self._key(h, "from", hloc), f"{hloc}.from", "an object")
            b = self._index(objs, self._key(h, "to", hloc), f"{hloc}.to", "an object")
            homs[a][b] = self.lattice(self._key(h, "lattice", hloc), f"{hloc}.lattice")
        for a, b in product(range(n), repeat=2):
            if homs[a][b] is None:
                raise ParseError(f"{loc}.homs", f"missing hom {objs[a]} -> {objs[b]}")
        idd = self._obj(self._key(d, "identities", loc), f"{loc}.identities")
        ident = [self._index(homs[a][a].names, idd.get(objs[a]), f"{loc}.identities.{objs[a]}",
                             "an element") for a in range(n)]
        comp: dict[tuple[int, int, int, int, int], int] = {}
        for i, e in enumerate(self._list(self._key(d, "composition", loc), f"{loc}.composition")):
            eloc = f"{loc}.composition[{i}]"
            if not (isinstance(e, list) and len(e) == 6):
                raise ParseError(eloc, "expected [A, B, C, g, f, g∘f]")
            a, b, c = (self._index(objs, e[k], eloc, "an object") for k in range(3))
            g = self._index(homs[b][c].names, e[3], eloc, "an element")
            f = self._index(homs[a][b].names, e[4], eloc, "an element")
            comp[(a, b, c, g, f)] = self._index(homs[a][c].names, e[5], eloc, "an element")
        for a, b, c in product(range(n), repeat=3):
            for g, f in product(homs[b][c].elements, homs[a][b].elements):
                if (a, b, c, g, f) not in comp:
                    raise ParseError(f"{loc}.composition",
                                     f"missing entry {objs[a]},{objs[b]},{objs[c]},"
                                     f"{homs[b][c].names[g]},{homs[a][b].names[f]}")
        self.ws.quantaloids[name] = Quantaloid.build(
            objs, lambda a, b: homs[a][b], lambda a, b, c, g, f: comp[(a, b, c, g, f)], ident)

    def _homomorphism(self, spec: Any, loc: str) -> Homomorphism:
        d = self._obj(spec, loc)
        q = self._ref(self.ws.quantaloids, self._key(d, "source", loc), f"{loc}.source", "quantaloid")
        r = self._ref(self.ws.quantaloids, self._key(d, "target", loc), f"{loc}.target", "quantaloid")
        om_d = self._obj(self._key(d, "objects", loc), f"{loc}.objects")
        om = tuple(self._index(r.objects, om_d.get(o), f"{loc}.objects.{o}", "a target object")
                   for o in q.objects)
        am: dict[tuple[int, int, int], int] = {}
        for i, e in enumerate(self._list(self._key(d, "arrows", loc), f"{loc}.arrows")):
            eloc = f"{loc}.arrows[{i}]"
            if not (isinstance(e, list) and len(e) == 4):
                raise ParseError(eloc, "expected [A, B, f, F(f)]")
            a, b = (self._index(q.objects, e[k], eloc, "a source object") for k in range(2))
            f = self._index(q.homs[a][b].names, e[2], eloc, "an element")
            am[(a, b, f)] = self._index(r.homs[om[a]][om[b]].names, e[3], eloc, "an element")
        n = len(q)
        for a, b in product(range(n), repeat=2):
            for f in q.homs[a][b].elements:
                if (a, b, f) not in am:
                    raise ParseError(f"{loc}.arrows", f"missing image of {q.homs[a][b].names[f]}"
                                     f" in {q.objects[a]} -> {q.objects[b]}")
        return Homomorphism(q, r, om, tuple(tuple(tuple(am[(a, b, f)] for f in q.homs[a][b].elements)
                                                  for b in range(n)) for a in range(n)))

    def load_homomorphisms(self, name: str, spec: Any, loc: str) -> None:
        self.ws.homomorphisms[name] = self._homomorphism(spec, loc)

    def load_equivalences(self, name: str, spec: Any, loc: str) -> None:
        d = self._obj(spec, loc)
        f = self._ref(self.ws.homomorphisms, self._key(d, "forward", loc), f"{loc}.forward", "homomorphism")
        g = self._ref(self.ws.homomorphisms, self._key(d, "backward", loc), f"{loc}.backward", "homomorphism")
        self.ws.equivalences[name] = (f, g)

    def _base(self, spec: Any, loc: str) -> tuple[Quantaloid, str, bool]:
        if isinstance(spec, dict) and set(spec) == {"idm"}:
            qn = spec["idm"]
            return idm(self._ref(self.ws.quantaloids, qn, f"{loc}.idm", "quantaloid")), qn, True
        return self._ref(self.ws.quantaloids, spec, loc, "quantaloid"), spec, False

    def load_categories(self, name: str, spec: Any, loc: str) -> None:
        d = self._obj(spec, loc)
        base, qn, is_idm = self._base(self._key(d, "base", loc), f"{loc}.base")
        objs, types = [], []
        for i, o in enumerate(self._list(self._key(d, "objects", loc), f"{loc}.objects")):
            oloc = f"{loc}.objects[{i}]"
            if not (isinstance(o, list) and len(o) == 2 and isinstance(o[0], str)):
                raise ParseError(oloc, "expected [name, type]")
            objs.append(o[0])
            types.append(self._index(base.objects, o[1], oloc, "a base object"))
        if len(set(objs)) != len(objs):
            raise ParseError(f"{loc}.objects", "duplicate object names")
        objs_t = tuple(objs)
        n = len(objs)
        homs = [[base.homs[types[a]][types[a2]].bottom for a in range(n)] for a2 in range(n)]
        for i, e in enumerate(self._list(d.get("homs", []), f"{loc}.homs")):
            eloc = f"{loc}.homs[{i}]"
            if not (isinstance(e, list) and len(e) == 3):
                raise ParseError(eloc, "expected [row, column, element]")
            a2 = self._index(objs_t, e[0], eloc, "an object")
            a = self._index(objs_t, e[1], eloc, "an object")
            homs[a2][a] = self._index(base.homs[types[a]][types[a2]].names, e[2], eloc,
                                      "an arrow of the right type")
        self.ws.categories[name] = QCategory(base, objs_t, tuple(types),
                                             tuple(tuple(r) for r in homs))
        self.ws.category_base[name] = (qn, is_idm)

    def load_functors(self, name: str, spec: Any, loc: str) -> None:
        d = self._obj(spec, loc)
        a = self._ref(self.ws.categories, self._key(d, "source", loc), f"{loc}.source", "category")
        b = self._ref(self.ws.categories, self._key(d, "target", loc), f"{loc}.target", "category")
        m = self._obj(self._key(d, "map", loc), f"{loc}.map")
        self.ws.functors[name] = QFunctor(a, b, tuple(
            self._index(b.objects, m.get(o), f"{loc}.map.{o}", "a target object") for o in a.objects))

    def load_distributors(self, name: str, spec: Any, loc: str) -> None:
        d = self._obj(spec, loc)
        a = self._ref(self.ws.categories, self._key(d, "source", loc), f"{loc}.source", "category")
        b = self._ref(self.ws.categories, self._key(d, "target", loc), f"{loc}.target", "category")
        q = a.base
        el = [[q.homs[a.types[x]][b.types[y]].bottom for x in a.object_ids] for y in b.object_ids]
        for i, e in enumerate(self._list(d.get("entries", []), f"{loc}.entries")):
            eloc = f"{loc}.entries[{i}]"
            if not (isinstance(e, list) and len(e) == 3):
                raise ParseError(eloc, "expected [target object, source object, element]")
            y = self._index(b.objects, e[0], eloc, "a target object")
            x = self._index(a.objects, e[1], eloc, "a source object")
            el[y][x] = self._index(q.homs[a.types[x]][b.types[y]].names, e[2], eloc,
                                   "an arrow of the right type")
        self.ws.distributors[name] = Distributor(a, b, tuple(tuple(r) for r in el))

    def load_modules(self, name: str, spec: Any, loc: str) -> None:
        d = self._obj(spec, loc)
        qn = self._key(d, "base", loc)
        q = self._ref(self.ws.quantaloids, qn, f"{loc}.base", "quantaloid")
        self.ws.module_base[name] = qn
        if "representable" in d:
            a = self._index(q.objects, d["representable"], f"{loc}.representable", "an object")
            self.ws.modules[name] = representable_module(q, a)
            return
        if d.get("zero") is True:
            self.ws.modules[name] = zero_module(q)
            return
        cd = self._obj(self._key(d, "carriers", loc), f"{loc}.carriers")
        cars = []
        for o in q.objects:
            if o not in cd:
                raise ParseError(f"{loc}.carriers", f"missing carrier for {o!r}")
            cars.append(self.lattice(cd[o], f"{loc}.carriers.{o}"))
        acts: dict[tuple[int, int, int, int], int] = {}
        for i, e in enumerate(self._list(self._key(d, "actions", loc), f"{loc}.actions")):
            eloc = f"{loc}.actions[{i}]"
            if not (isinstance(e, list) and len(e) == 5):
                raise ParseError(eloc, "expected [A, B, f, y, act(f)(y)]")
            a, b = (self._index(q.objects, e[k], eloc, "an object") for k in range(2))
            f = self._index(q.homs[a][b].names, e[2], eloc, "an arrow")
            y = self._index(cars[b].names, e[3], eloc, "a carrier element")
            acts[(a, b, f, y)] = self._index(cars[a].names, e[4], eloc, "a carrier element")
        for a, b in product(q.object_ids, repeat=2):
            for f, y in product(q.homs[a][b].elements, cars[b].elements):
                if (a, b, f, y) not in acts:
                    raise ParseError(f"{loc}.actions", f"missing action of {q.homs[a][b].names[f]}"
                                     f" on {cars[b].names[y]}")
        self.ws.modules[name] = QModule.build(q, cars, lambda a, b, f, y: acts[(a, b, f, y)])

    def load_sheaves(self, name: str, spec: Any, loc: str) -> None:
        d = self._obj(spec, loc)
        locale = self._ref(self.ws.locales, self._key(d, "locale", loc), f"{loc}.locale", "locale")
        secs = self._obj(self._key(d, "sections", loc), f"{loc}.sections")
        restrict = {}
        for i, e in enumerate(self._list(d.get("restrict", []), f"{loc}.restrict")):
            eloc = f"{loc}.restrict[{i}]"
            if not (isinstance(e, list) and len(e) == 3 and isinstance(e[2], dict)):
                raise ParseError(eloc, "expected [from level, to level, {section: section}]")
            restrict[(e[0], e[1])] = e[2]
        try:
            self.ws.sheaves[name] = FiniteSheaf.build(locale, secs, restrict)
        except (KeyError, ValueError) as exc:
            if isinstance(exc, QKError):
                raise
            raise ParseError(loc, f"bad section reference {exc}") from None

    def load_orders(self, name: str, spec: Any, loc: str) -> None:
        d = self._obj(spec, loc)
        sh = self._ref(self.ws.sheaves, self._key(d, "sheaf", loc), f"{loc}.sheaf", "sheaf")
        rel = self._obj(d.get("leq", {}), f"{loc}.leq")
        try:
            self.ws.orders[name] = OrderedSheaf.build(
                sh, {k: [tuple(p) for p in v] for k, v in rel.items()},
                bool(d.get("antisymmetric", True)))
        except (TypeError, ValueError) as exc:
            if isinstance(exc, QKError):
                raise
            raise ParseError(f"{loc}.leq", f"bad relation entry: {exc}") from None


def load_document(doc: Any) -> Workspace:
    return _Loader(doc).run()


def load_path(path: str | Path) -> Workspace:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(str(path), f"cannot read file: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return load_document(doc)


# dumping ---------------------------------------------------------------------

def covers(lat: FiniteSuplattice) -> list[list[str]]:
    out = []
    for i, j in product(lat.elements, repeat=2):
        if i != j and lat.leq(i, j) and not any(
                k not in (i, j) and lat.leq(i, k) and lat.leq(k, j) for k in lat.elements):
            out.append([lat.names[i], lat.names[j]])
    return out


def dump_lattice(lat: FiniteSuplattice) -> dict:
    return {"elements": list(lat.names), "order": covers(lat)}


def dump_quantaloid(q: Quantaloid) -> dict:
    n = len(q)
    comp = []
    for a, b, c in product(range(n), repeat=3):
        for g, f in product(q.homs[b][c].elements, q.homs[a][b].elements):
            comp.append([q.objects[a], q.objects[b], q.objects[c], q.homs[b][c].names[g],
                         q.homs[a][b].names[f], q.homs[a][c].names[q.comp[a][b][c][g][f]]])
    return {
        "objects": list(q.objects),
        "homs": [{"from": q.objects[a], "to": q.objects[b], "lattice": dump_lattice(q.homs[a][b])}
                 for a, b in product(range(n), repeat=2)],
        "identities": {q.objects[a]: q.homs[a][a].names[q.identities[a]] for a in range(n)},
        "composition": comp,
    }


def dump_category(c: QCategory, base_name: str) -> dict:
    q = c.base
    homs = []
    for a2, a in product(c.object_ids, repeat=2):
        hom = q.homs[c.types[a]][c.types[a2]]
        if c.homs[a2][a] != hom.bottom:
            homs.append([c.objects[a2], c.objects[a], hom.names[c.homs[a2][a]]])
    return {"base": base_name,
            "objects": [[c.objects[a], q.objects[c.types[a]]] for a in c.object_ids],
            "homs": homs}


def dump_module(m: QModule, base_name: str) -> dict:
    q = m.base
    acts = []
    for a, b in product(q.object_ids, repeat=2):
        for f, y in product(q.homs[a][b].elements, m.carriers[b].elements):
            acts.append([q.objects[a], q.objects[b], q.homs[a][b].names[f],
                         m.carriers[b].names[y], m.carriers[a].names[m.acts[a][b][f][y]]])
    return {"base": base_name,
            "carriers": {q.objects[a]: dump_lattice(m.carriers[a]) for a in q.object_ids},
            "actions": acts}


def dump_functor(f: QFunctor, source: str, target: str) -> dict:
    return {"source": source, "target": target,
            "map": {f.source.objects[a]: f.target.objects[f.mapping[a]] for a in f.source.object_ids}}


def document(quantaloids: dict[str, Quantaloid] | None = None,
             categories: dict[str, tuple[QCategory, str]] | None = None,
             modules: dict[str, tuple[QModule, str]] | None = None,
             functors: dict[str, tuple[QFunctor, str, str]] | None = None) -> dict:
    doc: dict[str, Any] = {}
    if quantaloids:
        doc["quantaloids"] = {k: dump_quantaloid(v) for k, v in quantaloids.items()}
    if categories:
        doc["categories"] = {k: dump_category(c, b) for k, (c, b) in categories.items()}
    if functors:
        doc["functors"] = {k: dump_functor(f, a, b) for k, (f, a, b) in functors.items()}
    if modules:
        doc["modules"] = {k: dump_module(m, b) for k, (m, b) in modules.items()}
    return doc


def dumps(doc: dict) -> str:
    """Deterministic serialization: fixed key order as built, stable indentation."""
    return json.dumps(doc, ensure_ascii=False, indent=1) + "\n"

