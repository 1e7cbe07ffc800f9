"""Workspace JSON: a field, a bound quiver, and named modules, morphisms, maps objects and generator lists.

Matrices are arrays of rows of strings (``"3/2"`` over Q, decimal residues
over F_p) with shape target dim x source dim.  Paths are lists of arrow
names in composition order, so ``["b", "a"]`` means b after a.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List, Optional

from .algebra import Arrow, Bimodule, PathAlgebra, Quiver, RelationSet, build_path_algebra
from .linalg import FieldSpec, LinalgError, Matrix
from .maps import MapsMorphism, MapsObject
from .modules import ModuleError, ModuleMorphism, Representation


class WorkspaceError(ValueError):
    """Bad or inconsistent workspace input (reported with exit code 2)."""


def parse_json_text(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise WorkspaceError("%s: malformed JSON at line %d, column %d: %s"
                             % (source, exc.lineno, exc.colno, exc.msg)) from exc


def load_json_file(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise WorkspaceError("cannot read %s: %s" % (path, exc.strerror)) from exc
    return parse_json_text(text, path)


def dumps(obj: Any) -> str:
    """Canonical JSON text (sorted keys, two-space indent)."""
    return json.dumps(obj, indent=2, sort_keys=True)


def parse_field(text: str) -> FieldSpec:
    """``Q``, ``Fp:7`` or a bare prime ``7``."""
    t = text.strip()
    if t in ("Q", "QQ"):
        return FieldSpec.rationals()
    if t.startswith("Fp:"):
        t = t[3:]
    try:
        return FieldSpec.prime(int(t))
    except (ValueError, LinalgError) as exc:
        raise WorkspaceError("bad field %r" % text) from exc


# ---------------------------------------------------------------- matrices

def matrix_to_json(M: Matrix) -> list:
    return M.to_strings()


def matrix_from_json(F: FieldSpec, data: Any, rows: int, cols: int, what: str) -> Matrix:
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise WorkspaceError("%s: a matrix must be a list of rows" % what)
    if rows == 0:
        if data not in ([], [[]]):
            raise WorkspaceError("%s: expected a matrix with 0 rows" % what)
        return Matrix.zeros(F, 0, cols)
    if len(data) != rows or any(len(r) != cols for r in data):
        got = (len(data), len(data[0]) if data else 0)
        raise WorkspaceError("%s: matrix shape %s, expected %s" % (what, got, (rows, cols)))
    try:
        return Matrix(F, rows, cols, [[F(str(x)) for x in r] for r in data])
    except LinalgError as exc:
        raise WorkspaceError("%s: %s" % (what, exc)) from exc


# ---------------------------------------------------------------- algebras

def algebra_from_json(obj: dict, field: Optional[FieldSpec] = None) -> PathAlgebra:
    try:
        F = field or FieldSpec.from_json(obj.get("field", {"kind": "Q"}))
        q = obj["quiver"]
        arrows = tuple(Arrow(str(a["name"]), str(a["source"]), str(a["target"])) for a in q.get("arrows", []))
        quiver = Quiver(tuple(str(v) for v in q["vertices"]), arrows)
        rels = []
        for r in obj.get("relations", []):
            rels.append(tuple((F(str(c)), tuple(p)) for c, p in r))
        bound = int(obj.get("bound", max(2, len(quiver.vertices))))
        # presentations that name a composite by its own arrow carry "admissible": false
        return build_path_algebra(quiver, RelationSet(tuple(rels), bound), F, name=str(obj.get("name", "")),
                                  check_admissible=bool(obj.get("admissible", True)))
    except KeyError as exc:
        raise WorkspaceError("missing key %s" % exc) from exc
    except (LinalgError, ValueError, TypeError) as exc:
        if isinstance(exc, WorkspaceError):
            raise
        raise WorkspaceError("bad algebra: %s" % exc) from exc


def algebra_to_json(A: PathAlgebra) -> dict:
    """The quiver and relations as stored (normalised), with the field and bound."""
    rels = []
    for _, _, terms in A.relations:
        rels.append([[str(c), list(p)] for p, c in sorted(terms.items())])
    out = {
        "field": A.field.to_json(),
        "name": A.name,
        "quiver": {"vertices": list(A.vertices),
                   "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in A.arrows]},
        "relations": rels,
        "bound": A.bound,
    }
    if any(len(p) < 2 for _, _, terms in A.relations for p in terms):
        out["admissible"] = False
    return out


# ---------------------------------------------------------------- modules and morphisms

def module_from_json(A: PathAlgebra, obj: dict, what: str = "module") -> Representation:
    if not isinstance(obj, dict) or "dims" not in obj:
        raise WorkspaceError("%s: needs 'dims'" % what)
    dims = {str(k): int(v) for k, v in obj["dims"].items()}
    unknown = set(dims) - set(A.vertices)
    if unknown:
        raise WorkspaceError("%s: unknown vertices %s" % (what, sorted(unknown)))
    dims = {v: dims.get(v, 0) for v in A.vertices}
    maps = {}
    for name, data in obj.get("maps", {}).items():
        try:
            a = A.arrow(name)
        except ValueError as exc:
            raise WorkspaceError("%s: unknown arrow %r" % (what, name)) from exc
        maps[name] = matrix_from_json(A.field, data, dims[a.target], dims[a.source], "%s, arrow %s" % (what, name))
    try:
        return Representation(A, dims, maps)
    except ModuleError as exc:
        raise WorkspaceError("%s: %s" % (what, exc)) from exc


def module_to_json(M: Representation) -> dict:
    return {"dims": {v: M.dims[v] for v in M.algebra.vertices},
            "maps": {a.name: matrix_to_json(M.maps[a.name]) for a in M.algebra.arrows}}


def morphism_from_json(X: Representation, Y: Representation, comps: dict, what: str) -> ModuleMorphism:
    A = X.algebra
    mats = {}
    for v in A.vertices:
        data = comps.get(v)
        if data is None:
            mats[v] = Matrix.zeros(A.field, Y.dims[v], X.dims[v])
        else:
            mats[v] = matrix_from_json(A.field, data, Y.dims[v], X.dims[v], "%s at %s" % (what, v))
    try:
        return ModuleMorphism(X, Y, mats)
    except ModuleError as exc:
        raise WorkspaceError("%s: %s" % (what, exc)) from exc


def morphism_to_json(h: ModuleMorphism) -> dict:
    return {v: matrix_to_json(h.comps[v]) for v in h.algebra.vertices}


def maps_object_to_json(X: MapsObject) -> dict:
    return {"source": module_to_json(X.A1), "target": module_to_json(X.A0), "map": morphism_to_json(X.f)}


def maps_morphism_to_json(m: MapsMorphism) -> dict:
    return {"top": morphism_to_json(m.h1), "bottom": morphism_to_json(m.h0)}


# ---------------------------------------------------------------- workspace

@dataclass
class Workspace:
    """A parsed workspace; every reference has been resolved."""

    algebra: PathAlgebra
    modules: Dict[str, Representation] = dc_field(default_factory=dict)
    morphisms: Dict[str, ModuleMorphism] = dc_field(default_factory=dict)
    maps_objects: Dict[str, MapsObject] = dc_field(default_factory=dict)
    bimodules: Dict[str, Bimodule] = dc_field(default_factory=dict)
    subcategories: Dict[str, List[str]] = dc_field(default_factory=dict)
    raw: dict = dc_field(default_factory=dict)

    def module(self, name: str) -> Representation:
        if name not in self.modules:
            raise WorkspaceError("unknown module %r" % name)
        return self.modules[name]

    def maps_object(self, name: str) -> MapsObject:
        if name in self.maps_objects:
            return self.maps_objects[name]
        raise WorkspaceError("unknown maps object %r" % name)

    def generators(self, name: str) -> List[Representation]:
        if name not in self.subcategories:
            raise WorkspaceError("unknown generator list %r" % name)
        return [self.module(m) for m in self.subcategories[name]]

    def maps_generators(self, name: str) -> List[MapsObject]:
        if name not in self.subcategories:
            raise WorkspaceError("unknown generator list %r" % name)
        return [self.maps_object(m) for m in self.subcategories[name]]


def _ref(table: dict, name: Any, kind: str, where: str):
    if not isinstance(name, str) or name not in table:
        raise WorkspaceError("%s: unknown %s %r" % (where, kind, name))
    return table[name]


def workspace_from_json(obj: dict, field: Optional[FieldSpec] = None) -> Workspace:
    if not isinstance(obj, dict):
        raise WorkspaceError("a workspace must be a JSON object")
    A = algebra_from_json(obj, field)
    ws = Workspace(A, raw=obj)
    for name, m in obj.get("modules", {}).items():
        ws.modules[name] = module_from_json(A, m, "module %r" % name)
    for name, m in obj.get("morphisms", {}).items():
        where = "morphism %r" % name
        X = _ref(ws.modules, m.get("source"), "module", where)
        Y = _ref(ws.modules, m.get("target"), "module", where)
        ws.morphisms[name] = morphism_from_json(X, Y, m.get("comps", {}), where)
    for name, m in obj.get("maps_objects", {}).items():
        where = "maps object %r" % name
        if "morphism" in m:
            f = _ref(ws.morphisms, m["morphism"], "morphism", where)
        else:
            X = _ref(ws.modules, m.get("source"), "module", where)
            Y = _ref(ws.modules, m.get("target"), "module", where)
            f = morphism_from_json(X, Y, m.get("comps", {}), where)
        ws.maps_objects[name] = MapsObject(f.source, f.target, f)
    for name, b in obj.get("bimodules", {}).items():
        ws.bimodules[name] = bimodule_from_json(A, b, "bimodule %r" % name)
    for name, lst in obj.get("subcategories", {}).items():
        for m in lst:
            _ref(ws.modules if m in ws.modules else ws.maps_objects, m, "module or maps object",
                 "generator list %r" % name)
        ws.subcategories[name] = list(lst)
    return ws


def bimodule_from_json(A: PathAlgebra, obj: dict, what: str) -> Bimodule:
    """An A-A-bimodule: ``dims["u,t"]``, ``left["alpha@t"]``, ``right["beta@u"]``."""
    F = A.field
    dims = {}
    for key, d in obj.get("dims", {}).items():
        u, _, t = key.partition(",")
        dims[(u, t)] = int(d)
    left, right = {}, {}
    for key, data in obj.get("left", {}).items():
        name, _, t = key.partition("@")
        a = A.arrow(name)
        left[(name, t)] = matrix_from_json(F, data, dims.get((a.target, t), 0), dims.get((a.source, t), 0), what)
    for key, data in obj.get("right", {}).items():
        name, _, u = key.partition("@")
        b = A.arrow(name)
        right[(name, u)] = matrix_from_json(F, data, dims.get((u, b.source), 0), dims.get((u, b.target), 0), what)
    try:
        return Bimodule(A, A, dims, left, right)
    except ValueError as exc:
        raise WorkspaceError("%s: %s" % (what, exc)) from exc


def load_workspace(path: str, field: Optional[FieldSpec] = None) -> Workspace:
    return workspace_from_json(load_json_file(path), field)


# ---------------------------------------------------------------- built-in workspaces

def builtin_workspace(name: str) -> dict:
    """``a2``, ``a3`` (linear orientation) or ``delta5`` (truncated, vertices 0..5)."""
    if name in ("a2", "a3"):
        n = int(name[1])
        verts = [str(i) for i in range(1, n + 1)]
        arrows = ([{"name": "a", "source": "1", "target": "2"}] if n == 2 else
                  [{"name": "a%d" % i, "source": str(i), "target": str(i + 1)} for i in range(1, n)])
        mods = {}
        for v in verts:
            mods["S%s" % v] = {"dims": {w: int(w == v) for w in verts}}
        return {"field": {"kind": "Q"}, "name": "A%d" % n, "quiver": {"vertices": verts, "arrows": arrows},
                "relations": [], "bound": max(n, 2), "modules": mods}
    if name == "delta5":
        verts = [str(i) for i in range(6)]
        arrows = [{"name": "alpha%d" % i, "source": str(i), "target": str(i + 1)} for i in range(5)]
        rels = [[["1", ["alpha%d" % (i + 1), "alpha%d" % i]]] for i in range(4)]
        return {"field": {"kind": "Q"}, "name": "Delta5", "quiver": {"vertices": verts, "arrows": arrows},
                "relations": rels, "bound": 3, "modules": {}}
    raise WorkspaceError("unknown built-in workspace %r" % name)


def sequence_to_json(j: ModuleMorphism, p: ModuleMorphism) -> dict:
    return {"left": module_to_json(j.source), "middle": module_to_json(j.target), "right": module_to_json(p.target),
            "j": morphism_to_json(j), "p": morphism_to_json(p)}


def sequence_from_json(A: PathAlgebra, obj: dict) -> tuple:
    try:
        X = module_from_json(A, obj["left"], "left term")
        E = module_from_json(A, obj["middle"], "middle term")
        Z = module_from_json(A, obj["right"], "right term")
        j = morphism_from_json(X, E, obj["j"], "j")
        p = morphism_from_json(E, Z, obj["p"], "p")
    except KeyError as exc:
        raise WorkspaceError("sequence: missing key %s" % exc) from exc
    return j, p

