"""Finite K-categories presented by quivers with relations.

A :class:`PathAlgebra` is the path category of a finite quiver modulo a
two-sided ideal generated by relations, truncated so that every path of
length at least the nilpotency bound ``L`` is zero.  Paths are tuples of
arrow names written in composition order, so ``("b", "a")`` is ``b o a``
(first ``a``, then ``b``).  The trivial path at ``x`` is the empty tuple.

Hom bases are chosen by row reducing the relation ideal with the paths of
each hom space ordered longest first: the surviving (non-pivot) paths are
the shortest possible representatives, and every basis element is a path.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .linalg import FieldSpec, Matrix, QQ, _rref_rows

Path = Tuple[str, ...]


class AlgebraError(ValueError):
    """Raised for malformed quivers, relations or bimodule data."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    """Vertices and named arrows of a finite quiver."""

    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...] = ()

    def __post_init__(self):
        verts = tuple(str(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        if len(set(verts)) != len(verts):
            raise AlgebraError("vertex labels must be unique")
        names = [a.name for a in arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("arrow names must be unique")
        vs = set(verts)
        for a in arrows:
            if a.source not in vs or a.target not in vs:
                raise AlgebraError("arrow %r has an undeclared endpoint" % a.name)
            if "*" in a.name or not a.name:
                raise AlgebraError("arrow name %r is not allowed" % a.name)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise AlgebraError("unknown arrow %r" % name)

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))


@dataclass(frozen=True)
class RelationSet:
    """Linear combinations of parallel paths plus the nilpotency bound.

    Each relation is a sequence of ``(coefficient, path)`` terms; paths are
    arrow-name sequences composed right to left.
    """

    relations: Tuple[Tuple[Tuple[object, Path], ...], ...] = ()
    nilpotency_bound: int = 10

    def __post_init__(self):
        rels = tuple(tuple((c, tuple(p)) for c, p in r) for r in self.relations)
        object.__setattr__(self, "relations", rels)


@dataclass(frozen=True)
class Elem:
    """An element of Hom(source, target), as coordinates in the chosen basis."""

    source: str
    target: str
    coeffs: tuple


def path_label(source: str, path: Path) -> str:
    return "e_%s" % source if not path else "*".join(path)


class PathAlgebra:
    """Hom spaces and composition of a finite K-category given by a bound quiver.

    Use :func:`build_path_algebra` to construct one; the constructor takes
    precomputed data.
    """

    def __init__(self, quiver: Quiver, relations: list, bound: int, field: FieldSpec,
                 basis: Dict[Tuple[str, str], List[Path]], normal: Dict[Tuple[str, str, Path], tuple],
                 admissible: bool = True, name: str = ""):
        self.quiver = quiver
        self.relations = relations
        self.bound = bound
        self.field = field
        self._basis = basis
        self._normal = normal
        self.admissible = admissible
        self.name = name
        self._arrows = {a.name: a for a in quiver.arrows}
        self._struct: Dict[Tuple[str, str, str], list] = {}
        self._opposite: Optional[PathAlgebra] = None
        self.meta: dict = {}

    # ----- basic data
    @property
    def vertices(self) -> Tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> Tuple[Arrow, ...]:
        return self.quiver.arrows

    def arrow(self, name: str) -> Arrow:
        try:
            return self._arrows[name]
        except KeyError:
            raise AlgebraError("unknown arrow %r" % name) from None

    def hom_dim(self, x: str, y: str) -> int:
        return len(self._basis[(x, y)])

    def basis(self, x: str, y: str) -> List[Path]:
        return list(self._basis[(x, y)])

    def basis_labels(self, x: str, y: str) -> List[str]:
        return [path_label(x, p) for p in self._basis[(x, y)]]

    def hom_matrix(self) -> List[List[int]]:
        """``hom_matrix()[i][j] = dim Hom(v_i, v_j)``."""
        return [[self.hom_dim(x, y) for y in self.vertices] for x in self.vertices]

    def total_dim(self) -> int:
        return sum(len(b) for b in self._basis.values())

    def __repr__(self) -> str:
        return "PathAlgebra(%s%d vertices, %d arrows, dim %d)" % (
            (self.name + ": ") if self.name else "", len(self.vertices), len(self.arrows), self.total_dim())

    # ----- elements
    def normal_form(self, x: str, y: str, path: Path) -> tuple:
        """Coordinates of the path class ``x -> y`` in the basis of Hom(x, y)."""
        if len(path) >= self.bound:
            return (self.field.zero,) * self.hom_dim(x, y)
        key = (x, y, tuple(path))
        try:
            return self._normal[key]
        except KeyError:
            raise AlgebraError("%r is not a path from %s to %s" % (path, x, y)) from None

    def path_elem(self, x: str, y: str, path: Path) -> Elem:
        return Elem(x, y, self.normal_form(x, y, path))

    def identity(self, x: str) -> Elem:
        return self.path_elem(x, x, ())

    def arrow_elem(self, name: str) -> Elem:
        a = self.arrow(name)
        return self.path_elem(a.source, a.target, (name,))

    def basis_elem(self, x: str, y: str, i: int) -> Elem:
        n = self.hom_dim(x, y)
        z, o = self.field.zero, self.field.one
        return Elem(x, y, tuple(o if k == i else z for k in range(n)))

    def zero_elem(self, x: str, y: str) -> Elem:
        return Elem(x, y, (self.field.zero,) * self.hom_dim(x, y))

    def add(self, f: Elem, g: Elem) -> Elem:
        if (f.source, f.target) != (g.source, g.target):
            raise AlgebraError("adding non-parallel morphisms")
        return Elem(f.source, f.target, tuple(a + b for a, b in zip(f.coeffs, g.coeffs)))

    def scale(self, c, f: Elem) -> Elem:
        c = self.field(c)
        return Elem(f.source, f.target, tuple(c * a for a in f.coeffs))

    def linear_combination(self, x: str, y: str, terms: Iterable[Tuple[object, Elem]]) -> Elem:
        out = [self.field.zero] * self.hom_dim(x, y)
        for c, e in terms:
            c = self.field(c)
            for k, a in enumerate(e.coeffs):
                if a:
                    out[k] = out[k] + c * a
        return Elem(x, y, tuple(out))

    def _table(self, x: str, y: str, z: str) -> list:
        key = (x, y, z)
        tab = self._struct.get(key)
        if tab is None:
            tab = []
            for q in self._basis[(y, z)]:
                row = []
                for p in self._basis[(x, y)]:
                    row.append(self.normal_form(x, z, q + p))
                tab.append(row)
            self._struct[key] = tab
        return tab

    def compose(self, g: Elem, f: Elem) -> Elem:
        """``g o f`` for ``f: x -> y`` and ``g: y -> z``."""
        if f.target != g.source:
            raise AlgebraError("cannot compose %s->%s after %s->%s" % (g.source, g.target, f.source, f.target))
        x, y, z = f.source, f.target, g.target
        tab = self._table(x, y, z)
        out = [self.field.zero] * self.hom_dim(x, z)
        for i, a in enumerate(g.coeffs):
            if not a:
                continue
            row = tab[i]
            for j, b in enumerate(f.coeffs):
                if not b:
                    continue
                ab = a * b
                for k, v in enumerate(row[j]):
                    if v:
                        out[k] = out[k] + ab * v
        return Elem(x, z, tuple(out))

    def is_radical_basis(self, x: str, y: str, i: int) -> bool:
        """Basis paths of positive length span the radical of the category."""
        return len(self._basis[(x, y)][i]) > 0

    def radical_dim(self, x: str, y: str) -> int:
        return sum(1 for p in self._basis[(x, y)] if len(p) > 0)

    # ----- derived algebras
    def opposite(self) -> "PathAlgebra":
        """The opposite category: same basis with every path reversed.

        ``opposite(opposite(A))`` returns ``A`` itself.
        """
        if self._opposite is None:
            q = self.quiver.opposite()
            rels = [(t, s, {tuple(reversed(p)): c for p, c in terms.items()}) for s, t, terms in self.relations]
            basis = {(y, x): [tuple(reversed(p)) for p in ps] for (x, y), ps in self._basis.items()}
            normal = {(y, x, tuple(reversed(p))): v for (x, y, p), v in self._normal.items()}
            op = PathAlgebra(q, rels, self.bound, self.field, basis, normal, self.admissible,
                             name=(self.name + "^op") if self.name else "")
            op._opposite = self
            self._opposite = op
        return self._opposite


def _enumerate_paths(quiver: Quiver, bound: int, cap: int) -> List[Tuple[str, str, Path]]:
    out_arrows: Dict[str, List[Arrow]] = {v: [] for v in quiver.vertices}
    for a in quiver.arrows:
        out_arrows[a.source].append(a)
    layer = [(v, v, ()) for v in quiver.vertices]
    paths = list(layer)
    for _ in range(1, bound):
        nxt = []
        for s, t, p in layer:
            for a in out_arrows[t]:
                nxt.append((s, a.target, (a.name,) + p))
        if not nxt:
            break
        paths.extend(nxt)
        if len(paths) > cap:
            raise AlgebraError("more than %d paths below the nilpotency bound; raise the cap or lower L" % cap)
        layer = nxt
    return paths


def _normalise_relations(quiver: Quiver, relations: Sequence, field: FieldSpec, check_admissible: bool) -> list:
    out = []
    for r in relations:
        terms: Dict[Path, object] = {}
        ends = set()
        for c, p in r:
            p = tuple(p)
            if not p:
                raise AlgebraError("a relation term has length 0")
            if check_admissible and len(p) < 2:
                raise AlgebraError("non-admissible relation: term %r has length < 2" % ("*".join(p),))
            arrs = [quiver.arrow(n) for n in p]
            for later, earlier in zip(arrs, arrs[1:]):
                if earlier.target != later.source:
                    raise AlgebraError("%r is not a path" % ("*".join(p),))
            ends.add((arrs[-1].source, arrs[0].target))
            c = field(c)
            terms[p] = terms.get(p, field.zero) + c
        if len(ends) > 1:
            raise AlgebraError("relation terms are not parallel")
        terms = {p: c for p, c in terms.items() if c}
        if terms:
            (s, t), = ends
            out.append((s, t, terms))
    return out


def build_path_algebra(q: Quiver, r: RelationSet, f: FieldSpec = QQ, *, check_admissible: bool = True,
                       cap: int = 50000, name: str = "") -> PathAlgebra:
    """Construct the bound path algebra ``K q / (r)`` with all paths of length >= L set to zero.

    Args:
        q: the quiver.
        r: relations and the nilpotency bound ``L``.
        f: ground field.
        check_admissible: reject relation terms of length < 2.  Internal
            constructions that present an algebra by its multiplication
            table switch this off.
        cap: guard on the number of paths and on the total dimension.
        name: optional display name.

    Raises:
        AlgebraError: on malformed or non-admissible relations, or when the cap is exceeded.
    """
    L = r.nilpotency_bound
    if L < (2 if check_admissible else 1):
        raise AlgebraError("nilpotency bound must be at least 2")
    rels = _normalise_relations(q, r.relations, f, check_admissible)
    paths = _enumerate_paths(q, L, cap)
    by_pair: Dict[Tuple[str, str], List[Path]] = {(x, y): [] for x in q.vertices for y in q.vertices}
    into: Dict[str, List[Tuple[str, Path]]] = {v: [] for v in q.vertices}
    outof: Dict[str, List[Tuple[str, Path]]] = {v: [] for v in q.vertices}
    for s, t, p in paths:
        by_pair[(s, t)].append(p)
        into[t].append((s, p))
        outof[s].append((t, p))

    gens: Dict[Tuple[str, str], List[Dict[Path, object]]] = {k: [] for k in by_pair}
    for s, t, terms in rels:
        for x, qpath in into[s]:
            for y, ppath in outof[t]:
                vec = {}
                for term, c in terms.items():
                    full = ppath + term + qpath
                    if len(full) < L:
                        vec[full] = vec.get(full, f.zero) + c
                vec = {k: v for k, v in vec.items() if v}
                if vec:
                    gens[(x, y)].append(vec)

    basis: Dict[Tuple[str, str], List[Path]] = {}
    normal: Dict[Tuple[str, str, Path], tuple] = {}
    total = 0
    for (x, y), plist in by_pair.items():
        cols = sorted(plist, key=lambda p: (-len(p), p))
        index = {p: i for i, p in enumerate(cols)}
        rows = []
        for g in gens[(x, y)]:
            row = [f.zero] * len(cols)
            for p, c in g.items():
                row[index[p]] = c
            rows.append(row)
        data, pivots = _rref_rows(rows, len(cols))
        pivset = set(pivots)
        free = [j for j in range(len(cols)) if j not in pivset]
        bpaths = sorted((cols[j] for j in free), key=lambda p: (len(p), p))
        pos = {p: k for k, p in enumerate(bpaths)}
        basis[(x, y)] = bpaths
        total += len(bpaths)
        n = len(bpaths)
        z, o = f.zero, f.one
        for j, p in enumerate(cols):
            if j in pivset:
                continue
            normal[(x, y, p)] = tuple(o if k == pos[p] else z for k in range(n))
        for i, pc in enumerate(pivots):
            v = [z] * n
            for j in free:
                c = data[i][j]
                if c:
                    v[pos[cols[j]]] = -c
            normal[(x, y, cols[pc])] = tuple(v)
        if total > cap:
            raise AlgebraError("total dimension exceeds the cap %d" % cap)
    return PathAlgebra(q, rels, L, f, basis, normal, admissible=check_admissible, name=name)


def path_algebra_from_table(vertices: Sequence[str], dims: Mapping[Tuple[str, str], int],
                            compose: Callable[[str, str, str, int, int], Sequence],
                            field: FieldSpec, labels: Optional[Mapping[Tuple[str, str], Sequence[str]]] = None,
                            name: str = "") -> PathAlgebra:
    """Present a finite K-category given by a multiplication table as a quiver algebra.

    Hom(x, x) must have the identity as basis element 0 and all other basis
    elements must lie in the radical.  Every non-identity basis element
    becomes an arrow and every product of two arrows becomes a relation
    ``a*b - sum c_k arrow_k``.  ``compose(x, y, z, i, j)`` returns the
    coordinates of (basis i of Hom(y, z)) o (basis j of Hom(x, y)).
    """
    vertices = [str(v) for v in vertices]
    arrows = []
    arrow_of: Dict[Tuple[str, str, int], str] = {}
    for x in vertices:
        for y in vertices:
            start = 1 if x == y else 0
            for i in range(start, dims.get((x, y), 0)):
                nm = labels[(x, y)][i] if labels else "h_%s_%s_%d" % (x, y, i)
                arrows.append(Arrow(nm, x, y))
                arrow_of[(x, y, i)] = nm
    quiver = Quiver(tuple(vertices), tuple(arrows))

    def as_arrows(x: str, z: str, vec: Sequence) -> list:
        terms = []
        for k, c in enumerate(vec):
            if not c:
                continue
            if x == z and k == 0:
                raise AlgebraError("a product of radical elements has an identity component")
            terms.append((field(c), (arrow_of[(x, z, k)],)))
        return terms

    rels = []
    for (x, y, i), b in arrow_of.items():
        for z in vertices:
            for k in range(1 if y == z else 0, dims.get((y, z), 0)):
                a = arrow_of[(y, z, k)]
                prod = compose(x, y, z, k, i)
                terms = [(field.one, (a, b))] + [(-c, p) for c, p in as_arrows(x, z, prod)]
                rels.append(tuple(terms))

    # nilpotency index of the radical: first power of rad that vanishes
    depth = 1
    current = {(x, y): [] for x in vertices for y in vertices}
    for (x, y, i) in arrow_of:
        v = [field.zero] * dims[(x, y)]
        v[i] = field.one
        current[(x, y)].append(v)
    while any(current.values()):
        depth += 1
        nxt = {(x, y): [] for x in vertices for y in vertices}
        for (x, y), vecs in current.items():
            for z in vertices:
                for k in range(1 if y == z else 0, dims.get((y, z), 0)):
                    for v in vecs:
                        out = [field.zero] * dims.get((x, z), 0)
                        for j, c in enumerate(v):
                            if c:
                                prod = compose(x, y, z, k, j)
                                for m, d in enumerate(prod):
                                    if d:
                                        out[m] = out[m] + c * d
                        if any(out):
                            nxt[(x, z)].append(out)
        # keep a basis only
        for key, vecs in nxt.items():
            if vecs:
                data, piv = _rref_rows([list(v) for v in vecs], len(vecs[0]))
                nxt[key] = [data[i] for i in range(len(piv))]
        current = nxt
        if depth > 4 * max(1, len(arrows)) + 4:
            raise AlgebraError("radical is not nilpotent")
    alg = build_path_algebra(quiver, RelationSet(tuple(rels), max(depth, 2)), field,
                             check_admissible=False, name=name)
    for x in vertices:
        for y in vertices:
            if alg.hom_dim(x, y) != dims.get((x, y), 0):
                raise AlgebraError("multiplication table is not associative")
    return alg


# ---------------------------------------------------------------- bimodules

class Bimodule:
    """A U-T-bimodule: vector spaces M(u, t) with commuting two-sided actions.

    ``left[(alpha, t)]`` is the matrix of ``m -> alpha . m`` from M(u, t) to
    M(u', t) for a U-arrow ``alpha: u -> u'``; ``right[(beta, u)]`` is the
    matrix of ``m -> m . beta`` from M(u, t1) to M(u, t0) for a T-arrow
    ``beta: t0 -> t1``.
    """

    def __init__(self, U: PathAlgebra, T: PathAlgebra, dims: Mapping[Tuple[str, str], int],
                 left: Mapping[Tuple[str, str], Matrix], right: Mapping[Tuple[str, str], Matrix],
                 labels: Optional[Mapping[Tuple[str, str], Sequence[str]]] = None, check: bool = True):
        if U.field != T.field:
            raise AlgebraError("bimodule over different fields")
        self.U = U
        self.T = T
        self.field = U.field
        self.dims = {(u, t): int(dims.get((u, t), 0)) for u in U.vertices for t in T.vertices}
        F = self.field
        self.left = {}
        for a in U.arrows:
            for t in T.vertices:
                m = left.get((a.name, t))
                shape = (self.dims[(a.target, t)], self.dims[(a.source, t)])
                if m is None:
                    m = Matrix.zeros(F, *shape)
                if m.shape != shape:
                    raise AlgebraError("left action of %s at %s has shape %s, expected %s" % (a.name, t, m.shape, shape))
                self.left[(a.name, t)] = m
        self.right = {}
        for b in T.arrows:
            for u in U.vertices:
                m = right.get((b.name, u))
                shape = (self.dims[(u, b.source)], self.dims[(u, b.target)])
                if m is None:
                    m = Matrix.zeros(F, *shape)
                if m.shape != shape:
                    raise AlgebraError("right action of %s at %s has shape %s, expected %s" % (b.name, u, m.shape, shape))
                self.right[(b.name, u)] = m
        self.labels = {k: list(v) for k, v in labels.items()} if labels else None
        if check:
            problems = self.check()
            if problems:
                raise AlgebraError("inconsistent bimodule action tables: " + "; ".join(problems))

    def label(self, u: str, t: str, i: int) -> str:
        if self.labels and (u, t) in self.labels:
            return self.labels[(u, t)][i]
        return "%s,%s,%d" % (u, t, i)

    def left_path(self, u: str, t: str, path: Path) -> Matrix:
        """Action of a U-path starting at ``u`` on M(u, t)."""
        m = Matrix.identity(self.field, self.dims[(u, t)])
        for name in reversed(path):
            m = self.left[(name, t)] @ m
        return m

    def right_path(self, u: str, t: str, path: Path) -> Matrix:
        """Action ``m -> m . p`` of a T-path ``p`` ending at ``t`` on M(u, t)."""
        m = Matrix.identity(self.field, self.dims[(u, t)])
        for name in path:
            m = self.right[(name, u)] @ m
        return m

    def left_elem(self, e: Elem, t: str) -> Matrix:
        F = self.field
        out = Matrix.zeros(F, self.dims[(e.target, t)], self.dims[(e.source, t)])
        for c, p in zip(e.coeffs, self.U.basis(e.source, e.target)):
            if c:
                out = out + self.left_path(e.source, t, p).scale(c)
        return out

    def right_elem(self, u: str, e: Elem) -> Matrix:
        F = self.field
        out = Matrix.zeros(F, self.dims[(u, e.source)], self.dims[(u, e.target)])
        for c, p in zip(e.coeffs, self.T.basis(e.source, e.target)):
            if c:
                out = out + self.right_path(u, e.target, p).scale(c)
        return out

    def check(self) -> List[str]:
        """List every violated bimodule axiom (empty when consistent)."""
        problems = []
        for a in self.U.arrows:
            for b in self.T.arrows:
                lhs = self.left[(a.name, b.source)] @ self.right[(b.name, a.source)]
                rhs = self.right[(b.name, a.target)] @ self.left[(a.name, b.target)]
                if lhs != rhs:
                    problems.append("actions of %s and %s do not commute" % (a.name, b.name))
        for s, t_, terms in self.U.relations:
            for t in self.T.vertices:
                acc = Matrix.zeros(self.field, self.dims[(t_, t)], self.dims[(s, t)])
                for p, c in terms.items():
                    acc = acc + self.left_path(s, t, p).scale(c)
                if not acc.is_zero():
                    problems.append("left action violates a relation of U at %s" % t)
        for s, t_, terms in self.T.relations:
            for u in self.U.vertices:
                acc = Matrix.zeros(self.field, self.dims[(u, s)], self.dims[(u, t_)])
                for p, c in terms.items():
                    acc = acc + self.right_path(u, t_, p).scale(c)
                if not acc.is_zero():
                    problems.append("right action violates a relation of T at %s" % u)
        return problems

    def is_zero(self) -> bool:
        return all(d == 0 for d in self.dims.values())

    def module_at(self, t: str):
        """The U-module M_t = M(-, t)."""
        from .modules import Representation
        return Representation(self.U, {u: self.dims[(u, t)] for u in self.U.vertices},
                              {a.name: self.left[(a.name, t)] for a in self.U.arrows})

    def bar(self, e: Elem):
        """The U-module map M_{t1} -> M_{t0} induced by a T-morphism ``t0 -> t1``."""
        from .modules import ModuleMorphism
        return ModuleMorphism(self.module_at(e.target), self.module_at(e.source),
                              {u: self.right_elem(u, e) for u in self.U.vertices})

    @staticmethod
    def zero(U: PathAlgebra, T: PathAlgebra) -> "Bimodule":
        return Bimodule(U, T, {}, {}, {})


def hom_bimodule(C: PathAlgebra) -> Bimodule:
    """The C-C-bimodule with M(u, t) = Hom_C(t, u).

    U acts by post-composition and T by pre-composition.
    """
    F = C.field
    V = C.vertices
    dims = {(u, t): C.hom_dim(t, u) for u in V for t in V}
    left = {}
    for a in C.arrows:
        ae = C.arrow_elem(a.name)
        for t in V:
            cols = [C.compose(ae, C.basis_elem(t, a.source, i)).coeffs for i in range(C.hom_dim(t, a.source))]
            left[(a.name, t)] = Matrix.from_columns(F, cols, C.hom_dim(t, a.target))
    right = {}
    for b in C.arrows:
        be = C.arrow_elem(b.name)
        for u in V:
            cols = [C.compose(C.basis_elem(b.target, u, i), be).coeffs for i in range(C.hom_dim(b.target, u))]
            right[(b.name, u)] = Matrix.from_columns(F, cols, C.hom_dim(b.source, u))
    labels = {(u, t): C.basis_labels(t, u) for u in V for t in V}
    return Bimodule(C, C, dims, left, right, labels)


@dataclass
class TriangularData:
    """Bookkeeping for Lambda = [[T, 0], [M, U]] realised as a quiver algebra."""

    T: PathAlgebra
    U: PathAlgebra
    M: Bimodule
    t_prefix: str
    u_prefix: str
    connectors: Dict[Tuple[str, str], List[str]] = dc_field(default_factory=dict)

    def tv(self, t: str) -> str:
        return "%s:%s" % (self.t_prefix, t)

    def uv(self, u: str) -> str:
        return "%s:%s" % (self.u_prefix, u)


def _long_paths(A: PathAlgebra) -> List[Path]:
    paths = _enumerate_paths(A.quiver, A.bound + 1, 10 ** 6)
    return [p for s, t, p in paths if len(p) == A.bound]


def triangular_matrix_algebra(T: PathAlgebra, U: PathAlgebra, M: Bimodule,
                              prefixes: Tuple[str, str, str] = ("T", "U", "M"), name: str = "") -> PathAlgebra:
    """The triangular matrix category [[T, 0], [M, U]] as a bound quiver algebra.

    Objects are ``"T:t"`` and ``"U:u"``.  The arrows are the arrows of T and
    U (prefixed) plus one connecting arrow ``T:t -> U:u`` for each basis
    element of M(u, t).  Relations are those of T and U, plus
    ``m * beta - (m . beta)`` and ``alpha * m - (alpha . m)`` expressing the
    two actions.
    """
    if M.U is not U or M.T is not T:
        raise AlgebraError("bimodule is not over (U, T)")
    if T.field != U.field:
        raise AlgebraError("field mismatch")
    tp, up, mp = prefixes
    data = TriangularData(T, U, M, tp, up)
    F = T.field
    verts = [data.tv(t) for t in T.vertices] + [data.uv(u) for u in U.vertices]
    arrows = [Arrow("%s:%s" % (tp, a.name), data.tv(a.source), data.tv(a.target)) for a in T.arrows]
    arrows += [Arrow("%s:%s" % (up, a.name), data.uv(a.source), data.uv(a.target)) for a in U.arrows]
    for u in U.vertices:
        for t in T.vertices:
            names = []
            for i in range(M.dims[(u, t)]):
                lab = M.label(u, t, i)
                nm = "%s:%s" % (mp, lab.replace("*", "."))
                if any(a.name == nm for a in arrows):
                    nm = "%s:%s|%s|%d" % (mp, u, t, i)
                names.append(nm)
                arrows.append(Arrow(nm, data.tv(t), data.uv(u)))
            data.connectors[(u, t)] = names
    quiver = Quiver(tuple(verts), tuple(arrows))

    def pre(prefix, p):
        return tuple("%s:%s" % (prefix, n) for n in p)

    rels = []
    for s, t_, terms in T.relations:
        rels.append(tuple((c, pre(tp, p)) for p, c in terms.items()))
    for s, t_, terms in U.relations:
        rels.append(tuple((c, pre(up, p)) for p, c in terms.items()))
    # paths at the truncation length are zero in T and U
    for p in _long_paths(T):
        rels.append(((F.one, pre(tp, p)),))
    for p in _long_paths(U):
        rels.append(((F.one, pre(up, p)),))
    for u in U.vertices:
        for t in T.vertices:
            for i, m in enumerate(data.connectors[(u, t)]):
                for b in T.arrows:
                    if b.target != t:
                        continue
                    col = M.right[(b.name, u)].col(i)
                    terms = [(F.one, (m, "%s:%s" % (tp, b.name)))]
                    terms += [(-c, (data.connectors[(u, b.source)][k],)) for k, c in enumerate(col) if c]
                    rels.append(tuple(terms))
                for a in U.arrows:
                    if a.source != u:
                        continue
                    col = M.left[(a.name, t)].col(i)
                    terms = [(F.one, ("%s:%s" % (up, a.name), m))]
                    terms += [(-c, (data.connectors[(a.target, t)][k],)) for k, c in enumerate(col) if c]
                    rels.append(tuple(terms))
    bound = T.bound + U.bound + 1
    alg = build_path_algebra(quiver, RelationSet(tuple(rels), bound), F, check_admissible=False, name=name)
    # hom spaces must follow the block formula
    for t in T.vertices:
        for t2 in T.vertices:
            if alg.hom_dim(data.tv(t), data.tv(t2)) != T.hom_dim(t, t2):
                raise AlgebraError("action tables inconsistent: T-block collapsed")
        for u in U.vertices:
            if alg.hom_dim(data.tv(t), data.uv(u)) != M.dims[(u, t)]:
                raise AlgebraError("action tables inconsistent: M-block collapsed")
    for u in U.vertices:
        for u2 in U.vertices:
            if alg.hom_dim(data.uv(u), data.uv(u2)) != U.hom_dim(u, u2):
                raise AlgebraError("action tables inconsistent: U-block collapsed")
    alg.meta["triangular"] = data
    return alg


def doubled_maps_algebra(C: PathAlgebra) -> PathAlgebra:
    """Lambda~ = [[C, 0], [Hom^, C]], whose modules are the morphisms of mod C.

    The two embeddings of C are recorded in ``meta["embeddings"]`` as vertex
    maps ``v -> "T:v"`` and ``v -> "U:v"``.
    """
    cached = C.meta.get("doubled")
    if cached is not None:
        return cached
    alg = triangular_matrix_algebra(C, C, hom_bimodule(C), name=("maps(%s)" % C.name) if C.name else "")
    alg.meta["embeddings"] = ({v: "T:%s" % v for v in C.vertices}, {v: "U:%s" % v for v in C.vertices})
    alg.meta["doubled_of"] = C
    C.meta["doubled"] = alg
    return alg


# ---------------------------------------------------------------- standard examples

def linear_quiver(n: int, prefix: str = "a") -> Quiver:
    """1 -> 2 -> ... -> n with arrows a1, ..., a(n-1) (a single arrow is named ``a``)."""
    verts = tuple(str(i) for i in range(1, n + 1))
    if n == 2:
        return Quiver(verts, (Arrow(prefix, "1", "2"),))
    return Quiver(verts, tuple(Arrow("%s%d" % (prefix, i), str(i), str(i + 1)) for i in range(1, n)))


def type_A(n: int, field: FieldSpec = QQ) -> PathAlgebra:
    """Path algebra of the linearly oriented A_n quiver."""
    return build_path_algebra(linear_quiver(n), RelationSet((), max(n, 2)), field, name="A%d" % n)


def truncated_delta(n: int, field: FieldSpec = QQ) -> PathAlgebra:
    """Vertices 0..n with arrows alpha_i: i -> i+1 and relations alpha_{i+1} alpha_i = 0."""
    verts = tuple(str(i) for i in range(n + 1))
    arrows = tuple(Arrow("alpha%d" % i, str(i), str(i + 1)) for i in range(n))
    rels = tuple(((1, ("alpha%d" % (i + 1), "alpha%d" % i)),) for i in range(n - 1))
    return build_path_algebra(Quiver(verts, arrows), RelationSet(rels, 3), field, name="Delta%d" % n)
