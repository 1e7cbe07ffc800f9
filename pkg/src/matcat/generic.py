"""Category-agnostic checks built on hom bases and linear solves.

A :class:`LinearCategory` adapter supplies hom bases, composition and a
flattening of morphisms into coordinate vectors.  Everything else here
(radicals of endomorphism rings, factorization, almost-split verification,
approximation certificates) is computed from that interface alone, so the
same code serves modules and objects of the maps category.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Any, List, Optional, Sequence, Tuple

from .linalg import FieldSpec, Matrix, cokernel_projection


class LinearCategory:
    """Interface used by the generic algorithms.  Subclasses fill in the methods."""

    field: FieldSpec

    def hom(self, X, Y) -> list:
        raise NotImplementedError

    def compose(self, g, f):
        raise NotImplementedError

    def identity(self, X):
        raise NotImplementedError

    def zero(self, X, Y):
        raise NotImplementedError

    def flatten(self, f) -> list:
        raise NotImplementedError

    def source(self, f):
        raise NotImplementedError

    def target(self, f):
        raise NotImplementedError

    def linear_matrix(self, f) -> Matrix:
        """A faithful matrix of an endomorphism (used for traces and invertibility)."""
        raise NotImplementedError

    def add(self, f, g):
        return f + g

    def scale(self, c, f):
        return f.scale(c)

    def combine(self, basis: Sequence, coeffs: Sequence, X, Y):
        out = self.zero(X, Y)
        for c, b in zip(coeffs, basis):
            if c:
                out = self.add(out, self.scale(c, b))
        return out

    def is_zero_object(self, X) -> bool:
        return not self.hom(X, X)

    def describe(self, X) -> str:
        return repr(X)


def _solve(field: FieldSpec, vectors: Sequence[Sequence], goal: Sequence) -> Optional[list]:
    n = len(goal)
    if not vectors:
        return [] if all(not g for g in goal) else None
    M = Matrix._raw(field, n, len(vectors), [[v[i] for v in vectors] for i in range(n)])
    x = M.solve(Matrix._raw(field, n, 1, [[g] for g in goal]))
    return None if x is None else list(x.col(0))


def end_radical(cat: LinearCategory, X, basis: Optional[list] = None) -> Tuple[list, Matrix]:
    """Hom basis of End(X) and coordinates (columns) of its trace-form radical."""
    if basis is None:
        basis = cat.hom(X, X)
    mats = [cat.linear_matrix(b) for b in basis]
    n = len(mats)
    G = Matrix._raw(cat.field, n, n, [[(a @ b).trace() for b in mats] for a in mats])
    return basis, G.nullspace()


def is_local(cat: LinearCategory, X) -> bool:
    """End(X) local with residue field K (trace-form radical of codimension 1)."""
    basis, J = end_radical(cat, X)
    return len(basis) - J.cols == 1


def radical_basis(cat: LinearCategory, T, X) -> list:
    """Basis of rad(T, X) for T with local endomorphism ring."""
    hom = cat.hom(T, X)
    if not hom:
        return []
    back = cat.hom(X, T)
    endT, J = end_radical(cat, T)
    F = cat.field
    nflat = len(cat.flatten(cat.identity(T)))
    jvecs = [cat.flatten(cat.combine(endT, J.col(k), T, T)) for k in range(J.cols)]
    Q = cokernel_projection(Matrix.from_columns(F, jvecs, nflat)) if jvecs else Matrix.identity(F, nflat)
    rows = []
    for g in back:
        block = Q @ Matrix.from_columns(F, [cat.flatten(cat.compose(g, f)) for f in hom], nflat)
        rows.extend(block.tolist())
    if not rows:
        return hom
    N = Matrix._raw(F, len(rows), len(hom), rows).nullspace()
    return [cat.combine(hom, N.col(k), T, X) for k in range(N.cols)]


def factor_right(cat: LinearCategory, f, pi) -> Optional[Any]:
    """Some g with ``pi o g == f``, or None."""
    T, E = cat.source(f), cat.source(pi)
    basis = cat.hom(T, E)
    sol = _solve(cat.field, [cat.flatten(cat.compose(pi, b)) for b in basis], cat.flatten(f))
    return None if sol is None else cat.combine(basis, sol, T, E)


def factor_left(cat: LinearCategory, f, j) -> Optional[Any]:
    """Some g with ``g o j == f``, or None."""
    E, T = cat.target(j), cat.target(f)
    basis = cat.hom(E, T)
    sol = _solve(cat.field, [cat.flatten(cat.compose(b, j)) for b in basis], cat.flatten(f))
    return None if sol is None else cat.combine(basis, sol, E, T)


def find_section(cat: LinearCategory, pi) -> Optional[Any]:
    return factor_right(cat, cat.identity(cat.target(pi)), pi)


def find_retraction(cat: LinearCategory, j) -> Optional[Any]:
    return factor_left(cat, cat.identity(cat.source(j)), j)


def find_iso(cat: LinearCategory, X, Y, tries: int = 8, seed: int = 0) -> Optional[Any]:
    """An isomorphism X -> Y found among basis elements, basis pairs or seeded random combinations."""
    hom = cat.hom(X, Y)
    if not hom:
        return cat.identity(X) if cat.is_zero_object(X) and cat.is_zero_object(Y) else None

    def iso(f) -> bool:
        M = cat.linear_matrix(f)
        return M.rows == M.cols and M.rank() == M.rows

    for f in hom:
        if iso(f):
            return f
    rng = random.Random(seed)
    for _ in range(tries):
        f = cat.combine(hom, [rng.randint(-5, 5) for _ in hom], X, Y)
        if iso(f):
            return f
    back = cat.hom(Y, X)
    for f in hom:
        for g in back:
            gf = cat.linear_matrix(cat.compose(g, f))
            if gf.rank() == gf.rows:
                # f is split mono; an iso when Y is indecomposable and dims agree
                if iso(f):
                    return f
    return None


@dataclass
class AlmostSplitCertificate:
    """Outcome of an almost-split check with every factorization witness."""

    verified: bool
    left_local: bool
    right_local: bool
    section: Any = None
    witnesses: List[Tuple[str, Any, Any]] = dc_field(default_factory=list)
    failures: List[str] = dc_field(default_factory=list)

    def summary(self) -> str:
        if self.verified:
            n = len(self.witnesses)
            return "almost split: verified (%d factorization witness%s)" % (n, "" if n == 1 else "es")
        return "not almost split: " + "; ".join(self.failures)


def verify_almost_split(cat: LinearCategory, j, pi, test_objects: Sequence, names: Optional[Sequence[str]] = None,
                        check_exact=None) -> AlmostSplitCertificate:
    """Check that 0 -> X --j--> E --pi--> Z -> 0 is almost split.

    Ends must have local endomorphism rings, ``pi`` must have no section, and
    every radical morphism from each test object into Z must factor through
    ``pi``.  ``check_exact`` optionally validates exactness first.
    """
    failures = []
    if check_exact is not None and not check_exact(j, pi):
        failures.append("sequence is not exact")
    X, Z = cat.source(j), cat.target(pi)
    lloc = not cat.is_zero_object(X) and is_local(cat, X)
    rloc = not cat.is_zero_object(Z) and is_local(cat, Z)
    if not lloc:
        failures.append("first term is not indecomposable")
    if not rloc:
        failures.append("end term is not indecomposable")
    sec = find_section(cat, pi)
    if sec is not None:
        failures.append("section found")
    witnesses = []
    if rloc and sec is None:
        for k, T in enumerate(test_objects):
            nm = names[k] if names else "T%d" % k
            for f in radical_basis(cat, T, Z):
                g = factor_right(cat, f, pi)
                if g is None:
                    failures.append("radical morphism from %s does not factor" % nm)
                    break
                witnesses.append((nm, f, g))
    return AlmostSplitCertificate(not failures, lloc, rloc, sec, witnesses, failures)


@dataclass
class ApproximationCertificate:
    """A candidate approximation with factorization witnesses or a refutation."""

    direction: str
    candidate: Any
    approximating_object: Any
    witnesses: List[Tuple[str, Any, Any]] = dc_field(default_factory=list)
    refutation: Optional[Tuple[str, Any]] = None

    @property
    def certified(self) -> bool:
        return self.refutation is None

    def recompose_ok(self, cat: LinearCategory) -> bool:
        """Every witness recomposes exactly to its tested morphism."""
        for _, f, g in self.witnesses:
            comp = cat.compose(self.candidate, g) if self.direction == "right" else cat.compose(g, self.candidate)
            if cat.flatten(comp) != cat.flatten(f):
                return False
        return True


def certify_approximation(cat: LinearCategory, candidate, generators: Sequence, direction: str,
                          names: Optional[Sequence[str]] = None) -> ApproximationCertificate:
    """Factor every basis morphism between generators and the target through ``candidate``.

    ``direction="right"``: candidate is ``Y -> M``; every ``Z -> M`` must factor as candidate o g.
    ``direction="left"``: candidate is ``M -> Y``; every ``M -> Z`` must factor as g o candidate.
    """
    if direction not in ("left", "right"):
        raise ValueError("direction must be 'left' or 'right'")
    cert = ApproximationCertificate(direction, candidate,
                                    cat.source(candidate) if direction == "right" else cat.target(candidate))
    M = cat.target(candidate) if direction == "right" else cat.source(candidate)
    for k, Z in enumerate(generators):
        nm = names[k] if names else "Z%d" % k
        tests = cat.hom(Z, M) if direction == "right" else cat.hom(M, Z)
        for f in tests:
            g = factor_right(cat, f, candidate) if direction == "right" else factor_left(cat, f, candidate)
            if g is None:
                cert.refutation = (nm, f)
                return cert
            cert.witnesses.append((nm, f, g))
    return cert
