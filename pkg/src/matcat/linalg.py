"""Exact linear algebra over the rationals and prime fields.

Every computation in the package bottoms out here.  Matrices act on column
vectors, so a linear map ``V -> W`` is stored as a ``dim W x dim V`` matrix.
Echelon forms use leftmost-pivot elimination with the first nonzero row as
the pivot, which makes every basis the library returns deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


class LinalgError(ValueError):
    """Raised on dimension mismatches and malformed scalars."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


class ModP:
    """An element of the prime field F_p, stored as its least residue."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, ModP):
            if other.p != self.p:
                raise LinalgError("mixing different prime fields")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pow__(self, k: int):
        return ModP(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "ModP(%d, %d)" % (self.v, self.p)

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: the rationals (characteristic 0) or F_p."""

    kind: str = "Q"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "Q":
            if self.characteristic != 0:
                raise LinalgError("the rationals have characteristic 0")
        elif self.kind == "Fp":
            if not _is_prime(self.characteristic):
                raise LinalgError("F_p needs a prime p, got %r" % self.characteristic)
        else:
            raise LinalgError("unknown field kind %r" % self.kind)

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("Q", 0)

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec("Fp", p)

    @property
    def is_rational(self) -> bool:
        return self.kind == "Q"

    def __call__(self, x):
        """Coerce an int, Fraction, residue or string like "3/2" into the field."""
        if isinstance(x, str):
            try:
                x = Fraction(x.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise LinalgError("bad scalar %r" % x) from exc
        if self.kind == "Q":
            if isinstance(x, ModP):
                raise LinalgError("cannot coerce an F_p element into Q")
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise LinalgError("bad scalar %r" % (x,))
        p = self.characteristic
        if isinstance(x, ModP):
            if x.p != p:
                raise LinalgError("mixing different prime fields")
            return x
        if isinstance(x, int):
            return ModP(x, p)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise LinalgError("%s is not defined mod %d" % (x, p))
            return ModP(x.numerator * pow(x.denominator, -1, p), p)
        raise LinalgError("bad scalar %r" % (x,))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def random(self, rng: random.Random, bound: int = 5):
        return self(rng.randint(-bound, bound))

    def format(self, x) -> str:
        return str(x)

    def to_json(self) -> dict:
        if self.kind == "Q":
            return {"kind": "Q"}
        return {"kind": "Fp", "p": self.characteristic}

    @staticmethod
    def from_json(obj: dict) -> "FieldSpec":
        kind = obj.get("kind")
        if kind == "Q":
            return FieldSpec.rationals()
        if kind == "Fp":
            return FieldSpec.prime(int(obj["p"]))
        raise LinalgError("unknown field kind %r" % kind)


QQ = FieldSpec.rationals()


class Matrix:
    """An immutable dense matrix over a :class:`FieldSpec`."""

    __slots__ = ("field", "rows", "cols", "_data", "_hash")

    def __init__(self, field: FieldSpec, rows: int, cols: int, data: Sequence[Sequence]):
        if rows < 0 or cols < 0:
            raise LinalgError("negative dimension")
        if len(data) != rows or any(len(r) != cols for r in data):
            raise LinalgError("entries do not match shape %dx%d" % (rows, cols))
        self.field = field
        self.rows = rows
        self.cols = cols
        self._data = tuple(tuple(field(x) for x in r) for r in data)
        self._hash = None

    @classmethod
    def _raw(cls, field: FieldSpec, rows: int, cols: int, data) -> "Matrix":
        # trusted constructor: entries already canonical field elements
        m = object.__new__(cls)
        m.field = field
        m.rows = rows
        m.cols = cols
        m._data = tuple(tuple(r) for r in data)
        m._hash = None
        return m

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls._raw(field, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols, rows)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], rows: int) -> "Matrix":
        cols = len(columns)
        return cls(field, rows, cols, [[columns[j][i] for j in range(cols)] for i in range(rows)])

    @classmethod
    def column(cls, field: FieldSpec, entries: Sequence) -> "Matrix":
        return cls(field, len(entries), 1, [[x] for x in entries])

    @classmethod
    def unit_column(cls, field: FieldSpec, n: int, i: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(field, n, 1, [[o if k == i else z] for k in range(n)])

    # ----- access
    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list:
        return [list(r) for r in self._data]

    def entries(self) -> list:
        """Entries in row-major order."""
        return [x for r in self._data for x in r]

    def columns(self) -> list:
        return [self.submatrix(range(self.rows), [j]) for j in range(self.cols)]

    # ----- arithmetic
    def _check_same(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise LinalgError("expected a Matrix")
        if self.field != other.field:
            raise LinalgError("field mismatch")
        if self.shape != other.shape:
            raise LinalgError("shape mismatch %s vs %s" % (self.shape, other.shape))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(self.field, self.rows, self.cols,
                           [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(self.field, self.rows, self.cols,
                           [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.field, self.rows, self.cols, [[-a for a in r] for r in self._data])

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw(self.field, self.rows, self.cols, [[c * a for a in r] for r in self._data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field:
            raise LinalgError("field mismatch")
        if self.cols != other.rows:
            raise LinalgError("cannot multiply %s by %s" % (self.shape, other.shape))
        z = self.field.zero
        ocols = [other.col(j) for j in range(other.cols)]
        out = []
        for r in self._data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * c[k] for k, a in nz), z) for c in ocols])
        return Matrix._raw(self.field, self.rows, other.cols, out)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.field, self.cols, self.rows,
                           [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def is_zero(self) -> bool:
        return all(not a for r in self._data for a in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.shape, self._data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(a) for a in r) for r in self._data)
        return "Matrix(%dx%d: [%s])" % (self.rows, self.cols, body)

    # ----- assembly
    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        rows = list(rows)
        cols = list(cols)
        return Matrix._raw(self.field, len(rows), len(cols),
                           [[self._data[i][j] for j in cols] for i in rows])

    @staticmethod
    def hstack(field: FieldSpec, blocks: Sequence["Matrix"], rows: Optional[int] = None) -> "Matrix":
        if not blocks:
            return Matrix.zeros(field, rows or 0, 0)
        r = blocks[0].rows
        if any(b.rows != r for b in blocks):
            raise LinalgError("hstack row mismatch")
        data = [[x for b in blocks for x in b._data[i]] for i in range(r)]
        return Matrix._raw(field, r, sum(b.cols for b in blocks), data)

    @staticmethod
    def vstack(field: FieldSpec, blocks: Sequence["Matrix"], cols: Optional[int] = None) -> "Matrix":
        if not blocks:
            return Matrix.zeros(field, 0, cols or 0)
        c = blocks[0].cols
        if any(b.cols != c for b in blocks):
            raise LinalgError("vstack column mismatch")
        data = [r for b in blocks for r in b._data]
        return Matrix._raw(field, sum(b.rows for b in blocks), c, data)

    @staticmethod
    def block(field: FieldSpec, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        return Matrix.vstack(field, [Matrix.hstack(field, row) for row in grid])

    @staticmethod
    def block_diag(field: FieldSpec, blocks: Sequence["Matrix"]) -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        z = field.zero
        data = [[z] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                data[r0 + i][c0:c0 + b.cols] = b._data[i]
            r0 += b.rows
            c0 += b.cols
        return Matrix._raw(field, rows, cols, data)

    # ----- elimination
    def rref(self) -> tuple:
        """Reduced row echelon form and the tuple of pivot columns."""
        data, pivots = _rref_rows([list(r) for r in self._data], self.cols)
        return Matrix._raw(self.field, self.rows, self.cols, data), tuple(pivots)

    def rank(self) -> int:
        return len(_rref_rows([list(r) for r in self._data], self.cols)[1])

    def nullspace(self) -> "Matrix":
        """Columns form the canonical basis of the kernel (one per free column)."""
        data, pivots = _rref_rows([list(r) for r in self._data], self.cols)
        free = [j for j in range(self.cols) if j not in set(pivots)]
        z, o = self.field.zero, self.field.one
        vecs = []
        for j in free:
            v = [z] * self.cols
            v[j] = o
            for i, pc in enumerate(pivots):
                v[pc] = -data[i][j]
            vecs.append(v)
        return Matrix._raw(self.field, self.cols, len(vecs),
                           [[vecs[k][i] for k in range(len(vecs))] for i in range(self.cols)])

    def column_basis(self) -> "Matrix":
        """The pivot columns of the matrix itself: a basis of its image."""
        _, pivots = _rref_rows([list(r) for r in self._data], self.cols)
        return self.submatrix(range(self.rows), pivots)

    def solve(self, b: "Matrix") -> Optional["Matrix"]:
        """Some X with self @ X == b, or None.  Free variables are set to zero."""
        if b.rows != self.rows:
            raise LinalgError("solve: %d rows vs right-hand side with %d rows" % (self.rows, b.rows))
        n = self.cols
        aug = [list(r) + list(s) for r, s in zip(self._data, b._data)]
        data, pivots = _rref_rows(aug, n + b.cols, stop=n)
        if any(p >= n for p in pivots):
            return None
        z = self.field.zero
        x = [[z] * b.cols for _ in range(n)]
        for i, pc in enumerate(pivots):
            x[pc] = data[i][n:]
        # rows without pivots in the A-part must be zero on the right
        for i in range(len(pivots), self.rows):
            if any(data[i][n:]):
                return None
        return Matrix._raw(self.field, n, b.cols, x)

    def inverse(self) -> Optional["Matrix"]:
        if self.rows != self.cols:
            return None
        return self.solve(Matrix.identity(self.field, self.rows))

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def power(self, k: int) -> "Matrix":
        out = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def trace(self):
        return sum((self._data[i][i] for i in range(min(self.rows, self.cols))), self.field.zero)

    def to_strings(self) -> list:
        return [[str(a) for a in r] for r in self._data]


def _rref_rows(rows: list, ncols: int, stop: Optional[int] = None) -> tuple:
    """In-place Gauss-Jordan on a list of row lists.

    Pivots are searched left to right; the first row with a nonzero entry in
    the current column becomes the pivot row.  With ``stop`` set, pivots are
    only searched in the first ``stop`` columns, but the remaining columns
    are still reduced (and a nonzero row beyond the last pivot shows up as a
    pivot in column ``stop`` when inconsistent).
    """
    nrows = len(rows)
    limit = ncols if stop is None else stop
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        if c >= limit:
            # only needed to flag inconsistency of an augmented system
            for i in range(r, nrows):
                if any(rows[i][c:]):
                    pivots.append(c)
                    return rows, pivots
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if prow[c] != 1:
            prow = [a * inv for a in prow]
            rows[r] = prow
        nz = [k for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                for k in nz:
                    row[k] = row[k] - f * prow[k]
        pivots.append(c)
        r += 1
    return rows, pivots


def solve_linear(A: Matrix, b: Matrix) -> Optional[Matrix]:
    """Return some x with ``A @ x == b`` or ``None`` when the system is inconsistent.

    Args:
        A: coefficient matrix.
        b: right-hand side with ``A.rows`` rows (one or more columns).

    Raises:
        LinalgError: if the row counts differ.
    """
    return A.solve(b)


def kernel_image_cokernel(A: Matrix) -> tuple:
    """Kernel basis, image basis and a cokernel projection of ``A``.

    The kernel basis is the canonical nullspace basis, the image basis is the
    set of pivot columns of ``A``, and the cokernel projection ``Q`` is a
    full-row-rank matrix with ``Q @ A == 0`` whose kernel is exactly ``im A``.
    """
    K = A.nullspace()
    I = A.column_basis()
    Q = A.T.nullspace().T
    return K, I, Q


def cokernel_projection(A: Matrix) -> Matrix:
    return A.T.nullspace().T


def pushout(f: Matrix, g: Matrix) -> tuple:
    """Pushout of ``f: U -> V`` and ``g: U -> W``.

    Returns ``(dim P, f_prime, g_prime)`` with ``f_prime: W -> P`` and
    ``g_prime: V -> P`` such that ``f_prime @ g == g_prime @ f``.  The
    pushout object is the cokernel of ``[f; -g]: U -> V + W``.
    """
    if f.cols != g.cols:
        raise LinalgError("pushout needs a common domain, got %d and %d" % (f.cols, g.cols))
    S = Matrix.vstack(f.field, [f, -g])
    Q = cokernel_projection(S)
    g_prime = Q.submatrix(range(Q.rows), range(f.rows))
    f_prime = Q.submatrix(range(Q.rows), range(f.rows, f.rows + g.rows))
    return Q.rows, f_prime, g_prime


def pushout_factor(f_prime: Matrix, g_prime: Matrix, a: Matrix, b: Matrix) -> Optional[Matrix]:
    """The unique ``u`` with ``u @ g_prime == a`` and ``u @ f_prime == b``, if the cocone commutes."""
    Q = Matrix.hstack(a.field, [g_prime, f_prime])
    rhs = Matrix.hstack(a.field, [a, b])
    ut = Q.T.solve(rhs.T)
    return None if ut is None else ut.T


def random_matrix(field: FieldSpec, rows: int, cols: int, rng: random.Random, bound: int = 3) -> Matrix:
    return Matrix(field, rows, cols, [[field.random(rng, bound) for _ in range(cols)] for _ in range(rows)])
