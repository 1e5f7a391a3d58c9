"""Dense exact matrices and the subspace lattice.

Conventions used throughout the package:

* Matrices act on **column** vectors: ``m.mul_vec(v)`` is ``m @ v``.
* A vector of K^n is a length-n sequence of raw field values.
* A subspace is stored only as its reduced-row-echelon basis
  (:class:`SubspaceBasis`), which is unique per subspace, so equality of
  subspaces is plain structural equality.

Internally every entry is a raw value (``Fraction`` or int residue); the
owning :class:`~hesspairs.fields.FieldSpec` performs the arithmetic.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable, Sequence

from .errors import AmbientMismatchError, NotSquareError
from .fields import FieldElement, FieldSpec, Raw

Vector = tuple[Raw, ...]


class _Echelon:
    """Mutable reduced-row-echelon accumulator.

    The workhorse behind rref, kernels, sums, intersections, spinning and
    flag construction.  Rows are kept normalized (pivot 1), mutually
    reduced, and sorted by pivot column, so `rows` is always a canonical
    RREF basis of the span of everything inserted so far.
    """

    __slots__ = ("field", "width", "rows", "pivots")

    def __init__(self, field: FieldSpec, width: int):
        self.field = field
        self.width = width
        self.rows: list[list[Raw]] = []
        self.pivots: list[int] = []

    def copy(self) -> "_Echelon":
        dup = _Echelon.__new__(_Echelon)
        dup.field = self.field
        dup.width = self.width
        dup.rows = [row[:] for row in self.rows]
        dup.pivots = self.pivots[:]
        return dup

    def residual(self, vec: Sequence[Raw]) -> list[Raw]:
        """Reduce ``vec`` against the current rows; returns the remainder."""
        F = self.field
        zero = F.zero()
        out = list(vec)
        for row, piv in zip(self.rows, self.pivots):
            c = out[piv]
            if c != zero:
                for j in range(piv, self.width):
                    rj = row[j]
                    if rj != zero:
                        out[j] = F.sub(out[j], F.mul(c, rj))
        return out

    def contains(self, vec: Sequence[Raw]) -> bool:
        zero = self.field.zero()
        return all(x == zero for x in self.residual(vec))

    def insert(self, vec: Sequence[Raw]) -> bool:
        """Add ``vec`` to the span.  Returns True when the span grew."""
        F = self.field
        zero = F.zero()
        red = self.residual(vec)
        piv = next((j for j, x in enumerate(red) if x != zero), None)
        if piv is None:
            return False
        if red[piv] != F.one():
            inv = F.inv(red[piv])
            red = [F.mul(inv, x) if x != zero else zero for x in red]
        # Clear the new pivot column from the existing rows.
        for row in self.rows:
            c = row[piv]
            if c != zero:
                for j in range(piv, self.width):
                    rj = red[j]
                    if rj != zero:
                        row[j] = F.sub(row[j], F.mul(c, rj))
        at = bisect_left(self.pivots, piv)
        self.pivots.insert(at, piv)
        self.rows.insert(at, red)
        return True

    def insert_all(self, vectors: Iterable[Sequence[Raw]]) -> int:
        return sum(1 for v in vectors if self.insert(v))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def to_rows(self) -> tuple[Vector, ...]:
        return tuple(tuple(row) for row in self.rows)

    def to_subspace(self) -> "SubspaceBasis":
        return SubspaceBasis(self.field, self.width, self.to_rows())


class Matrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "nrows", "ncols", "entries")

    def __init__(self, field: FieldSpec, entries: tuple[Vector, ...], ncols: int | None = None):
        self.field = field
        self.entries = entries
        self.nrows = len(entries)
        self.ncols = len(entries[0]) if entries else (ncols or 0)

    # construction --------------------------------------------------------

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence]) -> "Matrix":
        """Build a matrix, coercing entries (ints, strings, FieldElements...)."""
        grid = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        if grid and any(len(r) != len(grid[0]) for r in grid):
            raise ValueError("ragged rows")
        return cls(field, grid)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        one, zero = field.one(), field.zero()
        return cls(field, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        zero = field.zero()
        return cls(field, tuple((zero,) * ncols for _ in range(nrows)), ncols=ncols)

    @classmethod
    def diagonal(cls, field: FieldSpec, values: Sequence) -> "Matrix":
        vals = [field.coerce(v) for v in values]
        zero = field.zero()
        n = len(vals)
        return cls(field, tuple(tuple(vals[i] if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def scalar(cls, field: FieldSpec, n: int, value) -> "Matrix":
        return cls.diagonal(field, [value] * n)

    # arithmetic -----------------------------------------------------------

    def _check_field(self, other: "Matrix") -> None:
        self.field.check_same(other.field)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise AmbientMismatchError("matrix shapes differ")
        F = self.field
        return Matrix(
            F,
            tuple(
                tuple(F.add(a, b) for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
            ncols=self.ncols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise AmbientMismatchError("matrix shapes differ")
        F = self.field
        return Matrix(
            F,
            tuple(
                tuple(F.sub(a, b) for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
            ncols=self.ncols,
        )

    def __mul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.ncols != other.nrows:
            raise AmbientMismatchError(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        F = self.field
        zero = F.zero()
        cols = tuple(zip(*other.entries)) if other.entries else ()
        out = []
        for row in self.entries:
            new = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    if a != zero and b != zero:
                        acc = F.add(acc, F.mul(a, b))
                new.append(acc)
            out.append(tuple(new))
        return Matrix(F, tuple(out), ncols=other.ncols)

    def scale(self, value) -> "Matrix":
        F = self.field
        v = F.coerce(value)
        return Matrix(F, tuple(tuple(F.mul(v, x) for x in row) for row in self.entries), ncols=self.ncols)

    def minus_scalar(self, value) -> "Matrix":
        """``self - value * I``; requires a square matrix."""
        if self.nrows != self.ncols:
            raise NotSquareError("matrix is not square")
        F = self.field
        v = F.coerce(value)
        return Matrix(
            F,
            tuple(
                tuple(F.sub(x, v) if i == j else x for j, x in enumerate(row))
                for i, row in enumerate(self.entries)
            ),
            ncols=self.ncols,
        )

    def mul_vec(self, vec: Sequence[Raw]) -> Vector:
        """Apply to a column vector of raw values."""
        if len(vec) != self.ncols:
            raise AmbientMismatchError("vector length does not match column count")
        F = self.field
        zero = F.zero()
        out = []
        for row in self.entries:
            acc = zero
            for a, b in zip(row, vec):
                if a != zero and b != zero:
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, tuple(zip(*self.entries)) if self.entries else (), ncols=self.nrows)

    def rank(self) -> int:
        ech = _Echelon(self.field, self.ncols)
        ech.insert_all(self.entries)
        return ech.dim

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise NotSquareError("matrix is not square")
        F = self.field
        n = self.nrows
        one, zero = F.one(), F.zero()
        ech = _Echelon(F, 2 * n)
        for i, row in enumerate(self.entries):
            aug = list(row) + [one if j == i else zero for j in range(n)]
            ech.insert(aug)
        if ech.dim < n or any(p >= n for p in ech.pivots):
            raise ValueError("matrix is not invertible")
        # Rows are sorted by pivot column 0..n-1, so the right halves already
        # line up with the identity on the left.
        return Matrix(F, tuple(tuple(row[n:]) for row in ech.rows), ncols=n)

    # inspection -----------------------------------------------------------

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.field, self.entries[i][j])

    def is_zero(self) -> bool:
        zero = self.field.zero()
        return all(x == zero for row in self.entries for x in row)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.field, self.ncols, self.entries))

    def __repr__(self) -> str:
        rows = "; ".join(" ".join(self.field.format(x) for x in row) for row in self.entries)
        return f"Matrix({self.field!r}, [{rows}])"


class SubspaceBasis:
    """Canonical (reduced-row-echelon) basis of a subspace of K^n.

    ``rows`` is a tuple of basis row vectors in RREF with no zero rows:
    pivot columns strictly increase, pivots are 1, and pivot columns are
    zero elsewhere.  Uniqueness of the RREF makes two values equal exactly
    when they describe the same subspace; the zero subspace is the empty
    basis with an explicit ambient dimension.
    """

    __slots__ = ("field", "ambient_dim", "rows")

    def __init__(self, field: FieldSpec, ambient_dim: int, rows: tuple[Vector, ...]):
        self.field = field
        self.ambient_dim = ambient_dim
        self.rows = rows

    @classmethod
    def from_vectors(cls, field: FieldSpec, ambient_dim: int, vectors: Iterable[Sequence]) -> "SubspaceBasis":
        ech = _Echelon(field, ambient_dim)
        for v in vectors:
            vec = [field.coerce(x) for x in v]
            if len(vec) != ambient_dim:
                raise AmbientMismatchError("vector length does not match ambient dimension")
            ech.insert(vec)
        return ech.to_subspace()

    @classmethod
    def zero(cls, field: FieldSpec, ambient_dim: int) -> "SubspaceBasis":
        return cls(field, ambient_dim, ())

    @classmethod
    def full(cls, field: FieldSpec, ambient_dim: int) -> "SubspaceBasis":
        return cls(field, ambient_dim, Matrix.identity(field, ambient_dim).entries)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def is_zero(self) -> bool:
        return not self.rows

    @property
    def is_full(self) -> bool:
        return len(self.rows) == self.ambient_dim

    def contains_vector(self, vec: Sequence[Raw]) -> bool:
        ech = self._as_echelon()
        return ech.contains(vec)

    def _as_echelon(self) -> _Echelon:
        ech = _Echelon(self.field, self.ambient_dim)
        ech.rows = [list(r) for r in self.rows]
        ech.pivots = [next(j for j, x in enumerate(r) if x != self.field.zero()) for r in self.rows]
        return ech

    def basis_elements(self) -> tuple[tuple[FieldElement, ...], ...]:
        return tuple(tuple(FieldElement(self.field, x) for x in row) for row in self.rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubspaceBasis)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.field, self.ambient_dim, self.rows))

    def __repr__(self) -> str:
        rows = "; ".join(" ".join(self.field.format(x) for x in row) for row in self.rows)
        return f"Subspace(dim {self.dim} of K^{self.ambient_dim}: [{rows}])"


def _check_ambient(a: SubspaceBasis, b: SubspaceBasis) -> None:
    a.field.check_same(b.field)
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatchError(
            f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}"
        )


def rref(m: Matrix) -> tuple[SubspaceBasis, int]:
    """Canonical basis of the row space of ``m``, plus its rank."""
    ech = _Echelon(m.field, m.ncols)
    ech.insert_all(m.entries)
    return ech.to_subspace(), ech.dim


def kernel(m: Matrix) -> SubspaceBasis:
    """Canonical basis of the right null space {v : m v = 0}."""
    F = m.field
    zero = F.zero()
    ech = _Echelon(F, m.ncols)
    ech.insert_all(m.entries)
    pivots = set(ech.pivots)
    free = [j for j in range(m.ncols) if j not in pivots]
    out = _Echelon(F, m.ncols)
    for f in free:
        vec = [zero] * m.ncols
        vec[f] = F.one()
        for row, piv in zip(ech.rows, ech.pivots):
            if row[f] != zero:
                vec[piv] = F.neg(row[f])
        out.insert(vec)
    return out.to_subspace()


def subspace_sum(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """Canonical basis of a + b."""
    _check_ambient(a, b)
    ech = _Echelon(a.field, a.ambient_dim)
    ech.insert_all(a.rows)
    ech.insert_all(b.rows)
    return ech.to_subspace()


def subspace_intersect(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """Canonical basis of a ∩ b, by the Zassenhaus stacked-block method.

    Rows [u | u] for u in a and [v | 0] for v in b are echelonized over
    width 2n; rows whose pivot falls in the right block have zero left
    halves, and those right halves are exactly an RREF basis of a ∩ b.
    """
    _check_ambient(a, b)
    F = a.field
    n = a.ambient_dim
    zero = F.zero()
    ech = _Echelon(F, 2 * n)
    for u in a.rows:
        ech.insert(list(u) + list(u))
    for v in b.rows:
        ech.insert(list(v) + [zero] * n)
    rows = tuple(tuple(row[n:]) for row, piv in zip(ech.rows, ech.pivots) if piv >= n)
    return SubspaceBasis(F, n, rows)


def subspace_contains(a: SubspaceBasis, b: SubspaceBasis) -> bool:
    """True when b ⊆ a, i.e. every basis row of b reduces to zero against a."""
    _check_ambient(a, b)
    if b.is_zero:
        return True
    if b.dim > a.dim:
        return False
    ech = a._as_echelon()
    return all(ech.contains(v) for v in b.rows)


def apply(m: Matrix, s: SubspaceBasis) -> SubspaceBasis:
    """Canonical basis of the image {m v : v in s}."""
    m.field.check_same(s.field)
    if m.ncols != s.ambient_dim:
        raise AmbientMismatchError("matrix column count does not match ambient dimension")
    ech = _Echelon(m.field, m.nrows)
    for v in s.rows:
        ech.insert(m.mul_vec(v))
    return ech.to_subspace()
