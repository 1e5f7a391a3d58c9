"""Characteristic polynomials, exact in-field eigenvalues and eigenspaces.

The characteristic polynomial is computed division-free (Berkowitz), so it
is valid over any field including small characteristic.  Eigenvalues are
found *in the ground field only*:

* over GF(p), by scanning all residues for small p and by extracting the
  linear part of the polynomial via gcd with x^p - x for large p;
* over Q, by the rational-root scan of the primitive integer scaling of
  the characteristic polynomial, with deflation after each found root.

If the characteristic polynomial does not split into linear factors over
the field, :func:`eigen_structure` raises
:class:`~hesspairs.errors.EigenvaluesOutsideFieldError`: downstream pair
analysis is meaningless without the full spectrum.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import (
    DuplicateEigenvalueError,
    EigenvaluesOutsideFieldError,
    LengthMismatchError,
    NotADecompositionError,
    NotSquareError,
)
from .fields import FieldElement, FieldSpec, PrimeField, Raw, Rationals
from .linalg import Matrix, SubspaceBasis, _Echelon, apply, kernel, subspace_contains

# Above this modulus the eigenvalue scan switches from trying every
# residue to gcd-based linear-factor extraction.
_SCAN_LIMIT = 4096


class Polynomial:
    """Polynomial over an exact field, coefficients stored low-to-high.

    The zero polynomial has an empty coefficient tuple; otherwise the
    leading coefficient is nonzero.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Sequence[Raw]):
        zero = field.zero()
        cs = list(coeffs)
        while cs and cs[-1] == zero:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def from_coefficients(cls, field: FieldSpec, coeffs: Sequence) -> "Polynomial":
        return cls(field, [field.coerce(c) for c in coeffs])

    @classmethod
    def zero(cls, field: FieldSpec) -> "Polynomial":
        return cls(field, ())

    @classmethod
    def one(cls, field: FieldSpec) -> "Polynomial":
        return cls(field, (field.one(),))

    @classmethod
    def x_minus(cls, field: FieldSpec, root) -> "Polynomial":
        return cls(field, (field.neg(field.coerce(root)), field.one()))

    @classmethod
    def from_roots(cls, field: FieldSpec, roots: Sequence) -> "Polynomial":
        """The monic polynomial with the given roots (with multiplicity)."""
        poly = cls.one(field)
        for r in roots:
            poly = poly * cls.x_minus(field, r)
        return poly

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one()

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self.field.check_same(other.field)
        F = self.field
        zero = F.zero()
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [zero] * (n - len(self.coeffs))
        b = list(other.coeffs) + [zero] * (n - len(other.coeffs))
        return Polynomial(F, [F.add(x, y) for x, y in zip(a, b)])

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self.field.check_same(other.field)
        F = self.field
        zero = F.zero()
        if self.is_zero or other.is_zero:
            return Polynomial.zero(F)
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == zero:
                continue
            for j, b in enumerate(other.coeffs):
                if b != zero:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Polynomial(F, out)

    def eval(self, x) -> Raw:
        """Horner evaluation at a scalar."""
        F = self.field
        v = F.coerce(x)
        acc = F.zero()
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, v), c)
        return acc

    def eval_element(self, x) -> FieldElement:
        return FieldElement(self.field, self.eval(x))

    def eval_matrix(self, m: Matrix) -> Matrix:
        """Horner evaluation at a square matrix."""
        if not m.is_square:
            raise NotSquareError("matrix is not square")
        self.field.check_same(m.field)
        n = m.nrows
        acc = Matrix.zeros(self.field, n, n)
        for c in reversed(self.coeffs):
            acc = acc * m + Matrix.scalar(self.field, n, c)
        return acc

    def divide_linear(self, root) -> tuple["Polynomial", Raw]:
        """Synthetic division by (x - root); returns (quotient, remainder)."""
        F = self.field
        r = F.coerce(root)
        out: list[Raw] = []
        acc = F.zero()
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, r), c)
            out.append(acc)
        if not out:
            return Polynomial.zero(F), F.zero()
        rem = out.pop()
        out.reverse()
        return Polynomial(F, out), rem

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero:
            return "Polynomial(0)"
        terms = " + ".join(
            f"({self.field.format(c)})x^{i}" for i, c in enumerate(self.coeffs) if c != self.field.zero()
        )
        return f"Polynomial({terms})"


def char_poly(m: Matrix) -> Polynomial:
    """Monic characteristic polynomial det(xI - m), by the Berkowitz method.

    Division-free, hence correct over any field including GF(2) and GF(3).
    """
    if not m.is_square:
        raise NotSquareError("characteristic polynomial of a non-square matrix")
    F = m.field
    n = m.nrows
    one, zero = F.one(), F.zero()
    if n == 0:
        return Polynomial.one(F)
    grid = m.entries
    # p holds the characteristic polynomial of the leading r x r principal
    # submatrix, highest coefficient first.
    p: list[Raw] = [one, F.neg(grid[0][0])]
    for r in range(1, n):
        a = grid[r][r]
        row = grid[r][:r]
        col = [grid[i][r] for i in range(r)]
        # q[k] multipliers: 1, -a, -(row col), -(row M col), -(row M^2 col)...
        q: list[Raw] = [one, F.neg(a)]
        vec = col
        for _ in range(r):
            acc = zero
            for x, y in zip(row, vec):
                if x != zero and y != zero:
                    acc = F.add(acc, F.mul(x, y))
            q.append(F.neg(acc))
            nxt = []
            for i in range(r):
                s = zero
                gi = grid[i]
                for j in range(r):
                    x = gi[j]
                    y = vec[j]
                    if x != zero and y != zero:
                        s = F.add(s, F.mul(x, y))
                nxt.append(s)
            vec = nxt
        new = [zero] * (r + 2)
        for i in range(r + 2):
            acc = zero
            for j in range(max(0, i - r - 1), min(i, r) + 1):
                qi = q[i - j]
                pj = p[j]
                if qi != zero and pj != zero:
                    acc = F.add(acc, F.mul(qi, pj))
            new[i] = acc
        p = new
    p.reverse()
    return Polynomial(F, p)


# -- root finding ------------------------------------------------------------


def _roots_prime_field(poly: Polynomial, spec: PrimeField) -> list[int]:
    """Distinct roots of ``poly`` in GF(p)."""
    p = spec.p
    if p <= _SCAN_LIMIT:
        return [c for c in range(p) if poly.eval(c) == 0]
    return sorted(_roots_large_prime(list(poly.coeffs), p))


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        f = a[-1] * inv_lead % p
        if f:
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] = (a[shift + i] - f * c) % p
        a.pop()
    return _poly_trim(a)

def _poly_mul_mod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = (out[i + j] + x * y) % p
    return _poly_mod(out, mod, p)


def _poly_pow_mod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(base[:], mod, p)
    while e:
        if e & 1:
            result = _poly_mul_mod(result, base, mod, p)
        e >>= 1
        if e:
            base = _poly_mul_mod(base, base, mod, p)
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim(a[:]), _poly_trim(b[:])
    while b:
        a, b = b, _poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _roots_large_prime(coeffs: list[int], p: int) -> list[int]:
    """Roots in GF(p) via gcd with x^p - x and equal-degree splitting."""
    f = _poly_trim([c % p for c in coeffs])
    roots: list[int] = []
    # Strip x^k so f has a nonzero constant term.
    k = 0
    while f and f[0] == 0:
        f = f[1:]
        k += 1
    if k:
        roots.append(0)
    if len(f) <= 1:
        return roots
    xp = _poly_pow_mod([0, 1], p, f, p)
    sub = xp + [0] * max(0, 2 - len(xp))
    sub[1] = (sub[1] - 1) % p
    g = _poly_gcd(f, _poly_trim(sub), p)
    rng = random.Random(0x5EED)
    stack = [g]
    while stack:
        h = stack.pop()
        d = len(h) - 1
        if d <= 0:
            continue
        if d == 1:
            roots.append((-h[0]) % p)
            continue
        while True:
            a = rng.randrange(p)
            probe = _poly_pow_mod([a, 1], (p - 1) // 2, h, p)
            probe = _poly_trim([(c - (1 if i == 0 else 0)) % p for i, c in enumerate(probe + [0] * (1 - len(probe)))])
            w = _poly_gcd(h, probe, p)
            if 0 < len(w) - 1 < d:
                stack.append(w)
                quo = _poly_quotient(h, w, p)
                stack.append(quo)
                break
    return roots


def _poly_quotient(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    db = len(b) - 1
    out = [0] * (len(a) - db)
    inv_lead = pow(b[-1], -1, p)
    for shift in range(len(a) - len(b), -1, -1):
        f = a[shift + db] * inv_lead % p
        out[shift] = f
        if f:
            for i, c in enumerate(b):
                a[shift + i] = (a[shift + i] - f * c) % p
    return _poly_trim(out)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    f = 1
    while f * f <= n:
        if n % f == 0:
            small.append(f)
            if f != n // f:
                large.append(n // f)
        f += 1
    return small + large[::-1]


def _roots_rationals(poly: Polynomial) -> list[Fraction]:
    """Distinct rational roots, by the rational-root theorem with deflation."""
    roots: list[Fraction] = []
    work = poly
    # Strip powers of x first.
    stripped = False
    while not work.is_zero and work.coeffs[0] == 0:
        work, _ = work.divide_linear(0)
        stripped = True
    if stripped:
        roots.append(Fraction(0))
    if work.degree < 1:
        return roots
    denom_lcm = 1
    for c in work.coeffs:
        denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in work.coeffs]
    content = 0
    for c in ints:
        content = gcd(content, c)
    ints = [c // content for c in ints]
    a0, an = ints[0], abs(ints[-1])
    for u in _divisors(a0):
        for v in _divisors(an):
            if gcd(u, v) != 1:
                continue
            for cand in (Fraction(u, v), Fraction(-u, v)):
                if work.eval(cand) == 0:
                    roots.append(cand)
                    while True:
                        quo, rem = work.divide_linear(cand)
                        if rem != 0:
                            break
                        work = quo
    return roots


def _in_field_roots_with_multiplicity(poly: Polynomial) -> list[tuple[Raw, int]]:
    """All (root, multiplicity) pairs with the root in the ground field."""
    spec = poly.field
    if isinstance(spec, PrimeField):
        found = _roots_prime_field(poly, spec)
    elif isinstance(spec, Rationals):
        found = _roots_rationals(poly)
    else:  # pragma: no cover - no other field kinds exist
        raise TypeError(f"unsupported field {spec!r}")
    out = []
    for r in sorted(set(found), key=spec.sort_key):
        mult = 0
        work = poly
        while True:
            quo, rem = work.divide_linear(r)
            if rem != spec.zero():
                break
            mult += 1
            work = quo
        if mult:
            out.append((r, mult))
    return out


# -- eigen structure ----------------------------------------------------------


@dataclass(frozen=True)
class EigenStructure:
    """Eigenvalues (in canonical order) with matching eigenspaces.

    ``diagonalizable`` is true exactly when the eigenspace dimensions sum
    to the ambient dimension, in which case the eigenspaces form a
    direct-sum decomposition of K^n.
    """

    transform: Matrix
    eigenvalues: tuple[FieldElement, ...]
    eigenspaces: tuple[SubspaceBasis, ...]
    diagonalizable: bool

    @property
    def d(self) -> int:
        """Number of distinct eigenvalues minus one."""
        return len(self.eigenvalues) - 1

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.eigenspaces)

    @property
    def ambient_dim(self) -> int:
        return self.transform.nrows


def eigen_structure(m: Matrix) -> EigenStructure:
    """Eigenvalues in the ground field, eigenspaces, diagonalizability.

    Eigenvalues are returned in canonical order (ascending residue over
    GF(p), ascending numeric order over Q); callers impose their own
    orderings downstream.  Raises
    :class:`~hesspairs.errors.EigenvaluesOutsideFieldError` when the
    characteristic polynomial does not split over the field.
    """
    if not m.is_square:
        raise NotSquareError("eigen structure of a non-square matrix")
    if m.nrows == 0:
        raise NotSquareError("eigen structure of an empty matrix")
    F = m.field
    poly = char_poly(m)
    roots = _in_field_roots_with_multiplicity(poly)
    total_mult = sum(mult for _, mult in roots)
    if total_mult < m.nrows:
        raise EigenvaluesOutsideFieldError(m.nrows - total_mult)
    values = []
    spaces = []
    dim_sum = 0
    for r, _ in roots:
        space = kernel(m.minus_scalar(r))
        values.append(FieldElement(F, r))
        spaces.append(space)
        dim_sum += space.dim
    return EigenStructure(
        transform=m,
        eigenvalues=tuple(values),
        eigenspaces=tuple(spaces),
        diagonalizable=dim_sum == m.nrows,
    )


def is_decomposition(field: FieldSpec, ambient_dim: int, subspaces: Sequence[SubspaceBasis]) -> bool:
    """True when the subspaces are nonzero and their direct sum is K^n."""
    total = 0
    ech = _Echelon(field, ambient_dim)
    for s in subspaces:
        if s.field != field or s.ambient_dim != ambient_dim or s.is_zero:
            return False
        total += s.dim
        ech.insert_all(s.rows)
    # Direct sum to V: dimensions add up and the sum is everything.
    return total == ambient_dim and ech.dim == ambient_dim


def is_raising_decomposition(m: Matrix, subspaces: Sequence[SubspaceBasis], eigenvalues: Sequence) -> bool:
    """Check the raising-chain shape (m - t_i I) U_i ⊆ U_{i+1}, U_{last+1} = 0.

    The subspaces must form a decomposition of K^n and the scalars must be
    pairwise distinct (validated, not returned as False).  When this
    returns True, ``m`` is guaranteed diagonalizable with exactly the
    given scalars as eigenvalues and dim V_{t_i} = dim U_i.
    """
    if not m.is_square:
        raise NotSquareError("matrix is not square")
    F = m.field
    values = [F.coerce(t) for t in eigenvalues]
    if len(values) != len(subspaces):
        raise LengthMismatchError("one scalar per subspace is required")
    if len(set(values)) != len(values):
        raise DuplicateEigenvalueError("scalars must be pairwise distinct")
    if not is_decomposition(F, m.nrows, list(subspaces)):
        raise NotADecompositionError("subspaces do not form a direct-sum decomposition of K^n")
    d = len(subspaces) - 1
    for i, (space, t) in enumerate(zip(subspaces, values)):
        image = apply(m.minus_scalar(t), space)
        target = subspaces[i + 1] if i < d else SubspaceBasis.zero(F, m.nrows)
        if not subspace_contains(target, image):
            return False
    return True
