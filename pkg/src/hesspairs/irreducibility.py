"""Deciding whether a pair of transformations has a common invariant subspace.

A pair (A, A*) is *irreducible* when no subspace W with 0 != W != V
satisfies A W ⊆ W and A* W ⊆ W.  The decision ladder in
:func:`decide_irreducible`:

1. any field: if the unital algebra generated by {A, A*} has dimension
   n^2, the pair is irreducible (Burnside sufficiency);
2. spin probes: the smallest invariant subspace through each standard
   basis vector and each available eigenbasis vector; any proper nonzero
   result is a reducibility witness;
3. GF(p), small ambient: spin every projective point -- a complete
   decision, since a proper invariant subspace must contain one;
4. GF(p), large ambient: randomized null-space test (MeatAxe style) with
   a seeded generator;
5. rationals, all inconclusive: Undetermined.  Honest tri-state beats a
   wrong boolean; callers that need irreducibility refuse to proceed.

Reducible verdicts always carry a witness that can be re-checked with
:func:`verify_invariant`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Sequence

from .errors import (
    EigenvaluesOutsideFieldError,
    InfiniteFieldError,
    SizeMismatchError,
    ZeroVectorError,
)
from .fields import FieldSpec, PrimeField, Raw
from .linalg import Matrix, SubspaceBasis, _Echelon, apply, kernel, subspace_contains
from .spectral import EigenStructure, eigen_structure


class IrreducibilityStatus(str, Enum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"
    UNDETERMINED = "undetermined"


class DecisionMethod(str, Enum):
    BRUTE_FORCE = "brute-force"
    MEATAXE = "meataxe"
    ALGEBRA_DIMENSION = "algebra-dimension"
    SPIN_PROBE = "spin-probe"


@dataclass(frozen=True)
class IrreducibilityVerdict:
    """Outcome of the decision ladder; witness present iff reducible."""

    status: IrreducibilityStatus
    method: DecisionMethod
    witness: Optional[SubspaceBasis] = None

    def __post_init__(self):
        if (self.status is IrreducibilityStatus.REDUCIBLE) != (self.witness is not None):
            raise ValueError("witness must be present exactly for reducible verdicts")

    @property
    def is_irreducible(self) -> bool:
        return self.status is IrreducibilityStatus.IRREDUCIBLE


def _check_generators(generators: Sequence[Matrix]) -> tuple[FieldSpec, int]:
    if not generators:
        raise SizeMismatchError("at least one generator is required")
    first = generators[0]
    if not first.is_square:
        raise SizeMismatchError("generators must be square")
    for g in generators[1:]:
        g.field.check_same(first.field)
        if g.nrows != first.nrows or not g.is_square:
            raise SizeMismatchError("generators must share one square size")
    return first.field, first.nrows


def spin(v: Sequence[Raw], generators: Sequence[Matrix]) -> SubspaceBasis:
    """Smallest subspace containing v that is invariant under every generator."""
    field, n = _check_generators(generators)
    vec = tuple(field.coerce(x) for x in v)
    if len(vec) != n:
        raise SizeMismatchError("seed vector length does not match generators")
    if all(x == field.zero() for x in vec):
        raise ZeroVectorError("spin needs a nonzero seed vector")
    ech = _Echelon(field, n)
    ech.insert(vec)
    queue = [vec]
    while queue:
        w = queue.pop()
        for g in generators:
            u = g.mul_vec(w)
            if ech.insert(u):
                queue.append(u)
                if ech.dim == n:
                    return ech.to_subspace()
    return ech.to_subspace()


def algebra_closure(generators: Sequence[Matrix]) -> tuple[int, tuple[Matrix, ...]]:
    """Dimension and spanning set of the unital algebra generated by the matrices.

    Closes span{I} under left multiplication by the generators, which
    reaches every word; the dimension is at most n^2.
    """
    field, n = _check_generators(generators)
    ech = _Echelon(field, n * n)
    basis: list[Matrix] = []
    queue: list[Matrix] = []
    ident = Matrix.identity(field, n)
    flat = tuple(x for row in ident.entries for x in row)
    ech.insert(flat)
    basis.append(ident)
    queue.append(ident)
    full = n * n
    while queue and ech.dim < full:
        m = queue.pop()
        for g in generators:
            prod = g * m
            if ech.insert(tuple(x for row in prod.entries for x in row)):
                basis.append(prod)
                queue.append(prod)
                if ech.dim == full:
                    break
    return ech.dim, tuple(basis)


def verify_invariant(w: SubspaceBasis, a: Matrix, a_star: Matrix) -> bool:
    """True when A W ⊆ W and A* W ⊆ W."""
    return subspace_contains(w, apply(a, w)) and subspace_contains(w, apply(a_star, w))


def _projective_points(field: PrimeField, n: int) -> Iterator[tuple[int, ...]]:
    """One representative per projective point: first nonzero coordinate is 1."""
    p = field.p
    for lead in range(n):
        for tail in itertools.product(range(p), repeat=n - lead - 1):
            yield (0,) * lead + (1,) + tail


def projective_point_count(field: PrimeField, n: int) -> int:
    return (field.p**n - 1) // (field.p - 1)


def _proper(space: SubspaceBasis, n: int) -> bool:
    return 0 < space.dim < n


def _spin_seed_vectors(a: Matrix, a_star: Matrix,
                       eigen_a: Optional[EigenStructure],
                       eigen_a_star: Optional[EigenStructure]) -> list[tuple[Raw, ...]]:
    field, n = a.field, a.nrows
    seeds: list[tuple[Raw, ...]] = list(Matrix.identity(field, n).entries)
    for eig in (eigen_a, eigen_a_star):
        if eig is not None:
            for space in eig.eigenspaces:
                seeds.extend(space.rows)
    seen = set()
    out = []
    for s in seeds:
        if s not in seen:
            seen.add(s)
            out.append(s)
    return out


def _random_algebra_element(field: FieldSpec, pool: Sequence[Matrix], rng) -> Matrix:
    n = pool[0].nrows
    acc = Matrix.zeros(field, n, n)
    for m in pool:
        c = field.rand(rng)
        if c != field.zero():
            acc = acc + m.scale(c)
    return acc


def decide_irreducible(
    a: Matrix,
    a_star: Matrix,
    *,
    seed: int = 0,
    brute_force_limit: int = 5000,
    meataxe_draws: int = 64,
    eigen_a: Optional[EigenStructure] = None,
    eigen_a_star: Optional[EigenStructure] = None,
) -> IrreducibilityVerdict:
    """Run the decision ladder on the pair (A, A*).

    Deterministic for a fixed seed.  ``eigen_a`` / ``eigen_a_star`` are
    optional precomputed eigen structures whose eigenvectors enrich the
    spin probes; when absent they are computed on a best-effort basis.
    """
    field, n = _check_generators([a, a_star])
    generators = [a, a_star]

    # (1) Burnside sufficiency: a full matrix algebra leaves no room for
    # a common invariant subspace.
    dim, _ = algebra_closure(generators)
    if dim == n * n:
        return IrreducibilityVerdict(IrreducibilityStatus.IRREDUCIBLE, DecisionMethod.ALGEBRA_DIMENSION)

    # (2) Spin probes from standard basis and eigenbasis vectors.
    if eigen_a is None:
        eigen_a = _try_eigen(a)
    if eigen_a_star is None:
        eigen_a_star = _try_eigen(a_star)
    for vec in _spin_seed_vectors(a, a_star, eigen_a, eigen_a_star):
        space = spin(vec, generators)
        if _proper(space, n):
            return IrreducibilityVerdict(
                IrreducibilityStatus.REDUCIBLE, DecisionMethod.SPIN_PROBE, witness=space
            )

    if isinstance(field, PrimeField):
        if projective_point_count(field, n) <= brute_force_limit:
            # (3) Complete: every proper invariant subspace contains a
            # projective point, whose spin stays inside it.
            for vec in _projective_points(field, n):
                space = spin(vec, generators)
                if _proper(space, n):
                    return IrreducibilityVerdict(
                        IrreducibilityStatus.REDUCIBLE, DecisionMethod.BRUTE_FORCE, witness=space
                    )
            return IrreducibilityVerdict(IrreducibilityStatus.IRREDUCIBLE, DecisionMethod.BRUTE_FORCE)
        # (4) Randomized null-space test.
        return _meataxe(a, a_star, field, n, seed, meataxe_draws)

    # (5) Over the rationals with everything above inconclusive.
    return IrreducibilityVerdict(IrreducibilityStatus.UNDETERMINED, DecisionMethod.SPIN_PROBE)


def _try_eigen(m: Matrix) -> Optional[EigenStructure]:
    try:
        return eigen_structure(m)
    except EigenvaluesOutsideFieldError:
        return None


def _meataxe(a: Matrix, a_star: Matrix, field: PrimeField, n: int, seed: int, draws: int) -> IrreducibilityVerdict:
    """Norton-style randomized test over GF(p).

    For a singular algebra element X: if some kernel vector spins to a
    proper subspace the pair is reducible; if every kernel vector spins to
    V, any common invariant subspace U must miss ker X, which forces
    ker(X^T) inside the annihilator of U -- so one transposed spin from
    ker(X^T) filling the dual space certifies irreducibility.
    """
    rng = random.Random(seed)
    gens = [a, a_star]
    gens_t = [a.transpose(), a_star.transpose()]
    pool = [
        Matrix.identity(field, n),
        a,
        a_star,
        a * a_star,
        a_star * a,
        a * a,
        a_star * a_star,
    ]
    kernel_cap = 512
    for _ in range(draws):
        x = _random_algebra_element(field, pool, rng)
        ker = kernel(x)
        if ker.is_zero or ker.is_full:
            continue
        if projective_point_count(field, ker.dim) > kernel_cap:
            continue
        proper_found = None
        for coeffs in _projective_points(field, ker.dim):
            vec = _combine(field, ker.rows, coeffs)
            space = spin(vec, gens)
            if _proper(space, n):
                proper_found = space
                break
        if proper_found is not None:
            return IrreducibilityVerdict(
                IrreducibilityStatus.REDUCIBLE, DecisionMethod.MEATAXE, witness=proper_found
            )
        ker_t = kernel(x.transpose())
        w = ker_t.rows[0]
        dual_space = spin(w, gens_t)
        if dual_space.dim == n:
            return IrreducibilityVerdict(IrreducibilityStatus.IRREDUCIBLE, DecisionMethod.MEATAXE)
        witness = kernel(Matrix(field, dual_space.rows, ncols=n))
        if _proper(witness, n) and verify_invariant(witness, a, a_star):
            return IrreducibilityVerdict(
                IrreducibilityStatus.REDUCIBLE, DecisionMethod.MEATAXE, witness=witness
            )
        # A dual witness that fails re-verification means the draw was
        # degenerate; try another element.
    return IrreducibilityVerdict(IrreducibilityStatus.UNDETERMINED, DecisionMethod.MEATAXE)


def _combine(field: FieldSpec, rows: Sequence[tuple[Raw, ...]], coeffs: Sequence[Raw]) -> tuple[Raw, ...]:
    n = len(rows[0])
    zero = field.zero()
    out = [zero] * n
    for c, row in zip(coeffs, rows):
        if c != zero:
            for j, x in enumerate(row):
                if x != zero:
                    out[j] = field.add(out[j], field.mul(c, x))
    return tuple(out)


# -- exhaustive oracle ---------------------------------------------------------


def enumerate_subspaces(field: PrimeField, n: int, *, proper_only: bool = False) -> Iterator[SubspaceBasis]:
    """Every subspace of GF(p)^n, each exactly once, as its canonical basis.

    Enumerates all RREF shapes: a choice of pivot columns plus arbitrary
    values at the free positions to the right of each pivot.  Intended for
    desk-scale oracles only; the count grows like a Gaussian binomial.
    """
    if not field.is_finite:
        raise InfiniteFieldError("cannot enumerate subspaces over the rationals")
    p = field.p
    dims = range(1, n) if proper_only else range(0, n + 1)
    for k in dims:
        if k == 0:
            yield SubspaceBasis.zero(field, n)
            continue
        for pivots in itertools.combinations(range(n), k):
            pivot_set = set(pivots)
            free_cells = [
                (i, j)
                for i in range(k)
                for j in range(pivots[i] + 1, n)
                if j not in pivot_set
            ]
            for values in itertools.product(range(p), repeat=len(free_cells)):
                rows = [[0] * n for _ in range(k)]
                for i, c in enumerate(pivots):
                    rows[i][c] = 1
                for (i, j), v in zip(free_cells, values):
                    rows[i][j] = v
                yield SubspaceBasis(field, n, tuple(tuple(r) for r in rows))


def decide_irreducible_by_enumeration(a: Matrix, a_star: Matrix) -> IrreducibilityVerdict:
    """Gold-standard oracle: test every proper nonzero subspace directly."""
    field, n = _check_generators([a, a_star])
    if not isinstance(field, PrimeField):
        raise InfiniteFieldError("enumeration oracle requires a finite field")
    for space in enumerate_subspaces(field, n, proper_only=True):
        if verify_invariant(space, a, a_star):
            return IrreducibilityVerdict(
                IrreducibilityStatus.REDUCIBLE, DecisionMethod.BRUTE_FORCE, witness=space
            )
    return IrreducibilityVerdict(IrreducibilityStatus.IRREDUCIBLE, DecisionMethod.BRUTE_FORCE)
