import random
from fractions import Fraction

import pytest

from conftest import rand_matrix
from hesspairs import (
    GF,
    QQ,
    Matrix,
    Polynomial,
    SubspaceBasis,
    char_poly,
    eigen_structure,
    is_raising_decomposition,
    subspace_intersect,
    subspace_sum,
)
from hesspairs.errors import (
    DuplicateEigenvalueError,
    EigenvaluesOutsideFieldError,
    LengthMismatchError,
    NotADecompositionError,
    NotSquareError,
)


def companion(field, coeffs_low_to_high_monic):
    """Companion matrix of a monic polynomial given by all coefficients."""
    cs = [field.coerce(c) for c in coeffs_low_to_high_monic]
    n = len(cs) - 1
    zero, one = field.zero(), field.one()
    grid = [[zero] * n for _ in range(n)]
    for i in range(1, n):
        grid[i][i - 1] = one
    for i in range(n):
        grid[i][n - 1] = field.neg(cs[i])
    return Matrix(field, tuple(tuple(r) for r in grid), ncols=n)


def test_char_poly_identity():
    poly = char_poly(Matrix.identity(QQ, 2))
    assert poly == Polynomial.from_coefficients(QQ, [1, -2, 1])


def test_char_poly_diagonal():
    poly = char_poly(Matrix.diagonal(QQ, [0, 1, 2]))
    assert poly == Polynomial.from_coefficients(QQ, [0, 2, -3, 1])


def test_char_poly_companion_gf3():
    m = companion(GF(3), [1, 0, 1])  # x^2 + 1
    assert char_poly(m) == Polynomial.from_coefficients(GF(3), [1, 0, 1])


def test_char_poly_not_square():
    with pytest.raises(NotSquareError):
        char_poly(Matrix.zeros(QQ, 2, 3))


@pytest.mark.parametrize("field", [QQ, GF(2), GF(3), GF(7)])
def test_cayley_hamilton_randomized(field):
    rng = random.Random(13)
    for _ in range(25):
        n = rng.randint(1, 5)
        m = rand_matrix(field, n, rng)
        assert char_poly(m).eval_matrix(m).is_zero()


def test_char_poly_matches_root_products():
    rng = random.Random(14)
    for _ in range(10):
        values = rng.sample(range(-5, 6), 3)
        m = Matrix.diagonal(QQ, values)
        assert char_poly(m) == Polynomial.from_roots(QQ, values)


def test_eigen_structure_diagonal():
    eig = eigen_structure(Matrix.diagonal(QQ, [0, 1, 2]))
    assert [v.value for v in eig.eigenvalues] == [0, 1, 2]
    assert eig.diagonalizable
    for i, space in enumerate(eig.eigenspaces):
        expected = SubspaceBasis.from_vectors(QQ, 3, [[1 if j == i else 0 for j in range(3)]])
        assert space == expected


def test_eigen_structure_nilpotent_not_diagonalizable():
    eig = eigen_structure(Matrix.from_rows(QQ, [[0, 1], [0, 0]]))
    assert [v.value for v in eig.eigenvalues] == [0]
    assert eig.eigenspaces[0] == SubspaceBasis.from_vectors(QQ, 2, [[1, 0]])
    assert not eig.diagonalizable


def test_eigen_structure_lower_bidiagonal():
    m = Matrix.from_rows(QQ, [[2, 0, 0], [1, 1, 0], [0, 1, 0]])
    eig = eigen_structure(m)
    assert [v.value for v in eig.eigenvalues] == [0, 1, 2]
    assert eig.dims == (1, 1, 1)
    assert eig.diagonalizable


def test_eigen_structure_rational_eigenvalues():
    m = Matrix.from_rows(QQ, [["1/2", 0], [1, "-3/4"]])
    eig = eigen_structure(m)
    assert [v.value for v in eig.eigenvalues] == [Fraction(-3, 4), Fraction(1, 2)]
    assert eig.diagonalizable


def test_eigenvalues_outside_field_gf3():
    with pytest.raises(EigenvaluesOutsideFieldError) as err:
        eigen_structure(companion(GF(3), [1, 0, 1]))
    assert err.value.unfactored_degree == 2


def test_eigenvalues_outside_field_rationals():
    with pytest.raises(EigenvaluesOutsideFieldError):
        eigen_structure(Matrix.from_rows(QQ, [[0, -1], [1, 0]]))


def test_partial_spectrum_outside_field():
    # One eigenvalue in the field, an irreducible quadratic remaining.
    field = GF(3)
    m = Matrix.from_rows(field, [[2, 0, 0], [0, 0, 2], [0, 1, 0]])
    with pytest.raises(EigenvaluesOutsideFieldError) as err:
        eigen_structure(m)
    assert err.value.unfactored_degree == 2


def test_eigen_structure_large_prime_field():
    field = GF(1000003)
    m = Matrix.diagonal(field, [5, 1000002, 77])
    eig = eigen_structure(m)
    assert [v.value for v in eig.eigenvalues] == [5, 77, 1000002]
    assert eig.diagonalizable
    with pytest.raises(EigenvaluesOutsideFieldError):
        eigen_structure(companion(field, [1, 0, 1]))  # p = 3 mod 4, x^2+1 irreducible


def test_large_prime_repeated_eigenvalues():
    field = GF(65537)
    m = Matrix.from_rows(field, [[9, 0, 0], [1, 9, 0], [0, 0, 4]])
    eig = eigen_structure(m)
    assert [v.value for v in eig.eigenvalues] == [4, 9]
    assert not eig.diagonalizable  # Jordan block at 9


def test_diagonalizable_eigenspaces_form_direct_sum():
    rng = random.Random(15)
    for field in (QQ, GF(5)):
        for _ in range(15):
            n = rng.randint(1, 5)
            values = rng.sample(range(7), rng.randint(1, min(n, 4)))
            diag = values + [rng.choice(values) for _ in range(n - len(values))]
            rng.shuffle(diag)
            eig = eigen_structure(Matrix.diagonal(field, diag))
            assert eig.diagonalizable
            total = SubspaceBasis.zero(field, n)
            for i, s in enumerate(eig.eigenspaces):
                for t in eig.eigenspaces[i + 1:]:
                    assert subspace_intersect(s, t).is_zero
                total = subspace_sum(total, s)
            assert total.is_full


def test_is_decomposition_semantics():
    from hesspairs import is_decomposition

    e1 = SubspaceBasis.from_vectors(QQ, 2, [[1, 0]])
    e2 = SubspaceBasis.from_vectors(QQ, 2, [[0, 1]])
    diag = SubspaceBasis.from_vectors(QQ, 2, [[1, 1]])
    assert is_decomposition(QQ, 2, [e1, e2])
    assert is_decomposition(QQ, 2, [e1, diag])  # direct sum, different basis
    assert not is_decomposition(QQ, 2, [e1, e1])  # not direct
    assert not is_decomposition(QQ, 2, [e1])  # not all of V
    assert not is_decomposition(QQ, 2, [e1, e2, SubspaceBasis.zero(QQ, 2)])  # zero part
    assert not is_decomposition(QQ, 2, [e1, SubspaceBasis.from_vectors(GF(5), 2, [[0, 1]])])


def test_raising_shape_single_block():
    m = Matrix.diagonal(QQ, [4, 4])
    full = SubspaceBasis.full(QQ, 2)
    assert is_raising_decomposition(m, [full], [4])


def test_raising_shape_two_blocks():
    m = Matrix.from_rows(QQ, [[2, 0], [1, 1]])
    u0 = SubspaceBasis.from_vectors(QQ, 2, [[1, 0]])
    u1 = SubspaceBasis.from_vectors(QQ, 2, [[0, 1]])
    assert is_raising_decomposition(m, [u0, u1], [2, 1])
    assert not is_raising_decomposition(m, [u0, u1], [1, 2])


def test_raising_shape_validations():
    m = Matrix.identity(QQ, 2)
    u0 = SubspaceBasis.from_vectors(QQ, 2, [[1, 0]])
    u1 = SubspaceBasis.from_vectors(QQ, 2, [[0, 1]])
    with pytest.raises(LengthMismatchError):
        is_raising_decomposition(m, [u0, u1], [1])
    with pytest.raises(DuplicateEigenvalueError):
        is_raising_decomposition(m, [u0, u1], [3, 3])
    with pytest.raises(NotADecompositionError):
        is_raising_decomposition(m, [u0, u0], [1, 2])
    with pytest.raises(NotADecompositionError):
        is_raising_decomposition(m, [u0], [1])


def test_raising_shape_certifies_diagonalizability():
    # Random block-lower-bidiagonal matrices with distinct scalar blocks:
    # the shape forces diagonalizability with the given spectrum.
    rng = random.Random(16)
    for field in (QQ, GF(7)):
        for _ in range(12):
            d = rng.randint(0, 2)
            dims = [rng.randint(1, 2) for _ in range(d + 1)]
            n = sum(dims)
            values = rng.sample(range(7), d + 1)
            offs = [0]
            for w in dims:
                offs.append(offs[-1] + w)
            zero = field.zero()
            grid = [[zero] * n for _ in range(n)]
            for b in range(d + 1):
                v = field.coerce(values[b])
                for k in range(offs[b], offs[b + 1]):
                    grid[k][k] = v
            for b in range(d):
                for i in range(offs[b + 1], offs[b + 2]):
                    for j in range(offs[b], offs[b + 1]):
                        grid[i][j] = field.rand(rng)
            m = Matrix(field, tuple(tuple(r) for r in grid), ncols=n)
            ident = Matrix.identity(field, n).entries
            chain = [
                SubspaceBasis(field, n, tuple(ident[offs[b]: offs[b + 1]]))
                for b in range(d + 1)
            ]
            assert is_raising_decomposition(m, chain, values)
            eig = eigen_structure(m)
            assert eig.diagonalizable
            assert sorted(v.value for v in eig.eigenvalues) == sorted(
                field.coerce(v) for v in values
            )
            by_value = {v.value: s.dim for v, s in zip(eig.eigenvalues, eig.eigenspaces)}
            for b in range(d + 1):
                assert by_value[field.coerce(values[b])] == dims[b]
            # The product of (m - t I) over the chain's scalars annihilates V.
            assert Polynomial.from_roots(field, values).eval_matrix(m).is_zero()
