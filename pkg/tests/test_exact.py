import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from qwdist.exact import (
    DimensionMismatch,
    RationalMatrix,
    Subspace,
    contains,
    intersect,
    kernel,
    kron,
    to_uniform_sum_basis,
    vec_index,
)
from qwdist.graphs import complete_graph, laplacian

AMBIENT = 5


def vectors(d=AMBIENT):
    return st.lists(st.integers(-3, 3), min_size=d, max_size=d)


subspaces = st.lists(vectors(), min_size=0, max_size=4).map(lambda vs: Subspace.span(vs, AMBIENT))


def sympy_span_equal(a, b_vectors):
    """Span equality by rank of the stacked matrices."""
    if not a.basis and not b_vectors:
        return True
    ma = sympy.Matrix([list(r) for r in a.basis]) if a.basis else sympy.zeros(0, a.ambient_dim)
    mb = sympy.Matrix(b_vectors) if b_vectors else sympy.zeros(0, a.ambient_dim)
    return ma.rank() == mb.rank() == sympy.Matrix.vstack(ma, mb).rank()


def test_kron_examples():
    i2 = RationalMatrix.identity(2)
    assert kron(i2, i2) == RationalMatrix.identity(4)
    swap = RationalMatrix.from_rows([[0, 1], [1, 0]])
    assert kron(swap, i2) == RationalMatrix.from_rows(
        [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    )
    L = RationalMatrix.from_rows(laplacian(complete_graph(3)))
    i3 = RationalMatrix.identity(3)
    assert (kron(L, i3) - kron(i3, L)).apply([1] * 9) == [0] * 9


def test_kron_block_structure():
    a = RationalMatrix.from_rows([[1, Fraction(1, 2)], [3, 0]])
    b = RationalMatrix.from_rows([[2, 1, 0]])
    k = kron(a, b)
    assert k.shape == (2, 6)
    for p in range(2):
        for q in range(2):
            for j in range(3):
                assert k[p, q * 3 + j] == a[p, q] * b[0, j]


def test_kron_mixed_product():
    a = RationalMatrix.from_rows([[1, 2], [0, -1]])
    b = RationalMatrix.from_rows([[3, 1], [1, 1]])
    c = RationalMatrix.from_rows([[0, 1], [1, 0]])
    d = RationalMatrix.from_rows([[2, 0], [5, 1]])
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


def test_kernel_examples():
    assert kernel(RationalMatrix.identity(4)).dim == 0
    assert kernel(RationalMatrix.zeros(2, 3)) == Subspace.full(3)
    L = RationalMatrix.from_rows(laplacian(complete_graph(3)))
    i3 = RationalMatrix.identity(3)
    assert kernel(kron(L, i3) - kron(i3, L)).dim == 5


def test_kernel_with_fractions():
    m = RationalMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3), 1]])
    s = kernel(m)
    assert s.dim == 2
    for v in s.basis:
        assert m.apply(v) == [0]


@settings(max_examples=100, deadline=None)
@given(st.lists(vectors(), min_size=1, max_size=6))
def test_kernel_against_sympy(rows):
    s = kernel(rows)
    expected = [list(v) for v in sympy.Matrix(rows).nullspace()]
    assert s.dim == len(expected)
    assert sympy_span_equal(s, expected)
    for v in s.basis:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


@settings(max_examples=100, deadline=None)
@given(subspaces)
def test_canonical_form(s):
    assert Subspace.span(s.basis, AMBIENT) == s
    for row, p in zip(s.basis, s.pivots):
        assert row[p] > 0
        g = 0
        for x in row:
            g = math.gcd(g, x)
        assert g == 1
    assert s.pivots == sorted(s.pivots)
    # reduced: pivot columns are zero in every other row
    for i, p in enumerate(s.pivots):
        assert all(s.basis[k][p] == 0 for k in range(s.dim) if k != i)


@settings(max_examples=60, deadline=None)
@given(st.lists(vectors(), min_size=0, max_size=4), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_span_is_basis_independent(vs, coeffs):
    # adding a combination of existing vectors or reordering does not change identity
    s = Subspace.span(vs, AMBIENT)
    extra = [sum(c * v[k] for c, v in zip(coeffs, vs)) for k in range(AMBIENT)]
    assert Subspace.span(list(reversed(vs)) + [extra], AMBIENT) == s


@settings(max_examples=80, deadline=None)
@given(subspaces, subspaces, subspaces)
def test_intersect_laws(a, b, c):
    ab = intersect(a, b)
    assert ab == intersect(b, a)
    assert intersect(ab, c) == intersect(a, intersect(b, c))
    assert contains(a, ab) and contains(b, ab)
    assert ab.dim >= a.dim + b.dim - AMBIENT
    assert intersect(a, a) == a
    assert intersect(Subspace.full(AMBIENT), a) == a
    if contains(b, c):
        assert contains(intersect(a, b), intersect(a, c))


@settings(max_examples=80, deadline=None)
@given(subspaces, subspaces)
def test_intersect_against_sympy(a, b):
    # v in a and b  <=>  v = A^T x = B^T y; solve [A^T | -B^T] [x; y] = 0
    ab = intersect(a, b)
    if a.dim == 0 or b.dim == 0:
        assert ab.dim == 0
        return
    A = sympy.Matrix([list(r) for r in a.basis])
    B = sympy.Matrix([list(r) for r in b.basis])
    sols = sympy.Matrix.hstack(A.T, -B.T).nullspace()
    vecs = [list(A.T * s[: a.dim, 0]) for s in sols]
    assert sympy_span_equal(ab, vecs)


def test_intersect_errors():
    with pytest.raises(DimensionMismatch):
        intersect(Subspace.full(2), Subspace.full(3))
    with pytest.raises(DimensionMismatch):
        contains(Subspace.full(2), Subspace.full(3))


def test_contains_examples():
    s = Subspace.span([[1, 1, 0], [0, 1, 1]], 3)
    assert contains(s, Subspace.zero(3))
    assert contains(s, Subspace.span([[1, 2, 1]], 3))
    assert not contains(s, Subspace.span([[1, 0, 0]], 3))
    assert not contains(Subspace.span([[1, 2, 1]], 3), s)


def test_to_uniform_sum_basis():
    assert to_uniform_sum_basis(Subspace.span([[1] * 9], 9)) == [[1] * 9]
    s = Subspace.span([[1, 0, 0, 1], [0, 1, 1, 0], [0, 0, 1, 0]], 4)
    out = to_uniform_sum_basis(s)
    assert [sum(col) for col in zip(*out)] == [1, 1, 1, 1]
    assert Subspace.span(out, 4) == s
    with pytest.raises(ValueError, match="all-ones"):
        to_uniform_sum_basis(Subspace.span([[1, 0, 0]], 3))


def test_vec_index():
    assert vec_index(0, 0, 3) == 0
    assert vec_index(1, 2, 3) == 5
    assert vec_index(2, 2, 3) == 8
    with pytest.raises(IndexError):
        vec_index(3, 0, 3)


def test_serialization_roundtrip():
    s = Subspace.span([[2, 4, 0], [Fraction(1, 3), 0, 1]], 3)
    obj = s.to_json()
    assert obj["dim"] == 2 and all(isinstance(x, int) for r in obj["basis"] for x in r)
    assert Subspace.from_json(obj) == s
    with pytest.raises(ValueError, match="declared dim"):
        Subspace.from_json({"ambient_dim": 3, "dim": 1, "basis": obj["basis"]})


def test_matrix_ops():
    a = RationalMatrix.from_rows([[1, 2], [3, 4]])
    assert (a - a) == RationalMatrix.zeros(2, 2)
    assert a.transpose() == RationalMatrix.from_rows([[1, 3], [2, 4]])
    assert a.scale(Fraction(1, 2))[1, 1] == 2
    assert not a.is_symmetric()
    with pytest.raises(DimensionMismatch):
        a @ RationalMatrix.identity(3)
