"""Exact linear algebra: RREF, kernels, Kronecker products, subspaces."""

from __future__ import annotations

import random
from fractions import Fraction

from lieclassical.fields import GF, QQ
from lieclassical.linalg import (
    Echelon,
    EchelonGFp,
    Mat,
    Subspace,
    kernel,
    kron,
    matvec,
    op_matrix,
    rref,
    solve,
)


def rand_mat(K, r, c, rng):
    return Mat(K, [[K.random(rng) for _ in range(c)] for _ in range(r)])


def test_rref_proportional_rows():
    M = Mat.from_int_rows(QQ, [[1, 2], [2, 4]])
    red, rank, pivots = rref(M)
    assert rank == 1
    assert pivots == (0,)
    assert red.rows[0] == [Fraction(1), Fraction(2)]


def test_rref_identity_gf5():
    red, rank, pivots = rref(Mat.identity(GF(5), 3))
    assert rank == 3 and pivots == (0, 1, 2)


def test_rref_permutation_gf2():
    M = Mat.from_int_rows(GF(2), [[0, 1], [1, 0]])
    red, rank, _ = rref(M)
    assert rank == 2
    assert red == Mat.identity(GF(2), 2)


def test_rref_idempotent_and_canonical():
    rng = random.Random(1)
    for K in (QQ, GF(2), GF(5), GF(3, 2)):
        for _ in range(30):
            M = rand_mat(K, 4, 5, rng)
            red, rank, _ = rref(M)
            red2, rank2, _ = rref(red)
            assert red2 == red and rank2 == rank
            # row-equivalent input gives the identical RREF
            perm = Mat(K, [M.rows[i] for i in (2, 0, 3, 1)])
            assert rref(perm)[0] == red


def test_rank_nullity():
    rng = random.Random(2)
    for K in (QQ, GF(3), GF(5, 2)):
        for _ in range(30):
            M = rand_mat(K, 3, 6, rng)
            _, rank, _ = rref(M)
            ker = kernel(M)
            assert rank + ker.dim == 6
            for v in ker.basis:
                assert all(K.is_zero(a) for a in matvec(M, list(v)))


def test_kernel_parity_gf2():
    ker = kernel(Mat.from_int_rows(GF(2), [[1, 1]]))
    assert ker.basis == ((1, 1),)


def test_kernel_identity_is_zero():
    assert kernel(Mat.identity(QQ, 2)).dim == 0


def test_kron_units():
    e11 = Mat.unit(QQ, 2, 2, 0, 0)
    assert kron(e11, Mat.identity(QQ, 2)) == Mat.diag(QQ, [Fraction(1)] * 2 + [Fraction(0)] * 2)
    assert kron(Mat.identity(GF(3), 2), Mat.identity(GF(3), 3)) == Mat.identity(GF(3), 6)


def test_vec_identity_row_major():
    # row-major flattening satisfies vec(A X B) = kron(A, B') vec(X)
    rng = random.Random(3)
    K = GF(7)
    for _ in range(30):
        A, X, B = (rand_mat(K, 2, 2, rng) for _ in range(3))
        lhs = (A @ X @ B).vec()
        rhs = matvec(kron(A, B.transpose()), X.vec())
        assert lhs == rhs


def test_subspace_lattice_basics():
    K = QQ
    e1 = [K.one(), K.zero(), K.zero()]
    e2 = [K.zero(), K.one(), K.zero()]
    U = Subspace.from_rows(K, 3, [e1])
    W = Subspace.from_rows(K, 3, [e2])
    assert (U + W).dim == 2
    assert U.intersect(W).dim == 0
    assert (U + W).contains(U)


def test_subspace_modular_dimension_law():
    rng = random.Random(4)
    K = GF(5)
    for _ in range(40):
        U = Subspace.from_rows(K, 6, [[K.random(rng) for _ in range(6)] for _ in range(3)])
        W = Subspace.from_rows(K, 6, [[K.random(rng) for _ in range(6)] for _ in range(3)])
        assert (U + W).dim + U.intersect(W).dim == U.dim + W.dim
        assert U.intersect(U) == U


def test_subspace_coords_lift_round_trip():
    rng = random.Random(5)
    K = GF(7)
    U = Subspace.from_rows(K, 5, [[K.random(rng) for _ in range(5)] for _ in range(3)])
    for _ in range(20):
        coeffs = [K.random(rng) for _ in range(U.dim)]
        v = U.lift(coeffs)
        assert U.contains_vector(v)
        assert U.lift(U.coords(v)) == v


def test_solve_consistent_and_inconsistent():
    A = Mat.from_int_rows(QQ, [[1, 2], [2, 4]])
    x = solve(A, [Fraction(3), Fraction(6)])
    assert x is not None and matvec(A, x) == [Fraction(3), Fraction(6)]
    assert solve(A, [Fraction(1), Fraction(0)]) is None


def test_op_matrix_transpose_operator():
    K = GF(3)
    T = op_matrix(K, 4, 4, lambda v: Mat.unvec(K, v, 2, 2).transpose().vec())
    for _ in range(5):
        rng = random.Random(6)
        X = rand_mat(K, 2, 2, rng)
        assert matvec(T, X.vec()) == X.transpose().vec()


def test_matrix_text_round_trip():
    rng = random.Random(8)
    for K in (QQ, GF(2), GF(7), GF(3, 2)):
        M = rand_mat(K, 3, 4, rng)
        again = Mat.from_text(M.to_text())
        assert again == M
        assert again.to_text() == M.to_text()


def test_det_inv():
    M = Mat.from_int_rows(QQ, [[2, 1], [1, 1]])
    assert M.det() == Fraction(1)
    assert M @ M.inv() == Mat.identity(QQ, 2)
    K = GF(7)
    N = Mat.from_int_rows(K, [[3, 1], [5, 2]])
    assert N @ N.inv() == Mat.identity(K, 2)


def test_echelon_matches_subspace():
    rng = random.Random(9)
    for K in (QQ, GF(3), GF(5, 2)):
        rows = [[K.random(rng) for _ in range(6)] for _ in range(4)]
        ech = Echelon(K, 6)
        for r in rows:
            ech.add(r)
        assert ech.subspace() == Subspace.from_rows(K, 6, rows)
        for r in rows:
            assert ech.contains(r)


def test_echelon_gfp_matches_generic():
    rng = random.Random(10)
    p = 5
    K = GF(p)
    rows = [[K.random(rng) for _ in range(8)] for _ in range(6)]
    gen = Echelon(K, 8)
    fast = EchelonGFp(p, 8)
    for r in rows:
        assert gen.add(r) == fast.add(r)
    assert gen.subspace() == fast.subspace(K)
