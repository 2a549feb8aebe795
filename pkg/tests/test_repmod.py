"""Spinning, irreducibility certificates, series, Hom spaces, tensor squares."""

from __future__ import annotations

import random
from fractions import Fraction

from lieclassical.fields import GF, QQ
from lieclassical.forms import classify, standard_symplectic_gram
from lieclassical.liealg import (
    MatLieAlg,
    StructureConstants,
    bracket,
    gl_subspace,
    heisenberg,
    is_simple,
    skew_adjoint_algebra,
    sl_subspace,
)
from lieclassical.linalg import Mat, Subspace, matvec
from lieclassical.repmod import (
    LieModule,
    adjoint_module,
    block_duality_check,
    certify_irreducible,
    composition_series,
    dual_module,
    gamma_image,
    heisenberg_poly_module,
    hom_members,
    hom_space,
    invariant_under,
    quotient_module,
    representation_kernel,
    respects_brackets,
    restrict_module,
    spin,
    star_map,
    tensor_square,
    weights,
)


def sl2_natural(K):
    e = Mat.unit(K, 2, 2, 0, 1)
    f = Mat.unit(K, 2, 2, 1, 0)
    h = Mat.diag(K, [K.one(), K.neg(K.one())])
    return LieModule(K, 2, [("e", e), ("f", f), ("h", h)])


def test_spin_full_from_any_seed():
    K = GF(3)
    M = sl2_natural(K)
    assert spin(M, [[K.one(), K.zero()]]).dim == 2
    assert spin(M, [[K.zero(), K.zero()]]).dim == 0


def test_certify_irreducible_natural():
    for K in (GF(2), GF(3), GF(7)):
        res = certify_irreducible(sl2_natural(K))
        assert res.status == "irreducible"


def test_certify_reducible_with_witness():
    K = GF(3)
    e = Mat.unit(K, 2, 2, 0, 1)
    M = LieModule(K, 2, [("e", e)])
    res = certify_irreducible(M)
    assert res.status == "reducible"
    W = res.witness
    assert 0 < W.dim < 2
    for _, a in M.generators:
        assert invariant_under(W, a)


def test_norton_agrees_with_enumeration():
    # same verdicts whether or not the search space fits the enumeration cutoff
    import lieclassical.repmod as rm

    rng = random.Random(30)
    K = GF(3)
    for _ in range(20):
        gens = [
            (f"g{i}", Mat(K, [[K.random(rng) for _ in range(3)] for _ in range(3)]))
            for i in range(2)
        ]
        M = LieModule(K, 3, gens)
        by_enum = rm._certify_by_enumeration(M)
        by_norton = rm._certify_norton(M, seed=1)
        if by_norton is None:
            continue
        assert by_enum.status == by_norton.status


def test_composition_series_gl2_under_sl2():
    K = GF(3)
    L = MatLieAlg(2, sl_subspace(K, 2))
    M = adjoint_module(L, gl_subspace(K, 2))
    cs = composition_series(M)
    assert sorted(cs.factor_dims) == [1, 3]
    assert sorted(zip(cs.factor_dims, cs.factor_trivial)) == [(1, True), (3, False)]


def test_composition_series_gl2_char2():
    # scalars sit inside sl(2) in characteristic 2
    K = GF(2)
    L = MatLieAlg(2, sl_subspace(K, 2))
    M = adjoint_module(L, gl_subspace(K, 2))
    cs = composition_series(M)
    # ad is trivial on every factor here: [e, f] = I is scalar, so the
    # action on sl/scalars vanishes and everything splits into lines
    assert cs.factor_dims == [1, 1, 1, 1]
    assert all(cs.factor_trivial)


def test_composition_series_char0_candidate_chain():
    K = QQ
    L = MatLieAlg(2, sl_subspace(K, 2))
    M = adjoint_module(L, gl_subspace(K, 2))
    cs = composition_series(M, candidate_chain=[sl_subspace(K, 2)], mod_p_primes=(3, 5))
    assert cs.factor_dims == [3, 1]
    assert cs.factor_trivial == [False, True]


def test_restrict_quotient_dims_and_brackets():
    K = GF(5)
    L = MatLieAlg(2, sl_subspace(K, 2))
    M = adjoint_module(L, gl_subspace(K, 2))
    U = sl_subspace(K, 2)
    sub = restrict_module(M, U)
    quo = quotient_module(M, U)
    assert sub.dim == 3 and quo.dim == 1
    table = [
        [L.space.coords(bracket(x, y).vec()) for y in L.basis_mats()]
        for x in L.basis_mats()
    ]
    struct = StructureConstants(K, [f"x{i}" for i in range(3)], table)
    assert respects_brackets(M, struct)
    assert respects_brackets(sub, struct)
    assert respects_brackets(quo, struct)


def test_is_simple_examples():
    assert is_simple(MatLieAlg(2, sl_subspace(GF(3), 2)))
    assert not is_simple(MatLieAlg(2, gl_subspace(GF(3), 2)))
    assert not is_simple(MatLieAlg(2, sl_subspace(GF(2), 2)))
    J = standard_symplectic_gram(GF(3), 4)
    assert is_simple(skew_adjoint_algebra(J))


def test_hom_space_schur_and_duality():
    K = GF(5)
    V = sl2_natural(K)
    end = hom_space(V, V)
    assert end.dim == 1  # Schur: scalars only
    dual = dual_module(V)
    hv = hom_space(V, dual)
    assert hv.dim == 1  # the 2-dimensional module is self-dual
    T = hom_members(V, dual, hv)[0]
    for (_, a), (_, ad) in zip(V.generators, dual.generators):
        assert T @ a == ad @ T


def test_weights_sl2_natural():
    V = sl2_natural(QQ)
    h = Mat.diag(QQ, [Fraction(1), Fraction(-1)])
    table = weights(V, [("h", h)]).entries
    assert sorted(table) == [((Fraction(-1),), 1), ((Fraction(1),), 1)]


def test_weights_adjoint_sl2():
    K = QQ
    L = MatLieAlg(2, sl_subspace(K, 2))
    M = adjoint_module(L, L.space)
    # find the coordinate matrix of ad(h) inside the module generators
    hmat = None
    for (_, a), x in zip(M.generators, L.basis_mats()):
        if x == Mat.diag(K, [Fraction(1), Fraction(-1)]):
            hmat = a
    # basis of sl(2) from RREF need not contain h exactly; build ad(h) directly
    if hmat is None:
        h = Mat.diag(K, [Fraction(1), Fraction(-1)])
        cols = [L.space.coords(bracket(h, y).vec()) for y in L.basis_mats()]
        hmat = Mat(K, [[cols[j][i] for j in range(3)] for i in range(3)])
    table = weights(M, [("h", hmat)]).entries
    assert sorted(table) == [
        ((Fraction(-2),), 1),
        ((Fraction(0),), 1),
        ((Fraction(2),), 1),
    ]


def test_tensor_square_equivariance():
    rng = random.Random(31)
    for K in (GF(3), GF(2)):
        J = standard_symplectic_gram(K, 4)
        L = skew_adjoint_algebra(J)
        ts = tensor_square(classify(J), L)
        mats = L.basis_mats()
        for (_, act), x in zip(ts.module.generators, mats):
            for _ in range(3):
                t = [K.random(rng) for _ in range(16)]
                lhs = matvec(ts.gamma, matvec(act, t))
                gt = Mat.unvec(K, matvec(ts.gamma, t), 4, 4)
                rhs = bracket(x, gt).vec()
                assert lhs == rhs


def test_tensor_square_gamma_images_skew_odd_char():
    from lieclassical.liealg import self_adjoint_module

    K = GF(5)
    J = standard_symplectic_gram(K, 4)
    L = skew_adjoint_algebra(J)
    ts = tensor_square(classify(J), L)
    assert gamma_image(ts, ts.alt) == self_adjoint_module(J)
    assert gamma_image(ts, ts.sym) == L.space


def test_tensor_square_delta_char2():
    K = GF(2)
    J = standard_symplectic_gram(K, 4)
    L = skew_adjoint_algebra(J)
    ts = tensor_square(classify(J), L)
    assert ts.delta is not None
    # delta reads off the form: on v (x) w + w (x) v it gives f(v, w)
    t = Mat.zeros(K, 4, 4)
    t.rows[0][2] = K.one()
    t.rows[2][0] = K.one()
    assert matvec(ts.delta, t.vec()) == [K.one()]


def test_star_map_example():
    K = GF(5)
    s = Mat.unit(K, 4, 4, 0, 1) - Mat.unit(K, 4, 4, 1, 0)
    out = star_map(s)
    assert out == Mat.unit(K, 4, 4, 2, 3) - Mat.unit(K, 4, 4, 3, 2)
    assert star_map(out) == s


def test_block_duality():
    assert block_duality_check(2, 3, GF(3))
    assert block_duality_check(1, 2, QQ)
    assert block_duality_check(2, 2, GF(5))


def test_heisenberg_poly_module():
    for n, p in ((1, 2), (1, 3), (2, 2)):
        K = GF(p)
        h = heisenberg(K, n)
        V = heisenberg_poly_module(K, n, K.one())
        assert V.dim == p**n
        assert respects_brackets(V, h)
        assert representation_kernel(V, h).dim == 0  # faithful
        assert certify_irreducible(V).status == "irreducible"
