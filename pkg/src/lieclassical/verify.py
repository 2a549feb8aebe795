"""Theorem runners: each builds the relevant algebras and modules, checks
every structural claim, and returns a Report with expected versus computed
evidence for each claim."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .fields import GF, QQ, Field, PrimeField, RationalField
from .forms import (
    BilForm,
    classify,
    diagonalize_symmetric,
    discriminant_is_square,
    standard_symplectic_gram,
)
from .liealg import (
    MatLieAlg,
    StructureConstants,
    bracket,
    derived_series,
    gl_subspace,
    heisenberg,
    is_simple,
    lie_isomorphic_by_structure,
    quotient_algebra,
    scalars_subspace,
    self_adjoint_module,
    skew_adjoint_algebra,
    sl_subspace,
    trace_orthogonal_complement,
    trace_pairing,
)
from .linalg import Mat, Subspace, kernel, matvec, solve
from .repmod import (
    LieModule,
    adjoint_module,
    certify_irreducible,
    composition_series,
    conjugation_modules,
    dual_module,
    first_primes_coprime_to,
    gamma_image,
    heisenberg_poly_module,
    heisenberg_poly_module_on_basis,
    hom_members,
    hom_space,
    invariant_under,
    quotient_lift,
    quotient_module,
    reduce_module_mod_p,
    representation_kernel,
    respects_brackets,
    restrict_module,
    restrict_to_sl,
    spin,
    star_map,
    sym_alt_subspaces,
    tensor_square,
    trivial_actions,
)


@dataclass
class Claim:
    label: str
    paper_ref: str
    expected: object
    computed: object
    passed: bool
    method: str


@dataclass
class Report:
    case: str
    field: Field
    m: int
    claims: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def check(self, label, ref, expected, computed, method="exact"):
        self.claims.append(
            Claim(label, ref, _ser(expected), _ser(computed), expected == computed, method)
        )

    def to_dict(self):
        return {
            "case": self.case,
            "field": {"char": self.field.char, "degree": self.field.degree},
            "m": self.m,
            "claims": [
                {
                    "label": c.label,
                    "paper_ref": c.paper_ref,
                    "expected": c.expected,
                    "computed": c.computed,
                    "pass": c.passed,
                    "method": c.method,
                }
                for c in self.claims
            ],
            "pass": self.passed,
        }


def _ser(x):
    if isinstance(x, Mat):
        return x.to_text()
    if isinstance(x, Subspace):
        return x.basis_matrix().to_text()
    if isinstance(x, (list, tuple)):
        return [_ser(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    return x


# ---------------------------------------------------------------------------
# Shared constructions


def _unvec_rows(space: Subspace, m):
    K = space.field
    return [Mat.unvec(K, list(r), m, m) for r in space.basis]


def struct_of(L: MatLieAlg, basis=None) -> StructureConstants:
    """Structure constants of L on a chosen (or its canonical) matrix basis."""
    K = L.field
    mats = basis if basis is not None else L.basis_mats()
    B = Mat(K, [x.vec() for x in mats]).transpose()
    table = []
    for x in mats:
        row = []
        for y in mats:
            c = solve(B, bracket(x, y).vec())
            if c is None:
                raise ValueError("basis does not span a subalgebra")
            row.append(c)
        table.append(row)
    return StructureConstants(K, [f"e{i}" for i in range(len(mats))], table)


def _block_span(K, m, blocks):
    """Span of m x m matrices assembled from (i, j, mat) block placements."""
    rows = []
    for placements in blocks:
        X = Mat.zeros(K, m, m)
        for i0, j0, piece in placements:
            for i in range(piece.nrows):
                for j in range(piece.ncols):
                    X.rows[i0 + i][j0 + j] = K.add(X.rows[i0 + i][j0 + j], piece.rows[i][j])
        rows.append(X.vec())
    return Subspace.from_rows(K, m * m, rows)


def _sym_units(K, n, with_diag):
    out = []
    for i in range(n):
        if with_diag:
            out.append(Mat.unit(K, n, n, i, i))
        for j in range(i + 1, n):
            out.append(Mat.unit(K, n, n, i, j) + Mat.unit(K, n, n, j, i))
    return out


def _symplectic_block_space(K, n, b_diag, c_diag, traceless_a):
    """span of [[A, B], [C, A']] with B, C symmetric (optionally zero-diagonal)
    and A optionally traceless; the char-2 symplectic algebra shapes."""
    m = 2 * n
    blocks = []
    for i in range(n):
        for j in range(n):
            a = Mat.unit(K, n, n, i, j)
            if traceless_a and i == j:
                continue
            blocks.append([(0, 0, a), (n, n, a.transpose())])
    if traceless_a:
        for i in range(n - 1):
            a = Mat.unit(K, n, n, i, i) + Mat.unit(K, n, n, n - 1, n - 1)
            blocks.append([(0, 0, a), (n, n, a)])
    for b in _sym_units(K, n, b_diag):
        blocks.append([(0, n, b)])
    for c in _sym_units(K, n, c_diag):
        blocks.append([(n, 0, c)])
    return _block_span(K, m, blocks)


def _chain_contains(chain, term: Subspace) -> bool:
    return any(t == term for t in chain)


def _fill_between(lo: Subspace, hi: Subspace):
    """Intermediate subspaces refining lo < hi one dimension at a time."""
    K = lo.field
    out = []
    cur = lo
    for v in [list(r) for r in hi.basis]:
        if cur.dim + 1 >= hi.dim:
            break
        if cur.contains_vector(v):
            continue
        cur = Subspace.from_rows(K, lo.ambient, [list(r) for r in cur.basis] + [v])
        out.append(cur)
    return out


def _simple_label(K):
    return "spin certification" if K.order() is not None else "mod-p"


def _is_simple_certified(L: MatLieAlg, primes=None):
    """(simple?, method) with characteristic 0 handled by reduction mod p."""
    K = L.field
    if K.order() is not None:
        return is_simple(L), "spin certification"
    from .repmod import algebra_adjoint_module

    if L.dim <= 1:
        return False, "dimension"
    ad = algebra_adjoint_module(L)
    if primes is None:
        primes = first_primes_coprime_to(2 * L.m, count=2)
    for p in primes:
        red = reduce_module_mod_p(ad, p)
        if certify_irreducible(red).status != "irreducible":
            return False, "mod-p"
    return True, "mod-p"


# ---------------------------------------------------------------------------
# Theorem 1.1: characteristic 2, alternating form


def run_thm_1_1(m, p=2) -> Report:
    if p != 2:
        raise ValueError("needs characteristic 2")
    if m < 2 or m % 2:
        raise ValueError("needs even m >= 2")
    K = GF(2)
    rep = Report(f"thm1.1 m={m}", K, m)
    if m == 2:
        return _run_m2_alternating(rep)
    n = m // 2
    J = standard_symplectic_gram(K, m)
    L = skew_adjoint_algebra(J, "L")
    ds = derived_series(L)
    L1, L2 = ds[1], ds[2]
    s = scalars_subspace(K, m)
    sl = sl_subspace(K, m)
    gl = gl_subspace(K, m)
    module = adjoint_module(L, gl)
    four = m % 4 == 0
    x = Mat.from_blocks([[Mat.identity(K, n), Mat.zeros(K, n, n)],
                         [Mat.zeros(K, n, n), Mat.zeros(K, n, n)]])
    U = Subspace.from_rows(K, m * m, [list(r) for r in L.space.basis] + [x.vec()])
    rep.check("[x, L] in L", "Thm 1.1", True,
              all(L.contains(bracket(x, y)) for y in L.basis_mats()))
    canonical = [s, L2.space] if four else [L2.space]
    canonical += [L1.space] + _fill_between(L1.space, L.space) + [L.space]
    if four:
        canonical.append(U)
    canonical.append(sl)
    try:
        cs = composition_series(module, candidate_chain=canonical)
        ok = True
    except ValueError:
        ok = False
    rep.check("canonical chain is a composition series", "Thm 1.1", True, ok,
              "spin certification")
    if not ok:
        return rep
    rep.check("factor count", "Thm 1.1", m + 6 if four else m + 4, cs.n_factors,
              "spin certification")
    nontriv = sorted(d for d, t in zip(cs.factor_dims, cs.factor_trivial) if not t)
    want = m * (m - 1) // 2 - (2 if four else 1)
    rep.check("nontrivial factor dims", "Thm 1.1", [want, want], nontriv,
              "spin certification")
    rep.check("L matrix form", "Thm 1.1(3)", _symplectic_block_space(K, n, True, True, False),
              L.space)
    rep.check("L^(1) matrix form", "Thm 1.1(4)",
              _symplectic_block_space(K, n, False, False, False), L1.space)
    rep.check("L^(2) matrix form", "Thm 1.1(5)",
              _symplectic_block_space(K, n, False, False, True), L2.space)
    ts = tensor_square(classify(J), L)
    rep.check("Gamma(S^2) = L", "Thm 7.5", L.space, gamma_image(ts, ts.sym))
    rep.check("Gamma(Lambda^2) = L^(1)", "Thm 7.5", L1.space, gamma_image(ts, ts.alt))
    ker_delta = ts.alt.intersect(kernel(ts.delta))
    rep.check("Gamma(ker Delta) = L^(2)", "Thm 7.5", L2.space,
              gamma_image(ts, ker_delta))
    rep.check("s in L^(2) iff 4|m", "Thm 7.5(6)", four, L2.space.contains(s))
    # h(n) quotient on the canonical representatives
    a = _lift_block(K, n, Mat.unit(K, n, n, 0, 0), "diag")
    bs = [_lift_block(K, n, Mat.unit(K, n, n, i, i), "upper") for i in range(n)]
    cs_reps = [_lift_block(K, n, Mat.unit(K, n, n, i, i), "lower") for i in range(n)]
    Q, _ = quotient_algebra(L, L2.space, reps=bs + cs_reps + [a])
    eye = Mat.identity(K, 2 * n + 1)
    rep.check("L/L^(2) = h(n)", "Thm 1.1(6)", True,
              lie_isomorphic_by_structure(heisenberg(K, n), Q, eye))
    # simplicity of the nontrivial factor algebra
    if four:
        alg = _quotient_as_struct(L2, s)
        simple = is_simple(alg)
        rep.check("L^(2)/s simple iff m>4", "Thm 12.1", m > 4, simple,
                  "spin certification")
    else:
        simple = is_simple(L2)
        rep.check("L^(2) simple", "Thm 12.1", True, simple, "spin certification")
    return rep


def _lift_block(K, n, piece, where):
    Z = Mat.zeros(K, n, n)
    if where == "diag":
        return Mat.from_blocks([[piece, Z], [Z, piece]])
    if where == "upper":
        return Mat.from_blocks([[Z, piece], [Z, Z]])
    return Mat.from_blocks([[Z, Z], [piece, Z]])


def _quotient_as_struct(L: MatLieAlg, ideal: Subspace) -> StructureConstants:
    Q, _ = quotient_algebra(L, ideal)
    return Q


def _run_m2_alternating(rep: Report) -> Report:
    K = rep.field
    J = standard_symplectic_gram(K, 2)
    L = skew_adjoint_algebra(J, "L")
    module = adjoint_module(L, gl_subspace(K, 2))
    cs = composition_series(module)
    rep.check("4 trivial factors", "Note 12.5", ([1, 1, 1, 1], [True] * 4),
              (cs.factor_dims, cs.factor_trivial), "spin certification")
    e = Mat.unit(K, 2, 2, 0, 1)
    f = Mat.unit(K, 2, 2, 1, 0)
    eye = Mat.identity(K, 2)
    S = struct_of(L, [e, f, eye])
    rep.check("L = h(1)", "Note 12.5", True,
              lie_isomorphic_by_structure(heisenberg(K, 1), S, Mat.identity(K, 3)))
    poly = heisenberg_poly_module(K, 1, K.one())
    rep.check("natural module is F[X]/(X^2)", "Note 12.5",
              [a.to_text() for _, a in poly.generators],
              [a.to_text() for a in (e, f, eye)])
    return rep


# ---------------------------------------------------------------------------
# Theorem 1.2: characteristic 2, symmetric non-alternating diagonal form


def run_thm_1_2(m, diag=None, p=2) -> Report:
    if p != 2:
        raise ValueError("needs characteristic 2")
    K = GF(2)
    if diag is None:
        diag = [K.one()] * m
    if len(diag) != m or any(K.is_zero(d) for d in diag):
        raise ValueError("needs m nonzero diagonal entries")
    A = Mat.diag(K, list(diag))
    form = classify(A)
    if form.alternating:
        raise ValueError("form must not be alternating")
    rep = Report(f"thm1.2 m={m}", K, m)
    L = skew_adjoint_algebra(A, "L")
    ds = derived_series(L)
    L1 = ds[1]
    gl = gl_subspace(K, m)
    module = adjoint_module(L, gl)
    canonical = [L1.space] + _fill_between(L1.space, L.space) + [L.space]
    try:
        cs = composition_series(module, candidate_chain=canonical)
        ok = True
    except ValueError:
        ok = False
    rep.check("canonical chain is a composition series", "Thm 1.2", True, ok,
              "spin certification")
    if not ok:
        return rep
    rep.check("factor count", "Thm 1.2", m + 2, cs.n_factors, "spin certification")
    rep.check("L matrix form", "Thm 1.2", _diag_form_space(K, m, diag, False), L.space)
    rep.check("L^(1) matrix form", "Thm 1.2", _diag_form_space(K, m, diag, True), L1.space)
    if m == 3 or m >= 5:
        rep.check("L^(1) simple", "Thm 8.1", True, is_simple(L1), "spin certification")
        rep.check("dim L^(1)", "Thm 8.1", m * (m - 1) // 2, L1.dim)
    # gl/L = L^(1) as L-modules, witnessed by an invertible intertwiner
    quo = quotient_module(module, L.space)
    sub = restrict_module(module, L1.space)
    H = hom_space(quo, sub)
    inv = _invertible_member(H, sub.dim, quo.dim)
    rep.check("gl/L = L^(1) (hom witness)", "Thm 1.2(4)", True, inv is not None)
    # m-1 free insertions between L^(1) and L: trivial action on L/L^(1)
    between = restrict_module(module, L.space)
    l1_in = Subspace.from_rows(K, L.dim, [L.space.coords(list(r)) for r in L1.space.basis])
    rep.check("L/L^(1) trivial action", "Thm 1.2", True,
              trivial_actions(quotient_module(between, l1_in)))
    rng = random.Random(7)
    mid_rows = [list(r) for r in L1.space.basis]
    extra = [list(r) for r in L.space.basis if not L1.space.contains_vector(list(r))]
    rng.shuffle(extra)
    mid = Subspace.from_rows(K, m * m, mid_rows + extra[: max(1, len(extra) // 2)])
    rep.check("random insertion invariant", "Thm 1.2", True,
              all(invariant_under(mid, a) for _, a in module.generators))
    if m == 4:
        square = discriminant_is_square(form)
        simple = is_simple(L1)
        rep.check("m=4 dichotomy", "Prop 10.2", not square, simple, "spin certification")
        if square:
            _check_prop_10_2(rep, K, L1)
    if m == 2:
        # the 1-dimensional exterior square carries the trace character, so
        # every x acts as tr(x) times the identity (it is not the zero action:
        # L is solvable of class 2 but not nilpotent)
        ts = tensor_square(form, L)
        lam = restrict_module(ts.module, ts.alt)
        by_trace = all(a == Mat.identity(K, lam.dim).scale(x.trace())
                       for (_, a), x in zip(lam.generators, L.basis_mats()))
        rep.check("Lambda^2 action is the trace character (m=2)", "Thm 1.2(4)",
                  True, by_trace)
    return rep


def _diag_form_space(K, m, diag, derived_part):
    """{A : d_i A_ij = d_j A_ji}, with zero diagonal for the derived algebra."""
    rows = []
    for i in range(m):
        if not derived_part:
            rows.append(Mat.unit(K, m, m, i, i).vec())
        for j in range(i + 1, m):
            X = Mat.unit(K, m, m, i, j).scale(K.mul(diag[j], K.inv(diag[i])))
            X = X + Mat.unit(K, m, m, j, i)
            rows.append(X.vec())
    return Subspace.from_rows(K, m * m, rows)


def _invertible_member(H: Subspace, r, c):
    """An invertible r x c matrix in the span H of vectorized intertwiners."""
    if r != c or H.dim == 0:
        return None
    K = H.field
    mats = [Mat.unvec(K, list(v), r, c) for v in H.basis]
    for T in mats:
        if not K.is_zero(T.det()):
            return T
    rng = random.Random(3)
    for _ in range(50):
        T = Mat.zeros(K, r, c)
        for x in mats:
            cf = K.random(rng)
            T = T + x.scale(cf)
        if not K.is_zero(T.det()):
            return T
    return None


def _check_prop_10_2(rep: Report, K, L1: MatLieAlg):
    m = 4

    def sym(i, j):
        return Mat.unit(K, m, m, i, j) + Mat.unit(K, m, m, j, i)

    f1, f2, f3 = sym(0, 1), sym(1, 2), sym(0, 2)
    h1, h2, h3 = sym(2, 3), sym(0, 3), sym(3, 1)
    gs = [f1 + h1, f2 + h2, f3 + h3]
    S = Subspace.from_rows(K, 16, [f.vec() for f in (f1, f2, f3)])
    R = Subspace.from_rows(K, 16, [g.vec() for g in gs])
    rep.check("L^(1) = S + R", "Prop 10.2", L1.space, S + R)
    rep.check("R abelian", "Prop 10.2", True,
              all((bracket(x, y)).is_zero()
                  for x in _unvec_rows(R, m) for y in _unvec_rows(R, m)))
    rep.check("R ideal of L^(1)", "Prop 10.2", True,
              all(R.contains_vector(bracket(x, y).vec())
                  for x in L1.basis_mats() for y in _unvec_rows(R, m)))
    rep.check("S closed under brackets", "Prop 10.2", True,
              all(S.contains_vector(bracket(x, y).vec())
                  for x in _unvec_rows(S, m) for y in _unvec_rows(S, m)))
    rep.check("S simple", "Prop 10.2", True,
              is_simple(MatLieAlg(m, S)), "spin certification")
    # the unique proper nonzero L^(1)-submodule of L^(1) is the abelian
    # ideal R (not S: [f1, g2] lands outside S)
    ad = adjoint_module(L1, L1.space)
    r_in = Subspace.from_rows(K, L1.dim,
                              [L1.space.coords(list(r)) for r in R.basis])
    subs = _all_submodules(ad)
    rep.check("R is the only proper nonzero submodule", "Prop 10.2",
              [r_in], [u for u in subs if 0 < u.dim < ad.dim], "line enumeration")
    # extending the action to all of L makes L^(1) irreducible:
    # [e11, g1] = f1 leaves R
    e11 = Mat.unit(K, m, m, 0, 0)
    rep.check("[e11, g1] = f1 outside R", "Prop 10.2",
              (True, False),
              (bracket(e11, gs[0]) == f1, R.contains_vector(f1.vec())))
    L = skew_adjoint_algebra(Mat.identity(K, m))
    big = restrict_module(adjoint_module(MatLieAlg(m, L.space), gl_subspace(K, m)),
                          L1.space)
    res = certify_irreducible(big)
    rep.check("L^(1) irreducible as L-module", "Prop 10.2", "irreducible",
              res.status, res.method)


def _all_submodules(M: LieModule):
    """All submodules, as sums of the cyclic ones (small modules only)."""
    from .repmod import _line_reps

    K = M.field
    found = {}
    for v in _line_reps(K, M.dim):
        S = spin(M, [v])
        found[S.basis] = S
    work = list(found.values())
    while work:
        cur = work.pop()
        for other in list(found.values()):
            s = cur + other
            if s.basis not in found:
                found[s.basis] = s
                work.append(s)
    zero = Subspace.zero(K, M.dim)
    found[zero.basis] = zero
    return sorted(found.values(), key=lambda u: (u.dim, u.basis if u.dim else ()))


# ---------------------------------------------------------------------------
# Theorems 1.3 / 1.4: characteristic != 2


def run_thm_1_3(m, K) -> Report:
    if K.char == 2:
        raise ValueError("needs characteristic != 2")
    if m < 2 or m % 2:
        raise ValueError("needs even m")
    J = standard_symplectic_gram(K, m)
    rep = Report(f"thm1.3 m={m} field={K.token}", K, m)
    _run_char_not2(rep, classify(J), symplectic=True)
    return rep


def run_thm_1_4(m, K, diag=None) -> Report:
    if K.char == 2:
        raise ValueError("needs characteristic != 2")
    if diag is None:
        diag = [K.one()] * m
    if len(diag) != m or any(K.is_zero(d) for d in diag):
        raise ValueError("needs m nonzero diagonal entries")
    A = Mat.diag(K, list(diag))
    rep = Report(f"thm1.4 m={m} field={K.token}", K, m)
    # the series dichotomy needs m >= 4; smaller m have exceptional lattices
    # covered by the small-case runners
    _run_char_not2(rep, classify(A), symplectic=False, skip_series=(m < 4))
    if m == 4:
        square = discriminant_is_square(classify(A))
        L = skew_adjoint_algebra(A)
        simple, method = _is_simple_certified(L)
        rep.check("m=4 dichotomy", "Note 9.1", not square, simple, method)
    return rep


def _run_char_not2(rep: Report, form: BilForm, symplectic: bool, skip_series=False):
    K = form.field
    m = form.m
    A = form.gram
    ref = "Thm 1.3" if symplectic else "Thm 1.4"
    L = skew_adjoint_algebra(A, "L")
    M = self_adjoint_module(A)
    gl = gl_subspace(K, m)
    sl = sl_subspace(K, m)
    s = scalars_subspace(K, m)
    Msl = M.intersect(sl)
    dim_l = m * (m + 1) // 2 if symplectic else m * (m - 1) // 2
    dim_m = m * (m - 1) // 2 if symplectic else m * (m + 1) // 2
    rep.check("dim L", ref, dim_l, L.dim)
    rep.check("dim M", ref, dim_m, M.dim)
    rep.check("M = L-perp", ref, M, trace_orthogonal_complement(L.space, gl))
    if symplectic:
        rep.check("M matrix form", "Thm 1.3", _m_of_j_space(K, m), M)
    ts = tensor_square(form, L)
    gamma_alt = gamma_image(ts, ts.alt)
    gamma_sym = gamma_image(ts, ts.sym)
    if symplectic:
        rep.check("Gamma(Lambda^2) = M", "Prop 7.1", M, gamma_alt)
        rep.check("Gamma(S^2) = L", "Prop 7.1", L.space, gamma_sym)
        contraction_side = ts.alt
    else:
        rep.check("Gamma(Lambda^2) = L", "Prop 7.1", L.space, gamma_alt)
        rep.check("Gamma(S^2) = M", "Prop 7.1", M, gamma_sym)
        contraction_side = ts.sym
    ker_omega = contraction_side.intersect(kernel(ts.omega))
    rep.check("Gamma(ker Omega) = M cap sl", "Cor 7.1", Msl,
              gamma_image(ts, ker_omega))
    # the composition series, per the l | m dichotomy
    div = K.char != 0 and m % K.char == 0
    module = adjoint_module(L, gl)
    if skip_series:
        if m == 3 or m >= 5:
            simple, smethod = _is_simple_certified(L)
            rep.check("L simple", "Prop 9.1", True, simple, smethod)
        return
    orth_m4_split = (not symplectic and m == 4
                     and discriminant_is_square(form))
    if symplectic and m == 2:
        expected_chain = [M]
        expected_dims = [1, 3]
        rep.check("M = s (m=2)", "Thm 1.3", s, M)
    elif div:
        expected_chain = [s, Msl, M]
        expected_dims = [1, dim_m - 2, 1, m * m - dim_m]
    else:
        expected_chain = [Msl, M]
        expected_dims = [dim_m - 1, 1, m * m - dim_m]
    if orth_m4_split:
        # square discriminant: so(4) is a sum of two 3-dimensional ideals,
        # so the top factor gl/M = L refines into two 3-dimensional pieces
        ideal = _so4_ideal(L)
        rep.check("gl/M splits (m=4, square discriminant)", "Note 9.1",
                  3, ideal.dim)
        expected_chain = expected_chain + [M + ideal]
        expected_dims = expected_dims[:-1] + [3, 3]
    if K.order() is not None:
        cs = composition_series(module, candidate_chain=expected_chain)
        method = "spin certification"
        free = composition_series(module)
        rep.check("Jordan-Holder factor multiset", ref, sorted(expected_dims),
                  sorted(free.factor_dims), method)
    else:
        primes = first_primes_coprime_to(2 * m, count=2)
        cs = composition_series(module, candidate_chain=expected_chain, mod_p_primes=primes)
        method = "mod-p"
    rep.check("factor dims", ref, expected_dims, cs.factor_dims, method)
    if not (symplectic and m == 2):
        rep.check("M/(M cap sl) trivial", ref, True,
                  trivial_actions(_factor(module, Msl, M)))
    # L = gl/M as L-modules: projecting coset representatives onto L along
    # M is an explicit intertwiner (cheaper than solving the full Hom system)
    quo = quotient_module(module, M)
    adL = restrict_module(module, L.space)
    T = _projection_intertwiner(quo, L.space, M)
    ok = not K.is_zero(T.det()) and all(
        T @ aq == al @ T
        for (_, aq), (_, al) in zip(quo.generators, adL.generators)
    )
    rep.check("gl/M = L (hom witness)", ref, True, ok)
    # simplicity of L
    if symplectic or m == 3 or m >= 5:
        simple, smethod = _is_simple_certified(L)
        rep.check("L simple", "Thm 11.1" if symplectic else "Prop 9.1", True,
                  simple, smethod)


def _projection_intertwiner(quo, Lspace: Subspace, M: Subspace) -> Mat:
    """Matrix of gl/M -> L sending a coset to its L-component along M."""
    K = Lspace.field
    n = Lspace.ambient
    B = Mat(K, [list(r) for r in Lspace.basis] + [list(r) for r in M.basis])
    Binv = B.transpose().inv()
    cols = []
    for j in range(quo.dim):
        e = [K.zero()] * quo.dim
        e[j] = K.one()
        c = matvec(Binv, quotient_lift(M, e))
        cols.append(c[: Lspace.dim])
    return Mat(K, [[cols[j][i] for j in range(quo.dim)] for i in range(Lspace.dim)])


def _so4_ideal(L: MatLieAlg) -> Subspace:
    """A proper nonzero ideal of so(4) with square discriminant."""
    K = L.field
    ad = adjoint_module(L, L.space)
    if K.order() is not None:
        res = certify_irreducible(ad)
        if res.status != "reducible":
            raise ValueError("expected a reducible adjoint module")
        W = res.witness
    else:
        # over Q the two ideals are spanned by E_ij +/- E_kl pairs
        W = None
        mats = L.basis_mats()
        for i, x in enumerate(mats):
            for y in mats[i + 1:]:
                for z in (x + y, x - y):
                    span = spin(ad, [L.space.coords(z.vec())])
                    if 0 < span.dim < L.dim:
                        W = span
                        break
                if W is not None:
                    break
            if W is not None:
                break
        if W is None:
            raise ValueError("no proper ideal found")
    rows = [L.space.lift(list(r)) for r in W.basis]
    return Subspace.from_rows(K, L.m * L.m, rows)


def _m_of_j_space(K, m):
    """M(J) = {[[P, Q], [R, P']] : Q, R skew-symmetric}."""
    n = m // 2
    blocks = []
    for i in range(n):
        for j in range(n):
            a = Mat.unit(K, n, n, i, j)
            blocks.append([(0, 0, a), (n, n, a.transpose())])
    for i in range(n):
        for j in range(i + 1, n):
            sk = Mat.unit(K, n, n, i, j) - Mat.unit(K, n, n, j, i)
            blocks.append([(0, n, sk)])
            blocks.append([(n, 0, sk)])
    return _block_span(K, m, blocks)


def _factor(module: LieModule, lo: Subspace, hi: Subspace) -> LieModule:
    sub = restrict_module(module, hi)
    K = module.field
    lo_in = Subspace.from_rows(K, sub.dim, [hi.coords(list(r)) for r in lo.basis])
    return quotient_module(sub, lo_in)


# ---------------------------------------------------------------------------
# Small-case lattices (Notes 9.2 and 9.3)


def run_note_9_2() -> Report:
    K = GF(3, 2)
    i = (0, 1)  # i^2 = -1 in GF(9)
    rep = Report("note9.2", K, 3)
    A = Mat.identity(K, 3)
    L = skew_adjoint_algebra(A)
    M = self_adjoint_module(A)
    Msl = M.intersect(sl_subspace(K, 3))
    rep.check("dim M cap sl", "Note 9.2", 5, Msl.dim)
    module = adjoint_module(L, Msl)
    eye = Mat.identity(K, 3)

    def mk(rows):
        return Mat(K, [[_gf9(K, x, i) for x in row] for row in rows])

    x1 = mk([[0, 0, 0], [0, 1, "i"], [0, "i", -1]])
    x2 = mk([[0, "i", -1], ["i", 0, 0], [-1, 0, 0]])
    y1 = mk([[0, 0, 0], [0, -1, "i"], [0, "i", 1]])
    y2 = mk([[0, "i", 1], ["i", 0, 0], [1, 0, 0]])
    X = _span_in(Msl, [eye, x1, x2])
    Y = _span_in(Msl, [eye, y1, y2])
    s_in = _span_in(Msl, [eye])
    rep.check("X cap Y = s", "Note 9.2", s_in, X.intersect(Y))
    subs = _all_submodules(module)
    proper = [u for u in subs if 0 < u.dim < module.dim]
    rep.check("s, X, Y are submodules", "Note 9.2", True,
              all(u in proper for u in (s_in, X, Y)), "line enumeration")
    # the stated trio is not the whole lattice: M0/s = X/s + Y/s with
    # X/s isomorphic to Y/s, so each of the q+1 = 10 lines of the
    # projective line over GF(9) yields an intermediate submodule
    rep.check("11 proper nonzero submodules (s plus 10 graphs)", "Note 9.2",
              [1] + [3] * 10, [u.dim for u in proper], "line enumeration")
    big = adjoint_module(L, gl_subspace(K, 3))
    s = scalars_subspace(K, 3)

    def in_gl(inner):
        rows = [Msl.lift(list(r)) for r in inner.basis]
        return Subspace.from_rows(K, 9, rows)

    Xq = _factor(big, s, in_gl(X))
    Yq = _factor(big, s, in_gl(Y))
    rep.check("X/s isomorphic to Y/s", "Note 9.2", 1, hom_space(Xq, Yq).dim)
    return rep


def _gf9(K, x, i):
    if x == "i":
        return i
    return K.of(x)


def _span_in(amb: Subspace, mats):
    K = amb.field
    coords = [amb.coords(x.vec()) for x in mats]
    return Subspace.from_rows(K, amb.dim, coords)


def run_note_9_3() -> Report:
    K = GF(5)
    i = 2  # 2^2 = -1 mod 5
    rep = Report("note9.3", K, 2)
    A = Mat.identity(K, 2)
    L = skew_adjoint_algebra(A)
    M = self_adjoint_module(A)
    Msl = M.intersect(sl_subspace(K, 2))
    rep.check("dim M cap sl", "Note 9.3", 2, Msl.dim)
    module = adjoint_module(L, Msl)
    x = Mat(K, [[1, i], [i, K.neg(1)]])
    y = Mat(K, [[K.neg(1), i], [i, 1]])
    Fx = _span_in(Msl, [x])
    Fy = _span_in(Msl, [y])
    subs = _all_submodules(module)
    proper = [u for u in subs if 0 < u.dim < module.dim]
    rep.check("proper nonzero submodules are Fx, Fy", "Note 9.3",
              sorted([Fx, Fy], key=lambda u: (u.dim, u.basis)), proper,
              "line enumeration")
    return rep


# ---------------------------------------------------------------------------
# sl(m) series (Thm 4.1)


def run_sl_series(m, K) -> Report:
    if (m, K.char) == (2, 2):
        raise ValueError("the case m=2 in characteristic 2 is excluded")
    rep = Report(f"sl-series m={m} field={K.token}", K, m)
    sl = sl_subspace(K, m)
    s = scalars_subspace(K, m)
    gl = gl_subspace(K, m)
    L = MatLieAlg(m, sl, "sl")
    module = adjoint_module(L, gl)
    div = K.char != 0 and m % K.char == 0
    expected_chain = [s, sl] if div else [sl]
    expected_dims = [1, m * m - 2, 1] if div else [m * m - 1, 1]
    if K.order() is not None:
        cs = composition_series(module, candidate_chain=expected_chain)
        method = "spin certification"
        free = composition_series(module)
        rep.check("Jordan-Holder factor multiset", "Thm 4.1", sorted(expected_dims),
                  sorted(free.factor_dims), method)
    else:
        primes = first_primes_coprime_to(2 * m, count=2)
        cs = composition_series(module, candidate_chain=expected_chain, mod_p_primes=primes)
        method = "mod-p"
        simple, smethod = _is_simple_certified(L, primes)
        rep.check("sl simple", "Thm 4.1", True, simple, smethod)
    rep.check("factor dims", "Thm 4.1", expected_dims, cs.factor_dims, method)
    # forced terms: the fixed vectors are exactly s, and s sits in sl iff l | m
    fixed = _fixed_vectors(module)
    rep.check("fixed vectors = s", "Thm 4.1", s, fixed)
    rep.check("s in sl iff l|m", "Thm 4.1", div, sl.contains(s))
    if not div:
        rep.check("gl = s + sl", "Thm 4.1", (m * m, 0),
                  ((s + sl).dim, s.intersect(sl).dim))
    return rep


def _fixed_vectors(module: LieModule) -> Subspace:
    K = module.field
    rows = []
    for _, a in module.generators:
        rows.extend(a.rows)
    return kernel(Mat(K, rows))


# ---------------------------------------------------------------------------
# sp(2n) inside an orthogonal algebra (Thm 3.1)


def run_sp_so_embedding(n, K) -> Report:
    if n < 2:
        raise ValueError("needs n >= 2")
    if K.char != 0 and (2 * n) % K.char == 0:
        raise ValueError("needs characteristic not dividing 2n")
    m = 2 * n
    rep = Report(f"sp-so n={n} field={K.token}", K, m)
    J = standard_symplectic_gram(K, m)
    L = skew_adjoint_algebra(J, "sp")
    M = self_adjoint_module(J)
    sl = sl_subspace(K, m)
    s = scalars_subspace(K, m)
    W = M.intersect(sl)
    d = 2 * n * n - n - 1
    rep.check("dim M cap sl", "Thm 3.1", d, W.dim)
    # orthogonal decomposition gl = L perp (M cap sl) perp s
    pieces = [L.space, W, s]
    total = pieces[0]
    for x in pieces[1:]:
        total = total + x
    orth = all(
        K.is_zero(trace_pairing(xm, ym))
        for a in range(3)
        for b in range(a + 1, 3)
        for xm in _unvec_rows(pieces[a], m)
        for ym in _unvec_rows(pieces[b], m)
    )
    rep.check("gl = L perp (M cap sl) perp s", "Thm 3.1", (m * m, True),
              (total.dim, orth))
    module = adjoint_module(L, W)
    rep.check("action faithful", "Thm 3.1", 0, _action_kernel_dim(module, L.dim))
    wm = _unvec_rows(W, m)
    G = Mat(K, [[trace_pairing(x, y) for y in wm] for x in wm])
    gform = classify(G)
    rep.check("G symmetric nondegenerate non-alternating", "Thm 3.1",
              (True, True, False),
              (gform.symmetric, gform.nondegenerate, gform.alternating))
    LG = skew_adjoint_algebra(G)
    in_lg = all(LG.contains(a) for _, a in module.generators)
    rep.check("image inside L(G)", "Thm 3.1", True, in_lg)
    rep.check("dim L(G)", "Thm 3.1", d * (d - 1) // 2, LG.dim)
    if n == 2:
        image = Subspace.from_rows(K, d * d, [a.vec() for _, a in module.generators])
        rep.check("image = L(G)", "Thm 3.1", LG.space, image)
        rep.check("dim sp(4) = dim L(G) = 10", "Thm 3.1", (10, 10), (L.dim, LG.dim))
    _square_upgrade(rep, "Thm 3.1", G)
    return rep


def _action_kernel_dim(module: LieModule, dim_l):
    K = module.field
    cols = [a.vec() for _, a in module.generators]
    stacked = Mat(K, [[cols[i][k] for i in range(dim_l)] for k in range(len(cols[0]))])
    return kernel(stacked).dim


def _field_sqrt(K, a):
    if K.is_zero(a):
        return K.zero()
    if K.order() is not None:
        for t in K.elements():
            if K.mul(t, t) == a:
                return t
        return None
    fr = Fraction(a)
    rn = _int_sqrt(fr.numerator)
    rd = _int_sqrt(fr.denominator)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _int_sqrt(n):
    if n < 0:
        return None
    r = int(n**0.5)
    for t in (r - 1, r, r + 1):
        if t >= 0 and t * t == n:
            return t
    return None


def _square_upgrade(rep: Report, ref, G: Mat):
    """Report congruence of G to the identity when the diagonal is all squares."""
    K = G.field
    res = diagonalize_symmetric(G)
    roots = [_field_sqrt(K, res.normal_form.rows[i][i]) for i in range(G.nrows)]
    all_square = all(r is not None and not K.is_zero(r) for r in roots)
    if all_square:
        S = res.transform @ Mat.diag(K, [K.inv(r) for r in roots])
        rep.check("G congruent to identity", ref, Mat.identity(K, G.nrows),
                  S.transpose() @ G @ S)
    else:
        rep.check("G not congruent to identity over this field", ref, False, all_square)


# ---------------------------------------------------------------------------
# sl(4) and so(6) (Thm 5.3), with the sl(3) contrast (Thm 5.4)


def run_sl4_so6(K) -> Report:
    if K.char == 2:
        raise ValueError("needs characteristic != 2")
    rep = Report(f"sl4-so6 field={K.token}", K, 4)
    Z, _ = conjugation_modules(4, K)
    Zsl = restrict_to_sl(Z, 4, K)
    _, alt = sym_alt_subspaces(4, K)
    T = restrict_module(Zsl, alt)  # dim 6
    tmats = [Mat.unvec(K, list(r), 4, 4) for r in alt.basis]
    # the star map in the coordinates of T
    phi_rows = [alt.coords(star_map(t).vec()) for t in tmats]
    Phi = Mat(K, phi_rows).transpose()
    Asl = restrict_to_sl(conjugation_modules(4, K)[1], 4, K)
    C = restrict_module(Asl, alt)
    ok = all(Phi @ at == ac @ Phi
             for (_, at), (_, ac) in zip(T.generators, C.generators))
    rep.check("star map equivariant T -> C", "Thm 5.3",
              (True, True), (ok, not K.is_zero(Phi.det())))
    G = Mat(K, [[(star_map(x) @ y).trace() for y in tmats] for x in tmats])
    gf = classify(G)
    rep.check("g symmetric nondegenerate", "Thm 5.3", (True, True),
              (gf.symmetric, gf.nondegenerate))
    invariant = all(
        ((a.transpose() @ G) + (G @ a)).is_zero() for _, a in T.generators
    )
    rep.check("g invariant (image in L(G))", "Thm 5.3", True, invariant)
    LG = skew_adjoint_algebra(G)
    image = Subspace.from_rows(K, 36, [a.vec() for _, a in T.generators])
    rep.check("dim sl(4) = dim L(G) = 15", "Thm 5.3", (15, 15),
              (image.dim, LG.dim))
    rep.check("image = L(G)", "Thm 5.3", LG.space, image)
    _square_upgrade(rep, "Thm 5.3", G)
    # contrast: over sl(3) the exterior square is not self-dual
    Z3sl = restrict_to_sl(conjugation_modules(3, K)[0], 3, K)
    _, alt3 = sym_alt_subspaces(3, K)
    T3 = restrict_module(Z3sl, alt3)
    rep.check("Hom_{sl(3)}(T, T*) = 0", "Thm 5.4", 0,
              hom_space(T3, dual_module(T3)).dim)
    return rep


# ---------------------------------------------------------------------------
# Irreducibility of the block modules (Thms 5.5 and 5.6)


def run_block_irreducibles(n, K) -> Report:
    if n < 2:
        raise ValueError("needs n >= 2")
    if K.order() is None:
        raise ValueError("needs a finite field (certification budget)")
    rep = Report(f"blocks n={n} field={K.token}", K, n)
    Z, A = conjugation_modules(n, K)
    Zsl = restrict_to_sl(Z, n, K)
    Asl = restrict_to_sl(A, n, K)
    sym, alt = sym_alt_subspaces(n, K)
    T = restrict_module(Zsl, alt)
    C = restrict_module(Asl, alt)
    for name, mod, ref in (("T", T, "Thm 5.5"), ("C", C, "Thm 5.5")):
        res = certify_irreducible(mod)
        rep.check(f"{name} irreducible", ref, "irreducible", res.status, res.method)
    if n == 2:
        rep.check("T trivial for n=2", "Thm 5.5", (1, True),
                  (T.dim, trivial_actions(T)))
    if K.char != 2:
        S = restrict_module(Zsl, sym)
        B = restrict_module(Asl, sym)
        for name, mod in (("S", S), ("B", B)):
            res = certify_irreducible(mod)
            rep.check(f"{name} irreducible", "Thm 5.6", "irreducible", res.status,
                      res.method)
    return rep


# ---------------------------------------------------------------------------
# Heisenberg modules (Props 12.2 and 12.3)


def run_heisenberg_cases(n, ell, alpha=None) -> Report:
    K = GF(ell)
    if alpha is None:
        alpha = K.one()
    if K.is_zero(alpha):
        raise ValueError("alpha must be nonzero")
    rep = Report(f"heisenberg n={n} l={ell}", K, 2 * n + 1)
    h = heisenberg(K, n)
    V = heisenberg_poly_module(K, n, alpha)
    rep.check("dim = l^n", "Prop 12.3", ell**n, V.dim)
    rep.check("action respects brackets", "Prop 12.3", True, respects_brackets(V, h))
    rep.check("faithful", "Prop 12.3", 0, representation_kernel(V, h).dim)
    res = certify_irreducible(V)
    rep.check("irreducible", "Prop 12.3", "irreducible", res.status, res.method)
    if (n, ell) == (2, 2) and alpha == K.one():
        _check_prop_12_2(rep)
    return rep


def _check_prop_12_2(rep: Report):
    K = GF(2)
    m, n = 4, 2
    J = standard_symplectic_gram(K, m)
    L = skew_adjoint_algebra(J, "L")
    ds = derived_series(L)
    rep.check("derived dims", "Prop 12.2", [10, 6, 5, 1, 0], [a.dim for a in ds])
    L2, L3 = ds[2].space, ds[3].space
    rep.check("L^(3) = s", "Prop 12.2", scalars_subspace(K, m), L3)
    z2 = Mat.zeros(K, 2, 2)
    s12 = Mat.unit(K, 2, 2, 0, 1) + Mat.unit(K, 2, 2, 1, 0)
    x = Mat.from_blocks([[z2, s12], [z2, z2]])
    y = Mat.from_blocks([[z2, z2], [s12, z2]])
    e = Mat.from_blocks([[Mat.unit(K, 2, 2, 0, 1), z2], [z2, Mat.unit(K, 2, 2, 1, 0)]])
    # f has e21 in the top-left block: the diagonal blocks must be mutual
    # transposes for f to lie in L at all, and then [e, f] = I as required
    f = Mat.from_blocks([[Mat.unit(K, 2, 2, 1, 0), z2], [z2, Mat.unit(K, 2, 2, 0, 1)]])
    eye = Mat.identity(K, m)
    rep.check("L^(2) basis", "Prop 12.2",
              Subspace.from_rows(K, 16, [v.vec() for v in (x, y, e, f, eye)]), L2)
    rep.check("[x,y] = [e,f] = z", "Prop 12.2", (eye, eye), (bracket(x, y), bracket(e, f)))
    # U = L^(2)/s with basis e, x, f, y; g(u,v) reads the bracket in s
    ubasis = [e, x, f, y]
    gram = Mat.zeros(K, 4, 4)
    for i2 in range(4):
        for j2 in range(4):
            br = bracket(ubasis[i2], ubasis[j2])
            gram.rows[i2][j2] = K.one() if br == eye else K.zero()
            if not (br == eye or br.is_zero()):
                raise AssertionError("bracket left the scalars")
    rep.check("Gram of g on U is J", "Prop 12.2", standard_symplectic_gram(K, 4), gram)
    # the representation R of L on U; kernel L^(2), image 5-dimensional in L(g)
    u_in_l2 = Subspace.from_rows(K, 16, [v.vec() for v in ubasis] + [eye.vec()])
    coords = _coset_coords_factory(u_in_l2, ubasis, eye)
    a = Mat.from_blocks([[Mat.unit(K, 2, 2, 0, 0), z2], [z2, Mat.unit(K, 2, 2, 0, 0)]])
    b1 = Mat.from_blocks([[z2, Mat.unit(K, 2, 2, 0, 0)], [z2, z2]])
    b2 = Mat.from_blocks([[z2, Mat.unit(K, 2, 2, 1, 1)], [z2, z2]])
    c1 = Mat.from_blocks([[z2, z2], [Mat.unit(K, 2, 2, 0, 0), z2]])
    c2 = Mat.from_blocks([[z2, z2], [Mat.unit(K, 2, 2, 1, 1), z2]])

    def R(zmat):
        cols = [coords(bracket(zmat, u)) for u in ubasis]
        return Mat(K, [[cols[j][i] for j in range(4)] for i in range(4)])

    poly = heisenberg_poly_module_on_basis(
        K, n, K.one(), [(0, 1), (0, 0), (1, 0), (1, 1)]
    )
    expected = {lbl: mat for lbl, mat in poly.generators}
    rep.check("R matches the polynomial module", "Prop 12.2",
              [expected[lbl].to_text() for lbl in ("u1", "u2", "v1", "v2", "z")],
              [R(v).to_text() for v in (b1, b2, c1, c2, a)])
    rmats = [R(v) for v in L.basis_mats()]
    stacked = Mat(K, [[rmats[i].vec()[k] for i in range(len(rmats))] for k in range(16)])
    kdim = kernel(stacked).dim
    rep.check("dim ker R = dim L^(2)", "Prop 12.2", L2.dim, kdim)
    image = Subspace.from_rows(K, 16, [rm.vec() for rm in rmats])
    rep.check("R(L) is 5-dimensional", "Prop 12.2", 5, image.dim)
    Lg = skew_adjoint_algebra(standard_symplectic_gram(K, 4))
    rep.check("R(L) inside L(g)", "Prop 12.2", True,
              all(Lg.space.contains_vector(list(r)) for r in image.basis))
    rep.check("R(L) closed under brackets", "Prop 12.2", True,
              MatLieAlg(4, image).is_bracket_closed())
    # U as a quotient by s: check irreducibility of L^(2)/s under L
    mod5 = adjoint_module(L, u_in_l2)
    s_in = Subspace.from_rows(K, 5, [u_in_l2.coords(eye.vec())])
    Umod = quotient_module(mod5, s_in)
    res = certify_irreducible(Umod)
    rep.check("U irreducible", "Prop 12.2", "irreducible", res.status, res.method)


def _coset_coords_factory(span: Subspace, ubasis, eye):
    K = span.field
    B = Mat(K, [v.vec() for v in ubasis] + [eye.vec()]).transpose()

    def coords(mat):
        c = solve(B, mat.vec())
        if c is None:
            raise AssertionError("value left the span of U and s")
        return c[:4]

    return coords


# ---------------------------------------------------------------------------
# Aggregate runner


def run_all(grid=None):
    """Run the whole suite on a desk-scale grid and return the reports."""
    if grid is None:
        grid = default_grid()
    reports = []
    for fn, args in grid:
        try:
            reports.append(fn(*args))
        except Exception as exc:  # collect, do not abort the sweep
            K = QQ
            r = Report(f"{fn.__name__}{args}", K, 0)
            r.check("runner completed", "suite", True, f"error: {exc}")
            reports.append(r)
    reports.sort(key=lambda r: r.case)
    return reports


def default_grid():
    grid = []
    for m in (4, 6, 8, 10):
        grid.append((run_thm_1_1, (m,)))
    grid.append((run_thm_1_1, (2,)))
    for m in (2, 3, 4, 5, 6):
        grid.append((run_thm_1_2, (m,)))
    for K in (GF(3), GF(5), GF(7), QQ):
        for m in (2, 4, 6):
            grid.append((run_thm_1_3, (m, K)))
        for m in (4, 5, 6):
            grid.append((run_thm_1_4, (m, K)))
    grid.append((run_note_9_2, ()))
    grid.append((run_note_9_3, ()))
    for K in (GF(3), GF(5), QQ):
        for m in (2, 3, 4):
            if (m, K.char) == (2, 2):
                continue
            grid.append((run_sl_series, (m, K)))
    grid.append((run_sp_so_embedding, (2, GF(13))))
    grid.append((run_sl4_so6, (GF(7),)))
    grid.append((run_block_irreducibles, (2, GF(5))))
    grid.append((run_block_irreducibles, (3, GF(3))))
    for n, ell in ((1, 2), (1, 3), (2, 2), (2, 3)):
        grid.append((run_heisenberg_cases, (n, ell)))
    return grid
