"""Matrix Lie algebras inside gl(m) and a few abstract companions.

Elements of algebras and modules are stored vectorized (row-major, length
m*m), so all structural computation reduces to exact subspace operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fields import Field
from .linalg import Mat, Subspace, kernel, op_matrix, solve


def bracket(X: Mat, Y: Mat) -> Mat:
    return X @ Y - Y @ X


def gl_subspace(K: Field, m: int) -> Subspace:
    return Subspace.full(K, m * m)


def sl_subspace(K: Field, m: int) -> Subspace:
    tr = Mat(K, [Mat.identity(K, m).vec()])
    return kernel(tr)


def scalars_subspace(K: Field, m: int) -> Subspace:
    return Subspace.from_rows(K, m * m, [Mat.identity(K, m).vec()])


@dataclass(frozen=True)
class MatLieAlg:
    """A Lie subalgebra of gl(m), held as a subspace of F^{m*m}."""

    m: int
    space: Subspace
    label: str = dc_field(default="", compare=False)

    @property
    def field(self) -> Field:
        return self.space.field

    @property
    def dim(self) -> int:
        return self.space.dim

    def basis_mats(self):
        return [Mat.unvec(self.field, list(r), self.m, self.m) for r in self.space.basis]

    def contains(self, X: Mat) -> bool:
        return self.space.contains_vector(X.vec())

    def is_bracket_closed(self) -> bool:
        mats = self.basis_mats()
        return all(
            self.space.contains_vector(bracket(x, y).vec())
            for i, x in enumerate(mats)
            for y in mats[i + 1 :]
        )

    def with_space(self, space: Subspace, label=""):
        return MatLieAlg(self.m, space, label or self.label)


def skew_adjoint_algebra(A: Mat, label="") -> MatLieAlg:
    """L(A) = {X : X'A = -AX}, the symplectic/orthogonal algebra of A."""
    K = A.field
    m = A.nrows

    def constraint(v):
        X = Mat.unvec(K, v, m, m)
        return (X.transpose() @ A + A @ X).vec()

    op = op_matrix(K, m * m, m * m, constraint)
    return MatLieAlg(m, kernel(op), label or "L(A)")


def self_adjoint_module(A: Mat) -> Subspace:
    """M(A) = {Y : Y'A = AY}, an L(A)-submodule of gl(m)."""
    K = A.field
    m = A.nrows

    def constraint(v):
        Y = Mat.unvec(K, v, m, m)
        return (Y.transpose() @ A - A @ Y).vec()

    op = op_matrix(K, m * m, m * m, constraint)
    return kernel(op)


def derived_space(m: int, space: Subspace) -> Subspace:
    K = space.field
    mats = [Mat.unvec(K, list(r), m, m) for r in space.basis]
    rows = []
    for i, x in enumerate(mats):
        for y in mats[i + 1 :]:
            rows.append(bracket(x, y).vec())
    return Subspace.from_rows(K, m * m, rows)


def derived(L: MatLieAlg) -> MatLieAlg:
    return L.with_space(derived_space(L.m, L.space))


def derived_series(L: MatLieAlg):
    """[L, L^(1), L^(2), ...] iterated until stabilization."""
    series = [L]
    while True:
        nxt = derived(series[-1])
        if nxt.space == series[-1].space:
            break
        series.append(nxt)
        if nxt.dim == 0:
            break
    return series


def trace_pairing(x: Mat, y: Mat):
    return (x @ y).trace()


def trace_form_gram(mats) -> Mat:
    K = mats[0].field
    return Mat(K, [[trace_pairing(x, y) for y in mats] for x in mats])


def trace_orthogonal_complement(U: Subspace, within: Subspace) -> Subspace:
    """{x in `within` : tr(x u) = 0 for all u in U}."""
    K = U.field
    m2 = U.ambient
    m = _isqrt(m2)
    # tr(XU) = <vec(X), vec(U')>, so each u contributes one linear constraint
    constraints = []
    for u in U.basis:
        umat = Mat.unvec(K, list(u), m, m)
        constraints.append(umat.transpose().vec())
    if not within.basis:
        return within
    B = within.basis_matrix()
    C = Mat(K, constraints)
    coords_kernel = kernel(C @ B.transpose())
    rows = [within.lift(list(c)) for c in coords_kernel.basis]
    return Subspace.from_rows(K, m2, rows)


def _isqrt(n):
    r = int(n**0.5)
    while r * r < n:
        r += 1
    if r * r != n:
        raise ValueError("ambient dimension is not a square")
    return r


def adjoint_star(X: Mat, A: Mat) -> Mat:
    """X* = A^{-1} X' A, the f-adjoint for an invertible Gram matrix A."""
    return A.inv() @ X.transpose() @ A


class StructureConstants:
    """Abstract Lie algebra on a named basis with an explicit bracket table."""

    def __init__(self, field: Field, labels, table):
        self.field = field
        self.labels = list(labels)
        self.table = table  # table[i][j] = coefficient vector of [e_i, e_j]

    @property
    def dim(self):
        return len(self.labels)

    def bracket_coeffs(self, x, y):
        K = self.field
        out = [K.zero()] * self.dim
        for i, a in enumerate(x):
            if K.is_zero(a):
                continue
            for j, b in enumerate(y):
                if K.is_zero(b):
                    continue
                c = K.mul(a, b)
                for k, t in enumerate(self.table[i][j]):
                    if not K.is_zero(t):
                        out[k] = K.add(out[k], K.mul(c, t))
        return out

    def adjoint_matrices(self):
        """ad(e_i) as dim x dim matrices (columns indexed by e_j)."""
        K = self.field
        mats = []
        for i in range(self.dim):
            cols = [self.table[i][j] for j in range(self.dim)]
            mats.append(Mat(K, [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]))
        return mats

    def check_jacobi(self):
        K = self.field
        d = self.dim

        def unit(i):
            v = [K.zero()] * d
            v[i] = K.one()
            return v

        for i in range(d):
            for j in range(d):
                for k in range(d):
                    a = self.bracket_coeffs(unit(i), self.table[j][k])
                    b = self.bracket_coeffs(unit(j), self.table[k][i])
                    c = self.bracket_coeffs(unit(k), self.table[i][j])
                    s = [K.add(K.add(x, y), z) for x, y, z in zip(a, b, c)]
                    if any(not K.is_zero(x) for x in s):
                        return False
        return True


def heisenberg(K: Field, n: int) -> StructureConstants:
    """h(n): basis u_1..u_n, v_1..v_n, z with [u_i, v_i] = z central."""
    if n < 1:
        raise ValueError("need n >= 1")
    d = 2 * n + 1
    labels = [f"u{i+1}" for i in range(n)] + [f"v{i+1}" for i in range(n)] + ["z"]
    zero = [K.zero()] * d
    table = [[list(zero) for _ in range(d)] for _ in range(d)]
    for i in range(n):
        z = list(zero)
        z[d - 1] = K.one()
        table[i][n + i] = z
        nz = list(zero)
        nz[d - 1] = K.neg(K.one())
        table[n + i][i] = nz
    return StructureConstants(K, labels, table)


def quotient_algebra(L: MatLieAlg, ideal: Subspace, reps=None):
    """Structure constants of L/ideal on coset representatives.

    Returns (StructureConstants, reps) where reps are matrices in L whose
    cosets form the chosen basis.  Raises if `ideal` is not an ideal of L.
    """
    K = L.field
    if not L.space.contains(ideal):
        raise ValueError("ideal is not contained in the algebra")
    basis = L.basis_mats()
    ideal_mats = [Mat.unvec(K, list(r), L.m, L.m) for r in ideal.basis]
    for x in basis:
        for y in ideal_mats:
            if not ideal.contains_vector(bracket(x, y).vec()):
                raise ValueError("subspace is not an ideal")
    # coordinates of the ideal inside L
    coords_I = Subspace.from_rows(
        K, L.dim, [L.space.coords(list(r)) for r in ideal.basis]
    )
    q = L.dim - ideal.dim
    if reps is None:
        pivset = set(coords_I.pivots)
        free = [j for j in range(L.dim) if j not in pivset]
        reps = []
        for j in free:
            e = [K.zero()] * L.dim
            e[j] = K.one()
            reps.append(Mat.unvec(K, L.space.lift(e), L.m, L.m))
    if len(reps) != q:
        raise ValueError(f"need {q} coset representatives, got {len(reps)}")

    def reduced(mat):
        return coords_I.reduce(L.space.coords(mat.vec()))

    red_reps = [reduced(r) for r in reps]
    R = Mat(K, [[red_reps[j][i] for j in range(q)] for i in range(L.dim)])
    if Subspace.from_rows(K, L.dim, red_reps).dim != q:
        raise ValueError("representatives are dependent modulo the ideal")

    def coset_coords(mat):
        c = solve(R, reduced(mat))
        if c is None:
            raise AssertionError("bracket left the span of the representatives")
        return c

    table = [[None] * q for _ in range(q)]
    for i in range(q):
        for j in range(q):
            table[i][j] = coset_coords(bracket(reps[i], reps[j]))
    labels = [f"r{i}" for i in range(q)]
    return StructureConstants(K, labels, table), reps


def lie_isomorphic_by_structure(Q: StructureConstants, H: StructureConstants, M: Mat) -> bool:
    """Does the linear map M (Q-coords to H-coords) preserve all brackets?"""
    if Q.dim != H.dim or M.nrows != H.dim or M.ncols != Q.dim:
        return False
    K = Q.field
    if K.is_zero(M.det()):
        return False
    from .linalg import matvec

    def unit(i):
        v = [K.zero()] * Q.dim
        v[i] = K.one()
        return v

    for i in range(Q.dim):
        for j in range(Q.dim):
            lhs = matvec(M, Q.table[i][j])
            rhs = H.bracket_coeffs(matvec(M, unit(i)), matvec(M, unit(j)))
            if lhs != rhs:
                return False
    return True


def is_simple(alg, budget: int | None = None) -> bool:
    """Simplicity via irreducibility of the adjoint module.

    Ideals of a Lie algebra are exactly the submodules of its adjoint
    module, so dim > 1 plus an irreducible adjoint module is simplicity.
    """
    from .repmod import LieModule, certify_irreducible

    if isinstance(alg, StructureConstants):
        dim = alg.dim
        mats = alg.adjoint_matrices()
        K = alg.field
    else:
        dim = alg.dim
        K = alg.field
        mats = _adjoint_action_matrices(alg)
    if dim <= 1:
        return False
    module = LieModule(K, dim, [(f"ad{i}", a) for i, a in enumerate(mats)])
    res = certify_irreducible(module, budget=budget)
    if res.status == "budget-exceeded":
        raise RuntimeError("irreducibility budget exceeded")
    return res.status == "irreducible"


def _adjoint_action_matrices(L: MatLieAlg):
    K = L.field
    basis = L.basis_mats()
    mats = []
    for x in basis:
        cols = [L.space.coords(bracket(x, y).vec()) for y in basis]
        mats.append(Mat(K, [[cols[j][i] for j in range(L.dim)] for i in range(L.dim)]))
    return mats
