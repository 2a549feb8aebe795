"""Bilinear form classification and congruence normal forms.

A form is carried by its Gram matrix A; f(u, v) = u' A v.  We produce a
symplectic basis for nondegenerate alternating forms and a diagonalizing
basis for symmetric forms, including the non-alternating characteristic 2
case where the usual orthogonal-complement recursion needs extra care.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Field
from .linalg import Mat, Subspace, matvec


@dataclass(frozen=True)
class BilForm:
    gram: Mat
    symmetric: bool
    alternating: bool
    nondegenerate: bool

    @property
    def field(self) -> Field:
        return self.gram.field

    @property
    def m(self) -> int:
        return self.gram.nrows


@dataclass(frozen=True)
class CongruenceResult:
    """Invertible S with S' A S = normal_form."""

    transform: Mat
    normal_form: Mat


def classify(A: Mat) -> BilForm:
    if A.nrows != A.ncols:
        raise ValueError("Gram matrix must be square")
    K = A.field
    symmetric = A == A.transpose()
    skew = A.transpose() == -A
    alternating = skew and all(K.is_zero(A.rows[i][i]) for i in range(A.nrows))
    nondeg = not K.is_zero(A.det())
    return BilForm(A, symmetric, alternating, nondeg)


def _form_value(A: Mat, u, v):
    K = A.field
    Av = matvec(A, v)
    acc = K.zero()
    for a, b in zip(u, Av):
        acc = K.add(acc, K.mul(a, b))
    return acc


def symplectic_basis(A: Mat) -> CongruenceResult:
    """Basis u_1..u_n, v_1..v_n with Gram [[0, I], [-I, 0]]."""
    form = classify(A)
    if not (form.alternating and form.nondegenerate):
        raise ValueError("symplectic basis needs a nondegenerate alternating form")
    K = A.field
    m = A.nrows
    basis = [[K.one() if i == j else K.zero() for j in range(m)] for i in range(m)]
    us, vs = [], []
    remaining = basis
    while remaining:
        u = remaining[0]
        partner = next(
            (w for w in remaining[1:] if not K.is_zero(_form_value(A, u, w))), None
        )
        if partner is None:
            raise ValueError("form is degenerate on the working complement")
        c = K.inv(_form_value(A, u, partner))
        v = [K.mul(c, a) for a in partner]
        us.append(u)
        vs.append(v)
        new_remaining = []
        for w in remaining:
            if w is u or w is partner:
                continue
            # project w into the f-complement of span{u, v}
            fu = _form_value(A, u, w)
            fv = _form_value(A, v, w)
            # w + f(v,w) u - f(u,w) v is orthogonal to both u and v
            w2 = [
                K.sub(K.add(a, K.mul(fv, b1)), K.mul(fu, b2))
                for a, b1, b2 in zip(w, u, v)
            ]
            new_remaining.append(w2)
        remaining = [w for w in new_remaining if any(not K.is_zero(a) for a in w)]
    n = len(us)
    cols = us + vs
    S = Mat(K, [[cols[j][i] for j in range(m)] for i in range(m)])
    J = standard_symplectic_gram(K, 2 * n)
    check = S.transpose() @ A @ S
    if check != J:
        raise AssertionError("symplectic reduction did not reach J")
    return CongruenceResult(S, J)


def standard_symplectic_gram(K: Field, m: int) -> Mat:
    if m % 2:
        raise ValueError("symplectic Gram needs even size")
    n = m // 2
    Z = Mat.zeros(K, n, n)
    eye = Mat.identity(K, n)
    return Mat.from_blocks([[Z, eye], [-eye, Z]])


def diagonalize_symmetric(A: Mat) -> CongruenceResult:
    form = classify(A)
    if not form.symmetric:
        raise ValueError("diagonalization needs a symmetric form")
    K = A.field
    char2 = K.char == 2
    if char2 and form.alternating and not A.is_zero():
        raise ValueError("alternating form in characteristic 2 has no diagonal Gram")
    m = A.nrows
    basis = [[K.one() if i == j else K.zero() for j in range(m)] for i in range(m)]
    done = []
    remaining = basis
    while remaining:
        # everything orthogonal to `done` lives in span(remaining)
        vals = [_form_value(A, w, w) for w in remaining]
        idx = next((i for i, q in enumerate(vals) if not K.is_zero(q)), None)
        if idx is None:
            if not char2:
                # f(w,w)=0 everywhere; if some f(w1,w2)=c != 0 then w1+w2 works
                pair = _nonzero_pair(A, remaining)
                if pair is None:
                    done.extend(remaining)
                    break
                i, j, c = pair
                remaining[i] = [K.add(a, b) for a, b in zip(remaining[i], remaining[j])]
                continue
            # char 2: the complement went alternating.  Take a hyperbolic
            # pair v, w there (f(v, w) = 1) and swap the last chosen vector
            # u for u + v.  Squares add in characteristic 2, so
            # q(u + v) = q(u) != 0, and the projection of w into the new
            # complement has square 1/q(u) != 0, so progress is guaranteed.
            pair = _nonzero_pair(A, remaining)
            if pair is None:
                done.extend(remaining)
                break
            if not done:
                raise ValueError("alternating form in characteristic 2 has no diagonal Gram")
            i, j, c = pair
            v = [K.mul(K.inv(c), a) for a in remaining[i]]
            u = done.pop()
            u2 = [K.add(a, b) for a, b in zip(u, v)]
            done.append(u2)
            projected = _orth_complement(A, remaining + [u], u2)
            # the projections carry one dependency; rebuild an independent basis
            remaining = [list(r) for r in Subspace.from_rows(K, m, projected).basis]
            continue
        u = remaining.pop(idx)
        done.append(u)
        remaining = _orth_complement(A, remaining, u)
    S = Mat(K, [[done[j][i] for j in range(m)] for i in range(m)])
    D = S.transpose() @ A @ S
    for i in range(m):
        for j in range(m):
            if i != j and not K.is_zero(D.rows[i][j]):
                raise AssertionError("diagonalization failed to reach diagonal form")
    if K.is_zero(S.det()):
        raise AssertionError("diagonalizing transform is singular")
    return CongruenceResult(S, D)


def _nonzero_pair(A: Mat, vectors):
    K = A.field
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            c = _form_value(A, vectors[i], vectors[j])
            if not K.is_zero(c):
                return i, j, c
    return None


def _orth_complement(A: Mat, vectors, u):
    """Replace each vector by its f-projection away from u (q(u) != 0)."""
    K = A.field
    q = _form_value(A, u, u)
    qinv = K.inv(q)
    out = []
    for w in vectors:
        c = K.mul(qinv, _form_value(A, u, w))
        w2 = [K.sub(a, K.mul(c, b)) for a, b in zip(w, u)]
        if any(not K.is_zero(a) for a in w2):
            out.append(w2)
    return out


def discriminant_is_square(form: BilForm) -> bool:
    if not form.nondegenerate:
        raise ValueError("discriminant of a degenerate form")
    return form.field.is_square(form.gram.det())
