"""Dense exact linear algebra over the supported fields.

Matrices are row-major lists of canonical scalars.  Row reduction, kernels and
subspace lattice operations are exact; prime fields get a numpy int64 fast
path, the rationals an integer fraction-free path, and GF(p^2) a generic one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .fields import Field, PrimeField, QQ, RationalField, field_from_token


class Mat:
    """Immutable dense matrix over one exact field."""

    __slots__ = ("field", "rows")

    def __init__(self, field: Field, rows):
        self.field = field
        self.rows = [list(r) for r in rows]

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    @classmethod
    def zeros(cls, field, r, c):
        z = field.zero()
        return cls(field, [[z] * c for _ in range(r)])

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero(), field.one()
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, field, r, c, i, j):
        """The canonical matrix with a single 1 in position (i, j)."""
        m = cls.zeros(field, r, c)
        m.rows[i][j] = field.one()
        return m

    @classmethod
    def diag(cls, field, entries):
        n = len(entries)
        m = cls.zeros(field, n, n)
        for i, d in enumerate(entries):
            m.rows[i][i] = d
        return m

    @classmethod
    def from_int_rows(cls, field, rows):
        return cls(field, [[field.of(x) for x in row] for row in rows])

    @classmethod
    def from_blocks(cls, blocks):
        """Assemble from a 2D grid of matrices with matching shapes."""
        rows = []
        for block_row in blocks:
            for i in range(block_row[0].nrows):
                row = []
                for b in block_row:
                    row.extend(b.rows[i])
                rows.append(row)
        return cls(blocks[0][0].field, rows)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, tuple(tuple(r) for r in self.rows)))

    def __add__(self, other):
        K = self.field
        return Mat(K, [[K.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        K = self.field
        return Mat(K, [[K.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        K = self.field
        return Mat(K, [[K.neg(a) for a in r] for r in self.rows])

    def scale(self, c):
        K = self.field
        return Mat(K, [[K.mul(c, a) for a in r] for r in self.rows])

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        K = self.field
        fast = _matmul_fast(self, other)
        if fast is not None:
            return fast
        bt = other.transpose().rows
        out = []
        for r in self.rows:
            out_row = []
            for c in bt:
                acc = K.zero()
                for a, b in zip(r, c):
                    acc = K.add(acc, K.mul(a, b))
                out_row.append(acc)
            out.append(out_row)
        return Mat(K, out)

    def transpose(self):
        return Mat(self.field, [list(col) for col in zip(*self.rows)]) if self.rows else Mat(self.field, [])

    def trace(self):
        K = self.field
        acc = K.zero()
        for i in range(min(self.nrows, self.ncols)):
            acc = K.add(acc, self.rows[i][i])
        return acc

    def is_zero(self):
        K = self.field
        return all(K.is_zero(a) for r in self.rows for a in r)

    def vec(self):
        """Row-major flattening."""
        return [a for r in self.rows for a in r]

    @classmethod
    def unvec(cls, field, v, r, c):
        return cls(field, [v[i * c : (i + 1) * c] for i in range(r)])

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of non-square matrix")
        K = self.field
        a = [list(r) for r in self.rows]
        n = self.nrows
        det = K.one()
        for col in range(n):
            piv = next((r for r in range(col, n) if not K.is_zero(a[r][col])), None)
            if piv is None:
                return K.zero()
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = K.neg(det)
            det = K.mul(det, a[col][col])
            inv = K.inv(a[col][col])
            for r in range(col + 1, n):
                if K.is_zero(a[r][col]):
                    continue
                f = K.mul(a[r][col], inv)
                a[r] = [K.sub(x, K.mul(f, y)) for x, y in zip(a[r], a[col])]
        return det

    def inv(self):
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        aug = Mat(self.field, [self.rows[i] + Mat.identity(self.field, n).rows[i] for i in range(n)])
        red, rank, _ = rref(aug)
        if rank < n:
            raise ValueError("matrix is singular")
        return Mat(self.field, [r[n:] for r in red.rows])

    def to_text(self):
        K = self.field
        lines = [f"{self.nrows} {self.ncols} {K.token}"]
        for r in self.rows:
            lines.append(" ".join(K.fmt(a) for a in r))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str):
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        header = lines[0].split()
        if len(header) != 3:
            raise ValueError(f"bad matrix header: {lines[0]!r}")
        r, c = int(header[0]), int(header[1])
        K = field_from_token(header[2])
        if len(lines) != r + 1:
            raise ValueError(f"expected {r} rows, got {len(lines) - 1}")
        rows = []
        for ln in lines[1:]:
            entries = ln.split()
            if len(entries) != c:
                raise ValueError(f"expected {c} entries in row: {ln!r}")
            rows.append([K.parse(e) for e in entries])
        return cls(K, rows)

    def __repr__(self):
        return f"Mat({self.field!r}, {self.nrows}x{self.ncols})"


def matvec(M: Mat, v):
    K = M.field
    out = []
    for r in M.rows:
        acc = K.zero()
        for a, b in zip(r, v):
            if not K.is_zero(a):
                acc = K.add(acc, K.mul(a, b))
        out.append(acc)
    return out


def kron(A: Mat, B: Mat) -> Mat:
    """Kronecker product; (kron(A,B))[(i,k),(j,l)] = A[i][j]*B[k][l]."""
    if A.field != B.field:
        raise ValueError("field mismatch in kron")
    K = A.field
    rows = []
    for i in range(A.nrows):
        for k in range(B.nrows):
            row = []
            for j in range(A.ncols):
                a = A.rows[i][j]
                row.extend(K.mul(a, b) for b in B.rows[k])
            rows.append(row)
    return Mat(K, rows)


def op_matrix(field, n_in, n_out, fn) -> Mat:
    """Matrix of a linear map given as a vector function (columns = images)."""
    cols = []
    z, o = field.zero(), field.one()
    for j in range(n_in):
        e = [z] * n_in
        e[j] = o
        cols.append(fn(e))
    return Mat(field, [[cols[j][i] for j in range(n_in)] for i in range(n_out)])


# ---------------------------------------------------------------------------
# Row reduction


def _matmul_fast(A: Mat, B: Mat):
    K = A.field
    if isinstance(K, PrimeField):
        p = K.char
        a = np.array(A.rows, dtype=np.int64)
        b = np.array(B.rows, dtype=np.int64)
        if a.size == 0 or b.size == 0:
            return Mat.zeros(K, A.nrows, B.ncols)
        # Split long inner products to stay far from int64 overflow.
        prod = (a @ b) % p
        return Mat(K, prod.tolist())
    if isinstance(K, RationalField):
        ints = _int_array(A.rows) if A.rows else None
        ints_b = _int_array(B.rows) if B.rows else None
        if ints is not None and ints_b is not None:
            bound = A.ncols * max(1, int(np.abs(ints).max(initial=0))) * max(
                1, int(np.abs(ints_b).max(initial=0))
            )
            if bound < 2**62:
                prod = ints @ ints_b
                return Mat(K, [[Fraction(int(x)) for x in row] for row in prod])
    return None


def _int_array(rows):
    out = []
    for r in rows:
        row = []
        for a in r:
            if a.denominator != 1:
                return None
            row.append(a.numerator)
        out.append(row)
    arr = np.array(out, dtype=object)
    if arr.size and max(abs(int(x)) for x in arr.flat) < 2**31:
        return arr.astype(np.int64)
    return None


def rref(M: Mat):
    """Canonical reduced row echelon form; returns (matrix, rank, pivots)."""
    K = M.field
    if isinstance(K, PrimeField):
        rows, rank, pivots = _rref_gfp(M.rows, K.char, M.ncols)
        return Mat(K, rows), rank, tuple(pivots)
    if isinstance(K, RationalField):
        rows, rank, pivots = _rref_rational(M.rows, M.ncols)
        return Mat(K, rows), rank, tuple(pivots)
    rows, rank, pivots = _rref_generic(M.rows, K, M.ncols)
    return Mat(K, rows), rank, tuple(pivots)


def _rref_gfp(rows, p, ncols):
    a = np.array(rows, dtype=np.int64) % p
    nrows = a.shape[0] if a.size else 0
    if nrows == 0:
        return [], 0, []
    rank = 0
    pivots = []
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if a[r, col] % p:
                piv = r
                break
        if piv is None:
            continue
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        mask = a[:, col].copy()
        mask[rank] = 0
        a = (a - np.outer(mask, a[rank])) % p
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return a.tolist(), rank, pivots


def _rref_rational(rows, ncols):
    # Fraction-free elimination on primitive integer rows, normalized at the end.
    work = []
    for r in rows:
        den = math.lcm(*[f.denominator for f in r]) if r else 1
        ints = [int(f * den) for f in r]
        g = math.gcd(*ints) if any(ints) else 1
        if g > 1:
            ints = [x // g for x in ints]
        work.append(ints)
    nrows = len(work)
    rank = 0
    pivots = []
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if work[r][col]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pv = work[rank][col]
        for r in range(nrows):
            if r == rank or not work[r][col]:
                continue
            f = work[r][col]
            work[r] = [pv * x - f * y for x, y in zip(work[r], work[rank])]
            g = math.gcd(*work[r]) if any(work[r]) else 1
            if g > 1:
                work[r] = [x // g for x in work[r]]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    out = []
    for i in range(rank):
        pv = work[i][pivots[i]]
        out.append([Fraction(x, pv) for x in work[i]])
    z = Fraction(0)
    for _ in range(nrows - rank):
        out.append([z] * ncols)
    return out, rank, pivots


def _rref_generic(rows, K, ncols):
    work = [list(r) for r in rows]
    nrows = len(work)
    rank = 0
    pivots = []
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if not K.is_zero(work[r][col])), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = K.inv(work[rank][col])
        work[rank] = [K.mul(inv, x) for x in work[rank]]
        for r in range(nrows):
            if r == rank or K.is_zero(work[r][col]):
                continue
            f = work[r][col]
            work[r] = [K.sub(x, K.mul(f, y)) for x, y in zip(work[r], work[rank])]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return work, rank, pivots


def solve(A: Mat, b):
    """One solution of A x = b, or None if inconsistent."""
    K = A.field
    aug = Mat(K, [row + [bb] for row, bb in zip(A.rows, b)])
    red, rank, pivots = rref(aug)
    if A.ncols in pivots:
        return None
    x = [K.zero()] * A.ncols
    for i, col in enumerate(pivots):
        x[col] = red.rows[i][A.ncols]
    return x


def kernel(M: Mat) -> "Subspace":
    """Right kernel {v : M v = 0} as a canonical subspace."""
    K = M.field
    red, rank, pivots = rref(M)
    n = M.ncols
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    basis = []
    for f in free:
        v = [K.zero()] * n
        v[f] = K.one()
        for i, col in enumerate(pivots):
            v[col] = K.neg(red.rows[i][f])
        basis.append(v)
    return Subspace.from_rows(K, n, basis)


# ---------------------------------------------------------------------------
# Subspaces


@dataclass(frozen=True)
class Subspace:
    """Subspace of F^N held as a canonical RREF basis (rows)."""

    field: Field
    ambient: int
    basis: tuple
    pivots: tuple

    @classmethod
    def from_rows(cls, field, ambient, rows):
        if not rows:
            return cls(field, ambient, (), ())
        red, rank, pivots = rref(Mat(field, rows))
        basis = tuple(tuple(r) for r in red.rows[:rank])
        return cls(field, ambient, basis, pivots)

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, (), ())

    @classmethod
    def full(cls, field, ambient):
        eye = Mat.identity(field, ambient)
        return cls(field, ambient, tuple(tuple(r) for r in eye.rows), tuple(range(ambient)))

    @property
    def dim(self):
        return len(self.basis)

    def basis_matrix(self) -> Mat:
        return Mat(self.field, [list(r) for r in self.basis])

    def reduce(self, v):
        """Residual of v after eliminating the pivot coordinates."""
        K = self.field
        v = list(v)
        for row, piv in zip(self.basis, self.pivots):
            c = v[piv]
            if K.is_zero(c):
                continue
            v = [K.sub(a, K.mul(c, b)) for a, b in zip(v, row)]
        return v

    def contains_vector(self, v) -> bool:
        K = self.field
        return all(K.is_zero(a) for a in self.reduce(v))

    def coords(self, v):
        """Coordinates relative to the canonical basis (requires membership)."""
        if not self.contains_vector(v):
            raise ValueError("vector not in subspace")
        return [v[p] for p in self.pivots]

    def lift(self, coords):
        K = self.field
        out = [K.zero()] * self.ambient
        for c, row in zip(coords, self.basis):
            if K.is_zero(c):
                continue
            out = [K.add(a, K.mul(c, b)) for a, b in zip(out, row)]
        return out

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(list(r)) for r in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check_compat(other)
        return Subspace.from_rows(
            self.field, self.ambient, [list(r) for r in self.basis + other.basis]
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_compat(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.ambient)
        # x = a·U = b·W  <=>  (a, b) in ker [U' | -W'].
        K = self.field
        stacked = Mat(
            K,
            [
                [self.basis[i][r] for i in range(self.dim)]
                + [K.neg(other.basis[j][r]) for j in range(other.dim)]
                for r in range(self.ambient)
            ],
        )
        ker = kernel(stacked)
        rows = [self.lift(list(k)[: self.dim]) for k in ker.basis]
        return Subspace.from_rows(self.field, self.ambient, rows)

    def _check_compat(self, other):
        if self.field != other.field or self.ambient != other.ambient:
            raise ValueError("subspace ambient/field mismatch")

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


# ---------------------------------------------------------------------------
# Incremental echelon bases (used by the spinning closure)


class Echelon:
    """Growing row-echelon basis with O(dim * N) membership reduction."""

    def __init__(self, field, ambient):
        self.field = field
        self.ambient = ambient
        self.rows = []
        self.pivots = []

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, v):
        K = self.field
        v = list(v)
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv]
            if not K.is_zero(c):
                v = [K.sub(a, K.mul(c, b)) for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        """Insert v; returns True if it enlarged the span."""
        K = self.field
        r = self.reduce(v)
        piv = next((i for i, a in enumerate(r) if not K.is_zero(a)), None)
        if piv is None:
            return False
        inv = K.inv(r[piv])
        self.rows.append([K.mul(inv, a) for a in r])
        self.pivots.append(piv)
        return True

    def contains(self, v) -> bool:
        K = self.field
        return all(K.is_zero(a) for a in self.reduce(v))

    def subspace(self) -> Subspace:
        return Subspace.from_rows(self.field, self.ambient, self.rows)


class EchelonGFp:
    """numpy-backed echelon basis over GF(p)."""

    def __init__(self, p, ambient):
        self.p = p
        self.ambient = ambient
        self.mat = np.zeros((0, ambient), dtype=np.int64)
        self.pivots = []

    @property
    def dim(self):
        return self.mat.shape[0]

    def reduce(self, v):
        p = self.p
        v = np.array(v, dtype=np.int64) % p
        if self.pivots:
            coeffs = v[self.pivots]
            if coeffs.any():
                v = (v - coeffs @ self.mat) % p
        return v

    def add(self, v) -> bool:
        r = self.reduce(v)
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            return False
        piv = int(nz[0])
        r = (r * pow(int(r[piv]), self.p - 2, self.p)) % self.p
        # Keep stored rows fully reduced so `reduce` is a single matmul.
        if self.pivots:
            col = self.mat[:, piv].copy()
            self.mat = (self.mat - np.outer(col, r)) % self.p
        self.mat = np.vstack([self.mat, r[None, :]])
        self.pivots.append(piv)
        return True

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def subspace(self, field) -> Subspace:
        return Subspace.from_rows(field, self.ambient, self.mat.tolist())
