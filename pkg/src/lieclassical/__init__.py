"""Exact computational Lie algebra engine for classical subalgebras of gl(m)."""

from .fields import GF, QQ, field_from_token
from .linalg import Mat, Subspace, kernel, kron, rref

__all__ = ["GF", "QQ", "field_from_token", "Mat", "Subspace", "kernel", "kron", "rref"]
