"""Top exterior powers represented by a basis and a scalar.

A :class:`TopWedge` ``(B, c)`` stands for ``c * b_1 ^ ... ^ b_k`` where the
``b_i`` are the columns of ``B``. Two representatives ``(B, c)`` and
``(B T, c / det T)`` describe the same element. ``k = 0`` is the scalar line.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULTS
from .errors import ConditioningError, DomainError, SpanMismatchError
from .spectral import max_principal_angle


@dataclass(frozen=True)
class TopWedge:
    B: np.ndarray
    c: complex = 1.0

    def __post_init__(self):
        B = np.asarray(self.B, dtype=complex)
        if B.ndim != 2:
            raise DomainError("TopWedge basis must be an n x k array")
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "c", complex(self.c))

    @classmethod
    def scalar(cls, n: int, c: complex = 1.0) -> "TopWedge":
        """Element ``c`` of the top power of the zero subspace of C^n."""
        return cls(np.zeros((n, 0), dtype=complex), c)

    @property
    def n(self) -> int:
        return self.B.shape[0]

    @property
    def k(self) -> int:
        return self.B.shape[1]

    @property
    def is_zero(self) -> bool:
        return self.c == 0

    def scale(self, s: complex) -> "TopWedge":
        return TopWedge(self.B, self.c * s)

    def volume(self) -> float:
        """``|c| * sqrt(det(B^H B))``, the norm of the wedge in the induced metric."""
        if self.k == 0:
            return abs(self.c)
        s = np.linalg.svd(self.B, compute_uv=False)
        return abs(self.c) * float(np.prod(s))

    def dual(self) -> "DualTopWedge":
        return DualTopWedge(self)


@dataclass(frozen=True)
class DualTopWedge:
    """The functional on a line ``Lambda^top V`` sending ``w`` to 1."""

    w: TopWedge

    def __post_init__(self):
        if self.w.is_zero:
            raise DomainError("the dual of the zero wedge is undefined")

    @property
    def k(self) -> int:
        return self.w.k

    def scale(self, s: complex) -> "DualTopWedge":
        # s * w^ sends w to s, i.e. equals (w / s)^
        return DualTopWedge(self.w.scale(1 / s))


def wedge_ratio(v: TopWedge, w: TopWedge, tol_span: float = DEFAULTS.tol_span) -> complex:
    """The scalar ``r`` with ``v = r w``."""
    if w.is_zero:
        raise DomainError("cannot divide by the zero wedge")
    if v.k != w.k or v.n != w.n:
        raise SpanMismatchError(f"dimensions differ: {v.B.shape} vs {w.B.shape}")
    if v.k == 0:
        return v.c / w.c
    ang = max_principal_angle(v.B, w.B)
    if ang > tol_span:
        raise SpanMismatchError(f"spans differ by principal angle {ang:.2e}")
    T = np.linalg.lstsq(w.B, v.B, rcond=None)[0]
    return v.c * np.linalg.det(T) / w.c


def concat(u: TopWedge, v: TopWedge, tol_rank: float = DEFAULTS.tol_rank) -> TopWedge:
    """``u ^ v`` in ``Lambda^top(U + V)`` for transverse ``U``, ``V``."""
    if u.n != v.n:
        raise DomainError("ambient dimensions differ")
    if u.k == 0:
        return TopWedge(v.B, u.c * v.c)
    if v.k == 0:
        return TopWedge(u.B, u.c * v.c)
    B = np.concatenate([u.B, v.B], axis=1)
    if B.shape[1] > B.shape[0]:
        raise ConditioningError("spans not transverse")
    s = np.linalg.svd(B, compute_uv=False)
    if s[-1] <= tol_rank * max(1.0, s[0]):
        raise ConditioningError(f"spans not transverse (sigma_min={s[-1]:.2e})")
    return TopWedge(B, u.c * v.c)


def pair(alpha: DualTopWedge, v: TopWedge, tol_span: float = DEFAULTS.tol_span) -> complex:
    """Evaluate the functional ``alpha`` on ``v``."""
    return wedge_ratio(v, alpha.w, tol_span)
