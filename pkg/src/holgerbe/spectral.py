"""Spectra with multiplicity, contour zero counting and Riesz projectors.

All contour integrals go through :func:`resolvent_integral`, which evaluates
``(lam I - A)^{-1}`` by a batched LU solve at every quadrature node and keeps
doubling the number of panels until two successive results agree.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import subspace_angles

from .config import DEFAULTS
from .errors import (BoundaryEigenvalueError, ConditioningError, ConditioningWarning,
                     DomainError, QuadratureError, SingularMatrixError)
from .sectors import Contour, Sector, angle_distance, circle_contour, discs_contour, ray_angle


def as_square(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {A.shape}")
    return A


def check_invertible(A: np.ndarray, tol_det: float = DEFAULTS.tol_det) -> None:
    if abs(np.linalg.det(A)) <= tol_det:
        raise SingularMatrixError(f"|det A| <= {tol_det}")


def canonical_key(lam: complex) -> tuple:
    """Sort key for eigen-blocks: angle in [0, 2pi), modulus, real, imaginary part."""
    return (ray_angle(lam), abs(lam), lam.real, lam.imag)


# --------------------------------------------------------------------------
# spectrum with multiplicity
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumData:
    values: np.ndarray           # distinct eigenvalues, canonical order
    multiplicities: np.ndarray   # algebraic multiplicities

    @property
    def n(self) -> int:
        return int(self.multiplicities.sum())

    @property
    def angles(self) -> np.ndarray:
        return np.array([ray_angle(v) for v in self.values])

    def pairs(self) -> list[tuple[complex, int]]:
        return [(complex(v), int(m)) for v, m in zip(self.values, self.multiplicities)]

    def gap(self) -> float:
        """Smallest distance between distinct eigenvalues (inf if only one)."""
        v = self.values
        if len(v) < 2:
            return np.inf
        d = np.abs(v[:, None] - v[None, :])
        return float(d[~np.eye(len(v), dtype=bool)].min())

    def count_in(self, S: Sector) -> int:
        """Membership oracle: eigenvalues (with multiplicity) strictly inside ``S``."""
        from .sectors import in_sector
        return int(sum(m for v, m in self.pairs() if in_sector(S, v)))


def _cluster(vals: np.ndarray, tol: float) -> list[list[int]]:
    """Single-linkage clusters at relative distance ``tol``."""
    n = len(vals)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            scale = max(1.0, abs(vals[i]), abs(vals[j]))
            if abs(vals[i] - vals[j]) <= tol * scale:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def spectrum_with_multiplicity(A, tol_cluster: float = DEFAULTS.tol_cluster,
                               tol_det: float = DEFAULTS.tol_det) -> SpectrumData:
    A = as_square(A)
    check_invertible(A, tol_det)
    vals = np.linalg.eigvals(A)
    groups = _cluster(vals, tol_cluster)
    reps = [complex(vals[g].mean()) for g in groups]
    mults = [len(g) for g in groups]
    order = sorted(range(len(reps)), key=lambda i: canonical_key(reps[i]))
    values = np.array([reps[i] for i in order], dtype=complex)
    multiplicities = np.array([mults[i] for i in order], dtype=int)
    spec = SpectrumData(values, multiplicities)
    if len(values) > 1:
        scale = max(1.0, float(np.abs(values).max()))
        if spec.gap() < 2 * tol_cluster * scale:
            warnings.warn("eigenvalue clusters closer than 2*tol_cluster; multiplicities are ambiguous",
                          ConditioningWarning, stacklevel=2)
    return spec


def is_eigenray(A, z: complex, eps_ang: float = DEFAULTS.eps_ang,
                spectrum: SpectrumData | None = None) -> bool:
    spec = spectrum if spectrum is not None else spectrum_with_multiplicity(A)
    t = ray_angle(z)
    return any(angle_distance(t, a) <= eps_ang for a in spec.angles)


# --------------------------------------------------------------------------
# contour integrals of the resolvent
# --------------------------------------------------------------------------

def resolvents(A: np.ndarray, lam: np.ndarray, tol_det: float = DEFAULTS.tol_det) -> np.ndarray:
    """Stack of ``(lam_j I - A)^{-1}`` computed by LU solves, shape ``(m, n, n)``."""
    n = A.shape[0]
    eye = np.eye(n, dtype=complex)
    M = lam[:, None, None] * eye - A[None, :, :]
    _, logabs = np.linalg.slogdet(M)
    if len(lam) and logabs.min() < np.log(tol_det):
        raise ConditioningError(
            f"min |det(lam I - A)| on contour is {np.exp(logabs.min()):.3e} < {tol_det}")
    return np.linalg.solve(M, np.broadcast_to(eye, M.shape))


def _check_gap(A: np.ndarray, C: Contour, tol_gap: float) -> float:
    vals = np.linalg.eigvals(A)
    d = min((C.distance(v) for v in vals), default=np.inf)
    if d <= tol_gap:
        raise ConditioningError(f"spectrum within {d:.3e} of the contour (tol_gap={tol_gap})")
    return d


def resolvent_integral(A, C: Contour, integrand=None, *, nodes: int = DEFAULTS.quad_nodes,
                       rtol: float = DEFAULTS.quad_rtol,
                       max_doublings: int = DEFAULTS.quad_max_doublings,
                       tol_det: float = DEFAULTS.tol_det,
                       tol_gap: float = DEFAULTS.tol_gap,
                       check_gap: bool = True):
    """``(1/2 pi i) oint integrand(R(lam), lam) d lam`` with adaptive refinement.

    ``integrand`` maps a stack of resolvents ``(m, n, n)`` and nodes ``(m,)``
    to a stack of values; the default returns the resolvents themselves, giving
    the Riesz projector.
    """
    A = as_square(A)
    if check_gap:
        _check_gap(A, C, tol_gap)
    if integrand is None:
        integrand = lambda R, lam: R
    prev = None
    panels = 1
    for _ in range(max_doublings + 1):
        lam, w = C.quadrature(nodes, panels)
        R = resolvents(A, lam, tol_det)
        vals = integrand(R, lam)
        cur = np.tensordot(w, vals, axes=(0, 0)) / (2j * np.pi)
        if prev is not None:
            scale = max(1.0, float(np.max(np.abs(cur))))
            if np.max(np.abs(cur - prev)) <= rtol * scale * 10:
                return cur
        prev, panels = cur, panels * 2
    raise QuadratureError(f"contour quadrature did not converge after {max_doublings} doublings")


def zero_count_integral(A, C: Contour, **kw) -> complex:
    """Raw value of ``(1/2 pi i) oint tr (lam I - A)^{-1} d lam``."""
    A = as_square(A)
    if C.is_empty:
        return 0j
    trace = lambda R, lam: np.trace(R, axis1=1, axis2=2)
    return complex(resolvent_integral(A, C, trace, **kw))


def zero_count(A, C: Contour, *, tol_round: float = DEFAULTS.tol_round,
               tol_round_fail: float = DEFAULTS.tol_round_fail, **kw) -> int:
    val = zero_count_integral(A, C, **kw)
    k = int(round(val.real))
    res = abs(val - k)
    if res > tol_round_fail:
        raise QuadratureError(f"counting integral {val} is {res:.2e} away from an integer")
    if res > tol_round:
        warnings.warn(f"counting integral residual {res:.2e} exceeds {tol_round}",
                      ConditioningWarning, stacklevel=2)
    return k


@dataclass(frozen=True)
class Projector:
    e: np.ndarray
    A: np.ndarray

    @property
    def rank(self) -> int:
        return int(round(np.trace(self.e).real))

    def idempotency_residual(self) -> float:
        return float(np.linalg.norm(self.e @ self.e - self.e, 2))

    def commutator_residual(self) -> float:
        return float(np.linalg.norm(self.A @ self.e - self.e @ self.A, 2))

    def image_basis(self) -> "SubspaceBasis":
        k = self.rank
        U, _, _ = np.linalg.svd(self.e)
        return SubspaceBasis(U[:, :k])


def riesz_projector(A, C: Contour, **kw) -> Projector:
    A = as_square(A)
    if C.is_empty:
        return Projector(np.zeros_like(A), A)
    return Projector(resolvent_integral(A, C, **kw), A)


def projector_derivative(A, dA, C: Contour, **kw) -> np.ndarray:
    """Directional derivative ``(1/2 pi i) oint R dA R d lam`` of the Riesz projector."""
    A = as_square(A)
    dA = np.asarray(dA, dtype=complex)
    if C.is_empty:
        return np.zeros_like(A)
    return resolvent_integral(A, C, lambda R, lam: R @ dA @ R, **kw)


# --------------------------------------------------------------------------
# eigenspaces
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SubspaceBasis:
    B: np.ndarray

    def __post_init__(self):
        B = np.asarray(self.B, dtype=complex)
        if B.ndim != 2:
            raise DomainError("basis must be an n x k array")
        object.__setattr__(self, "B", B)

    @property
    def n(self) -> int:
        return self.B.shape[0]

    @property
    def k(self) -> int:
        return self.B.shape[1]

    def check_rank(self, tol_rank: float = DEFAULTS.tol_rank) -> float:
        if self.k == 0:
            return np.inf
        s = np.linalg.svd(self.B, compute_uv=False)[-1]
        if s <= tol_rank:
            raise ConditioningError(f"basis is rank deficient (sigma_min={s:.2e})")
        return float(s)


def max_principal_angle(B1: np.ndarray, B2: np.ndarray) -> float:
    """Largest principal angle between two column spans (inf if dimensions differ)."""
    B1, B2 = np.asarray(B1), np.asarray(B2)
    if B1.shape[1] != B2.shape[1]:
        return np.inf
    if B1.shape[1] == 0:
        return 0.0
    return float(np.max(subspace_angles(B1, B2)))


@dataclass(frozen=True)
class SpectralBlock:
    """One eigenvalue cluster with its disc, projector and orthonormal eigenbasis."""

    value: complex
    multiplicity: int
    radius: float
    projector: np.ndarray
    basis: np.ndarray

    @property
    def angle(self) -> float:
        return ray_angle(self.value)


@dataclass(frozen=True)
class SpectralBlocks:
    A: np.ndarray
    spectrum: SpectrumData
    blocks: tuple

    def select(self, S: Sector, eps_ang: float = DEFAULTS.eps_ang,
               cut_excluded: bool = True) -> list[SpectralBlock]:
        """Blocks whose eigenvalue lies strictly inside ``S``.

        Eigenvalues on a boundary ray raise, except for those on the positive
        reals when that ray starts the sector (they are in no ``S(1, x)``).
        """
        out = []
        for b in self.blocks:
            s = abs(b.value)
            if not (S.r < s < S.R):
                if min(abs(s - S.r), abs(s - S.R) if np.isfinite(S.R) else np.inf) <= eps_ang * max(1.0, s):
                    raise BoundaryEigenvalueError(f"eigenvalue {b.value} on a radial boundary of the sector")
                continue
            margin = S.angular_margin(b.value)
            if abs(margin) <= eps_ang:
                if cut_excluded and angle_distance(b.angle, 0.0) <= eps_ang and S.phi_start == 0.0:
                    continue
                if S.is_empty:
                    continue
                raise BoundaryEigenvalueError(f"eigenvalue {b.value} on sector boundary")
            if margin > eps_ang:
                out.append(b)
        return out

    def basis(self, S: Sector, **kw) -> SubspaceBasis:
        chosen = self.select(S, **kw)
        if not chosen:
            return SubspaceBasis(np.zeros((self.A.shape[0], 0), dtype=complex))
        return SubspaceBasis(np.concatenate([b.basis for b in chosen], axis=1))

    def projector(self, S: Sector, **kw) -> np.ndarray:
        chosen = self.select(S, **kw)
        return sum((b.projector for b in chosen), np.zeros_like(self.A))

    def discs(self, S: Sector, **kw) -> list[tuple[complex, float]]:
        return [(b.value, b.radius) for b in self.select(S, **kw)]


def disc_radius(value: complex, spectrum: SpectrumData, boundary_distance: float = np.inf) -> float:
    """``min(gap/3, dist-to-boundary/2)``, also kept away from the origin."""
    others = [abs(value - v) for v in spectrum.values if v != value]
    gap = min(others, default=np.inf)
    r = min(gap / 3, boundary_distance / 2, abs(value) / 2)
    if not np.isfinite(r):
        r = abs(value) / 2
    return r


def spectral_blocks(A, *, tol_cluster: float = DEFAULTS.tol_cluster,
                    tol_det: float = DEFAULTS.tol_det, **kw) -> SpectralBlocks:
    """Per-cluster Riesz projectors on discs of radius ``gap/3`` in canonical order."""
    A = as_square(A)
    spec = spectrum_with_multiplicity(A, tol_cluster, tol_det)
    blocks = []
    for v, m in spec.pairs():
        rad = disc_radius(v, spec)
        e = resolvent_integral(A, circle_contour(v, rad), tol_det=tol_det, check_gap=False, **kw)
        tr = np.trace(e)
        if abs(tr - m) > DEFAULTS.tol_round_fail:
            raise QuadratureError(f"projector trace {tr} does not match multiplicity {m} at {v}")
        U, _, _ = np.linalg.svd(e)
        blocks.append(SpectralBlock(v, int(m), rad, e, U[:, :m]))
    return SpectralBlocks(A, spec, tuple(blocks))


def eigenspace_basis(A, S: Sector, *, blocks: SpectralBlocks | None = None,
                     eps_ang: float = DEFAULTS.eps_ang, **kw) -> SubspaceBasis:
    """Basis of ``V_S(A)``, columns grouped by eigenvalue in canonical order.

    The projector for each enclosed eigenvalue is a Riesz integral over a disc
    of radius ``min(gap/3, dist-to-boundary/2)``; the sector boundary itself is
    never integrated over.
    """
    A = as_square(A)
    if S.is_empty:
        return SubspaceBasis(np.zeros((A.shape[0], 0), dtype=complex))
    if blocks is not None:
        return blocks.basis(S, eps_ang=eps_ang)
    spec = spectrum_with_multiplicity(A)
    sb = SpectralBlocks(A, spec, tuple(
        SpectralBlock(v, int(m), 0.0, np.zeros((0, 0)), np.zeros((0, 0))) for v, m in spec.pairs()))
    cols = []
    for b in sb.select(S, eps_ang=eps_ang):
        rad = disc_radius(b.value, spec, S.boundary_distance(b.value))
        P = riesz_projector(A, circle_contour(b.value, rad), check_gap=False, **kw)
        cols.append(P.image_basis().B[:, :b.multiplicity])
    if not cols:
        return SubspaceBasis(np.zeros((A.shape[0], 0), dtype=complex))
    return SubspaceBasis(np.concatenate(cols, axis=1))


def sector_discs(A, S: Sector, eps_ang: float = DEFAULTS.eps_ang) -> Contour:
    """Union-of-discs contour around the eigenvalues of ``A`` inside ``S``."""
    spec = spectrum_with_multiplicity(A)
    sb = SpectralBlocks(as_square(A), spec, tuple(
        SpectralBlock(v, int(m), 0.0, np.zeros((0, 0)), np.zeros((0, 0))) for v, m in spec.pairs()))
    discs = [(b.value, disc_radius(b.value, spec, S.boundary_distance(b.value)))
             for b in sb.select(S, eps_ang=eps_ang)]
    return discs_contour(discs)


def generic_position(A, cut_margin: float = 1e-3, min_gap: float = 1e-3) -> bool:
    """Guard used by randomized suites: eigenvalues away from the cut and from each other."""
    vals = np.linalg.eigvals(as_square(A))
    if np.any(np.abs(vals) < 1e-8):
        return False
    if any(angle_distance(ray_angle(v), 0.0) < cut_margin for v in vals):
        return False
    if len(vals) > 1:
        d = np.abs(vals[:, None] - vals[None, :])[~np.eye(len(vals), dtype=bool)]
        if d.min() < min_gap:
            return False
    return True
