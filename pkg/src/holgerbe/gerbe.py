"""The canonical gerbe on GL(n, C).

Points of ``Y`` are pairs ``(A, z)`` with ``z`` off the positive reals and not
an eigenray of ``A``. Over ``(A, x, y)`` the line is
``L = lambda_A(x) (x) lambda_A(y)^*`` with ``lambda_A(x) = Lambda^top V_{S(1,x)}(A)``,
and the multiplication is ``m(u (x) a, v (x) b) = a(v) u (x) b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.stats import qmc

from .config import DEFAULTS
from .errors import CertificationError, DomainError, FiberMismatchError
from .exterior import DualTopWedge, TopWedge, concat, pair, wedge_ratio
from .sectors import (Contour, Sector, angle_distance, discs_contour, on_cut, ray_angle, ray_leq,
                      same_ray, sector_boundary_contour, unordered_sector)
from .spectral import (SpectralBlocks, as_square, disc_radius, projector_derivative,
                       resolvent_integral, spectral_blocks, spectrum_with_multiplicity)


def in_Y(A, z: complex, eps_ang: float = DEFAULTS.eps_ang,
         tol_det: float = DEFAULTS.tol_det) -> bool:
    A = as_square(A)
    z = complex(z)
    if z == 0 or on_cut(z, eps_ang):
        return False
    if abs(np.linalg.det(A)) <= tol_det:
        return False
    t = ray_angle(z)
    return all(angle_distance(t, ray_angle(v)) > eps_ang for v in np.linalg.eigvals(A))


def _require_Y(A, z, eps_ang=DEFAULTS.eps_ang):
    if not in_Y(A, z, eps_ang):
        raise DomainError(f"({z}) is not a point of Y over the given matrix")


def _blocks(A, blocks: SpectralBlocks | None) -> SpectralBlocks:
    return blocks if blocks is not None else spectral_blocks(A)


def lambda_basis(A, x: complex, blocks: SpectralBlocks | None = None) -> TopWedge:
    """Canonically ordered top wedge of ``V_{S(1,x)}(A)``."""
    A = as_square(A)
    _require_Y(A, x)
    b = _blocks(A, blocks)
    return TopWedge(b.basis(Sector(0.0, ray_angle(x))).B, 1.0)


# --------------------------------------------------------------------------
# fibers and multiplication
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LineFiberElement:
    """``u (x) alpha`` in ``L_{A,x,y}``."""

    A: np.ndarray
    x: complex
    y: complex
    u: TopWedge
    alpha: DualTopWedge

    def scale(self, s: complex) -> "LineFiberElement":
        return LineFiberElement(self.A, self.x, self.y, self.u.scale(s), self.alpha)


def unit(A, y: complex, blocks: SpectralBlocks | None = None) -> LineFiberElement:
    """The element ``v (x) v^*`` of ``L_{A,y,y}``, independent of ``v``."""
    v = lambda_basis(A, y, blocks)
    return LineFiberElement(as_square(A), complex(y), complex(y), v, v.dual())


def _same_matrix(A, B) -> bool:
    return A is B or (A.shape == B.shape and np.allclose(A, B, rtol=0, atol=1e-14))


def multiply(p: LineFiberElement, q: LineFiberElement) -> LineFiberElement:
    """``m(u (x) a, v (x) b) = a(v) u (x) b``."""
    if not _same_matrix(p.A, q.A):
        raise FiberMismatchError("fibers lie over different matrices")
    if not same_ray(p.y, q.x):
        raise FiberMismatchError(f"middle points differ: {p.y} vs {q.x}")
    s = pair(p.alpha, q.u)
    return LineFiberElement(p.A, p.x, q.y, p.u.scale(s), q.alpha)


def fiber_ratio(p: LineFiberElement, q: LineFiberElement) -> complex:
    """The scalar ``r`` with ``p = r q`` in the same fiber."""
    if not (_same_matrix(p.A, q.A) and same_ray(p.x, q.x) and same_ray(p.y, q.y)):
        raise FiberMismatchError("elements lie in different fibers")
    return wedge_ratio(p.u, q.u) * wedge_ratio(q.alpha.w, p.alpha.w)


def random_fiber_element(A, x, y, rng: np.random.Generator,
                         blocks: SpectralBlocks | None = None) -> LineFiberElement:
    """Element of ``L_{A,x,y}`` with randomly re-based representatives."""
    A = as_square(A)
    b = _blocks(A, blocks)

    def rebase(w: TopWedge) -> TopWedge:
        k = w.k
        T = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k)) + 2 * np.eye(k)
        c = complex(rng.standard_normal(), rng.standard_normal()) + 0.5
        return TopWedge(w.B @ T, c)

    u = rebase(lambda_basis(A, x, b))
    a = rebase(lambda_basis(A, y, b))
    return LineFiberElement(A, complex(x), complex(y), u, a.dual())


def fiber_from_sector_frame(A, x, y, w: TopWedge,
                            blocks: SpectralBlocks | None = None) -> LineFiberElement:
    """Image of ``w`` in ``Lambda^top V_{S[x,y]}(A)`` under the canonical identifications.

    For ``x >= y`` this is ``L_{x,y} = Lambda^top V_{S(y,x)}``, realized as
    ``(v ^ w) (x) v^*`` with ``v`` a frame of ``lambda_A(y)``. For ``x < y`` the
    fiber is the dual line and ``w`` maps to ``v (x) (v ^ w)^*``. Neither depends
    on ``v``.
    """
    A = as_square(A)
    b = _blocks(A, blocks)
    if ray_leq(y, x):
        v = lambda_basis(A, y, b)
        return LineFiberElement(A, complex(x), complex(y), concat(v, w), v.dual())
    v = lambda_basis(A, x, b)
    return LineFiberElement(A, complex(x), complex(y), v, concat(v, w).dual())


@dataclass(frozen=True)
class Identification:
    """Which canonical identification applies to ``L_{A,x,y}``."""

    kind: str            # "trivial", "wedge-of-sector" or "dual-of-swap"
    sector: Sector
    dimension: int
    frame: TopWedge      # a frame of Lambda^top V_{S[x,y]}(A)
    element: LineFiberElement  # image of ``frame`` in L_{A,x,y}


def canonical_identify(A, x, y, blocks: SpectralBlocks | None = None) -> Identification:
    A = as_square(A)
    _require_Y(A, x)
    _require_Y(A, y)
    b = _blocks(A, blocks)
    S = unordered_sector(x, y)
    B = b.basis(S).B
    frame = TopWedge(B, 1.0)
    elem = fiber_from_sector_frame(A, x, y, frame, b)
    if B.shape[1] == 0:
        kind = "trivial"
    elif ray_leq(y, x):
        kind = "wedge-of-sector"
    else:
        kind = "dual-of-swap"
    return Identification(kind, S, B.shape[1], frame, elem)


def swap_dual(p: LineFiberElement) -> LineFiberElement:
    """The element of ``L_{y,x}`` dual to ``p`` (pairs with ``p`` to 1)."""
    return LineFiberElement(p.A, p.y, p.x, p.alpha.w, p.u.dual())


# --------------------------------------------------------------------------
# local trivializations
# --------------------------------------------------------------------------

def _unit_ball_points(dim: int, count: int, seed: int) -> np.ndarray:
    """Deterministic scrambled-Sobol points filling the unit ball of R^dim."""
    if count <= 0:
        return np.zeros((0, dim))
    u = qmc.Sobol(dim, scramble=True, seed=seed).random(count)
    z = 2 * u - 1
    nrm = np.linalg.norm(z, axis=1)
    nrm[nrm == 0] = 1
    return z / nrm[:, None] * np.abs(z).max(axis=1)[:, None]


@dataclass
class Trivialization:
    """A frame of ``Lambda^top V_O`` near a base point ``(A0, x0, y0)``.

    ``frame(A) = gauge(A) * Lambda^top(e_A R)`` where ``e_A`` is the Riesz
    projector of the domain ``O`` and ``R`` is a fixed reference basis. The
    optional gauge is ``exp(sum(G * A))``, holomorphic with known logarithmic
    derivative.
    """

    A0: np.ndarray
    x0: complex
    y0: complex
    contour: Contour
    reference: np.ndarray
    kind: str = "discs"
    discs: tuple = ()
    sector: Sector | None = None
    rho: float = np.inf        # matrix radius of the neighborhood (Frobenius norm)
    phi: float = np.pi         # angular radius for x and y
    gauge: np.ndarray | None = None
    center_volume: float = 1.0
    certificate: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.A0.shape[0]

    @property
    def k(self) -> int:
        return self.reference.shape[1]

    def projector(self, A) -> np.ndarray:
        A = as_square(A)
        if self.k == 0:
            return np.zeros_like(A)
        return resolvent_integral(A, self.contour, check_gap=False)

    def gauge_value(self, A) -> complex:
        if self.gauge is None:
            return 1.0
        return complex(np.exp(np.sum(self.gauge * A)))

    def frame(self, A) -> TopWedge:
        A = as_square(A)
        g = self.gauge_value(A)
        if self.k == 0:
            return TopWedge.scalar(self.n, g)
        return TopWedge(self.projector(A) @ self.reference, g)

    def normalized_volume(self, A) -> float:
        """``vol(e_A R) / (vol(R) ||e_A||^k)``, in ``[0, 1]``; 1 for ``k = 0``."""
        if self.k == 0:
            return 1.0
        e = self.projector(A)
        F = e @ self.reference
        sF = np.linalg.svd(F, compute_uv=False)
        sR = np.prod(np.linalg.svd(self.reference, compute_uv=False))
        if sR == 0:
            return 0.0
        return float(np.prod(sF) / (sR * np.linalg.norm(e, 2) ** self.k))

    def fiber(self, A, x=None, y=None, blocks: SpectralBlocks | None = None) -> LineFiberElement:
        x = self.x0 if x is None else x
        y = self.y0 if y is None else y
        return fiber_from_sector_frame(A, x, y, self.frame(A), blocks)

    def contains(self, A, x=None, y=None) -> bool:
        A = as_square(A)
        ok = np.linalg.norm(A - self.A0) < self.rho
        for z, z0 in ((x, self.x0), (y, self.y0)):
            if z is not None:
                ok = ok and angle_distance(ray_angle(z), ray_angle(z0)) < self.phi
        return bool(ok)

    def frame_connection(self, A, dA) -> complex:
        """Connection one-form of ``frame`` evaluated on the direction ``dA``."""
        A = as_square(A)
        dA = np.asarray(dA, dtype=complex)
        dg = 0j if self.gauge is None else complex(np.sum(self.gauge * dA))
        if self.k == 0:
            return dg
        e = self.projector(A)
        F = e @ self.reference
        de = projector_derivative(A, dA, self.contour, check_gap=False)
        M = np.linalg.lstsq(F, e @ de @ self.reference, rcond=None)[0]
        return complex(np.trace(M)) + dg

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "center": {"n": self.n, "re": self.A0.real.tolist(), "im": self.A0.imag.tolist()},
            "x0": [self.x0.real, self.x0.imag],
            "y0": [self.y0.real, self.y0.imag],
            "discs": [{"center": [c.real, c.imag], "radius": r} for c, r in self.discs],
            "contour": self.contour.to_list(),
            "reference": {"re": self.reference.real.tolist(), "im": self.reference.imag.tolist()},
            "radii": {"matrix": self.rho if np.isfinite(self.rho) else None, "angle": self.phi},
        }
        if self.sector is not None:
            s = self.sector
            d["sector"] = {"phi_start": s.phi_start, "delta": s.delta, "r": s.r,
                           "R": s.R if np.isfinite(s.R) else None}
        if self.gauge is not None:
            d["gauge"] = {"re": self.gauge.real.tolist(), "im": self.gauge.imag.tolist()}
        return d


def _neighborhood_ok(T: Trivialization, rho: float, phi: float, samples: int, seed: int,
                     ratio: float) -> tuple[bool, float]:
    n = T.n
    pts = _unit_ball_points(2 * n * n + 2, samples, seed)
    worst = np.inf
    for p in pts:
        dA = (p[:n * n] + 1j * p[n * n:2 * n * n]).reshape(n, n) * rho
        A = T.A0 + dA
        x = abs(T.x0) * np.exp(1j * (ray_angle(T.x0) + p[-2] * phi))
        y = abs(T.y0) * np.exp(1j * (ray_angle(T.y0) + p[-1] * phi))
        if not (in_Y(A, x) and in_Y(A, y)):
            return False, 0.0
        spec = spectrum_with_multiplicity(A)
        if T.contour.is_empty:
            inside = 0
        else:
            dist = min(T.contour.distance(v) for v in spec.values)
            if dist <= DEFAULTS.tol_gap:
                return False, 0.0
            inside = sum(m for v, m in spec.pairs() if _inside_domain(T, v))
        if inside != spec.count_in(unordered_sector(x, y)):
            return False, 0.0
        vol = T.normalized_volume(A)
        worst = min(worst, vol / T.center_volume)
        if vol < ratio * T.center_volume:
            return False, worst
    return True, worst


def _inside_domain(T: Trivialization, v: complex) -> bool:
    if T.kind == "discs":
        return any(abs(v - c) < r for c, r in T.discs)
    from .sectors import in_sector
    return in_sector(T.sector, v)


def local_trivialization(A0, x0, y0, *, reference=None, radius_scale: float = 1.0,
                         gauge=None, certify: bool = True, samples: int = 64, seed: int = 0,
                         volume_ratio: float = 0.5, min_radius: float = 1e-6,
                         rho: float | None = None, phi: float | None = None) -> Trivialization:
    """Disc-domain trivialization around ``(A0, x0, y0)`` with a certified neighborhood.

    ``O`` is a union of discs around the eigenvalues of ``A0`` in ``S[x0, y0]``
    of radius ``radius_scale * min(gap/3, dist-to-boundary/2)``. The reference
    defaults to an orthonormal basis of ``V_O(A0)``. Neighborhood radii start
    from the spectral margins of ``A0`` and are halved until every sample passes:
    ``(A, x), (A, y)`` in ``Y``, ``V_O(A) = V_{S[x,y]}(A)`` by eigenvalue count,
    and normalized frame volume at least ``volume_ratio`` of its center value.
    """
    A0 = as_square(A0)
    x0, y0 = complex(x0), complex(y0)
    _require_Y(A0, x0)
    _require_Y(A0, y0)
    spec = spectrum_with_multiplicity(A0)
    S = unordered_sector(x0, y0)
    inside = [(v, m) for v, m in spec.pairs() if in_sector_margin(S, v)]
    discs = tuple((v, radius_scale * disc_radius(v, spec, S.boundary_distance(v))) for v, _ in inside)
    contour = discs_contour(discs)
    k = int(sum(m for _, m in inside))
    if reference is None:
        if k == 0:
            reference = np.zeros((A0.shape[0], 0), dtype=complex)
        else:
            e0 = resolvent_integral(A0, contour, check_gap=False)
            reference = np.linalg.svd(e0)[0][:, :k]
    reference = np.asarray(reference, dtype=complex)
    if reference.shape != (A0.shape[0], k):
        raise DomainError(f"reference must have shape {(A0.shape[0], k)}, got {reference.shape}")
    G = None if gauge is None else np.asarray(gauge, dtype=complex)
    T = Trivialization(A0, x0, y0, contour, reference, "discs", discs, S, gauge=G)
    T.center_volume = T.normalized_volume(A0)
    if T.center_volume <= 0:
        raise CertificationError("reference frame vanishes at the base point")
    # initial radii from spectral margins of A0
    vals = spec.values
    if rho is None:
        margins = [T.contour.distance(v) for v in vals] if discs else []
        margins += [S.boundary_distance(v) for v in vals]
        margins += [abs(v) for v in vals]
        rho = 0.25 * min(margins)
    if phi is None:
        rays = [ray_angle(v) for v in vals] + [0.0]
        phi = 0.5 * min(angle_distance(ray_angle(z), a) for z in (x0, y0) for a in rays)
    if not certify:
        T.rho, T.phi = rho, phi
        return T
    while True:
        ok, worst = _neighborhood_ok(T, rho, phi, samples, seed, volume_ratio)
        if ok:
            T.rho, T.phi = rho, phi
            T.certificate = {"samples": samples, "min_volume_ratio": worst}
            return T
        rho, phi = rho / 2, phi / 2
        if rho < min_radius:
            raise CertificationError("cannot certify a neighborhood above the minimum radius")


def in_sector_margin(S: Sector, v: complex, eps_ang: float = DEFAULTS.eps_ang) -> bool:
    from .sectors import in_sector
    return in_sector(S, v, eps_ang)


def sector_trivialization(A0, x0, y0, r: float, R: float, reference,
                          gauge=None) -> Trivialization:
    """Trivialization whose domain is the bounded annular sector ``S^{r,R}[x0, y0]``.

    Valid wherever no eigenvalue lies on the boundary of that sector.
    """
    A0 = as_square(A0)
    S = unordered_sector(x0, y0, r, R)
    contour = Contour(()) if S.is_empty else sector_boundary_contour(S)
    reference = np.asarray(reference, dtype=complex)
    G = None if gauge is None else np.asarray(gauge, dtype=complex)
    T = Trivialization(A0, complex(x0), complex(y0), contour, reference, "sector", (), S, gauge=G)
    T.center_volume = T.normalized_volume(A0)
    return T


def transition_scalar(T1: Trivialization, T2: Trivialization, A) -> complex:
    """``wedge_ratio(frame_1(A), frame_2(A))``; holomorphic and nonvanishing on the overlap."""
    return wedge_ratio(T1.frame(A), T2.frame(A))


# --------------------------------------------------------------------------
# holomorphy and connection
# --------------------------------------------------------------------------

def matrix_units(n: int) -> list[np.ndarray]:
    out = []
    for i in range(n):
        for j in range(n):
            E = np.zeros((n, n), dtype=complex)
            E[i, j] = 1
            out.append(E)
    return out


def cr_residual(f: Callable[[np.ndarray], complex], A, h: float,
                directions: Sequence[np.ndarray] | None = None,
                n_random: int = 2, seed: int = 0) -> float:
    """Largest estimated ``|d f / d conj(t)|`` along ``t -> A + t E``.

    With ``D1 = (f(A+hE) - f(A-hE)) / 2h`` and ``D2 = (f(A+ihE) - f(A-ihE)) / 2h``
    the antiholomorphic derivative is ``(D1 + i D2) / 2``. For holomorphic
    ``f`` this is ``h^2 |g'''| / 6 + O(h^4)``.
    """
    A = as_square(A)
    if directions is None:
        rng = np.random.default_rng(seed)
        directions = matrix_units(A.shape[0])
        for _ in range(n_random):
            E = rng.standard_normal(A.shape) + 1j * rng.standard_normal(A.shape)
            directions.append(E / np.linalg.norm(E))
    worst = 0.0
    for E in directions:
        d1 = (f(A + h * E) - f(A - h * E)) / (2 * h)
        d2 = (f(A + 1j * h * E) - f(A - 1j * h * E)) / (2 * h)
        worst = max(worst, abs(d1 + 1j * d2) / 2)
    return float(worst)


def connection_one_form(T: Trivialization, A, dA) -> complex:
    """``theta(dA) = tr M`` where ``e_A (d e_A) R = F M`` and ``F = e_A R``."""
    return T.frame_connection(A, dA)


def fiber_connection(T: Trivialization, A, dA, x=None, y=None) -> complex:
    """Connection form of ``T.fiber``: that of the frame, negated in the dual case ``x < y``."""
    x = T.x0 if x is None else x
    y = T.y0 if y is None else y
    th = T.frame_connection(A, dA)
    return th if ray_leq(y, x) else -th
