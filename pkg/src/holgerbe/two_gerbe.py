"""Holomorphic 2-gerbes at the level of cover data.

Vector bundles on ``S^4`` are given by transition functions ``t_ab`` on the
six-ball cover (frames satisfy ``f_b = f_a t_ab``, so ``t_ab = f_a^{-1} f_b``)
and optionally by local connection forms. The 2-gerbe of a bundle is
represented by degree-3 cocycles ``g_abcd``; the pentagon check and the
integer class are computed from sampled values, and ``c_2`` is integrated
independently from curvature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

import numpy as np

from .cech import (CechCocycle, SECTION_GRID, _faces, dd_details, reference_candidates,
                   section_margin)
from .config import DEFAULTS
from .cover import (GoodCover, normalize, qconj, qmul, sphere_quadrature, su2_matrix,
                    tangent_frame)
from .errors import (CertificationError, ConditioningError, DataIntegrityError, DomainError,
                     SingularMatrixError)
from .gerbe import fiber_ratio, multiply, sector_trivialization
from .sectors import unordered_sector
from .spectral import as_square, spectral_blocks


def frame_delta(p, q, tol_det: float = DEFAULTS.tol_det) -> np.ndarray:
    """The unique ``g`` with ``p g = q``."""
    p, q = as_square(p), np.asarray(q, dtype=complex)
    if abs(np.linalg.det(p)) <= tol_det:
        raise SingularMatrixError("frame p is singular")
    return np.linalg.solve(p, q)


# --------------------------------------------------------------------------
# vector bundles on the four-sphere
# --------------------------------------------------------------------------


def _im(a: np.ndarray) -> np.ndarray:
    a = np.array(a, float)
    a[..., 0] = 0.0
    return a


def _dot(a, b):
    return np.sum(a * b, axis=-1)


def instanton_north(p, v) -> np.ndarray:
    """``Im(conj(x) dx) / (1 + |x|^2)`` with ``x = q / (1 + s)``, as 2x2 matrices."""
    q, s = p[..., :4], p[..., 4:5]
    dq, ds = v[..., :4], v[..., 4:5]
    x = q / (1 + s)
    dx = (dq * (1 + s) - q * ds) / (1 + s) ** 2
    a = _im(qmul(qconj(x), dx)) / (1 + _dot(x, x))[..., None]
    return su2_matrix(a)


def instanton_south(p, v) -> np.ndarray:
    """Same formula in the chart ``y = conj(q) / (1 - s) = x^{-1}``."""
    q, s = p[..., :4], p[..., 4:5]
    dq, ds = v[..., :4], v[..., 4:5]
    y = qconj(q) / (1 - s)
    dy = (qconj(dq) * (1 - s) + qconj(q) * ds) / (1 - s) ** 2
    a = _im(qmul(qconj(y), dy)) / (1 + _dot(y, y))[..., None]
    return su2_matrix(a)


def instanton_clutching(p) -> np.ndarray:
    """``t_SN = M(x / |x|)``; on the equator ``s = 0`` this is the identity map ``S^3 -> SU(2)``."""
    q, s = p[..., :4], p[..., 4:5]
    x = q / (1 + s)
    return su2_matrix(x / np.linalg.norm(x, axis=-1, keepdims=True))


@dataclass
class VectorBundleCocycle:
    """Transition functions (and optionally connection forms) on a cover of ``S^4``.

    ``transition(a, b, pts)`` returns ``t_ab`` at the points as ``(m, n, n)``;
    ``connection(a, pts, vecs)`` returns the local connection form of ball ``a``
    evaluated on tangent vectors ``vecs`` at ``pts``.
    """

    cover: GoodCover
    n: int
    transition: Callable
    connection: Callable | None = None
    name: str = "bundle"
    params: dict = field(default_factory=dict)

    def t(self, a: int, b: int, pts) -> np.ndarray:
        pts = np.atleast_2d(pts)
        if a == b:
            return np.broadcast_to(np.eye(self.n, dtype=complex), (len(pts), self.n, self.n)).copy()
        return self.transition(a, b, pts)

    def cocycle_residual(self) -> float:
        """``max |t_ab t_bc - t_ac|`` on triple-overlap samples plus ``|t_aa - I|``."""
        worst = 0.0
        for s in self.cover.top:
            pts = self.cover.closure[s]
            for a, b, c in combinations(s, 3):
                r = self.t(a, b, pts) @ self.t(b, c, pts) - self.t(a, c, pts)
                worst = max(worst, float(np.max(np.abs(r))))
        return worst

    def gauge_residual(self, h: float = 1e-6) -> float:
        """``max |A_b - (t^{-1} A_a t + t^{-1} dt)|`` over edge-overlap samples."""
        if self.connection is None:
            raise DomainError("bundle has no connection")
        worst = 0.0
        for (a, b), pts in self.cover.edge_samples.items():
            for p in pts:
                for v in tangent_frame(p):
                    t = self.t(a, b, p)[0]
                    tp = self.t(a, b, normalize(p + h * v))[0]
                    tm = self.t(a, b, normalize(p - h * v))[0]
                    dt = (tp - tm) / (2 * h)
                    ti = np.linalg.inv(t)
                    Aa = self.connection(a, p[None], v[None])[0]
                    Ab = self.connection(b, p[None], v[None])[0]
                    worst = max(worst, float(np.max(np.abs(Ab - (ti @ Aa @ t + ti @ dt)))))
        return worst

    def whitney_sum(self, other: "VectorBundleCocycle") -> "VectorBundleCocycle":
        n1, n2 = self.n, other.n

        def block(X, Y):
            out = np.zeros(X.shape[:-2] + (n1 + n2, n1 + n2), dtype=complex)
            out[..., :n1, :n1] = X
            out[..., n1:, n1:] = Y
            return out

        tr = lambda a, b, pts: block(self.t(a, b, pts), other.t(a, b, pts))
        conn = None
        if self.connection is not None and other.connection is not None:
            conn = lambda a, pts, vecs: block(self.connection(a, pts, vecs),
                                              other.connection(a, pts, vecs))
        return VectorBundleCocycle(self.cover, n1 + n2, tr, conn, f"{self.name}+{other.name}",
                                   {"summands": [self.describe(), other.describe()]})

    def pullback(self, perm) -> "VectorBundleCocycle":
        """Pullback along the isometry permuting the ball centers by ``perm``."""
        f = cover_isometry(self.cover, perm)
        tr = lambda a, b, pts: self.t(perm[a], perm[b], np.atleast_2d(pts) @ f.T)
        conn = None
        if self.connection is not None:
            conn = lambda a, pts, vecs: self.connection(perm[a], np.atleast_2d(pts) @ f.T,
                                                        np.atleast_2d(vecs) @ f.T)
        return VectorBundleCocycle(self.cover, self.n, tr, conn, f"pullback({self.name})",
                                   {"base": self.describe(), "perm": list(map(int, perm))})

    def describe(self) -> dict:
        return {"generator": self.name, "n": self.n, "params": self.params}

    def edge_transition_samples(self) -> dict:
        return {e: self.t(e[0], e[1], pts) for e, pts in self.cover.edge_samples.items()}


def trivial_bundle(cover: GoodCover, n: int = 2) -> VectorBundleCocycle:
    tr = lambda a, b, pts: np.broadcast_to(np.eye(n, dtype=complex),
                                           (len(np.atleast_2d(pts)), n, n)).copy()
    conn = lambda a, pts, vecs: np.zeros((len(np.atleast_2d(pts)), n, n), dtype=complex)
    return VectorBundleCocycle(cover, n, tr, conn, "trivial", {"n": n})


def instanton_bundle(cover: GoodCover) -> VectorBundleCocycle:
    """The quaternionic line bundle: ball 0 (at the north pole) in the chart
    ``x = q/(1+s)``, all other balls in the chart ``y = x^{-1}``."""
    north = [a for a in range(cover.K) if cover.centers[a, 4] > 0.99]
    if north != [0]:
        raise CertificationError("instanton bundle expects ball 0 alone at the north pole")
    chart = lambda a: "N" if a == 0 else "S"

    def tr(a, b, pts):
        pts = np.atleast_2d(pts)
        ca, cb = chart(a), chart(b)
        if ca == cb:
            return np.broadcast_to(np.eye(2, dtype=complex), (len(pts), 2, 2)).copy()
        t_sn = instanton_clutching(pts)
        return t_sn if (ca, cb) == ("S", "N") else np.conj(np.swapaxes(t_sn, -1, -2))

    def conn(a, pts, vecs):
        pts, vecs = np.atleast_2d(pts), np.atleast_2d(vecs)
        return instanton_north(pts, vecs) if chart(a) == "N" else instanton_south(pts, vecs)

    return VectorBundleCocycle(cover, 2, tr, conn, "instanton", {})


def torus_bundle(cover: GoodCover, n: int = 2, seed: int = 0, amplitude: float = 0.05,
                 offsets=None) -> VectorBundleCocycle:
    """``t_ab = D_a^{-1} D_b`` with ``D_a`` diagonal unitary; the bundle is trivial
    but the transitions sweep a fixed maximal torus.

    Default phase offsets are quarter turns plus small noise, so the eigenangles
    of every ``t_ab`` cluster near ``0`` and ``+-pi/2`` and sections exist.
    """
    rng = np.random.default_rng(seed)
    K = cover.K
    if offsets is None:
        offsets = np.pi / 2 * rng.integers(0, 2, (K, n)) + rng.uniform(-0.05, 0.05, (K, n))
    off = np.asarray(offsets, float)
    W = rng.standard_normal((K, n, cover.dim + 1)) * amplitude

    def phase(a, pts):
        return off[a][None, :] + np.atleast_2d(pts) @ W[a].T

    def tr(a, b, pts):
        ph = phase(b, pts) - phase(a, pts)
        out = np.zeros((len(ph), n, n), dtype=complex)
        idx = np.arange(n)
        out[:, idx, idx] = np.exp(1j * ph)
        return out

    def conn(a, pts, vecs):
        # A_a = i d(phase_a) gives A_b = t^-1 A_a t + t^-1 dt for t_ab = D_a^-1 D_b
        dph = np.atleast_2d(vecs) @ W[a].T
        out = np.zeros((len(dph), n, n), dtype=complex)
        idx = np.arange(n)
        out[:, idx, idx] = 1j * dph
        return out

    return VectorBundleCocycle(cover, n, tr, conn, "torus",
                               {"n": n, "seed": seed, "amplitude": amplitude})


def cover_isometry(cover: GoodCover, perm) -> np.ndarray:
    """Orthogonal map ``f`` with ``f(c_a) = c_{perm[a]}``; raises if none exists."""
    C = cover.centers
    P = C[list(perm)]
    f = np.linalg.lstsq(C, P, rcond=None)[0].T
    if np.max(np.abs(C @ f.T - P)) > 1e-10 or np.max(np.abs(f @ f.T - np.eye(len(f)))) > 1e-10:
        raise DomainError(f"permutation {perm} is not induced by an isometry")
    return f


def permutation_sign(perm) -> int:
    perm = list(perm)
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            sign *= (-1) ** (length - 1)
    return sign


def pullback_cocycle_function(cover: GoodCover, fn: Callable, perm) -> Callable:
    """``(f^* g)_t(m) = g_{perm(t)}(f(m))`` with the orientation sign of sorting ``perm(t)``."""
    f = cover_isometry(cover, perm)

    def out(t, pts):
        img = [perm[i] for i in t]
        order = sorted(range(len(img)), key=lambda i: img[i])
        sgn = permutation_sign(order)
        vals = fn(tuple(sorted(img)), np.atleast_2d(pts) @ f.T)
        return vals if sgn > 0 else 1 / vals

    return out


# --------------------------------------------------------------------------
# pulled-back canonical gerbe on a bundle
# --------------------------------------------------------------------------


@dataclass
class PullbackData:
    simplex: tuple
    points: np.ndarray
    matrices: dict        # edge -> (m, n, n) transition samples
    z: dict               # vertex -> section value
    fibers: dict          # (edge, (i, j)) -> list of LineFiberElement over the edge matrix
    scalars: dict         # edge -> (m,) multiplication scalars g_{z_a z_b z_c}(t_edge)
    references: dict


def bundle_sections(E: VectorBundleCocycle, delta: float = DEFAULTS.sec_margin,
                    spread: bool = False) -> dict:
    """Per ball, a grid angle avoiding every eigenray of every ``t_e`` whose edge
    shares a 2-simplex with the ball (all three sections enter the sectors of
    each edge of a triangle).

    The max-margin angle is used unless ``spread``, which rotates ball ``a``
    through the admissible angles so that the sectors between sections are not
    all empty.
    """
    cover = E.cover
    eig_by_edge = {e: np.mod(np.angle(np.linalg.eigvals(E.t(e[0], e[1], pts))), 2 * np.pi).ravel()
                   for e, pts in cover.edge_samples.items()}
    z = {}
    for a in range(cover.K):
        eig = [v for e, v in eig_by_edge.items()
               if tuple(sorted(set(e) | {a})) in cover.simplices.get(len(set(e) | {a}) - 1, [])]
        eig = np.concatenate(eig) if eig else np.zeros(0)
        m = np.array([section_margin(t, eig) for t in SECTION_GRID])
        ok = [i for i in np.argsort(-m, kind="stable") if m[i] > delta]
        if not ok:
            raise CertificationError(f"section search failed on ball {a}")
        i = ok[a % len(ok)] if spread else ok[0]
        z[a] = complex(np.exp(1j * SECTION_GRID[i]))
    return z


def pullback_gerbe_data(E: VectorBundleCocycle, simplex: tuple, points=None,
                        z: dict | None = None,
                        frame_margin: float = DEFAULTS.frame_margin) -> PullbackData:
    """Fibers and multiplication scalars of the pulled-back gerbe over ``simplex``.

    For every edge ``e`` of the 2-simplex ``(a, b, c)`` the gerbe is evaluated
    over the matrices ``t_e(m) = delta(f_a(m), f_b(m))`` at the section values
    ``z_a, z_b, z_c``: frames of ``L_{t_e, z_i, z_j}`` come from annular-sector
    trivializations with coordinate (or mixed) reference frames, and the scalar
    is ``m(sigma_ab, sigma_bc) = g sigma_ac``.
    """
    cover = E.cover
    a, b, c = simplex
    if tuple(sorted(simplex)) not in cover.simplices[2]:
        raise DomainError(f"{simplex} is not a 2-simplex of the nerve")
    if points is None:
        points = np.vstack([cover.base_points[simplex]] +
                           [cover.closure[s] for s in cover.cofaces(simplex)[:1]])
    points = np.atleast_2d(points)
    z = bundle_sections(E) if z is None else z
    zs = {v: z[v] for v in simplex}
    mats, fibers, scalars, refs = {}, {}, {}, {}
    for e in combinations(simplex, 2):
        M = E.t(e[0], e[1], points)
        mats[e] = M
        mods = np.abs(np.linalg.eigvals(M))
        r, R = 0.5 * float(mods.min()), 2.0 * float(mods.max())
        frames = {}
        for i, j in combinations(simplex, 2):
            S = unordered_sector(zs[i], zs[j], r, R)
            ks = {int(sum(1 for v in np.linalg.eigvals(A) if S.angular_margin(v) > 0)) for A in M}
            for A in M:
                for v in np.linalg.eigvals(A):
                    if abs(S.angular_margin(v)) < 1e-6:
                        raise ConditioningError(f"eigenray of t_{e} meets section {i} or {j}")
            if len(ks) != 1:
                raise CertificationError(f"eigenvalue count in S[z_{i}, z_{j}] varies over the samples")
            k = ks.pop()
            probe = sector_trivialization(M[0], zs[i], zs[j], r, R, np.zeros((E.n, k)))
            best, best_vol = probe.reference, 1.0
            if k:
                P = [probe.projector(A) for A in M]
                best_vol = -1.0
                for Rf in reference_candidates(E.n, k):
                    sR = np.prod(np.linalg.svd(Rf, compute_uv=False))
                    v = min(np.prod(np.linalg.svd(p_ @ Rf, compute_uv=False)) /
                            (sR * np.linalg.norm(p_, 2) ** k) for p_ in P)
                    if v > best_vol:
                        best, best_vol = Rf, v
            if best_vol < frame_margin:
                raise CertificationError(f"no reference frame for t_{e} on S[z_{i}, z_{j}]")
            frames[(i, j)] = sector_trivialization(M[0], zs[i], zs[j], r, R, best)
            refs[(e, (i, j))] = best
        vals = []
        for idx, A in enumerate(M):
            blocks = spectral_blocks(A)
            fib = {ij: T.fiber(A, zs[ij[0]], zs[ij[1]], blocks) for ij, T in frames.items()}
            for ij, fe in fib.items():
                fibers.setdefault((e, ij), []).append(fe)
            lhs = multiply(fib[(a, b)], fib[(b, c)])
            vals.append(complex(fiber_ratio(lhs, fib[(a, c)])))
        scalars[e] = np.array(vals)
    return PullbackData(tuple(simplex), points, mats, zs, fibers, scalars, refs)


def diagonal_scalar_oracle(d: np.ndarray, za: complex, zb: complex, zc: complex) -> complex:
    """Closed form of the multiplication scalar for a diagonal matrix with
    coordinate reference frames: the sign relating coordinate-index order to
    eigenvalue order on each coordinate subset."""
    from .sectors import Sector, in_sector, ray_angle, ray_leq
    d = np.asarray(d, dtype=complex)
    order = sorted(range(len(d)), key=lambda i: (ray_angle(d[i]), abs(d[i]), d[i].real, d[i].imag))

    def members(S):
        return [i for i in range(len(d)) if in_sector(S, d[i])]

    def lam(x):  # coordinate indices of V_{S(1,x)} in eigenvalue order
        S = Sector(0.0, ray_angle(x))
        return [i for i in order if i in members(S)]

    def sector_coords(x, y):  # coordinate frame of S[x,y] sorted by index
        return sorted(members(unordered_sector(x, y)))

    def parity(seq):
        # sign of the permutation sorting ``seq``
        return permutation_sign(sorted(range(len(seq)), key=lambda i: seq[i]))

    def element(x, y):
        # sigma_xy in terms of coordinate wedges: returns (u_indices, u_coeff, a_indices, a_coeff)
        w = sector_coords(x, y)
        if ray_leq(y, x):
            v = lam(y)
            u = v + w
            return u, 1.0, v, 1.0
        v = lam(x)
        return v, 1.0, v + w, 1.0

    def coord_value(idx):
        # value of e_{idx[0]} ^ ... relative to the eigen-ordered wedge of the same set
        return parity(idx) * parity(sorted(idx, key=lambda i: order.index(i)))

    def ratio(p, q):
        (up, _, ap, _), (uq, _, aq, _) = p, q
        return coord_value(up) / coord_value(uq) * coord_value(aq) / coord_value(ap)

    # m(sigma_ab, sigma_bc) = pair(alpha_ab, u_bc) * u_ab (x) alpha_bc
    p, q, r = element(za, zb), element(zb, zc), element(za, zc)
    s = coord_value(q[0]) / coord_value(p[2])
    prod = (p[0], 1.0, q[2], 1.0)
    return complex(s * ratio(prod, r))


# --------------------------------------------------------------------------
# associators, pentagon and class
# --------------------------------------------------------------------------


@dataclass
class AssociatorData:
    """Filler scalars ``psi`` on the tetrahedra of the nerve of a cover of ``S^4``,
    sampled on every 4-simplex: ``values[s]`` has one row per face of ``s``."""

    values: dict

    @classmethod
    def from_cocycle(cls, g: CechCocycle) -> "AssociatorData":
        if g.degree != 3:
            raise DomainError("associator data comes from degree-3 data")
        return cls({s: np.asarray(v) for s, v in g.closure.items()})

    @classmethod
    def from_function(cls, cover: GoodCover, fn: Callable) -> "AssociatorData":
        return cls({s: np.stack([fn(t, cover.closure[s]) for t in _faces(s)]) for s in cover.top})

    def perturbed(self, tet: tuple, factor: float) -> "AssociatorData":
        out = {}
        for s, rows in self.values.items():
            rows = np.array(rows, dtype=complex)
            for i, t in enumerate(_faces(s)):
                if t == tuple(tet):
                    rows[i] = rows[i] * factor
            out[s] = rows
        return AssociatorData(out)


def pentagon_verify(assoc: AssociatorData, cover: GoodCover | None = None) -> float:
    """``max |psi_bcde psi_abde psi_abcd / (psi_acde psi_abce) - 1|`` over all 4-simplices."""
    if cover is not None:
        missing = [s for s in cover.top if s not in assoc.values]
        if missing:
            raise DataIntegrityError(f"missing filler data on {missing}")
    worst = 0.0
    for s, rows in assoc.values.items():
        rows = np.asarray(rows, dtype=complex)
        if rows.shape[0] != 5:
            raise DataIntegrityError(f"4-simplex {s} needs five filler rows, got {rows.shape[0]}")
        if np.any(np.abs(rows) == 0):
            raise DataIntegrityError("nonvanishing violated")
        lhs = rows[0] * rows[2] * rows[4]
        rhs = rows[1] * rows[3]
        worst = max(worst, float(np.max(np.abs(lhs / rhs - 1))))
    return worst


def dd4_integer(cover: GoodCover, g: CechCocycle, **kw) -> int:
    if cover.dim != 4 or g.degree != 3:
        raise DomainError("dd4_integer needs a degree-3 cocycle on a cover of S^4")
    return dd_details(cover, g, **kw).value


# --------------------------------------------------------------------------
# Chern-Weil
# --------------------------------------------------------------------------


@dataclass
class ChernWeilResult:
    value: float
    rounding: float
    gauge_residual: float
    nodes: int


def _chart_point(p, E4, u):
    y = p + u @ E4
    return y / np.linalg.norm(y)


def _chart_tangent(p, E4, u, i):
    y = p + u @ E4
    nr = np.linalg.norm(y)
    phi = y / nr
    return (E4[i] - phi * (phi @ E4[i])) / nr


def curvature_components(conn: Callable, a: int, p: np.ndarray, h: float = 1e-4) -> np.ndarray:
    """``F_ij`` in an oriented orthonormal frame at ``p`` via the gnomonic chart
    ``u -> (p + sum u_i e_i) / |.|`` and central differences of ``A_j``."""
    E4 = tangent_frame(p)
    d = len(E4)
    zero = np.zeros(d)

    def A(u, j):
        return conn(a, _chart_point(p, E4, u)[None], _chart_tangent(p, E4, u, j)[None])[0]

    A0 = [A(zero, j) for j in range(d)]
    dA = np.empty((d, d) + A0[0].shape, dtype=complex)  # dA[i, j] = d_i A_j
    for i in range(d):
        step = np.zeros(d)
        step[i] = h
        for j in range(d):
            dA[i, j] = (A(step, j) - A(-step, j)) / (2 * h)
    F = np.empty_like(dA)
    for i in range(d):
        for j in range(d):
            F[i, j] = dA[i, j] - dA[j, i] + A0[i] @ A0[j] - A0[j] @ A0[i]
    return F


def c2_density(F: np.ndarray) -> complex:
    """Coefficient of ``e1^e2^e3^e4`` in ``(tr(F^F) - trF ^ trF) / 8 pi^2``."""
    tr = lambda X: np.trace(X)
    t = np.array([[tr(F[i, j]) for j in range(4)] for i in range(4)])
    ff = tr(F[0, 1] @ F[2, 3] - F[0, 2] @ F[1, 3] + F[0, 3] @ F[1, 2])
    tt = t[0, 1] * t[2, 3] - t[0, 2] * t[1, 3] + t[0, 3] * t[1, 2]
    return 2 * (ff - tt) / (8 * np.pi ** 2)


def chern_weil_c2(E: VectorBundleCocycle, *, nodes: int = 8, h: float = 1e-4,
                  gauge_tol: float = 1e-6) -> ChernWeilResult:
    """Integral over ``S^4`` of the second Chern form, glued by the partition of unity."""
    if E.connection is None:
        raise DomainError("bundle has no connection")
    cover = E.cover
    if cover.dim != 4:
        raise DomainError("c2 integration needs a cover of S^4")
    gres = E.gauge_residual()
    if gres > gauge_tol:
        raise ConditioningError(f"connection not gauge compatible (residual {gres:.2e})")
    pts, w = sphere_quadrature(4, nodes)
    rho = cover.partition_of_unity(pts)
    total = 0.0
    for p, wt, r in zip(pts, w, rho):
        dens = 0.0
        for a in np.flatnonzero(r > 0):
            dens += r[a] * c2_density(curvature_components(E.connection, int(a), p, h)).real
        total += wt * dens
    total *= cover.orientation
    return ChernWeilResult(float(total), float(abs(total - round(total))), gres, len(w))


def synthesize_class_cocycle(cover: GoodCover, k: int) -> CechCocycle:
    """Degree-3 cocycle of class ``k`` from collation of ``k`` times the unit volume form."""
    from .cech import collate_form_to_cocycle, normalized_volume_form
    return collate_form_to_cocycle(cover, normalized_volume_form(cover.dim, k), 3)
