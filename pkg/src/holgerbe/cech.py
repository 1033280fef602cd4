"""Cech cocycles of the canonical gerbe on test cycles and their integer classes.

A test cycle is a map from ``S^3`` into ``GL(n, C)``. Over a good cover we
choose constant sections ``z_alpha``, frames ``sigma_{alpha beta}`` of
``L_{A, z_alpha, z_beta}`` on pairwise overlaps, and read off
``m(sigma_ab, sigma_bc) = g_abc sigma_ac``. The integer class comes from a
continuous branch of ``log g`` on every face and the integer cochain
``(1/2 pi i) delta log g`` paired with the fundamental cycle of the nerve.
The same Bockstein works one degree up for 2-gerbes on ``S^4``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

import numpy as np

from .config import DEFAULTS
from .cover import GoodCover, ball_points, qmul, qpow, sphere_quadrature, su2_matrix, tangent_frame
from .errors import (CertificationError, DataIntegrityError, DomainError, RoundingError,
                     SamplingError)
from .gerbe import fiber_connection, fiber_ratio, multiply, sector_trivialization, swap_dual
from .sectors import TWO_PI, unordered_sector
from .spectral import spectral_blocks

# --------------------------------------------------------------------------
# test cycles
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Cycle:
    """``S^3 -> GL(n, C)``: ``q -> M(q^power)`` placed in the upper-left block of ``I_n``."""

    power: int = 1
    n: int = 2
    name: str = "su2"

    def matrix(self, q) -> np.ndarray:
        q = np.asarray(q, float)
        M = su2_matrix(qpow(q, self.power))
        if self.n == 2:
            return M
        if self.n == 1:
            return np.linalg.det(M)[..., None, None]
        out = np.zeros(q.shape[:-1] + (self.n, self.n), dtype=complex)
        out[..., :2, :2] = M
        for i in range(2, self.n):
            out[..., i, i] = 1.0
        return out

    def tangent(self, q, t) -> np.ndarray:
        """Derivative of ``matrix`` at ``q`` along the tangent vector ``t``."""
        q, t = np.asarray(q, float), np.asarray(t, float)
        k = self.power
        dq = sum(qmul(qmul(qpow(q, j), t), qpow(q, k - 1 - j)) for j in range(k))
        dM = su2_matrix(dq)
        if self.n == 2:
            return dM
        if self.n == 1:
            M = su2_matrix(qpow(q, k))
            return np.array([[np.trace(np.linalg.solve(M, dM)) * np.linalg.det(M)]])
        out = np.zeros((self.n, self.n), dtype=complex)
        out[:2, :2] = dM
        return out


CYCLES = {"su2": 1, "su2-pow2": 2, "su2-pow3": 3}
GROUPS = {"gl1": 1, "gl2": 2, "gl3": 3}


def make_cycle(cycle: str = "su2", group: str = "gl2") -> Cycle:
    if cycle not in CYCLES:
        raise DomainError(f"unknown cycle {cycle!r}; choose from {sorted(CYCLES)}")
    if group not in GROUPS:
        raise DomainError(f"unknown group {group!r}; choose from {sorted(GROUPS)}")
    return Cycle(CYCLES[cycle], GROUPS[group], cycle)


# --------------------------------------------------------------------------
# sections
# --------------------------------------------------------------------------

SECTION_GRID = np.pi * (2 * np.arange(16) + 1) / 16


def eigen_angles(cycle: Cycle, points) -> np.ndarray:
    """Arguments in ``[0, 2pi)`` of all eigenvalues of the cycle matrices at ``points``."""
    vals = np.linalg.eigvals(cycle.matrix(np.atleast_2d(points)))
    return np.mod(np.angle(vals), TWO_PI).ravel()


def section_margin(angle: float, eig: np.ndarray) -> float:
    """Smallest angular distance from the ray at ``angle`` to the given eigen-angles."""
    if len(eig) == 0:
        return np.pi
    d = np.abs(eig - angle) % TWO_PI
    return float(np.min(np.minimum(d, TWO_PI - d)))


def forbidden_intervals(eig: np.ndarray, delta: float) -> list[tuple[float, float]]:
    """Union of ``[a - delta, a + delta]`` over eigen-angles, as sorted intervals."""
    iv = sorted((a - delta, a + delta) for a in np.unique(np.round(eig, 6)))
    out: list[list[float]] = []
    for lo, hi in iv:
        if out and lo <= out[-1][1]:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [(float(a), float(b)) for a, b in out]


@dataclass
class Sections:
    angles: np.ndarray
    margins: np.ndarray
    recheck_margins: np.ndarray
    delta: float

    @property
    def z(self) -> np.ndarray:
        return np.exp(1j * self.angles)

    def to_dict(self) -> dict:
        return {"angles": self.angles.tolist(), "margins": self.margins.tolist(),
                "recheck_margins": self.recheck_margins.tolist(), "delta": self.delta,
                "candidate_grid": "pi*(2k+1)/16, k=0..15"}


def choose_sections(cover: GoodCover, cycle: Cycle, delta: float = DEFAULTS.sec_margin,
                    rank: int = 0, recheck_factor: int = 10, seed: int = 0) -> Sections:
    """Per ball, the admissible grid angle with the ``rank``-th largest margin.

    A candidate is admissible when its angular distance to every eigenray of
    every sampled cycle matrix in the ball exceeds ``delta``; the choice is then
    re-verified on a ``recheck_factor`` times denser sample against ``delta / 2``.
    """
    rng = np.random.default_rng(seed + 101)
    angles, margins, rechecks = [], [], []
    for a in range(cover.K):
        eig = eigen_angles(cycle, cover.ball_samples[a])
        m = np.array([section_margin(t, eig) for t in SECTION_GRID])
        ok = np.flatnonzero(m > delta)
        if len(ok) == 0:
            raise CertificationError(
                f"section search failed on ball {a}; forbidden intervals {forbidden_intervals(eig, delta)}")
        order = ok[np.argsort(-m[ok], kind="stable")]
        pick = order[min(rank, len(order) - 1)]
        dense = ball_points(cover.centers[a], cover.radius,
                            recheck_factor * len(cover.ball_samples[a]), rng)
        rm = section_margin(SECTION_GRID[pick], eigen_angles(cycle, dense))
        if rm <= delta / 2:
            raise CertificationError(f"section on ball {a} fails the dense recheck (margin {rm:.3f})")
        angles.append(SECTION_GRID[pick])
        margins.append(m[pick])
        rechecks.append(rm)
    return Sections(np.array(angles), np.array(margins), np.array(rechecks), delta)


# --------------------------------------------------------------------------
# edge trivializations
# --------------------------------------------------------------------------


def reference_candidates(n: int, k: int) -> list[np.ndarray]:
    """Coordinate frames, then (for ``k = 1``) unit mixtures of two coordinate vectors."""
    if k == 0:
        return [np.zeros((n, 0), dtype=complex)]
    eye = np.eye(n, dtype=complex)
    cands = [eye[:, list(c)] for c in combinations(range(n), k)]
    if k == 1:
        for i, j in combinations(range(n), 2):
            for w in (1, 1j, -1, -1j):
                v = eye[:, i] + w * eye[:, j]
                cands.append((v / np.linalg.norm(v))[:, None])
    return cands


@dataclass
class EdgeFrames:
    cover: GoodCover
    cycle: Cycle
    sections: Sections
    triv: dict
    r: float
    R: float
    min_volume: dict

    def z(self, a: int) -> complex:
        return complex(np.exp(1j * self.sections.angles[a]))

    def fiber(self, a: int, b: int, A, blocks):
        """``sigma_ab`` at ``A``; ``sigma_ba`` is the dual of ``sigma_ab``."""
        if a < b:
            return self.triv[(a, b)].fiber(A, self.z(a), self.z(b), blocks)
        return swap_dual(self.triv[(b, a)].fiber(A, self.z(b), self.z(a), blocks))

    def connection(self, a: int, b: int, A, dA) -> complex:
        if a < b:
            return fiber_connection(self.triv[(a, b)], A, dA, self.z(a), self.z(b))
        return -fiber_connection(self.triv[(b, a)], A, dA, self.z(b), self.z(a))


def _all_cover_points(cover: GoodCover) -> np.ndarray:
    pts = [np.vstack(list(cover.ball_samples.values()))]
    pts += list(cover.closure.values()) + list(cover.paths.values())
    return np.vstack(pts)


def trivialize_sections(cover: GoodCover, cycle: Cycle, sections: Sections, *,
                        gauge: dict | None = None,
                        frame_margin: float = DEFAULTS.frame_margin) -> EdgeFrames:
    """Frames of ``L_{sigma(m), z_a, z_b}`` on every edge overlap.

    The domain of each frame is the annular sector ``S^{r,R}[z_a, z_b]`` with
    ``r, R`` bracketing every eigenvalue modulus on the cycle; the reference
    basis is the candidate maximizing the smallest normalized frame volume over
    the overlap samples.
    """
    mods = np.abs(np.linalg.eigvals(cycle.matrix(_all_cover_points(cover))))
    r, R = 0.5 * float(mods.min()), 2.0 * float(mods.max())
    triv, vols = {}, {}
    for e in cover.simplices[1]:
        a, b = e
        za, zb = np.exp(1j * sections.angles[a]), np.exp(1j * sections.angles[b])
        S = unordered_sector(za, zb, r, R)
        pts = np.vstack([cover.edge_samples[e]] + [cover.base_points[s][None, :]
                         for s in cover.base_points if set(e) <= set(s)])
        mats = cycle.matrix(pts)
        ks = {int(sum(1 for v in np.linalg.eigvals(A) if S.angular_margin(v) > 0)) for A in mats}
        if len(ks) != 1:
            raise CertificationError(f"eigenvalue count in S[z_{a}, z_{b}] varies on overlap {e}")
        k = ks.pop()
        G = None if gauge is None else gauge.get(e)
        best, best_vol = None, -1.0
        probe = sector_trivialization(mats[0], za, zb, r, R, np.zeros((cycle.n, k)), G)
        if k == 0:
            best, best_vol = probe.reference, 1.0
        else:
            E = [probe.projector(A) for A in mats]
            for Rf in reference_candidates(cycle.n, k):
                sR = np.prod(np.linalg.svd(Rf, compute_uv=False))
                v = min(np.prod(np.linalg.svd(e_ @ Rf, compute_uv=False)) /
                        (sR * np.linalg.norm(e_, 2) ** k) for e_ in E)
                if v > best_vol:
                    best, best_vol = Rf, v
        if best_vol < frame_margin:
            raise CertificationError(f"no reference frame keeps volume above {frame_margin} on overlap {e}")
        triv[e] = sector_trivialization(mats[0], za, zb, r, R, best, G)
        vols[e] = float(best_vol)
    return EdgeFrames(cover, cycle, sections, triv, r, R, vols)


def random_gauge(cover: GoodCover, n: int, scale: float = 0.3, seed: int = 0) -> dict:
    """Per-edge coefficient matrices ``G`` for gauges ``exp(sum(G * A))``."""
    rng = np.random.default_rng(seed)
    return {e: scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
            for e in cover.simplices[1]}


# --------------------------------------------------------------------------
# cocycles
# --------------------------------------------------------------------------


def _faces(s: tuple) -> list[tuple]:
    return [s[:i] + s[i + 1:] for i in range(len(s))]


@dataclass
class CechCocycle:
    """Sampled values of a degree-``p`` cocycle aligned with the cover samples.

    ``base[t]`` is the value at the base point of the p-simplex ``t``;
    ``paths[(t, s)]`` the values along the path to the top simplex ``s``;
    ``closure[s]`` a ``(p + 2, m)`` array whose row ``i`` holds the face
    ``s`` minus vertex ``i`` at the closure samples of ``s``.
    """

    degree: int
    base: dict
    paths: dict
    closure: dict
    meta: dict = field(default_factory=dict)

    def check_nonvanishing(self, floor: float = 1e-300) -> None:
        arrays = [np.atleast_1d(np.asarray(v)) for v in self.base.values()]
        arrays += [np.asarray(v) for v in self.paths.values()]
        arrays += [np.asarray(v) for v in self.closure.values()]
        for arr in arrays:
            if arr.size and (not np.all(np.isfinite(arr)) or np.min(np.abs(arr)) <= floor):
                raise DataIntegrityError("nonvanishing violated")

    def closure_residual(self) -> float:
        """``max |delta g - 1|`` over the closure samples."""
        worst = 0.0
        for s, rows in self.closure.items():
            rows = np.asarray(rows)
            prod = np.ones(rows.shape[1], dtype=complex)
            for i, row in enumerate(rows):
                prod = prod * (row if i % 2 == 0 else 1 / row)
            worst = max(worst, float(np.max(np.abs(prod - 1))))
        return worst

    def multiply(self, other: "CechCocycle") -> "CechCocycle":
        return CechCocycle(
            self.degree,
            {t: self.base[t] * other.base[t] for t in self.base},
            {k: np.asarray(self.paths[k]) * np.asarray(other.paths[k]) for k in self.paths},
            {s: np.asarray(self.closure[s]) * np.asarray(other.closure[s]) for s in self.closure},
            dict(self.meta))

    def to_dict(self) -> dict:
        key = lambda s: ",".join(map(str, s))
        c2 = lambda a: np.stack([np.real(a), np.imag(a)], axis=-1).tolist()
        return {
            "degree": self.degree,
            "base": {key(t): c2(np.asarray(v)) for t, v in self.base.items()},
            "paths": {key(t) + "|" + key(s): c2(np.asarray(v)) for (t, s), v in self.paths.items()},
            "closure": {key(s): c2(np.asarray(v)) for s, v in self.closure.items()},
            "meta": self.meta,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CechCocycle":
        tup = lambda k: tuple(int(i) for i in k.split(","))

        def cx(v):
            a = np.asarray(v, float)
            if a.shape[-1] != 2:
                raise DataIntegrityError("complex values must be [re, im] pairs")
            return a[..., 0] + 1j * a[..., 1]

        return cls(
            int(d["degree"]),
            {tup(k): complex(cx(v)) for k, v in d["base"].items()},
            {(tup(k.split("|")[0]), tup(k.split("|")[1])): cx(v) for k, v in d["paths"].items()},
            {tup(k): cx(v) for k, v in d["closure"].items()},
            d.get("meta", {}),
        )


def cocycle_from_function(cover: GoodCover, fn: Callable[[tuple, np.ndarray], np.ndarray],
                          degree: int | None = None, meta: dict | None = None) -> CechCocycle:
    """Tabulate ``fn(t, points)`` for every face ``t`` at every sample of the cover."""
    p = cover.dim - 1 if degree is None else degree
    if p != cover.dim - 1:
        raise DomainError(f"degree {p} cocycles need a cover of S^{p + 1}, got S^{cover.dim}")
    base = {t: complex(fn(t, cover.base_points[t][None, :])[0]) for t in cover.faces}
    paths = {k: np.asarray(fn(k[0], pts)) for k, pts in cover.paths.items()}
    closure = {s: np.stack([fn(t, cover.closure[s]) for t in _faces(s)]) for s in cover.top}
    return CechCocycle(p, base, paths, closure, meta or {})


def coboundary_function(lam: Callable[[tuple, np.ndarray], np.ndarray]):
    """``t -> prod_i lam(t minus vertex i)^{(-1)^i}`` for nonvanishing functions ``lam``."""
    def fn(t, pts):
        out = np.ones(len(pts), dtype=complex)
        for i, f in enumerate(_faces(t)):
            v = lam(f, pts)
            out = out * (v if i % 2 == 0 else 1 / v)
        return out
    return fn


class GerbeCocycleEvaluator:
    """``g_abc`` of the canonical gerbe for a cycle, sections and edge frames."""

    def __init__(self, frames: EdgeFrames):
        self.frames = frames
        self.cycle = frames.cycle

    def at_matrix(self, t: tuple, A, blocks=None) -> complex:
        a, b, c = t
        blocks = blocks if blocks is not None else spectral_blocks(A)
        F = self.frames
        lhs = multiply(F.fiber(a, b, A, blocks), F.fiber(b, c, A, blocks))
        return complex(fiber_ratio(lhs, F.fiber(a, c, A, blocks)))

    def values(self, t: tuple, pts) -> np.ndarray:
        mats = self.cycle.matrix(np.atleast_2d(pts))
        return np.array([self.at_matrix(t, A) for A in mats])

    def faces_at(self, s: tuple, pts) -> np.ndarray:
        """All face values of the top simplex ``s`` at ``pts`` sharing fibers per point."""
        mats = self.cycle.matrix(np.atleast_2d(pts))
        F = self.frames
        out = np.empty((len(s), len(mats)), dtype=complex)
        for j, A in enumerate(mats):
            blocks = spectral_blocks(A)
            fib = {}
            for a, b in combinations(s, 2):
                fib[(a, b)] = F.fiber(a, b, A, blocks)
            for i, (a, b, c) in enumerate(_faces(s)):
                out[i, j] = fiber_ratio(multiply(fib[(a, b)], fib[(b, c)]), fib[(a, c)])
        return out

    def cocycle(self) -> CechCocycle:
        cover = self.frames.cover
        base = {t: complex(self.values(t, cover.base_points[t])[0]) for t in cover.faces}
        paths = {}
        for (t, s), pts in cover.paths.items():
            vals = self.values(t, pts[1:])
            paths[(t, s)] = np.concatenate([[base[t]], vals])
        closure = {s: self.faces_at(s, cover.closure[s]) for s in cover.top}
        meta = {"cycle": self.cycle.name, "n": self.cycle.n, "cover": cover.name,
                "sections": self.frames.sections.angles.tolist()}
        return CechCocycle(2, base, paths, closure, meta)


def cocycle_g(cover: GoodCover, sections: Sections, frames: EdgeFrames) -> CechCocycle:
    return GerbeCocycleEvaluator(frames).cocycle()


def canonical_cocycle(cover: GoodCover, cycle: Cycle, *, section_rank: int = 0,
                      gauge: dict | None = None, seed: int = 0):
    """Sections, frames and the sampled cocycle of the canonical gerbe on ``cycle``."""
    sec = choose_sections(cover, cycle, rank=section_rank, seed=seed)
    frames = trivialize_sections(cover, cycle, sec, gauge=gauge)
    return sec, frames, cocycle_g(cover, sec, frames)


# --------------------------------------------------------------------------
# integer class
# --------------------------------------------------------------------------


@dataclass
class DDResult:
    value: int
    cochain: dict
    rounding_residual: float
    closure_residual: float
    max_phase_step: float
    orientation: int


def continued_logs(g: CechCocycle, phase_guard: float = DEFAULTS.phase_guard) -> tuple[dict, float]:
    """Branch of ``log g_t`` continued from the principal value at the base point of
    ``t`` along the path to each top simplex; returns endpoint logs and largest step."""
    logs, worst = {}, 0.0
    for (t, s), vals in g.paths.items():
        vals = np.asarray(vals, dtype=complex)
        b = g.base[t]
        if abs(vals[0] - b) > 1e-8 * max(1.0, abs(b)):
            raise DataIntegrityError(f"path values for {t} do not start at the base value")
        steps = np.angle(vals[1:] / vals[:-1])
        if len(steps):
            big = float(np.max(np.abs(steps)))
            worst = max(worst, big)
            if big > phase_guard:
                raise SamplingError(f"sampling too coarse: phase step {big:.3f} on path {t}->{s}")
        logs[(t, s)] = np.log(abs(vals[-1])) + 1j * (np.angle(b) + steps.sum())
    return logs, worst


def dd_details(cover: GoodCover, g: CechCocycle, *, phase_guard: float = DEFAULTS.phase_guard,
               tol_round_fail: float = DEFAULTS.tol_round_fail) -> DDResult:
    if g.degree != cover.dim - 1:
        raise DomainError(f"degree-{g.degree} cocycle on a cover of S^{cover.dim}")
    g.check_nonvanishing()
    logs, worst = continued_logs(g, phase_guard)
    cochain, res = {}, 0.0
    for s in cover.top:
        val = sum((-1) ** i * logs[(t, s)] for i, t in enumerate(_faces(s))) / (2j * np.pi)
        k = int(round(val.real))
        res = max(res, abs(val - k))
        cochain[s] = k
    if res > tol_round_fail:
        raise RoundingError(f"integer cochain residual {res:.2e} exceeds {tol_round_fail}")
    fc = cover.fundamental_cycle()
    total = int(sum(fc[s] * cochain[s] for s in cover.top))
    return DDResult(total, cochain, res, g.closure_residual(), worst, cover.orientation)


def dd_integer(cover: GoodCover, g: CechCocycle, **kw) -> int:
    """Pairing of ``(1/2 pi i) delta log g`` with the fundamental cycle of the nerve."""
    return dd_details(cover, g, **kw).value


# --------------------------------------------------------------------------
# connection cochain
# --------------------------------------------------------------------------


@dataclass
class ConnectionReport:
    residual: float
    antisymmetry: float
    samples: int
    values: dict


def connection_cochain(frames: EdgeFrames, *, h: float = 1e-5, points_per_face: int = 2) -> ConnectionReport:
    """Compare ``d log g`` (central differences along cycle tangents) with
    ``A_ab + A_bc - A_ac`` on every face of the nerve."""
    cover, cycle = frames.cover, frames.cycle
    ev = GerbeCocycleEvaluator(frames)
    worst, anti, count = 0.0, 0.0, 0
    values = {}
    for t in cover.faces:
        a, b, c = t
        pts = [cover.base_points[t]]
        for s in cover.cofaces(t)[:max(0, points_per_face - 1)]:
            pts.append(cover.closure[s][-1])
        for m in pts:
            A = cycle.matrix(m)
            g0 = ev.at_matrix(t, A)
            for v in tangent_frame(m):
                dA = cycle.tangent(m, v)
                gp = ev.at_matrix(t, A + h * dA)
                gm = ev.at_matrix(t, A - h * dA)
                dlog = (gp - gm) / (2 * h * g0)
                Aab = frames.connection(a, b, A, dA)
                Abc = frames.connection(b, c, A, dA)
                Aac = frames.connection(a, c, A, dA)
                worst = max(worst, abs(dlog - (Aab + Abc - Aac)))
                anti = max(anti, abs(frames.connection(b, a, A, dA) + Aab))
                count += 1
            values.setdefault(t, []).append((Aab, Abc, Aac))
    return ConnectionReport(worst, anti, count, values)


# --------------------------------------------------------------------------
# collation of a top form into a cocycle of prescribed class
# --------------------------------------------------------------------------


def normalized_volume_form(d: int, scale: float = 1.0) -> Callable[[np.ndarray], np.ndarray]:
    """Density (against the round volume) of ``scale`` times the unit-mass volume form."""
    from .cover import sphere_volume
    vol = sphere_volume(d)
    return lambda x: np.full(len(np.atleast_2d(x)), scale / vol)


def form_period(d: int, density: Callable[[np.ndarray], np.ndarray], nodes: int = 24) -> float:
    pts, w = sphere_quadrature(d, nodes)
    return float(np.sum(w * density(pts)))


def collated_function(cover: GoodCover, omega: Callable[[np.ndarray], np.ndarray], *,
                      tol: float = 1e-6, nodes: int = 24):
    """The function ``t, pts -> exp(2 pi i (K c)_t(pts))`` and the class ``k``.

    The period ``k`` of ``omega`` is computed by quadrature and must be an
    integer. ``c`` is the integer top cochain equal to ``k`` times the
    fundamental-cycle sign on the first top simplex and zero elsewhere. The
    contraction ``(K c)_t = sum_e rho_e c_{e t}`` with the partition of unity
    satisfies ``delta K c = c`` because the nerve has no simplices above the top.
    """
    d = cover.dim
    P = cover.orientation * form_period(d, omega, nodes)
    k = int(round(P))
    if abs(P - k) > tol:
        raise DomainError(f"non-integral period {P:.8f}")
    s0 = cover.top[0]
    c0 = k * cover.fundamental_cycle()[s0]

    def fn(t, pts):
        pts = np.atleast_2d(pts)
        f = np.zeros(len(pts))
        if k != 0 and set(t) <= set(s0):
            (eps,) = set(s0) - set(t)
            f = cover.partition_of_unity(pts)[:, eps] * (-1) ** s0.index(eps) * c0
        return np.exp(2j * np.pi * f)

    return fn, k, P


def collate_form_to_cocycle(cover: GoodCover, omega: Callable[[np.ndarray], np.ndarray],
                            degree: int | None = None, *, tol: float = 1e-6,
                            nodes: int = 24) -> CechCocycle:
    """Cocycle of degree ``dim - 1`` whose integer class pairs to ``int omega``."""
    p = cover.dim - 1 if degree is None else degree
    if p != cover.dim - 1:
        raise DomainError(f"degree {p} needs a cover of S^{p + 1}")
    fn, k, P = collated_function(cover, omega, tol=tol, nodes=nodes)
    return cocycle_from_function(cover, fn, p, meta={"collated_period": P, "class": k})
