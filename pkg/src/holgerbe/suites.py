"""Seeded randomized verification suites shared by the CLI and the tests.

Every suite draws its inputs from ``numpy.random.default_rng(seed)`` and
compares the library result with an oracle computed a different way
(``numpy.linalg.eig`` membership for counts and eigenspaces).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULTS, Tolerances
from .sectors import (Sector, discs_contour, in_sector, ray_angle,
                      sector_boundary_contour, unordered_sector)
from .spectral import (generic_position, max_principal_angle, riesz_projector,
                       zero_count_integral)


def random_generic_matrix(n: int, rng: np.random.Generator, max_tries: int = 10000,
                          min_gap: float = 1e-3, cut_margin: float = 1e-3) -> np.ndarray:
    """Complex Gaussian matrix passing the generic-position guard."""
    for _ in range(max_tries):
        A = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(n)
        if generic_position(A, cut_margin, min_gap) and abs(np.linalg.det(A)) > 1e-6:
            return A
    raise RuntimeError("no generic matrix found")


@dataclass
class ContourProbe:
    kind: str
    contour: object
    inside: np.ndarray     # boolean mask over np.linalg.eig eigenvalues


def random_contour(A, rng: np.random.Generator, margin: float = 0.02) -> ContourProbe:
    """Either a bounded sector boundary or a union of discs, with every
    eigenvalue at least ``margin`` (relative) away from the contour."""
    vals = np.linalg.eigvals(A)
    if rng.random() < 0.5:
        for _ in range(1000):
            phi = rng.uniform(0, 2 * np.pi)
            delta = rng.uniform(0.3, 2 * np.pi - 0.3)
            mods = np.abs(vals)
            r = rng.uniform(0.2, 1.0) * mods.min()
            R = rng.uniform(1.5 * r, 1.5 * mods.max())
            S = Sector(phi, delta, r, R)
            C = sector_boundary_contour(S)
            if min(C.distance(v) for v in vals) > margin * max(1.0, float(mods.max())):
                return ContourProbe("sector", C, np.array([in_sector(S, v) for v in vals]))
    gap = min((abs(a - b) for i, a in enumerate(vals) for b in vals[i + 1:]), default=1.0)
    mask = rng.random(len(vals)) < 0.5
    if not mask.any():
        mask[rng.integers(len(vals))] = True
    rad = gap / 3
    return ContourProbe("discs", discs_contour([(v, rad) for v in vals[mask]]), mask)


def oracle_eigenspace(A, mask) -> np.ndarray:
    vals, vecs = np.linalg.eig(A)
    return vecs[:, mask]


def spectral_case(A, probe: ContourProbe, tol: Tolerances = DEFAULTS) -> dict:
    """Zero count and projector laws for one matrix/contour pair."""
    kw = dict(tol_gap=tol.tol_gap, tol_det=tol.tol_det, nodes=tol.quad_nodes,
              rtol=tol.quad_rtol, max_doublings=tol.quad_max_doublings)
    raw = zero_count_integral(A, probe.contour, **kw)
    count = int(round(raw.real))
    expected = int(probe.inside.sum())
    P = riesz_projector(A, probe.contour, **kw)
    idem, comm = P.idempotency_residual(), P.commutator_residual()
    angle = 0.0
    if expected:
        angle = max_principal_angle(P.image_basis().B, oracle_eigenspace(A, probe.inside))
    return {
        "count": count, "expected": expected, "raw_residual": abs(raw - count),
        "idempotency": idem, "commutator": comm, "rank": P.rank, "angle": angle,
        "kind": probe.kind,
    }


SPECTRAL_THRESHOLDS = {"raw_residual": 1e-6, "idempotency": 1e-8, "commutator": 1e-8, "angle": 1e-6}


def spectral_case_passed(c: dict) -> bool:
    return (c["count"] == c["expected"] and c["rank"] == c["expected"]
            and all(c[k] < v for k, v in SPECTRAL_THRESHOLDS.items()))


def spectral_suite(samples: int, seed: int, n: int | None = None, matrices=None,
                   tol: Tolerances = DEFAULTS) -> list[dict]:
    """``samples`` seeded cases; ``n=None`` draws sizes from 2..5. Supplied
    ``matrices`` are used in turn (each with a seeded random contour)."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(samples):
        if matrices:
            A = np.asarray(matrices[i % len(matrices)], dtype=complex)
        else:
            A = random_generic_matrix(n or int(rng.integers(2, 6)), rng)
        probe = random_contour(A, rng)
        c = spectral_case(A, probe, tol)
        c["name"] = f"spectral-{i}"
        c["n"] = A.shape[0]
        out.append(c)
    return out


def sector_pair(rng: np.random.Generator, vals) -> tuple[Sector, Sector, Sector] | None:
    """Adjacent sectors ``S = (a, b)``, ``T = (b, c)`` and ``R = (a, c)`` with the
    shared ray and the outer rays away from every eigenray."""
    ang = np.sort([ray_angle(v) for v in vals])
    for _ in range(200):
        a, b, c = np.sort(rng.uniform(0.0, 2 * np.pi, 3))
        if min(abs(a - t) for t in ang) < 0.02 or min(abs(b - t) for t in ang) < 0.02 \
                or min(abs(c - t) for t in ang) < 0.02:
            continue
        return Sector(a, b - a), Sector(b, c - b), Sector(a, c - a)
    return None


def direct_sum_probe(rng: np.random.Generator, n: int | None = None) -> dict:
    """``V_S(A) + V_T(A)`` against ``V_R(A)`` for adjacent sectors ``S, T`` with union ``R``."""
    from .spectral import eigenspace_basis

    A = random_generic_matrix(n or int(rng.integers(2, 6)), rng)
    S, T, R = sector_pair(rng, np.linalg.eigvals(A))
    bS, bT, bR = (eigenspace_basis(A, X).B for X in (S, T, R))
    cat = np.concatenate([bS, bT], axis=1)
    out = {"dims": (bS.shape[1], bT.shape[1], bR.shape[1]), "rank_ok": cat.shape[1] == bR.shape[1],
           "angle": 0.0}
    if cat.shape[1]:
        out["rank_ok"] = out["rank_ok"] and np.linalg.matrix_rank(cat, tol=1e-8) == cat.shape[1]
        if out["rank_ok"]:
            out["angle"] = max_principal_angle(cat, bR)
    return out


def random_ray(A, rng: np.random.Generator, margin: float = 0.05) -> complex:
    """Unit complex number off the cut and at least ``margin`` from every eigenray."""
    ang = [ray_angle(v) for v in np.linalg.eigvals(A)] + [0.0]
    while True:
        t = rng.uniform(0, 2 * np.pi)
        if min(min(abs(t - a), 2 * np.pi - abs(t - a)) for a in ang) > margin:
            return complex(np.exp(1j * t))


def associativity_probe(rng: np.random.Generator, n: int | None = None) -> float:
    """Relative gap between ``m(m(p, q), r)`` and ``m(p, m(q, r))`` for random
    fiber elements over a random generic matrix."""
    from .gerbe import fiber_ratio, multiply, random_fiber_element
    from .spectral import spectral_blocks

    A = random_generic_matrix(n or int(rng.integers(2, 6)), rng)
    b = spectral_blocks(A)
    x, y, z, w = (random_ray(A, rng) for _ in range(4))
    p = random_fiber_element(A, x, y, rng, b)
    q = random_fiber_element(A, y, z, rng, b)
    r = random_fiber_element(A, z, w, rng, b)
    return abs(fiber_ratio(multiply(multiply(p, q), r), multiply(p, multiply(q, r))) - 1)


def holomorphy_probe(rng: np.random.Generator, n: int | None = None,
                     steps=(1e-5, 1e-3, 5e-4)) -> dict:
    """CR residuals of a transition scalar between two trivializations of the same
    fiber (different discs and reference frames) at several step sizes.

    The eigenvalue count ``k`` in the sector is kept in ``(0, n)`` so that the
    scalar is a nonconstant function of the matrix. Eigenvalues are kept 0.2
    apart: the residual at fixed ``h`` is a truncation error proportional to
    the third derivative, which grows like an inverse power of the gap.
    """
    from .gerbe import cr_residual, local_trivialization, transition_scalar

    while True:
        A = random_generic_matrix(n or int(rng.integers(2, 5)), rng, min_gap=0.2, cut_margin=0.05)
        x, y = random_ray(A, rng), random_ray(A, rng)
        k = sum(in_sector(unordered_sector(x, y), v) for v in np.linalg.eigvals(A))
        # with k = n the projector is the identity and the scalar is constant
        if 0 < k < A.shape[0]:
            break
    T1 = local_trivialization(A, x, y, certify=False)
    while True:
        # a reference nearly in the kernel of the projector gives a frame close
        # to zero; trivializations require a volume margin, so do the probes
        R = np.linalg.qr(rng.standard_normal((A.shape[0], k)) + 1j * rng.standard_normal((A.shape[0], k)))[0]
        T2 = local_trivialization(A, x, y, reference=R, radius_scale=0.6, certify=False)
        if T2.center_volume >= 0.3:
            break
    f = lambda M: transition_scalar(T1, T2, M)
    seed = int(rng.integers(2**31))
    return {h: cr_residual(f, A, h, seed=seed) for h in steps}
