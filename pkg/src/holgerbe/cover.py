"""Geodesic-ball covers of round spheres and their nerves.

The covers used here are centered at the vertices of a regular polytope
inscribed in ``S^d``. With a suitable radius the Cech nerve equals the
boundary complex of the convex hull, which is certified geometrically:
every hull facet has angular circumradius below the radius, every other
clique of the intersection graph is shown empty by a separating argument,
and dense sampling confirms both covering and intersection pattern.

Quaternions are 4-vectors ``(a, b, c, d) = a + b i + c j + d k``; the unit
sphere ``S^3`` is oriented by the ordered basis ``(i, j, k)`` at 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull

from .errors import CertificationError, DomainError

# --------------------------------------------------------------------------
# quaternions
# --------------------------------------------------------------------------


def qmul(p, q) -> np.ndarray:
    p, q = np.asarray(p, float), np.asarray(q, float)
    a1, b1, c1, d1 = np.moveaxis(p, -1, 0)
    a2, b2, c2, d2 = np.moveaxis(q, -1, 0)
    return np.stack([
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ], axis=-1)


def qconj(q) -> np.ndarray:
    q = np.asarray(q, float)
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def qpow(q, k: int) -> np.ndarray:
    q = np.asarray(q, float)
    if k < 0:
        return qpow(qconj(q) / np.sum(q * q, axis=-1, keepdims=True), -k)
    out = np.zeros_like(q)
    out[..., 0] = 1.0
    for _ in range(k):
        out = qmul(out, q)
    return out


def su2_matrix(q) -> np.ndarray:
    """``a + bi + cj + dk -> [[a + bi, c + di], [-c + di, a - bi]]``, a homomorphism on H."""
    q = np.asarray(q, float)
    a, b, c, d = np.moveaxis(q, -1, 0)
    M = np.empty(q.shape[:-1] + (2, 2), dtype=complex)
    M[..., 0, 0] = a + 1j * b
    M[..., 0, 1] = c + 1j * d
    M[..., 1, 0] = -c + 1j * d
    M[..., 1, 1] = a - 1j * b
    return M


# --------------------------------------------------------------------------
# sphere geometry
# --------------------------------------------------------------------------


def normalize(x) -> np.ndarray:
    x = np.asarray(x, float)
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


def geodesic_distance(p, q) -> np.ndarray:
    return np.arccos(np.clip(np.sum(np.asarray(p) * np.asarray(q), axis=-1), -1.0, 1.0))


def exp_map(p, v) -> np.ndarray:
    """Point reached from ``p`` along the tangent vector ``v`` (rows may be batched)."""
    p, v = np.asarray(p, float), np.asarray(v, float)
    t = np.linalg.norm(v, axis=-1, keepdims=True)
    safe = np.where(t == 0, 1.0, t)
    return np.cos(t) * p + np.sin(t) * v / safe


def slerp(p, q, t) -> np.ndarray:
    """Points along the minimizing geodesic from ``p`` to ``q`` at fractions ``t``."""
    p, q = np.asarray(p, float), np.asarray(q, float)
    t = np.atleast_1d(np.asarray(t, float))[:, None]
    om = float(geodesic_distance(p, q))
    if om < 1e-15:
        return np.repeat(p[None, :], len(t), axis=0)
    return (np.sin((1 - t) * om) * p + np.sin(t * om) * q) / np.sin(om)


def tangent_frame(p) -> np.ndarray:
    """Orthonormal tangent basis ``(d, d+1)`` at ``p`` with ``det[p, e_1, ..., e_d] > 0``."""
    p = np.asarray(p, float)
    m = len(p)
    Q, _ = np.linalg.qr(np.column_stack([p, np.eye(m)]))
    Q = Q[:, :m]
    if Q[:, 0] @ p < 0:
        Q[:, 0] *= -1
    if np.linalg.det(Q) < 0:
        Q[:, -1] *= -1
    return Q[:, 1:].T


def ball_points(center, radius: float, count: int, rng: np.random.Generator) -> np.ndarray:
    """Points distributed over the geodesic ball by the exponential map."""
    c = np.asarray(center, float)
    d = len(c) - 1
    E = tangent_frame(c)
    u = rng.standard_normal((count, d))
    u = u / np.linalg.norm(u, axis=1, keepdims=True)
    s = radius * rng.random(count) ** (1.0 / d)
    return exp_map(c, (u * s[:, None]) @ E)


def uniform_sphere(d: int, count: int, rng: np.random.Generator) -> np.ndarray:
    return normalize(rng.standard_normal((count, d + 1)))


def sphere_volume(d: int) -> float:
    from math import gamma, pi
    return 2 * pi ** ((d + 1) / 2) / gamma((d + 1) / 2)


def sphere_quadrature(d: int, nodes: int = 24) -> tuple[np.ndarray, np.ndarray]:
    """Product rule in hyperspherical coordinates: Gauss-Legendre in the polar
    angles, trapezoid in the azimuth. Returns points ``(N, d+1)`` and weights."""
    if d < 1:
        raise DomainError("sphere dimension must be at least 1")
    x, w = np.polynomial.legendre.leggauss(nodes)
    polar = [(np.pi * (x + 1) / 2, np.pi * w / 2)] * (d - 1)
    m = 2 * nodes
    az = (2 * np.pi * np.arange(m) / m, np.full(m, 2 * np.pi / m))
    grids = np.meshgrid(*[g[0] for g in polar], az[0], indexing="ij")
    wgrids = np.meshgrid(*[g[1] for g in polar], az[1], indexing="ij")
    ang = [g.ravel() for g in grids]
    wt = np.prod([g.ravel() for g in wgrids], axis=0)
    pts = np.empty((len(wt), d + 1))
    s = np.ones(len(wt))
    for i, phi in enumerate(ang[:-1]):
        pts[:, i] = s * np.cos(phi)
        wt = wt * np.sin(phi) ** (d - 1 - i)
        s = s * np.sin(phi)
    pts[:, d - 1] = s * np.cos(ang[-1])
    pts[:, d] = s * np.sin(ang[-1])
    return pts, wt


# --------------------------------------------------------------------------
# polytopes
# --------------------------------------------------------------------------


def regular_simplex(d: int) -> np.ndarray:
    """``d + 2`` vertices of a regular simplex inscribed in ``S^d``.

    Vertex 0 is the first basis vector; the others are ``-1/(d+1)`` along it
    plus the regular simplex one dimension down in the complement. For ``d=3``
    the complement simplex is the tetrahedron with vertices ``(1,1,1), (1,-1,-1),
    (-1,1,-1), (-1,-1,1)`` over sqrt(3). The last two vertices are swapped if
    needed so that ``det[v_1, ..., v_{d+1}] > 0``.
    """
    if d == 0:
        return np.array([[1.0], [-1.0]])
    if d == 2:
        return np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], float) / np.sqrt(3)
    base = regular_simplex(d - 1)
    a = -1.0 / (d + 1)
    b = np.sqrt(1 - a * a)
    V = np.zeros((d + 2, d + 1))
    V[0, 0] = 1.0
    V[1:, 0] = a
    V[1:, 1:] = b * base
    if np.linalg.det(V[1:]) < 0:
        V[[-2, -1]] = V[[-1, -2]]
    return V


def s4_simplex() -> np.ndarray:
    """Regular 5-simplex on ``S^4`` with vertex 0 at the north pole ``(0,0,0,0,1)``."""
    V = regular_simplex(4)
    V = np.roll(V, -1, axis=1)  # first coordinate becomes the last
    if np.linalg.det(V[1:]) < 0:
        V[[-2, -1]] = V[[-1, -2]]
    return V


def cell16() -> np.ndarray:
    return np.vstack([np.eye(4), -np.eye(4)])


def cell600() -> np.ndarray:
    """The 120 unit quaternions of the binary icosahedral group."""
    phi = (1 + np.sqrt(5)) / 2
    pts = [s * e for e in np.eye(4) for s in (1.0, -1.0)]
    for signs in np.ndindex(2, 2, 2, 2):
        pts.append(0.5 * np.array([1 - 2 * s for s in signs], float))
    even = [(0, 1, 2, 3), (0, 2, 3, 1), (0, 3, 1, 2), (1, 0, 3, 2), (1, 2, 0, 3), (1, 3, 2, 0),
            (2, 0, 1, 3), (2, 1, 3, 0), (2, 3, 0, 1), (3, 0, 2, 1), (3, 1, 0, 2), (3, 2, 1, 0)]
    base = np.array([phi, 1.0, 1 / phi, 0.0]) / 2
    for perm in even:
        for signs in np.ndindex(2, 2, 2):
            v = base * np.array([1 - 2 * signs[0], 1 - 2 * signs[1], 1 - 2 * signs[2], 1])
            w = np.empty(4)
            w[list(perm)] = v
            pts.append(w)
    P = np.array(pts)
    # canonical order: descending first coordinate, then lexicographic
    order = np.lexsort(tuple(-P[:, i] for i in range(3, -1, -1)))
    P = P[order]
    if len(np.unique(np.round(P, 12), axis=0)) != 120:
        raise CertificationError("600-cell generation produced duplicates")
    return P


# --------------------------------------------------------------------------
# the cover
# --------------------------------------------------------------------------


@dataclass
class GoodCover:
    """Geodesic balls ``B(c_alpha, r)`` on ``S^d`` with certified nerve.

    ``simplices[q]`` lists the q-simplices of the nerve as sorted index tuples.
    ``signs`` gives the coefficient (+1 or -1) of each top simplex in the
    fundamental cycle. Sample sets:

    * ``base_points[s]``: one point of the intersection for every simplex;
    * ``closure[s]``: points of each top intersection (used for coboundary checks);
    * ``paths[(t, s)]``: geodesic from the base point of a codimension-one face
      ``t`` to the base point of the top simplex ``s``;
    * ``ball_samples[a]``, ``edge_samples[e]``: points of balls and pairwise overlaps.
    """

    name: str
    centers: np.ndarray
    radius: float
    simplices: dict
    signs: dict
    base_points: dict
    closure: dict
    paths: dict
    ball_samples: dict
    edge_samples: dict
    certificate: dict = field(default_factory=dict)
    orientation: int = 1

    @property
    def dim(self) -> int:
        return self.centers.shape[1] - 1

    @property
    def K(self) -> int:
        return len(self.centers)

    @property
    def top(self) -> list:
        return self.simplices[self.dim]

    @property
    def faces(self) -> list:
        return self.simplices[self.dim - 1]

    def counts(self) -> tuple:
        return tuple(len(self.simplices[q]) for q in range(self.dim + 1))

    def cofaces(self, t: tuple) -> list:
        st = set(t)
        return [s for s in self.top if st <= set(s)]

    def contains(self, x, alpha: int, margin: float = 0.0) -> np.ndarray:
        return geodesic_distance(x, self.centers[alpha]) < self.radius - margin

    def membership(self, x) -> np.ndarray:
        """Boolean ``(N, K)`` matrix of ball membership for points ``x``."""
        x = np.atleast_2d(x)
        return (x @ self.centers.T) > np.cos(self.radius)

    def fundamental_cycle(self) -> dict:
        return {s: self.orientation * self.signs[s] for s in self.top}

    def reversed(self) -> "GoodCover":
        c = GoodCover(**{f: getattr(self, f) for f in self.__dataclass_fields__})
        c.orientation = -self.orientation
        return c

    def partition_of_unity(self, x) -> np.ndarray:
        """``rho_alpha(x)`` from the tent profile ``max(0, 1 - s)``, ``s = d(x, c_alpha) / r``.

        The tent is Lipschitz rather than smooth; it keeps the phase of
        collated cocycles slowly varying near ball boundaries, where smooth
        bumps are steep.
        """
        x = np.atleast_2d(x)
        s = geodesic_distance(x[:, None, :], self.centers[None, :, :]) / self.radius
        b = np.maximum(1 - s, 0.0)
        tot = b.sum(axis=1, keepdims=True)
        if np.any(tot <= 0):
            raise CertificationError("point outside every ball")
        return b / tot

    def to_dict(self) -> dict:
        key = lambda s: ",".join(map(str, s))
        return {
            "name": self.name,
            "dim": self.dim,
            "centers": self.centers.tolist(),
            "radius": self.radius,
            "orientation": self.orientation,
            "nerve": {str(q): [list(s) for s in self.simplices[q]] for q in sorted(self.simplices)},
            "signs": {key(s): v for s, v in self.signs.items()},
            "samples": {
                "base_points": {key(s): p.tolist() for s, p in self.base_points.items()},
                "closure": {key(s): p.tolist() for s, p in self.closure.items()},
                "paths": {key(t) + "|" + key(s): p.tolist() for (t, s), p in self.paths.items()},
                "ball": {str(a): p.tolist() for a, p in self.ball_samples.items()},
                "edge": {key(e): p.tolist() for e, p in self.edge_samples.items()},
            },
            "certificate": self.certificate,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GoodCover":
        tup = lambda k: tuple(int(i) for i in k.split(","))
        smp = d["samples"]
        arr = lambda v: np.asarray(v, float)
        simplices = {int(q): [tuple(s) for s in v] for q, v in d["nerve"].items()}
        return cls(
            name=d["name"], centers=arr(d["centers"]), radius=float(d["radius"]),
            simplices=simplices,
            signs={tup(k): int(v) for k, v in d["signs"].items()},
            base_points={tup(k): arr(v) for k, v in smp["base_points"].items()},
            closure={tup(k): arr(v) for k, v in smp["closure"].items()},
            paths={(tup(k.split("|")[0]), tup(k.split("|")[1])): arr(v)
                   for k, v in smp["paths"].items()},
            ball_samples={int(k): arr(v) for k, v in smp["ball"].items()},
            edge_samples={tup(k): arr(v) for k, v in smp["edge"].items()},
            certificate=d.get("certificate", {}),
            orientation=int(d.get("orientation", 1)),
        )


def _cliques(adj: list[set], max_size: int) -> list[tuple]:
    out = []

    def grow(clique, cands):
        out.append(tuple(clique))
        if len(clique) == max_size:
            return
        for v in sorted(cands):
            if v > clique[-1]:
                grow(clique + [v], cands & adj[v])

    for v in range(len(adj)):
        grow([v], adj[v])
    return out


def _origin_in_hull(V: np.ndarray) -> bool:
    """Whether 0 is a convex combination of the rows of ``V``."""
    m = len(V)
    res = linprog(np.zeros(m), A_eq=np.vstack([V.T, np.ones(m)]),
                  b_eq=np.concatenate([np.zeros(V.shape[1]), [1.0]]),
                  bounds=[(0, None)] * m, method="highs")
    return res.status == 0


def _intersection_points(centers: np.ndarray, s: tuple, radius: float, base: np.ndarray,
                         count: int, rng: np.random.Generator, margin: float = 1e-3) -> np.ndarray:
    """Rejection samples of the intersection of the balls indexed by ``s``."""
    dists = geodesic_distance(base, centers[list(s)])
    outer = float(min(radius + dists.min(), np.pi))
    inside = lambda P: np.all(P @ centers[list(s)].T > np.cos(radius - margin), axis=1)
    got = [base[None, :]]
    total = 1
    # multi-scale proposals: shrink the proposal ball until acceptance is reasonable
    for _ in range(60):
        if total >= count:
            break
        cand = ball_points(base, outer, 8 * count, rng)
        ok = inside(cand)
        got.append(cand[ok][: count - total])
        total += int(min(ok.sum(), count - total))
        if ok.mean() < 0.05:
            outer *= 0.7
    if total < count:
        raise CertificationError(f"could not sample the intersection {s}")
    return np.vstack(got)[:count]


def build_cover(centers, radius: float, *, name: str = "cover", closure_samples: int = 24,
                path_steps: int = 64, ball_samples: int = 160, edge_samples: int = 48,
                seed: int = 0, base_jitter: float = 0.0, certify_samples: int = 20000,
                min_cover_margin: float = 0.0) -> GoodCover:
    """Certify the nerve of a polytope-vertex cover and attach deterministic samples.

    ``base_jitter`` in ``[0, 1)`` moves every base point that fraction of the
    way toward a random point of its intersection (convexity keeps it inside).
    """
    C = normalize(np.asarray(centers, float))
    K, m = C.shape
    d = m - 1
    r = float(radius)
    if not 0 < r < np.pi / 2:
        raise CertificationError(f"radius {r} must lie in (0, pi/2) for convex intersections")
    hull = ConvexHull(C)
    facets = sorted({tuple(sorted(int(i) for i in f)) for f in hull.simplices})
    cert: dict = {"radius": r}

    # facet circumradii: the covering radius of the vertex set
    circum = []
    for f in facets:
        P = C[list(f)]
        nrm = np.linalg.lstsq(P, np.ones(len(f)), rcond=None)[0]
        c = normalize(nrm)
        circum.append(float(geodesic_distance(c, P[0])))
    cover_rad = max(circum)
    cert["covering_radius"] = cover_rad
    cert["covering_margin"] = r - cover_rad
    if cover_rad >= r - min_cover_margin:
        raise CertificationError(f"covering certificate failed: circumradius {cover_rad:.4f} >= {r}")

    simplices: dict = {q: set() for q in range(d + 1)}
    for f in facets:
        for q in range(d + 1):
            simplices[q].update(combinations(f, q + 1))
    simplices = {q: sorted(v) for q, v in simplices.items()}
    faceset = {s for v in simplices.values() for s in v}

    # non-edges are far apart; non-simplex cliques are empty
    G = C @ C.T
    D = np.arccos(np.clip(G, -1, 1))
    edges = set(simplices[1])
    adj = [set() for _ in range(K)]
    min_nonedge = np.inf
    for i, j in combinations(range(K), 2):
        if (i, j) in edges:
            if D[i, j] >= 2 * r:
                raise CertificationError(f"edge {(i, j)} has empty overlap")
            adj[i].add(j)
            adj[j].add(i)
        else:
            min_nonedge = min(min_nonedge, D[i, j])
            if D[i, j] <= 2 * r:
                raise CertificationError(f"balls {i}, {j} overlap but are not a hull edge")
    cert["min_nonedge_distance"] = float(min_nonedge)
    extra = [c for c in _cliques(adj, d + 2) if c not in faceset]
    for c in extra:
        if not _origin_in_hull(C[list(c)]):
            raise CertificationError(f"clique {c} is not a hull face and may have nonempty intersection")
    cert["empty_cliques"] = len(extra)

    # orientation signs of the top simplices and the cycle condition
    signs = {s: int(np.sign(np.linalg.det(C[list(s)]))) for s in simplices[d]}
    if any(v == 0 for v in signs.values()):
        raise CertificationError("degenerate top simplex")
    boundary: dict = {}
    for s, sg in signs.items():
        for i in range(len(s)):
            t = s[:i] + s[i + 1:]
            boundary[t] = boundary.get(t, 0) + sg * (-1) ** i
    if any(boundary.values()):
        raise CertificationError("top simplices do not form a cycle")

    # sampling certificate: covering and intersection pattern
    rng = np.random.default_rng(seed)
    X = uniform_sphere(d, certify_samples, rng)
    memb = X @ C.T > np.cos(r)
    if not memb.any(axis=1).all():
        raise CertificationError("sampled point outside every ball")
    sampled_cover = float(np.max(np.min(np.arccos(np.clip(X @ C.T, -1, 1)), axis=1)))
    cert["sampled_covering_radius"] = sampled_cover
    for row in np.unique(memb, axis=0):
        s = tuple(int(i) for i in np.flatnonzero(row))
        if s not in faceset:
            raise CertificationError(f"sampled intersection {s} is not a nerve simplex")
    cert["certify_samples"] = certify_samples

    # base points: normalized centroids, optionally jittered
    base = {}
    for q in range(d + 1):
        for s in simplices[q]:
            b = normalize(C[list(s)].sum(axis=0))
            if not np.all(geodesic_distance(b, C[list(s)]) < r):
                raise CertificationError(f"centroid of {s} outside the intersection")
            base[s] = b
    if base_jitter:
        jr = np.random.default_rng(seed + 7919)
        for s in sorted(base):
            target = _intersection_points(C, s, r, base[s], 2, jr)[1]
            base[s] = slerp(base[s], target, [base_jitter])[0]

    srng = np.random.default_rng(seed + 1)
    closure = {s: _intersection_points(C, s, r, base[s], closure_samples, srng) for s in simplices[d]}
    paths = {}
    for s in simplices[d]:
        for i in range(len(s)):
            t = s[:i] + s[i + 1:]
            paths[(t, s)] = slerp(base[t], base[s], np.linspace(0, 1, path_steps + 1))
    brng = np.random.default_rng(seed + 2)
    balls = {a: np.vstack([C[a][None, :], ball_points(C[a], r, ball_samples - 1, brng)])
             for a in range(K)}
    erng = np.random.default_rng(seed + 3)
    edge = {e: _intersection_points(C, e, r, base[e], edge_samples, erng) for e in simplices[1]}
    cert.update(path_steps=path_steps, closure_samples=closure_samples,
                ball_samples=ball_samples, edge_samples=edge_samples, seed=seed)
    return GoodCover(name, C, r, simplices, signs, base, closure, paths, balls, edge, cert)


SU2_DEFAULT_RADII = {5: 1.45, 8: 1.3, 120: 0.41}


def su2_centers(K: int) -> np.ndarray:
    if K == 5:
        return regular_simplex(3)
    if K == 8:
        return cell16()
    if K == 120:
        return cell600()
    raise DomainError(f"no SU(2) cover with K={K}; available: 5, 8, 120")


def build_su2_cover(K: int = 5, radius: float | None = None, **kw) -> GoodCover:
    """Cover of ``S^3 = SU(2)`` by ``K`` balls at the vertices of the 4-simplex
    (K=5), the 16-cell (K=8) or the 600-cell (K=120)."""
    r = SU2_DEFAULT_RADII.get(K) if radius is None else radius
    if K == 120:
        kw.setdefault("closure_samples", 4)
        kw.setdefault("path_steps", 4)
        kw.setdefault("ball_samples", 48)
        kw.setdefault("edge_samples", 12)
        kw.setdefault("certify_samples", 40000)
    return build_cover(su2_centers(K), r, name=f"su2-K{K}", **kw)


def build_s4_cover(radius: float = 1.43, **kw) -> GoodCover:
    """Six balls on ``S^4`` at the vertices of a regular 5-simplex; nerve is its boundary."""
    kw.setdefault("certify_samples", 40000)
    return build_cover(s4_simplex(), radius, name="s4-K6", **kw)
