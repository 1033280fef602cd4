"""Angular order on C^x, sectors and their boundary contours.

Angles live in [0, 2*pi) with the branch cut on the positive reals, so the
ray through 1 is the smallest ray and the order ``x < y`` means the ray of
``y`` is reached from the ray of ``x`` by a counterclockwise rotation that
does not cross the positive reals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from .config import DEFAULTS
from .errors import DomainError

TWO_PI = 2.0 * np.pi


def ray_angle(z: complex) -> float:
    """Argument of ``z`` in ``[0, 2*pi)``."""
    z = complex(z)
    if z == 0:
        raise DomainError("the zero vector spans no ray")
    theta = float(np.angle(z)) % TWO_PI
    return 0.0 if theta >= TWO_PI else theta


def angle_distance(a: float, b: float) -> float:
    """Circular distance between two angles."""
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def same_ray(x: complex, y: complex, eps_ang: float = DEFAULTS.eps_ang) -> bool:
    return angle_distance(ray_angle(x), ray_angle(y)) <= eps_ang


def ray_less(x: complex, y: complex, eps_ang: float = DEFAULTS.eps_ang) -> bool:
    """True iff ``theta(x) < theta(y)`` and the rays are distinct."""
    tx, ty = ray_angle(x), ray_angle(y)
    if angle_distance(tx, ty) <= eps_ang:
        return False
    return tx < ty


def ray_leq(x: complex, y: complex, eps_ang: float = DEFAULTS.eps_ang) -> bool:
    return same_ray(x, y, eps_ang) or ray_less(x, y, eps_ang)


def on_cut(z: complex, eps_ang: float = DEFAULTS.eps_ang) -> bool:
    """Whether ``z`` lies on the positive real axis (up to ``eps_ang``)."""
    return angle_distance(ray_angle(z), 0.0) <= eps_ang


@dataclass(frozen=True)
class Sector:
    """Open sector ``{s e^{i phi} : r < s < R, phi_start < phi < phi_start + delta}``."""

    phi_start: float
    delta: float
    r: float = 0.0
    R: float = np.inf

    def __post_init__(self):
        if not 0.0 <= self.phi_start < TWO_PI:
            raise DomainError(f"phi_start={self.phi_start} not in [0, 2pi)")
        if not 0.0 <= self.delta < TWO_PI:
            raise DomainError(f"delta={self.delta} not in [0, 2pi)")
        if self.r < 0 or not self.r < self.R:
            raise DomainError(f"radii must satisfy 0 <= r < R, got r={self.r}, R={self.R}")

    @property
    def phi_end(self) -> float:
        return self.phi_start + self.delta

    @property
    def is_empty(self) -> bool:
        return self.delta == 0.0

    @property
    def bounded(self) -> bool:
        return np.isfinite(self.R)

    def boundary_rays(self) -> tuple[float, float]:
        return self.phi_start % TWO_PI, self.phi_end % TWO_PI

    def contains_cut(self) -> bool:
        """Whether the open angular range contains the positive real ray."""
        return self.phi_end > TWO_PI

    def rotation(self, z: complex) -> float:
        """Angle of ``z`` measured counterclockwise from the start ray."""
        return (ray_angle(z) - self.phi_start) % TWO_PI

    def angular_margin(self, z: complex) -> float:
        """Signed angular distance of ``z`` to the nearest boundary ray (>0 inside)."""
        if self.is_empty:
            return -angle_distance(ray_angle(z), self.phi_start)
        d = self.rotation(z)
        if d <= self.delta:
            return min(d, self.delta - d)
        return -min(d - self.delta, TWO_PI - d)

    def boundary_distance(self, z: complex) -> float:
        """Euclidean distance from ``z`` to the boundary of the sector."""
        z = complex(z)
        s = abs(z)
        best = np.inf
        for phi in self.boundary_rays():
            u = np.exp(1j * phi)
            t = (z * np.conj(u)).real
            lo, hi = self.r, self.R
            t = min(max(t, lo), hi) if np.isfinite(hi) else max(t, lo)
            best = min(best, abs(z - t * u))
        inside_angle = self.angular_margin(z) > 0
        if inside_angle:
            if self.r > 0:
                best = min(best, abs(s - self.r))
            if self.bounded:
                best = min(best, abs(self.R - s))
        return best


def sector(x: complex, y: complex, r: float = 0.0, R: float = np.inf,
           eps_ang: float = DEFAULTS.eps_ang) -> Sector:
    """The sector ``S^{r,R}(x, y)`` swept counterclockwise from the ray of ``x`` to that of ``y``."""
    tx, ty = ray_angle(x), ray_angle(y)
    delta = (ty - tx) % TWO_PI
    if angle_distance(tx, ty) <= eps_ang:
        delta = 0.0
    return Sector(tx, delta, r, R)


def unordered_sector(x: complex, y: complex, r: float = 0.0, R: float = np.inf,
                     eps_ang: float = DEFAULTS.eps_ang) -> Sector:
    """``S^{r,R}[x, y]`` for ``x, y`` off the positive reals; symmetric in its arguments."""
    for z in (x, y):
        if on_cut(z, eps_ang):
            raise DomainError(f"{z} lies on the positive real axis")
    if ray_leq(x, y, eps_ang):
        return sector(x, y, r, R, eps_ang)
    return sector(y, x, r, R, eps_ang)


def in_sector(S: Sector, z: complex, eps_ang: float = DEFAULTS.eps_ang) -> bool:
    """Strict membership; points within ``eps_ang`` of a boundary ray are outside."""
    s = abs(complex(z))
    if s == 0:
        raise DomainError("zero is in no sector")
    if not (S.r < s < S.R):
        return False
    return S.angular_margin(z) > eps_ang


# --------------------------------------------------------------------------
# Contours
# --------------------------------------------------------------------------

@lru_cache(maxsize=32)
def _gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1) / 2, w / 2


@dataclass(frozen=True)
class Line:
    start: complex
    end: complex
    kind: str = field(default="segment", init=False)

    def point(self, t):
        return self.start + (self.end - self.start) * np.asarray(t)

    def derivative(self, t):
        return (self.end - self.start) * np.ones_like(np.asarray(t, dtype=float))

    @property
    def periodic(self) -> bool:
        return False

    def distance(self, z: complex) -> float:
        d = self.end - self.start
        t = ((z - self.start) * np.conj(d)).real / (abs(d) ** 2)
        return abs(z - self.point(min(max(t, 0.0), 1.0)))

    def to_dict(self) -> dict:
        return {"kind": "segment", "start": [self.start.real, self.start.imag],
                "end": [self.end.real, self.end.imag]}


@dataclass(frozen=True)
class Arc:
    """Circular arc ``center + radius * exp(i theta)`` for theta from theta0 to theta1."""

    center: complex
    radius: float
    theta0: float
    theta1: float
    kind: str = field(default="arc", init=False)

    @property
    def sweep(self) -> float:
        return self.theta1 - self.theta0

    @property
    def periodic(self) -> bool:
        return np.isclose(abs(self.sweep), TWO_PI, rtol=0, atol=1e-14)

    @property
    def start(self) -> complex:
        return complex(self.point(0.0))

    @property
    def end(self) -> complex:
        return complex(self.point(1.0))

    def point(self, t):
        return self.center + self.radius * np.exp(1j * (self.theta0 + self.sweep * np.asarray(t)))

    def derivative(self, t):
        return 1j * self.sweep * self.radius * np.exp(1j * (self.theta0 + self.sweep * np.asarray(t)))

    def distance(self, z: complex) -> float:
        w = complex(z) - self.center
        if w == 0:
            return self.radius
        lo, hi = sorted((self.theta0, self.theta1))
        phi = np.angle(w)
        # bring phi into [lo, lo + 2pi)
        phi = lo + (phi - lo) % TWO_PI
        if phi <= hi:
            return abs(abs(w) - self.radius)
        return min(abs(z - self.start), abs(z - self.end))

    def to_dict(self) -> dict:
        return {"kind": "arc", "center": [self.center.real, self.center.imag],
                "radius": self.radius, "theta0": self.theta0, "theta1": self.theta1}


Segment = Union[Line, Arc]


def segment_nodes(seg: Segment, nodes: int, panels: int) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature points ``lam`` and weights ``w`` with ``sum(w f(lam)) ~ int_seg f``.

    Full circles use the periodic trapezoid rule with ``nodes * panels`` points;
    everything else uses composite Gauss-Legendre.
    """
    if seg.periodic:
        m = nodes * panels
        t = np.arange(m) / m
        return seg.point(t), seg.derivative(t) / m
    x, w = _gauss_legendre(nodes)
    edges = np.linspace(0.0, 1.0, panels + 1)
    t = (edges[:-1, None] + np.diff(edges)[:, None] * x[None, :]).ravel()
    wt = (np.diff(edges)[:, None] * w[None, :]).ravel()
    return seg.point(t), seg.derivative(t) * wt


@dataclass(frozen=True)
class Contour:
    """One or more closed, counterclockwise-oriented loops of lines and arcs."""

    segments: tuple
    loops: tuple = ()

    def __post_init__(self):
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        if not segs:
            object.__setattr__(self, "loops", ())
            return
        loops, start = [], 0
        for i, seg in enumerate(segs):
            first = segs[start]
            if abs(seg.end - first.start) <= 1e-12 * max(1.0, abs(first.start)):
                loops.append((start, i + 1))
                start = i + 1
            elif i + 1 < len(segs) and abs(seg.end - segs[i + 1].start) > 1e-12 * max(1.0, abs(seg.end)):
                raise DomainError(f"segment {i} does not connect to segment {i + 1}")
        if start != len(segs):
            raise DomainError("contour is not closed")
        object.__setattr__(self, "loops", tuple(loops))

    @property
    def is_empty(self) -> bool:
        return not self.segments

    def __add__(self, other: "Contour") -> "Contour":
        return Contour(self.segments + other.segments)

    def quadrature(self, nodes: int = DEFAULTS.quad_nodes, panels: int = 1):
        if self.is_empty:
            return np.zeros(0, complex), np.zeros(0, complex)
        pts, wts = zip(*(segment_nodes(s, nodes, panels) for s in self.segments))
        return np.concatenate(pts), np.concatenate(wts)

    def distance(self, z: complex) -> float:
        if self.is_empty:
            return np.inf
        return min(s.distance(z) for s in self.segments)

    def to_list(self) -> list[dict]:
        return [s.to_dict() for s in self.segments]

    @classmethod
    def from_list(cls, items: Iterable[dict]) -> "Contour":
        segs = []
        for item in items:
            kind = item.get("kind")
            if kind == "segment":
                segs.append(Line(complex(*item["start"]), complex(*item["end"])))
            elif kind == "arc":
                segs.append(Arc(complex(*item["center"]), float(item["radius"]),
                                float(item["theta0"]), float(item["theta1"])))
            else:
                raise DomainError(f"unknown contour segment kind {kind!r}")
        return cls(tuple(segs))


def circle_contour(center: complex, radius: float) -> Contour:
    if radius <= 0:
        raise DomainError("circle radius must be positive")
    return Contour((Arc(complex(center), float(radius), 0.0, TWO_PI),))


def discs_contour(discs: Sequence[tuple[complex, float]]) -> Contour:
    c = Contour(())
    for center, radius in discs:
        c = c + circle_contour(center, radius)
    return c


def sector_boundary_contour(S: Sector, r: float | None = None, R: float | None = None) -> Contour:
    """Counterclockwise boundary of the bounded annular sector ``S^{r,R}``.

    Radial segment outward along the start ray, outer arc, radial segment
    inward along the end ray, inner arc back (clockwise).
    """
    r = S.r if r is None else r
    R = S.R if R is None else R
    if not np.isfinite(R):
        raise DomainError("unbounded sector: supply a finite outer radius R")
    if not 0 < r < R:
        raise DomainError(f"need 0 < r < R, got r={r}, R={R}")
    if S.is_empty:
        raise DomainError("degenerate sector (delta = 0) has no boundary contour")
    a, b = S.phi_start, S.phi_end
    ua, ub = np.exp(1j * a), np.exp(1j * b)
    return Contour((
        Line(r * ua, R * ua),
        Arc(0j, R, a, b),
        Line(R * ub, r * ub),
        Arc(0j, r, b, a),
    ))


def winding_number(C: Contour, z: complex, nodes: int = DEFAULTS.quad_nodes,
                   max_doublings: int = DEFAULTS.quad_max_doublings) -> float:
    """Numerical winding number ``(1/2 pi i) oint d lam / (lam - z)``."""
    prev = None
    panels = 1
    for _ in range(max_doublings + 1):
        lam, w = C.quadrature(nodes, panels)
        val = np.sum(w / (lam - z)) / (2j * np.pi)
        if prev is not None and abs(val - prev) < 1e-12:
            return float(val.real)
        prev, panels = val, panels * 2
    return float(prev.real)
