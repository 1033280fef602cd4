"""Numerical tolerances shared by every module.

All defaults live here so reports can echo the effective values. Functions take
the individual tolerances as keyword arguments defaulting to ``DEFAULTS``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace

import numpy as np

MACHINE_FLOOR = 10 * np.finfo(float).eps


@dataclass(frozen=True)
class Tolerances:
    eps_ang: float = 1e-10       # angular width of "same ray"
    tol_rank: float = 1e-8       # smallest admissible singular value of a basis
    tol_gap: float = 1e-6        # min distance spectrum -> contour
    tol_det: float = 1e-12       # |det| floor for invertibility and resolvent nodes
    tol_cluster: float = 1e-5    # relative eigenvalue clustering radius
    tol_span: float = 1e-6       # principal-angle tolerance for "same subspace"
    tol_round: float = 1e-6      # target distance of a counting integral to an integer
    tol_round_fail: float = 1e-4  # beyond this a counting integral is rejected
    quad_nodes: int = 64         # Gauss-Legendre nodes per panel / trapezoid nodes per circle
    quad_rtol: float = 1e-13     # convergence of successive quadrature refinements
    quad_max_doublings: int = 7
    sec_margin: float = 0.05     # section admissibility margin (radians)
    frame_margin: float = 1e-3   # minimum normalized frame volume on an overlap
    phase_guard: float = np.pi / 2

    def override(self, **kw) -> "Tolerances":
        for name, value in kw.items():
            if name.startswith(("tol_", "eps_")) and value < MACHINE_FLOOR:
                raise ValueError(f"{name}={value} is below the machine-precision floor")
        return replace(self, **kw)

    def as_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def names(cls) -> list[str]:
        return [f.name for f in fields(cls)]


DEFAULTS = Tolerances()
