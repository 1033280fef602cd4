#!/usr/bin/env python3
"""Sectors, contour counts and Riesz projectors on one small matrix.

Walks through the spectral layer: which eigenvalues a sector sees, how the
argument-principle integral counts them, and how the projector onto the
enclosed generalized eigenspace compares with numpy's eigenvectors.
"""

from __future__ import annotations

import numpy as np

from holgerbe.sectors import sector, sector_boundary_contour, in_sector
from holgerbe.spectral import (eigenspace_basis, max_principal_angle, riesz_projector,
                               zero_count, zero_count_integral)

LINE = "-" * 72


def main() -> None:
    rng = np.random.default_rng(1)
    vals = np.array([1.0 + 0.5j, -0.8 + 1.1j, -1.2 - 0.4j, 0.6 - 1.3j])
    V = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    A = V @ np.diag(vals) @ np.linalg.inv(V)
    print(LINE)
    print("eigenvalues:", np.round(vals, 3))

    # the sector from the ray of i to the ray of -1, clipped to an annulus
    S = sector(1j, -1 + 0j, r=0.2, R=3.0)
    inside = [v for v in vals if in_sector(S, v)]
    C = sector_boundary_contour(S)
    raw = zero_count_integral(A, C)
    print(LINE)
    print(f"sector S(i, -1): members {np.round(inside, 3)}")
    print(f"contour integral {raw:.12f} -> count {zero_count(A, C)}")

    P = riesz_projector(A, C)
    B = P.image_basis().B
    mask = np.array([in_sector(S, v) for v in vals])
    print(f"projector rank {P.rank}, |P^2 - P| = {P.idempotency_residual():.1e}, "
          f"|AP - PA| = {P.commutator_residual():.1e}")
    print(f"angle to true eigenvectors {max_principal_angle(B, V[:, mask]):.1e}")

    # adjacent sectors add up
    T = sector(-1 + 0j, -1j, r=0.2, R=3.0)
    R = sector(1j, -1j, r=0.2, R=3.0)
    cat = np.hstack([eigenspace_basis(A, S).B, eigenspace_basis(A, T).B])
    print(LINE)
    print(f"dim V_S + dim V_T = {cat.shape[1]}, dim V_R = {eigenspace_basis(A, R).k}, "
          f"angle {max_principal_angle(cat, eigenspace_basis(A, R).B):.1e}")


if __name__ == "__main__":
    main()
