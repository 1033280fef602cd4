import numpy as np
import pytest
from hypothesis import given, strategies as st

from holgerbe.cover import (GoodCover, build_cover, build_su2_cover, cell600, geodesic_distance,
                            qconj, qmul, qpow, regular_simplex, s4_simplex, sphere_quadrature,
                            sphere_volume, su2_matrix, tangent_frame)
from holgerbe.errors import CertificationError

quats = st.lists(st.floats(-2, 2), min_size=4, max_size=4).map(np.array)


@given(quats, quats)
def test_su2_matrix_is_multiplicative(p, q):
    assert np.allclose(su2_matrix(qmul(p, q)), su2_matrix(p) @ su2_matrix(q), atol=1e-9)


def test_su2_matrix_unit_quaternions(rng):
    q = rng.standard_normal((10, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    M = su2_matrix(q)
    assert np.allclose(np.linalg.det(M), 1)
    assert np.allclose(M @ np.conj(np.swapaxes(M, 1, 2)), np.eye(2))
    assert np.allclose(qmul(q, qconj(q))[:, 0], 1)
    assert np.allclose(qpow(q, 3), qmul(q, qmul(q, q)))


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_sphere_quadrature_volume(d):
    pts, w = sphere_quadrature(d, 12)
    assert np.allclose(np.linalg.norm(pts, axis=1), 1)
    assert w.sum() == pytest.approx(sphere_volume(d), rel=1e-12)


def test_sphere_quadrature_integrates_polynomials():
    pts, w = sphere_quadrature(3, 12)
    # int x_0^2 over S^3 = vol / 4
    assert np.sum(w * pts[:, 0] ** 2) == pytest.approx(sphere_volume(3) / 4, rel=1e-10)


def test_tangent_frame_orientation(rng):
    for _ in range(5):
        p = rng.standard_normal(4)
        p /= np.linalg.norm(p)
        F = tangent_frame(p)
        assert np.allclose(F @ p, 0) and np.allclose(F @ F.T, np.eye(3))
        assert np.linalg.det(np.vstack([p, F])) > 0
    # at 1 the frame is (i, j, k)
    assert np.allclose(tangent_frame(np.array([1.0, 0, 0, 0])), np.eye(4)[1:])


def test_polytopes():
    V = regular_simplex(3)
    G = V @ V.T
    assert np.allclose(np.diag(G), 1) and np.allclose(G[~np.eye(5, dtype=bool)], -0.25)
    V6 = s4_simplex()
    assert np.allclose(V6[0], [0, 0, 0, 0, 1])
    assert np.allclose((V6 @ V6.T)[~np.eye(6, dtype=bool)], -0.2)
    C = cell600()
    assert C.shape == (120, 4)
    d = geodesic_distance(C[:, None], C[None])
    assert np.isclose(np.sort(d[0])[1], np.pi / 5)


def test_default_cover(su2_cover):
    assert su2_cover.counts() == (5, 10, 10, 5)
    assert su2_cover.certificate["covering_margin"] > 0.05
    assert su2_cover.certificate["sampled_covering_radius"] < su2_cover.radius
    fc = su2_cover.fundamental_cycle()
    assert sorted(fc.values()) == [-1, -1, 1, 1, 1]


def test_fundamental_cycle_is_a_cycle(su2_cover, s4_cover):
    for cover in (su2_cover, s4_cover):
        fc = cover.fundamental_cycle()
        boundary = {}
        for s, c in fc.items():
            for i in range(len(s)):
                t = s[:i] + s[i + 1:]
                boundary[t] = boundary.get(t, 0) + (-1) ** i * c
        assert all(v == 0 for v in boundary.values())


def test_reversed_cover(su2_cover):
    rev = su2_cover.reversed()
    assert rev.orientation == -1
    assert all(rev.fundamental_cycle()[s] == -v for s, v in su2_cover.fundamental_cycle().items())


def test_radius_precondition():
    with pytest.raises(CertificationError):
        build_su2_cover(5, radius=np.pi / 2)


def test_cover_must_cover():
    with pytest.raises(CertificationError):
        build_su2_cover(5, radius=1.2)


def test_sixteen_cell_cover():
    assert build_su2_cover(8).counts() == (8, 24, 32, 16)


def test_s4_cover(s4_cover):
    assert s4_cover.counts() == (6, 15, 20, 15, 6)
    assert s4_cover.dim == 4


def test_partition_of_unity(su2_cover, rng):
    x = rng.standard_normal((200, 4))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    rho = su2_cover.partition_of_unity(x)
    assert np.allclose(rho.sum(axis=1), 1)
    d = geodesic_distance(x[:, None], su2_cover.centers[None])
    assert np.all(rho[d >= su2_cover.radius] == 0)


def test_samples_lie_in_their_overlaps(su2_cover):
    c = su2_cover
    for s, pts in c.closure.items():
        assert np.all(geodesic_distance(pts[:, None], c.centers[list(s)][None]) < c.radius)
    for (t, s), pts in c.paths.items():
        assert np.all(geodesic_distance(pts[:, None], c.centers[list(t)][None]) < c.radius)
    for t, p in c.base_points.items():
        assert np.all(geodesic_distance(p, c.centers[list(t)]) < c.radius)


def test_cover_dict_roundtrip(su2_cover):
    d = su2_cover.to_dict()
    back = GoodCover.from_dict(d)
    assert back.counts() == su2_cover.counts()
    assert back.to_dict() == d


def test_cover_is_deterministic():
    a = build_cover(regular_simplex(3), 1.45, path_steps=8, ball_samples=16, edge_samples=8,
                    certify_samples=2000)
    b = build_cover(regular_simplex(3), 1.45, path_steps=8, ball_samples=16, edge_samples=8,
                    certify_samples=2000)
    assert a.to_dict() == b.to_dict()
