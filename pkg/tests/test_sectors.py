import numpy as np
import pytest
from hypothesis import given, strategies as st

from holgerbe.errors import DomainError
from holgerbe.sectors import (Contour, Sector, circle_contour, in_sector, ray_angle, ray_less,
                              sector, sector_boundary_contour, unordered_sector, winding_number)

angles = st.floats(min_value=1e-3, max_value=2 * np.pi - 1e-3)


def test_ray_less_examples():
    assert ray_less(1 + 1j, -1)
    assert not ray_less(2j, 2j)
    assert not ray_less(-1, 1)
    with pytest.raises(DomainError):
        ray_less(0, 1j)


def test_ray_angle_branch():
    assert ray_angle(1) == 0.0
    assert ray_angle(-1j) == pytest.approx(3 * np.pi / 2)
    assert 0 <= ray_angle(complex(1, -1e-18)) < 2 * np.pi


@given(angles, angles, angles)
def test_ray_less_is_a_strict_order(a, b, c):
    x, y, z = np.exp(1j * a), np.exp(1j * b), np.exp(1j * c)
    assert not ray_less(x, x)
    assert not (ray_less(x, y) and ray_less(y, x))
    if ray_less(x, y) and ray_less(y, z):
        assert ray_less(x, z)


def test_unordered_sector_examples():
    S = unordered_sector(1j, -1)
    assert (S.phi_start, S.phi_end) == pytest.approx((np.pi / 2, np.pi))
    assert unordered_sector(-1, 1j) == S
    assert unordered_sector(1j, 1j).is_empty
    with pytest.raises(DomainError):
        unordered_sector(1, 1j)


@given(angles, angles)
def test_unordered_sector_symmetric(a, b):
    x, y = 2 * np.exp(1j * a), 0.5 * np.exp(1j * b)
    assert unordered_sector(x, y, 0.1, 3) == unordered_sector(y, x, 0.1, 3)


def test_in_sector_examples():
    S = sector(1, -1)
    assert in_sector(S, 1j)
    assert not in_sector(S, -1j)
    assert not in_sector(sector(1, -1, 1, 2), 3j)
    # boundary points are excluded
    assert not in_sector(S, -2)
    assert not in_sector(sector(1, -1, 1, 2), 1j)


def test_sector_crossing_the_cut():
    S = sector(-1j, 1j)   # from 3pi/2 counterclockwise through 0 to pi/2
    assert S.contains_cut()
    assert in_sector(S, 1 + 0.1j) and in_sector(S, 1 - 0.1j)
    assert not in_sector(S, -1)


def test_boundary_contour_winding():
    C = sector_boundary_contour(Sector(0.0, np.pi, 1, 2))
    assert len(C.segments) == 4
    assert winding_number(C, 1.5j) == pytest.approx(1, abs=1e-8)
    assert winding_number(C, -1.5j) == pytest.approx(0, abs=1e-8)
    with pytest.raises(DomainError):
        sector_boundary_contour(Sector(0.0, np.pi), 2, 1)
    with pytest.raises(DomainError):
        sector_boundary_contour(Sector(0.0, np.pi))
    with pytest.raises(DomainError):
        sector_boundary_contour(Sector(1.0, 0.0, 1, 2))


@given(angles, st.floats(0.05, 6.0), st.floats(0.05, 0.95), st.floats(0.05, 0.95))
def test_winding_inside_and_outside(phi, delta, fa, fr):
    S = Sector(phi, delta, 0.5, 2.0)
    C = sector_boundary_contour(S)
    inside = (0.5 + 1.5 * fr) * np.exp(1j * (phi + fa * delta))
    if S.boundary_distance(inside) > 1e-3:
        assert abs(winding_number(C, inside) - 1) < 1e-8
    outside = 3.0 * np.exp(1j * (phi + fa * delta))
    assert abs(winding_number(C, outside)) < 1e-8


def test_contour_serialization_roundtrip():
    C = sector_boundary_contour(Sector(0.3, 2.0, 0.5, 4.0)) + circle_contour(5 + 5j, 0.5)
    items = C.to_list()
    assert {d["kind"] for d in items} == {"arc", "segment"}
    C2 = Contour.from_list(items)
    assert C2.to_list() == items
    assert winding_number(C2, 5 + 5j) == pytest.approx(1, abs=1e-10)


def test_open_contour_rejected():
    C = sector_boundary_contour(Sector(0.0, 1.0, 1, 2))
    with pytest.raises(DomainError):
        Contour(C.segments[:3])
